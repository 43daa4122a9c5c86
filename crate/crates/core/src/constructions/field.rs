//! Small finite fields GF(p^k) with table arithmetic.
//!
//! Elements are encoded as integers whose base-p digits are the polynomial
//! coefficients, constant term first. Reduction polynomials are fixed per
//! order and checked for irreducibility (no root in GF(p), which suffices
//! for degree 2 and 3) when the field is built.

use crate::error::{Error, Result};

/// An element of a [`FiniteField`], by its integer encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement(pub u8);

#[derive(Clone, Debug)]
pub struct FiniteField {
    order: usize,
    characteristic: usize,
    degree: usize,
    /// Monic reduction polynomial, constant term first.
    modulus: Vec<usize>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// (q, p, k, reduction polynomial coefficients low to high)
const SUPPORTED: &[(usize, usize, usize, &[usize])] = &[
    (2, 2, 1, &[0, 1]),
    (3, 3, 1, &[0, 1]),
    (4, 2, 2, &[1, 1, 1]),
    (5, 5, 1, &[0, 1]),
    (7, 7, 1, &[0, 1]),
    (8, 2, 3, &[1, 1, 0, 1]),
    (9, 3, 2, &[1, 0, 1]),
];

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn eval_mod_p(poly: &[usize], x: usize, p: usize) -> usize {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// True if a monic polynomial of degree 2 or 3 has no root in GF(p).
pub fn has_no_root(poly: &[usize], p: usize) -> bool {
    (0..p).all(|x| eval_mod_p(poly, x, p) != 0)
}

impl FiniteField {
    /// GF(q) for q in {2, 3, 4, 5, 7, 8, 9}.
    pub fn new(q: usize) -> Result<Self> {
        let &(order, p, k, modulus) = SUPPORTED
            .iter()
            .find(|entry| entry.0 == q)
            .ok_or(Error::UnsupportedFieldOrder(q))?;
        if k > 1 {
            assert!(
                has_no_root(modulus, p),
                "built-in reduction polynomial for GF({q}) is reducible"
            );
        }
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p) as u8;
                mul[a * q + b] = undigits(&poly_mul_mod(&da, &db, modulus, p), p) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).expect("additive inverse") as u8)
            .collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("nonzero element without inverse: modulus is not irreducible");
            inv[a] = b as u8;
        }
        Ok(FiniteField {
            order,
            characteristic: p,
            degree: k,
            modulus: modulus.to_vec(),
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order as u8).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.order + b.0 as usize])
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.order + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a.0 != 0).then(|| FieldElement(self.inv[a.0 as usize]))
    }
}

fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0usize; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic: x^k = -(lower terms)
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &mc) in modulus[..k].iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + p * p - (c * mc) % p) % p;
        }
    }
    prod.truncate(k);
    prod
}
