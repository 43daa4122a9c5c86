//! PG(2, q) and the truncated projective plane.
//!
//! Points and lines are both normalized homogeneous triples (first nonzero
//! coordinate 1); a point lies on a line when their dot product vanishes.
//! Both lists are kept in lexicographic order of the encoded triples.

use super::field::{FieldElement, FiniteField};
use crate::error::Result;
use crate::hypergraph::{Edge, PartiteHypergraph};

pub type Triple = [FieldElement; 3];

pub struct ProjectivePlane {
    field: FiniteField,
    points: Vec<Triple>,
}

impl ProjectivePlane {
    pub fn new(q: usize) -> Result<Self> {
        let field = FiniteField::new(q)?;
        let els: Vec<FieldElement> = field.elements().collect();
        let mut points: Vec<Triple> = Vec::new();
        for &x in &els {
            for &y in &els {
                for &z in &els {
                    if let Some(p) = normalize(&field, [x, y, z]) {
                        points.push(p);
                    }
                }
            }
        }
        points.sort();
        points.dedup();
        Ok(ProjectivePlane { field, points })
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn points(&self) -> &[Triple] {
        &self.points
    }

    /// Lines use the same normalized triples as points.
    pub fn lines(&self) -> &[Triple] {
        &self.points
    }

    pub fn incident(&self, point: &Triple, line: &Triple) -> bool {
        let f = &self.field;
        let dot = (0..3).fold(f.zero(), |acc, i| f.add(acc, f.mul(point[i], line[i])));
        dot == f.zero()
    }

    pub fn points_on(&self, line: &Triple) -> Vec<Triple> {
        self.points
            .iter()
            .filter(|p| self.incident(p, line))
            .copied()
            .collect()
    }

    pub fn lines_through(&self, point: &Triple) -> Vec<Triple> {
        self.lines()
            .iter()
            .filter(|l| self.incident(point, l))
            .copied()
            .collect()
    }
}

/// Scales a nonzero triple so its first nonzero coordinate is 1.
pub fn normalize(field: &FiniteField, t: Triple) -> Option<Triple> {
    let lead = t.iter().find(|c| **c != field.zero())?;
    let s = field.inv(*lead).expect("nonzero");
    Some([field.mul(t[0], s), field.mul(t[1], s), field.mul(t[2], s)])
}

/// The (q+1)-partite truncated projective plane of order q.
///
/// The removed point is the first point of PG(2, q). Each line through it
/// becomes a part holding that line's other q points; every remaining line
/// becomes an edge. Result: q+1 parts of size q, q² edges, every vertex of
/// degree q, any two edges meeting in exactly one vertex.
pub fn truncated_projective_plane(q: usize) -> Result<PartiteHypergraph> {
    let plane = ProjectivePlane::new(q)?;
    let removed = plane.points()[0];
    let part_lines = plane.lines_through(&removed);
    let parts: Vec<Vec<Triple>> = part_lines
        .iter()
        .map(|l| plane.points_on(l).into_iter().filter(|p| *p != removed).collect())
        .collect();
    let mut edges = Vec::new();
    for line in plane.lines() {
        if plane.incident(&removed, line) {
            continue;
        }
        let choice = parts
            .iter()
            .map(|part| {
                part.iter()
                    .position(|p| plane.incident(p, line))
                    .expect("two lines of a projective plane meet")
            })
            .collect();
        edges.push(Edge::new(choice));
    }
    Ok(PartiteHypergraph::from_parts_unchecked(
        parts.iter().map(Vec::len).collect(),
        edges,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_axioms() {
        for q in [2, 3, 4, 5] {
            let plane = ProjectivePlane::new(q).unwrap();
            let n = q * q + q + 1;
            assert_eq!(plane.points().len(), n);
            assert_eq!(plane.lines().len(), n);
            for l in plane.lines() {
                assert_eq!(plane.points_on(l).len(), q + 1);
            }
            for (i, a) in plane.points().iter().enumerate() {
                for b in &plane.points()[i + 1..] {
                    let common = plane
                        .lines()
                        .iter()
                        .filter(|l| plane.incident(a, l) && plane.incident(b, l))
                        .count();
                    assert_eq!(common, 1, "two points, one line (q={q})");
                }
            }
            for (i, a) in plane.lines().iter().enumerate() {
                for b in &plane.lines()[i + 1..] {
                    let common = plane
                        .points()
                        .iter()
                        .filter(|p| plane.incident(p, a) && plane.incident(p, b))
                        .count();
                    assert_eq!(common, 1, "two lines, one point (q={q})");
                }
            }
        }
    }

    #[test]
    fn normalization_is_canonical() {
        let f = FiniteField::new(5).unwrap();
        let t = [FieldElement(0), FieldElement(3), FieldElement(4)];
        let scaled = [FieldElement(0), f.mul(FieldElement(3), FieldElement(2)), f.mul(FieldElement(4), FieldElement(2))];
        assert_eq!(normalize(&f, t), normalize(&f, scaled));
        assert_eq!(normalize(&f, t).unwrap()[1], f.one());
        assert_eq!(normalize(&f, [f.zero(); 3]), None);
    }

    #[test]
    fn removed_point_is_lexicographically_first() {
        let plane = ProjectivePlane::new(3).unwrap();
        assert_eq!(
            plane.points()[0],
            [FieldElement(0), FieldElement(0), FieldElement(1)]
        );
    }

    #[test]
    fn fano_truncation() {
        let h = truncated_projective_plane(2).unwrap();
        assert_eq!(h.part_sizes(), &[2, 2, 2]);
        assert_eq!(h.edge_count(), 4);
        assert!(h.is_intersecting());
    }
}
