#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use ryser_core::{PartiteHypergraph, VertexRef};

/// A random intersecting instance with at most `max_edges` edges and at most
/// `max_vertices` vertices in total.
pub fn random_intersecting<R: Rng>(rng: &mut R, max_edges: usize, max_vertices: usize) -> PartiteHypergraph {
    let r = rng.gen_range(2..=4.min(max_vertices));
    let mut sizes = vec![1usize; r];
    let mut budget = max_vertices - r;
    for s in sizes.iter_mut() {
        let extra = rng.gen_range(0..=budget.min(3));
        *s += extra;
        budget -= extra;
    }
    let target = rng.gen_range(0..=max_edges);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for _ in 0..target * 40 {
        if edges.len() == target {
            break;
        }
        let e: Vec<usize> = sizes.iter().map(|&k| rng.gen_range(0..k)).collect();
        let meets_all = edges.iter().all(|f| f.iter().zip(&e).any(|(a, b)| a == b));
        if meets_all && !edges.contains(&e) {
            edges.push(e);
        }
    }
    PartiteHypergraph::build(sizes, edges, false).unwrap()
}

/// Applies a random part permutation, vertex relabeling within each part and
/// edge reordering.
pub fn relabel<R: Rng>(rng: &mut R, h: &PartiteHypergraph) -> PartiteHypergraph {
    let r = h.rank();
    let mut parts: Vec<usize> = (0..r).collect();
    parts.shuffle(rng);
    let maps: Vec<Vec<usize>> = h
        .part_sizes()
        .iter()
        .map(|&k| {
            let mut p: Vec<usize> = (0..k).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let sizes: Vec<usize> = parts.iter().map(|&p| h.part_sizes()[p]).collect();
    let mut edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| parts.iter().map(|&p| maps[p][e.choice()[p]]).collect())
        .collect();
    edges.shuffle(rng);
    PartiteHypergraph::build(sizes, edges, false).unwrap()
}

/// τ by trying every vertex subset in order of size.
pub fn brute_tau(h: &PartiteHypergraph) -> usize {
    let verts: Vec<VertexRef> = h.vertices().collect();
    assert!(verts.len() <= 20);
    let n = verts.len();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let hit = h.edges().iter().all(|e| {
            (0..n).any(|i| mask >> i & 1 == 1 && e.contains(verts[i]))
        });
        if hit {
            best = size;
        }
    }
    best
}

/// ν by trying every edge subset.
pub fn brute_nu(h: &PartiteHypergraph) -> usize {
    let m = h.edge_count();
    assert!(m <= 20);
    let edges = h.edges();
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let ids: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let disjoint = ids
            .iter()
            .enumerate()
            .all(|(a, &i)| ids[a + 1..].iter().all(|&j| edges[i].meet(&edges[j]) == 0));
        if disjoint {
            best = best.max(ids.len());
        }
    }
    best
}

pub fn sum_of_meets(h: &PartiteHypergraph) -> usize {
    let e = h.edges();
    let mut total = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            total += e[i].meet(&e[j]);
        }
    }
    total
}

pub fn sum_of_degree_pairs(h: &PartiteHypergraph) -> usize {
    h.vertices()
        .map(|v| {
            let d = h.degree(v).unwrap();
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

pub fn v(part: usize, index: usize) -> VertexRef {
    VertexRef::one_based(part, index)
}
