//! Generators for concrete hypergraphs.

pub mod field;
pub mod plane;

use std::str::FromStr;

pub use field::{FieldElement, FiniteField};
pub use plane::{truncated_projective_plane, ProjectivePlane};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, PartiteHypergraph};

/// The two extremal instances printed with explicit edge lists.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PaperInstance {
    /// 6-partite, 13 edges, τ = 5.
    F6,
    /// 7-partite, 22 edges, τ = 6.
    F7,
}

impl FromStr for PaperInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f6" => Ok(PaperInstance::F6),
            "f7" => Ok(PaperInstance::F7),
            other => Err(Error::UnknownInstance(other.to_string())),
        }
    }
}

const F6_PARTS: [usize; 6] = [6, 5, 5, 5, 5, 5];
const F6_EDGES: [[usize; 6]; 13] = [
    [1, 4, 4, 5, 3, 5],
    [2, 5, 2, 5, 5, 3],
    [3, 4, 5, 3, 4, 3],
    [4, 1, 5, 4, 5, 5],
    [4, 5, 4, 2, 4, 4],
    [5, 2, 5, 5, 1, 4],
    [5, 5, 1, 3, 2, 5],
    [5, 4, 3, 2, 5, 2],
    [5, 3, 4, 4, 3, 3],
    [6, 2, 4, 3, 5, 1],
    [6, 4, 2, 4, 2, 4],
    [6, 5, 5, 1, 3, 2],
    [6, 3, 3, 5, 4, 5],
];

const F7_PARTS: [usize; 7] = [6, 6, 6, 6, 6, 6, 7];
const F7_EDGES: [[usize; 7]; 22] = [
    [1, 1, 1, 1, 1, 1, 1],
    [1, 2, 2, 2, 2, 3, 3],
    [1, 3, 3, 3, 3, 4, 4],
    [1, 4, 4, 4, 4, 5, 5],
    [2, 1, 2, 3, 4, 6, 6],
    [3, 1, 2, 5, 5, 4, 5],
    [5, 3, 2, 6, 1, 5, 2],
    [4, 2, 6, 1, 4, 4, 2],
    [3, 5, 3, 1, 2, 5, 6],
    [3, 6, 4, 3, 2, 1, 2],
    [6, 2, 1, 3, 5, 5, 1],
    [3, 3, 5, 2, 4, 2, 1],
    [5, 3, 1, 4, 2, 4, 6],
    [1, 6, 6, 6, 5, 2, 6],
    [2, 3, 4, 1, 5, 3, 7],
    [4, 1, 4, 2, 3, 5, 6],
    [2, 5, 4, 6, 2, 4, 1],
    [3, 6, 4, 3, 1, 4, 3],
    [3, 1, 1, 6, 4, 3, 4],
    [4, 3, 1, 3, 2, 2, 5],
    [1, 3, 1, 3, 6, 4, 6],
    [4, 6, 2, 1, 4, 4, 1],
];

/// The built-in instance, edges in the published order.
pub fn paper_instance(which: PaperInstance) -> PartiteHypergraph {
    let (parts, rows): (Vec<usize>, Vec<Vec<usize>>) = match which {
        PaperInstance::F6 => (F6_PARTS.to_vec(), F6_EDGES.iter().map(|e| e.to_vec()).collect()),
        PaperInstance::F7 => (F7_PARTS.to_vec(), F7_EDGES.iter().map(|e| e.to_vec()).collect()),
    };
    PartiteHypergraph::from_one_based(parts, &rows, false).expect("built-in instance is valid")
}

/// Lifts an r-partite hypergraph to `s` parts by giving every edge a private
/// new vertex in each added part. Edge j takes vertex j of every new part, so
/// the new parts have m vertices each (one, if there are no edges).
pub fn pad_to(h: &PartiteHypergraph, s: usize) -> Result<PartiteHypergraph> {
    let r = h.rank();
    if s < r {
        return Err(Error::PadBelowRank { from: r, to: s });
    }
    let m = h.edge_count();
    let mut part_sizes = h.part_sizes().to_vec();
    part_sizes.resize(s, m.max(1));
    let edges = h
        .edges()
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let mut choice = e.choice().to_vec();
            choice.resize(s, j);
            Edge::new(choice)
        })
        .collect();
    Ok(PartiteHypergraph::from_parts_unchecked(part_sizes, edges))
}
