//! The r-partite hypergraph model.
//!
//! Vertices are addressed by [`VertexRef`] (part, index), stored 0-based and
//! printed 1-based as `(i,j)`. Edges pick one vertex per part, so an edge is
//! just the list of chosen indices. Edge ids are 0-based in the API and
//! rendered `E1..Em` in reports.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::{EdgeSet, Mask};
use crate::error::{Error, Result};

/// The j-th vertex of the i-th part.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexRef {
    pub part: usize,
    pub index: usize,
}

impl VertexRef {
    pub const fn new(part: usize, index: usize) -> Self {
        VertexRef { part, index }
    }

    /// Builds a reference from `(i,j)` notation, both counted from 1.
    ///
    /// # Panics
    /// Panics if either coordinate is zero.
    pub fn one_based(part: usize, index: usize) -> Self {
        assert!(part >= 1 && index >= 1, "(i,j) notation is 1-based");
        VertexRef::new(part - 1, index - 1)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.part + 1, self.index + 1)
    }
}

impl Serialize for VertexRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.part + 1, self.index + 1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [part, index] = <[usize; 2]>::deserialize(d)?;
        if part == 0 || index == 0 {
            return Err(serde::de::Error::custom("vertex coordinates are 1-based"));
        }
        Ok(VertexRef::new(part - 1, index - 1))
    }
}

/// One vertex index per part; `choice[i]` is the 0-based index within part `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    choice: Vec<usize>,
}

impl Edge {
    pub fn new(choice: Vec<usize>) -> Self {
        Edge { choice }
    }

    pub fn choice(&self) -> &[usize] {
        &self.choice
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.choice
            .iter()
            .enumerate()
            .map(|(part, &index)| VertexRef::new(part, index))
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        self.choice.get(v.part) == Some(&v.index)
    }

    /// Number of parts in which the two edges pick the same vertex.
    pub fn meet(&self, other: &Edge) -> usize {
        self.choice
            .iter()
            .zip(&other.choice)
            .filter(|(a, b)| a == b)
            .count()
    }
}

/// An r-partite hypergraph with a cached vertex-to-edge incidence.
///
/// Immutable once built. Part sizes are declared, so parts may hold vertices
/// of degree 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartiteHypergraph {
    part_sizes: Vec<usize>,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    incidence: Vec<EdgeSet>,
}

/// Per-vertex degrees grouped by part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeProfile {
    pub degrees: Vec<Vec<usize>>,
    pub max_degree: usize,
}

impl DegreeProfile {
    /// Degrees of one part in descending order, isolated vertices included.
    pub fn part_multiset(&self, part: usize) -> Vec<usize> {
        let mut d = self.degrees[part].clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().flatten().sum()
    }
}

/// Pair-coverage budget: edge pairs that meet, counted with multiplicity,
/// against the number of pairs an intersecting hypergraph must cover.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IntersectionBudget {
    pub available: usize,
    pub required: usize,
}

impl IntersectionBudget {
    pub fn suffices(&self) -> bool {
        self.available >= self.required
    }
}

pub(crate) fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl PartiteHypergraph {
    /// Validates `edges` (0-based indices) against `part_sizes`.
    ///
    /// Identical edges are rejected unless `allow_duplicates` is set.
    pub fn build(
        part_sizes: Vec<usize>,
        edges: Vec<Vec<usize>>,
        allow_duplicates: bool,
    ) -> Result<Self> {
        if part_sizes.is_empty() || part_sizes.contains(&0) {
            return Err(Error::InvalidPartSizes);
        }
        let r = part_sizes.len();
        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        for (id, edge) in edges.iter().enumerate() {
            if edge.len() != r {
                return Err(Error::EdgeArity {
                    edge: id + 1,
                    got: edge.len(),
                    expected: r,
                });
            }
            for (part, &index) in edge.iter().enumerate() {
                if index >= part_sizes[part] {
                    return Err(Error::VertexOutOfRange {
                        vertex: VertexRef::new(part, index),
                    });
                }
            }
            if !allow_duplicates {
                if let Some(&first) = seen.get(edge.as_slice()) {
                    return Err(Error::DuplicateEdge {
                        first: first + 1,
                        second: id + 1,
                    });
                }
                seen.insert(edge, id);
            }
        }
        let edges: Vec<Edge> = edges.into_iter().map(Edge::new).collect();
        Ok(Self::assemble(part_sizes, edges))
    }

    /// Same as [`build`](Self::build) with indices written in `(i,j)` style.
    pub fn from_one_based(
        part_sizes: Vec<usize>,
        edges: &[Vec<usize>],
        allow_duplicates: bool,
    ) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(edges.len());
        for (id, edge) in edges.iter().enumerate() {
            let mut row = Vec::with_capacity(edge.len());
            for (part, &j) in edge.iter().enumerate() {
                if j == 0 {
                    return Err(Error::Parse {
                        line: id + 1,
                        message: format!("vertex index 0 in part {}", part + 1),
                    });
                }
                row.push(j - 1);
            }
            zero_based.push(row);
        }
        Self::build(part_sizes, zero_based, allow_duplicates)
    }

    fn assemble(part_sizes: Vec<usize>, edges: Vec<Edge>) -> Self {
        let mut offsets = Vec::with_capacity(part_sizes.len());
        let mut total = 0;
        for &k in &part_sizes {
            offsets.push(total);
            total += k;
        }
        let incidence = Self::compute_incidence(&part_sizes, &offsets, &edges);
        PartiteHypergraph {
            part_sizes,
            edges,
            offsets,
            incidence,
        }
    }

    fn compute_incidence(part_sizes: &[usize], offsets: &[usize], edges: &[Edge]) -> Vec<EdgeSet> {
        let total: usize = part_sizes.iter().sum();
        let mut incidence = vec![EdgeSet::new(edges.len()); total];
        for (id, edge) in edges.iter().enumerate() {
            for (part, &index) in edge.choice.iter().enumerate() {
                incidence[offsets[part] + index].insert(id);
            }
        }
        incidence
    }

    /// Recomputes the incidence cache from the edge list and compares.
    pub fn incidence_is_consistent(&self) -> bool {
        Self::compute_incidence(&self.part_sizes, &self.offsets, &self.edges) == self.incidence
    }

    /// Number of parts, r.
    pub fn rank(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::EdgeOutOfRange(id + 1))
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.part_sizes
            .iter()
            .enumerate()
            .flat_map(|(part, &k)| (0..k).map(move |index| VertexRef::new(part, index)))
    }

    pub fn contains_vertex(&self, v: VertexRef) -> bool {
        v.part < self.rank() && v.index < self.part_sizes[v.part]
    }

    /// Dense id of a vertex (parts laid out consecutively).
    pub fn vertex_id(&self, v: VertexRef) -> Result<usize> {
        if self.contains_vertex(v) {
            Ok(self.offsets[v.part] + v.index)
        } else {
            Err(Error::VertexOutOfRange { vertex: v })
        }
    }

    pub fn vertex_at(&self, id: usize) -> VertexRef {
        let part = self.offsets.partition_point(|&o| o <= id) - 1;
        VertexRef::new(part, id - self.offsets[part])
    }

    /// E(v): the ids of the edges through `v`.
    pub fn edges_through(&self, v: VertexRef) -> Result<&EdgeSet> {
        Ok(&self.incidence[self.vertex_id(v)?])
    }

    pub(crate) fn incidence(&self) -> &[EdgeSet] {
        &self.incidence
    }

    /// d(v) = |E(v)|.
    pub fn degree(&self, v: VertexRef) -> Result<usize> {
        Ok(self.edges_through(v)?.count())
    }

    /// c(v, w) = |E(v) ∩ E(w)| for distinct vertices.
    pub fn codegree(&self, v: VertexRef, w: VertexRef) -> Result<usize> {
        if v == w {
            return Err(Error::SameVertex(v));
        }
        Ok(self.edges_through(v)?.and_count(self.edges_through(w)?))
    }

    /// |E_i ∩ E_j| for 0-based edge ids.
    pub fn edge_intersection_size(&self, i: usize, j: usize) -> Result<usize> {
        Ok(self.edge(i)?.meet(self.edge(j)?))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<Vec<usize>> = (0..self.rank())
            .map(|p| {
                (0..self.part_sizes[p])
                    .map(|i| self.incidence[self.offsets[p] + i].count())
                    .collect()
            })
            .collect();
        let max_degree = degrees.iter().flatten().copied().max().unwrap_or(0);
        DegreeProfile {
            degrees,
            max_degree,
        }
    }

    /// Δ(H).
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Mask::count).max().unwrap_or(0)
    }

    /// First disjoint edge pair `(i, j)`, `i < j`, in lexicographic order.
    pub fn first_disjoint_pair(&self) -> Option<(usize, usize)> {
        let m = self.edges.len();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| self.edges[i].meet(&self.edges[j]) == 0)
    }

    pub fn is_intersecting(&self) -> bool {
        self.first_disjoint_pair().is_none()
    }

    /// ν(H), the size of a largest set of pairwise disjoint edges.
    pub fn matching_number(&self) -> usize {
        if self.edges.len() <= 64 {
            self.matching_with::<u64>()
        } else {
            self.matching_with::<EdgeSet>()
        }
    }

    fn matching_with<M: Mask>(&self) -> usize {
        let m = self.edges.len();
        let compatible: Vec<M> = (0..m)
            .map(|i| {
                let mut mask = M::zeros(m);
                for j in 0..m {
                    if j != i && self.edges[i].meet(&self.edges[j]) == 0 {
                        mask.insert(j);
                    }
                }
                mask
            })
            .collect();
        let mut all = M::zeros(m);
        for i in 0..m {
            all.insert(i);
        }
        let mut best = 0;
        matching_branch(&compatible, all, 0, &mut best, m);
        best
    }

    /// The sub-hypergraph of edges avoiding `v`, on the same parts.
    pub fn delete_star(&self, v: VertexRef) -> Result<PartiteHypergraph> {
        self.vertex_id(v)?;
        let edges = self.edges.iter().filter(|e| !e.contains(v)).cloned().collect();
        Ok(Self::assemble(self.part_sizes.clone(), edges))
    }

    /// The sub-hypergraph formed by the given edges (in the given order).
    pub fn sub_hypergraph(&self, ids: &[usize]) -> Result<PartiteHypergraph> {
        let edges = ids
            .iter()
            .map(|&i| self.edge(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(self.part_sizes.clone(), edges))
    }

    /// Σ_v C(d(v), 2) against C(m, 2).
    pub fn intersection_budget(&self) -> IntersectionBudget {
        IntersectionBudget {
            available: self.incidence.iter().map(|s| choose2(s.count())).sum(),
            required: choose2(self.edges.len()),
        }
    }

    /// Number of distinct vertices of `part` that lie on some edge.
    pub fn used_in_part(&self, part: usize) -> usize {
        (0..self.part_sizes[part])
            .filter(|&i| !self.incidence[self.offsets[part] + i].is_empty())
            .count()
    }

    pub(crate) fn from_parts_unchecked(part_sizes: Vec<usize>, edges: Vec<Edge>) -> Self {
        Self::assemble(part_sizes, edges)
    }
}

fn matching_branch<M: Mask>(compatible: &[M], candidates: M, size: usize, best: &mut usize, m: usize) {
    if size > *best {
        *best = size;
    }
    let Some(e) = candidates.first() else {
        return;
    };
    if size + candidates.count() <= *best {
        return;
    }
    let mut rest = candidates.clone();
    let mut single = M::zeros(m);
    single.insert(e);
    rest = rest.and_not(&single);
    matching_branch(compatible, rest.and(&compatible[e]), size + 1, best, m);
    matching_branch(compatible, rest, size, best, m);
}
