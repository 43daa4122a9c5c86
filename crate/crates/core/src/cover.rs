//! Vertex covers: checking, the greedy bound, and exact τ(H).
//!
//! The exact solver is an iterative-deepening edge-branching search. Any
//! cover must hit every edge, so at each node it picks an uncovered edge and
//! branches on that edge's vertices. A vertex that has been tried and failed
//! is forbidden in the later sibling branches, which makes the branches
//! partition the search space: each vertex set is visited along exactly one
//! path. The root branches run in parallel.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::{EdgeSet, Mask};
use crate::error::{Error, Result};
use crate::hypergraph::{PartiteHypergraph, VertexRef};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverKind {
    Greedy,
    ExactMinimum,
    /// No cover of size `exhausted_size` or smaller exists.
    Exhaustion,
}

/// A cover together with what is known about its optimality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverCertificate {
    pub vertices: Vec<VertexRef>,
    pub kind: CoverKind,
    /// Largest k proven to admit no cover of size k.
    pub exhausted_size: Option<usize>,
}

impl CoverCertificate {
    /// τ(H) when the certificate proves it.
    pub fn tau(&self) -> Option<usize> {
        (self.kind == CoverKind::ExactMinimum).then_some(self.vertices.len())
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    tau: Option<usize>,
    cover: Vec<VertexRef>,
    exhausted: Option<usize>,
}

impl Serialize for CoverCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            tau: self.tau(),
            cover: self.vertices.clone(),
            exhausted: self.exhausted_size,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoverCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = CertificateJson::deserialize(d)?;
        let kind = match (json.tau, json.exhausted) {
            (Some(t), _) => {
                if t != json.cover.len() || json.exhausted != t.checked_sub(1) {
                    return Err(D::Error::custom(
                        "exact certificate needs tau = |cover| and exhausted = tau - 1",
                    ));
                }
                CoverKind::ExactMinimum
            }
            (None, Some(_)) => CoverKind::Exhaustion,
            (None, None) => CoverKind::Greedy,
        };
        Ok(CoverCertificate {
            vertices: json.cover,
            kind,
            exhausted_size: json.exhausted,
        })
    }
}

/// Index of the first edge `s` misses, or `None` if `s` is a cover.
pub fn first_uncovered_edge(h: &PartiteHypergraph, s: &[VertexRef]) -> Result<Option<usize>> {
    for &v in s {
        h.vertex_id(v)?;
    }
    Ok(h
        .edges()
        .iter()
        .position(|e| !s.iter().any(|&v| e.contains(v))))
}

pub fn is_cover(h: &PartiteHypergraph, s: &[VertexRef]) -> Result<bool> {
    Ok(first_uncovered_edge(h, s)?.is_none())
}

fn max_coverage_cover(h: &PartiteHypergraph) -> Vec<VertexRef> {
    let m = h.edge_count();
    let mut uncovered = EdgeSet::from_ids(m, 0..m);
    let mut picked = Vec::new();
    while !uncovered.is_empty() {
        // max_by_key keeps the last maximum; scan in reverse to keep the lowest id
        let (id, _) = h
            .incidence()
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|(_, star)| star.and_count(&uncovered))
            .expect("an uncovered edge has vertices");
        picked.push(h.vertex_at(id));
        uncovered = uncovered.and_not(&h.incidence()[id]);
    }
    picked.sort();
    picked
}

/// Greedy cover of an intersecting hypergraph, of size at most ⌈m/2⌉.
///
/// Each round takes the vertex on the most uncovered edges, lowest
/// (part, index) first among ties. While two or more edges are uncovered
/// that vertex covers at least two of them.
pub fn greedy_cover(h: &PartiteHypergraph) -> Result<CoverCertificate> {
    if let Some((i, j)) = h.first_disjoint_pair() {
        return Err(Error::NotIntersecting {
            first: i + 1,
            second: j + 1,
        });
    }
    Ok(CoverCertificate {
        vertices: max_coverage_cover(h),
        kind: CoverKind::Greedy,
        exhausted_size: None,
    })
}

/// Exact τ(H) by iterative deepening, up to `limit`.
///
/// Without a limit the search stops at ⌈m/2⌉ for intersecting input and at
/// m otherwise, both of which are guaranteed upper bounds. If τ exceeds the
/// limit the certificate has kind [`CoverKind::Exhaustion`], carries a
/// greedy cover and `exhausted_size = limit`.
pub fn cover_number(h: &PartiteHypergraph, limit: Option<usize>) -> CoverCertificate {
    let m = h.edge_count();
    let limit = limit.unwrap_or(if h.is_intersecting() { m.div_ceil(2) } else { m });
    let found = if m <= 64 {
        CoverProblem::<u64>::from_hypergraph(h).minimum_up_to(limit)
    } else {
        CoverProblem::<EdgeSet>::from_hypergraph(h).minimum_up_to(limit)
    };
    match found {
        Some(ids) => CoverCertificate {
            exhausted_size: ids.len().checked_sub(1),
            vertices: ids.into_iter().map(|id| h.vertex_at(id)).collect(),
            kind: CoverKind::ExactMinimum,
        },
        None => CoverCertificate {
            vertices: max_coverage_cover(h),
            kind: CoverKind::Exhaustion,
            exhausted_size: Some(limit),
        },
    }
}

/// τ(H) with no limit.
pub fn tau(h: &PartiteHypergraph) -> usize {
    cover_number(h, Some(h.edge_count()))
        .tau()
        .expect("tau never exceeds m")
}

/// Every cover with exactly `k` vertices, each sorted, in ascending order.
///
/// Vertices outside every edge are allowed as padding once the edges are
/// covered. An empty result certifies τ(H) > k.
pub fn enumerate_covers(h: &PartiteHypergraph, k: usize) -> Vec<Vec<VertexRef>> {
    let raw = if h.edge_count() <= 64 {
        CoverProblem::<u64>::from_hypergraph(h).enumerate(k)
    } else {
        CoverProblem::<EdgeSet>::from_hypergraph(h).enumerate(k)
    };
    raw.into_iter()
        .map(|ids| ids.into_iter().map(|id| h.vertex_at(id)).collect())
        .collect()
}

/// A transversal instance over dense vertex ids.
pub(crate) struct CoverProblem<M> {
    stars: Vec<M>,
    edge_vertices: Vec<Vec<usize>>,
    all: M,
}

impl<M: Mask> CoverProblem<M> {
    pub(crate) fn from_hypergraph(h: &PartiteHypergraph) -> Self {
        let m = h.edge_count();
        let stars = h
            .incidence()
            .iter()
            .map(|set| {
                let mut mask = M::zeros(m);
                for i in set.iter() {
                    mask.insert(i);
                }
                mask
            })
            .collect();
        let edge_vertices = h
            .edges()
            .iter()
            .map(|e| e.vertices().map(|v| h.vertex_id(v).expect("valid edge")).collect())
            .collect();
        Self::new(stars, edge_vertices, m)
    }

    pub(crate) fn new(stars: Vec<M>, edge_vertices: Vec<Vec<usize>>, m: usize) -> Self {
        let mut all = M::zeros(m);
        for i in 0..m {
            all.insert(i);
        }
        CoverProblem {
            stars,
            edge_vertices,
            all,
        }
    }

    fn vertex_count(&self) -> usize {
        self.stars.len()
    }

    /// Uncovered edge with the smallest total remaining degree over its
    /// allowed vertices; lowest id among ties.
    fn branch_edge(&self, uncovered: &M, forbidden: &[bool]) -> usize {
        let mut best = (usize::MAX, usize::MAX);
        for e in uncovered.ones(self.edge_vertices.len()) {
            let weight: usize = self.edge_vertices[e]
                .iter()
                .filter(|&&v| !forbidden[v])
                .map(|&v| self.stars[v].and_count(uncovered))
                .sum();
            if weight < best.0 {
                best = (weight, e);
            }
        }
        best.1
    }

    /// True when no `k` allowed vertices can possibly cover `uncovered`.
    fn hopeless(&self, uncovered: &M, k: usize, forbidden: &[bool]) -> bool {
        let max_gain = (0..self.vertex_count())
            .filter(|&v| !forbidden[v])
            .map(|v| self.stars[v].and_count(uncovered))
            .max()
            .unwrap_or(0);
        max_gain * k < uncovered.count()
    }

    fn find(&self, uncovered: &M, k: usize, forbidden: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        if uncovered.is_empty() {
            return true;
        }
        if k == 0 || self.hopeless(uncovered, k, forbidden) {
            return false;
        }
        let e = self.branch_edge(uncovered, forbidden);
        let mut blocked = Vec::new();
        let mut found = false;
        for &v in &self.edge_vertices[e] {
            if forbidden[v] {
                continue;
            }
            chosen.push(v);
            if self.find(&uncovered.and_not(&self.stars[v]), k - 1, forbidden, chosen) {
                found = true;
                break;
            }
            chosen.pop();
            forbidden[v] = true;
            blocked.push(v);
        }
        for v in blocked {
            forbidden[v] = false;
        }
        found
    }

    /// A cover of size at most `k`, sequentially.
    pub(crate) fn cover_within(&self, k: usize) -> Option<Vec<usize>> {
        let mut forbidden = vec![false; self.vertex_count()];
        let mut chosen = Vec::new();
        self.find(&self.all, k, &mut forbidden, &mut chosen)
            .then_some(chosen)
    }

    /// A cover of size at most `k`, root branches in parallel. The lowest
    /// successful root branch wins, so the answer does not depend on
    /// scheduling.
    fn cover_within_par(&self, k: usize) -> Option<Vec<usize>> {
        if self.all.is_empty() {
            return Some(Vec::new());
        }
        let none_forbidden = vec![false; self.vertex_count()];
        if k == 0 || self.hopeless(&self.all, k, &none_forbidden) {
            return None;
        }
        let e = self.branch_edge(&self.all, &none_forbidden);
        let root = &self.edge_vertices[e];
        let results: Vec<Option<Vec<usize>>> = (0..root.len())
            .into_par_iter()
            .map(|i| {
                let mut forbidden = vec![false; self.vertex_count()];
                for &u in &root[..i] {
                    forbidden[u] = true;
                }
                let v = root[i];
                let mut chosen = vec![v];
                self.find(&self.all.and_not(&self.stars[v]), k - 1, &mut forbidden, &mut chosen)
                    .then_some(chosen)
            })
            .collect();
        results.into_iter().flatten().next()
    }

    /// Smallest cover with at most `limit` vertices, sorted by id.
    pub(crate) fn minimum_up_to(&self, limit: usize) -> Option<Vec<usize>> {
        (0..=limit).find_map(|k| {
            self.cover_within_par(k).map(|mut c| {
                c.sort_unstable();
                c
            })
        })
    }

    fn collect(
        &self,
        uncovered: &M,
        k: usize,
        forbidden: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if uncovered.is_empty() {
            let free: Vec<usize> = (0..self.vertex_count())
                .filter(|&v| !forbidden[v] && !chosen.contains(&v))
                .collect();
            for pad in free.into_iter().combinations(k) {
                let mut set: Vec<usize> = chosen.iter().copied().chain(pad).collect();
                set.sort_unstable();
                out.insert(set);
            }
            return;
        }
        if k == 0 || self.hopeless(uncovered, k, forbidden) {
            return;
        }
        let e = self.branch_edge(uncovered, forbidden);
        let mut blocked = Vec::new();
        for &v in &self.edge_vertices[e] {
            if forbidden[v] {
                continue;
            }
            chosen.push(v);
            self.collect(&uncovered.and_not(&self.stars[v]), k - 1, forbidden, chosen, out);
            chosen.pop();
            forbidden[v] = true;
            blocked.push(v);
        }
        for v in blocked {
            forbidden[v] = false;
        }
    }

    pub(crate) fn enumerate(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        let mut forbidden = vec![false; self.vertex_count()];
        self.collect(&self.all, k, &mut forbidden, &mut Vec::new(), &mut out);
        out.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(parts: &[usize], rows: &[&[usize]]) -> PartiteHypergraph {
        let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
        PartiteHypergraph::from_one_based(parts.to_vec(), &rows, false).unwrap()
    }

    #[test]
    fn empty_hypergraph_has_tau_zero() {
        let g = h(&[2, 2], &[]);
        let cert = cover_number(&g, None);
        assert_eq!(cert.tau(), Some(0));
        assert_eq!(cert.exhausted_size, None);
        assert_eq!(enumerate_covers(&g, 0), vec![Vec::<VertexRef>::new()]);
    }

    #[test]
    fn single_edge() {
        let g = h(&[1, 1, 1], &[&[1, 1, 1]]);
        assert_eq!(greedy_cover(&g).unwrap().size(), 1);
        assert_eq!(tau(&g), 1);
        let covers = enumerate_covers(&g, 1);
        assert_eq!(
            covers,
            vec![
                vec![VertexRef::new(0, 0)],
                vec![VertexRef::new(1, 0)],
                vec![VertexRef::new(2, 0)]
            ]
        );
    }

    #[test]
    fn enumeration_pads_with_unused_vertices() {
        // one edge on 3 vertices plus one isolated vertex: 2-covers are all
        // pairs containing an edge vertex, C(4,2) - 0 = 6
        let g = h(&[2, 1, 1], &[&[1, 1, 1]]);
        assert_eq!(enumerate_covers(&g, 2).len(), 6);
    }

    #[test]
    fn limit_exceeded_keeps_a_valid_cover() {
        let g = h(&[2, 2, 2], &[&[1, 1, 1], &[2, 2, 2]]);
        let cert = cover_number(&g, Some(1));
        assert_eq!(cert.kind, CoverKind::Exhaustion);
        assert_eq!(cert.exhausted_size, Some(1));
        assert!(is_cover(&g, &cert.vertices).unwrap());
        assert_eq!(tau(&g), 2);
        assert!(greedy_cover(&g).is_err());
    }

    #[test]
    fn is_cover_reports_witness() {
        let g = h(&[2, 2], &[&[1, 1], &[2, 1], &[2, 2]]);
        assert_eq!(first_uncovered_edge(&g, &[]).unwrap(), Some(0));
        assert_eq!(
            first_uncovered_edge(&g, &[VertexRef::one_based(2, 1)]).unwrap(),
            Some(2)
        );
        assert!(is_cover(&g, &[VertexRef::one_based(3, 1)]).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let g = h(&[2, 2, 2], &[&[1, 1, 1], &[1, 2, 2], &[2, 2, 1]]);
        let cert = cover_number(&g, None);
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(json, r#"{"tau":2,"cover":[[1,1],[1,2]],"exhausted":1}"#);
        let back: CoverCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(serde_json::from_str::<CoverCertificate>(
            r#"{"tau":3,"cover":[[1,1]],"exhausted":2}"#
        )
        .is_err());
    }
}
