//! Structural reports and mechanical checks of extremal instances.
//!
//! Verifiers test their hypotheses first and report which one failed; they
//! never assume the statement they check. Report types serialize to JSON
//! with 1-based edge and vertex numbers, matching the text output.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::bitset::Mask;
use crate::cover::tau;
use crate::error::{Error, Result};
use crate::hypergraph::{PartiteHypergraph, VertexRef};

/// A 0-based edge id, printed and serialized as `E1..Em`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0 + 1)
    }
}

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0 as u64 + 1)
    }
}

fn edge_list(ids: impl IntoIterator<Item = usize>) -> Vec<EdgeId> {
    ids.into_iter().map(EdgeId).collect()
}

fn star(h: &PartiteHypergraph, v: VertexRef) -> Vec<EdgeId> {
    edge_list(h.edges_through(v).expect("vertex in range").iter())
}

fn braces(ids: &[EdgeId]) -> String {
    format!("{{{}}}", ids.iter().join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexStar {
    pub vertex: VertexRef,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeGroup {
    pub degree: usize,
    pub vertices: Vec<VertexStar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartDegrees {
    /// 1-based part number.
    pub part: usize,
    /// Groups by increasing degree, degree 0 excluded.
    pub groups: Vec<DegreeGroup>,
    pub isolated: Vec<VertexRef>,
}

impl PartDegrees {
    pub fn group(&self, degree: usize) -> Option<&DegreeGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }
}

/// Vertices of each part grouped by degree, with their stars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTable {
    pub max_degree: usize,
    pub parts: Vec<PartDegrees>,
}

impl DegreeTable {
    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|p| p.groups.is_empty())
    }
}

pub fn degree_table(h: &PartiteHypergraph) -> DegreeTable {
    let parts = (0..h.rank())
        .map(|p| {
            let mut by_degree: BTreeMap<usize, Vec<VertexStar>> = BTreeMap::new();
            let mut isolated = Vec::new();
            for i in 0..h.part_sizes()[p] {
                let v = VertexRef::new(p, i);
                let edges = star(h, v);
                if edges.is_empty() {
                    isolated.push(v);
                } else {
                    by_degree.entry(edges.len()).or_default().push(VertexStar { vertex: v, edges });
                }
            }
            PartDegrees {
                part: p + 1,
                groups: by_degree
                    .into_iter()
                    .map(|(degree, vertices)| DegreeGroup { degree, vertices })
                    .collect(),
                isolated,
            }
        })
        .collect();
    DegreeTable {
        max_degree: h.max_degree(),
        parts,
    }
}

/// Parts as rows, degrees 1..Δ as columns, one `(i,j) {E..}` entry per line.
impl fmt::Display for DegreeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "(no edges)");
        }
        let degrees: Vec<usize> = (1..=self.max_degree).collect();
        let mut header = vec!["part".to_string()];
        header.extend(degrees.iter().map(|d| format!("deg {d}")));
        let mut rows: Vec<Vec<Vec<String>>> = Vec::new();
        for part in &self.parts {
            let mut cells = vec![vec![part.part.to_string()]];
            for &d in &degrees {
                cells.push(
                    part.group(d)
                        .map(|g| {
                            g.vertices
                                .iter()
                                .map(|s| format!("{} {}", s.vertex, braces(&s.edges)))
                                .collect()
                        })
                        .unwrap_or_default(),
                );
            }
            rows.push(cells);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                rows.iter()
                    .flat_map(|r| r[c].iter().map(String::len))
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let rule: String = widths.iter().map(|w| "-".repeat(w + 2)).join("+");
        let line = |f: &mut fmt::Formatter<'_>, cells: &[&str]| -> fmt::Result {
            let text = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!(" {c:<w$} "))
                .join("|");
            writeln!(f, "{}", text.trim_end())
        };
        let head: Vec<&str> = header.iter().map(String::as_str).collect();
        line(f, &head)?;
        writeln!(f, "{rule}")?;
        for cells in &rows {
            let height = cells.iter().map(Vec::len).max().unwrap_or(1).max(1);
            for k in 0..height {
                let row: Vec<&str> = cells
                    .iter()
                    .map(|c| c.get(k).map(String::as_str).unwrap_or(""))
                    .collect();
                line(f, &row)?;
            }
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

/// Checks: 6 parts, 8 edges, intersecting, τ = 4.
fn check_8edge_hypotheses(h: &PartiteHypergraph) -> Result<()> {
    if h.rank() != 6 {
        return Err(hypothesis(format!("expected 6 parts, found {}", h.rank())));
    }
    if h.edge_count() != 8 {
        return Err(hypothesis(format!("expected 8 edges, found {}", h.edge_count())));
    }
    if let Some((i, j)) = h.first_disjoint_pair() {
        return Err(hypothesis(format!(
            "not intersecting: {} and {} are disjoint",
            EdgeId(i),
            EdgeId(j)
        )));
    }
    let t = tau(h);
    if t != 4 {
        return Err(hypothesis(format!("expected tau 4, found {t}")));
    }
    Ok(())
}

/// Intermediate facts about the degree-3 vertices, each checked directly.
///
/// K is the multiset of traces A ∩ V(K) of the edges on the set V(K) of
/// degree-3 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeThreeFacts {
    /// Δ ≤ 3.
    pub max_degree_at_most_3: bool,
    /// Every edge contains a degree-3 vertex.
    pub every_edge_has_degree_3: bool,
    /// Any two degree-3 vertices lie on a common edge.
    pub degree_3_pairs_meet: bool,
    /// Every trace has at most |V(K)| − 2 vertices.
    pub traces_leave_two_out: bool,
    /// |V(K)|.
    pub degree_3_count: usize,
    /// Trace sizes in edge order.
    pub trace_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EightEdgeReport {
    pub deg3_in_every_part: bool,
    /// 1-based parts without a degree-3 vertex.
    pub parts_without_deg3: Vec<usize>,
    /// First edge pair sharing at least two degree-3 vertices.
    pub heavy_pair: Option<(EdgeId, EdgeId)>,
    pub heavy_shared: Vec<VertexRef>,
    pub facts: DegreeThreeFacts,
}

impl EightEdgeReport {
    /// Both conclusions hold.
    pub fn holds(&self) -> bool {
        self.deg3_in_every_part && self.heavy_pair.is_some()
    }
}

/// Verifies the structure of a 6-partite intersecting hypergraph with 8
/// edges and τ = 4: every part holds a degree-3 vertex, and some two edges
/// share at least two degree-3 vertices.
pub fn check_8edge_lemma(h: &PartiteHypergraph) -> Result<EightEdgeReport> {
    check_8edge_hypotheses(h)?;
    let profile = h.degree_profile();
    let deg3: Vec<VertexRef> = h.vertices().filter(|&v| h.degree(v).unwrap() == 3).collect();
    let parts_without_deg3: Vec<usize> = (0..h.rank())
        .filter(|&p| !deg3.iter().any(|v| v.part == p))
        .map(|p| p + 1)
        .collect();

    let traces: Vec<Vec<VertexRef>> = h
        .edges()
        .iter()
        .map(|e| deg3.iter().copied().filter(|&v| e.contains(v)).collect())
        .collect();
    let mut heavy_pair = None;
    let mut heavy_shared = Vec::new();
    'outer: for i in 0..traces.len() {
        for j in i + 1..traces.len() {
            let shared: Vec<VertexRef> = traces[i].iter().copied().filter(|v| traces[j].contains(v)).collect();
            if shared.len() >= 2 {
                heavy_pair = Some((EdgeId(i), EdgeId(j)));
                heavy_shared = shared;
                break 'outer;
            }
        }
    }

    let k = deg3.len();
    let facts = DegreeThreeFacts {
        max_degree_at_most_3: profile.max_degree <= 3,
        every_edge_has_degree_3: traces.iter().all(|t| !t.is_empty()),
        degree_3_pairs_meet: deg3
            .iter()
            .tuple_combinations()
            .all(|(&u, &v)| h.codegree(u, v).unwrap() >= 1),
        traces_leave_two_out: traces.iter().all(|t| t.len() + 2 <= k),
        degree_3_count: k,
        trace_sizes: traces.iter().map(Vec::len).collect(),
    };
    Ok(EightEdgeReport {
        deg3_in_every_part: parts_without_deg3.is_empty(),
        parts_without_deg3,
        heavy_pair,
        heavy_shared,
        facts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SchemeKind {
    /// One vertex of degree 3, two of degree 2, one of degree 1, possibly
    /// more of smaller degree, none above 3.
    TypeA,
    /// One vertex of degree 3, one of degree 2, the rest degree 1.
    TypeB,
    Other,
}

/// Classifies one part by its vertex degrees; degree-0 vertices are ignored.
pub fn classify_part(degrees: &[usize]) -> SchemeKind {
    let count = |d: usize| degrees.iter().filter(|&&x| x == d).count();
    let nonzero = degrees.iter().filter(|&&d| d > 0).count();
    let above3 = degrees.iter().any(|&d| d > 3);
    if !above3 && count(3) == 1 && count(2) >= 2 && count(1) >= 1 {
        SchemeKind::TypeA
    } else if !above3 && count(3) == 1 && count(2) == 1 && nonzero == 2 + count(1) {
        SchemeKind::TypeB
    } else {
        SchemeKind::Other
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartScheme {
    /// 1-based part number.
    pub part: usize,
    /// Nonzero degrees, descending.
    pub degrees: Vec<usize>,
    pub kind: SchemeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSchemeReport {
    pub parts: Vec<PartScheme>,
    pub type_a: usize,
    pub type_b: usize,
    pub other: usize,
}

impl DegreeSchemeReport {
    /// Six parts of type A, or five of type A and one of type B.
    pub fn matches_lemma(&self) -> bool {
        self.other == 0 && self.type_b <= 1 && self.type_a + self.type_b == 6
    }
}

/// Per-part degree schemes of a 6-partite intersecting hypergraph with 8
/// edges and τ = 4.
pub fn classify_degree_scheme(h: &PartiteHypergraph) -> Result<DegreeSchemeReport> {
    check_8edge_hypotheses(h)?;
    let profile = h.degree_profile();
    let parts: Vec<PartScheme> = (0..h.rank())
        .map(|p| {
            let degrees: Vec<usize> = profile.part_multiset(p).into_iter().filter(|&d| d > 0).collect();
            let kind = classify_part(&degrees);
            PartScheme {
                part: p + 1,
                degrees,
                kind,
            }
        })
        .collect();
    let count = |k: SchemeKind| parts.iter().filter(|s| s.kind == k).count();
    Ok(DegreeSchemeReport {
        type_a: count(SchemeKind::TypeA),
        type_b: count(SchemeKind::TypeB),
        other: count(SchemeKind::Other),
        parts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgePairMeet {
    pub first: EdgeId,
    pub second: EdgeId,
    pub size: usize,
}

/// Edge pairs whose intersection is not a single vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityReport {
    pub ignored: Vec<EdgeId>,
    pub pairs: Vec<EdgePairMeet>,
}

impl LinearityReport {
    pub fn is_linear(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// All pairs of edges outside `ignore` that meet in 0 or at least 2
/// vertices. Ids in `ignore` beyond the edge count are ignored.
pub fn linearity_report(h: &PartiteHypergraph, ignore: &[usize]) -> LinearityReport {
    let keep: Vec<usize> = (0..h.edge_count()).filter(|i| !ignore.contains(i)).collect();
    let pairs = keep
        .iter()
        .tuple_combinations()
        .filter_map(|(&i, &j)| {
            let size = h.edges()[i].meet(&h.edges()[j]);
            (size != 1).then_some(EdgePairMeet {
                first: EdgeId(i),
                second: EdgeId(j),
                size,
            })
        })
        .collect();
    let mut ignored: Vec<usize> = ignore.iter().copied().filter(|&i| i < h.edge_count()).collect();
    ignored.sort_unstable();
    ignored.dedup();
    LinearityReport {
        ignored: edge_list(ignored),
        pairs,
    }
}

/// Every `size`-subset of edges whose sub-hypergraph is linear (pairwise
/// intersections are single vertices) and in which every vertex shared by
/// two or more of the chosen edges lies in exactly `d` of them. Private
/// vertices (degree 1 within the subset) are not constrained unless `d` is 1.
/// Subsets are sorted id lists in lexicographic order.
pub fn find_regular_subhypergraphs(h: &PartiteHypergraph, d: usize, size: usize) -> Vec<Vec<usize>> {
    if d == 0 || size == 0 || size > h.edge_count() {
        return Vec::new();
    }
    let edges = h.edges();
    (0..h.edge_count())
        .combinations(size)
        .filter(|ids| {
            let linear = ids
                .iter()
                .tuple_combinations()
                .all(|(&i, &j)| edges[i].meet(&edges[j]) == 1);
            if !linear {
                return false;
            }
            let mut degree: BTreeMap<VertexRef, usize> = BTreeMap::new();
            for &i in ids {
                for v in edges[i].vertices() {
                    *degree.entry(v).or_default() += 1;
                }
            }
            degree.values().all(|&k| k == d || (k == 1 && d > 1))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PivotStar {
    pub pivot: VertexRef,
    pub degree: usize,
    /// Vertices of positive degree whose star misses the pivot's star.
    pub disjoint: Vec<VertexRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PivotPair {
    pub first: VertexRef,
    pub second: VertexRef,
    /// |E(v) ∩ E(u)|.
    pub intersection: usize,
    /// |E(v) ∪ E(u)|.
    pub union: usize,
    /// Vertices of positive degree, other than the pivots, whose star
    /// misses E(v) ∪ E(u).
    pub uncovered: Vec<VertexRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageAudit {
    pub pivots: Vec<PivotStar>,
    pub pairs: Vec<PivotPair>,
}

/// For each pivot, the vertices whose stars avoid its star; for each pivot
/// pair, the sizes of the star intersection and union and the vertices
/// whose stars avoid the union.
pub fn codegree_coverage_audit(h: &PartiteHypergraph, pivots: &[VertexRef]) -> Result<CoverageAudit> {
    for &v in pivots {
        h.vertex_id(v)?;
    }
    let live: Vec<VertexRef> = h.vertices().filter(|&w| h.degree(w).unwrap() > 0).collect();
    let star_of = |v: VertexRef| h.edges_through(v).unwrap().clone();
    let singles = pivots
        .iter()
        .map(|&v| {
            let s = star_of(v);
            PivotStar {
                pivot: v,
                degree: s.count(),
                disjoint: live
                    .iter()
                    .copied()
                    .filter(|&w| w != v && !star_of(w).intersects(&s))
                    .collect(),
            }
        })
        .collect();
    let pairs = pivots
        .iter()
        .tuple_combinations()
        .map(|(&v, &u)| {
            let (sv, su) = (star_of(v), star_of(u));
            let union = sv.or(&su);
            PivotPair {
                first: v,
                second: u,
                intersection: sv.and_count(&su),
                union: union.count(),
                uncovered: live
                    .iter()
                    .copied()
                    .filter(|&w| w != v && w != u && !star_of(w).intersects(&union))
                    .collect(),
            }
        })
        .collect();
    Ok(CoverageAudit {
        pivots: singles,
        pairs,
    })
}

/// τ / ((r − 1) ν), exact.
pub fn ryser_ratio(h: &PartiteHypergraph) -> Result<Ratio<usize>> {
    if h.rank() < 2 {
        return Err(Error::Ratio(format!("needs at least 2 parts, found {}", h.rank())));
    }
    if h.edge_count() == 0 {
        return Err(Error::Ratio("needs at least one edge".into()));
    }
    let nu = h.matching_number();
    Ok(Ratio::new(tau(h), (h.rank() - 1) * nu))
}
