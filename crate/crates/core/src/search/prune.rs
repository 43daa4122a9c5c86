//! Safe pruning rules for partial instances.
//!
//! A partial instance is the first k rows of an edge matrix; a completion
//! appends the remaining m − k rows. Each rule answers "no completion can be
//! intersecting with τ ≥ t", so pruning never loses a witness.

use crate::cover::CoverProblem;
use crate::hypergraph::choose2;

/// Target of a search: m edges, cover number at least `tau`, at most `cap`
/// vertices per part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Goal {
    pub edges: usize,
    pub tau: usize,
    pub cap: usize,
}

/// Per-part statistics of a partial edge matrix.
pub(crate) struct Stats {
    /// Distinct values used in each column.
    pub used: Vec<usize>,
    /// `degrees[c][v]` for v below `used[c]`.
    pub degrees: Vec<Vec<usize>>,
}

impl Stats {
    pub fn of(rank: usize, data: &[u8]) -> Self {
        let mut degrees = vec![Vec::new(); rank];
        for row in data.chunks(rank) {
            for (c, &v) in row.iter().enumerate() {
                let v = v as usize;
                if degrees[c].len() <= v {
                    degrees[c].resize(v + 1, 0);
                }
                degrees[c][v] += 1;
            }
        }
        let used = degrees.iter().map(Vec::len).collect();
        Stats { used, degrees }
    }
}

impl Goal {
    /// Greedy upper bound on τ of a completion with a vertex of degree d:
    /// take v, then cover the other m − d pairwise meeting edges two at a
    /// time.
    fn star_bound(&self, d: usize) -> usize {
        1 + (self.edges.saturating_sub(d)).div_ceil(2)
    }

    /// Largest final degree a vertex can have in a witness.
    pub fn max_degree(&self) -> usize {
        (0..=self.edges)
            .rev()
            .find(|&d| self.star_bound(d) >= self.tau)
            .unwrap_or(0)
    }
}

/// A cover of size s meets every edge, so each of its vertices lies in some
/// part; a part with fewer than τ distinct vertices is itself a cover. Prune
/// when some part cannot reach τ distinct vertices even if every remaining
/// edge brings a new one.
pub(crate) fn part_size_rule(goal: &Goal, rows: usize, stats: &Stats) -> bool {
    let remaining = goal.edges - rows;
    stats
        .used
        .iter()
        .any(|&u| (u + remaining).min(goal.cap) < goal.tau)
}

/// Prune when a vertex already has degree above the largest degree any
/// witness allows.
pub(crate) fn star_rule(goal: &Goal, stats: &Stats) -> bool {
    let dmax = goal.max_degree();
    stats.degrees.iter().flatten().any(|&d| d > dmax)
}

/// Upper bound on Σ_v C(d(v), 2) over completions in which no degree
/// exceeds `dmax`, no part holds more than `cap` vertices and every part
/// uses at least τ vertices, or `None` if no such completion exists.
///
/// In each part the vertices a completion must add get one edge each, then
/// the remaining edges are poured into the fullest vertices first. The
/// resulting degree vector majorizes every feasible one, and Σ C(x, 2) is
/// Schur-convex, so it attains the maximum.
pub(crate) fn max_pair_count(goal: &Goal, rows: usize, stats: &Stats) -> Option<usize> {
    let remaining = goal.edges - rows;
    let dmax = goal.max_degree();
    let mut total = 0;
    for degrees in &stats.degrees {
        let mut ds: Vec<usize> = degrees.clone();
        let missing = goal.tau.saturating_sub(ds.len());
        if missing > remaining || ds.len() + missing > goal.cap {
            return None;
        }
        ds.extend(std::iter::repeat_n(1, missing));
        ds.resize(goal.cap.max(ds.len()), 0);
        ds.sort_unstable_by(|a, b| b.cmp(a));
        let mut left = remaining - missing;
        for d in ds.iter_mut() {
            let add = dmax.saturating_sub(*d).min(left);
            *d += add;
            left -= add;
        }
        if left > 0 {
            return None;
        }
        total += ds.iter().map(|&d| choose2(d)).sum::<usize>();
    }
    Some(total)
}

/// Σ over pairs of existing rows of (|E_i ∩ E_j| − 1).
pub(crate) fn excess_meets(rank: usize, data: &[u8]) -> usize {
    let rows: Vec<&[u8]> = data.chunks(rank).collect();
    let mut excess = 0;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            let meet = a.iter().zip(b.iter()).filter(|(x, y)| x == y).count();
            excess += meet.saturating_sub(1);
        }
    }
    excess
}

/// Σ_v C(d(v), 2) counts every pair of edges once per shared vertex, so in
/// an intersecting completion it equals C(m, 2) plus the total excess of
/// pairs meeting more than once. Pairs among the existing rows already
/// contribute their excess. Prune when the best completion cannot pay for
/// both.
pub(crate) fn budget_rule(goal: &Goal, rank: usize, rows: usize, stats: &Stats, data: &[u8]) -> bool {
    match max_pair_count(goal, rows, stats) {
        None => true,
        Some(best) => best < choose2(goal.edges) + excess_meets(rank, data),
    }
}

/// Two vertices u, v plus ⌈(m − |E(u) ∪ E(v)|)/2⌉ more cover a completion,
/// because the edges avoiding both still pairwise meet. Prune when two
/// stars of the partial instance already cover too much.
pub(crate) fn pair_rule(goal: &Goal, rank: usize, data: &[u8]) -> bool {
    if goal.tau < 3 {
        return false;
    }
    // 2 + ⌈(m − c)/2⌉ < t  ⇔  c ≥ m − 2(t − 3)
    let need = goal.edges.saturating_sub(2 * (goal.tau - 3));
    let rows = data.len() / rank;
    if rows < need {
        return false;
    }
    let cap = goal.cap;
    let mut stars = vec![0u64; rank * cap];
    for (i, row) in data.chunks(rank).enumerate() {
        for (c, &v) in row.iter().enumerate() {
            stars[c * cap + v as usize] |= 1 << i;
        }
    }
    let live: Vec<u64> = stars.into_iter().filter(|&s| s != 0).collect();
    live.iter()
        .enumerate()
        .any(|(i, a)| live[i + 1..].iter().any(|b| (a | b).count_ones() as usize >= need))
}

/// Any cover of the partial instance extends to a cover of a completion by
/// adding one vertex per two new edges (the new edges pairwise meet). Prune
/// when τ(partial) + ⌈R/2⌉ < t.
pub(crate) fn cover_growth_rule(goal: &Goal, rank: usize, rows: usize, data: &[u8]) -> bool {
    let remaining = goal.edges - rows;
    let slack = goal.tau.saturating_sub(1 + remaining.div_ceil(2));
    if goal.tau < 1 + remaining.div_ceil(2) {
        return false;
    }
    partial_has_cover(goal.cap, rank, rows, data, slack)
}

/// True if the first `rows` rows have a cover with at most `k` vertices.
pub(crate) fn partial_has_cover(cap: usize, rank: usize, rows: usize, data: &[u8], k: usize) -> bool {
    matrix_cover_problem(cap, rank, rows, data).cover_within(k).is_some()
}

pub(crate) fn matrix_cover_problem(cap: usize, rank: usize, rows: usize, data: &[u8]) -> CoverProblem<u64> {
    let mut stars = vec![0u64; rank * cap];
    let mut edge_vertices = Vec::with_capacity(rows);
    for (i, row) in data.chunks(rank).take(rows).enumerate() {
        let ids: Vec<usize> = row
            .iter()
            .enumerate()
            .map(|(c, &v)| c * cap + v as usize)
            .collect();
        for &id in &ids {
            stars[id] |= 1 << i;
        }
        edge_vertices.push(ids);
    }
    CoverProblem::new(stars, edge_vertices, rows)
}
