//! Exhaustive search for intersecting r-partite hypergraphs with m edges
//! and cover number at least a target.
//!
//! Instances are generated edge by edge as edge matrices. A partial matrix
//! is extended only if the extension is again the canonical representative
//! of its isomorphism class, so each class is produced exactly once. A
//! canonical matrix has strictly increasing rows and uses the values of
//! each column in first-appearance order, which narrows the candidates for
//! the next row before the canonicity test runs.
//!
//! The tree is split at a fixed depth into frontier subtrees that are
//! explored in parallel. Results are merged in frontier order, so witnesses,
//! node counts and statuses do not depend on the number of threads.

mod canon;
pub mod checkpoint;
mod prune;

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

pub use canon::{canonical_form, CanonicalForm};
use canon::{is_canonical, MatrixRef};
use checkpoint::{Checkpoint, ParamsRecord, Rows, SubtreeRecord, CHECKPOINT_SCHEMA};
use prune::{Goal, Stats};

use crate::error::{Error, Result};
use crate::hypergraph::PartiteHypergraph;

/// Frontier size the split aims for.
const FRONTIER_TARGET: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Stop at the first witness.
    First,
    /// Enumerate witnesses, up to an optional limit.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    /// At least one witness.
    Found,
    /// The whole tree was explored without a witness.
    Exhausted,
    /// The session budget ran out first; resume from the checkpoint.
    Interrupted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub rank: usize,
    pub edges: usize,
    pub tau: usize,
    /// Most vertices any part may use; defaults to `edges`.
    pub cap: Option<usize>,
    pub mode: SearchMode,
    /// With [`SearchMode::All`], stop after this many witnesses.
    pub limit: Option<usize>,
    /// Turning the pruning rules off leaves the outcome unchanged.
    pub pruning: bool,
}

impl SearchParams {
    pub fn new(rank: usize, edges: usize, tau: usize) -> Self {
        SearchParams {
            rank,
            edges,
            tau,
            cap: None,
            mode: SearchMode::First,
            limit: None,
            pruning: true,
        }
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn pruning(mut self, on: bool) -> Self {
        self.pruning = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::SearchParameters(msg));
        if self.rank < 2 {
            return fail(format!("r must be at least 2, got {}", self.rank));
        }
        if self.rank > u8::MAX as usize {
            return fail(format!("r must be at most {}, got {}", u8::MAX, self.rank));
        }
        if self.edges == 0 || self.edges > 64 {
            return fail(format!("m must be between 1 and 64, got {}", self.edges));
        }
        if self.tau == 0 {
            return fail("tau must be at least 1".into());
        }
        if let Some(cap) = self.cap {
            if cap < self.tau {
                return fail(format!("cap {cap} is below tau {}", self.tau));
            }
        }
        if self.limit == Some(0) {
            return fail("limit must be at least 1".into());
        }
        Ok(())
    }

    fn effective_cap(&self) -> usize {
        self.cap.unwrap_or(self.edges).min(self.edges).min(u8::MAX as usize)
    }

    fn witness_limit(&self) -> Option<usize> {
        match self.mode {
            SearchMode::First => Some(1),
            SearchMode::All => self.limit,
        }
    }

    fn record(&self) -> ParamsRecord {
        ParamsRecord {
            rank: self.rank,
            edges: self.edges,
            tau: self.tau,
            cap: self.effective_cap(),
            limit: self.witness_limit(),
            pruning: self.pruning,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub params: SearchParams,
    pub status: SearchStatus,
    /// Canonical representatives in canonical-form order.
    pub instances: Vec<PartiteHypergraph>,
    pub forms: Vec<CanonicalForm>,
    /// Search-tree nodes generated, counting the empty root.
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// State file; resumed if it exists, created otherwise.
    pub checkpoint: Option<PathBuf>,
    /// Explore at most this many frontier subtrees in this session.
    pub max_subtrees: Option<usize>,
}

/// Runs a search without a checkpoint.
pub fn search_extremal(params: &SearchParams) -> Result<SearchOutcome> {
    search_with(params, &SearchOptions::default())
}

pub fn search_with(params: &SearchParams, options: &SearchOptions) -> Result<SearchOutcome> {
    params.validate()?;
    let start = Instant::now();
    let record = params.record();
    let engine = Engine::new(&record);

    let resumed = match &options.checkpoint {
        Some(path) if path.exists() => {
            let c = Checkpoint::load(path)?;
            c.ensure_matches(&record)?;
            Some(c)
        }
        _ => None,
    };
    let (frontier, frontier_nodes, done) = match resumed {
        Some(c) => {
            let frontier: Vec<Vec<u8>> = c.frontier.iter().map(flatten).collect();
            let mut done: Vec<Option<SubtreeRun>> = vec![None; frontier.len()];
            for s in c.completed {
                done[s.index] = Some(SubtreeRun {
                    witnesses: s.witnesses.iter().map(flatten).collect(),
                    nodes: s.nodes,
                    nodes_at_witness: s.nodes_at_witness,
                });
            }
            (frontier, c.frontier_nodes, done)
        }
        None => {
            let (frontier, nodes) = engine.frontier();
            let done = vec![None; frontier.len()];
            (frontier, nodes, done)
        }
    };

    let snapshot = |done: &[Option<SubtreeRun>]| Checkpoint {
        schema: CHECKPOINT_SCHEMA.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        params: record,
        frontier_nodes,
        frontier: frontier.iter().map(|d| unflatten(d, record.rank)).collect(),
        completed: done
            .iter()
            .enumerate()
            .filter_map(|(index, run)| {
                run.as_ref().map(|run| SubtreeRecord {
                    index,
                    nodes: run.nodes,
                    witnesses: run.witnesses.iter().map(|w| unflatten(w, record.rank)).collect(),
                    nodes_at_witness: run.nodes_at_witness.clone(),
                })
            })
            .collect(),
    };
    if let Some(path) = &options.checkpoint {
        snapshot(&done).store(path)?;
    }

    let limit = record.limit;
    let cutoff = AtomicUsize::new(cutoff_index(&done, limit));
    let next = AtomicUsize::new(0);
    let started = AtomicUsize::new(0);
    let state = Mutex::new((done, None::<Error>));

    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= frontier.len() || i > cutoff.load(Ordering::SeqCst) {
            return;
        }
        if state.lock().expect("lock").0[i].is_some() {
            continue;
        }
        if let Some(budget) = options.max_subtrees {
            if started.fetch_add(1, Ordering::SeqCst) >= budget {
                return;
            }
        }
        let mut run = SubtreeRun::default();
        let stop = || i > cutoff.load(Ordering::Relaxed);
        if engine.visit(&frontier[i], limit, &stop, &mut run) == Flow::Aborted {
            continue;
        }
        let mut guard = state.lock().expect("lock");
        guard.0[i] = Some(run);
        cutoff.store(cutoff_index(&guard.0, limit), Ordering::SeqCst);
        if let Some(path) = &options.checkpoint {
            if let Err(e) = snapshot(&guard.0).store(path) {
                guard.1.get_or_insert(e);
            }
        }
    };
    rayon::scope(|s| {
        for _ in 0..rayon::current_num_threads() {
            s.spawn(|_| worker());
        }
    });

    let (done, error) = state.into_inner().expect("lock");
    if let Some(e) = error {
        return Err(e);
    }

    let mut witnesses: Vec<Vec<u8>> = Vec::new();
    let mut nodes = frontier_nodes;
    let mut finished = true;
    for run in &done {
        let Some(run) = run else {
            finished = false;
            break;
        };
        if let Some(l) = limit {
            let need = l - witnesses.len();
            if run.witnesses.len() >= need {
                nodes += run.nodes_at_witness[need - 1];
                witnesses.extend(run.witnesses[..need].iter().cloned());
                break;
            }
        }
        nodes += run.nodes;
        witnesses.extend(run.witnesses.iter().cloned());
    }
    let reached = limit.is_some_and(|l| witnesses.len() >= l);
    let status = if !finished && !reached {
        SearchStatus::Interrupted
    } else if witnesses.is_empty() {
        SearchStatus::Exhausted
    } else {
        SearchStatus::Found
    };

    let mut forms: Vec<CanonicalForm> = witnesses
        .into_iter()
        .map(|w| CanonicalForm::from_matrix(record.rank, record.edges, w))
        .collect();
    forms.sort();
    Ok(SearchOutcome {
        params: params.clone(),
        status,
        instances: forms.iter().map(CanonicalForm::to_hypergraph).collect(),
        forms,
        nodes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn flatten(rows: &Rows) -> Vec<u8> {
    rows.iter().flatten().copied().collect()
}

fn unflatten(data: &[u8], rank: usize) -> Rows {
    data.chunks(rank).map(<[u8]>::to_vec).collect()
}

/// Last frontier index that can still contribute: the first index at which
/// the finished prefix already holds `limit` witnesses.
fn cutoff_index(done: &[Option<SubtreeRun>], limit: Option<usize>) -> usize {
    let Some(limit) = limit else {
        return usize::MAX;
    };
    let mut count = 0;
    for (i, run) in done.iter().enumerate() {
        let Some(run) = run else {
            return usize::MAX;
        };
        count += run.witnesses.len();
        if count >= limit {
            return i;
        }
    }
    usize::MAX
}

#[derive(Clone, Debug, Default)]
struct SubtreeRun {
    witnesses: Vec<Vec<u8>>,
    nodes: u64,
    /// Node counter right after each witness was found.
    nodes_at_witness: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Flow {
    Continue,
    LimitReached,
    Aborted,
}

struct Engine {
    rank: usize,
    goal: Goal,
    pruning: bool,
}

impl Engine {
    fn new(p: &ParamsRecord) -> Self {
        Engine {
            rank: p.rank,
            goal: Goal {
                edges: p.edges,
                tau: p.tau,
                cap: p.cap,
            },
            pruning: p.pruning,
        }
    }

    fn rows(&self, data: &[u8]) -> usize {
        data.len() / self.rank
    }

    fn is_witness(&self, data: &[u8]) -> bool {
        !prune::partial_has_cover(self.goal.cap, self.rank, self.goal.edges, data, self.goal.tau - 1)
    }

    fn pruned(&self, data: &[u8]) -> bool {
        if !self.pruning {
            return false;
        }
        let rows = self.rows(data);
        let stats = Stats::of(self.rank, data);
        prune::part_size_rule(&self.goal, rows, &stats)
            || prune::star_rule(&self.goal, &stats)
            || prune::budget_rule(&self.goal, self.rank, rows, &stats, data)
            || prune::pair_rule(&self.goal, self.rank, data)
            || prune::cover_growth_rule(&self.goal, self.rank, rows, data)
    }

    /// Canonical, unpruned one-row extensions of a canonical matrix, in
    /// increasing order of the new row.
    fn children(&self, data: &[u8]) -> Vec<Vec<u8>> {
        let r = self.rank;
        let k = self.rows(data);
        if k == 0 {
            let root = vec![0; r];
            return if self.pruned(&root) { Vec::new() } else { vec![root] };
        }
        let cap = self.goal.cap;
        let mut used = vec![0usize; r];
        let mut stars = vec![0u64; r * cap];
        for (i, row) in data.chunks(r).enumerate() {
            for (c, &v) in row.iter().enumerate() {
                used[c] = used[c].max(v as usize + 1);
                stars[c * cap + v as usize] |= 1 << i;
            }
        }
        // columns of a canonical matrix are non-decreasing as vectors
        let tied: Vec<bool> = (0..r.saturating_sub(1))
            .map(|c| (0..k).all(|i| data[i * r + c] == data[i * r + c + 1]))
            .collect();
        // in a canonical matrix no two rows meet more often than the first two
        let max_meet = if k >= 2 {
            (0..r).filter(|&c| data[c] == data[r + c]).count()
        } else {
            r
        };
        let mut child = data.to_vec();
        child.extend_from_slice(&data[(k - 1) * r..]);
        let mut ext = Extension {
            engine: self,
            k,
            used,
            stars,
            tied,
            max_meet: max_meet as u8,
            all: if k == 64 { u64::MAX } else { (1u64 << k) - 1 },
            meets: vec![0; k],
            child,
            out: Vec::new(),
        };
        ext.extend(0, false, 0);
        ext.out
    }

    /// Splits the tree at the first depth holding at least
    /// [`FRONTIER_TARGET`] nodes, or at the leaves.
    fn frontier(&self) -> (Vec<Vec<u8>>, u64) {
        let mut level: Vec<Vec<u8>> = vec![Vec::new()];
        let mut nodes = 1u64;
        let mut depth = 0;
        while level.len() < FRONTIER_TARGET && depth < self.goal.edges {
            let mut next = Vec::new();
            for data in &level {
                let kids = self.children(data);
                nodes += kids.len() as u64;
                next.extend(kids);
            }
            level = next;
            depth += 1;
        }
        (level, nodes)
    }

    /// Explores below a node that has already been counted.
    fn visit(
        &self,
        data: &[u8],
        limit: Option<usize>,
        stop: &dyn Fn() -> bool,
        run: &mut SubtreeRun,
    ) -> Flow {
        if stop() {
            return Flow::Aborted;
        }
        let rows = self.rows(data);
        if rows == self.goal.edges {
            if self.is_witness(data) {
                run.witnesses.push(data.to_vec());
                run.nodes_at_witness.push(run.nodes);
                if limit.is_some_and(|l| run.witnesses.len() >= l) {
                    return Flow::LimitReached;
                }
            }
            return Flow::Continue;
        }
        for child in self.children(data) {
            run.nodes += 1;
            match self.visit(&child, limit, stop, run) {
                Flow::Continue => {}
                flow => return flow,
            }
        }
        Flow::Continue
    }
}

/// Enumerates the next row column by column.
struct Extension<'a> {
    engine: &'a Engine,
    k: usize,
    used: Vec<usize>,
    stars: Vec<u64>,
    tied: Vec<bool>,
    max_meet: u8,
    all: u64,
    meets: Vec<u8>,
    child: Vec<u8>,
    out: Vec<Vec<u8>>,
}

impl Extension<'_> {
    fn extend(&mut self, c: usize, greater: bool, covered: u64) {
        let r = self.engine.rank;
        let cap = self.engine.goal.cap;
        let k = self.k;
        let row_at = k * r;
        if c == r {
            if !greater || covered != self.all {
                return;
            }
            if self.engine.pruned(&self.child) {
                return;
            }
            let m = MatrixRef {
                rows: k + 1,
                cols: r,
                values: cap,
                data: &self.child,
            };
            if is_canonical(m) {
                self.out.push(self.child.clone());
            }
            return;
        }
        let last = self.child[row_at - r + c];
        let prev = if c > 0 { self.child[row_at + c - 1] } else { 0 };
        let lo = match (c > 0 && self.tied[c - 1], greater) {
            (true, false) => prev.max(last),
            (true, true) => prev,
            (false, false) => last,
            (false, true) => 0,
        };
        let hi = self.used[c].min(cap - 1) as u8;
        for v in lo..=hi {
            let star = self.stars[c * cap + v as usize];
            let mut bits = star;
            let mut ok = true;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.meets[j] += 1;
                ok &= self.meets[j] <= self.max_meet;
            }
            if ok {
                self.child[row_at + c] = v;
                self.extend(c + 1, greater || v > last, covered | star);
            }
            let mut bits = star;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.meets[j] -= 1;
            }
        }
    }
}

impl SearchOutcome {
    /// Compares everything except wall time.
    pub fn same_result(&self, other: &SearchOutcome) -> bool {
        self.status == other.status && self.forms == other.forms && self.nodes == other.nodes
    }
}
