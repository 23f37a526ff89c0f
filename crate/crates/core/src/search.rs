//! Backtracking map search with forward checking.
//!
//! One engine serves three map kinds that differ only in how often a host
//! vertex may be reused: once (embeddings), without bound (homomorphisms),
//! or up to a fixed capacity (embeddings into a blow-up, searched on the base
//! graph). Pattern vertices are assigned pinned-first, then by connectivity
//! to already ordered vertices, then by degree. Whenever an edge has all but
//! one vertex assigned, the domain of the remaining vertex is filtered to the
//! host vertices that complete it to an edge.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeOracle, Hypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Reuse {
    Injective,
    Unbounded,
    Capacity(u32),
}

/// Time and parallelism controls shared by all searches.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    pub deadline: Option<Instant>,
    /// Worker threads for the top-level split; 0 or 1 searches sequentially.
    pub threads: usize,
}

impl SearchLimits {
    pub fn with_deadline(deadline: Option<Instant>) -> Self {
        SearchLimits { deadline, threads: 1 }
    }
}

/// Three-valued search result; `Unknown` means the deadline expired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Absent,
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SearchOutcome::Unknown)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Absent => SearchOutcome::Absent,
            SearchOutcome::Unknown => SearchOutcome::Unknown,
        }
    }
}

/// Fixed assignment order and forward-check schedule for one pattern and pin set.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    order: Vec<u32>,
    /// For depth `d`: (edge index, vertex completing it) pairs that become
    /// checkable once `order[d]` is assigned.
    checks: Vec<Vec<(usize, u32)>>,
    pinned: usize,
}

impl Plan {
    pub(crate) fn new(pattern: &Hypergraph, pinned: &[u32]) -> Plan {
        let n = pattern.n();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in pattern.edges().iter().enumerate() {
            for &v in e {
                incident[v as usize].push(i);
            }
        }
        let mut placed = vec![false; n];
        let mut conn = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let place = |u: u32, order: &mut Vec<u32>, placed: &mut Vec<bool>, conn: &mut Vec<usize>| {
            placed[u as usize] = true;
            order.push(u);
            for &ei in &incident[u as usize] {
                for &w in &pattern.edges()[ei] {
                    conn[w as usize] += 1;
                }
            }
        };
        for &p in pinned {
            if (p as usize) < n && !placed[p as usize] {
                place(p, &mut order, &mut placed, &mut conn);
            }
        }
        let pinned_count = order.len();
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    (conn[a], pattern.degrees()[a])
                        .cmp(&(conn[b], pattern.degrees()[b]))
                        .then(b.cmp(&a))
                })
                .expect("unplaced vertex exists");
            place(next as u32, &mut order, &mut placed, &mut conn);
        }
        let mut pos = vec![0usize; n];
        for (d, &v) in order.iter().enumerate() {
            pos[v as usize] = d;
        }
        let mut checks = vec![Vec::new(); n];
        for (i, e) in pattern.edges().iter().enumerate() {
            let mut ps: Vec<usize> = e.iter().map(|&v| pos[v as usize]).collect();
            ps.sort_unstable();
            let last = ps[ps.len() - 1];
            let second = ps[ps.len() - 2];
            checks[second].push((i, order[last]));
        }
        Plan {
            order,
            checks,
            pinned: pinned_count,
        }
    }
}

struct Shared<'s> {
    deadline: Option<Instant>,
    timed_out: &'s AtomicBool,
    /// Lowest top-level rank that produced a solution (parallel find only).
    best_rank: &'s AtomicUsize,
}

#[derive(Clone)]
struct State {
    words: usize,
    domains: Vec<u64>,
    image: Vec<u32>,
    load: Vec<u32>,
    trail: Vec<(usize, u64)>,
    nodes: u64,
}

impl State {
    fn domain(&self, v: u32) -> &[u64] {
        let s = v as usize * self.words;
        &self.domains[s..s + self.words]
    }
}

fn bits(words: &[u64]) -> impl Iterator<Item = u32> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros();
            w &= w - 1;
            Some(wi as u32 * 64 + b)
        })
    })
}

pub(crate) struct Engine<'a, H: EdgeOracle + ?Sized> {
    pattern: &'a Hypergraph,
    host: &'a H,
    reuse: Reuse,
    plan: Plan,
    pins: Vec<(u32, u32)>,
}

enum Flow {
    Continue,
    Stop,
}

const UNASSIGNED: u32 = u32::MAX;

impl<'a, H: EdgeOracle + Sync + ?Sized> Engine<'a, H> {
    pub(crate) fn new(pattern: &'a Hypergraph, host: &'a H, reuse: Reuse, pins: &[(u32, u32)]) -> Result<Self> {
        let plan = Plan::new(pattern, &pins.iter().map(|p| p.0).collect::<Vec<_>>());
        Self::with_plan(pattern, host, reuse, pins, plan)
    }

    pub(crate) fn with_plan(
        pattern: &'a Hypergraph,
        host: &'a H,
        reuse: Reuse,
        pins: &[(u32, u32)],
        plan: Plan,
    ) -> Result<Self> {
        if pattern.k() != host.uniformity() {
            return Err(Error::UniformityMismatch(pattern.k(), host.uniformity()));
        }
        let mut seen: Vec<Option<u32>> = vec![None; pattern.n()];
        let mut uses = std::collections::HashMap::<u32, u32>::new();
        let mut dedup = Vec::new();
        for &(p, h) in pins {
            if p as usize >= pattern.n() {
                return Err(Error::InconsistentPin(format!("pattern vertex {p} out of range")));
            }
            if h as usize >= host.vertex_count() {
                return Err(Error::InconsistentPin(format!("host vertex {h} out of range")));
            }
            match seen[p as usize] {
                Some(prev) if prev != h => {
                    return Err(Error::InconsistentPin(format!(
                        "pattern vertex {p} pinned to both {prev} and {h}"
                    )))
                }
                Some(_) => continue,
                None => {
                    seen[p as usize] = Some(h);
                    dedup.push((p, h));
                }
            }
            let c = uses.entry(h).or_insert(0);
            *c += 1;
            let limit = match reuse {
                Reuse::Injective => 1,
                Reuse::Capacity(c) => c,
                Reuse::Unbounded => u32::MAX,
            };
            if *c > limit {
                return Err(Error::InconsistentPin(format!(
                    "host vertex {h} used by too many pinned vertices"
                )));
            }
        }
        Ok(Engine {
            pattern,
            host,
            reuse,
            plan,
            pins: dedup,
        })
    }

    fn initial_state(&self) -> State {
        let n_host = self.host.vertex_count();
        let words = n_host.div_ceil(64).max(1);
        let p = self.pattern.n();
        let mut domains = vec![0u64; p * words];
        let host_deg: Vec<usize> = (0..n_host as u32).map(|x| self.host.degree(x)).collect();
        for u in 0..p {
            let need = self.pattern.degrees()[u];
            let row = &mut domains[u * words..(u + 1) * words];
            for (x, &hd) in host_deg.iter().enumerate() {
                let ok = match self.reuse {
                    Reuse::Injective => hd >= need,
                    _ => need == 0 || hd > 0,
                };
                if ok {
                    row[x / 64] |= 1 << (x % 64);
                }
            }
        }
        for &(pv, hv) in &self.pins {
            let row = &mut domains[pv as usize * words..(pv as usize + 1) * words];
            let keep = row[hv as usize / 64] & (1 << (hv % 64));
            row.iter_mut().for_each(|w| *w = 0);
            row[hv as usize / 64] = keep;
        }
        State {
            words,
            domains,
            image: vec![UNASSIGNED; p],
            load: vec![0; n_host],
            trail: Vec::new(),
            nodes: 0,
        }
    }

    fn limit(&self) -> u32 {
        match self.reuse {
            Reuse::Injective => 1,
            Reuse::Capacity(c) => c,
            Reuse::Unbounded => u32::MAX,
        }
    }

    fn candidates(&self, st: &State, d: usize) -> Vec<u32> {
        let u = self.plan.order[d];
        let mut c: Vec<u32> = bits(st.domain(u)).collect();
        if let Reuse::Capacity(_) = self.reuse {
            c.sort_by_key(|&x| (st.load[x as usize], x));
        }
        c
    }

    /// Assigns `order[d] -> x` and runs the forward checks of depth `d`.
    /// Returns false on a domain wipe-out; the caller undoes via the trail.
    fn assign(&self, st: &mut State, d: usize, x: u32) -> bool {
        let u = self.plan.order[d];
        st.image[u as usize] = x;
        st.load[x as usize] += 1;
        let k = self.pattern.k();
        let mut buf = vec![0u32; k];
        for &(ei, w) in &self.plan.checks[d] {
            let edge = &self.pattern.edges()[ei];
            let mut slot = 0;
            for &v in edge {
                if v != w {
                    buf[slot] = st.image[v as usize];
                    slot += 1;
                }
            }
            let base = w as usize * st.words;
            let mut any = false;
            for wi in 0..st.words {
                let old = st.domains[base + wi];
                let mut keep = 0u64;
                let mut rest = old;
                while rest != 0 {
                    let b = rest.trailing_zeros();
                    rest &= rest - 1;
                    buf[k - 1] = wi as u32 * 64 + b;
                    if self.host.contains_edge(&buf) {
                        keep |= 1 << b;
                    }
                }
                if keep != old {
                    st.trail.push((base + wi, old));
                    st.domains[base + wi] = keep;
                }
                any |= keep != 0;
            }
            if !any {
                return false;
            }
        }
        true
    }

    fn undo(&self, st: &mut State, d: usize, x: u32, mark: usize) {
        while st.trail.len() > mark {
            let (i, old) = st.trail.pop().expect("trail entry");
            st.domains[i] = old;
        }
        st.load[x as usize] -= 1;
        st.image[self.plan.order[d] as usize] = UNASSIGNED;
    }

    fn expired(&self, st: &mut State, shared: &Shared<'_>) -> bool {
        st.nodes += 1;
        if shared.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if st.nodes.is_multiple_of(256) {
            if let Some(dl) = shared.deadline {
                if Instant::now() >= dl {
                    shared.timed_out.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    fn dfs(
        &self,
        st: &mut State,
        d: usize,
        shared: &Shared<'_>,
        rank: usize,
        on_solution: &mut dyn FnMut(&[u32]) -> Flow,
    ) -> Flow {
        if d == self.plan.order.len() {
            return on_solution(&st.image);
        }
        if self.expired(st, shared) || shared.best_rank.load(Ordering::Relaxed) < rank {
            return Flow::Stop;
        }
        let limit = self.limit();
        for x in self.candidates(st, d) {
            if st.load[x as usize] >= limit {
                continue;
            }
            let mark = st.trail.len();
            if self.assign(st, d, x) {
                if let Flow::Stop = self.dfs(st, d + 1, shared, rank, on_solution) {
                    self.undo(st, d, x, mark);
                    return Flow::Stop;
                }
            }
            self.undo(st, d, x, mark);
        }
        Flow::Continue
    }

    /// Assigns the pinned prefix. Returns false if the pins admit no extension.
    fn pinned_prefix(&self, st: &mut State) -> bool {
        for d in 0..self.plan.pinned {
            let u = self.plan.order[d];
            let Some(x) = bits(st.domain(u)).next() else {
                return false;
            };
            if !self.assign(st, d, x) {
                return false;
            }
        }
        true
    }

    fn shared_flags() -> (AtomicBool, AtomicUsize) {
        (AtomicBool::new(false), AtomicUsize::new(usize::MAX))
    }

    /// First solution in the engine's fixed candidate order.
    pub(crate) fn find(&self, limits: &SearchLimits) -> (SearchOutcome<Vec<u32>>, u64) {
        let (timed_out, best_rank) = Self::shared_flags();
        let shared = Shared {
            deadline: limits.deadline,
            timed_out: &timed_out,
            best_rank: &best_rank,
        };
        let mut st = self.initial_state();
        if !self.pinned_prefix(&mut st) {
            return (SearchOutcome::Absent, 0);
        }
        let start = self.plan.pinned;
        if limits.threads > 1 && start < self.plan.order.len() {
            return self.find_parallel(st, limits, &shared);
        }
        let mut found = None;
        self.dfs(&mut st, start, &shared, 0, &mut |img| {
            found = Some(img.to_vec());
            Flow::Stop
        });
        let outcome = match found {
            Some(img) => SearchOutcome::Found(img),
            None if timed_out.load(Ordering::Relaxed) => SearchOutcome::Unknown,
            None => SearchOutcome::Absent,
        };
        (outcome, st.nodes)
    }

    fn find_parallel(&self, st: State, limits: &SearchLimits, shared: &Shared<'_>) -> (SearchOutcome<Vec<u32>>, u64) {
        let d = self.plan.pinned;
        let cands = self.candidates(&st, d);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.threads)
            .build()
            .expect("thread pool");
        let results: Vec<(Option<Vec<u32>>, u64)> = pool.install(|| {
            cands
                .par_iter()
                .enumerate()
                .map(|(rank, &x)| {
                    let mut local = st.clone();
                    let mut found = None;
                    if self.assign(&mut local, d, x) {
                        self.dfs(&mut local, d + 1, shared, rank, &mut |img| {
                            found = Some(img.to_vec());
                            Flow::Stop
                        });
                    }
                    if found.is_some() {
                        shared.best_rank.fetch_min(rank, Ordering::Relaxed);
                    }
                    (found, local.nodes)
                })
                .collect()
        });
        let nodes = results.iter().map(|r| r.1).sum();
        // Rank-ordered reduction: every rank below the winner ran to completion.
        match results.into_iter().find_map(|r| r.0) {
            Some(img) => (SearchOutcome::Found(img), nodes),
            None if shared.timed_out.load(Ordering::Relaxed) => (SearchOutcome::Unknown, nodes),
            None => (SearchOutcome::Absent, nodes),
        }
    }

    /// Number of solutions, or `Unknown` on timeout.
    pub(crate) fn count(&self, limits: &SearchLimits) -> SearchOutcome<u64> {
        let (timed_out, best_rank) = Self::shared_flags();
        let shared = Shared {
            deadline: limits.deadline,
            timed_out: &timed_out,
            best_rank: &best_rank,
        };
        let mut st = self.initial_state();
        if !self.pinned_prefix(&mut st) {
            return SearchOutcome::Found(0);
        }
        let start = self.plan.pinned;
        let total = if limits.threads > 1 && start < self.plan.order.len() {
            let cands = self.candidates(&st, start);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(limits.threads)
                .build()
                .expect("thread pool");
            pool.install(|| {
                cands
                    .par_iter()
                    .map(|&x| {
                        let mut local = st.clone();
                        let mut c = 0u64;
                        if self.assign(&mut local, start, x) {
                            self.dfs(&mut local, start + 1, &shared, 0, &mut |_| {
                                c += 1;
                                Flow::Continue
                            });
                        }
                        c
                    })
                    .sum()
            })
        } else {
            let mut c = 0u64;
            self.dfs(&mut st, start, &shared, 0, &mut |_| {
                c += 1;
                Flow::Continue
            });
            c
        };
        if timed_out.load(Ordering::Relaxed) {
            SearchOutcome::Unknown
        } else {
            SearchOutcome::Found(total)
        }
    }
}
