//! Exact multi-family set cover by depth-first branch and bound.
//!
//! Every constraint lists the elements that satisfy it; a solution is a set
//! of elements meeting every constraint. The search branches on the
//! uncovered constraint with the fewest remaining candidates: the `i`-th
//! branch takes its `i`-th candidate and excludes the earlier ones, so each
//! solution is reached along exactly one path.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

/// Subtrees handed to workers. Fixed so node counts do not depend on the
/// number of threads.
const FRONTIER_TARGET: usize = 64;
const FRONTIER_MAX_DEPTH: usize = 6;

#[derive(Debug, Clone)]
pub(crate) struct CoverProblem {
    elements: usize,
    candidates: Vec<Vec<u32>>,
    covers: Vec<Vec<u32>>,
    family: Vec<usize>,
    families: usize,
}

impl CoverProblem {
    /// `constraints` holds `(family, candidates)` pairs; candidates must be
    /// element indices below `elements`.
    pub(crate) fn new(elements: usize, constraints: Vec<(usize, Vec<u32>)>) -> Self {
        let families = constraints.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let mut covers = vec![Vec::new(); elements];
        let mut family = Vec::with_capacity(constraints.len());
        let mut candidates = Vec::with_capacity(constraints.len());
        for (id, (f, mut cands)) in constraints.into_iter().enumerate() {
            cands.sort_unstable();
            cands.dedup();
            for &e in &cands {
                covers[e as usize].push(id as u32);
            }
            family.push(f);
            candidates.push(cands);
        }
        CoverProblem {
            elements,
            candidates,
            covers,
            family,
            families,
        }
    }

    pub(crate) fn is_solution(&self, chosen: &[u32]) -> bool {
        self.candidates
            .iter()
            .all(|c| c.iter().any(|e| chosen.contains(e)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Stop at the first solution.
    Any,
    /// Enumerate everything within the limit and keep the lexicographically
    /// least sorted solution.
    LexLeast,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found(Vec<u32>),
    Infeasible,
    Aborted,
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Take(u32),
    Skip(u32),
}

struct Shared<'a> {
    nodes: &'a AtomicU64,
    budget: Option<u64>,
    abort: AtomicBool,
    found_any: AtomicBool,
    goal: Goal,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| seen > b) {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
            && !(self.goal == Goal::Any && self.found_any.load(Ordering::Relaxed))
    }
}

struct State<'p> {
    p: &'p CoverProblem,
    chosen: Vec<u32>,
    excluded: Vec<bool>,
    hits: Vec<u32>,
    avail: Vec<u32>,
    uncovered: Vec<usize>,
    total_uncovered: usize,
    scratch: Vec<bool>,
    gains: Vec<u32>,
}

impl<'p> State<'p> {
    fn new(p: &'p CoverProblem) -> Self {
        let mut uncovered = vec![0; p.families];
        for &f in &p.family {
            uncovered[f] += 1;
        }
        State {
            p,
            chosen: Vec::new(),
            excluded: vec![false; p.elements],
            hits: vec![0; p.candidates.len()],
            avail: p.candidates.iter().map(|c| c.len() as u32).collect(),
            total_uncovered: p.candidates.len(),
            uncovered,
            scratch: vec![false; p.elements],
            gains: Vec::with_capacity(p.elements),
        }
    }

    fn take(&mut self, e: u32) {
        self.chosen.push(e);
        for &c in &self.p.covers[e as usize] {
            let c = c as usize;
            if self.hits[c] == 0 {
                self.uncovered[self.p.family[c]] -= 1;
                self.total_uncovered -= 1;
            }
            self.hits[c] += 1;
        }
    }

    fn untake(&mut self) {
        let e = self.chosen.pop().expect("untake without take");
        for &c in &self.p.covers[e as usize] {
            let c = c as usize;
            self.hits[c] -= 1;
            if self.hits[c] == 0 {
                self.uncovered[self.p.family[c]] += 1;
                self.total_uncovered += 1;
            }
        }
    }

    fn skip(&mut self, e: u32) {
        self.excluded[e as usize] = true;
        for &c in &self.p.covers[e as usize] {
            self.avail[c as usize] -= 1;
        }
    }

    fn unskip(&mut self, e: u32) {
        self.excluded[e as usize] = false;
        for &c in &self.p.covers[e as usize] {
            self.avail[c as usize] += 1;
        }
    }

    fn apply(&mut self, step: Step) {
        match step {
            Step::Take(e) => self.take(e),
            Step::Skip(e) => self.skip(e),
        }
    }

    fn is_free(&self, e: u32) -> bool {
        !self.excluded[e as usize] && !self.chosen.contains(&e)
    }

    /// Lower bound on the number of further elements needed.
    fn remaining_bound(&mut self) -> usize {
        if self.total_uncovered == 0 {
            return 0;
        }
        // Uncovered constraints with pairwise disjoint candidate sets each
        // need their own element.
        self.scratch.iter_mut().for_each(|s| *s = false);
        let mut packing = 0;
        for (c, cands) in self.p.candidates.iter().enumerate() {
            if self.hits[c] != 0 {
                continue;
            }
            let mut clash = false;
            for &e in cands {
                if !self.excluded[e as usize] && self.scratch[e as usize] {
                    clash = true;
                    break;
                }
            }
            if clash {
                continue;
            }
            packing += 1;
            for &e in cands {
                self.scratch[e as usize] = true;
            }
        }
        // Per family: fewest free elements whose uncovered coverage adds up.
        let mut best = packing;
        for f in 0..self.p.families {
            let need = self.uncovered[f];
            if need == 0 {
                continue;
            }
            self.gains.clear();
            for e in 0..self.p.elements as u32 {
                if self.excluded[e as usize] {
                    continue;
                }
                let g = self.p.covers[e as usize]
                    .iter()
                    .filter(|&&c| self.hits[c as usize] == 0 && self.p.family[c as usize] == f)
                    .count() as u32;
                if g > 0 {
                    self.gains.push(g);
                }
            }
            self.gains.sort_unstable_by(|a, b| b.cmp(a));
            let mut sum = 0usize;
            let mut k = 0usize;
            for &g in &self.gains {
                if sum >= need {
                    break;
                }
                sum += g as usize;
                k += 1;
            }
            if sum < need {
                return usize::MAX / 2;
            }
            best = best.max(k);
        }
        best
    }

    /// Branching constraint: uncovered, fewest available candidates.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for c in 0..self.p.candidates.len() {
            if self.hits[c] != 0 {
                continue;
            }
            let a = self.avail[c];
            if best.is_none_or(|(b, _)| a < b) {
                best = Some((a, c));
                if a == 0 {
                    break;
                }
            }
        }
        best.map(|(_, c)| c)
    }

    fn branch_candidates(&self, c: usize) -> Vec<u32> {
        self.p.candidates[c]
            .iter()
            .copied()
            .filter(|&e| self.is_free(e))
            .collect()
    }
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

fn offer(best: &mut Option<Vec<u32>>, candidate: Vec<u32>) {
    if best.as_ref().is_none_or(|b| candidate < *b) {
        *best = Some(candidate);
    }
}

enum Node {
    Solved,
    Dead,
    Branch(Vec<u32>),
}

fn classify(state: &mut State<'_>, limit: usize) -> Node {
    if state.total_uncovered == 0 {
        return Node::Solved;
    }
    if state.chosen.len() + state.remaining_bound() > limit {
        return Node::Dead;
    }
    match state.pick() {
        Some(c) if state.avail[c] > 0 => Node::Branch(state.branch_candidates(c)),
        _ => Node::Dead,
    }
}

fn dfs(state: &mut State<'_>, limit: usize, shared: &Shared<'_>, best: &mut Option<Vec<u32>>) {
    if !shared.tick() {
        return;
    }
    let cands = match classify(state, limit) {
        Node::Solved => {
            offer(best, sorted(&state.chosen));
            shared.found_any.store(true, Ordering::Relaxed);
            return;
        }
        Node::Dead => return,
        Node::Branch(c) => c,
    };
    let mut skipped = Vec::with_capacity(cands.len());
    for e in cands {
        state.take(e);
        dfs(state, limit, shared, best);
        state.untake();
        if shared.abort.load(Ordering::Relaxed)
            || (shared.goal == Goal::Any && shared.found_any.load(Ordering::Relaxed))
        {
            break;
        }
        state.skip(e);
        skipped.push(e);
    }
    for e in skipped.into_iter().rev() {
        state.unskip(e);
    }
}

/// Splits the tree into subtrees, breadth first, counting expanded nodes.
fn frontier(
    p: &CoverProblem,
    limit: usize,
    shared: &Shared<'_>,
    best: &mut Option<Vec<u32>>,
) -> Vec<Vec<Step>> {
    let mut tasks: Vec<Vec<Step>> = vec![Vec::new()];
    for _ in 0..FRONTIER_MAX_DEPTH {
        if tasks.len() >= FRONTIER_TARGET {
            break;
        }
        let mut next = Vec::new();
        let mut grew = false;
        for steps in tasks {
            let mut state = State::new(p);
            steps.iter().for_each(|&s| state.apply(s));
            if !shared.tick() {
                return Vec::new();
            }
            match classify(&mut state, limit) {
                Node::Solved => {
                    offer(best, sorted(&state.chosen));
                    shared.found_any.store(true, Ordering::Relaxed);
                }
                Node::Dead => {}
                Node::Branch(cands) => {
                    grew = true;
                    let mut prefix = steps.clone();
                    for e in cands {
                        let mut child = prefix.clone();
                        child.push(Step::Take(e));
                        next.push(child);
                        prefix.push(Step::Skip(e));
                    }
                }
            }
        }
        tasks = next;
        if !grew {
            break;
        }
    }
    tasks
}

/// Searches for a cover with at most `limit` elements.
pub(crate) fn solve(
    p: &CoverProblem,
    limit: usize,
    goal: Goal,
    nodes: &AtomicU64,
    budget: Option<u64>,
    threads: usize,
) -> Outcome {
    let shared = Shared {
        nodes,
        budget,
        abort: AtomicBool::new(false),
        found_any: AtomicBool::new(false),
        goal,
    };
    let mut best = None;
    let tasks = frontier(p, limit, &shared, &mut best);
    let merged = Mutex::new(best);
    let next = AtomicUsize::new(0);
    let workers = threads.clamp(1, tasks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local = None;
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(steps) = tasks.get(i) else { break };
                    if shared.abort.load(Ordering::Relaxed) {
                        break;
                    }
                    let mut state = State::new(p);
                    steps.iter().for_each(|&s| state.apply(s));
                    dfs(&mut state, limit, &shared, &mut local);
                }
                if let Some(sol) = local {
                    offer(&mut merged.lock().unwrap(), sol);
                }
            });
        }
    });
    let best = merged.into_inner().unwrap();
    if shared.abort.load(Ordering::Relaxed) {
        return Outcome::Aborted;
    }
    match best {
        Some(sol) => Outcome::Found(sol),
        None => Outcome::Infeasible,
    }
}
