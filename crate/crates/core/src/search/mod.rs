//! Exact perfect numbers `N(n, d)`: the least size of a degree-`d` set that
//! is both upper and lower perfect in `[n]`.
//!
//! The problem is a two-family covering problem over the `C(n, d)` layer
//! monomials. Upper constraints are the `(d+1)`-subsets, each met by its `d+1`
//! facets. Lower constraints are the `(d-1)`-subsets, each met by its `n-d+1`
//! one-element extensions. Target sizes are tried in increasing order
//! starting from a counting bound. The first feasible size is enumerated
//! completely so the witness is the lexicographically least optimum.

mod cover;

use std::sync::atomic::AtomicU64;

use crate::construct::{
    bound_perfect_set, partition_perfect_n2, perfect_number_n2, perfect_number_upper_bound,
};
use crate::error::{Error, Result};
use crate::monomial::{
    binomial, check_ambient, enumerate_degree, subsets_of_size, Monomial, MonomialSet,
};

use cover::{CoverProblem, Goal, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Exact,
    Timeout,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Exact => "exact",
            SearchStatus::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub d: usize,
    /// Exact value, or the best known upper bound on timeout.
    pub value: usize,
    /// Equal to `value` when exact.
    pub lower_bound: usize,
    /// A perfect set of size `value`.
    pub witness: MonomialSet,
    pub nodes_explored: u64,
    pub status: SearchStatus,
}

impl SearchResult {
    pub fn is_exact(&self) -> bool {
        self.status == SearchStatus::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node limit; `None` searches to completion.
    pub budget: Option<u64>,
    pub threads: usize,
}

impl SearchOptions {
    /// Unlimited budget, thread count from `FIDEAL_THREADS` or the machine.
    pub fn from_env() -> Self {
        let threads = std::env::var("FIDEAL_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&t| t > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
        SearchOptions {
            budget: None,
            threads,
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions::from_env()
    }
}

fn check_range(n: usize, d: usize) -> Result<()> {
    check_ambient(n)?;
    if d == 0 || d >= n {
        return Err(Error::InvalidParameters(format!(
            "perfect numbers need 1 <= d <= n - 1, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// Layer masks and their positions, for translating constraints.
struct Layer {
    masks: Vec<u64>,
}

impl Layer {
    fn new(n: usize, d: usize) -> Self {
        Layer {
            masks: subsets_of_size(n, d).collect(),
        }
    }

    fn index(&self, mask: u64) -> u32 {
        self.masks.binary_search(&mask).expect("mask outside layer") as u32
    }

    fn decode(&self, chosen: &[u32]) -> MonomialSet {
        chosen
            .iter()
            .map(|&i| Monomial::from_bits(self.masks[i as usize]).unwrap())
            .collect()
    }
}

const UPPER: usize = 0;
const LOWER: usize = 1;

fn upper_constraints(layer: &Layer, n: usize, d: usize) -> Vec<(usize, Vec<u32>)> {
    subsets_of_size(n, d + 1)
        .map(|t| {
            let cands = bits_of(t).map(|b| layer.index(t ^ b)).collect();
            (UPPER, cands)
        })
        .collect()
}

fn lower_constraints(layer: &Layer, n: usize, d: usize) -> Vec<(usize, Vec<u32>)> {
    let full = (1u64 << n) - 1;
    subsets_of_size(n, d - 1)
        .map(|s| {
            let cands = bits_of(full & !s).map(|b| layer.index(s | b)).collect();
            (LOWER, cands)
        })
        .collect()
}

fn bits_of(mut x: u64) -> impl Iterator<Item = u64> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let b = x & x.wrapping_neg();
        x ^= b;
        Some(b)
    })
}

/// `max(⌈C(n,d+1)/(n-d)⌉, ⌈C(n,d-1)/d⌉)`: a layer monomial lies in `n-d`
/// upper constraints and `d` lower ones.
pub fn counting_lower_bound(n: usize, d: usize) -> usize {
    let upper = binomial(n, d + 1).div_ceil((n - d) as u64);
    let lower = binomial(n, d - 1).div_ceil(d as u64);
    upper.max(lower) as usize
}

/// The construction used as the starting upper bound.
fn initial_witness(n: usize, d: usize) -> MonomialSet {
    if d == 2 && n >= 4 {
        if let Ok(set) = partition_perfect_n2(n) {
            return set;
        }
    }
    if d > 2 && n >= d + 2 {
        if let Ok(set) = bound_perfect_set(n, d) {
            return set;
        }
    }
    enumerate_degree(n, d)
}

/// Minimum size of a cover for `p` in `lb..=ub`, with `ub` known feasible.
/// `Err(s)` when the budget runs out while refuting size `s`.
fn minimise(
    p: &CoverProblem,
    lb: usize,
    ub: usize,
    goal: Goal,
    opts: SearchOptions,
    nodes: &AtomicU64,
) -> std::result::Result<Option<Vec<u32>>, usize> {
    for s in lb..=ub {
        match cover::solve(p, s, goal, nodes, opts.budget, opts.threads) {
            Outcome::Found(sol) => return Ok(Some(sol)),
            Outcome::Infeasible => {}
            Outcome::Aborted => return Err(s),
        }
    }
    Ok(None)
}

pub fn perfect_number(n: usize, d: usize, budget: Option<u64>) -> Result<SearchResult> {
    perfect_number_with(n, d, SearchOptions::from_env().with_budget(budget))
}

pub fn perfect_number_with(n: usize, d: usize, opts: SearchOptions) -> Result<SearchResult> {
    check_range(n, d)?;
    let layer = Layer::new(n, d);
    let mut constraints = upper_constraints(&layer, n, d);
    constraints.extend(lower_constraints(&layer, n, d));
    let p = CoverProblem::new(layer.masks.len(), constraints);

    let fallback = initial_witness(n, d);
    let ub = fallback.len();
    let mut lb = counting_lower_bound(n, d);
    if binomial(n - 1, d) <= SPLIT_BOUND_LAYER_CAP {
        lb = lb.max(lower_bound_split(n, d, n));
    }
    let lb = lb.min(ub);
    let nodes = AtomicU64::new(0);
    let outcome = minimise(&p, lb, ub, Goal::LexLeast, opts, &nodes);
    let nodes_explored = nodes.into_inner();
    Ok(match outcome {
        Ok(Some(sol)) => {
            debug_assert!(p.is_solution(&sol));
            SearchResult {
                n,
                d,
                value: sol.len(),
                lower_bound: sol.len(),
                witness: layer.decode(&sol),
                nodes_explored,
                status: SearchStatus::Exact,
            }
        }
        Ok(None) => unreachable!("the initial witness is a feasible cover"),
        Err(proven) => SearchResult {
            n,
            d,
            value: ub,
            lower_bound: proven,
            witness: fallback,
            nodes_explored,
            status: SearchStatus::Timeout,
        },
    })
}

/// Layers above this size are not searched for the split bound.
const SPLIT_BOUND_LAYER_CAP: u64 = 35;

/// Least size of a degree-`d` set on `[n]` meeting every `(d+1)`-subset;
/// zero when there are none.
pub fn upper_perfect_number(n: usize, d: usize) -> usize {
    if d + 1 > n {
        return 0;
    }
    let layer = Layer::new(n, d);
    let p = CoverProblem::new(layer.masks.len(), upper_constraints(&layer, n, d));
    let nodes = AtomicU64::new(0);
    let lb = binomial(n, d + 1).div_ceil((n - d) as u64) as usize;
    let opts = SearchOptions {
        budget: None,
        threads: 1,
    };
    match minimise(&p, lb, layer.masks.len(), Goal::Any, opts, &nodes) {
        Ok(Some(sol)) => sol.len(),
        _ => unreachable!("the full layer is a feasible cover"),
    }
}

/// Lower bound obtained by splitting a perfect set `A` on the variable `x_k`.
///
/// Members avoiding `k` are the only ones meeting the `(d+1)`-subsets that
/// avoid `k`, so there are at least `upper_perfect_number(n-1, d)` of them.
/// Each `(d-1)`-subset containing `k` lies only in members containing `k`;
/// removing `k` turns this into covering the `C(n-1, d-2)` subsets of size
/// `d-2` by `(d-1)`-sets, each holding `d-1` of them.
///
/// # Panics
/// Unless `1 <= k <= n` and `1 <= d <= n - 1`.
pub fn lower_bound_split(n: usize, d: usize, k: usize) -> usize {
    assert!((1..=n).contains(&k), "index {k} outside [1, {n}]");
    assert!(d >= 1 && d < n, "degree {d} outside [1, {}]", n - 1);
    let without = upper_perfect_number(n - 1, d);
    let containing = if d >= 2 {
        binomial(n - 1, d - 2).div_ceil((d - 1) as u64) as usize
    } else {
        0
    };
    without + containing
}

/// Whether the exact perfect number respects the closed-form bound: the
/// degree-2 formula for `d = 2`, [`perfect_number_upper_bound`] for `d > 2`.
pub fn certify_bound(n: usize, d: usize) -> Result<bool> {
    certify_bound_with(n, d, SearchOptions::from_env())
}

pub fn certify_bound_with(n: usize, d: usize, opts: SearchOptions) -> Result<bool> {
    let bound = if d == 2 {
        check_range(n, d)?;
        perfect_number_n2(n)
    } else {
        perfect_number_upper_bound(n, d)?
    };
    let result = perfect_number_with(n, d, opts)?;
    if !result.is_exact() {
        return Err(Error::SearchTimeout {
            lower: result.lower_bound,
            upper: result.value,
        });
    }
    Ok(result.value as u64 <= bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfect::is_perfect;

    fn opts(threads: usize) -> SearchOptions {
        SearchOptions {
            budget: None,
            threads,
        }
    }

    /// Smallest perfect subset of the layer by trying every subset.
    fn brute(n: usize, d: usize) -> usize {
        let layer = enumerate_degree(n, d).into_vec();
        let mut best = layer.len();
        for mask in 0u64..1 << layer.len() {
            let size = mask.count_ones() as usize;
            if size >= best {
                continue;
            }
            let set: MonomialSet = (0..layer.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| layer[i])
                .collect();
            if is_perfect(&set, n, d).unwrap().is_perfect() {
                best = size;
            }
        }
        best
    }

    #[test]
    fn agrees_with_exhaustive_enumeration() {
        for n in 2..=6 {
            for d in 1..n {
                if binomial(n, d) > 20 {
                    continue;
                }
                let r = perfect_number_with(n, d, opts(2)).unwrap();
                assert_eq!(r.value, brute(n, d), "N({n},{d})");
                assert!(is_perfect(&r.witness, n, d).unwrap().is_perfect());
                assert_eq!(r.witness.len(), r.value);
            }
        }
    }

    #[test]
    fn degree_two_matches_closed_form() {
        for (n, expected) in [(4, 2), (5, 4), (6, 6), (7, 9), (8, 12)] {
            let r = perfect_number_with(n, 2, opts(4)).unwrap();
            assert!(r.is_exact());
            assert_eq!(r.value, expected, "N({n},2)");
            assert_eq!(perfect_number_n2(n), expected as u64);
        }
    }

    #[test]
    fn degree_one() {
        for n in 2..=6 {
            assert_eq!(perfect_number_with(n, 1, opts(1)).unwrap().value, n - 1);
        }
    }

    #[test]
    fn six_three_is_six() {
        let r = perfect_number_with(6, 3, opts(4)).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.value, 6);
        assert!(is_perfect(&r.witness, 6, 3).unwrap().is_perfect());
        // an explicit six-element perfect set, checked independently
        let w: MonomialSet = [
            [1, 2, 3],
            [1, 4, 5],
            [2, 3, 4],
            [1, 4, 6],
            [2, 5, 6],
            [3, 5, 6],
        ]
        .iter()
        .map(|ix| Monomial::new(ix.iter().copied()).unwrap())
        .collect();
        assert!(is_perfect(&w, 6, 3).unwrap().is_perfect());
    }

    #[test]
    fn complement_duality() {
        for n in 5..=7 {
            for d in 1..n {
                let a = perfect_number_with(n, d, opts(4)).unwrap().value;
                let b = perfect_number_with(n, n - d, opts(4)).unwrap().value;
                assert_eq!(a, b, "N({n},{d}) vs N({n},{})", n - d);
            }
        }
    }

    #[test]
    fn identical_across_thread_counts() {
        for (n, d) in [(6, 3), (7, 2), (6, 2)] {
            let one = perfect_number_with(n, d, opts(1)).unwrap();
            for t in [2, 3, 8] {
                assert_eq!(perfect_number_with(n, d, opts(t)).unwrap(), one);
            }
        }
    }

    #[test]
    fn witness_is_lex_least() {
        // N(4,2) = 2: {12, 34} is the only pair of disjoint edges
        // containing x1x2 as the colex-first element.
        let r = perfect_number_with(4, 2, opts(2)).unwrap();
        let w: Vec<String> = r.witness.iter().map(|m| m.to_string()).collect();
        assert_eq!(w, ["1 2", "3 4"]);
    }

    #[test]
    fn budget_timeout_brackets() {
        let r = perfect_number_with(
            7,
            3,
            SearchOptions {
                budget: Some(50),
                threads: 2,
            },
        )
        .unwrap();
        assert_eq!(r.status, SearchStatus::Timeout);
        assert!(r.lower_bound <= r.value);
        assert_eq!(r.value, 14);
        assert!(is_perfect(&r.witness, 7, 3).unwrap().is_perfect());
        assert!(matches!(
            certify_bound_with(
                7,
                3,
                SearchOptions {
                    budget: Some(50),
                    threads: 1
                }
            ),
            Err(Error::SearchTimeout { .. })
        ));
    }

    #[test]
    fn split_bound_is_sound() {
        assert_eq!(upper_perfect_number(5, 3), 3);
        assert_eq!(lower_bound_split(6, 3, 6), 6);
        assert!(lower_bound_split(5, 3, 5) <= 4);
        for n in 3..=6 {
            for d in 1..n {
                let exact = perfect_number_with(n, d, opts(2)).unwrap().value;
                for k in 1..=n {
                    assert!(lower_bound_split(n, d, k) <= exact, "({n},{d},{k})");
                }
            }
        }
    }

    #[test]
    fn bounds_certified() {
        assert!(certify_bound_with(5, 3, opts(4)).unwrap());
        assert!(certify_bound_with(6, 3, opts(4)).unwrap());
        assert!(certify_bound_with(7, 2, opts(4)).unwrap());
        assert!(matches!(
            perfect_number(3, 3, None),
            Err(Error::InvalidParameters(_))
        ));
    }
}
