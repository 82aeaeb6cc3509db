//! Constructions of perfect sets and homogeneous f-ideals.
//!
//! * degree 2: pairs inside the two halves of a balanced split of `[n]`;
//! * `n = d + 2`: complements of the degree-2 construction;
//! * `n > d + 2`: split on the last variable until every task is one of
//!   the two cases above, then lift each task's set by its forced variables;
//! * the explicit set whose size is the perfect-number upper bound.
//!
//! Perfect sets are padded with unused monomials to half the layer to obtain
//! an f-ideal.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{
    binomial, bullet_product, check_ambient, complement_set, enumerate_degree, interval_monomials,
    Monomial, MonomialSet,
};

/// Closed form for the degree-2 perfect number:
/// `k² - k` for `n = 2k`, `k²` for `n = 2k + 1`.
pub fn perfect_number_n2(n: usize) -> u64 {
    let k = (n / 2) as u64;
    if n.is_multiple_of(2) {
        k * k - k
    } else {
        k * k
    }
}

/// Pairs `x_i x_j` with `i, j` both in `{1..⌈n/2⌉}` or both in the rest.
pub fn partition_perfect_n2(n: usize) -> Result<MonomialSet> {
    check_ambient(n)?;
    if n < 4 {
        return Err(Error::InvalidParameters(format!(
            "degree-2 partition construction needs n >= 4, got {n}"
        )));
    }
    let split = n.div_ceil(2);
    let mut out = interval_monomials(1, split, 2)?;
    out = out.union(&interval_monomials(split + 1, n, 2)?);
    Ok(out)
}

/// The degree-2 partition set complemented inside `[t]`: a `(t, t-2)`-th
/// perfect set of the same size.
fn complement_partition(t: usize) -> Result<MonomialSet> {
    complement_set(&partition_perfect_n2(t)?, t)
}

fn half_layer(n: usize, d: usize) -> Result<usize> {
    let c = binomial(n, d);
    if !c.is_multiple_of(2) {
        return Err(Error::EmptyFIdealClass { n, d });
    }
    Ok((c / 2) as usize)
}

/// Extends `a` by unused degree-`d` monomials to exactly `C(n, d) / 2`
/// elements: the colex-least ones by default, a seeded sample otherwise.
pub fn pad_to_half(a: &MonomialSet, n: usize, d: usize, seed: Option<u64>) -> Result<MonomialSet> {
    a.check_within(n)?;
    a.check_degree(d)?;
    let target = half_layer(n, d)?;
    if a.len() > target {
        return Err(Error::PaddingOverflow {
            size: a.len(),
            target,
        });
    }
    let need = target - a.len();
    let unused = enumerate_degree(n, d).difference(a);
    let extra: MonomialSet = match seed {
        None => unused.iter().take(need).collect(),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample(&mut rng, unused.len(), need)
                .into_iter()
                .map(|i| unused.as_slice()[i])
                .collect()
        }
    };
    Ok(a.union(&extra))
}

/// Builds an f-ideal in `V(d+2, d)`: complement the degree-2 partition set
/// on `d + 2` variables, then pad.
pub fn construct_d_plus_2(d: usize, seed: Option<u64>) -> Result<Ideal> {
    if d < 3 {
        return Err(Error::InvalidParameters(format!(
            "the (d+2, d) construction needs d >= 3, got {d}"
        )));
    }
    let n = d + 2;
    half_layer(n, d)?;
    let a = complement_partition(n)?;
    Ideal::new(n, pad_to_half(&a, n, d, seed)?)
}

/// A node `B(t, l, E)` of the splitting recursion: a degree-`l` perfect set
/// on `[t]`, later multiplied by `x_E` for `E ⊆ {t+1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaskLabel {
    pub t: usize,
    pub l: usize,
    pub forced: Monomial,
}

impl TaskLabel {
    pub fn is_leaf(&self) -> bool {
        self.l == 2 || self.t == self.l + 2
    }
}

fn check_split_range(n: usize, d: usize) -> Result<()> {
    check_ambient(n)?;
    if d <= 2 || n <= d + 2 {
        return Err(Error::InvalidParameters(format!(
            "task splitting needs d > 2 and n > d + 2, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// Rewrites `B(n, d, ∅)` round by round, replacing each non-leaf `B(t, l, E)`
/// by `B(t-1, l, E)` and `B(t-1, l-1, E ∪ {t})`, until only leaves remain.
pub fn decompose_tasks(n: usize, d: usize) -> Result<Vec<TaskLabel>> {
    check_split_range(n, d)?;
    let mut tasks = vec![TaskLabel {
        t: n,
        l: d,
        forced: Monomial::ONE,
    }];
    while !tasks.iter().all(TaskLabel::is_leaf) {
        let mut next = Vec::with_capacity(tasks.len() * 2);
        for task in tasks {
            if task.is_leaf() {
                next.push(task);
                continue;
            }
            next.push(TaskLabel {
                t: task.t - 1,
                ..task
            });
            next.push(TaskLabel {
                t: task.t - 1,
                l: task.l - 1,
                forced: task.forced.lcm(Monomial::variable(task.t)?),
            });
        }
        tasks = next;
    }
    Ok(tasks)
}

/// Default perfect set for a leaf: the partition set when `l = 2`, its
/// complement inside `[t]` when `t = l + 2`.
pub fn default_leaf(label: &TaskLabel) -> Result<MonomialSet> {
    if label.l == 2 {
        partition_perfect_n2(label.t)
    } else if label.t == label.l + 2 {
        complement_partition(label.t)
    } else {
        Err(Error::InvalidParameters(format!(
            "B({}, {}, {}) is not a leaf",
            label.t, label.l, label.forced
        )))
    }
}

/// Union over all leaves of `leaf(B) • x_E`, using the default leaf sets.
pub fn assemble_perfect_set(n: usize, d: usize) -> Result<MonomialSet> {
    assemble_perfect_set_with(n, d, default_leaf)
}

/// As [`assemble_perfect_set`] with caller-chosen leaf sets. Each leaf set
/// must have degree `l` and live in `[t]`.
pub fn assemble_perfect_set_with<F>(n: usize, d: usize, mut leaf: F) -> Result<MonomialSet>
where
    F: FnMut(&TaskLabel) -> Result<MonomialSet>,
{
    let mut out = MonomialSet::new();
    for task in decompose_tasks(n, d)? {
        let base = leaf(&task)?;
        base.check_within(task.t)?;
        base.check_degree(task.l)?;
        let lifted = bullet_product(&base, &[task.forced].into_iter().collect())?;
        out = out.union(&lifted);
    }
    Ok(out)
}

/// A homogeneous degree-`d` f-ideal on `n` variables.
pub fn construct_f_ideal(n: usize, d: usize, seed: Option<u64>) -> Result<Ideal> {
    check_ambient(n)?;
    if d < 2 || n < d + 2 {
        return Err(Error::InvalidParameters(format!(
            "f-ideal construction needs 2 <= d <= n - 2, got n = {n}, d = {d}"
        )));
    }
    half_layer(n, d)?;
    let base = if d == 2 {
        partition_perfect_n2(n)?
    } else if n == d + 2 {
        return construct_d_plus_2(d, seed);
    } else {
        assemble_perfect_set(n, d)?
    };
    Ideal::new(n, pad_to_half(&base, n, d, seed)?)
}

fn check_bound_range(n: usize, d: usize) -> Result<()> {
    check_ambient(n)?;
    if d <= 2 || n < d + 2 {
        return Err(Error::InvalidParameters(format!(
            "the perfect-number bound needs d > 2 and n >= d + 2, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// The explicit perfect set
/// `∪_{i=5}^{n-d+2} P(i,2) • x_{i+1} • Q_[i+2,n]^{d-3}  ∪  ∪_{j=3}^{d} P(j+2,j) • Q_[j+4,n]^{d-j}`
/// with `P(i,2)` the partition set and `P(j+2,j)` its complement in `[j+2]`.
/// For `n = d + 2` this is `P(n, d)` alone.
pub fn bound_perfect_set(n: usize, d: usize) -> Result<MonomialSet> {
    check_bound_range(n, d)?;
    if n == d + 2 {
        return complement_partition(n);
    }
    let mut out = MonomialSet::new();
    for i in 5..=n - d + 2 {
        let pivot: MonomialSet = [Monomial::variable(i + 1)?].into_iter().collect();
        let part = bullet_product(&partition_perfect_n2(i)?, &pivot)?;
        let part = bullet_product(&part, &interval_monomials(i + 2, n, d - 3)?)?;
        out = out.union(&part);
    }
    for j in 3..=d {
        let part = bullet_product(
            &complement_partition(j + 2)?,
            &interval_monomials(j + 4, n, d - j)?,
        )?;
        out = out.union(&part);
    }
    Ok(out)
}

/// `C(top, k)` with a possibly negative upper index, which gives 0.
fn binomial_signed(top: isize, k: usize) -> u64 {
    if top < 0 {
        0
    } else {
        binomial(top as usize, k)
    }
}

/// `Σ_{i=5}^{n-d+2} N(i,2) C(n-i-1, d-3) + Σ_{j=3}^{d} N(j+2,2) C(n-j-3, d-j)`
/// for `n > d + 2`, and `N(n, 2)` for `n = d + 2`.
pub fn perfect_number_upper_bound(n: usize, d: usize) -> Result<u64> {
    check_bound_range(n, d)?;
    if n == d + 2 {
        return Ok(perfect_number_n2(n));
    }
    let (n_, d_) = (n as isize, d as isize);
    let first: u64 = (5..=n - d + 2)
        .map(|i| perfect_number_n2(i) * binomial_signed(n_ - i as isize - 1, d - 3))
        .sum();
    let second: u64 = (3..=d)
        .map(|j| {
            perfect_number_n2(j + 2)
                * binomial_signed(n_ - j as isize - 3, (d_ - j as isize) as usize)
        })
        .sum();
    Ok(first + second)
}
