//! Upper and lower perfection of homogeneous monomial sets.
//!
//! `M ⊆ sm(S)_d` is upper perfect when every square-free monomial of degree
//! `d + 1` is divisible by some member of `M`, and lower perfect when every
//! square-free monomial of degree `d - 1` divides some member. The relative
//! variants restrict the monomials that must be reached to those avoiding,
//! or containing, a fixed index set.

use crate::error::{Error, Result};
use crate::monomial::{
    check_ambient, complement_set, enumerate_degree, restrict, subsets_of_size, Monomial,
    MonomialSet, Restriction,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Multiples of members.
    Up,
    /// Divisors of members.
    Down,
}

/// Outcome of a perfection test.
///
/// `witness_failure` is the colex-least monomial that breaks the first failing
/// condition: a degree-`d+1` monomial with no divisor in the set when `upper`
/// fails, otherwise a degree-`d-1` monomial dividing no member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerfectVerdict {
    pub upper: bool,
    pub lower: bool,
    pub witness_failure: Option<Monomial>,
}

impl PerfectVerdict {
    pub fn is_perfect(&self) -> bool {
        self.upper && self.lower
    }
}

/// The part of `⊔(M)` (up) or `⊓(M)` (down) living in degree `e`.
pub fn shadow(m: &MonomialSet, n: usize, e: usize, direction: Direction) -> Result<MonomialSet> {
    m.check_within(n)?;
    let layer = enumerate_degree(n, e);
    Ok(layer
        .iter()
        .filter(|&w| match direction {
            Direction::Up => m.iter().any(|v| v.divides(w)),
            Direction::Down => m.iter().any(|v| w.divides(v)),
        })
        .collect())
}

/// First `w` (degree `d + 1`) that no member of the degree-`d` set divides.
fn upper_gap(m: &MonomialSet, universe: impl Iterator<Item = u64>) -> Option<Monomial> {
    universe.map(bits).find(|&w| {
        !w.indices()
            .any(|i| m.contains(w.without(Monomial::variable(i).unwrap())))
    })
}

/// First `w` (degree `d - 1`) that divides no member of the degree-`d` set.
fn lower_gap(m: &MonomialSet, n: usize, universe: impl Iterator<Item = u64>) -> Option<Monomial> {
    universe.map(bits).find(|&w| {
        !(1..=n)
            .filter(|&i| !w.contains(i))
            .any(|i| m.contains(w.lcm(Monomial::variable(i).unwrap())))
    })
}

fn bits(b: u64) -> Monomial {
    Monomial::from_bits(b).expect("layer masks stay below MAX_VARS")
}

fn verdict(upper: Option<Monomial>, lower: Option<Monomial>) -> PerfectVerdict {
    PerfectVerdict {
        upper: upper.is_none(),
        lower: lower.is_none(),
        witness_failure: upper.or(lower),
    }
}

/// Whether `M ⊆ sm(S)_d` is `(n, d)`-th upper and lower perfect.
///
/// At `d = n` the upper condition is vacuous, at `d = 0` the lower one is.
/// For `d = 1` lower perfection needs `M` nonempty, since `1` must divide
/// some member.
pub fn is_perfect(m: &MonomialSet, n: usize, d: usize) -> Result<PerfectVerdict> {
    m.check_within(n)?;
    m.check_degree(d)?;
    let upper = upper_gap(m, subsets_of_size(n, d + 1));
    let lower = match d {
        0 => None,
        _ => lower_gap(m, n, subsets_of_size(n, d - 1)),
    };
    Ok(verdict(upper, lower))
}

/// Perfection without `X` (all members avoid `X`, targets avoid `X`) or
/// containing `X` (all members and targets contain `X`).
pub fn is_perfect_relative(
    m: &MonomialSet,
    n: usize,
    d: usize,
    set: Monomial,
    mode: Restriction,
) -> Result<PerfectVerdict> {
    check_ambient(n)?;
    set.check_within(n)?;
    m.check_within(n)?;
    m.check_degree(d)?;
    if let Some(bad) = m.iter().find(|&u| !mode.admits(u, set)) {
        return Err(Error::RestrictionViolated {
            monomial: bad,
            set,
            mode,
        });
    }
    let admitted = move |w: &u64| mode.admits(bits(*w), set);
    let upper = upper_gap(m, subsets_of_size(n, d + 1).filter(admitted));
    let lower = match d {
        0 => None,
        _ => lower_gap(m, n, subsets_of_size(n, d - 1).filter(admitted)),
    };
    Ok(verdict(upper, lower))
}

/// Complement duality: `M` upper (lower) perfect in degree `d` exactly when
/// `M'` is lower (upper) perfect in degree `n - d`. Always `true`.
pub fn check_duality(m: &MonomialSet, n: usize, d: usize) -> Result<bool> {
    if d > n {
        return Err(Error::InvalidParameters(format!(
            "degree {d} exceeds n = {n}"
        )));
    }
    let here = is_perfect(m, n, d)?;
    let there = is_perfect(&complement_set(m, n)?, n, n - d)?;
    Ok(here.upper == there.lower && here.lower == there.upper)
}

/// Gluing along `k`: if `A{ǩ}` is perfect without `k` and `A{k}` is perfect
/// containing `k`, then `A` is perfect. Returns whether the implication holds
/// on this instance, which it always does.
pub fn check_gluing(a: &MonomialSet, n: usize, d: usize, k: usize) -> Result<bool> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let pivot = Monomial::variable(k)?;
    let without = restrict(a, pivot, Restriction::Without);
    let containing = restrict(a, pivot, Restriction::Containing);
    let hypothesis = is_perfect_relative(&without, n, d, pivot, Restriction::Without)?.is_perfect()
        && is_perfect_relative(&containing, n, d, pivot, Restriction::Containing)?.is_perfect();
    Ok(!hypothesis || is_perfect(a, n, d)?.is_perfect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ix: &[usize]) -> Monomial {
        Monomial::new(ix.iter().copied()).unwrap()
    }

    fn set(list: &[&[usize]]) -> MonomialSet {
        list.iter().map(|ix| m(ix)).collect()
    }

    fn example_a() -> MonomialSet {
        let mut a = example_b();
        a.insert(m(&[1, 2, 6]));
        a
    }

    fn example_b() -> MonomialSet {
        set(&[
            &[1, 2, 3],
            &[1, 2, 4],
            &[1, 2, 5],
            &[3, 4, 5],
            &[1, 3, 6],
            &[2, 3, 6],
            &[4, 5, 6],
        ])
    }

    #[test]
    fn shadows() {
        let u = set(&[&[1, 2]]);
        assert_eq!(shadow(&u, 3, 3, Direction::Up).unwrap(), set(&[&[1, 2, 3]]));
        assert_eq!(
            shadow(&u, 3, 1, Direction::Down).unwrap(),
            set(&[&[1], &[2]])
        );
        assert!(shadow(&MonomialSet::new(), 5, 2, Direction::Up)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn shadows_agree_with_verdicts() {
        let a = example_a();
        assert_eq!(
            shadow(&a, 6, 4, Direction::Up).unwrap(),
            enumerate_degree(6, 4)
        );
        assert_eq!(
            shadow(&a, 6, 2, Direction::Down).unwrap(),
            enumerate_degree(6, 2)
        );
    }

    #[test]
    fn example_sets_are_perfect() {
        assert!(is_perfect(&example_a(), 6, 3).unwrap().is_perfect());
        assert!(is_perfect(&example_b(), 6, 3).unwrap().is_perfect());
    }

    #[test]
    fn full_layers_are_perfect() {
        for n in 2..=8 {
            for d in 1..n {
                let v = is_perfect(&enumerate_degree(n, d), n, d).unwrap();
                assert!(
                    v.is_perfect() && v.witness_failure.is_none(),
                    "n={n}, d={d}"
                );
            }
        }
    }

    #[test]
    fn empty_set_fails_both_with_least_witness() {
        let v = is_perfect(&MonomialSet::new(), 4, 2).unwrap();
        assert!(!v.upper && !v.lower);
        assert_eq!(v.witness_failure, Some(m(&[1, 2, 3])));
        let v = is_perfect(&set(&[&[1, 2], &[3, 4], &[1, 3], &[2, 4]]), 4, 2).unwrap();
        assert!(v.upper && v.lower);
        let v = is_perfect(&set(&[&[1, 2], &[3, 4]]), 4, 2).unwrap();
        assert!(v.upper && v.lower);
        let v = is_perfect(&set(&[&[1, 2], &[1, 3]]), 4, 2).unwrap();
        assert!(!v.upper && !v.lower);
        // 234 is the colex-least triple without a listed pair inside it.
        assert_eq!(v.witness_failure, Some(m(&[2, 3, 4])));
        let v = is_perfect(&set(&[&[1, 2], &[1, 3], &[1, 4]]), 4, 2).unwrap();
        assert!(!v.upper && v.lower);
    }

    #[test]
    fn boundary_degrees() {
        // d = n: upper vacuous
        let v = is_perfect(&set(&[&[1, 2, 3]]), 3, 3).unwrap();
        assert!(v.is_perfect());
        // d = 0: lower vacuous, upper needs 1 in the set
        assert!(is_perfect(&set(&[&[]]), 3, 0).unwrap().is_perfect());
        let v = is_perfect(&MonomialSet::new(), 3, 0).unwrap();
        assert!(!v.upper && v.lower);
        // d = 1 with an empty set: 1 divides nothing
        let v = is_perfect(&MonomialSet::new(), 1, 1).unwrap();
        assert!(v.upper && !v.lower);
        assert_eq!(v.witness_failure, Some(Monomial::ONE));
    }

    #[test]
    fn mixed_degrees_rejected() {
        let err = is_perfect(&set(&[&[1, 2], &[1, 2, 3]]), 4, 2).unwrap_err();
        assert!(matches!(
            err,
            Error::DegreeMismatch {
                expected: 2,
                found: 3,
                ..
            }
        ));
        assert!(is_perfect(&set(&[&[1, 9]]), 4, 2).is_err());
    }

    #[test]
    fn relative_examples() {
        let six = m(&[6]);
        let a6 = restrict(&example_a(), six, Restriction::Containing);
        assert!(is_perfect_relative(&a6, 6, 3, six, Restriction::Containing)
            .unwrap()
            .is_perfect());
        let b6 = restrict(&example_b(), six, Restriction::Containing);
        let v = is_perfect_relative(&b6, 6, 3, six, Restriction::Containing).unwrap();
        assert!(!v.upper && v.lower);
        // 1 2 4 6 needs 1 2 6.
        assert_eq!(v.witness_failure, Some(m(&[1, 2, 4, 6])));

        let b_without = restrict(&example_b(), six, Restriction::Without);
        assert!(
            is_perfect_relative(&b_without, 6, 3, six, Restriction::Without)
                .unwrap()
                .is_perfect()
        );
    }

    #[test]
    fn relative_precondition() {
        let err =
            is_perfect_relative(&example_a(), 6, 3, m(&[6]), Restriction::Without).unwrap_err();
        assert_eq!(
            err,
            Error::RestrictionViolated {
                monomial: m(&[1, 2, 6]),
                set: m(&[6]),
                mode: Restriction::Without
            }
        );
    }

    #[test]
    fn duality_and_gluing_examples() {
        let b = set(&[
            &[1, 2],
            &[1, 3],
            &[1, 4],
            &[2, 3],
            &[2, 4],
            &[3, 4],
            &[5, 6],
            &[5, 7],
            &[5, 8],
            &[6, 7],
            &[6, 8],
            &[7, 8],
        ]);
        assert!(check_duality(&b, 8, 2).unwrap());
        assert!(is_perfect(&complement_set(&b, 8).unwrap(), 8, 6)
            .unwrap()
            .is_perfect());
        assert!(check_duality(&MonomialSet::new(), 5, 2).unwrap());

        assert!(check_gluing(&example_a(), 6, 3, 6).unwrap());
        assert!(check_gluing(&example_b(), 6, 3, 6).unwrap());
        assert!(check_gluing(&example_b(), 6, 3, 7).is_err());
    }
}
