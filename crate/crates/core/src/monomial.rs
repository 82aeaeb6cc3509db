//! Square-free monomials as subsets of `[n]`.
//!
//! A monomial `x_{i_1} ... x_{i_k}` is stored as the bitmask of its support,
//! bit `i - 1` standing for the variable `x_i`. The ambient number of
//! variables is never stored; operations that need it take it as an argument.
//! Numeric order on the masks is colex order on the supports, which is the
//! canonical iteration order of every [`MonomialSet`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    /// The monomial `1`, with empty support.
    pub const ONE: Monomial = Monomial(0);

    /// Builds a monomial from 1-based variable indices. Repeated indices
    /// collapse, as they would in a support set.
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u64;
        for i in indices {
            if i == 0 || i > MAX_VARS {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: MAX_VARS,
                });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Monomial(bits))
    }

    /// Monomial whose support is the single variable `x_i`.
    pub fn variable(i: usize) -> Result<Self> {
        Self::new([i])
    }

    /// All variables `x_1 ... x_n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VARS, "ambient size {n} exceeds {MAX_VARS}");
        Monomial(low_bits(n))
    }

    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits >> MAX_VARS != 0 {
            return Err(Error::IndexOutOfRange {
                index: 64,
                n: MAX_VARS,
            });
        }
        Ok(Monomial(bits))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_VARS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// Largest index in the support, 0 for the monomial `1`.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Ascending support indices.
    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    /// `self | other`, i.e. support inclusion.
    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    /// Least common multiple, the union of the supports.
    #[inline]
    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Square-free product; `None` when the supports overlap.
    pub fn product(self, other: Monomial) -> Option<Monomial> {
        self.is_disjoint(other)
            .then_some(Monomial(self.0 | other.0))
    }

    /// `self / other` on supports (set difference).
    #[inline]
    pub fn without(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }

    /// Support complement within `[n]`.
    pub fn complement(self, n: usize) -> Result<Monomial> {
        check_ambient(n)?;
        self.check_within(n)?;
        Ok(Monomial(low_bits(n) & !self.0))
    }

    /// Fails with the first index above `n`.
    pub fn check_within(self, n: usize) -> Result<()> {
        if self.max_index() > n {
            return Err(Error::IndexOutOfRange {
                index: self.max_index(),
                n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    /// Space-separated ascending indices, `()` for the monomial `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("()");
        }
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

/// Iterator over the support of a [`Monomial`].
#[derive(Clone)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Indices {}

/// Which half of a restriction to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restriction {
    /// Supports disjoint from the index set.
    Without,
    /// Supports containing the index set.
    Containing,
}

impl Restriction {
    #[inline]
    pub fn admits(self, m: Monomial, set: Monomial) -> bool {
        match self {
            Restriction::Without => m.is_disjoint(set),
            Restriction::Containing => set.divides(m),
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Restriction::Without => "without",
            Restriction::Containing => "containing",
        })
    }
}

/// A finite set of monomials, kept sorted in colex order without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct MonomialSet(Vec<Monomial>);

impl MonomialSet {
    pub fn new() -> Self {
        MonomialSet(Vec::new())
    }

    /// Wraps a vector already sorted ascending and free of duplicates.
    fn from_sorted(v: Vec<Monomial>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        MonomialSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, Monomial>> {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Monomial] {
        &self.0
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.0.binary_search(&m).is_ok()
    }

    pub fn insert(&mut self, m: Monomial) -> bool {
        match self.0.binary_search(&m) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, m);
                true
            }
        }
    }

    /// Common degree of all elements; `None` if empty or mixed.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.0.first()?.degree();
        self.0.iter().all(|m| m.degree() == d).then_some(d)
    }

    /// Fails on the first element whose degree differs from `d`.
    pub fn check_degree(&self, d: usize) -> Result<()> {
        match self.0.iter().find(|m| m.degree() != d) {
            Some(&m) => Err(Error::DegreeMismatch {
                monomial: m,
                found: m.degree(),
                expected: d,
            }),
            None => Ok(()),
        }
    }

    /// Fails on the first element with an index above `n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        check_ambient(n)?;
        self.0.iter().try_for_each(|m| m.check_within(n))
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|m| m.max_index()).max().unwrap_or(0)
    }

    pub fn union(&self, other: &MonomialSet) -> MonomialSet {
        let mut v = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        v.push(x);
                        a.next();
                    } else if y < x {
                        v.push(y);
                        b.next();
                    } else {
                        v.push(x);
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    v.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    v.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        MonomialSet::from_sorted(v)
    }

    pub fn difference(&self, other: &MonomialSet) -> MonomialSet {
        MonomialSet::from_sorted(self.iter().filter(|&m| !other.contains(m)).collect())
    }

    pub fn is_subset(&self, other: &MonomialSet) -> bool {
        self.iter().all(|m| other.contains(m))
    }

    pub fn into_vec(self) -> Vec<Monomial> {
        self.0
    }
}

impl FromIterator<Monomial> for MonomialSet {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut v: Vec<Monomial> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        MonomialSet(v)
    }
}

impl From<Vec<Monomial>> for MonomialSet {
    fn from(v: Vec<Monomial>) -> Self {
        v.into_iter().collect()
    }
}

impl IntoIterator for MonomialSet {
    type Item = Monomial;
    type IntoIter = std::vec::IntoIter<Monomial>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = Monomial;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Monomial>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_ambient(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::AmbientTooLarge { n, max: MAX_VARS });
    }
    Ok(())
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c as u64
}

/// Colex-ordered masks of all `d`-subsets of the bit positions in `0..n`.
pub(crate) fn subsets_of_size(n: usize, d: usize) -> impl Iterator<Item = u64> {
    let limit = low_bits(n);
    let mut next = if d > n { None } else { Some(low_bits(d)) };
    std::iter::from_fn(move || {
        let x = next?;
        next = if x == 0 {
            None
        } else {
            // Gosper's hack: next integer with the same popcount.
            let c = x & x.wrapping_neg();
            let r = x + c;
            let y = (((r ^ x) >> 2) / c) | r;
            (y <= limit && y.count_ones() == x.count_ones()).then_some(y)
        };
        Some(x)
    })
}

/// `sm(S)_d` for `S = K[x_1..x_n]`: all `C(n, d)` square-free monomials of
/// degree `d`, colex ascending. Empty when `d > n`.
///
/// # Panics
/// If `n` exceeds [`MAX_VARS`].
pub fn enumerate_degree(n: usize, d: usize) -> MonomialSet {
    assert!(n <= MAX_VARS, "ambient size {n} exceeds {MAX_VARS}");
    MonomialSet::from_sorted(subsets_of_size(n, d).map(Monomial).collect())
}

pub fn divides(u: Monomial, v: Monomial) -> bool {
    u.divides(v)
}

pub fn complement(u: Monomial, n: usize) -> Result<Monomial> {
    u.complement(n)
}

/// Elementwise complement `M'` within `[n]`.
pub fn complement_set(m: &MonomialSet, n: usize) -> Result<MonomialSet> {
    m.check_within(n)?;
    let full = low_bits(n);
    Ok(m.iter().map(|u| Monomial(full & !u.0)).collect())
}

/// `A{X̌}` (supports avoiding `X`) or `A{X}` (supports containing `X`).
pub fn restrict(a: &MonomialSet, set: Monomial, mode: Restriction) -> MonomialSet {
    MonomialSet::from_sorted(a.iter().filter(|&m| mode.admits(m, set)).collect())
}

/// `A • B = {uv | u ∈ A, v ∈ B}`, with `A • ∅ = A`.
pub fn bullet_product(a: &MonomialSet, b: &MonomialSet) -> Result<MonomialSet> {
    if b.is_empty() {
        return Ok(a.clone());
    }
    let mut out = Vec::with_capacity(a.len() * b.len());
    for u in a {
        for v in b {
            match u.product(v) {
                Some(w) => out.push(w),
                None => return Err(Error::OverlappingSupports { left: u, right: v }),
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `Q_[i,j]^k`: degree-`k` square-free monomials in `x_i, ..., x_j`.
///
/// Empty when `i > j`; `{1}` when `k = 0` and `i ≤ j`.
pub fn interval_monomials(i: usize, j: usize, k: usize) -> Result<MonomialSet> {
    if i == 0 {
        return Err(Error::IndexOutOfRange { index: 0, n: j });
    }
    if i > j {
        return Ok(MonomialSet::new());
    }
    if j > MAX_VARS {
        return Err(Error::IndexOutOfRange {
            index: j,
            n: MAX_VARS,
        });
    }
    let width = j - i + 1;
    Ok(MonomialSet::from_sorted(
        subsets_of_size(width, k)
            .map(|s| Monomial(s << (i - 1)))
            .collect(),
    ))
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

    #[test]
    fn enumerate_small_layers() {
        let layer = enumerate_degree(4, 2);
        assert_eq!(
            layer,
            set(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]])
        );
        // colex: 12 < 13 < 23 < 14 < 24 < 34
        let order: Vec<String> = layer.iter().map(|u| u.to_string()).collect();
        assert_eq!(order, ["1 2", "1 3", "2 3", "1 4", "2 4", "3 4"]);

        assert_eq!(enumerate_degree(5, 0).as_slice(), &[Monomial::ONE]);
        assert_eq!(enumerate_degree(6, 3).len(), 20);
        assert!(enumerate_degree(3, 4).is_empty());
        assert_eq!(enumerate_degree(MAX_VARS, MAX_VARS).len(), 1);
        assert_eq!(enumerate_degree(MAX_VARS, 1).len(), MAX_VARS);
    }

    #[test]
    fn layer_sizes_match_binomials() {
        for n in 0..=10 {
            for d in 0..=n + 1 {
                assert_eq!(enumerate_degree(n, d).len() as u64, binomial(n, d));
            }
        }
    }

    #[test]
    fn divisibility() {
        assert!(divides(m(&[1, 2]), m(&[1, 2, 3])));
        assert!(!divides(m(&[1, 4]), m(&[1, 2, 3])));
        assert!(divides(Monomial::ONE, m(&[5])));
    }

    #[test]
    fn complements() {
        assert_eq!(complement(m(&[1, 2]), 8).unwrap(), m(&[3, 4, 5, 6, 7, 8]));
        assert_eq!(complement(Monomial::ONE, 3).unwrap(), m(&[1, 2, 3]));
        assert_eq!(
            complement(m(&[1, 5]), 4),
            Err(Error::IndexOutOfRange { index: 5, n: 4 })
        );
        assert!(complement_set(&MonomialSet::new(), 4).unwrap().is_empty());
    }

    #[test]
    fn restrictions() {
        let a = set(&[
            &[1, 2, 3],
            &[1, 2, 4],
            &[1, 2, 5],
            &[3, 4, 5],
            &[1, 2, 6],
            &[1, 3, 6],
            &[2, 3, 6],
            &[4, 5, 6],
        ]);
        let six = m(&[6]);
        assert_eq!(
            restrict(&a, six, Restriction::Without),
            set(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[3, 4, 5]])
        );
        assert_eq!(
            restrict(&a, six, Restriction::Containing),
            set(&[&[1, 2, 6], &[1, 3, 6], &[2, 3, 6], &[4, 5, 6]])
        );
        assert_eq!(restrict(&a, Monomial::ONE, Restriction::Without), a);
        assert_eq!(restrict(&a, Monomial::ONE, Restriction::Containing), a);
    }

    #[test]
    fn bullet() {
        let a = set(&[&[1]]);
        assert_eq!(bullet_product(&a, &set(&[&[2]])).unwrap(), set(&[&[1, 2]]));
        assert_eq!(bullet_product(&a, &MonomialSet::new()).unwrap(), a);
        assert!(bullet_product(&MonomialSet::new(), &a).unwrap().is_empty());
        assert_eq!(
            bullet_product(&set(&[&[1, 2]]), &set(&[&[2, 3]])),
            Err(Error::OverlappingSupports {
                left: m(&[1, 2]),
                right: m(&[2, 3])
            })
        );
        let one = set(&[&[]]);
        assert_eq!(bullet_product(&a, &one).unwrap(), a);
    }

    #[test]
    fn intervals() {
        assert_eq!(
            interval_monomials(3, 5, 2).unwrap(),
            set(&[&[3, 4], &[3, 5], &[4, 5]])
        );
        assert!(interval_monomials(4, 3, 1).unwrap().is_empty());
        assert_eq!(
            interval_monomials(2, 9, 0).unwrap().as_slice(),
            &[Monomial::ONE]
        );
        assert!(interval_monomials(0, 3, 1).is_err());
        for i in 1..6 {
            for j in i..9 {
                for k in 0..5 {
                    let q = interval_monomials(i, j, k).unwrap();
                    assert_eq!(q.len() as u64, binomial(j - i + 1, k));
                    assert!(q
                        .iter()
                        .all(|u| u.degree() == k && u.indices().all(|x| (i..=j).contains(&x))));
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(m(&[6, 1, 3]).to_string(), "1 3 6");
        assert_eq!(Monomial::ONE.to_string(), "()");
    }

    #[test]
    fn set_algebra() {
        let a = set(&[&[1], &[2], &[1, 2]]);
        let b = set(&[&[2], &[3]]);
        assert_eq!(a.union(&b), set(&[&[1], &[2], &[3], &[1, 2]]));
        assert_eq!(a.difference(&b), set(&[&[1], &[1, 2]]));
        assert_eq!(a.homogeneous_degree(), None);
        assert_eq!(b.homogeneous_degree(), Some(1));
        assert!(set(&[&[2]]).is_subset(&a));
        assert!(a.check_degree(1).is_err());
    }
}
