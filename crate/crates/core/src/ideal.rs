//! Square-free monomial ideals given by their minimal generators.

use crate::complex::{FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::monomial::{binomial, check_ambient, enumerate_degree, Monomial, MonomialSet};
use crate::perfect::is_perfect;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    n: usize,
    generators: MonomialSet,
}

/// How [`Ideal::is_unmixed_f_ideal`] decides unmixedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnmixedMethod {
    /// Lower perfection of `sm(S)_d \ G(I)`; only valid for f-ideals.
    Direct,
    /// Half-size layer, dimension of the dual facet complex, and the d-flag
    /// property of the complementary layer.
    Dual,
}

/// Normalizes `gens` to the minimal generating set `G(I)`.
pub fn minimal_generators<I: IntoIterator<Item = Monomial>>(n: usize, gens: I) -> Result<Ideal> {
    check_ambient(n)?;
    let gens: MonomialSet = gens.into_iter().collect();
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    gens.check_within(n)?;
    if let Some(low) = gens.iter().find(|g| g.degree() < 2) {
        return Err(Error::LowDegreeGenerator(low));
    }
    let generators = gens
        .iter()
        .filter(|&g| !gens.iter().any(|h| h != g && h.divides(g)))
        .collect();
    Ok(Ideal { n, generators })
}

/// Minimal transversals of the hypergraph `edges`, by Berge's sequential
/// method.
fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut current = vec![0u64];
    for &e in edges {
        let mut next = Vec::with_capacity(current.len() * 2);
        for &t in &current {
            if t & e != 0 {
                next.push(t);
                continue;
            }
            let mut rest = e;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                rest ^= v;
                next.push(t | v);
            }
        }
        next.sort_unstable_by_key(|t| (t.count_ones(), *t));
        next.dedup();
        let mut kept: Vec<u64> = Vec::with_capacity(next.len());
        for t in next {
            if !kept.iter().any(|&k| k & !t == 0) {
                kept.push(t);
            }
        }
        current = kept;
    }
    current
}

impl Ideal {
    pub fn new<I: IntoIterator<Item = Monomial>>(n: usize, gens: I) -> Result<Self> {
        minimal_generators(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &MonomialSet {
        &self.generators
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        self.generators.homogeneous_degree()
    }

    /// Whether the square-free monomial `u` lies in the ideal.
    pub fn contains(&self, u: Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(u))
    }

    /// `δ_F(I)`, generated by the supports of `G(I)`.
    pub fn facet_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_generators(self.n, self.generators.iter())
            .expect("generators are nonempty and within [n]")
    }

    /// `δ_N(I)`: supports of square-free monomials outside `I`. Its facets
    /// are the complements of the minimal transversals of `G(I)`.
    pub fn stanley_reisner_complex(&self) -> SimplicialComplex {
        let edges: Vec<u64> = self.generators.iter().map(|g| g.bits()).collect();
        let full = Monomial::full(self.n);
        let facets = minimal_transversals(&edges)
            .into_iter()
            .map(|t| full.without(Monomial::from_bits(t).unwrap()));
        SimplicialComplex::from_generators(self.n, facets)
            .expect("a minimal transversal always exists")
    }

    pub fn f_vectors(&self) -> (FVector, FVector) {
        (
            self.facet_complex().f_vector(),
            self.stanley_reisner_complex().f_vector(),
        )
    }

    /// `δ_F(I)` and `δ_N(I)` have equal f-vectors (as sequences).
    pub fn is_f_ideal(&self) -> bool {
        let (ff, fn_) = self.f_vectors();
        ff == fn_
    }

    /// f-ideal test for ideals generated in degree `d`: `G(I)` perfect and
    /// `|G(I)| = C(n, d) / 2`.
    pub fn is_f_ideal_homogeneous(&self, d: usize) -> Result<bool> {
        self.generators.check_degree(d)?;
        if 2 * self.generators.len() as u64 != binomial(self.n, d) {
            return Ok(false);
        }
        Ok(is_perfect(&self.generators, self.n, d)?.is_perfect())
    }

    /// `sm(S)_d \ G(I)`.
    pub fn complement_layer(&self, d: usize) -> MonomialSet {
        enumerate_degree(self.n, d).difference(&self.generators)
    }

    /// `⟨σ(u) | u ∈ sm(S)_d \ G(I)⟩`, or `None` when the layer is used up.
    pub fn complement_layer_complex(&self, d: usize) -> Option<SimplicialComplex> {
        SimplicialComplex::from_generators(self.n, self.complement_layer(d).iter()).ok()
    }

    pub fn is_unmixed_f_ideal(&self, d: usize, method: UnmixedMethod) -> Result<bool> {
        self.generators.check_degree(d)?;
        match method {
            UnmixedMethod::Direct => {
                if !self.is_f_ideal_homogeneous(d)? {
                    return Err(Error::NotFIdeal);
                }
                Ok(is_perfect(&self.complement_layer(d), self.n, d)?.lower)
            }
            UnmixedMethod::Dual => {
                if 2 * self.generators.len() as u64 != binomial(self.n, d) {
                    return Ok(false);
                }
                let dual_dim = match self.facet_complex().alexander_dual() {
                    Ok(dual) => dual.dimension(),
                    Err(Error::FullSimplex) => return Ok(false),
                    Err(e) => return Err(e),
                };
                if dual_dim != self.n as isize - d as isize - 1 {
                    return Ok(false);
                }
                Ok(self
                    .complement_layer_complex(d)
                    .is_some_and(|c| c.is_d_flag(d)))
            }
        }
    }
}

pub fn facet_complex(ideal: &Ideal) -> SimplicialComplex {
    ideal.facet_complex()
}

pub fn stanley_reisner_complex(ideal: &Ideal) -> SimplicialComplex {
    ideal.stanley_reisner_complex()
}

pub fn is_f_ideal(ideal: &Ideal) -> bool {
    ideal.is_f_ideal()
}

pub fn is_f_ideal_homogeneous(ideal: &Ideal, d: usize) -> Result<bool> {
    ideal.is_f_ideal_homogeneous(d)
}

pub fn is_unmixed_f_ideal(ideal: &Ideal, d: usize, method: UnmixedMethod) -> Result<bool> {
    ideal.is_unmixed_f_ideal(d, method)
}
