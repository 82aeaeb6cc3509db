//! Simplicial complexes on `[n]` stored by their facets.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{check_ambient, low_bits, Monomial, MonomialSet};

/// A vertex subset of `[n]`, shared representation with [`Monomial`].
pub type Face = Monomial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: MonomialSet,
}

/// `(f_0, ..., f_dim)` with `f_i` the number of faces of cardinality `i + 1`.
/// The empty face is not counted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl From<Vec<u64>> for FVector {
    fn from(v: Vec<u64>) -> Self {
        FVector(v)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Inclusion-maximal members of `faces`, colex sorted.
fn maximal(faces: impl IntoIterator<Item = Face>) -> MonomialSet {
    let mut all: Vec<Face> = faces.into_iter().collect();
    all.sort_unstable_by_key(|f| std::cmp::Reverse(f.degree()));
    all.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in all {
        if !kept.iter().any(|&g| f.divides(g)) {
            kept.push(f);
        }
    }
    kept.into_iter().collect()
}

impl SimplicialComplex {
    /// The complex generated by `faces`: its facets are the maximal inputs.
    pub fn from_generators<I: IntoIterator<Item = Face>>(n: usize, faces: I) -> Result<Self> {
        check_ambient(n)?;
        let faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for f in &faces {
            f.check_within(n)?;
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal(faces),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &MonomialSet {
        &self.facets
    }

    /// Largest facet cardinality minus one; `-1` for the complex `{∅}`.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.degree() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn is_face(&self, g: Face) -> bool {
        self.facets.iter().any(|f| g.divides(f))
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets.as_slice() == [Monomial::full(self.n)]
    }

    /// Every face including the empty one, as raw masks.
    fn face_bits(&self) -> HashSet<u64> {
        let mut faces = HashSet::new();
        for f in &self.facets {
            let top = f.bits();
            let mut s = top;
            loop {
                faces.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & top;
            }
        }
        faces
    }

    /// All faces, the empty face included.
    pub fn faces(&self) -> MonomialSet {
        self.face_bits()
            .into_iter()
            .map(|b| Monomial::from_bits(b).unwrap())
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0u64; (self.dimension() + 1).max(0) as usize];
        for b in self.face_bits() {
            let k = b.count_ones() as usize;
            if k > 0 {
                counts[k - 1] += 1;
            }
        }
        FVector(counts)
    }

    /// Inclusion-minimal subsets of `[n]` that are not faces.
    pub fn minimal_nonfaces(&self) -> MonomialSet {
        let faces = self.face_bits();
        let mut out = HashSet::new();
        for &f in &faces {
            let mut free = low_bits(self.n) & !f;
            while free != 0 {
                let v = free & free.wrapping_neg();
                free ^= v;
                let s = f | v;
                if faces.contains(&s) || out.contains(&s) {
                    continue;
                }
                let mut rest = s;
                let mut minimal = true;
                while rest != 0 {
                    let u = rest & rest.wrapping_neg();
                    rest ^= u;
                    if !faces.contains(&(s ^ u)) {
                        minimal = false;
                        break;
                    }
                }
                if minimal {
                    out.insert(s);
                }
            }
        }
        out.into_iter()
            .map(|b| Monomial::from_bits(b).unwrap())
            .collect()
    }

    /// All minimal non-faces have exactly `d` elements.
    pub fn is_d_flag(&self, d: usize) -> bool {
        self.minimal_nonfaces().iter().all(|g| g.degree() == d)
    }

    /// `Δ^∨ = {G ⊆ [n] : [n] \ G ∉ Δ}`, whose facets are the complements of
    /// the minimal non-faces of `Δ`.
    pub fn alexander_dual(&self) -> Result<SimplicialComplex> {
        let nonfaces = self.minimal_nonfaces();
        if nonfaces.is_empty() {
            return Err(Error::FullSimplex);
        }
        let full = Monomial::full(self.n);
        Ok(SimplicialComplex {
            n: self.n,
            facets: nonfaces.iter().map(|g| full.without(g)).collect(),
        })
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨n={}; {:?}⟩", self.n, self.facets)
    }
}

pub fn complex_from_generators<I: IntoIterator<Item = Face>>(
    n: usize,
    faces: I,
) -> Result<SimplicialComplex> {
    SimplicialComplex::from_generators(n, faces)
}

pub fn f_vector(complex: &SimplicialComplex) -> FVector {
    complex.f_vector()
}

pub fn minimal_nonfaces(complex: &SimplicialComplex) -> MonomialSet {
    complex.minimal_nonfaces()
}

pub fn is_d_flag(complex: &SimplicialComplex, d: usize) -> bool {
    complex.is_d_flag(d)
}

pub fn alexander_dual(complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    complex.alexander_dual()
}

pub fn dimension(complex: &SimplicialComplex) -> isize {
    complex.dimension()
}
