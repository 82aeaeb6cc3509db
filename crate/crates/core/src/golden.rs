//! Bundled worked examples and their re-derivation.
//!
//! Each example is a handful of monomial-set files pinned verbatim. A
//! [`Report`] recomputes every stated relation between them with this
//! crate and records whether it holds.

use std::fmt;

use crate::complex::SimplicialComplex;
use crate::construct::{bound_perfect_set, perfect_number_upper_bound};
use crate::error::{Error, Result};
use crate::format::parse_monomial_set;
use crate::ideal::{Ideal, UnmixedMethod};
use crate::monomial::{
    bullet_product, complement_set, restrict, Monomial, MonomialSet, Restriction,
};
use crate::perfect::{is_perfect, is_perfect_relative};
use crate::search::{perfect_number_with, SearchOptions};

pub struct GoldenFile {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! golden {
    ($id:literal: $($name:literal),+) => {
        &[$(GoldenFile {
            name: $name,
            text: include_str!(concat!("../golden/", $id, "/", $name, ".txt")),
        }),+]
    };
}

const E3_5: &[GoldenFile] =
    golden!("3.5": "A", "B", "A_without_6", "A_containing_6", "B_containing_6");
const E3_7: &[GoldenFile] =
    golden!("3.7": "A", "B", "A_without_6", "B_without_6", "A_containing_6");
const E4_2: &[GoldenFile] = golden!("4.2": "B", "A", "D", "ideal");
const E4_4: &[GoldenFile] = golden!("4.4": "B53", "B52", "Bstar", "D", "ideal");
const E5_2: &[GoldenFile] = golden!("5.2": "B");
const E6_1: &[GoldenFile] = golden!("6.1": "ideal", "delta_F", "delta_N");
const E6_2: &[GoldenFile] = golden!("6.2": "ideal", "delta_N");

pub const EXAMPLE_IDS: [&str; 7] = ["3.5", "3.7", "4.2", "4.4", "5.2", "6.1", "6.2"];

pub fn files(id: &str) -> Option<&'static [GoldenFile]> {
    Some(match id {
        "3.5" => E3_5,
        "3.7" => E3_7,
        "4.2" => E4_2,
        "4.4" => E4_4,
        "5.2" => E5_2,
        "6.1" => E6_1,
        "6.2" => E6_2,
        _ => return None,
    })
}

fn unknown(id: &str) -> Error {
    Error::InvalidParameters(format!(
        "unknown example '{id}'; expected one of {}",
        EXAMPLE_IDS.join(", ")
    ))
}

/// The raw text of one bundled file.
pub fn text(id: &str, name: &str) -> Result<&'static str> {
    files(id)
        .ok_or_else(|| unknown(id))?
        .iter()
        .find(|f| f.name == name)
        .map(|f| f.text)
        .ok_or_else(|| Error::InvalidParameters(format!("example {id} has no file '{name}'")))
}

pub fn load_set(id: &str, name: &str) -> Result<(usize, MonomialSet)> {
    parse_monomial_set(text(id, name)?)
}

pub fn load_ideal(id: &str, name: &str) -> Result<Ideal> {
    let (n, gens) = load_set(id, name)?;
    Ideal::new(n, gens)
}

pub fn load_complex(id: &str, name: &str) -> Result<SimplicialComplex> {
    let (n, faces) = load_set(id, name)?;
    SimplicialComplex::from_generators(n, faces)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn expect(&mut self, label: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        self.checks.push(Check {
            label: label.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "example {}", self.id)?;
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "  ok    {}: {}", c.label, c.actual)?;
            } else {
                writeln!(
                    f,
                    "  DIFF  {}: expected {}, got {}",
                    c.label, c.expected, c.actual
                )?;
            }
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "some checks differ"
            }
        )
    }
}

fn list(set: &MonomialSet) -> String {
    let items: Vec<String> = set.iter().map(|m| format!("{{{m}}}")).collect();
    items.join(" ")
}

fn var(i: usize) -> Monomial {
    Monomial::variable(i).expect("small index")
}

fn perfect(set: &MonomialSet, n: usize, d: usize) -> Result<bool> {
    Ok(is_perfect(set, n, d)?.is_perfect())
}

/// Re-derives example `id` and compares against the bundled files.
pub fn reproduce(id: &str) -> Result<Report> {
    reproduce_with(id, SearchOptions::from_env())
}

pub fn reproduce_with(id: &str, opts: SearchOptions) -> Result<Report> {
    let mut r = Report {
        id: id.to_owned(),
        checks: Vec::new(),
    };
    match id {
        "3.5" => restriction_pair(&mut r, id, Restriction::Containing)?,
        "3.7" => restriction_pair(&mut r, id, Restriction::Without)?,
        "4.2" => {
            let (n, b) = load_set(id, "B")?;
            let (_, a) = load_set(id, "A")?;
            let (_, d) = load_set(id, "D")?;
            let ideal = load_ideal(id, "ideal")?;
            r.expect("B perfect in degree 2", true, perfect(&b, n, 2)?);
            r.expect("|B|", 12, b.len());
            r.expect(
                "A = complements of B",
                list(&a),
                list(&complement_set(&b, n)?),
            );
            r.expect("A perfect in degree 6", true, perfect(&a, n, 6)?);
            r.expect("G(I) = A ∪ D", list(ideal.generators()), list(&a.union(&d)));
            r.expect("|G(I)|", 14, ideal.generators().len());
            r.expect(
                "homogeneous f-ideal test",
                true,
                ideal.is_f_ideal_homogeneous(6)?,
            );
            r.expect("f-vector test", true, ideal.is_f_ideal());
            let (ff, fnn) = ideal.f_vectors();
            r.expect("f-vectors equal", &ff, &fnn);
        }
        "4.4" => {
            let (n5, b53) = load_set(id, "B53")?;
            let (_, b52) = load_set(id, "B52")?;
            let (n, bstar) = load_set(id, "Bstar")?;
            let (_, d) = load_set(id, "D")?;
            let ideal = load_ideal(id, "ideal")?;
            r.expect("B(5,3,∅) perfect", true, perfect(&b53, n5, 3)?);
            r.expect("B(5,2,{6}) perfect", true, perfect(&b52, n5, 2)?);
            let lifted = bullet_product(&b52, &[var(6)].into_iter().collect())?;
            r.expect(
                "B* = B(5,3,∅) ∪ B(5,2,{6})·x6",
                list(&bstar),
                list(&b53.union(&lifted)),
            );
            r.expect("B* perfect in degree 3", true, perfect(&bstar, n, 3)?);
            r.expect("|B*|", 8, bstar.len());
            r.expect(
                "G(I) = B* ∪ D",
                list(ideal.generators()),
                list(&bstar.union(&d)),
            );
            r.expect("f-ideal", true, ideal.is_f_ideal());
            r.expect(
                "homogeneous f-ideal test",
                true,
                ideal.is_f_ideal_homogeneous(3)?,
            );
            r.expect(
                "unmixed (direct)",
                false,
                ideal.is_unmixed_f_ideal(3, UnmixedMethod::Direct)?,
            );
            r.expect(
                "unmixed (dual)",
                false,
                ideal.is_unmixed_f_ideal(3, UnmixedMethod::Dual)?,
            );
            let pair = Monomial::new([1, 2])?;
            let nonface = ideal
                .complement_layer_complex(3)
                .is_some_and(|c| c.minimal_nonfaces().contains(pair));
            r.expect(
                "{1 2} a minimal non-face of the complement complex",
                true,
                nonface,
            );
        }
        "5.2" => {
            let (n, b) = load_set(id, "B")?;
            r.expect("B perfect in degree 3", true, perfect(&b, n, 3)?);
            r.expect("|B|", 7, b.len());
            r.expect(
                "upper bound for (6,3)",
                8,
                perfect_number_upper_bound(6, 3)?,
            );
            r.expect("bound set size", 8, bound_perfect_set(6, 3)?.len());
            let result = perfect_number_with(6, 3, opts)?;
            let computed = if result.is_exact() {
                result.value.to_string()
            } else {
                format!("timeout in [{}, {}]", result.lower_bound, result.value)
            };
            r.expect("N(6,3) by exhaustive search", 7, computed);
            r.expect(
                "search witness perfect",
                true,
                perfect(&result.witness, 6, 3)?,
            );
        }
        "6.1" | "6.2" => {
            let ideal = load_ideal(id, "ideal")?;
            if id == "6.1" {
                let df = load_complex(id, "delta_F")?;
                r.expect(
                    "δ_F facets",
                    list(df.facets()),
                    list(ideal.facet_complex().facets()),
                );
            }
            let dn = load_complex(id, "delta_N")?;
            let computed = ideal.stanley_reisner_complex();
            r.expect("δ_N facets", list(dn.facets()), list(computed.facets()));
            let (ff, fnn) = ideal.f_vectors();
            r.expect("f-vectors equal", &ff, &fnn);
            if id == "6.1" {
                r.expect("f-vector", "(5,8,2)", &ff);
            }
            r.expect("f-ideal", true, ideal.is_f_ideal());
            r.expect(
                "homogeneous",
                "none",
                ideal
                    .homogeneous_degree()
                    .map_or("none".into(), |d| d.to_string()),
            );
        }
        _ => return Err(unknown(id)),
    }
    Ok(r)
}

/// The paired restriction examples on `[6]` split on `x6`. `focus` is the
/// side on which `B` loses the property.
fn restriction_pair(r: &mut Report, id: &str, focus: Restriction) -> Result<()> {
    let six = var(6);
    let (n, a) = load_set(id, "A")?;
    let (_, b) = load_set(id, "B")?;
    r.expect("A perfect", true, perfect(&a, n, 3)?);
    r.expect("B perfect", true, perfect(&b, n, 3)?);
    r.expect("|A| - |B|", 1, a.len() - b.len());
    r.expect("B ⊂ A", true, b.is_subset(&a));
    for side in [Restriction::Without, Restriction::Containing] {
        for (who, set) in [("A", &a), ("B", &b)] {
            let part = restrict(set, six, side);
            let name = format!("{who}_{}_6", side);
            if let Ok((_, pinned)) = load_set(id, &name) {
                r.expect(
                    format!("{who} {side} 6 matches"),
                    list(&pinned),
                    list(&part),
                );
            }
            let v = is_perfect_relative(&part, n, 3, six, side)?;
            // Only the focus side of B is expected to break.
            let broken = who == "B" && side == focus;
            let (expect_upper, expect_lower) = match (broken, focus) {
                (false, _) => (true, true),
                (true, Restriction::Containing) => (false, true),
                (true, Restriction::Without) => (true, false),
            };
            r.expect(
                format!("{who} {side} 6 upper perfect"),
                expect_upper,
                v.upper,
            );
            r.expect(
                format!("{who} {side} 6 lower perfect"),
                expect_lower,
                v.lower,
            );
            if broken {
                let witness = v.witness_failure.map_or("none".into(), |m| m.to_string());
                let expected = match focus {
                    Restriction::Containing => "1 2 4 6",
                    Restriction::Without => "3 4",
                };
                r.expect(format!("{who} {side} 6 first gap"), expected, witness);
            }
        }
    }
    if id == "3.7" {
        let (_, a35) = load_set("3.5", "A")?;
        let (_, b35) = load_set("3.5", "B")?;
        r.expect(
            "A = complements of the 3.5 set A",
            list(&a),
            list(&complement_set(&a35, n)?),
        );
        r.expect(
            "B = complements of the 3.5 set B",
            list(&b),
            list(&complement_set(&b35, n)?),
        );
    }
    Ok(())
}
