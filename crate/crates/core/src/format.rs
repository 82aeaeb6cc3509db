//! Plain-text files for monomial sets, ideals and complexes.
//!
//! ```text
//! n=6
//! # comments and blank lines are ignored
//! 1 2 3
//! 4 5 6
//! ()
//! ```
//!
//! The header gives the ambient size. Each further line is one support as
//! strictly ascending indices in `[1, n]`; `()` is the empty support.

use std::fmt::Write as _;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{check_ambient, Monomial, MonomialSet};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a single support line such as `1 3 6` or `()`.
pub fn parse_monomial(text: &str, n: usize) -> std::result::Result<Monomial, String> {
    let text = text.trim();
    if text == "()" {
        return Ok(Monomial::ONE);
    }
    if text.is_empty() {
        return Err("empty support must be written as ()".into());
    }
    let mut bits = 0u64;
    let mut prev = 0usize;
    for token in text.split_whitespace() {
        let i: usize = token
            .parse()
            .map_err(|_| format!("'{token}' is not a variable index"))?;
        if i == 0 || i > n {
            return Err(format!("index {i} lies outside [1, {n}]"));
        }
        if i <= prev {
            return Err(format!(
                "indices must be strictly ascending, {i} follows {prev}"
            ));
        }
        prev = i;
        bits |= 1 << (i - 1);
    }
    Ok(Monomial::from_bits(bits).expect("index checked against n"))
}

/// Reads `n=<int>` and the support lines.
pub fn parse_monomial_set(text: &str) -> Result<(usize, MonomialSet)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing header n=<int>"))?;
    let n = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| parse_error(hline, format!("expected header n=<int>, found '{header}'")))?;
    check_ambient(n).map_err(|e| parse_error(hline, e.to_string()))?;
    let mut set = MonomialSet::new();
    for (line, body) in lines {
        let m = parse_monomial(body, n).map_err(|msg| parse_error(line, msg))?;
        set.insert(m);
    }
    Ok((n, set))
}

pub fn write_monomial_set(set: &MonomialSet, n: usize) -> String {
    let mut out = format!("n={n}\n");
    for m in set {
        writeln!(out, "{m}").unwrap();
    }
    out
}

/// An ideal file is a monomial set file holding the generators.
pub fn parse_ideal(text: &str) -> Result<Ideal> {
    let (n, gens) = parse_monomial_set(text)?;
    Ideal::new(n, gens)
}

pub fn write_ideal(ideal: &Ideal) -> String {
    write_monomial_set(ideal.generators(), ideal.n())
}

/// A complex file lists generating faces; non-maximal ones are absorbed.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let (n, faces) = parse_monomial_set(text)?;
    SimplicialComplex::from_generators(n, faces)
}

pub fn write_complex(complex: &SimplicialComplex) -> String {
    write_monomial_set(complex.facets(), complex.n())
}
