//! Input plumbing: file loading with header sniffing, rational and
//! generator-list parsing, and the environment-configured resource cap.

use std::fs;
use std::path::Path;

use num_traits::Signed;

use coxl2::complexes::{RegularCWComplex, SimplicialComplex};
use coxl2::coxeter::{CoxeterSystem, WeightVector, DEFAULT_BALL_CAP};
use coxl2::{Error, Result, Q};

pub fn load_system(path: &Path) -> Result<CoxeterSystem> {
    CoxeterSystem::parse(&fs::read_to_string(path)?)
}

pub enum ComplexFile {
    Simp(SimplicialComplex),
    Cw(RegularCWComplex),
}

/// Dispatch on the first non-comment line: `simp v1` or `cw v1`.
pub fn load_complex(path: &Path) -> Result<ComplexFile> {
    let text = fs::read_to_string(path)?;
    let header = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    match header {
        "simp v1" => Ok(ComplexFile::Simp(SimplicialComplex::parse_simp(&text)?)),
        "cw v1" => Ok(ComplexFile::Cw(RegularCWComplex::parse_cw(&text)?)),
        other => Err(Error::Parse {
            line: 1,
            msg: format!("expected a `simp v1` or `cw v1` header, found `{other}`"),
        }),
    }
}

pub fn load_as_cw(path: &Path) -> Result<RegularCWComplex> {
    match load_complex(path)? {
        ComplexFile::Cw(x) => Ok(x),
        ComplexFile::Simp(k) => RegularCWComplex::from_simplicial(&k),
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    s.trim()
        .parse::<Q>()
        .map_err(|e| Error::InvalidWeight(format!("`{s}` is not a rational: {e}")))
}

pub fn parse_rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(parse_rational).collect()
}

/// One value = uniform; a list is matched against the class count first,
/// then the generator count (identical when all classes are singletons).
pub fn parse_weights(sys: &CoxeterSystem, s: &str) -> Result<WeightVector> {
    let vals = parse_rationals(s)?;
    if vals.len() == 1 {
        WeightVector::uniform(sys, vals.into_iter().next().unwrap())
    } else if vals.len() == sys.n_classes {
        WeightVector::per_class(sys, vals)
    } else if vals.len() == sys.n() {
        WeightVector::per_generator(sys, vals)
    } else {
        Err(Error::InvalidWeight(format!(
            "expected 1, {} (classes), or {} (generators) weights, got {}",
            sys.n_classes,
            sys.n(),
            vals.len()
        )))
    }
}

pub fn fmt_weights(w: &WeightVector) -> String {
    let first = &w.per_class[0];
    if w.per_class.iter().all(|x| x == first) {
        first.to_string()
    } else {
        w.per_class.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_width(s: &str) -> Result<Q> {
    let w = parse_rational(s)?;
    if !w.is_positive() {
        return Err(Error::InvalidWeight(format!("interval width {w} is not positive")));
    }
    Ok(w)
}

/// Generator-name list like `s,t` as a bitmask over the system's generators.
pub fn parse_mask(sys: &CoxeterSystem, s: &str) -> Result<u64> {
    let mut mask = 0u64;
    for tok in s.split(',') {
        let t = tok.trim();
        let g = sys
            .mat
            .names
            .iter()
            .position(|n| n == t)
            .ok_or_else(|| Error::UnknownGenerator(t.to_string()))?;
        mask |= 1 << g;
    }
    Ok(mask)
}

/// Enumeration cap, overridable through `COXL2_BALL_CAP`.
pub fn ball_cap() -> Result<usize> {
    match std::env::var("COXL2_BALL_CAP") {
        Err(_) => Ok(DEFAULT_BALL_CAP),
        Ok(v) => v
            .parse()
            .map_err(|_| Error::other(format!("COXL2_BALL_CAP must be an integer, got `{v}`"))),
    }
}
