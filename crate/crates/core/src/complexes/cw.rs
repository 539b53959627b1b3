use std::collections::BTreeMap;

use crate::complexes::posetview::Poset;
use crate::complexes::simplicial::SimplicialComplex;
use crate::error::{Error, Result};

/// One cell of a regular CW complex: dimension and signed boundary incidences
/// (coefficients are ±1 by regularity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwCell {
    pub name: String,
    pub dim: u32,
    pub boundary: Vec<(usize, i32)>,
}

/// Regular CW complex given by explicit incidence data.
///
/// The constructor verifies the chain-level invariants (∂∘∂ = 0, coefficients
/// ±1, dimensions drop by one); PL-ness of the underlying space cannot be
/// checked combinatorially and is carried as a user assertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCWComplex {
    pub cells: Vec<CwCell>,
    pub pl_asserted: bool,
}

impl RegularCWComplex {
    pub fn new(cells: Vec<CwCell>, pl_asserted: bool) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, c) in cells.iter().enumerate() {
            if c.name.is_empty()
                || c.name.starts_with('+')
                || c.name.starts_with('-')
                || c.name.contains(char::is_whitespace)
                || c.name.contains('#')
            {
                return Err(Error::InvalidComplex(format!("bad cell name `{}`", c.name)));
            }
            if seen.insert(c.name.clone(), i).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate cell name `{}`", c.name)));
            }
        }
        for c in &cells {
            if (c.dim == 0) != c.boundary.is_empty() {
                return Err(Error::InvalidComplex(format!(
                    "cell `{}` of dimension {} has {} boundary cells",
                    c.name,
                    c.dim,
                    c.boundary.len()
                )));
            }
            if c.dim >= 1 && c.boundary.len() < 2 {
                return Err(Error::InvalidComplex(format!(
                    "cell `{}` has a single boundary cell; not a regular cellulation",
                    c.name
                )));
            }
            let mut ids: Vec<usize> = vec![];
            for &(b, coeff) in &c.boundary {
                if b >= cells.len() {
                    return Err(Error::InvalidComplex(format!(
                        "cell `{}`: boundary index {b} out of range",
                        c.name
                    )));
                }
                if coeff != 1 && coeff != -1 {
                    return Err(Error::InvalidComplex(format!(
                        "cell `{}`: incidence coefficient {coeff} (must be ±1)",
                        c.name
                    )));
                }
                if cells[b].dim + 1 != c.dim {
                    return Err(Error::InvalidComplex(format!(
                        "cell `{}` (dim {}) lists `{}` (dim {}) on its boundary",
                        c.name, c.dim, cells[b].name, cells[b].dim
                    )));
                }
                ids.push(b);
            }
            ids.sort_unstable();
            if ids.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "cell `{}` lists a boundary cell twice",
                    c.name
                )));
            }
        }
        // ∂∘∂ = 0 over the integers
        for c in &cells {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(b, s) in &c.boundary {
                for &(bb, ss) in &cells[b].boundary {
                    *acc.entry(bb).or_insert(0) += i64::from(s) * i64::from(ss);
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(Error::InvalidComplex(format!(
                    "boundary of boundary of `{}` does not vanish",
                    c.name
                )));
            }
        }
        Ok(RegularCWComplex { cells, pl_asserted })
    }

    pub fn dim(&self) -> u32 {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn cells_of_dim(&self, d: u32) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim == d).collect()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim() as usize + 1];
        for c in &self.cells {
            out[c.dim as usize] += 1;
        }
        out
    }

    pub fn cell_index(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    /// Face poset: cells ordered by "is a face of", graded by dimension.
    pub fn face_poset(&self) -> Poset {
        let labels = self.cells.iter().map(|c| c.name.clone()).collect();
        let grade = self.cells.iter().map(|c| c.dim).collect();
        let mut pairs = vec![];
        for (i, c) in self.cells.iter().enumerate() {
            for &(b, _) in &c.boundary {
                pairs.push((b, i));
            }
        }
        Poset::from_pairs(labels, grade, &pairs).expect("incidence relations are acyclic")
    }

    /// Order complex of the face poset; vertices are cell barycenters graded
    /// by the dimension of their cell. Always a flag complex.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        self.face_poset().order_complex()
    }

    /// Subcomplex of all proper faces of one cell (its boundary sphere for
    /// regular cellulations of manifolds).
    pub fn boundary_complex(&self, cell: usize) -> RegularCWComplex {
        let poset = self.face_poset();
        let keep = poset.below(cell);
        let index: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let cells = keep
            .iter()
            .map(|&v| {
                let c = &self.cells[v];
                CwCell {
                    name: c.name.clone(),
                    dim: c.dim,
                    boundary: c.boundary.iter().map(|&(b, s)| (index[&b], s)).collect(),
                }
            })
            .collect();
        RegularCWComplex { cells, pl_asserted: self.pl_asserted }
    }

    /// View a simplicial complex as a regular CW complex with the standard
    /// alternating-sign incidences. Cell names join vertex labels with `.`.
    pub fn from_simplicial(k: &SimplicialComplex) -> Result<RegularCWComplex> {
        let mut faces: Vec<Vec<usize>> = k.face_set().into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let index: BTreeMap<Vec<usize>, usize> =
            faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let cells = faces
            .iter()
            .map(|f| {
                let name =
                    f.iter().map(|&v| k.labels[v].clone()).collect::<Vec<_>>().join(".");
                let mut boundary = vec![];
                if f.len() > 1 {
                    for j in 0..f.len() {
                        let mut facet = f.clone();
                        facet.remove(j);
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        boundary.push((index[&facet], sign));
                    }
                }
                CwCell { name, dim: f.len() as u32 - 1, boundary }
            })
            .collect();
        RegularCWComplex::new(cells, false)
    }

    /// Canonical `cw v1` text: one cell per line as `<name> <dim> [±face ...]`,
    /// in stored order.
    pub fn print_cw(&self) -> String {
        let mut out = String::from("cw v1\n");
        if self.pl_asserted {
            out.push_str("pl: asserted\n");
        }
        for c in &self.cells {
            out.push_str(&c.name);
            out.push(' ');
            out.push_str(&c.dim.to_string());
            for &(b, s) in &c.boundary {
                out.push(' ');
                out.push(if s > 0 { '+' } else { '-' });
                out.push_str(&self.cells[b].name);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_cw(text: &str) -> Result<RegularCWComplex> {
        let mut seen_header = false;
        let mut pl_asserted = false;
        let mut rows: Vec<(usize, String, u32, Vec<(char, String)>)> = vec![];
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if !seen_header {
                if line != "cw v1" {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: format!("expected `cw v1` header, found `{line}`"),
                    });
                }
                seen_header = true;
                continue;
            }
            if line == "pl: asserted" {
                pl_asserted = true;
                continue;
            }
            let mut toks = line.split_whitespace();
            let name = toks.next().unwrap().to_string();
            let dim: u32 = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: ln + 1,
                    msg: format!("cell `{name}`: missing or invalid dimension"),
                })?;
            let mut bnd = vec![];
            for t in toks {
                let sign = t.chars().next().unwrap();
                if sign != '+' && sign != '-' || t.len() < 2 {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: format!("bad boundary token `{t}` (expected ±name)"),
                    });
                }
                bnd.push((sign, t[1..].to_string()));
            }
            rows.push((ln + 1, name, dim, bnd));
        }
        if !seen_header {
            return Err(Error::Parse { line: 1, msg: "missing `cw v1` header".into() });
        }
        let index: BTreeMap<&str, usize> =
            rows.iter().enumerate().map(|(i, r)| (r.1.as_str(), i)).collect();
        if index.len() != rows.len() {
            // find the duplicate for the message
            let mut seen = BTreeMap::new();
            for r in &rows {
                if seen.insert(r.1.clone(), ()).is_some() {
                    return Err(Error::Parse {
                        line: r.0,
                        msg: format!("duplicate cell name `{}`", r.1),
                    });
                }
            }
        }
        let mut cells = vec![];
        for (ln, name, dim, bnd) in &rows {
            let mut boundary = vec![];
            for (sign, b) in bnd {
                let Some(&bi) = index.get(b.as_str()) else {
                    return Err(Error::Parse {
                        line: *ln,
                        msg: format!("cell `{name}`: unknown boundary cell `{b}`"),
                    });
                };
                boundary.push((bi, if *sign == '+' { 1 } else { -1 }));
            }
            cells.push(CwCell { name: name.clone(), dim: *dim, boundary });
        }
        RegularCWComplex::new(cells, pl_asserted)
    }
}
