//! Coset-cell model of the Davis complex, truncated to a length ball, with
//! ordinary and weight-perturbed boundary maps over exact rationals.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use crate::complexes::{ChainComplexQ, SparseMatQ};
use crate::coxeter::{mask_iter, Gen, WeightVector, Word, WordEngine};
use crate::error::{Error, Result};
use crate::Q;

/// The coset `rep·W_T` named by its shortest representative; a cell of
/// dimension `|T|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxCell {
    pub rep: Word,
    pub tmask: u64,
}

impl CoxCell {
    fn sort_key(&self) -> (u64, usize, Word) {
        (self.tmask, self.rep.len(), self.rep.clone())
    }
}

/// Cells within the truncation, their boundary incidences, and the q-weights.
///
/// A cell `(u,T)` is kept when every element of `uW_T` has length at most the
/// radius, i.e. `l(u) + l(w0(T)) ≤ radius`.  Faces of kept cells are always
/// kept, so boundary matrices are total; `interior` marks the cells whose
/// cofaces (of every codimension) are all kept too — the honest region for
/// statements about the untruncated complex.
#[derive(Debug, Clone)]
pub struct WeightedChainComplex {
    pub radius: usize,
    pub q: WeightVector,
    pub cells: Vec<Vec<CoxCell>>,
    /// per-cell measure μ_q(u,T) = q_u
    pub mu: Vec<Vec<Q>>,
    /// boundary incidences: for each k-cell the list of (face index, ±1)
    pub cols: Vec<Vec<Vec<(usize, i8)>>>,
    pub interior: Vec<Vec<bool>>,
}

impl WeightedChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(|l| l.len()).collect()
    }

    pub fn top(&self) -> usize {
        self.cells.len() - 1
    }

    /// Ordinary boundary matrix ∂_k : C_k → C_{k−1} (k = 0 is the empty map).
    pub fn boundary(&self, k: usize) -> SparseMatQ {
        let ncols = self.cells[k].len();
        if k == 0 {
            return SparseMatQ::zero(0, ncols);
        }
        let nrows = self.cells[k - 1].len();
        let mut trips = vec![];
        for (j, col) in self.cols[k].iter().enumerate() {
            for &(i, s) in col {
                trips.push((i, j, Q::from_integer(s.into())));
            }
        }
        SparseMatQ::from_triplets(nrows, ncols, trips)
    }

    /// Coboundary δ^k : C_k → C_{k+1}, the transpose of ∂_{k+1}.
    pub fn coboundary(&self, k: usize) -> SparseMatQ {
        if k + 1 > self.top() {
            return SparseMatQ::zero(0, self.cells[k].len());
        }
        self.boundary(k + 1).transpose()
    }

    /// Perturbed boundary ∂^q_k: entry (τ,σ) is ±μ_q(σ)/μ_q(τ).  It is the
    /// adjoint of δ under ⟨,⟩_q and squares to zero like ∂.
    pub fn boundary_q(&self, k: usize) -> SparseMatQ {
        let ncols = self.cells[k].len();
        if k == 0 {
            return SparseMatQ::zero(0, ncols);
        }
        let nrows = self.cells[k - 1].len();
        let mut trips = vec![];
        for (j, col) in self.cols[k].iter().enumerate() {
            for &(i, s) in col {
                let v = Q::from_integer(s.into()) * &self.mu[k][j] / &self.mu[k - 1][i];
                trips.push((i, j, v));
            }
        }
        SparseMatQ::from_triplets(nrows, ncols, trips)
    }

    pub fn inner(&self, k: usize, f: &[Q], g: &[Q]) -> Q {
        assert_eq!(f.len(), self.cells[k].len());
        assert_eq!(g.len(), f.len());
        let mut acc = Q::zero();
        for i in 0..f.len() {
            acc += &f[i] * &g[i] * &self.mu[k][i];
        }
        acc
    }

    pub fn chain_complex(&self) -> Result<ChainComplexQ> {
        ChainComplexQ::new((0..=self.top()).map(|k| self.boundary(k)).collect())
    }

    pub fn chain_complex_q(&self) -> Result<ChainComplexQ> {
        ChainComplexQ::new((0..=self.top()).map(|k| self.boundary_q(k)).collect())
    }

    /// Betti numbers of (C, ∂^q), unreduced.
    pub fn homology_q(&self) -> Result<Vec<usize>> {
        Ok(self.chain_complex_q()?.betti())
    }

    pub fn cell_position(&self, cell: &CoxCell) -> Option<(usize, usize)> {
        let k = cell.tmask.count_ones() as usize;
        self.cells
            .get(k)?
            .iter()
            .position(|c| c == cell)
            .map(|i| (k, i))
    }
}

fn has_descent_in(eng: &WordEngine, w: &[Gen], tmask: u64) -> bool {
    mask_iter(tmask).any(|s| eng.is_right_descent(w, s))
}

/// Codimension-one faces of `(u,T)`: for each `s ∈ T` the cosets of
/// `W_{T∖s}` inside `uW_T`, each named by its shortest representative.
fn codim1_faces(
    eng: &WordEngine,
    subgroup: &[Word],
    cell: &CoxCell,
    index: &HashMap<CoxCell, usize>,
) -> Vec<usize> {
    let mut out = vec![];
    for s in mask_iter(cell.tmask) {
        let umask = cell.tmask & !(1 << s);
        for w in subgroup {
            let rep = eng.min_coset_rep(&eng.mult(&cell.rep, w), umask);
            let face = CoxCell { rep, tmask: umask };
            let id = index[&face];
            if !out.contains(&id) {
                out.push(id);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Build the truncated complex: enumerate kept cells, orient each one so
/// that its faces form a cycle (signs propagated across shared
/// codimension-two cells and verified there), attach weights.
pub fn coxeter_cellulation(
    eng: &WordEngine,
    q: &WeightVector,
    radius: usize,
    cap: usize,
) -> Result<WeightedChainComplex> {
    let sys = &eng.sys;
    let ball = eng.ball(radius, cap)?;
    let maxdim = sys
        .spherical
        .iter()
        .filter(|&&t| sys.longest_length(t).unwrap_or(u32::MAX) as usize <= radius)
        .map(|&t| t.count_ones() as usize)
        .max()
        .unwrap_or(0);

    let mut cells: Vec<Vec<CoxCell>> = vec![vec![]; maxdim + 1];
    for &tmask in &sys.spherical {
        let lt = sys.longest_length(tmask)? as usize;
        if lt > radius {
            continue;
        }
        let k = tmask.count_ones() as usize;
        for w in &ball {
            if w.len() + lt <= radius && !has_descent_in(eng, w, tmask) {
                cells[k].push(CoxCell {
                    rep: w.clone(),
                    tmask,
                });
            }
        }
    }
    for lvl in &mut cells {
        lvl.sort_by_key(|c| c.sort_key());
    }
    let total: usize = cells.iter().map(|l| l.len()).sum();
    if total > cap {
        return Err(Error::ResourceCap {
            context: "coset cells in truncated complex".into(),
            limit: cap,
            reached: total,
        });
    }

    let index: Vec<HashMap<CoxCell, usize>> = cells
        .iter()
        .map(|lvl| {
            lvl.iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect()
        })
        .collect();

    let mut subgroups: HashMap<u64, Vec<Word>> = HashMap::new();
    for &tmask in &sys.spherical {
        if tmask != 0 && sys.longest_length(tmask)? as usize <= radius {
            subgroups.insert(tmask, eng.subgroup_elements(tmask)?);
        }
    }

    // cols[k][j] = signed faces of the j-th k-cell
    let mut cols: Vec<Vec<Vec<(usize, i8)>>> = vec![vec![]; maxdim + 1];
    cols[0] = vec![vec![]; cells[0].len()];
    for k in 1..=maxdim {
        let mut level = Vec::with_capacity(cells[k].len());
        for cell in &cells[k] {
            let faces = codim1_faces(eng, &subgroups[&cell.tmask], cell, &index[k - 1]);
            if k == 1 {
                // a 1-cell has two endpoints; orient low → high
                debug_assert_eq!(faces.len(), 2);
                level.push(vec![(faces[0], -1), (faces[1], 1)]);
                continue;
            }
            level.push(orient_boundary(&cols[k - 1], &faces)?);
        }
        cols[k] = level;
    }

    let mu: Vec<Vec<Q>> = cells
        .iter()
        .map(|lvl| lvl.iter().map(|c| q.of_word(sys, &c.rep)).collect())
        .collect();

    // a cell is interior when the unique coface over every spherical
    // superset of its type is still inside the truncation
    let mut interior = vec![];
    for lvl in &cells {
        let mut flags = Vec::with_capacity(lvl.len());
        for cell in lvl {
            let mut ok = true;
            for &bigger in &sys.spherical {
                if bigger & cell.tmask == cell.tmask && bigger != cell.tmask {
                    let rep = eng.min_coset_rep(&cell.rep, bigger);
                    if rep.len() + sys.longest_length(bigger)? as usize > radius {
                        ok = false;
                        break;
                    }
                }
            }
            flags.push(ok);
        }
        interior.push(flags);
    }

    let out = WeightedChainComplex {
        radius,
        q: q.clone(),
        cells,
        mu,
        cols,
        interior,
    };
    out.chain_complex()?; // validates ∂∘∂ = 0
    Ok(out)
}

/// Choose ±1 per face so that the signed faces form a cycle: every
/// codimension-two cell below the cell lies under exactly two faces and the
/// two contributions must cancel.  Signs propagate by BFS over that
/// adjacency; the first face (in index order) gets +1.
fn orient_boundary(
    face_cols: &[Vec<(usize, i8)>],
    faces: &[usize],
) -> Result<Vec<(usize, i8)>> {
    // ridge → the (local face, sign) pairs over it
    let mut at_ridge: HashMap<usize, Vec<(usize, i8)>> = HashMap::new();
    for (l, &f) in faces.iter().enumerate() {
        for &(r, s) in &face_cols[f] {
            at_ridge.entry(r).or_default().push((l, s));
        }
    }
    for (r, v) in &at_ridge {
        if v.len() != 2 {
            return Err(Error::InvalidComplex(format!(
                "cell boundary is not a pseudomanifold: ridge {r} under {} faces",
                v.len()
            )));
        }
    }
    let mut adj: Vec<Vec<(usize, i8, i8)>> = vec![vec![]; faces.len()];
    for v in at_ridge.values() {
        let (a, sa) = v[0];
        let (b, sb) = v[1];
        adj[a].push((b, sa, sb));
        adj[b].push((a, sb, sa));
    }
    let mut eps: Vec<i8> = vec![0; faces.len()];
    eps[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &(b, sa, sb) in &adj[a] {
            let want = -eps[a] * sa * sb;
            if eps[b] == 0 {
                eps[b] = want;
                queue.push_back(b);
            } else if eps[b] != want {
                return Err(Error::InvalidComplex(
                    "inconsistent orientation around a codimension-two cell".into(),
                ));
            }
        }
    }
    if eps.iter().any(|&e| e == 0) {
        return Err(Error::InvalidComplex(
            "cell boundary is not ridge-connected".into(),
        ));
    }
    Ok(faces.iter().zip(&eps).map(|(&f, &e)| (f, e)).collect())
}
