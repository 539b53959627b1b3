//! Finite Hecke shadows: the |W_T|-dimensional deformed group algebra of a
//! spherical subset, its averaging idempotents, and exact subspace
//! arithmetic for their images.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::coxeter::{mask_iter, Gen, WeightVector, Word, WordEngine};
use crate::error::Result;
use crate::Q;

pub type DenseMatQ = Vec<Vec<Q>>;

fn mat_zero(n: usize) -> DenseMatQ {
    vec![vec![Q::zero(); n]; n]
}

fn mat_identity(n: usize) -> DenseMatQ {
    let mut m = mat_zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

fn mat_mul(a: &DenseMatQ, b: &DenseMatQ) -> DenseMatQ {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] += aik * bkj;
                }
            }
        }
    }
    out
}

fn mat_add_scaled(acc: &mut DenseMatQ, m: &DenseMatQ, c: &Q) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (a, v) in ra.iter_mut().zip(rm) {
            *a += c * v;
        }
    }
}

fn mat_scale(m: &DenseMatQ, c: &Q) -> DenseMatQ {
    m.iter()
        .map(|r| r.iter().map(|v| v * c).collect())
        .collect()
}

/// Row-reduce in place; returns the nonzero rows (a basis of the row span).
fn rref(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Q::one() / rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let d = &rows[rank][c] * &f;
                    rows[r][c] -= d;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Basis (as rows) of the column span of a matrix.
fn image_basis(m: &DenseMatQ) -> Vec<Vec<Q>> {
    let n = m.len();
    let cols: Vec<Vec<Q>> = (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect();
    rref(cols)
}

fn in_span(basis: &[Vec<Q>], v: &[Q]) -> bool {
    let mut stacked: Vec<Vec<Q>> = basis.to_vec();
    stacked.push(v.to_vec());
    rref(stacked).len() == basis.len()
}

/// Basis of the intersection of two row spans: solve x = αA = βB by taking
/// the kernel of the stacked system in the coefficients (α, β).
fn intersect_spans(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    let p = a.len();
    let r = b.len();
    // rows of the homogeneous system: one equation per ambient coordinate
    let mut sys: Vec<Vec<Q>> = (0..n)
        .map(|c| {
            let mut row: Vec<Q> = a.iter().map(|ar| ar[c].clone()).collect();
            row.extend(b.iter().map(|br| -br[c].clone()));
            row
        })
        .collect();
    // Gaussian elimination tracking pivot columns to read off the kernel
    let ncols = p + r;
    let mut pivots = vec![];
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..sys.len()).find(|&i| !sys[i][col].is_zero()) else {
            continue;
        };
        sys.swap(rank, pr);
        let inv = Q::one() / sys[rank][col].clone();
        for v in sys[rank].iter_mut() {
            *v *= &inv;
        }
        for i in 0..sys.len() {
            if i != rank && !sys[i][col].is_zero() {
                let f = sys[i][col].clone();
                for c in 0..ncols {
                    let d = &sys[rank][c] * &f;
                    sys[i][c] -= d;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut out = vec![];
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut coef = vec![Q::zero(); ncols];
        coef[free] = Q::one();
        for (row, &pc) in pivots.iter().enumerate() {
            coef[pc] = -sys[row][free].clone();
        }
        // x = α·A using the first block of coefficients
        let mut x = vec![Q::zero(); n];
        for (i, arow) in a.iter().enumerate() {
            if !coef[i].is_zero() {
                for (xc, av) in x.iter_mut().zip(arow) {
                    *xc += &coef[i] * av;
                }
            }
        }
        if x.iter().any(|v| !v.is_zero()) {
            out.push(x);
        }
    }
    rref(out)
}

/// The deformed group algebra of a finite standard subgroup, realized on the
/// basis {e_w : w ∈ W_T} with the weighted inner product, together with the
/// left-multiplication matrices of the averaging idempotents.
#[derive(Debug, Clone)]
pub struct HeckeShadow {
    pub tmask: u64,
    /// elements of W_T ordered by length then lexicographically; index 0 is e
    pub elements: Vec<Word>,
    /// q_w per element: ⟨e_w, e_w⟩_q
    pub weights: Vec<Q>,
    pub gens: Vec<Gen>,
    /// left multiplication by the one-generator idempotent h_s, per generator
    pub h_gen: Vec<DenseMatQ>,
    /// left multiplication by h_T
    pub h_t: DenseMatQ,
    /// Σ_{w∈W_T} q_w⁻¹, the normalizing constant W_T(q⁻¹)
    pub growth_inv: Q,
}

impl HeckeShadow {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// ⟨e_1 h_T, e_1⟩_q; e_1 is the identity of the algebra, so this is the
    /// e_1-coordinate of the element h_T itself.
    pub fn trace(&self) -> Q {
        self.h_t[0][0].clone()
    }

    pub fn inner(&self, f: &[Q], g: &[Q]) -> Q {
        let mut acc = Q::zero();
        for i in 0..f.len() {
            acc += &f[i] * &g[i] * &self.weights[i];
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        mat_mul(&self.h_t, &self.h_t) == self.h_t
    }

    /// Self-adjointness under ⟨,⟩_q: with M = diag(q_w), M·h must be
    /// symmetric.
    pub fn is_self_adjoint(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..i).all(|j| &self.weights[i] * &self.h_t[i][j] == &self.weights[j] * &self.h_t[j][i])
        })
    }

    pub fn rank_h_t(&self) -> usize {
        image_basis(&self.h_t).len()
    }

    /// Basis of ∩_s image(h_s).
    pub fn image_intersection(&self) -> Vec<Vec<Q>> {
        let mut basis = image_basis(&self.h_gen[0]);
        for m in &self.h_gen[1..] {
            basis = intersect_spans(&basis, &image_basis(m));
        }
        basis
    }

    /// image(h_T) = ∩_s image(h_s), checked by dimension plus containment.
    pub fn image_matches_intersection(&self) -> bool {
        let inter = self.image_intersection();
        let image = image_basis(&self.h_t);
        image.len() == inter.len() && image.iter().all(|v| in_span(&inter, v))
    }
}

/// Build the shadow of a spherical subset.  Left multiplication by a
/// generator follows the quadratic rule e_s e_w = e_{sw} when the product
/// gets longer and q_s e_{sw} + (q_s − 1) e_w when it gets shorter; longer
/// basis elements act by composing their letters.
pub fn hecke_shadow(eng: &WordEngine, tmask: u64, q: &WeightVector) -> Result<HeckeShadow> {
    let sys = &eng.sys;
    let mut elements = eng.subgroup_elements(tmask)?;
    elements.sort_by_key(|w| (w.len(), w.clone()));
    let n = elements.len();
    let index: HashMap<Word, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let weights: Vec<Q> = elements.iter().map(|w| q.of_word(sys, w)).collect();
    let gens: Vec<Gen> = mask_iter(tmask).collect();

    // left multiplication by e_s, one sparse column per basis element
    let l_gen: HashMap<Gen, DenseMatQ> = gens
        .iter()
        .map(|&s| {
            let qs = q.of_gen(sys, s);
            let mut m = mat_zero(n);
            for (j, w) in elements.iter().enumerate() {
                let sw = eng.mult(&[s], w);
                let i = index[&sw];
                if sw.len() > w.len() {
                    m[i][j] = Q::one();
                } else {
                    m[i][j] = qs.clone();
                    m[j][j] = &qs - Q::one();
                }
            }
            (s, m)
        })
        .collect();

    // left multiplication by every e_w, by induction on length
    let mut l_all: Vec<DenseMatQ> = Vec::with_capacity(n);
    l_all.push(mat_identity(n));
    for w in &elements[1..] {
        // the suffix is reduced but not necessarily in normal form
        let shorter = index[&eng.nf(&w[1..])];
        l_all.push(mat_mul(&l_gen[&w[0]], &l_all[shorter]));
    }

    let qinv = q.inverse();
    let mut growth_inv = Q::zero();
    let mut sum = mat_zero(n);
    for (i, w) in elements.iter().enumerate() {
        let qw_inv = qinv.of_word(sys, w);
        growth_inv += &qw_inv;
        let sign = if w.len() % 2 == 0 { Q::one() } else { -Q::one() };
        mat_add_scaled(&mut sum, &l_all[i], &(sign * qw_inv));
    }
    let h_t = mat_scale(&sum, &(Q::one() / growth_inv.clone()));

    let h_gen: Vec<DenseMatQ> = gens
        .iter()
        .map(|&s| {
            let qs_inv = Q::one() / q.of_gen(sys, s);
            let mut m = mat_identity(n);
            mat_add_scaled(&mut m, &l_gen[&s], &-qs_inv.clone());
            mat_scale(&m, &(Q::one() / (Q::one() + qs_inv)))
        })
        .collect();

    Ok(HeckeShadow {
        tmask,
        elements,
        weights,
        gens,
        h_gen,
        h_t,
        growth_inv,
    })
}
