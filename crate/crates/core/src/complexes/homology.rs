use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::complexes::cw::RegularCWComplex;
use crate::complexes::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use crate::Q;

/// Sparse matrix over ℚ, rows as sorted (column, value) lists.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatQ {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, Q)>>,
}

fn sub_scaled(a: &[(usize, Q)], p: &[(usize, Q)], factor: &Q) -> Vec<(usize, Q)> {
    // a − factor·p, both sorted by column
    let mut out = Vec::with_capacity(a.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < p.len() {
        if j >= p.len() || (i < a.len() && a[i].0 < p[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || p[j].0 < a[i].0 {
            out.push((p[j].0, -(factor * &p[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(factor * &p[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseMatQ {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatQ { nrows, ncols, rows: vec![vec![]; nrows] }
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        items: impl IntoIterator<Item = (usize, usize, Q)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in items {
            assert!(i < nrows && j < ncols, "triplet out of range");
            let e = acc[i].entry(j).or_insert_with(Q::zero);
            *e += v;
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatQ { nrows, ncols, rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> SparseMatQ {
        let mut rows: Vec<Vec<(usize, Q)>> = vec![vec![]; self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        SparseMatQ { nrows: self.ncols, ncols: self.nrows, rows }
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.ncols, v.len(), "dimension mismatch in apply");
        self.rows
            .iter()
            .map(|r| r.iter().map(|(j, a)| a * &v[*j]).sum())
            .collect()
    }

    /// Matrix product self·rhs.
    pub fn mul(&self, rhs: &SparseMatQ) -> SparseMatQ {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (j, a) in r {
                    for (k, b) in &rhs.rows[*j] {
                        let e = acc.entry(*k).or_insert_with(Q::zero);
                        *e += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatQ { nrows: self.nrows, ncols: rhs.ncols, rows }
    }

    /// Exact rank by sparse elimination (shortest rows first, pivots kept
    /// normalized so reductions are single fused passes).
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<(usize, Q)>> =
            self.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        work.sort_by_key(|r| r.len());
        let mut pivots: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for mut row in work {
            loop {
                let Some((c, v)) = row.first().map(|(c, v)| (*c, v.clone())) else {
                    break;
                };
                if let Some(p) = pivots.get(&c) {
                    row = sub_scaled(&row, p, &v);
                } else {
                    let norm: Vec<(usize, Q)> =
                        row.iter().map(|(j, x)| (*j, x / &v)).collect();
                    pivots.insert(c, norm);
                    break;
                }
            }
        }
        pivots.len()
    }
}

/// Chain complex of exact rational matrices; `d[i]` maps degree i to i−1
/// (`d[0]` is the zero map out of degree 0). The constructor enforces
/// composability and D∘D = 0.
#[derive(Clone, Debug)]
pub struct ChainComplexQ {
    pub d: Vec<SparseMatQ>,
}

impl ChainComplexQ {
    pub fn new(d: Vec<SparseMatQ>) -> Result<Self> {
        if d.is_empty() || d[0].nrows != 0 {
            return Err(Error::Dimension("d[0] must map degree 0 to the zero space".into()));
        }
        for i in 1..d.len() {
            if d[i].nrows != d[i - 1].ncols {
                return Err(Error::Dimension(format!(
                    "d[{i}] has {} rows but degree {} has dimension {}",
                    d[i].nrows,
                    i - 1,
                    d[i - 1].ncols
                )));
            }
            if i >= 2 && !d[i - 1].mul(&d[i]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d[{}]∘d[{i}] is nonzero",
                    i - 1
                )));
            }
        }
        Ok(ChainComplexQ { d })
    }

    pub fn top(&self) -> usize {
        self.d.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.d.iter().map(|m| m.ncols).collect()
    }

    /// Betti numbers b_i = dim C_i − rank d_i − rank d_{i+1}.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.d.iter().map(|m| m.rank()).collect();
        (0..self.d.len())
            .map(|i| {
                let up = if i + 1 < self.d.len() { ranks[i + 1] } else { 0 };
                self.d[i].ncols - ranks[i] - up
            })
            .collect()
    }
}

/// Homology ranks by degree. `minus_one` is the rank in degree −1, which is
/// nonzero only for the reduced homology of the empty complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub reduced: bool,
    pub relative: bool,
    pub minus_one: usize,
    pub ranks: Vec<usize>,
}

impl BettiVector {
    pub fn rank(&self, degree: i64) -> usize {
        if degree == -1 {
            self.minus_one
        } else {
            usize::try_from(degree)
                .ok()
                .and_then(|d| self.ranks.get(d))
                .copied()
                .unwrap_or(0)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.minus_one == 0 && self.ranks.iter().all(|&r| r == 0)
    }

    /// True iff the only nonzero rank sits at `degree` and equals `rank`.
    pub fn is_concentrated(&self, degree: i64, rank: usize) -> bool {
        if rank == 0 {
            return self.is_trivial();
        }
        self.rank(degree) == rank
            && self.minus_one + self.ranks.iter().sum::<usize>() == rank
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.reduced { "H~" } else { "H" };
        if self.reduced && self.minus_one > 0 {
            writeln!(f, "{h}_-1 = {}", self.minus_one)?;
        }
        for (i, r) in self.ranks.iter().enumerate() {
            writeln!(f, "{h}_{i} = {r}")?;
        }
        Ok(())
    }
}

/// Simplicial chain complex with alternating-sign boundaries.
pub fn simplicial_chain_complex(k: &SimplicialComplex) -> ChainComplexQ {
    let by_dim = k.faces_by_dim();
    chain_complex_from_faces(&by_dim, |_| true)
}

fn chain_complex_from_faces(
    by_dim: &[Vec<Vec<usize>>],
    keep: impl Fn(&[usize]) -> bool,
) -> ChainComplexQ {
    let kept: Vec<Vec<&Vec<usize>>> = by_dim
        .iter()
        .map(|fs| fs.iter().filter(|f| keep(f)).collect())
        .collect();
    let index: Vec<BTreeMap<&Vec<usize>, usize>> = kept
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
        .collect();
    let mut d = vec![SparseMatQ::zero(0, kept.first().map_or(0, |v| v.len()))];
    for i in 1..kept.len() {
        let mut triplets = vec![];
        for (col, f) in kept[i].iter().enumerate() {
            for j in 0..f.len() {
                let mut facet = (*f).clone();
                facet.remove(j);
                if let Some(&row) = index[i - 1].get(&&facet) {
                    let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
                    triplets.push((row, col, sign));
                }
            }
        }
        d.push(SparseMatQ::from_triplets(kept[i - 1].len(), kept[i].len(), triplets));
    }
    ChainComplexQ::new(d).expect("simplicial boundaries compose to zero")
}

/// Exact homology of a simplicial complex over ℚ.
pub fn simplicial_betti(k: &SimplicialComplex, reduced: bool) -> BettiVector {
    let cc = simplicial_chain_complex(k);
    betti_from_complex(&cc, reduced, k.is_void())
}

fn betti_from_complex(cc: &ChainComplexQ, reduced: bool, void: bool) -> BettiVector {
    if void {
        return BettiVector {
            reduced,
            relative: false,
            minus_one: usize::from(reduced),
            ranks: vec![],
        };
    }
    let mut ranks = cc.betti();
    if reduced {
        ranks[0] -= 1; // augmentation is onto for a nonempty complex
    }
    BettiVector { reduced, relative: false, minus_one: 0, ranks }
}

/// Exact relative homology of the pair (K, A); A must be a subcomplex of K
/// over the same vertex universe.
pub fn relative_betti(k: &SimplicialComplex, a: &SimplicialComplex) -> Result<BettiVector> {
    if a.labels != k.labels {
        return Err(Error::InvalidComplex(
            "relative pair must share one vertex universe".into(),
        ));
    }
    let kf = k.face_set();
    let af = a.face_set();
    if !af.is_subset(&kf) {
        return Err(Error::InvalidComplex("second complex is not a subcomplex".into()));
    }
    let by_dim = k.faces_by_dim();
    let cc = chain_complex_from_faces(&by_dim, |f| !af.contains(f));
    let ranks = cc.betti();
    Ok(BettiVector { reduced: false, relative: true, minus_one: 0, ranks })
}

/// Chain complex of a regular CW complex from its incidence data.
pub fn cw_chain_complex(x: &RegularCWComplex) -> ChainComplexQ {
    let top = x.dim();
    let index: Vec<BTreeMap<usize, usize>> = (0..=top)
        .map(|d| x.cells_of_dim(d).into_iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut d = vec![SparseMatQ::zero(0, index[0].len())];
    for i in 1..=top as usize {
        let mut triplets = vec![];
        for (&cell, &col) in &index[i] {
            for &(b, s) in &x.cells[cell].boundary {
                triplets.push((index[i - 1][&b], col, Q::from_integer(s.into())));
            }
        }
        d.push(SparseMatQ::from_triplets(index[i - 1].len(), index[i].len(), triplets));
    }
    ChainComplexQ::new(d).expect("validated CW incidence composes to zero")
}

/// Exact homology of a regular CW complex.
pub fn cw_betti(x: &RegularCWComplex, reduced: bool) -> BettiVector {
    let cc = cw_chain_complex(x);
    betti_from_complex(&cc, reduced, x.cells.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::simplicial::{
        boundary_simplex, flag_poset_complement, full_simplex, simplex_skeleton,
    };

    #[test]
    fn rank_examples() {
        let m = SparseMatQ::from_triplets(
            2,
            3,
            vec![
                (0, 0, Q::one()),
                (0, 1, Q::one()),
                (1, 0, Q::from_integer(2.into())),
                (1, 1, Q::from_integer(2.into())),
            ],
        );
        assert_eq!(m.rank(), 1);
        assert_eq!(m.transpose().rank(), 1);
        let id = SparseMatQ::from_triplets(3, 3, (0..3).map(|i| (i, i, Q::one())));
        assert_eq!(id.rank(), 3);
        assert!(id.mul(&SparseMatQ::zero(3, 3)).is_zero());
    }

    #[test]
    fn skeleton_concentration() {
        // k-skeleton of Δⁿ: reduced homology concentrated in degree k,
        // rank C(n, k+1)
        let b = simplicial_betti(&simplex_skeleton(5, 1), true);
        assert!(b.is_concentrated(1, 6));
        let b = simplicial_betti(&simplex_skeleton(5, 2), true);
        assert!(b.is_concentrated(2, 4));
    }

    #[test]
    fn spheres_and_cones() {
        let b = simplicial_betti(&boundary_simplex(3), true);
        assert!(b.is_concentrated(2, 1));
        // a cone: point joined to a 4-cycle
        let pt = full_simplex(1);
        let cycle = flag_poset_complement(3, 1).unwrap(); // hexagon
        assert!(simplicial_betti(&pt.join(&cycle), true).is_trivial());
        // unreduced picks up the extra H_0 class
        let u = simplicial_betti(&boundary_simplex(3), false);
        assert_eq!(u.ranks, vec![1, 0, 1]);
    }

    #[test]
    fn empty_complex_reduced_rank() {
        let e = simplex_skeleton(3, -1);
        let b = simplicial_betti(&e, true);
        assert_eq!(b.minus_one, 1);
        assert!(b.is_concentrated(-1, 1));
        assert!(simplicial_betti(&e, false).is_trivial());
    }

    #[test]
    fn alexander_instance() {
        // removing low barycenters from b∂Δ² leaves 3 points, matching the
        // 0-skeleton on 3 vertices
        let comp = flag_poset_complement(3, 2).unwrap();
        let b = simplicial_betti(&comp, true);
        assert!(b.is_concentrated(0, 2));
        let dual = simplicial_betti(&simplex_skeleton(3, 0), true);
        assert_eq!(b.rank(0), dual.rank(0));
    }

    #[test]
    fn relative_disc_boundary() {
        let disc = full_simplex(3);
        let bd = SimplicialComplex::from_maximal(
            disc.labels.clone(),
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let b = relative_betti(&disc, &bd).unwrap();
        assert_eq!(b.ranks, vec![0, 0, 1]);
        assert!(b.relative);
    }

    #[test]
    fn relative_rejects_non_subcomplex() {
        let tri = boundary_simplex(2);
        let disc = full_simplex(3);
        assert!(relative_betti(&tri, &disc).is_err());
    }

    #[test]
    fn cw_homology_square_boundary() {
        let sq = crate::complexes::cw::tests::square();
        let b = cw_betti(&sq, true);
        assert!(b.is_trivial()); // the solid square is contractible
        let cycle = sq.boundary_complex(8);
        let b = cw_betti(&cycle, true);
        assert!(b.is_concentrated(1, 1));
    }
}
