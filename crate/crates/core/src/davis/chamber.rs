//! Nerve, Davis chamber, and the basic construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::complexes::{Poset, SimplicialComplex};
use crate::coxeter::{mask_iter, CoxeterSystem, Gen, Word, WordEngine};
use crate::error::{Error, Result};

/// Nerve: one vertex per generator, faces the nonempty spherical subsets.
pub fn nerve(sys: &CoxeterSystem) -> SimplicialComplex {
    let faces: Vec<Vec<usize>> = sys
        .spherical
        .iter()
        .filter(|&&m| m != 0)
        .map(|&m| mask_iter(m).map(|g| g as usize).collect())
        .collect();
    SimplicialComplex::from_maximal(sys.mat.names.clone(), faces)
        .expect("spherical subsets are valid faces")
}

/// A simplicial complex with a mirror structure: each vertex carries the
/// mask of generators whose mirror contains it.  The mirror attached to `s`
/// is the full subcomplex on the vertices whose mask contains `s`.
#[derive(Debug, Clone)]
pub struct MirroredChamber {
    pub complex: SimplicialComplex,
    pub vertex_type: Vec<u64>,
}

impl MirroredChamber {
    pub fn mirror(&self, s: Gen) -> SimplicialComplex {
        let keep: Vec<usize> = (0..self.vertex_type.len())
            .filter(|&v| self.vertex_type[v] & (1 << s) != 0)
            .collect();
        self.complex.full_subcomplex(&keep)
    }
}

/// Davis chamber: the order complex of the poset of spherical subsets
/// including the empty set.  The empty set is a common lower bound of every
/// chain, so the chamber is a cone with the empty-set vertex as cone point;
/// the mirror of `s` is spanned by the subsets containing `s`.
pub fn davis_chamber(sys: &CoxeterSystem) -> MirroredChamber {
    let labels: Vec<String> = sys.spherical.iter().map(|&m| sys.mask_names(m)).collect();
    let grade: Vec<u32> = sys.spherical.iter().map(|&m| m.count_ones()).collect();
    let mut pairs = vec![];
    for (i, &a) in sys.spherical.iter().enumerate() {
        for (j, &b) in sys.spherical.iter().enumerate() {
            if a != b && a & b == a {
                pairs.push((i, j));
            }
        }
    }
    let poset = Poset::from_pairs(labels, grade, &pairs).expect("inclusion order is acyclic");
    let complex = poset.order_complex();
    debug_assert!(complex.maximal().iter().all(|f| f.contains(&0)));
    MirroredChamber {
        complex,
        vertex_type: sys.spherical.clone(),
    }
}

/// Generator names of a word, concatenated; `e` for the identity.
pub fn word_label(sys: &CoxeterSystem, w: &[Gen]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|&g| sys.mat.names[g as usize].as_str())
        .collect()
}

/// Glue one copy of `x` per element of `ball`, identifying the copies of a
/// vertex `v` over the cosets of the subgroup its type generates: `(w, v)`
/// and `(w', v)` land together exactly when `w⁻¹w'` lies in that subgroup.
///
/// `ball` must be closed under right descents so that neighbouring copies
/// are present.
pub fn basic_construction(
    eng: &WordEngine,
    x: &MirroredChamber,
    ball: &[Word],
) -> Result<SimplicialComplex> {
    let set: BTreeSet<&Word> = ball.iter().collect();
    for w in ball {
        for s in 0..eng.sys.n() as Gen {
            if eng.is_right_descent(w, s) && !set.contains(&eng.mult(w, &[s])) {
                return Err(Error::InvalidComplex(format!(
                    "ball not closed under right descents: {} lacks {}",
                    word_label(&eng.sys, w),
                    word_label(&eng.sys, &eng.mult(w, &[s])),
                )));
            }
        }
    }
    let mut ids: BTreeMap<(Word, usize), usize> = BTreeMap::new();
    let mut labels = vec![];
    let mut grade = vec![];
    let mut faces = vec![];
    for w in ball {
        for f in x.complex.maximal() {
            let mut face = Vec::with_capacity(f.len());
            for &v in f {
                let rep = eng.min_coset_rep(w, x.vertex_type[v]);
                let next = ids.len();
                let id = *ids.entry((rep.clone(), v)).or_insert_with(|| {
                    labels.push(format!(
                        "{}|{}",
                        word_label(&eng.sys, &rep),
                        x.complex.labels[v]
                    ));
                    grade.push(x.complex.grade[v]);
                    next
                });
                face.push(id);
            }
            faces.push(face);
        }
    }
    SimplicialComplex::from_maximal_graded(labels, grade, faces)
}
