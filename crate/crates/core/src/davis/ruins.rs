//! Ruins: subcomplexes of cells whose types contain a fixed spherical set,
//! their frontiers, and the exact dimension bookkeeping attached to them.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coxeter::{mask_iter, CoxeterSystem, Gen, WeightVector, WordEngine};
use crate::davis::cellulation::WeightedChainComplex;
use crate::error::{Error, Result};
use crate::series::{alternating_summands, growth_poly_finite, growth_rational, GrowthSeries};
use crate::Q;

/// Star of T inside V: the union of all U ⊆ V with U ∪ T spherical, which is
/// exactly the set of s ∈ V whose join with T stays spherical.  St(∅,V) = V.
pub fn st_of(sys: &CoxeterSystem, tmask: u64, vmask: u64) -> Result<u64> {
    if !sys.is_spherical(tmask) {
        return Err(Error::NotSpherical(sys.mask_names(tmask)));
    }
    let mut st = 0u64;
    for s in mask_iter(vmask) {
        if (s as usize) < sys.n() && sys.is_spherical(tmask | (1 << s)) {
            st |= 1 << s;
        }
    }
    Ok(st)
}

/// Link of T inside V: the star minus T.
pub fn lk_of(sys: &CoxeterSystem, tmask: u64, vmask: u64) -> Result<u64> {
    Ok(st_of(sys, tmask, vmask)? & !tmask)
}

/// The ruin Ω(U,T) of a parent complex — closed cells whose type contains T
/// and lies inside U, plus all their faces — and its frontier ∂Ω (the faces
/// whose type does not contain T).  Cells are (dimension, index) positions
/// into the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuinPair {
    pub umask: u64,
    pub tmask: u64,
    pub omega: Vec<Vec<usize>>,
    pub frontier: Vec<Vec<usize>>,
    pub relative: Vec<Vec<usize>>,
}

impl RuinPair {
    /// Type sets of the relative (Ω ∖ ∂Ω) cells, by degree.
    pub fn relative_types(&self, parent: &WeightedChainComplex) -> Vec<BTreeSet<u64>> {
        self.relative
            .iter()
            .enumerate()
            .map(|(k, ids)| ids.iter().map(|&i| parent.cells[k][i].tmask).collect())
            .collect()
    }
}

fn omega_membership(
    parent: &WeightedChainComplex,
    umask: u64,
    tmask: u64,
) -> Vec<Vec<bool>> {
    let mut keep: Vec<Vec<bool>> = parent.cells.iter().map(|l| vec![false; l.len()]).collect();
    for k in (0..parent.cells.len()).rev() {
        for i in 0..parent.cells[k].len() {
            let ty = parent.cells[k][i].tmask;
            if ty & tmask == tmask && ty & !umask == 0 {
                keep[k][i] = true;
            }
            if keep[k][i] {
                for &(f, _) in &parent.cols[k][i] {
                    keep[k - 1][f] = true;
                }
            }
        }
    }
    keep
}

/// Carve the (U,T)-ruin out of a parent complex.  Verifies the star
/// identity Ω(U,T) = Ω(St(T,U),T) on the way.
pub fn ruin(
    eng: &WordEngine,
    parent: &WeightedChainComplex,
    umask: u64,
    tmask: u64,
) -> Result<RuinPair> {
    let sys = &eng.sys;
    if !sys.is_spherical(tmask) {
        return Err(Error::NotSpherical(sys.mask_names(tmask)));
    }
    if tmask & !umask != 0 {
        return Err(Error::InvalidComplex(format!(
            "ruin type {} must lie inside {}",
            sys.mask_names(tmask),
            sys.mask_names(umask)
        )));
    }
    let keep = omega_membership(parent, umask, tmask);
    let star = st_of(sys, tmask, umask)?;
    if star != umask && omega_membership(parent, star, tmask) != keep {
        return Err(Error::InvalidComplex(
            "ruin differs from the ruin of its star".into(),
        ));
    }
    let mut omega = vec![];
    let mut frontier = vec![];
    let mut relative = vec![];
    for (k, flags) in keep.iter().enumerate() {
        let mut o = vec![];
        let mut b = vec![];
        let mut r = vec![];
        for (i, &inside) in flags.iter().enumerate() {
            if !inside {
                continue;
            }
            o.push(i);
            if parent.cells[k][i].tmask & tmask == tmask {
                r.push(i);
            } else {
                b.push(i);
            }
        }
        omega.push(o);
        frontier.push(b);
        relative.push(r);
    }
    Ok(RuinPair {
        umask,
        tmask,
        omega,
        frontier,
        relative,
    })
}

/// Spherical types T ⊆ V ⊆ U of each size that fit inside the truncation
/// radius; degree i of the ruin's relative chain group draws exactly from
/// the size-i types.
pub fn expected_relative_types(
    sys: &CoxeterSystem,
    umask: u64,
    tmask: u64,
    radius: usize,
) -> Vec<BTreeSet<u64>> {
    let top = sys
        .spherical
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut out = vec![BTreeSet::new(); top + 1];
    for &v in &sys.spherical {
        if v & tmask == tmask
            && v & !umask == 0
            && sys.longest_length(v).is_ok_and(|l| l as usize <= radius)
        {
            out[v.count_ones() as usize].insert(v);
        }
    }
    while out.len() > 1 && out.last().is_some_and(|s| s.is_empty()) {
        out.pop();
    }
    out
}

fn growth_value_inverse_weights(
    eng: &WordEngine,
    cache: &mut HashMap<u64, Q>,
    qinv: &[Q],
    vmask: u64,
) -> Result<Q> {
    if let Some(v) = cache.get(&vmask) {
        return Ok(v.clone());
    }
    let poly = growth_poly_finite(eng, vmask)?;
    let val = poly.eval(qinv);
    cache.insert(vmask, val.clone());
    Ok(val)
}

/// Degree-indexed dimensions of the T-ruin chain groups over the whole
/// system: degree i collects 1/W_V(q⁻¹) over the spherical V ⊇ T with
/// |V| = i + |T|.
pub fn ruin_dimension_series(
    eng: &WordEngine,
    q: &WeightVector,
    tmask: u64,
) -> Result<Vec<Q>> {
    ruin_dimension_series_in(eng, q, eng.sys.full_mask(), tmask)
}

/// Same, restricted to types inside U.
pub fn ruin_dimension_series_in(
    eng: &WordEngine,
    q: &WeightVector,
    umask: u64,
    tmask: u64,
) -> Result<Vec<Q>> {
    let sys = &eng.sys;
    if !sys.is_spherical(tmask) {
        return Err(Error::NotSpherical(sys.mask_names(tmask)));
    }
    if tmask & !umask != 0 {
        return Err(Error::InvalidComplex(format!(
            "ruin type {} must lie inside {}",
            sys.mask_names(tmask),
            sys.mask_names(umask)
        )));
    }
    let qinv = q.inverse();
    let k = tmask.count_ones();
    let mut cache = HashMap::new();
    let mut out: Vec<Q> = vec![];
    for &v in &sys.spherical {
        if v & tmask != tmask || v & !umask != 0 {
            continue;
        }
        let i = (v.count_ones() - k) as usize;
        if out.len() <= i {
            out.resize(i + 1, Q::zero());
        }
        let w = growth_value_inverse_weights(eng, &mut cache, &qinv.per_class, v)?;
        out[i] += Q::one() / w;
    }
    Ok(out)
}

/// Degreewise additivity of ruin dimensions when one generator of T is
/// dropped: the types containing T∖s split into those avoiding s (the ruin
/// of U∖s) and those containing s (the T-ruin, one degree up).
pub fn ruin_additivity_check(
    eng: &WordEngine,
    q: &WeightVector,
    umask: u64,
    tmask: u64,
    s: Gen,
) -> Result<bool> {
    if tmask & (1 << s) == 0 {
        return Err(Error::InvalidComplex(format!(
            "generator {} is not in {}",
            eng.sys.mat.names[s as usize],
            eng.sys.mask_names(tmask)
        )));
    }
    let t2 = tmask & !(1 << s);
    let u2 = umask & !(1 << s);
    let whole = ruin_dimension_series_in(eng, q, umask, t2)?;
    let without = ruin_dimension_series_in(eng, q, u2, t2)?;
    let with = ruin_dimension_series_in(eng, q, umask, tmask)?;
    let get = |v: &[Q], i: i64| -> Q {
        if i < 0 || i as usize >= v.len() {
            Q::zero()
        } else {
            v[i as usize].clone()
        }
    };
    let top = whole.len().max(without.len()).max(with.len() + 1);
    Ok((0..top as i64).all(|i| get(&whole, i) == get(&without, i) + get(&with, i - 1)))
}

/// χ_q = Σ_{T spherical} (−1)^{|T|} / W_T(q), evaluated exactly.
pub fn weighted_euler(eng: &WordEngine, q: &WeightVector) -> Result<Q> {
    let series = growth_rational(eng)?;
    Ok(series.reciprocal_eval(&q.per_class))
}

/// Exact identity χ_q = 1/W(q).
///
/// Finite groups: cross-multiply the assembled rational function against the
/// growth polynomial.  Infinite groups: re-sum the alternating summands over
/// the assembled denominator by exact polynomial division (skipped when the
/// class count makes the expanded denominator unreasonable), then cross-check
/// the uniform specialization against an independently enumerated census to
/// past the denominator degree.
pub fn euler_identity_check(eng: &WordEngine, cap: usize) -> Result<bool> {
    let series = growth_rational(eng)?;
    match &series {
        GrowthSeries::Finite(w) => {
            let r = crate::series::alternating_sum_ratfun(eng)?;
            Ok(r.expanded_num().mul(w) == r.expanded_den())
        }
        GrowthSeries::Infinite { nvars, .. } => {
            if *nvars <= 8 {
                let r = crate::series::alternating_sum_ratfun(eng)?;
                let den = r.expanded_den();
                let mut total = crate::poly::PolyQ::zero(*nvars);
                for s in alternating_summands(eng)? {
                    let part = match den.try_div(&s.den(*nvars)) {
                        Some(p) => p,
                        None => return Ok(false),
                    };
                    let mono = crate::poly::PolyQ::monomial(
                        *nvars,
                        s.mono.clone(),
                        Q::from_integer(s.sign.into()),
                    );
                    total = total.add(&mono.mul(&part));
                }
                if total != r.expanded_num() {
                    return Ok(false);
                }
            }
            let inv = series.reciprocal_urat_uniform();
            let den = inv.den_expanded();
            let depth = den.degree().unwrap_or(0) + inv.num.degree().unwrap_or(0) + 4;
            let census = eng.census(depth, cap)?;
            let w_poly = crate::poly::UPoly::new(
                census
                    .iter()
                    .map(|c| Q::from_integer(BigInt::from(c.clone())))
                    .collect(),
            );
            let prod = inv.num.mul(&w_poly);
            Ok((0..=depth).all(|i| prod.coeff(i) == den.coeff(i)))
        }
    }
}
