//! Growth series of Coxeter systems, radii of convergence along rational
//! rays, and region-of-convergence membership.
//!
//! For infinite W the reciprocal growth series is held in unassembled form,
//!
//! ```text
//! 1/W(t) = Σ_{T spherical} (−1)^{|T|} · t_{w0(T)} / W_T(t),
//! ```
//!
//! using the palindromic identity W_T(t⁻¹)·t_{w0(T)} = W_T(t) for finite W_T.
//! Summand-wise Taylor expansion and pointwise evaluation then avoid ever
//! expanding a common multivariate denominator; univariate specializations
//! (uniform or along a ray) are assembled and reduced where gcds exist.

use crate::coxeter::{CoxeterSystem, WeightVector, WordEngine};
use crate::error::{Error, Result};
use crate::poly::{Mono, PolyQ, RatFun, UPoly, URat};
use crate::roots::{smallest_positive_root, SturmChain};
use crate::{qi, Q};
use num_traits::{One, Zero};

/// Default width of isolating intervals for radii of convergence.
pub fn default_root_width() -> Q {
    crate::q(1, 10_000_000_000_000) // 1e-13, comfortably inside 1e-12 checks
}

/// Growth polynomial of a spherical standard subgroup: Σ_{w∈W_T} t_w, one
/// variable per generator conjugacy class of the ambient system. Evaluates
/// to |W_T| at the all-ones point.
pub fn growth_poly_finite(eng: &WordEngine, tmask: u64) -> Result<PolyQ> {
    let sys = &eng.sys;
    let mut p = PolyQ::zero(sys.n_classes);
    for w in eng.subgroup_elements(tmask)? {
        p.add_term(sys.word_monomial(&w), Q::one());
    }
    Ok(p)
}

/// One summand of the reciprocal growth series.
#[derive(Clone, Debug)]
pub struct Summand {
    pub sign: i8,
    /// t_{w0(T)}: the unique top monomial of the growth polynomial
    pub mono: Mono,
    /// W_T(t) factored by diagram components: W_T = Π W_component.
    /// Keeping the factors separate lets univariate specializations share
    /// (1 + t)-style factors instead of expanding a common denominator.
    pub den_factors: Vec<PolyQ>,
    /// the subset T itself
    pub tmask: u64,
}

impl Summand {
    pub fn den(&self, nvars: usize) -> PolyQ {
        let mut p = PolyQ::one(nvars);
        for f in &self.den_factors {
            p = p.mul(f);
        }
        p
    }
}

/// Growth series W(t) of a Coxeter system.
#[derive(Clone, Debug)]
pub enum GrowthSeries {
    /// finite W: the growth polynomial itself
    Finite(PolyQ),
    /// infinite W: 1/W as an alternating sum over the spherical poset
    Infinite { nvars: usize, summands: Vec<Summand> },
}

/// Exact growth series; polynomial for finite W, otherwise the alternating
/// sum over spherical subsets.
pub fn growth_rational(eng: &WordEngine) -> Result<GrowthSeries> {
    let sys = &eng.sys;
    if sys.is_spherical(sys.full_mask()) {
        return Ok(GrowthSeries::Finite(growth_poly_finite(eng, sys.full_mask())?));
    }
    Ok(GrowthSeries::Infinite {
        nvars: sys.n_classes,
        summands: alternating_summands(eng)?,
    })
}

/// The summands (−1)^{|T|} t_{w0(T)} / W_T(t) for every spherical T,
/// including T = S when W is finite.
pub fn alternating_summands(eng: &WordEngine) -> Result<Vec<Summand>> {
    let sys = &eng.sys;
    let mut out = Vec::with_capacity(sys.spherical.len());
    for &tmask in &sys.spherical {
        let den_factors: Vec<PolyQ> = sys
            .diagram_components(tmask)
            .into_iter()
            .map(|comp| growth_poly_finite(eng, comp))
            .collect::<Result<_>>()?;
        let den = den_factors
            .iter()
            .fold(PolyQ::one(sys.n_classes), |a, f| a.mul(f));
        let (mono, coef) = den.top_term().ok_or_else(|| {
            Error::other(format!(
                "growth polynomial of {} has no unique top term",
                sys.mask_names(tmask)
            ))
        })?;
        if !coef.is_one() {
            return Err(Error::other(format!(
                "top coefficient of growth polynomial of {} is {}, expected 1",
                sys.mask_names(tmask),
                coef
            )));
        }
        let sign = if tmask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.push(Summand {
            sign,
            mono,
            den_factors,
            tmask,
        });
    }
    Ok(out)
}

/// The alternating sum assembled as one multivariate rational function over
/// the product of the distinct subgroup growth polynomials. Expands the
/// numerator, so use only on systems with few conjugacy classes.
/// Distinct factors with maximal multiplicities across a list of factored
/// denominators: a syntactic lcm. Returns (factors, max multiplicities,
/// per-list factor counts).
fn factor_lcm<T: Clone + PartialEq>(lists: &[Vec<T>]) -> (Vec<T>, Vec<u32>, Vec<Vec<(usize, u32)>>) {
    let mut factors: Vec<T> = vec![];
    let mut maxmult: Vec<u32> = vec![];
    let mut per: Vec<Vec<(usize, u32)>> = vec![];
    for fs in lists {
        let mut counts: Vec<(usize, u32)> = vec![];
        for f in fs {
            let i = match factors.iter().position(|x| x == f) {
                Some(i) => i,
                None => {
                    factors.push(f.clone());
                    maxmult.push(0);
                    factors.len() - 1
                }
            };
            match counts.iter_mut().find(|(j, _)| *j == i) {
                Some((_, c)) => *c += 1,
                None => counts.push((i, 1)),
            }
        }
        for &(i, c) in &counts {
            maxmult[i] = maxmult[i].max(c);
        }
        per.push(counts);
    }
    (factors, maxmult, per)
}

pub fn alternating_sum_ratfun(eng: &WordEngine) -> Result<RatFun> {
    let summands = alternating_summands(eng)?;
    let nvars = eng.sys.n_classes;
    let lists: Vec<Vec<PolyQ>> = summands.iter().map(|s| s.den_factors.clone()).collect();
    let (factors, maxmult, per) = factor_lcm(&lists);
    let mut num = PolyQ::zero(nvars);
    for (s, counts) in summands.iter().zip(&per) {
        let mut term = PolyQ::monomial(nvars, s.mono.clone(), qi(s.sign as i64));
        for (i, f) in factors.iter().enumerate() {
            let have = counts.iter().find(|(j, _)| *j == i).map(|&(_, c)| c).unwrap_or(0);
            for _ in have..maxmult[i] {
                term = term.mul(f);
            }
        }
        num = num.add(&term);
    }
    Ok(RatFun {
        nvars,
        num: vec![(num, 1)],
        den: factors.into_iter().zip(maxmult).collect(),
    })
}

fn assemble_univariate(parts: Vec<(UPoly, Vec<UPoly>)>) -> URat {
    let lists: Vec<Vec<UPoly>> = parts.iter().map(|(_, fs)| fs.clone()).collect();
    let (factors, maxmult, per) = factor_lcm(&lists);
    let mut num = UPoly::zero();
    for ((n, _), counts) in parts.iter().zip(&per) {
        let mut term = n.clone();
        for (i, f) in factors.iter().enumerate() {
            let have = counts.iter().find(|(j, _)| *j == i).map(|&(_, c)| c).unwrap_or(0);
            for _ in have..maxmult[i] {
                term = term.mul(f);
            }
        }
        num = num.add(&term);
    }
    URat::new(num, factors.into_iter().zip(maxmult).collect()).reduced()
}

impl GrowthSeries {
    pub fn nvars(&self) -> usize {
        match self {
            GrowthSeries::Finite(p) => p.nvars,
            GrowthSeries::Infinite { nvars, .. } => *nvars,
        }
    }

    /// Taylor expansion of 1/W to total degree `deg`.
    pub fn reciprocal_taylor(&self, deg: usize) -> PolyQ {
        match self {
            GrowthSeries::Finite(p) => p.inverse_series(deg),
            GrowthSeries::Infinite { nvars, summands } => {
                let mut acc = PolyQ::zero(*nvars);
                for s in summands {
                    let mut term = PolyQ::monomial(*nvars, s.mono.clone(), qi(s.sign as i64));
                    for f in &s.den_factors {
                        term = term.mul_trunc(&f.inverse_series(deg), deg);
                    }
                    acc = acc.add(&term);
                }
                acc
            }
        }
    }

    /// Taylor expansion of W itself to total degree `deg`; coefficients are
    /// the weighted word counts Σ t_w.
    pub fn taylor(&self, deg: usize) -> PolyQ {
        match self {
            GrowthSeries::Finite(p) => p.clone(),
            GrowthSeries::Infinite { .. } => self.reciprocal_taylor(deg).inverse_series(deg),
        }
    }

    /// 1/W evaluated at a positive rational point (one value per class).
    pub fn reciprocal_eval(&self, point: &[Q]) -> Q {
        match self {
            GrowthSeries::Finite(p) => Q::one() / p.eval(point),
            GrowthSeries::Infinite { nvars, summands } => {
                let mut acc = Q::zero();
                for s in summands {
                    let mut v = Q::from_integer(s.sign.into());
                    for (i, &e) in s.mono.iter().enumerate() {
                        debug_assert!(i < *nvars);
                        for _ in 0..e {
                            v *= point[i].clone();
                        }
                    }
                    for f in &s.den_factors {
                        v /= f.eval(point);
                    }
                    acc += v;
                }
                acc
            }
        }
    }

    /// 1/W with every variable specialized to `t`, fully reduced.
    pub fn reciprocal_urat_uniform(&self) -> URat {
        self.reciprocal_urat_ray_inner(None)
    }

    /// 1/W specialized along t_c := s·ray_c, fully reduced.
    pub fn reciprocal_urat_ray(&self, ray: &[Q]) -> URat {
        self.reciprocal_urat_ray_inner(Some(ray))
    }

    fn reciprocal_urat_ray_inner(&self, ray: Option<&[Q]>) -> URat {
        let spec = |p: &PolyQ| match ray {
            None => p.specialize_uniform(),
            Some(r) => p.specialize_ray(r),
        };
        match self {
            GrowthSeries::Finite(p) => URat::new(UPoly::one(), vec![(spec(p), 1)]).reduced(),
            GrowthSeries::Infinite { nvars, summands } => {
                let parts = summands
                    .iter()
                    .map(|s| {
                        let mono = PolyQ::monomial(*nvars, s.mono.clone(), qi(s.sign as i64));
                        (spec(&mono), s.den_factors.iter().map(&spec).collect::<Vec<_>>())
                    })
                    .collect();
                assemble_univariate(parts)
            }
        }
    }

    /// W itself as a reduced univariate rational function in `t`.
    pub fn urat_uniform(&self) -> URat {
        match self {
            GrowthSeries::Finite(p) => URat::new(p.specialize_uniform(), vec![]),
            GrowthSeries::Infinite { .. } => self.reciprocal_urat_uniform().reciprocal(),
        }
    }

    /// First `n` coefficients of W(t) with every variable set to `t`.
    pub fn census_coefficients(&self, n: usize) -> Vec<Q> {
        match self {
            GrowthSeries::Finite(p) => {
                let mut c = p.specialize_uniform().coeffs;
                c.resize(n, Q::zero());
                c
            }
            GrowthSeries::Infinite { .. } => self.urat_uniform().taylor(n),
        }
    }
}

/// Radius of convergence of W along a ray, as an exactly isolated algebraic
/// number (or +∞ for polynomial growth series).
#[derive(Clone, Debug)]
pub enum RadiusResult {
    Infinite { ray: Vec<Q> },
    Finite {
        ray: Vec<Q>,
        /// ρ lies in the half-open interval (lo, hi]
        lo: Q,
        hi: Q,
        /// reduced denominator of W along the ray; ρ is its smallest
        /// positive root, the only root in the interval
        poly: UPoly,
    },
}

impl RadiusResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, RadiusResult::Finite { .. })
    }
}

/// Smallest positive pole of W(s·ray): by nonnegativity of growth
/// coefficients (Pringsheim), this is the radius of convergence along the
/// ray. The interval is refined to width ≤ `width`.
pub fn radius_of_convergence(series: &GrowthSeries, ray: &[Q], width: &Q) -> Result<RadiusResult> {
    if ray.len() != series.nvars() {
        return Err(Error::Dimension(format!(
            "ray has {} entries, system has {} classes",
            ray.len(),
            series.nvars()
        )));
    }
    if let Some(bad) = ray.iter().find(|x| !num_traits::Signed::is_positive(*x)) {
        return Err(Error::InvalidWeight(format!("ray entry {} is not positive", bad)));
    }
    let w = series.reciprocal_urat_ray(ray).reciprocal();
    let den = w.den_expanded();
    if den.degree().unwrap_or(0) == 0 {
        return Ok(RadiusResult::Infinite { ray: ray.to_vec() });
    }
    match smallest_positive_root(&den, width) {
        None => Ok(RadiusResult::Infinite { ray: ray.to_vec() }),
        Some((lo, hi)) => Ok(RadiusResult::Finite {
            ray: ray.to_vec(),
            lo,
            hi,
            poly: den,
        }),
    }
}

/// Membership of a weight vector in the region of convergence R, decided
/// along the ray through q (q = s₀·ray with s₀ = 1). Exact: the boolean
/// comes from a Sturm root count on (0, 1], not from the interval.
#[derive(Clone, Debug)]
pub struct RegionMembership {
    pub inside: bool,
    pub radius: RadiusResult,
}

impl RegionMembership {
    /// Isolating interval for the margin ρ − s₀ (None when ρ = +∞).
    pub fn margin(&self) -> Option<(Q, Q)> {
        match &self.radius {
            RadiusResult::Infinite { .. } => None,
            RadiusResult::Finite { lo, hi, .. } => {
                Some((lo.clone() - Q::one(), hi.clone() - Q::one()))
            }
        }
    }
}

pub fn in_region(series: &GrowthSeries, q: &WeightVector, width: &Q) -> Result<RegionMembership> {
    let radius = radius_of_convergence(series, &q.per_class, width)?;
    let inside = match &radius {
        RadiusResult::Infinite { .. } => true,
        RadiusResult::Finite { poly, .. } => {
            // q ∈ R ⟺ ρ(ray) > 1 ⟺ the denominator has no root in (0, 1]
            SturmChain::new(poly).count_in(&Q::zero(), &Q::one()) == 0
        }
    };
    Ok(RegionMembership { inside, radius })
}

/// Region membership for the standard subgroup W_U with the restriction of
/// q; used by star-vanishing certificates.
pub fn in_region_subsystem(
    eng: &WordEngine,
    umask: u64,
    q: &WeightVector,
    width: &Q,
) -> Result<RegionMembership> {
    let (sub, gens) = subsystem(&eng.sys, umask)?;
    let per_gen: Vec<Q> = gens.iter().map(|&g| q.of_gen(&eng.sys, g)).collect();
    let sub_q = WeightVector::per_generator(&sub, per_gen)?;
    let sub_eng = WordEngine::new(sub);
    let series = growth_rational(&sub_eng)?;
    in_region(&series, &sub_q, width)
}

/// The Coxeter system induced on a generator subset, together with the list
/// of parent generators in the new order. Generator names are preserved.
pub fn subsystem(sys: &CoxeterSystem, mask: u64) -> Result<(CoxeterSystem, Vec<crate::coxeter::Gen>)> {
    use crate::coxeter::{mask_iter, CoxeterMatrix, Gen};
    let gens: Vec<Gen> = mask_iter(mask).filter(|&g| (g as usize) < sys.n()).collect();
    if gens.is_empty() {
        return Err(Error::InvalidMatrix("empty generator subset".into()));
    }
    let names = gens.iter().map(|&g| sys.mat.names[g as usize].clone()).collect();
    let mut mat = CoxeterMatrix::new(names)?;
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate().skip(i + 1) {
            mat.set(i as Gen, j as Gen, sys.mat.label(a, b))?;
        }
    }
    Ok((CoxeterSystem::new(mat)?, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterMatrix, Gen, Label};
    use crate::q;
    use num_bigint::BigInt;

    fn kgon(k: usize) -> WordEngine {
        let names: Vec<String> = (0..k).map(|i| format!("s{}", i)).collect();
        let mut mat = CoxeterMatrix::new(names).unwrap();
        for i in 0..k {
            mat.set(i as Gen, ((i + 1) % k) as Gen, Label::Fin(2)).unwrap();
        }
        WordEngine::new(CoxeterSystem::new(mat).unwrap())
    }

    fn uniform_kn(n: usize, m: u32) -> WordEngine {
        let names: Vec<String> = (0..n).map(|i| format!("s{}", i)).collect();
        let mat = CoxeterMatrix::uniform(names, m).unwrap();
        WordEngine::new(CoxeterSystem::new(mat).unwrap())
    }

    fn inf_dihedral() -> WordEngine {
        let mut mat = CoxeterMatrix::new(vec!["s".into(), "t".into()]).unwrap();
        mat.set(0, 1, Label::Inf).unwrap();
        WordEngine::new(CoxeterSystem::new(mat).unwrap())
    }

    fn path(labels: &[u32]) -> WordEngine {
        let n = labels.len() + 1;
        let names: Vec<String> = (0..n).map(|i| format!("g{}", i)).collect();
        let mut mat = CoxeterMatrix::new(names).unwrap();
        for (i, &m) in labels.iter().enumerate() {
            mat.set(i as Gen, i as Gen + 1, Label::Fin(m)).unwrap();
        }
        for i in 0..n {
            for j in (i + 2)..n {
                mat.set(i as Gen, j as Gen, Label::Fin(2)).unwrap();
            }
        }
        WordEngine::new(CoxeterSystem::new(mat).unwrap())
    }

    #[test]
    fn growth_poly_examples() {
        // dihedral m=3, one class: 1 + 2t + 2t^2 + t^3
        let eng = path(&[3]);
        let p = growth_poly_finite(&eng, 0b11).unwrap();
        assert_eq!(p.specialize_uniform(), UPoly::from_i64(&[1, 2, 2, 1]));
        assert_eq!(p.nvars, 1);
        // commuting pair: (1+a)(1+b)
        let eng = path(&[2]);
        let p = growth_poly_finite(&eng, 0b11).unwrap();
        let a = PolyQ::one(2).add(&PolyQ::var(2, 0));
        let b = PolyQ::one(2).add(&PolyQ::var(2, 1));
        assert_eq!(p, a.mul(&b));
        // empty set
        let p = growth_poly_finite(&eng, 0).unwrap();
        assert!(p.is_one());
        // evaluation at all-ones = |W_T|, across a whole poset
        let eng = kgon(5);
        for &t in &eng.sys.spherical.clone() {
            let p = growth_poly_finite(&eng, t).unwrap();
            let ones = vec![Q::one(); eng.sys.n_classes];
            assert_eq!(p.eval(&ones), qi(eng.sys.order_of(t).unwrap() as i64));
        }
    }

    #[test]
    fn pentagon_reciprocal_matches_closed_form() {
        let eng = kgon(5);
        let g = growth_rational(&eng).unwrap();
        let u = g.reciprocal_urat_uniform();
        let expect = URat::new(
            UPoly::from_i64(&[1, -3, 1]),
            vec![(UPoly::from_i64(&[1, 1]), 2)],
        );
        assert!(u.eq_urat(&expect));
        assert_eq!(u.render("t"), "(1 - 3*t + t^2) / (1 + t)^2");
    }

    #[test]
    fn taylor_matches_census_multivariate() {
        for eng in [kgon(5), uniform_kn(4, 3), inf_dihedral()] {
            let deg = 5;
            let g = growth_rational(&eng).unwrap();
            let taylor = g.taylor(deg);
            // census polynomial straight from the ball
            let mut census = PolyQ::zero(eng.sys.n_classes);
            for w in eng.ball(deg, 100_000).unwrap() {
                census.add_term(eng.sys.word_monomial(&w), Q::one());
            }
            assert_eq!(taylor, census, "rank {}", eng.sys.n());
        }
    }

    #[test]
    fn k4_label3_census() {
        let eng = uniform_kn(4, 3);
        let g = growth_rational(&eng).unwrap();
        let coeffs = g.census_coefficients(7);
        let expect = [1i64, 4, 12, 30, 72, 168, 390];
        for (c, e) in coeffs.iter().zip(expect) {
            assert_eq!(*c, qi(e));
        }
        // one conjugacy class: everything is univariate
        assert_eq!(eng.sys.n_classes, 1);
    }

    #[test]
    fn infinite_dihedral_functions() {
        let eng = inf_dihedral();
        let g = growth_rational(&eng).unwrap();
        // 1/W = (1 - t_s t_t) / (1+t_s)(1+t_t)
        let f = alternating_sum_ratfun(&eng).unwrap();
        let mut num = PolyQ::one(2);
        num.add_term(vec![1, 1], qi(-1));
        let expect = RatFun {
            nvars: 2,
            num: vec![(num, 1)],
            den: vec![
                (PolyQ::one(2).add(&PolyQ::var(2, 0)), 1),
                (PolyQ::one(2).add(&PolyQ::var(2, 1)), 1),
            ],
        };
        assert!(f.eq_ratfun(&expect));
        // uniform: (1 - t)/(1 + t), so W = (1+t)/(1-t)
        let u = g.reciprocal_urat_uniform();
        assert!(u.eq_urat(&URat::new(
            UPoly::from_i64(&[1, -1]),
            vec![(UPoly::from_i64(&[1, 1]), 1)]
        )));
        let w = g.urat_uniform();
        let c = w.taylor(6);
        assert_eq!(c[0], Q::one());
        for x in &c[1..] {
            assert_eq!(*x, qi(2));
        }
    }

    #[test]
    fn finite_w_alternating_sum_identity() {
        // Σ_{T⊆S spherical} (−1)^{|T|} t_{w0(T)}/W_T(t) = 1/W(t) for finite W,
        // as an exact multivariate rational-function identity
        for eng in [path(&[3, 3]), path(&[4, 3]), path(&[2, 2]), path(&[5])] {
            let full = eng.sys.full_mask();
            assert!(eng.sys.is_spherical(full));
            let lhs = alternating_sum_ratfun(&eng).unwrap();
            let w = growth_poly_finite(&eng, full).unwrap();
            let rhs = RatFun {
                nvars: eng.sys.n_classes,
                num: vec![],
                den: vec![(w, 1)],
            };
            assert!(lhs.eq_ratfun(&rhs), "rank {}", eng.sys.n());
        }
    }

    #[test]
    fn census_coefficients_match_automaton() {
        let eng = kgon(6);
        let g = growth_rational(&eng).unwrap();
        let coeffs = g.census_coefficients(13);
        let counts = eng.census(12, 10_000_000).unwrap();
        for (i, c) in counts.iter().enumerate() {
            assert_eq!(coeffs[i], Q::from_integer(BigInt::from(c.clone())));
        }
    }

    #[test]
    fn radius_pentagon_and_kgons() {
        // ρ(k-gon) is the smallest positive root of t² − (k−2)t + 1
        for k in [4usize, 5, 6, 7, 8] {
            let eng = kgon(k);
            let g = growth_rational(&eng).unwrap();
            let ray = vec![Q::one(); eng.sys.n_classes];
            let width = default_root_width();
            match radius_of_convergence(&g, &ray, &width).unwrap() {
                RadiusResult::Finite { lo, hi, poly, .. } => {
                    assert!(hi.clone() - lo.clone() <= width);
                    let closed = UPoly::from_i64(&[1, -(k as i64 - 2), 1]);
                    assert!(
                        crate::roots::smallest_positive_roots_agree(
                            &poly,
                            &closed,
                            &q(1, 1_000_000_000_000)
                        ),
                        "k = {}",
                        k
                    );
                }
                RadiusResult::Infinite { .. } => panic!("k-gon growth has a finite radius"),
            }
        }
    }

    #[test]
    fn radius_finite_group_infinite() {
        let eng = path(&[3, 3]);
        let g = growth_rational(&eng).unwrap();
        let r = radius_of_convergence(&g, &[Q::one()], &default_root_width()).unwrap();
        assert!(!r.is_finite());
    }

    #[test]
    fn region_membership_pentagon() {
        let eng = kgon(5);
        let g = growth_rational(&eng).unwrap();
        let width = default_root_width();
        let inside = in_region(&g, &WeightVector::uniform(&eng.sys, q(1, 4)).unwrap(), &width).unwrap();
        assert!(inside.inside);
        let outside = in_region(&g, &WeightVector::uniform(&eng.sys, Q::one()).unwrap(), &width).unwrap();
        assert!(!outside.inside);
        // margins are isolating intervals for ρ − 1
        let (mlo, mhi) = outside.margin().unwrap();
        assert!(mhi < Q::zero() && mlo < mhi);
        // ρ/4 ray: ρ along the ray q/1 with q = 1/4 is 4ρ > 1
        let m = inside.margin().unwrap();
        assert!(m.0 > Q::zero());
    }

    #[test]
    fn region_membership_subsystem() {
        // the star of a pentagon vertex generates (ℤ2)×D∞-like… concretely
        // s0 with neighbors s1, s4: labels s0s1 = s0s4 = 2, s1s4 = ∞
        let eng = kgon(5);
        let st = 0b10011u64; // {s0, s1, s4}
        let r = in_region_subsystem(&eng, st, &WeightVector::uniform(&eng.sys, q(1, 4)).unwrap(), &default_root_width()).unwrap();
        assert!(r.inside);
        let r1 = in_region_subsystem(&eng, st, &WeightVector::uniform(&eng.sys, Q::one()).unwrap(), &default_root_width()).unwrap();
        assert!(!r1.inside); // ρ of (1+t)(1+t)/(1−t)… the D∞ factor caps at 1
    }

    #[test]
    fn weighted_euler_pentagon_value() {
        let eng = kgon(5);
        let g = growth_rational(&eng).unwrap();
        let point = vec![Q::one(); 5];
        assert_eq!(g.reciprocal_eval(&point), q(-1, 4));
        let point = vec![q(1, 2); 5];
        // (1 − 3/2 + 1/4) / (3/2)² = (−1/4)/(9/4) = −1/9
        assert_eq!(g.reciprocal_eval(&point), q(-1, 9));
    }
}
