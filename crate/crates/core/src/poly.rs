//! Exact polynomial arithmetic: multivariate and univariate polynomials over
//! the rationals, plus rational functions kept in factored form.
//!
//! Multivariate polynomials use one variable per conjugacy class of
//! generators. Rational functions keep numerator and denominator as lists of
//! factors so that least common denominators stay small when assembling
//! alternating sums over a spherical poset; full gcd reduction happens only at
//! the univariate level, where the Euclidean algorithm is available.

use crate::{qi, Q};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, one entry per variable. Compared lexicographically, which
/// together with the `BTreeMap` storage makes term order deterministic.
pub type Mono = Vec<u16>;

/// Multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQ {
    pub nvars: usize,
    terms: BTreeMap<Mono, Q>,
}

impl PolyQ {
    pub fn zero(nvars: usize) -> Self {
        PolyQ {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = vec![0u16; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(m, Q::one());
        p
    }

    /// Monomial `prod vars[i]^exps[i]` with coefficient `c`.
    pub fn monomial(nvars: usize, exps: Mono, c: Q) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.nvars])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PolyQ) -> PolyQ {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyQ {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &PolyQ) -> PolyQ {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Q) -> PolyQ {
        if k.is_zero() {
            return PolyQ::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k.clone();
        }
        out
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        assert_eq!(self.nvars, other.nvars);
        let mut out = PolyQ::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    v *= point[i].clone();
                }
            }
            total += v;
        }
        total
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// The unique term of maximal total degree, if it is unique.
    pub fn top_term(&self) -> Option<(Mono, Q)> {
        let d = self.total_degree();
        let tops: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.iter().map(|&e| e as usize).sum::<usize>() == d)
            .collect();
        if tops.len() == 1 {
            Some((tops[0].0.clone(), tops[0].1.clone()))
        } else {
            None
        }
    }

    /// Substitute every variable by the same univariate variable.
    pub fn specialize_uniform(&self) -> UPoly {
        let mut coeffs: Vec<Q> = vec![];
        for (m, c) in &self.terms {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Q::zero());
            }
            coeffs[d] += c.clone();
        }
        UPoly::new(coeffs)
    }

    /// Substitute variable `i` by `s * ray_i` for a univariate `s`; used to
    /// restrict a polynomial to a rational ray.
    pub fn specialize_ray(&self, ray: &[Q]) -> UPoly {
        assert_eq!(ray.len(), self.nvars);
        let mut coeffs: Vec<Q> = vec![];
        for (m, c) in &self.terms {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            let mut v = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    v *= ray[i].clone();
                }
            }
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Q::zero());
            }
            coeffs[d] += v;
        }
        UPoly::new(coeffs)
    }

    /// Exact division, `self = q * divisor` with no remainder; `None` if the
    /// division does not come out exactly. Uses graded-lex leading terms.
    pub fn try_div(&self, divisor: &PolyQ) -> Option<PolyQ> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        let lead = |p: &PolyQ| -> (Mono, Q) {
            // graded lex: max total degree, then lex-largest exponent vector
            let mut best: Option<(&Mono, &Q)> = None;
            for (m, c) in &p.terms {
                let better = match best {
                    None => true,
                    Some((bm, _)) => {
                        let dm: usize = m.iter().map(|&e| e as usize).sum();
                        let db: usize = bm.iter().map(|&e| e as usize).sum();
                        dm > db || (dm == db && m > bm)
                    }
                };
                if better {
                    best = Some((m, c));
                }
            }
            let (m, c) = best.unwrap();
            (m.clone(), c.clone())
        };
        let (dm, dc) = lead(divisor);
        let mut rem = self.clone();
        let mut quot = PolyQ::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = lead(&rem);
            // divide monomials
            let mut qm = vec![0u16; self.nvars];
            for i in 0..self.nvars {
                if rm[i] < dm[i] {
                    return None;
                }
                qm[i] = rm[i] - dm[i];
            }
            let qc = rc / dc.clone();
            let term = PolyQ::monomial(self.nvars, qm, qc);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Multiply, truncating to total degree <= `deg` (power series work).
    pub fn mul_trunc(&self, other: &PolyQ, deg: usize) -> PolyQ {
        let mut out = PolyQ::zero(self.nvars);
        for (m1, c1) in &self.terms {
            let d1: usize = m1.iter().map(|&e| e as usize).sum();
            if d1 > deg {
                continue;
            }
            for (m2, c2) in &other.terms {
                let d2: usize = m2.iter().map(|&e| e as usize).sum();
                if d1 + d2 > deg {
                    continue;
                }
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Truncated multiplicative inverse: requires constant term 1.
    /// Returns the power series of 1/self up to total degree `deg`.
    pub fn inverse_series(&self, deg: usize) -> PolyQ {
        let c0 = self
            .terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Q::zero);
        assert!(c0.is_one(), "inverse_series requires constant term 1");
        // self = 1 + p; 1/self = sum (-p)^k
        let p = self.sub(&PolyQ::one(self.nvars));
        let mut acc = PolyQ::one(self.nvars);
        let mut power = PolyQ::one(self.nvars);
        for _ in 0..deg {
            power = power.mul_trunc(&p, deg).neg();
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        acc
    }

    /// Render with the given variable names, ascending graded-lex term order.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(usize, &Mono, &Q)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().map(|&e| e as usize).sum::<usize>(), m, c))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(b.1)));
        let mut out = String::new();
        for (idx, (_, m, c)) in terms.iter().enumerate() {
            let mut vars = String::new();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push('*');
                }
                if e == 1 {
                    vars.push_str(&names[i]);
                } else {
                    vars.push_str(&format!("{}^{}", names[i], e));
                }
            }
            let abs = c.abs();
            let coef = if vars.is_empty() {
                format!("{}", abs)
            } else if abs.is_one() {
                vars.clone()
            } else {
                format!("{}*{}", abs, vars)
            };
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
                out.push_str(&coef);
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&coef);
            }
        }
        out
    }
}

/// Univariate polynomial, dense representation, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub coeffs: Vec<Q>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly {
            coeffs: vec![Q::one()],
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| qi(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c.clone();
        }
        UPoly::new(out)
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, k: &Q) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut out = UPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Euclidean division: `self = q*d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(d.coeffs.len()) + 1];
        let dlead = d.coeffs.last().unwrap().clone();
        while !rem.is_zero() && rem.coeffs.len() >= d.coeffs.len() {
            let shift = rem.coeffs.len() - d.coeffs.len();
            let c = rem.coeffs.last().unwrap().clone() / dlead.clone();
            quot[shift] = c.clone();
            let mut sub = vec![Q::zero(); shift];
            sub.extend(d.coeffs.iter().map(|dc| dc.clone() * c.clone()));
            rem = rem.sub(&UPoly::new(sub));
        }
        (UPoly::new(quot), rem)
    }

    pub fn try_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.coeffs.last().unwrap().clone();
        a.scale(&(Q::one() / lead))
    }

    pub fn derivative(&self) -> UPoly {
        if self.coeffs.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * qi(i as i64))
                .collect(),
        )
    }

    /// Squarefree part `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            let lead = self.coeffs.last().unwrap().clone();
            return self.scale(&(Q::one() / lead));
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        let lead = q.coeffs.last().unwrap().clone();
        q.scale(&(Q::one() / lead))
    }

    /// Power series expansion of `self / den` to `n` coefficients.
    /// Requires `den` to have a nonzero constant term.
    pub fn series_div(&self, den: &UPoly, n: usize) -> Vec<Q> {
        let d0 = den.coeff(0);
        assert!(!d0.is_zero(), "series division needs den(0) != 0");
        let mut out: Vec<Q> = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = self.coeff(k);
            for j in 1..=k {
                let dj = den.coeff(j);
                if !dj.is_zero() {
                    v -= dj * out[k - j].clone();
                }
            }
            out.push(v / d0.clone());
        }
        out
    }

    /// Render with variable name `var`, ascending powers (`1 - 3*t + t^2`).
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let body = if i == 0 {
                format!("{}", abs)
            } else {
                let v = if i == 1 {
                    var.to_string()
                } else {
                    format!("{}^{}", var, i)
                };
                if abs.is_one() {
                    v
                } else {
                    format!("{}*{}", abs, v)
                }
            };
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                out.push_str(&body);
                first = false;
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

/// Rational function in factored form: `prod num_i^e / prod den_j^f`.
///
/// No reduction is promised at the multivariate level; use
/// [`RatFun::uniform`] for a reduced univariate specialization, or
/// cross-multiplication for equality tests.
#[derive(Clone, Debug)]
pub struct RatFun {
    pub nvars: usize,
    pub num: Vec<(PolyQ, u32)>,
    pub den: Vec<(PolyQ, u32)>,
}

impl RatFun {
    pub fn one(nvars: usize) -> Self {
        RatFun {
            nvars,
            num: vec![],
            den: vec![],
        }
    }

    pub fn from_poly(p: PolyQ) -> Self {
        let nvars = p.nvars;
        RatFun {
            nvars,
            num: vec![(p, 1)],
            den: vec![],
        }
    }

    pub fn reciprocal(&self) -> RatFun {
        RatFun {
            nvars: self.nvars,
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn expanded_num(&self) -> PolyQ {
        let mut p = PolyQ::one(self.nvars);
        for (f, e) in &self.num {
            for _ in 0..*e {
                p = p.mul(f);
            }
        }
        p
    }

    pub fn expanded_den(&self) -> PolyQ {
        let mut p = PolyQ::one(self.nvars);
        for (f, e) in &self.den {
            for _ in 0..*e {
                p = p.mul(f);
            }
        }
        p
    }

    /// Evaluate at a rational point; `None` on a pole.
    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let mut v = Q::one();
        for (f, e) in &self.num {
            let x = f.eval(point);
            for _ in 0..*e {
                v *= x.clone();
            }
        }
        for (f, e) in &self.den {
            let x = f.eval(point);
            if x.is_zero() {
                return None;
            }
            for _ in 0..*e {
                v /= x.clone();
            }
        }
        Some(v)
    }

    /// Equality as rational functions via cross multiplication.
    pub fn eq_ratfun(&self, other: &RatFun) -> bool {
        let lhs = self.expanded_num().mul(&other.expanded_den());
        let rhs = other.expanded_num().mul(&self.expanded_den());
        lhs == rhs
    }

    /// Uniform specialization (all variables become `t`), reduced.
    pub fn uniform(&self) -> URat {
        let mut num = UPoly::one();
        for (f, e) in &self.num {
            let uf = f.specialize_uniform();
            for _ in 0..*e {
                num = num.mul(&uf);
            }
        }
        let den: Vec<(UPoly, u32)> = self
            .den
            .iter()
            .map(|(f, e)| (f.specialize_uniform(), *e))
            .collect();
        URat::new(num, den).reduced()
    }

    /// Specialize to a rational ray (variable i -> s * ray_i), reduced.
    pub fn along_ray(&self, ray: &[Q]) -> URat {
        let mut num = UPoly::one();
        for (f, e) in &self.num {
            let uf = f.specialize_ray(ray);
            for _ in 0..*e {
                num = num.mul(&uf);
            }
        }
        let den: Vec<(UPoly, u32)> = self
            .den
            .iter()
            .map(|(f, e)| (f.specialize_ray(ray), *e))
            .collect();
        URat::new(num, den).reduced()
    }

    /// Multivariate Taylor expansion to total degree `deg`.
    /// Every denominator factor must have constant term 1.
    pub fn taylor(&self, deg: usize) -> PolyQ {
        let mut acc = self.expanded_num();
        for (f, e) in &self.den {
            let inv = f.inverse_series(deg);
            for _ in 0..*e {
                acc = acc.mul_trunc(&inv, deg);
            }
        }
        acc
    }
}

/// Univariate rational function with a factored denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct URat {
    pub num: UPoly,
    pub den: Vec<(UPoly, u32)>,
}

impl URat {
    pub fn new(num: UPoly, den: Vec<(UPoly, u32)>) -> Self {
        URat { num, den }
    }

    pub fn den_expanded(&self) -> UPoly {
        let mut p = UPoly::one();
        for (f, e) in &self.den {
            p = p.mul(&f.pow(*e));
        }
        p
    }

    /// Cancel denominator factors into the numerator where possible, then
    /// sweep any remaining common gcd.
    pub fn reduced(&self) -> URat {
        let mut num = self.num.clone();
        let mut den: Vec<(UPoly, u32)> = vec![];
        for (f, e) in &self.den {
            let mut e = *e;
            if f.degree() == Some(0) {
                // constant factor: fold into numerator
                let c = f.coeff(0);
                for _ in 0..e {
                    num = num.scale(&(Q::one() / c.clone()));
                }
                continue;
            }
            while e > 0 {
                if let Some(q) = num.try_div(f) {
                    num = q;
                    e -= 1;
                } else {
                    break;
                }
            }
            if e > 0 {
                den.push((f.clone(), e));
            }
        }
        // Final sweep: if a partial common factor survives the factor-wise
        // pass, collapse to a single fully reduced denominator so that zeros
        // of the denominator are genuine poles.
        let out = URat { num, den };
        let dx = out.den_expanded();
        if dx.degree().unwrap_or(0) > 0 {
            let g = out.num.gcd(&dx);
            if g.degree().unwrap_or(0) > 0 {
                let mut num2 = out.num.try_div(&g).unwrap();
                let mut den2 = dx.try_div(&g).unwrap();
                let c = den2.coeff(0);
                if !c.is_zero() {
                    // keep the convention den(0) = 1
                    num2 = num2.scale(&(Q::one() / c.clone()));
                    den2 = den2.scale(&(Q::one() / c));
                }
                return URat {
                    num: num2,
                    den: vec![(den2, 1)],
                };
            }
        }
        out
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        let mut v = self.num.eval(x);
        for (f, e) in &self.den {
            let fx = f.eval(x);
            if fx.is_zero() {
                return None;
            }
            for _ in 0..*e {
                v /= fx.clone();
            }
        }
        Some(v)
    }

    pub fn eq_urat(&self, other: &URat) -> bool {
        let lhs = self.num.mul(&other.den_expanded());
        let rhs = other.num.mul(&self.den_expanded());
        lhs == rhs
    }

    pub fn taylor(&self, n: usize) -> Vec<Q> {
        self.num.series_div(&self.den_expanded(), n)
    }

    pub fn reciprocal(&self) -> URat {
        URat::new(self.den_expanded(), vec![(self.num.clone(), 1)]).reduced()
    }

    /// Render like `(1 - 3*t + t^2) / (1 + t)^2`.
    pub fn render(&self, var: &str) -> String {
        let num = self.num.render(var);
        if self.den.is_empty() {
            return num;
        }
        let mut den = String::new();
        for (i, (f, e)) in self.den.iter().enumerate() {
            if i > 0 {
                den.push('*');
            }
            if *e == 1 {
                den.push_str(&format!("({})", f.render(var)));
            } else {
                den.push_str(&format!("({})^{}", f.render(var), e));
            }
        }
        format!("({}) / {}", num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn upoly_arith_and_series() {
        // (1+t)^2 = 1 + 2t + t^2
        let p = UPoly::from_i64(&[1, 1]);
        let sq = p.mul(&p);
        assert_eq!(sq, UPoly::from_i64(&[1, 2, 1]));
        // 1/(1-t) = 1 + t + t^2 + ...
        let s = UPoly::one().series_div(&UPoly::from_i64(&[1, -1]), 5);
        assert!(s.iter().all(|c| c.is_one()));
        // gcd((1+t)^2 (1-t), (1+t)) = 1+t
        let a = sq.mul(&UPoly::from_i64(&[1, -1]));
        let g = a.gcd(&p);
        assert_eq!(g, p);
    }

    #[test]
    fn upoly_divrem_exact() {
        let a = UPoly::from_i64(&[1, -3, 1]).mul(&UPoly::from_i64(&[1, 1]).pow(3));
        let q = a.try_div(&UPoly::from_i64(&[1, 1])).unwrap();
        assert_eq!(
            q,
            UPoly::from_i64(&[1, -3, 1]).mul(&UPoly::from_i64(&[1, 1]).pow(2))
        );
        assert!(UPoly::from_i64(&[1, 1]).try_div(&UPoly::from_i64(&[1, -1])).is_none());
    }

    #[test]
    fn upoly_render_matches_contract() {
        assert_eq!(UPoly::from_i64(&[1, -3, 1]).render("t"), "1 - 3*t + t^2");
        assert_eq!(UPoly::from_i64(&[0, 1]).render("t"), "t");
        assert_eq!(UPoly::zero().render("t"), "0");
        let r = URat::new(
            UPoly::from_i64(&[1, -3, 1]),
            vec![(UPoly::from_i64(&[1, 1]), 2)],
        );
        assert_eq!(r.render("t"), "(1 - 3*t + t^2) / (1 + t)^2");
    }

    #[test]
    fn polyq_mul_and_uniform() {
        // (1 + a)(1 + b) uniform => (1+t)^2
        let a = PolyQ::one(2).add(&PolyQ::var(2, 0));
        let b = PolyQ::one(2).add(&PolyQ::var(2, 1));
        let p = a.mul(&b);
        assert_eq!(p.specialize_uniform(), UPoly::from_i64(&[1, 2, 1]));
        assert_eq!(p.eval(&[q(1, 2), q(1, 3)]), q(2, 1));
    }

    #[test]
    fn polyq_try_div() {
        let a = PolyQ::one(2).add(&PolyQ::var(2, 0));
        let b = PolyQ::one(2).add(&PolyQ::var(2, 1));
        let p = a.mul(&b);
        assert_eq!(p.try_div(&a).unwrap(), b);
        assert!(p.try_div(&a.mul(&a)).is_none());
    }

    #[test]
    fn ratfun_uniform_reduction() {
        // (1 - t_a t_b) / (1+t_a)(1+t_b) uniform: (1-t^2)/(1+t)^2 = (1-t)/(1+t)
        let mut num = PolyQ::one(2);
        num.add_term(vec![1, 1], q(-1, 1));
        let f = RatFun {
            nvars: 2,
            num: vec![(num, 1)],
            den: vec![
                (PolyQ::one(2).add(&PolyQ::var(2, 0)), 1),
                (PolyQ::one(2).add(&PolyQ::var(2, 1)), 1),
            ],
        };
        let u = f.uniform();
        assert!(u.eq_urat(&URat::new(
            UPoly::from_i64(&[1, -1]),
            vec![(UPoly::from_i64(&[1, 1]), 1)]
        )));
        let taylor = u.taylor(5);
        assert_eq!(taylor[0], q(1, 1));
        assert_eq!(taylor[1], q(-2, 1));
        assert_eq!(taylor[2], q(2, 1));
    }

    #[test]
    fn ratfun_inverse_series_multivariate() {
        // 1/(1+a) * (1+a) == 1 up to degree 6
        let f = PolyQ::one(2).add(&PolyQ::var(2, 0));
        let inv = f.inverse_series(6);
        let prod = inv.mul_trunc(&f, 6);
        assert!(prod.is_one());
    }
}
