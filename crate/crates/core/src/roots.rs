//! Exact real-root isolation for univariate rational polynomials.
//!
//! Sturm chains on the squarefree part give exact root counts on half-open
//! intervals; bisection then produces isolating intervals of any requested
//! width. Everything runs in rational arithmetic, so the resulting intervals
//! are certificates, not floating-point estimates.

use crate::poly::UPoly;
use crate::{qi, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn sign_of(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of the squarefree part of a polynomial.
pub struct SturmChain {
    chain: Vec<UPoly>,
}

impl SturmChain {
    pub fn new(p: &UPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let p = p.squarefree_part();
        let mut chain = vec![p.clone()];
        if p.degree().unwrap_or(0) >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Q) -> usize {
        let mut prev = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = sign_of(&p.eval(x));
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &Q, hi: &Q) -> usize {
        assert!(lo <= hi);
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// `1 + max |a_i / a_n|`; every complex root has modulus below this.
pub fn cauchy_bound(p: &UPoly) -> Q {
    let lead = p
        .coeffs
        .last()
        .expect("root bound of the zero polynomial")
        .clone();
    let mut m = Q::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let r = (c.clone() / lead.clone()).abs();
        if r > m {
            m = r;
        }
    }
    Q::one() + m
}

/// Isolating interval `(lo, hi]` for the smallest positive real root of `p`:
/// the interval contains exactly one root of `p` (counted without
/// multiplicity), no positive root lies at or below `lo`, and
/// `hi - lo <= width`. Returns `None` when `p` has no positive root.
pub fn smallest_positive_root(p: &UPoly, width: &Q) -> Option<(Q, Q)> {
    assert!(width.is_positive());
    let chain = SturmChain::new(p);
    let mut lo = Q::zero();
    let mut hi = cauchy_bound(p);
    if chain.count_in(&lo, &hi) == 0 {
        return None;
    }
    loop {
        let n = chain.count_in(&lo, &hi);
        debug_assert!(n >= 1);
        if n == 1 && hi.clone() - lo.clone() <= *width {
            return Some((lo, hi));
        }
        let mid = (lo.clone() + hi.clone()) / qi(2);
        if chain.count_in(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Certify that the smallest positive roots of `a` and `b` differ by at most
/// `tol`. Exact: isolates the root of `a` in a window of width `<= tol`, then
/// uses a Sturm count to place the smallest positive root of `b` in the same
/// window. When neither polynomial has a positive root the answer is `true`;
/// when exactly one does, `false`.
pub fn smallest_positive_roots_agree(a: &UPoly, b: &UPoly, tol: &Q) -> bool {
    let (lo, hi) = match smallest_positive_root(a, tol) {
        Some(iv) => iv,
        None => return smallest_positive_root(b, tol).is_none(),
    };
    let cb = SturmChain::new(b);
    cb.count_in(&Q::zero(), &lo) == 0 && cb.count_in(&lo, &hi) >= 1
}

/// Decimal rendering of a rational, truncated toward zero to `digits`
/// fractional digits. Deterministic (integer arithmetic only).
pub fn decimal_approx(x: &Q, digits: u32) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled: BigInt = (ax.numer() * &scale) / ax.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!(
            "{}{}.{:0>width$}",
            sign,
            int_part,
            frac_part.to_string(),
            width = digits as usize
        )
    }
}
