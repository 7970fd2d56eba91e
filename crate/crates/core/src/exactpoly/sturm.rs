//! Certified real-root counting and isolation with Sturm chains.
//!
//! Counts are exact: polynomials are reduced to their squarefree part and all sign
//! evaluations happen over the integers. An endpoint that is itself a root is divided
//! out exactly before counting, so `count_roots(p, lo, hi)` always reports the distinct
//! roots in the open interval `(lo, hi)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{int_pseudo_rem, Poly};
use super::rational::{serde_rational, Rational};
use crate::error::{Error, Result};

/// Signed remainder sequence `p, p', -rem(p, p'), ...`.
///
/// Members after the second are stored up to a positive constant, which leaves every
/// sign variation count unchanged.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Poly>,
    ints: Vec<Vec<BigInt>>,
}

impl SturmChain {
    /// Builds the chain of `p`. Counting is only meaningful when `p` is squarefree.
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![p.clone()];
        let mut ints = vec![p.to_primitive_ints()];
        let dp = p.derivative();
        if !dp.is_zero() {
            ints.push(dp.to_primitive_ints());
            chain.push(dp);
            loop {
                let n = ints.len();
                if ints[n - 1].len() <= 1 {
                    break;
                }
                let rem = int_pseudo_rem(ints[n - 2].clone(), &ints[n - 1]);
                if rem.is_empty() {
                    break;
                }
                let next: Vec<BigInt> = rem.into_iter().map(|c| -c).collect();
                chain.push(Poly::from_bigints(next.clone()));
                ints.push(next);
            }
        }
        Ok(SturmChain { chain, ints })
    }

    pub fn chain(&self) -> &[Poly] {
        &self.chain
    }

    /// Number of sign changes of the chain evaluated at `a`, zeros skipped.
    pub fn variations(&self, a: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.ints {
            let s = int_sign_at(p, a);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Sign of an integer polynomial at a rational point, evaluated without fractions.
pub(crate) fn int_sign_at(p: &[BigInt], a: &Rational) -> i32 {
    if p.is_empty() {
        return 0;
    }
    let num = a.numer();
    let den = a.denom();
    // p(n/d) * d^deg = sum c_i n^i d^(deg-i), by homogeneous Horner.
    let mut acc = p[p.len() - 1].clone();
    let mut dpow = BigInt::one();
    for c in p.iter().rev().skip(1) {
        dpow *= den;
        acc = acc * num + c * &dpow;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// Half-open interval `(lo, hi]` holding exactly one root of the polynomial it isolates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x <= &self.hi
    }
}

/// Squarefree part of `p` with any roots at `lo` or `hi` divided out.
fn prepare(p: &Poly, lo: &Rational, hi: &Rational) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "empty interval ({lo}, {hi})"
        )));
    }
    let mut sp = p.squarefree_part();
    for end in [lo, hi] {
        if sp.degree().unwrap_or(0) > 0 && sp.eval(end).is_zero() {
            let lin = Poly::new(vec![-end.clone(), Rational::one()]);
            sp = sp.div_rem(&lin).0;
        }
    }
    Ok(sp)
}

/// Exact number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn count_roots(p: &Poly, lo: &Rational, hi: &Rational) -> Result<usize> {
    let sp = prepare(p, lo, hi)?;
    if sp.degree() == Some(0) {
        return Ok(0);
    }
    Ok(SturmChain::new(&sp)?.count_half_open(lo, hi))
}

/// Disjoint isolating intervals, in increasing order, one per distinct root of `p`
/// in the open interval `(lo, hi)`.
pub fn isolate_roots(p: &Poly, lo: &Rational, hi: &Rational) -> Result<Vec<IsolatingInterval>> {
    let sp = prepare(p, lo, hi)?;
    if sp.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sp)?;
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_half_open(lo, hi))];
    let two = Rational::from_integer(BigInt::from(2));
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(IsolatingInterval { lo: a, hi: b }),
            _ => {
                let mid = (&a + &b) / &two;
                let left = chain.count_half_open(&a, &mid);
                // Right half first so the left half pops first.
                stack.push((mid.clone(), b, n - left));
                stack.push((a, mid, left));
            }
        }
    }
    Ok(out)
}

/// Bisects `iv` until its width is at most `width`. `iv` must isolate a root of `p`.
pub fn refine(p: &Poly, iv: &IsolatingInterval, width: &Rational) -> Result<IsolatingInterval> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut sf = p.squarefree_part();
    let mut sp = sf.to_primitive_ints();
    let two = Rational::from_integer(BigInt::from(2));
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let pinned = |root: Rational, lo: &Rational| IsolatingInterval {
        lo: (&root - width).max(lo.clone()),
        hi: root,
    };
    let mut s_hi = int_sign_at(&sp, &hi);
    if s_hi == 0 {
        // An outer endpoint root excluded by isolate_roots can sit at hi while the
        // isolated root is interior.
        if count_roots(p, &lo, &hi)? == 0 {
            return Ok(pinned(hi, &lo));
        }
        let lin = Poly::new(vec![-hi.clone(), Rational::one()]);
        sf = sf.div_rem(&lin).0;
        sp = sf.to_primitive_ints();
        s_hi = int_sign_at(&sp, &hi);
    }
    // The root is simple and lies in the open interval (lo, hi); track the sign at hi only.
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match int_sign_at(&sp, &mid) {
            0 => return Ok(pinned(mid, &lo)),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    Ok(IsolatingInterval { lo, hi })
}
