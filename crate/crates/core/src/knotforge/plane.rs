//! The plane projection `(T_3, y)` and its double points.

use std::f64::consts::FRAC_PI_3;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::deform::Deformation;
use super::degrees;
use crate::chebyshev::{lift_from_v, ChebT, ChebV};
use crate::error::{Error, Result};
use crate::exactpoly::{
    format_rational, int, isolate_roots, pow2_inv, refine, to_f64, IsolatingInterval, Poly,
    Rational,
};

/// `x = T_3`.
pub fn x_poly() -> Poly {
    Poly::from_ints(&[0, -3, 0, 1])
}

pub fn x_cheb() -> ChebT {
    ChebT::from_poly(&x_poly())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    pub x: Poly,
    pub y: ChebT,
    /// Divided-difference image of `y`, equal to the deformed `A` as a polynomial.
    pub r: ChebV,
    /// `a_0..a_{n-1}`.
    pub a: Vec<Rational>,
}

/// `y = lift(to_V(A))`, so that `(y(t) - y(s))/(t - s) = A(s + t)` whenever `T_3(s) = T_3(t)`.
pub fn lift_plane(deformation: &Deformation) -> Result<PlaneCurve> {
    let n_crossings = 2 * deformation.a.len() + 1;
    let r = ChebV::from_poly(&deformation.poly);
    let y = lift_from_v(&r)?;
    let (_, want_y, _) = degrees(n_crossings);
    if y.degree() != Some(want_y) {
        return Err(Error::InternalInconsistency(format!(
            "deg y = {:?}, expected {want_y} for N = {n_crossings}",
            y.degree()
        )));
    }
    Ok(PlaneCurve {
        x: x_poly(),
        y,
        r,
        a: deformation.a.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    /// Isolating interval of the abscissa `u_i = s_i + t_i`, width at most `2^-40`.
    pub u: IsolatingInterval,
    /// The root itself when known exactly, else a far finer approximation.
    #[serde(with = "crate::exactpoly::rational::serde_rational")]
    pub u_value: Rational,
    pub alpha: f64,
    pub s: f64,
    pub t: f64,
    /// `sign(z(t_i) - z(s_i))`; zero until the height function is checked.
    pub sign: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub crossings: Vec<Crossing>,
    pub count_certified: bool,
    pub ordering_ok: bool,
    pub signs_alternate: bool,
    /// Smallest gap in the sorted sequence `s_1, ..., s_N, t_1, ..., t_N`.
    pub min_ordering_gap: f64,
    pub max_coincidence_error: f64,
    pub min_sign_margin: f64,
}

pub const ORDERING_MARGIN: f64 = 1e-8;
pub const REFINE_BITS: u32 = 40;
/// Precision of `u_value` when the root is not known exactly.
pub const VALUE_BITS: u32 = 320;

/// `s = 2cos(α + π/3)`, `t = 2cos(α - π/3)` with `u = 2cos α`.
pub fn crossing_parameters(u: f64) -> (f64, f64, f64) {
    let alpha = (u / 2.0).clamp(-1.0, 1.0).acos();
    (
        alpha,
        2.0 * (alpha + FRAC_PI_3).cos(),
        2.0 * (alpha - FRAC_PI_3).cos(),
    )
}

/// Rational approximations within `2^-bits` of the pair `s < t` with `s + t = u` and
/// `T_3(s) = T_3(t)`, i.e. the roots of `w² - u w + u² - 3`. Requires `|u| < 2`.
pub fn pair_at(u: &Rational, bits: u32) -> (Rational, Rational) {
    let disc = int(12) - int(3) * u * u;
    let (p, q) = (disc.numer(), disc.denom());
    let scale = BigInt::one() << (2 * bits);
    let root = (p * q * scale).sqrt();
    let sq = Rational::new(root, q * (BigInt::one() << bits));
    let two = int(2);
    ((u - &sq) / &two, (u + &sq) / &two)
}

/// Double points of `(T_3, y)` from the divided-difference image `r` of `y`.
///
/// Every root of `r` in `(-2, 2)` is the abscissa of exactly one double point, so the
/// certified root count is the crossing count.
pub fn crossings(r: &Poly, n_crossings: usize) -> Result<CrossingReport> {
    crossings_at(r, n_crossings, None)
}

/// As [`crossings`]; `exact_roots`, when given, are the roots in increasing order, and
/// each must vanish exactly and lie in its isolating interval.
pub fn crossings_at(
    r: &Poly,
    n_crossings: usize,
    exact_roots: Option<&[Rational]>,
) -> Result<CrossingReport> {
    let ivs = isolate_roots(r, &int(-2), &int(2))?;
    if ivs.len() != n_crossings {
        return Err(Error::CrossingCount {
            expected: n_crossings,
            found: ivs.len(),
        });
    }
    if let Some(roots) = exact_roots {
        if roots.len() != n_crossings {
            return Err(Error::InvalidArgument(format!(
                "{} exact roots given for {n_crossings} crossings",
                roots.len()
            )));
        }
    }
    let width = pow2_inv(REFINE_BITS);
    let fine_width = pow2_inv(VALUE_BITS);
    let mut out = Vec::with_capacity(ivs.len());
    for (i, iv) in ivs.iter().enumerate() {
        let fine = refine(r, iv, &width)?;
        let u_value = match exact_roots {
            Some(roots) => {
                let u = &roots[i];
                if !fine.contains(u) || !r.eval(u).is_zero() {
                    return Err(Error::InternalInconsistency(format!(
                        "planted root {} is not the root isolated in ({}, {}]",
                        format_rational(u),
                        format_rational(&fine.lo),
                        format_rational(&fine.hi)
                    )));
                }
                u.clone()
            }
            None if r.eval(&fine.hi).is_zero() => fine.hi.clone(),
            None => {
                let finer = refine(r, &fine, &fine_width)?;
                if r.eval(&finer.hi).is_zero() {
                    finer.hi.clone()
                } else {
                    finer.midpoint()
                }
            }
        };
        let (sq, tq) = pair_at(&u_value, 64);
        let alpha = (to_f64(&u_value) / 2.0).clamp(-1.0, 1.0).acos();
        out.push(Crossing {
            u: fine,
            u_value,
            alpha,
            s: to_f64(&sq),
            t: to_f64(&tq),
            sign: 0,
        });
    }
    let seq: Vec<f64> = out
        .iter()
        .map(|c| c.s)
        .chain(out.iter().map(|c| c.t))
        .collect();
    let min_gap = seq
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if !(min_gap > ORDERING_MARGIN) {
        return Err(Error::OrderingViolation(format!(
            "s_1 < ... < s_N < t_1 < ... < t_N fails, smallest gap {min_gap:e}"
        )));
    }
    Ok(CrossingReport {
        crossings: out,
        count_certified: true,
        ordering_ok: true,
        signs_alternate: false,
        min_ordering_gap: min_gap,
        max_coincidence_error: f64::NAN,
        min_sign_margin: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use num_traits::Signed;

    fn trefoil_a() -> Deformation {
        Deformation {
            a: vec![rat(-1, 64)],
            poly: Poly::new(vec![int(0), rat(-1, 64), int(0), int(1)]),
        }
    }

    #[test]
    fn lift_trefoil() {
        let p = lift_plane(&trefoil_a()).unwrap();
        assert_eq!(p.r, ChebV::new(vec![int(0), rat(127, 64), int(0), int(1)]));
        assert_eq!(
            p.y,
            ChebT::new(vec![int(0), int(0), rat(127, 64), int(0), int(-1)])
        );
        assert_eq!(p.y.degree(), Some(4));
    }

    #[test]
    fn undeformed_curves() {
        let c1 = Deformation {
            a: vec![int(0)],
            poly: Poly::monomial(int(1), 3),
        };
        let p = lift_plane(&c1).unwrap();
        assert_eq!(
            p.y,
            ChebT::new(vec![int(0), int(0), int(2), int(0), int(-1)])
        );

        let c0 = Deformation {
            a: vec![],
            poly: Poly::x(),
        };
        let p = lift_plane(&c0).unwrap();
        assert_eq!(p.y, ChebT::new(vec![int(0), int(0), int(1)]));
    }

    #[test]
    fn trefoil_crossings() {
        let rep = crossings(&trefoil_a().poly, 3).unwrap();
        let mid = &rep.crossings[1];
        assert!((mid.alpha - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((mid.s + 3f64.sqrt()).abs() < 1e-12);
        assert!((mid.t - 3f64.sqrt()).abs() < 1e-12);
        let x = x_poly();
        assert!((x.eval_f64(mid.s) - x.eval_f64(mid.t)).abs() < 1e-12);
        assert!(rep.ordering_ok);
        assert_eq!(mid.u_value, int(0));
        // The trigonometric parameters and the quadratic route agree.
        let (alpha, s, t) = crossing_parameters(to_f64(&rep.crossings[2].u_value));
        assert!((alpha - rep.crossings[2].alpha).abs() < 1e-15);
        assert!((s - rep.crossings[2].s).abs() < 1e-14 && (t - rep.crossings[2].t).abs() < 1e-14);
    }

    #[test]
    fn pair_precision() {
        let (s, t) = pair_at(&rat(1, 8), 200);
        let x = x_poly();
        let gap = x.eval(&s) - x.eval(&t);
        assert!(gap.abs() < pow2_inv(190));
        assert_eq!(&s + &t, rat(1, 8));
    }

    #[test]
    fn wrong_count() {
        let r = Poly::from_ints(&[0, -6, 0, 1]);
        assert_eq!(
            crossings(&r, 3).unwrap_err(),
            Error::CrossingCount {
                expected: 3,
                found: 1
            }
        );
    }
}
