//! Monic Chebyshev bases and the divided-difference map.
//!
//! With `t = 2 cos θ`, `T_n(t) = 2 cos nθ` and `V_n(t) = sin((n+1)θ) / sin θ`. Both are
//! monic of degree `n`; note `T_0 = 2`. For parameters `s != t` with `T_3(s) = T_3(t)`,
//!
//! ```text
//! (T_k(t) - T_k(s)) / (t - s) = ε_k V_{k-1}(s + t)
//! ```
//!
//! where `ε_k` is the period-6 sign table returned by [`eps`]. Everything about the
//! crossing structure of a curve `(T_3, y)` follows from this identity.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{int, to_f64, Poly, Rational};

pub fn t_poly(n: usize) -> Poly {
    t_polys(n).pop().unwrap()
}

pub fn v_poly(n: usize) -> Poly {
    v_polys(n).pop().unwrap()
}

/// `T_0, ..., T_n_max`.
pub fn t_polys(n_max: usize) -> Vec<Poly> {
    three_term(Poly::from_ints(&[2]), Poly::x(), n_max)
}

/// `V_0, ..., V_n_max`.
pub fn v_polys(n_max: usize) -> Vec<Poly> {
    three_term(Poly::one(), Poly::x(), n_max)
}

fn three_term(p0: Poly, p1: Poly, n_max: usize) -> Vec<Poly> {
    let mut out = vec![p0, p1];
    let t = Poly::x();
    while out.len() <= n_max {
        let n = out.len();
        let next = &(&t * &out[n - 1]) - &out[n - 2];
        out.push(next);
    }
    out.truncate(n_max + 1);
    out
}

/// `ε_k = (2/√3) sin(kπ/3) = V_{k-1}(1)`, for `k >= 1`.
pub fn eps(k: usize) -> i32 {
    match k % 6 {
        1 | 2 => 1,
        4 | 5 => -1,
        _ => 0,
    }
}

/// V-index of `W_k`: `W_2j = V_6j+1`, `W_2j+1 = V_6j+3`.
pub fn w_index(k: usize) -> usize {
    if k % 2 == 0 {
        3 * k + 1
    } else {
        3 * k
    }
}

/// V-index of `W̃_k`: `W̃_2j = V_6j`, `W̃_2j+1 = V_6j+4`.
pub fn wtilde_index(k: usize) -> usize {
    if k % 2 == 0 {
        3 * k
    } else {
        3 * k + 1
    }
}

/// Coordinates of `p` in a basis whose `k`-th member has degree exactly `k`.
fn triangular_coords(p: &Poly, basis: &[Poly]) -> Vec<Rational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    let mut rem = p.clone();
    let mut coords = vec![Rational::zero(); d + 1];
    for k in (0..=d).rev() {
        let c = rem.coeff(k) / basis[k].leading_coeff();
        if !c.is_zero() {
            rem = &rem - &basis[k].scale(&c);
            coords[k] = c;
        }
    }
    debug_assert!(rem.is_zero());
    coords
}

fn combine(coords: &[Rational], basis: &[Poly]) -> Poly {
    coords
        .iter()
        .zip(basis)
        .filter(|(c, _)| !c.is_zero())
        .fold(Poly::zero(), |acc, (c, b)| &acc + &b.scale(c))
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// A polynomial as `Σ a_k T_k`, `coeffs[k] = a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChebT {
    #[serde(with = "crate::exactpoly::rational::serde_rational::vec")]
    coeffs: Vec<Rational>,
}

/// A polynomial as `Σ r_k V_k`, `coeffs[k] = r_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChebV {
    #[serde(with = "crate::exactpoly::rational::serde_rational::vec")]
    coeffs: Vec<Rational>,
}

macro_rules! cheb_common {
    ($ty:ident, $polys:ident) => {
        impl $ty {
            pub fn new(coeffs: Vec<Rational>) -> Self {
                $ty {
                    coeffs: trim(coeffs),
                }
            }

            pub fn coeffs(&self) -> &[Rational] {
                &self.coeffs
            }

            pub fn coeff(&self, k: usize) -> Rational {
                self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
            }

            pub fn degree(&self) -> Option<usize> {
                self.coeffs.len().checked_sub(1)
            }

            pub fn from_poly(p: &Poly) -> Self {
                let d = p.degree().unwrap_or(0);
                $ty::new(triangular_coords(p, &$polys(d)))
            }

            pub fn to_poly(&self) -> Poly {
                let d = self.coeffs.len().saturating_sub(1);
                combine(&self.coeffs, &$polys(d))
            }
        }
    };
}
cheb_common!(ChebT, t_polys);
cheb_common!(ChebV, v_polys);

impl ChebT {
    /// Float evaluation by the three-term recurrence; stable on `[-2, 2]`.
    pub fn eval_f64(&self, t: f64) -> f64 {
        eval_three_term(&self.coeffs, 2.0, t, t)
    }
}

impl ChebV {
    pub fn eval_f64(&self, t: f64) -> f64 {
        eval_three_term(&self.coeffs, 1.0, t, t)
    }
}

fn eval_three_term(coeffs: &[Rational], p0: f64, p1: f64, t: f64) -> f64 {
    let (mut prev, mut cur) = (p0, p1);
    let mut acc = 0.0;
    for (k, c) in coeffs.iter().enumerate() {
        let b = match k {
            0 => p0,
            1 => p1,
            _ => {
                let next = t * cur - prev;
                prev = cur;
                cur = next;
                cur
            }
        };
        acc += to_f64(c) * b;
    }
    acc
}

/// `Σ a_k T_k ↦ Σ ε_k a_k V_{k-1}`; the `T_0` coefficient drops out.
pub fn divided_difference(y: &ChebT) -> ChebV {
    ChebV::new(
        y.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * int(eps(k) as i64))
            .collect(),
    )
}

/// Right inverse of [`divided_difference`] with zero coefficients on every `T_3j`.
pub fn lift_from_v(r: &ChebV) -> Result<ChebT> {
    let mut a = vec![Rational::zero(); r.coeffs.len() + 1];
    for (j, rj) in r.coeffs.iter().enumerate() {
        if rj.is_zero() {
            continue;
        }
        match eps(j + 1) {
            0 => return Err(Error::NotInImage { index: j }),
            e => a[j + 1] = rj * int(e as i64),
        }
    }
    Ok(ChebT::new(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn small_polys() {
        assert_eq!(t_poly(3), Poly::from_ints(&[0, -3, 0, 1]));
        assert_eq!(v_poly(3), Poly::from_ints(&[0, -2, 0, 1]));
        assert_eq!(v_poly(3), &t_poly(1) * &t_poly(2));
        assert_eq!(t_poly(6), t_poly(2).compose(&t_poly(3)));
        assert_eq!(t_poly(0), Poly::from_ints(&[2]));
    }

    #[test]
    fn conversions() {
        let t5 = Poly::monomial(int(1), 5);
        assert_eq!(
            ChebV::from_poly(&t5),
            ChebV::new(vec![int(0), int(5), int(0), int(4), int(0), int(1)])
        );
        assert_eq!(
            ChebT::from_poly(&Poly::x()),
            ChebT::new(vec![int(0), int(1)])
        );
        assert_eq!(ChebV::from_poly(&Poly::one()), ChebV::new(vec![int(1)]));
        assert_eq!(ChebT::from_poly(&Poly::one()), ChebT::new(vec![rat(1, 2)]));
        assert_eq!(ChebT::from_poly(&Poly::zero()).degree(), None);
    }

    #[test]
    fn eps_table() {
        assert_eq!(eps(3), 0);
        assert_eq!(eps(4), -1);
        assert_eq!(eps(1), 1);
        let v = v_polys(40);
        for k in 1..=40 {
            assert_eq!(int(eps(k) as i64), v[k - 1].eval(&int(1)), "k = {k}");
        }
    }

    #[test]
    fn divided_difference_examples() {
        let t1 = ChebT::new(vec![int(0), int(1)]);
        assert_eq!(divided_difference(&t1), ChebV::new(vec![int(1)]));
        let t3 = ChebT::new(vec![int(0), int(0), int(0), int(1)]);
        assert_eq!(divided_difference(&t3).degree(), None);
        let y = ChebT::new(vec![int(0), int(0), rat(127, 64), int(0), int(-1)]);
        let r = ChebV::new(vec![int(0), rat(127, 64), int(0), int(1)]);
        assert_eq!(divided_difference(&y), r);
        assert_eq!(lift_from_v(&r).unwrap(), y);
    }

    #[test]
    fn lift_rejects_v2() {
        assert_eq!(
            lift_from_v(&ChebV::new(vec![int(1)])).unwrap(),
            ChebT::new(vec![int(0), int(1)])
        );
        let bad = ChebV::new(vec![int(0), int(0), int(3)]);
        assert_eq!(lift_from_v(&bad), Err(Error::NotInImage { index: 2 }));
    }

    #[test]
    fn w_indices() {
        assert_eq!(w_index(0), 1);
        assert_eq!(w_index(1), 3);
        assert_eq!(w_index(2), 7);
        assert_eq!(wtilde_index(0), 0);
        assert_eq!(wtilde_index(1), 4);
        for n in 0..20 {
            assert_eq!(w_index(n), 2 * n + 2 * (n / 2) + 1);
            assert_eq!(wtilde_index(n), 2 * n + 2 * ((n + 1) / 2));
        }
    }

    #[test]
    fn float_eval_matches_exact() {
        let y = ChebT::new(vec![int(3), int(-1), rat(1, 2), int(0), int(2)]);
        let p = y.to_poly();
        for &t in &[-2.0, -0.7, 0.0, 1.3, 2.0] {
            assert!((y.eval_f64(t) - p.eval_f64(t)).abs() < 1e-12);
        }
        let v = ChebV::new(vec![int(1), int(0), int(-2), int(5)]);
        assert!((v.eval_f64(0.4) - v.to_poly().eval_f64(0.4)).abs() < 1e-12);
    }
}
