//! The bases `C_0..C_n` of `vect(W_0..W_n)` and `C̃_0..C̃_n` of `vect(W̃_0..W̃_n)`.
//!
//! `C_n` is the unique monic element of `vect(W_0..W_n)` that vanishes to order `2n+1`
//! at the origin. Two independent constructions are provided: one from Padé approximants
//! of `φ`, one by direct triangular reduction of the `W_k`.

use crate::chebyshev::{v_poly, w_index, wtilde_index, ChebV};
use crate::error::{Error, Result};
use crate::exactpoly::{count_roots, int, rat, Poly, Rational};
use crate::linalg;
use crate::pade::pade;
use crate::stieltjes::PhiSeries;
use num_traits::Zero;

/// `(2n+1)`: the order of vanishing of `C_n` at the origin.
fn order(n: usize) -> usize {
    2 * n + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnBasis {
    pub n_max: usize,
    /// `C_0..C_n_max`, monic.
    pub cn: Vec<Poly>,
    /// `cn_w[k][j]` is the coefficient of `W_j` in `C_k`, for `j <= k`.
    pub cn_w: Vec<Vec<Rational>>,
}

/// `u = t²(t²-3)²/4 = (T_6 + 2)/4`.
fn u_of_t() -> Poly {
    Poly::new(vec![
        int(0),
        int(0),
        rat(9, 4),
        int(0),
        rat(-3, 2),
        int(0),
        rat(1, 4),
    ])
}

/// `t · (v Q_l(u) - P_k(u))` with `v = t²`, from the `[k/l]` approximant of `φ`.
fn pade_cn(series: &PhiSeries, k: usize, l: usize) -> Result<Poly> {
    let a = pade(|i| series.coeff(i), k, l)?;
    let u = u_of_t();
    let v = Poly::monomial(int(1), 2);
    let c = &(&v * &a.q.compose(&u)) - &a.p.compose(&u);
    Ok((&c * &Poly::x()).monic())
}

impl CnBasis {
    /// Padé construction: `C_{2k+1}` from `[k/k]`, `C_{2k}` from `[k/k-1]`, `C_0 = t`.
    pub fn build(n_max: usize) -> Result<Self> {
        let series = PhiSeries::new();
        let cn = (0..=n_max)
            .map(|n| match n {
                0 => Ok(Poly::x()),
                n if n % 2 == 1 => pade_cn(&series, n / 2, n / 2),
                n => pade_cn(&series, n / 2, n / 2 - 1),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_polys(cn)
    }

    /// Triangular reduction: cancel the coefficients of `t, t³, ..., t^{2n-1}` in
    /// `W_n + Σ_{j<n} c_j W_j`.
    pub fn build_triangular(n_max: usize) -> Result<Self> {
        let w: Vec<Poly> = (0..=n_max).map(|k| v_poly(w_index(k))).collect();
        let mut cn = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if n == 0 {
                cn.push(w[0].clone());
                continue;
            }
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|i| (0..n).map(|j| w[j].coeff(2 * i + 1)).collect())
                .collect();
            let rhs: Vec<Rational> = (0..n).map(|i| -w[n].coeff(2 * i + 1)).collect();
            let c = linalg::solve(rows, rhs)?;
            let p = c
                .iter()
                .zip(&w)
                .fold(w[n].clone(), |acc, (cj, wj)| &acc + &wj.scale(cj));
            cn.push(p);
        }
        Self::from_polys(cn)
    }

    fn from_polys(cn: Vec<Poly>) -> Result<Self> {
        let mut cn_w = Vec::with_capacity(cn.len());
        for (k, c) in cn.iter().enumerate() {
            check_factor(c, order(k), &format!("C_{k}"))?;
            if !c.is_odd() {
                return Err(Error::InternalInconsistency(format!("C_{k} is not odd")));
            }
            let expected_deg = w_index(k);
            if c.degree() != Some(expected_deg) {
                return Err(Error::InternalInconsistency(format!(
                    "deg C_{k} = {:?}, expected {expected_deg}",
                    c.degree()
                )));
            }
            cn_w.push(coordinates(c, k, w_index, &format!("C_{k}"))?);
        }
        Ok(CnBasis {
            n_max: cn.len() - 1,
            cn,
            cn_w,
        })
    }

    /// `F_k = C_k / t^{2k+1}`.
    pub fn cofactor(&self, k: usize) -> Poly {
        self.cn[k].unshift(order(k))
    }
}

/// Coordinates of `p` on the family `V_{index(0)}, ..., V_{index(k)}`; any V-coefficient
/// outside that family is an error.
fn coordinates(p: &Poly, k: usize, index: fn(usize) -> usize, name: &str) -> Result<Vec<Rational>> {
    let v = ChebV::from_poly(p);
    let family: Vec<usize> = (0..=k).map(index).collect();
    for (j, c) in v.coeffs().iter().enumerate() {
        if !c.is_zero() && !family.contains(&j) {
            let kind = if j % 3 == 2 {
                "index = 2 mod 3"
            } else {
                "outside the W family"
            };
            return Err(Error::InternalInconsistency(format!(
                "{name} has a nonzero V_{j} coefficient ({kind})"
            )));
        }
    }
    Ok(family.into_iter().map(|j| v.coeff(j)).collect())
}

/// `p = t^order · F` with `F(0) != 0`; returns `F`.
fn split_factor(p: &Poly, order: usize, name: &str) -> Result<Poly> {
    if !p.divisible_by_power_of_t(order) {
        return Err(Error::InternalInconsistency(format!(
            "t^{order} does not divide {name}"
        )));
    }
    let f = p.unshift(order);
    if f.coeff(0).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "{name} vanishes to order above {order}"
        )));
    }
    Ok(f)
}

/// `p = t^order · F` with `F(0) != 0` and no root of `F` in `[-2, 2]`.
fn check_factor(p: &Poly, order: usize, name: &str) -> Result<()> {
    let f = split_factor(p, order, name)?;
    check_root_free(&f, name)
}

fn check_root_free(f: &Poly, name: &str) -> Result<()> {
    let (lo, hi) = (int(-2), int(2));
    let inside = count_roots(f, &lo, &hi)?;
    if inside != 0 || f.eval(&lo).is_zero() || f.eval(&hi).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "cofactor of {name} has a root in [-2, 2]"
        )));
    }
    Ok(())
}

/// `C̃_0 = 1`, `C̃_k = -(1/3) T_3 C_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnTildeBasis {
    pub n_max: usize,
    pub cn: Vec<Poly>,
    /// `cn_w[k][j]` is the coefficient of `W̃_j` in `C̃_k`.
    pub cn_w: Vec<Vec<Rational>>,
}

impl CnTildeBasis {
    /// Builds `C̃_0..C̃_{basis.n_max}` from `C_0..C_{basis.n_max - 1}`.
    pub fn from_basis(basis: &CnBasis) -> Result<Self> {
        let t3 = Poly::from_ints(&[0, -3, 0, 1]).scale(&rat(-1, 3));
        let mut cn = vec![Poly::one()];
        cn.extend(basis.cn.iter().take(basis.n_max).map(|c| &t3 * c));
        let mut cn_w = Vec::with_capacity(cn.len());
        let t2_minus_3 = Poly::from_ints(&[-3, 0, 1]);
        for (k, c) in cn.iter().enumerate() {
            let name = format!("C~_{k}");
            // The cofactor carries the factor 1 - t²/3 of T_3 / t, so it vanishes at ±√3;
            // what remains after removing it is root-free on [-2, 2].
            let f = split_factor(c, 2 * k, &name)?;
            let g = if k == 0 {
                f
            } else {
                let (q, r) = f.div_rem(&t2_minus_3);
                if !r.is_zero() {
                    return Err(Error::InternalInconsistency(format!(
                        "t² - 3 does not divide the cofactor of {name}"
                    )));
                }
                q
            };
            check_root_free(&g, &name)?;
            if !c.is_even() {
                return Err(Error::InternalInconsistency(format!("{name} is not even")));
            }
            cn_w.push(coordinates(c, k, wtilde_index, &name)?);
        }
        Ok(CnTildeBasis {
            n_max: cn.len() - 1,
            cn,
            cn_w,
        })
    }

    /// `C̃_0..C̃_n_max`.
    pub fn build(n_max: usize) -> Result<Self> {
        Self::from_basis(&CnBasis::build(n_max)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[Rational]) -> Vec<Rational> {
        v.to_vec()
    }

    #[test]
    fn first_members() {
        let b = CnBasis::build(2).unwrap();
        assert_eq!(b.cn[0], Poly::x());
        assert_eq!(b.cn[1], Poly::monomial(int(1), 3));
        assert_eq!(b.cn[2], Poly::from_ints(&[0, 0, 0, 0, 0, -6, 0, 1]));
        assert_eq!(b.cn_w[1], w(&[int(2), int(1)]));
        assert_eq!(b.cn_w[2], w(&[int(-16), int(-10), int(1)]));
    }

    #[test]
    fn c5_coefficients() {
        let b = CnBasis::build(5).unwrap();
        let f5 = Poly::new(vec![rat(234, 11), int(0), rat(-102, 11), int(0), int(1)]);
        assert_eq!(b.cofactor(5), f5);
        assert_eq!(b.cn_w[5][4], rat(52, 11));
    }

    #[test]
    fn tilde_members() {
        let t = CnTildeBasis::build(2).unwrap();
        assert_eq!(t.cn[0], Poly::one());
        let c1 = Poly::new(vec![int(0), int(0), int(1), int(0), rat(-1, 3)]);
        assert_eq!(t.cn[1], c1);
        // -(1/3)V_4 + (1/3)V_0
        assert_eq!(t.cn_w[1], w(&[rat(1, 3), rat(-1, 3)]));
        let c2 = Poly::new(vec![
            int(0),
            int(0),
            int(0),
            int(0),
            int(1),
            int(0),
            rat(-1, 3),
        ]);
        assert_eq!(t.cn[2], c2);
        assert!(t.cn[2].is_even());
    }

    #[test]
    fn triangular_agrees_small() {
        assert_eq!(
            CnBasis::build(3).unwrap(),
            CnBasis::build_triangular(3).unwrap()
        );
    }
}
