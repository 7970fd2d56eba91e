//! The height function `z` making the crossings of `(T_3, y)` alternate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::basis::CnTildeBasis;
use super::deform::NodeSet;
use super::plane::{pair_at, x_poly, CrossingReport, PlaneCurve};
use crate::chebyshev::{divided_difference, lift_from_v, ChebT, ChebV};
use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, int, to_f64, Poly, Rational};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Height {
    /// `b_0..b_n`.
    pub b: Vec<Rational>,
    /// `B = Σ b_k C̃_k`.
    pub poly: Poly,
}

/// `(-1)^i` for the i-th node `u_i` in increasing order, `i = 1..N`.
pub fn node_sign(i: usize) -> i32 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Solves `Σ_k b_k C̃_k(u) = (-1)^i` at the nonnegative nodes `0, δ_1, ..., δ_n`.
/// `B` is even, so the conditions at `-δ_j` follow.
pub fn solve_height(tilde: &CnTildeBasis, nodes: &NodeSet) -> Result<Height> {
    let n = nodes.n();
    if tilde.n_max < n {
        return Err(Error::InvalidArgument(format!(
            "tilde basis holds C~_0..C~_{}, need C~_{n}",
            tilde.n_max
        )));
    }
    let mut points = vec![Rational::zero()];
    points.extend(nodes.delta().iter().cloned());
    // u = 0 is u_{n+1}; δ_j is u_{n+1+j}.
    let rhs: Vec<Rational> = (0..=n).map(|j| int(node_sign(n + 1 + j) as i64)).collect();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|u| (0..=n).map(|k| tilde.cn[k].eval(u)).collect())
        .collect();
    let b = linalg::solve(rows, rhs).map_err(|e| match e {
        Error::SingularSystem(msg) => Error::SingularSystem(format!("height system: {msg}")),
        other => other,
    })?;
    let poly = b
        .iter()
        .zip(&tilde.cn)
        .fold(Poly::zero(), |acc, (bk, ck)| &acc + &ck.scale(bk));
    for (i, u) in nodes.all_nodes().iter().enumerate() {
        let want = int(node_sign(i + 1) as i64);
        if poly.eval(u) != want {
            return Err(Error::InternalInconsistency(format!(
                "B({}) != {}",
                format_rational(u),
                format_rational(&want)
            )));
        }
    }
    Ok(Height { b, poly })
}

/// `z = lift(to_V(B))`.
pub fn lift_height(b: &Poly) -> Result<ChebT> {
    lift_from_v(&ChebV::from_poly(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceCurve {
    pub plane: PlaneCurve,
    pub z: ChebT,
    pub b: Vec<Rational>,
}

pub const COINCIDENCE_TOL: f64 = 1e-9;

/// Bits needed below the unit so that moving `s, t` by `2^-bits` changes any of `polys`
/// by much less than `2^-64`: `96 + log2 Σ |c_k| k 2^{k-1}`, the bound for `|p'|` on `[-2, 2]`.
fn pair_bits(polys: &[&Poly]) -> u32 {
    let mut worst = 0f64;
    for p in polys {
        let mut l = 0f64;
        for (k, c) in p.coeffs().iter().enumerate().skip(1) {
            l += to_f64(c).abs() * k as f64 * 2f64.powi(k as i32 - 1);
        }
        worst = worst.max(l);
    }
    96 + worst.log2().max(0.0).ceil() as u32
}

/// `p(t) - p(s)`, with one normalization instead of one per Horner step.
fn exact_difference(p: &Poly, s: &Rational, t: &Rational) -> Rational {
    let den = s.denom().lcm(t.denom());
    let (sn, tn) = (
        s.numer() * (&den / s.denom()),
        t.numer() * (&den / t.denom()),
    );
    let cden = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&cden / c.denom()))
        .collect();
    // Σ c_k m^k den^{d-k}.
    let homog = |m: &BigInt| {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for ck in ints.iter().rev() {
            acc = acc * m + ck * &dpow;
            dpow *= &den;
        }
        acc
    };
    let d = p.degree().unwrap_or(0);
    Rational::new(
        homog(&tn) - homog(&sn),
        cden * num_traits::pow(den.clone(), d),
    )
}

struct Pairs {
    pairs: Vec<(Rational, Rational)>,
}

impl Pairs {
    fn new(report: &CrossingReport, polys: &[&Poly]) -> Self {
        let bits = pair_bits(polys);
        Pairs {
            pairs: report
                .crossings
                .iter()
                .map(|c| pair_at(&c.u_value, bits))
                .collect(),
        }
    }
}

fn coincidence(x: &Poly, y: &Poly, pairs: &Pairs, report: &mut CrossingReport) -> Result<()> {
    let mut max_err = 0f64;
    for (i, (s, t)) in pairs.pairs.iter().enumerate() {
        let ex = to_f64(&exact_difference(x, s, t)).abs();
        let ey = to_f64(&exact_difference(y, s, t)).abs();
        let e = ex.max(ey);
        if !(e < COINCIDENCE_TOL) {
            return Err(Error::Coincidence(format!(
                "crossing {}: |x(s)-x(t)| = {ex:e}, |y(s)-y(t)| = {ey:e}",
                i + 1
            )));
        }
        max_err = max_err.max(e);
    }
    report.max_coincidence_error = max_err;
    Ok(())
}

/// Records the largest of `|x(s_i) - x(t_i)|`, `|y(s_i) - y(t_i)|` in `report`.
///
/// The pairs `(s_i, t_i)` are recomputed from `u_i` at a precision matched to the size of
/// the coefficients, and the differences are evaluated exactly there.
pub fn check_coincidence(x: &Poly, y: &ChebT, report: &mut CrossingReport) -> Result<()> {
    let y = y.to_poly();
    let pairs = Pairs::new(report, &[x, &y]);
    coincidence(x, &y, &pairs, report)
}

/// Completes `report` with coincidence errors and crossing signs.
///
/// The numeric part checks `x(s_i) = x(t_i)`, `y(s_i) = y(t_i)` and
/// `sign(z(t_i) - z(s_i)) = (-1)^i`, evaluating at high-precision approximations of
/// `s_i, t_i` because the coefficients of `z` grow like `δ^{-2n}`. When `nodes` is given,
/// the exact part checks that the divided-difference image of `z` takes the value
/// `(-1)^i` at each planted node.
pub fn verify_space(
    x: &Poly,
    y: &ChebT,
    z: &ChebT,
    nodes: Option<&NodeSet>,
    mut report: CrossingReport,
) -> Result<CrossingReport> {
    let (yp, zp) = (y.to_poly(), z.to_poly());
    let pairs = Pairs::new(&report, &[x, &yp, &zp]);
    coincidence(x, &yp, &pairs, &mut report)?;

    let mut min_margin = f64::INFINITY;
    for (i, (c, (s, t))) in report.crossings.iter_mut().zip(&pairs.pairs).enumerate() {
        let want = node_sign(i + 1);
        let dz = exact_difference(&zp, s, t);
        let got = if dz.is_positive() {
            1
        } else if dz.is_negative() {
            -1
        } else {
            0
        };
        if got != want {
            return Err(Error::SignViolation(format!(
                "crossing {}: z(t) - z(s) = {:e}, expected sign {want}",
                i + 1,
                to_f64(&dz)
            )));
        }
        c.sign = got;
        min_margin = min_margin.min(to_f64(&dz).abs());
    }
    report.min_sign_margin = min_margin;

    if let Some(nodes) = nodes {
        let b = divided_difference(z).to_poly();
        for (i, u) in nodes.all_nodes().iter().enumerate() {
            let want = int(node_sign(i + 1) as i64);
            let got = b.eval(u);
            if got != want {
                return Err(Error::SignViolation(format!(
                    "divided difference of z at {} is {}, expected {}",
                    format_rational(u),
                    format_rational(&got),
                    format_rational(&want)
                )));
            }
        }
    }
    report.signs_alternate = true;
    Ok(report)
}

/// Checks `x = T_3` exactly; used where `x` comes from outside the pipeline.
pub fn is_t3(x: &Poly) -> bool {
    *x == x_poly()
}
