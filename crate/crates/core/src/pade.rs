//! Padé approximants `[n/m]`, `m <= n`, of a power series given by its coefficients.
//!
//! The denominator comes from the `m x m` Hankel system
//! `Σ_j f_{n+i-j} q_j = 0 (i = 1..m)` with `q_0 = 1`; the numerator is then the
//! truncated product `f · Q` through degree `n`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{count_roots, Poly, Rational};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadeApproximant {
    pub n: usize,
    pub m: usize,
    /// Numerator, degree `n`.
    pub p: Poly,
    /// Denominator, degree `m`, `Q(0) = 1`.
    pub q: Poly,
}

/// `[n/m]` approximant of `Σ_k coeff(k) x^k`. `coeff` is queried for `k <= n + m`.
pub fn pade<F>(coeff: F, n: usize, m: usize) -> Result<PadeApproximant>
where
    F: Fn(usize) -> Rational,
{
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "Padé order [{n}/{m}] requires m <= n"
        )));
    }
    let f: Vec<Rational> = (0..=n + m).map(&coeff).collect();
    let fk = |k: isize| -> Rational {
        if k < 0 {
            Rational::zero()
        } else {
            f[k as usize].clone()
        }
    };

    // Unknowns q_1..q_m; row i: Σ_{j=1..m} f_{n+i-j} q_j = -f_{n+i}.
    let rows: Vec<Vec<Rational>> = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| fk(n as isize + i as isize - j as isize))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = (1..=m).map(|i| -fk((n + i) as isize)).collect();
    let mut q = vec![Rational::one()];
    if m > 0 {
        let sol = linalg::solve(rows, rhs).map_err(|e| match e {
            Error::SingularSystem(msg) => Error::SingularSystem(format!(
                "Hankel system for [{n}/{m}] is singular ({msg}); the series is not Stieltjes"
            )),
            other => other,
        })?;
        q.extend(sol);
    }
    let p: Vec<Rational> = (0..=n)
        .map(|i| {
            (0..=i.min(m))
                .map(|j| &f[i - j] * &q[j])
                .fold(Rational::zero(), |a, b| a + b)
        })
        .collect();
    Ok(PadeApproximant {
        n,
        m,
        p: Poly::new(p),
        q: Poly::new(q),
    })
}

/// Taylor coefficients `k = 1..=big_k` of `P/Q`.
pub fn expand(a: &PadeApproximant, big_k: usize) -> Vec<Rational> {
    let q = a.q.coeffs();
    let mut g: Vec<Rational> = Vec::with_capacity(big_k + 1);
    for k in 0..=big_k {
        let mut v = a.p.coeff(k);
        for j in 1..=k.min(q.len().saturating_sub(1)) {
            v -= &q[j] * &g[k - j];
        }
        g.push(v);
    }
    g.remove(0);
    g
}

/// True when `Q` has exactly `m` distinct real roots in `(r, ∞)`, with `∞` replaced by
/// the exact Cauchy bound of `Q`.
pub fn check_pole_locations(a: &PadeApproximant, r: &Rational) -> bool {
    if a.m == 0 {
        return true;
    }
    let h = a.q.cauchy_bound().max(r + Rational::one());
    count_roots(&a.q, r, &h).is_ok_and(|c| c == a.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};
    use crate::stieltjes::PhiSeries;

    #[test]
    fn one_one() {
        let s = PhiSeries::new();
        let a = pade(|k| s.coeff(k), 1, 1).unwrap();
        assert_eq!(a.p, Poly::new(vec![int(0), rat(4, 9)]));
        assert_eq!(a.q, Poly::new(vec![int(1), rat(-8, 27)]));
        assert_eq!(expand(&a, 2), vec![rat(4, 9), rat(32, 243)]);
        let e3 = expand(&a, 3);
        assert_eq!(e3[2], rat(256, 6561));
        assert!(e3[2] <= s.coeff(3));
        assert!(check_pole_locations(&a, &int(1)));
    }

    #[test]
    fn m_zero_is_taylor() {
        let s = PhiSeries::new();
        let a = pade(|k| s.coeff(k), 4, 0).unwrap();
        assert_eq!(a.q, Poly::one());
        assert_eq!(a.p, Poly::new(s.coeffs(4)));
        assert_eq!(expand(&a, 3), s.coeffs(3)[1..].to_vec());
        assert!(check_pole_locations(&a, &int(100)));
    }

    #[test]
    fn two_one_dominated() {
        let s = PhiSeries::new();
        let a = pade(|k| s.coeff(k), 2, 1).unwrap();
        let e = expand(&a, 4);
        assert_eq!(e[..3], s.coeffs(3)[1..]);
        assert!(e[3] < s.coeff(4));
    }

    #[test]
    fn three_three_poles() {
        let s = PhiSeries::new();
        let a = pade(|k| s.coeff(k), 3, 3).unwrap();
        assert!(check_pole_locations(&a, &int(1)));
    }

    #[test]
    fn errors() {
        let s = PhiSeries::new();
        assert!(matches!(
            pade(|k| s.coeff(k), 1, 2),
            Err(Error::InvalidArgument(_))
        ));
        // Geometric series is rational: [2/2] Hankel system is singular.
        let geo = |k: usize| if k == 0 { int(0) } else { int(1) };
        assert!(matches!(pade(geo, 2, 2), Err(Error::SingularSystem(_))));
    }
}
