//! Coefficients of `φ(u) = 4 sin²(⅓ arcsin √u)`, the series expressing `T_2 + 2` in
//! terms of `(T_6 + 2) / 4`, and the positivity checks that make it a Stieltjes series.
//!
//! `φ_0 = 0`, `φ_1 = 4/9`, `φ_{n+1} = (2/9) (3n+1)(3n-1) / ((n+1)(2n+1)) φ_n`.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, to_f64, Rational};
use crate::linalg;

/// Memoized exact coefficients of `φ`.
///
/// The cache only grows, behind a `RwLock`: concurrent readers share it and an extension
/// takes the write lock once. A single instance can be shared across threads.
#[derive(Debug)]
pub struct PhiSeries {
    cache: RwLock<Vec<Rational>>,
}

impl Default for PhiSeries {
    fn default() -> Self {
        Self::new()
    }
}

impl Clone for PhiSeries {
    fn clone(&self) -> Self {
        PhiSeries {
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

/// `φ_{n+1} / φ_n` for `n >= 1`.
pub fn ratio(n: u64) -> Rational {
    let n = n as i64;
    rat(2 * (3 * n + 1) * (3 * n - 1), 9 * (n + 1) * (2 * n + 1))
}

impl PhiSeries {
    pub fn new() -> Self {
        PhiSeries {
            cache: RwLock::new(vec![Rational::zero(), rat(4, 9)]),
        }
    }

    fn ensure(&self, n: usize) {
        if self.cache.read().unwrap().len() > n {
            return;
        }
        let mut cache = self.cache.write().unwrap();
        while cache.len() <= n {
            let k = cache.len() - 1;
            let next = &cache[k] * ratio(k as u64);
            cache.push(next);
        }
    }

    /// `φ_n`.
    pub fn coeff(&self, n: usize) -> Rational {
        self.ensure(n);
        self.cache.read().unwrap()[n].clone()
    }

    /// `φ_0, ..., φ_n`.
    pub fn coeffs(&self, n: usize) -> Vec<Rational> {
        self.ensure(n);
        self.cache.read().unwrap()[..=n].to_vec()
    }

    /// `Δ^k φ_n`, with `Δ f_n = f_{n+1} - f_n`.
    pub fn difference(&self, k: usize, n: usize) -> Rational {
        self.ensure(n + k);
        let cache = self.cache.read().unwrap();
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for j in 0..=k {
            let term = Rational::from_integer(binom.clone()) * &cache[n + j];
            if (k - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
        acc
    }

    /// Determinant of the `(m+1) x (m+1)` Hankel matrix `[φ_{n+i+j}]`.
    pub fn hankel_det(&self, n: usize, m: usize) -> Rational {
        self.ensure(n + 2 * m);
        let cache = self.cache.read().unwrap();
        let rows: Vec<Vec<Rational>> = (0..=m)
            .map(|i| (0..=m).map(|j| cache[n + i + j].clone()).collect())
            .collect();
        linalg::determinant(&rows)
    }

    /// `Σ_{k <= big_k} φ_k`.
    pub fn partial_sum(&self, big_k: usize) -> Rational {
        self.coeffs(big_k).into_iter().sum()
    }

    /// Truncated series `Σ_{k <= terms} φ_k u^k` in double precision.
    pub fn series_f64(&self, u: f64, terms: usize) -> f64 {
        self.coeffs(terms)
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + to_f64(c))
    }

    /// First and second derivatives of the truncated series.
    fn derivatives_f64(&self, u: f64, terms: usize) -> (f64, f64, f64) {
        let c: Vec<f64> = self.coeffs(terms).iter().map(to_f64).collect();
        let (mut f, mut df, mut d2f) = (0.0, 0.0, 0.0);
        for (k, ck) in c.iter().enumerate().rev() {
            f = f * u + ck;
            if k >= 1 {
                df = df * u + ck * k as f64;
            }
            if k >= 2 {
                d2f = d2f * u + ck * (k * (k - 1)) as f64;
            }
        }
        (f, df, d2f)
    }
}

/// `4 sin²(⅓ arcsin √u)` for `u ∈ [0, 1]`.
pub fn phi_closed(u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::DomainError {
            value: u.to_string(),
            domain: "[0, 1]",
        });
    }
    let s = (u.sqrt().asin() / 3.0).sin();
    Ok(4.0 * s * s)
}

/// Left side of `-4 + 2f + 9(1-2u) f' + 18(u-u²) f'' = 0`.
pub fn ode_lhs(f: f64, df: f64, d2f: f64, u: f64) -> f64 {
    -4.0 + 2.0 * f + 9.0 * (1.0 - 2.0 * u) * df + 18.0 * (u - u * u) * d2f
}

/// ODE residual of the truncated series for `φ` at `u ∈ (0, 1)`.
pub fn ode_residual(series: &PhiSeries, u: f64, terms: usize) -> f64 {
    let (f, df, d2f) = series.derivatives_f64(u, terms);
    ode_lhs(f, df, d2f, u)
}

/// Convenience for one-off lookups; allocates a fresh cache.
pub fn phi(n: usize) -> Rational {
    PhiSeries::new().coeff(n)
}
