//! Brute-force double-point search for a polynomial plane curve, independent of the
//! divided-difference machinery.
//!
//! Both coordinates are evaluated exactly at the grid abscissae, so the sign of
//! `(p(s) - p(t)) / (s - t)` at every grid corner is exact. Cells where both quotients
//! change sign seed a Newton iteration in `(s, t)` carried out in 256-bit fixed point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactpoly::{to_f64, Poly, Rational};

pub const DEFAULT_GRID: usize = 800;
/// The search box is `[-11/5, 11/5]²`.
const BOX_NUM: i64 = 11;
const BOX_DEN: i64 = 5;
const DEDUP_TOL: f64 = 1e-6;
const NEWTON_ITERS: usize = 80;
/// Newton runs in fixed point with resolution `2^-PRECISION`.
const PRECISION: u32 = 256;
/// Convergence: both Newton corrections below `2^-STEP_BITS`.
const STEP_BITS: u32 = 120;

/// `D^d p(m / D)` for every `m`, with `p` scaled to primitive integers. The factor is
/// positive, so signs and orderings are those of `p` itself.
fn scaled_values(p: &Poly, nums: &[BigInt], den: &BigInt) -> Vec<BigInt> {
    let c = p.to_primitive_ints();
    nums.iter()
        .map(|m| {
            let mut acc = BigInt::zero();
            let mut dpow = BigInt::one();
            for ck in c.iter().rev() {
                acc = acc * m + ck * &dpow;
                dpow *= den;
            }
            acc
        })
        .collect()
}

fn sign_of(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact signs of `(p(g_i) - p(g_j)) / (g_i - g_j)`, and of `p'(g_i)` on the diagonal.
struct QuotientSigns {
    vals: Vec<BigInt>,
    diag: Vec<i8>,
}

impl QuotientSigns {
    fn new(p: &Poly, nums: &[BigInt], den: &BigInt) -> Self {
        let vals = scaled_values(p, nums, den);
        let diag = scaled_values(&p.derivative(), nums, den)
            .iter()
            .map(sign_of)
            .collect();
        QuotientSigns { vals, diag }
    }

    fn at(&self, i: usize, j: usize) -> i8 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.diag[i],
            std::cmp::Ordering::Less => -sign_of(&(&self.vals[i] - &self.vals[j])),
            std::cmp::Ordering::Greater => sign_of(&(&self.vals[i] - &self.vals[j])),
        }
    }

    fn changes(&self, i: usize, j: usize) -> bool {
        let v = [
            self.at(i, j),
            self.at(i, j + 1),
            self.at(i + 1, j),
            self.at(i + 1, j + 1),
        ];
        v.iter().any(|&a| a >= 0) && v.iter().any(|&a| a <= 0)
    }
}

/// Fixed-point numbers `v / 2^PRECISION`.
type Fixed = BigInt;

fn fx_mul(a: &Fixed, b: &Fixed) -> Fixed {
    (a * b) >> PRECISION
}

fn fx_div(a: &Fixed, b: &Fixed) -> Fixed {
    (a << PRECISION).div_floor(b)
}

fn fx_from(r: &Rational) -> Fixed {
    (r.numer() << PRECISION).div_floor(r.denom())
}

fn fx_to_f64(a: &Fixed) -> f64 {
    to_f64(&Rational::new(a.clone(), BigInt::one() << PRECISION))
}

/// `(p(s) - p(t)) / (s - t)` and its partials, via `h_1 = 1`, `h_{k+1} = s h_k + t^k`.
fn divided_jet(c: &[Fixed], s: &Fixed, t: &Fixed) -> [Fixed; 3] {
    let one: Fixed = BigInt::one() << PRECISION;
    let mut f = [Fixed::zero(), Fixed::zero(), Fixed::zero()];
    let (mut h, mut hs, mut ht) = (one.clone(), Fixed::zero(), Fixed::zero());
    // t^k and k t^{k-1}.
    let (mut tk, mut dtk) = (t.clone(), one);
    for ck in c.iter().skip(1) {
        f[0] += fx_mul(ck, &h);
        f[1] += fx_mul(ck, &hs);
        f[2] += fx_mul(ck, &ht);
        let next = fx_mul(s, &h) + &tk;
        hs = &h + fx_mul(s, &hs);
        ht = fx_mul(s, &ht) + &dtk;
        h = next;
        dtk = fx_mul(&dtk, t) + &tk;
        tk = fx_mul(&tk, t);
    }
    f
}

fn newton(x: &[Fixed], y: &[Fixed], s0: Fixed, t0: Fixed) -> Option<(f64, f64)> {
    let tol: Fixed = BigInt::one() << (PRECISION - STEP_BITS);
    let limit: Fixed = BigInt::from(3) << PRECISION;
    let (mut s, mut t) = (s0, t0);
    for _ in 0..NEWTON_ITERS {
        let [f, a, b] = divided_jet(x, &s, &t);
        let [g, c, d] = divided_jet(y, &s, &t);
        let det = fx_mul(&a, &d) - fx_mul(&b, &c);
        if det.is_zero() {
            return None;
        }
        let ds = fx_div(&(fx_mul(&d, &f) - fx_mul(&b, &g)), &det);
        let dt = fx_div(&(fx_mul(&a, &g) - fx_mul(&c, &f)), &det);
        s -= &ds;
        t -= &dt;
        if s.abs() > limit || t.abs() > limit {
            return None;
        }
        if ds.abs() < tol && dt.abs() < tol {
            return Some((fx_to_f64(&s), fx_to_f64(&t)));
        }
    }
    None
}

/// Parameter pairs `s < t` in `[-2.2, 2.2]²` with `(x(s), y(s)) = (x(t), y(t))`,
/// sorted by `s + t`.
pub fn crossing_oracle_pairs(x: &Poly, y: &Poly, grid: usize) -> Vec<(f64, f64)> {
    let grid = grid.max(2);
    // g_i = (11/5)(2i - grid)/grid.
    let den = BigInt::from(BOX_DEN) * BigInt::from(grid);
    let nums: Vec<BigInt> = (0..=grid)
        .map(|i| BigInt::from(BOX_NUM) * BigInt::from(2 * i as i64 - grid as i64))
        .collect();
    let node = |i: usize| fx_from(&Rational::new(nums[i].clone(), den.clone()));
    let half_step = fx_from(&Rational::new(BigInt::from(BOX_NUM), den.clone()));

    let sx = QuotientSigns::new(x, &nums, &den);
    let sy = QuotientSigns::new(y, &nums, &den);
    let xc: Vec<Fixed> = x.coeffs().iter().map(fx_from).collect();
    let yc: Vec<Fixed> = y.coeffs().iter().map(fx_from).collect();
    let lim = BOX_NUM as f64 / BOX_DEN as f64;

    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid {
        // Cells with s <= t, including those on the diagonal.
        for j in i..grid {
            if !(sx.changes(i, j) && sy.changes(i, j)) {
                continue;
            }
            let (sc, tc) = (node(i) + &half_step, node(j) + &half_step);
            let Some((s, t)) = newton(&xc, &yc, sc, tc) else {
                continue;
            };
            let (s, t) = if s < t { (s, t) } else { (t, s) };
            if t - s < DEDUP_TOL || s < -lim || t > lim {
                continue;
            }
            let dup = found
                .iter()
                .any(|&(a, b)| (a - s).abs() < DEDUP_TOL && (b - t).abs() < DEDUP_TOL);
            if !dup {
                found.push((s, t));
            }
        }
    }
    found.sort_by(|a, b| (a.0 + a.1).total_cmp(&(b.0 + b.1)));
    found
}

/// Number of double points of `(x, y)` over `[-2.2, 2.2]`.
pub fn crossing_oracle(x: &Poly, y: &Poly, grid: usize) -> usize {
    crossing_oracle_pairs(x, y, grid).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    #[test]
    fn jet_matches_quotient() {
        let c = vec![rat(1, 2), int(-1), int(2), rat(1, 4), rat(-3, 4)];
        let p = Poly::new(c.clone());
        let (s, t) = (rat(3, 8), rat(-5, 4));
        let cf: Vec<Fixed> = c.iter().map(fx_from).collect();
        let [f, fs, ft] = divided_jet(&cf, &fx_from(&s), &fx_from(&t));
        let q = (p.eval(&s) - p.eval(&t)) / (&s - &t);
        let dp = p.derivative();
        let qs = (dp.eval(&s) - &q) / (&s - &t);
        let qt = (&q - dp.eval(&t)) / (&s - &t);
        for (got, want) in [(f, q), (fs, qs), (ft, qt)] {
            assert!((fx_to_f64(&got) - to_f64(&want)).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_values_exact() {
        let p = Poly::new(vec![int(1), rat(-2, 3), int(5)]);
        let den = BigInt::from(7);
        let nums = vec![BigInt::from(-3), BigInt::from(4)];
        let v = scaled_values(&p, &nums, &den);
        // The primitive integer form of p is 3p.
        for (m, val) in [(-3, &v[0]), (4, &v[1])] {
            assert_eq!(
                Rational::from_integer(val.clone()),
                p.eval(&rat(m, 7)) * int(3 * 49)
            );
        }
    }

    #[test]
    fn trefoil_projection() {
        let x = Poly::from_ints(&[0, -3, 0, 1]);
        // -T_4 + (127/64) T_2 in monomial form.
        let y = Poly::new(vec![
            rat(-127, 32) - int(2),
            int(0),
            rat(127, 64) + int(4),
            int(0),
            int(-1),
        ]);
        let pairs = crossing_oracle_pairs(&x, &y, 200);
        assert_eq!(pairs.len(), 3);
        let (s, t) = pairs[1];
        assert!((s + 3f64.sqrt()).abs() < 1e-12 && (t - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn no_crossings() {
        let x = Poly::from_ints(&[0, 1]);
        let y = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(crossing_oracle(&x, &y, 100), 0);
    }
}
