use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, int, to_f64, Rational};

/// Univariate polynomial over the rationals in the monomial basis.
///
/// `coeffs[i]` is the coefficient of `t^i`. Trailing zeros are always stripped, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading_coeff().recip();
        self.scale(&inv)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, a: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    /// Double-precision Horner; diagnostics only.
    pub fn eval_f64(&self, a: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * a + to_f64(c))
    }

    /// `p(q(t))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division over the rationals; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc_inv = d.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd. The gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        // Primitive remainder sequence over the integers, then made monic.
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple. Returned monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// True when `t^k` divides `self`. Every polynomial is divisible by `t^0`.
    pub fn divisible_by_power_of_t(&self, k: usize) -> bool {
        self.coeffs.iter().take(k).all(Zero::is_zero)
    }

    /// Exact quotient by `t^k`; the low coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.divisible_by_power_of_t(k));
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Cauchy bound `1 + max|c_i| / |c_n|`: every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading_coeff().abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + max / lc
    }

    /// Integer coefficients with positive gcd 1 and the same sign as `self`.
    pub(crate) fn to_primitive_ints(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub(crate) fn from_bigints(ints: Vec<BigInt>) -> Poly {
        Poly::new(ints.into_iter().map(Rational::from_integer).collect())
    }

    /// Positive rescaling with coprime integer coefficients.
    pub fn primitive_part(&self) -> Poly {
        Poly::from_bigints(self.to_primitive_ints())
    }

    /// Pseudo-remainder using positive multipliers only, so the sign of `self mod d`
    /// is preserved up to a positive factor.
    pub(crate) fn pseudo_rem(&self, d: &Poly) -> Poly {
        let a = self.to_primitive_ints();
        let b = d.to_primitive_ints();
        Poly::from_bigints(int_pseudo_rem(a, &b))
    }
}

/// Remainder of `a` by `b` over the integers, scaled by a positive constant.
pub(crate) fn int_pseudo_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let lb_abs = lb.abs();
    let lb_neg = lb.is_negative();
    while a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        if la.is_zero() {
            a.pop();
            continue;
        }
        let f = if lb_neg { -la } else { la };
        let off = da - db;
        for c in a.iter_mut() {
            *c *= &lb_abs;
        }
        for (j, bc) in b.iter().enumerate() {
            a[off + j] -= &f * bc;
        }
        debug_assert!(a[da].is_zero());
        a.pop();
        let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in a.iter_mut() {
                *c /= &g;
            }
        }
    }
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Descending monomials, e.g. `t^3 - 2*t`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rational::rat;

    #[test]
    fn arithmetic() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        assert_eq!(&p * &Poly::x(), Poly::from_ints(&[0, -2, 0, 1]));
        assert!((&p + &(-&p)).is_zero());
        let cube = Poly::monomial(int(1), 3);
        assert_eq!(cube.scale(&rat(1, 3)), Poly::monomial(rat(1, 3), 3));
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn compose_examples() {
        let sq = Poly::monomial(int(1), 2);
        let t3 = Poly::from_ints(&[0, -3, 0, 1]);
        assert_eq!(sq.compose(&t3), Poly::from_ints(&[0, 0, 9, 0, -6, 0, 1]));
        assert_eq!(t3.compose(&Poly::x()), t3);

        // x(x-3)^2/4 at x = t^2 against t^2(t^2-3)^2/4 expanded by hand.
        let outer = Poly::new(vec![int(0), rat(9, 4), rat(-6, 4), rat(1, 4)]);
        let lhs = outer.compose(&sq);
        let rhs = Poly::new(vec![
            int(0),
            int(0),
            rat(9, 4),
            int(0),
            rat(-3, 2),
            int(0),
            rat(1, 4),
        ]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_examples() {
        let t3 = Poly::from_ints(&[0, -3, 0, 1]);
        assert_eq!(t3.eval(&int(2)), int(2));
        assert_eq!(t3.eval(&int(0)), int(0));
        assert_eq!(Poly::from_ints(&[-2, 0, 1]).eval(&rat(1, 2)), rat(-7, 4));
        assert!((t3.eval_f64(1.5) - (-1.125)).abs() < 1e-15);
    }

    #[test]
    fn squarefree_examples() {
        // t^5 (t^2 - 6)
        let p = Poly::from_ints(&[0, 0, 0, 0, 0, -6, 0, 1]);
        assert_eq!(p.squarefree_part(), Poly::from_ints(&[0, -6, 0, 1]));
        assert_eq!(Poly::monomial(int(1), 3).squarefree_part(), Poly::x());
        let sf = Poly::from_ints(&[-2, 0, 2]);
        assert_eq!(sf.squarefree_part(), sf.monic());
    }

    #[test]
    fn division() {
        let a = Poly::from_ints(&[1, 2, 3, 4, 5]);
        let b = Poly::new(vec![rat(1, 2), int(0), int(3)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = Poly::from_ints(&[-1, 1]);
        let g = Poly::from_ints(&[3, 0, 1]);
        let h = Poly::from_ints(&[5, -2]);
        let a = &(&f * &g) * &h;
        let b = &(&f * &f) * &g;
        assert_eq!(a.gcd(&b), (&f * &g).monic());
    }

    #[test]
    fn display() {
        let p = Poly::new(vec![rat(234, 11), int(0), rat(-102, 11), int(0), int(1)]);
        assert_eq!(p.to_string(), "t^4 - 102/11*t^2 + 234/11");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn parity_and_bounds() {
        assert!(Poly::from_ints(&[0, 1, 0, 1]).is_odd());
        assert!(Poly::from_ints(&[1, 0, 1]).is_even());
        let p = Poly::from_ints(&[-6, 0, 1]);
        assert_eq!(p.cauchy_bound(), int(7));
    }
}
