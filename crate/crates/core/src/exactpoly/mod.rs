//! Exact rational scalars, univariate polynomials, and certified real-root counting.

mod poly;
pub mod rational;
mod sturm;

pub use poly::Poly;
pub use rational::{format_rational, int, parse_rational, pow2_inv, rat, to_f64, Rational};
pub use sturm::{count_roots, isolate_roots, refine, IsolatingInterval, SturmChain};
