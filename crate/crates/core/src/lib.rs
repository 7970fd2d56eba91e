//! Exact construction of polynomial space curves realizing the torus knots `K(2,N)`.
//!
//! For odd `N = 2n+1` the curve is `x = T_3`, with `y` and `z` expressed in the monic
//! Chebyshev basis. Every constructed object is certified with exact rational arithmetic
//! and Sturm chains; floats only appear in the crossing parameters, which involve cosines.
//!
//! Module map:
//! - [`exactpoly`]: rationals, polynomials, Sturm root counting and isolation.
//! - [`chebyshev`]: `T_n`, `V_n`, basis changes and the divided-difference map.
//! - [`stieltjes`]: coefficients of `φ(u) = 4 sin²(⅓ arcsin √u)` and positivity checks.
//! - [`pade`]: Padé approximants from series coefficients.
//! - [`knotforge`]: the `C_n` bases, deformation, plane and space curves, verification.
//! - [`artifact`]: the JSON curve file, re-verification of stored curves, SVG/CSV export.

pub mod artifact;
pub mod chebyshev;
mod error;
pub mod exactpoly;
pub mod knotforge;
pub mod linalg;
pub mod pade;
pub mod stieltjes;

pub use error::{Error, Result};
