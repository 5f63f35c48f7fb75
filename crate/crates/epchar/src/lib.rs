//! Exact algebra of exponential-polynomial sequences and the character
//! arrays they induce.
//!
//! An exponential-polynomial function is a map `Z -> Q` of the form
//! `m ↦ δ_r(m) · Σ_i a_i(m) λ_i^m`, where each `a_i` is a polynomial, each
//! base `λ_i` is a nonzero scalar, and `δ_r(m)` is `r` when `r | m` and `0`
//! otherwise. These are exactly the solutions of linear homogeneous
//! recurrences with constant rational coefficients.
//!
//! The crate provides:
//!
//! - [`numbers`]: divisors, Möbius, totient, and Ramanujan sums `c_d(n)` in
//!   two independently computed forms;
//! - [`series`]: truncated power series over exact rationals;
//! - [`poly`]: dense univariate polynomials over the rationals;
//! - [`exppoly`]: canonical forms, evaluation, shift-operator action,
//!   characteristic polynomials, and recurrence solving;
//! - [`semiinvariants`]: Poincaré series of the eigenspace components of the
//!   cyclic rotation action on tensor powers of graded vector spaces, by a
//!   closed formula and by a brute-force orbit oracle;
//! - [`characters`]: the weight-multiplicity array of the irreducible
//!   level-zero affine sl2 module attached to an exponential-polynomial
//!   function, computed two ways (a Ramanujan-sum formula and the
//!   semi-invariant route) that must agree exactly.
//!
//! All arithmetic is exact: rational coefficients are
//! [`num::BigRational`], multiplicities are [`num::BigUint`], and no
//! floating point or complex root of unity is ever materialized. Division
//! by `r` in the character formula happens once, at the end, and is
//! asserted exact.
//!
//! With the default `parallel` feature the hot kernels (series Cauchy
//! products and the brute-force orbit enumeration) are data-parallel via
//! rayon; `--no-default-features` selects the sequential fallback. The
//! `*_seq` twins of those kernels are always available for comparison.

pub mod characters;
pub mod exppoly;
mod linalg;
pub mod numbers;
pub mod poly;
pub mod semiinvariants;
pub mod series;

/// Exact rational scalar used for every coefficient in the crate.
pub type Rational = num::BigRational;

pub use num::{BigInt, BigUint};

pub(crate) mod util {
    use super::Rational;
    use num::traits::Pow;
    use num::{One, Zero};

    /// Exact `base^e` for a signed exponent; `base` must be nonzero when
    /// `e < 0`.
    pub fn rational_pow(base: &Rational, e: i64) -> Rational {
        let mag: u32 = e
            .unsigned_abs()
            .try_into()
            .expect("exponent magnitude exceeds u32");
        if mag == 0 {
            return Rational::one();
        }
        let numer = Pow::pow(base.numer(), mag);
        let denom = Pow::pow(base.denom(), mag);
        if e >= 0 {
            Rational::new(numer, denom)
        } else {
            assert!(!base.is_zero(), "negative power of zero");
            Rational::new(denom, numer)
        }
    }

    /// Rational from a signed integer.
    pub fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
}
