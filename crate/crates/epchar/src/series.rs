//! Truncated formal power series with exact rational coefficients.
//!
//! Invariants maintained by this module:
//! - a series with cutoff `K` stores exactly `K + 1` coefficients,
//!   `coeffs[k]` being the coefficient of `X^k`;
//! - arithmetic between two series truncates to the smaller cutoff rather
//!   than erroring (callers build everything at one uniform cutoff, and
//!   this forgives off-by-one composition);
//! - coefficients are exact `BigRational`s throughout — intermediate
//!   character-formula values are rationals that collapse to integers only
//!   at the very end, so there is deliberately no integer fast path.
//!
//! The Cauchy product is the hot kernel of the crate. With the `parallel`
//! feature (default) [`series_mul`] computes output coefficients in
//! parallel once the result is long enough to pay for the fan-out;
//! [`series_mul_seq`] is the always-available sequential twin used by the
//! comparison benches.

use crate::{BigInt, Rational};
use num::{One, Signed, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Output length at which the parallel Cauchy product starts to pay;
/// below this the dispatching entry points stay sequential.
pub(crate) const PARALLEL_MIN_LEN: usize = 64;

/// A power series truncated at a cutoff `K`, with exact rational
/// coefficients `coeffs[0..=K]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series from explicit coefficients; the cutoff is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least X^0");
        Self { coeffs }
    }

    /// Series with the given integer coefficients.
    pub fn from_ints(vals: &[i64]) -> Self {
        Self::from_coeffs(vals.iter().map(|&v| crate::util::rat(v)).collect())
    }

    /// The zero series at cutoff `k`.
    pub fn zero(k: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); k + 1] }
    }

    /// The constant series 1 at cutoff `k`.
    pub fn one(k: usize) -> Self {
        let mut s = Self::zero(k);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `X^k`; panics past the cutoff.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Same series truncated at `min(k, cutoff)`.
    pub fn truncated(&self, k: usize) -> Self {
        let len = (k + 1).min(self.coeffs.len());
        Self { coeffs: self.coeffs[..len].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// All coefficients as integers, if every denominator is 1.
    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }
}

/// Coefficient-wise sum at the smaller cutoff.
pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let len = a.coeffs.len().min(b.coeffs.len());
    let coeffs = (0..len).map(|k| &a.coeffs[k] + &b.coeffs[k]).collect();
    TruncatedSeries { coeffs }
}

/// Every coefficient multiplied by `c`.
pub fn series_scale(a: &TruncatedSeries, c: &Rational) -> TruncatedSeries {
    TruncatedSeries { coeffs: a.coeffs.iter().map(|x| x * c).collect() }
}

fn cauchy_coeff(a: &TruncatedSeries, b: &TruncatedSeries, k: usize) -> Rational {
    let lo = (k + 1).saturating_sub(b.coeffs.len());
    let hi = k.min(a.coeffs.len() - 1);
    let mut acc = Rational::zero();
    for i in lo..=hi {
        acc += &a.coeffs[i] * &b.coeffs[k - i];
    }
    acc
}

/// Cauchy product at the smaller cutoff; sequential reference kernel.
pub fn series_mul_seq(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let len = a.coeffs.len().min(b.coeffs.len());
    let mut coeffs = vec![Rational::zero(); len];
    for i in 0..len {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..len - i {
            if !b.coeffs[j].is_zero() {
                coeffs[i + j] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
    }
    TruncatedSeries { coeffs }
}

/// Cauchy product at the smaller cutoff.
///
/// With the `parallel` feature, long results are computed one output
/// coefficient per task; short ones fall through to [`series_mul_seq`].
#[cfg(feature = "parallel")]
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let len = a.coeffs.len().min(b.coeffs.len());
    if len < PARALLEL_MIN_LEN {
        return series_mul_seq(a, b);
    }
    let coeffs = (0..len)
        .into_par_iter()
        .map(|k| cauchy_coeff(a, b, k))
        .collect();
    TruncatedSeries { coeffs }
}

/// Cauchy product at the smaller cutoff (sequential build).
#[cfg(not(feature = "parallel"))]
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    series_mul_seq(a, b)
}

/// `a^e` by square-and-multiply; `e = 0` gives the constant series 1.
pub fn series_pow(a: &TruncatedSeries, e: u64) -> TruncatedSeries {
    let mut result = TruncatedSeries::one(a.cutoff());
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = series_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base);
        }
    }
    result
}

/// Substitution `X ↦ X^d`: the coefficient of `X^{dk}` is `coeffs[k]`,
/// everything off the lattice is 0, and the cutoff is preserved.
pub fn series_substitute_power(a: &TruncatedSeries, d: u64) -> TruncatedSeries {
    assert!(d >= 1, "substitution power must be >= 1");
    let d = d as usize;
    let mut coeffs = vec![Rational::zero(); a.coeffs.len()];
    for (k, c) in a.coeffs.iter().enumerate() {
        match k.checked_mul(d) {
            Some(kd) if kd < coeffs.len() => coeffs[kd] = c.clone(),
            _ => break,
        }
    }
    TruncatedSeries { coeffs }
}

/// The series of `∏_j (1 - X^{b_j}) / (1 - X)^M` to order `k`, where `b_j`
/// ranges over `numerator_exponents`.
///
/// `1/(1-X)^M` is expanded with the binomial coefficients
/// `C(k + M - 1, M - 1)`, built incrementally and exactly; each numerator
/// factor is then applied as a lagged difference.
pub fn expand_rational(numerator_exponents: &[u64], m: u64, k: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(k + 1);
    coeffs.push(Rational::one());
    for i in 1..=k {
        // C(i+M-1, M-1) = C(i-1+M-1, M-1) · (M+i-1) / i
        let step = Rational::new(
            BigInt::from(m) + BigInt::from(i as u64 - 1),
            BigInt::from(i as u64),
        );
        let next = &coeffs[i - 1] * step;
        coeffs.push(next);
    }
    let mut s = TruncatedSeries { coeffs };
    for &b in numerator_exponents {
        assert!(b >= 1, "numerator exponents must be >= 1");
        let b = b as usize;
        let mut next = s.coeffs.clone();
        for i in b..next.len() {
            let lagged = s.coeffs[i - b].clone();
            next[i] -= lagged;
        }
        s = TruncatedSeries { coeffs: next };
    }
    s
}
