//! Exponential-polynomial functions on the integers.
//!
//! Two representations live here. [`FreeExpPoly`] is a finite linear
//! combination of the basis sequences `ε_{λ,k}(m) = m^k λ^m` with nonzero
//! rational `λ`; it is the natural solution space of linear recurrences
//! with constant coefficients, and the shift operator `t` (with
//! `(t·f)(m) = f(m+1)`) acts on it. [`CanonicalExpPoly`] additionally
//! carries a period factor `δ_r` (`δ_r(m) = r` if `r | m`, else `0`) and
//! represents `φ = δ_r · Σ_i a_i ε_{λ_i}` with polynomial coefficients
//! `a_i` and pairwise-distinct bases; this is the normal form consumed by
//! the character routines. Bases may be left symbolic when no arithmetic
//! on them is required.

use crate::linalg::solve_linear_system;
use crate::poly::PolynomialQ;
use crate::util::{rat, rational_pow};
use crate::Rational;
use num::{BigInt, One, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpPolyError {
    /// Two bases of a canonical form collide: equal `r`-th powers for
    /// numeric bases, or a repeated symbol.
    #[error("DistinctnessViolation: {0}")]
    DistinctnessViolation(String),
    /// A numeric base `λ = 0` was supplied; bases must be invertible.
    #[error("ZeroScalar: exponential base 0 is not allowed")]
    ZeroScalar,
    /// The operation needs numeric bases but a symbol was found.
    #[error("SymbolicEvaluation: operation requires numeric bases, found symbol '{0}'")]
    SymbolicEvaluation(String),
    /// The zero function was supplied where a nonzero one is required.
    #[error("ZeroFunction: the zero function is not admissible here")]
    ZeroFunction,
    /// A characteristic polynomial must be monic.
    #[error("NotMonic: characteristic polynomial must be monic, got {0}")]
    NotMonic(PolynomialQ),
    /// A characteristic polynomial must have a nonzero constant term
    /// (base 0 is excluded, and backward unrolling divides by it).
    #[error("ZeroConstantTerm: characteristic polynomial must have a nonzero constant term")]
    ZeroConstantTerm,
    /// The number of initial values must equal the recurrence order.
    #[error("InitialLengthMismatch: expected {expected} initial values, got {got}")]
    InitialLengthMismatch { expected: usize, got: usize },
    /// The characteristic polynomial has an irreducible factor of degree
    /// ≥ 2 over the rationals, so the solution leaves the rational span.
    #[error("NotSplitOverRationals: the factor {0} has no rational root")]
    NotSplitOverRationals(PolynomialQ),
    /// Root-candidate enumeration exceeded the built-in budget
    /// (coefficients too large to factor by trial division).
    #[error("RootSearchOverflow: coefficients too large for rational root search")]
    RootSearchOverflow,
}

/// The base `λ` of an exponential sequence `ε_λ(m) = λ^m`: either an
/// explicit nonzero rational or an opaque symbol standing for a generic
/// (transcendental) value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ScalarBase {
    Numeric(Rational),
    Symbol(String),
}

impl ScalarBase {
    pub fn numeric(&self) -> Option<&Rational> {
        match self {
            ScalarBase::Numeric(q) => Some(q),
            ScalarBase::Symbol(_) => None,
        }
    }
}

impl fmt::Display for ScalarBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarBase::Numeric(q) => write!(f, "{q}"),
            ScalarBase::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// Normal form `φ = δ_r · Σ_i a_i ε_{λ_i}`: a period `r ≥ 1`, and for each
/// term a nonzero polynomial coefficient and a base. Numeric bases have
/// pairwise-distinct `r`-th powers; symbolic bases are pairwise-distinct
/// names. The zero function is the empty term list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalExpPoly {
    r: u64,
    terms: Vec<(PolynomialQ, ScalarBase)>,
}

/// Validates and normalizes `(r, terms)` into a [`CanonicalExpPoly`].
///
/// Zero polynomial coefficients are dropped (after the zero-base check),
/// terms are sorted deterministically, and the distinctness invariant is
/// enforced: numeric bases must have pairwise-distinct `r`-th powers and
/// symbols must be pairwise distinct.
pub fn make_canonical(
    r: u64,
    terms: Vec<(PolynomialQ, ScalarBase)>,
) -> Result<CanonicalExpPoly, ExpPolyError> {
    assert!(r >= 1, "period r must be positive");
    assert!(i64::try_from(r).is_ok(), "period r out of range");
    if terms
        .iter()
        .any(|(_, b)| b.numeric().is_some_and(Zero::is_zero))
    {
        return Err(ExpPolyError::ZeroScalar);
    }
    let mut terms: Vec<(PolynomialQ, ScalarBase)> =
        terms.into_iter().filter(|(a, _)| !a.is_zero()).collect();
    terms.sort_by(|(_, x), (_, y)| x.cmp(y));

    let mut powers: BTreeMap<Rational, Rational> = BTreeMap::new();
    let mut symbols: BTreeSet<&str> = BTreeSet::new();
    for (_, base) in &terms {
        match base {
            ScalarBase::Numeric(q) => {
                let p = rational_pow(q, r as i64);
                if let Some(prev) = powers.get(&p) {
                    return Err(ExpPolyError::DistinctnessViolation(format!(
                        "bases {prev} and {q} have equal {r}-th powers"
                    )));
                }
                powers.insert(p, q.clone());
            }
            ScalarBase::Symbol(s) => {
                if !symbols.insert(s) {
                    return Err(ExpPolyError::DistinctnessViolation(format!(
                        "symbol {s} appears in two terms"
                    )));
                }
            }
        }
    }
    Ok(CanonicalExpPoly { r, terms })
}

impl CanonicalExpPoly {
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn terms(&self) -> &[(PolynomialQ, ScalarBase)] {
        &self.terms
    }

    /// True when the function is identically zero (no terms survived).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn first_symbol(&self) -> Option<&str> {
        self.terms.iter().find_map(|(_, b)| match b {
            ScalarBase::Symbol(s) => Some(s.as_str()),
            ScalarBase::Numeric(_) => None,
        })
    }

    /// Exact value `φ(m) = δ_r(m)·Σ_i a_i(m) λ_i^m`; needs numeric bases.
    pub fn evaluate(&self, m: i64) -> Result<Rational, ExpPolyError> {
        if let Some(s) = self.first_symbol() {
            return Err(ExpPolyError::SymbolicEvaluation(s.to_owned()));
        }
        if m.rem_euclid(self.r as i64) != 0 {
            return Ok(Rational::zero());
        }
        let mut acc = Rational::zero();
        for (a, base) in &self.terms {
            let lambda = base.numeric().expect("symbols were rejected above");
            acc += a.eval_int(m) * rational_pow(lambda, m);
        }
        Ok(acc * rat(self.r as i64))
    }

    /// `φ(0) = r·Σ_i a_i(0)`; defined even for symbolic bases (`λ^0 = 1`).
    pub fn phi_at_zero(&self) -> Rational {
        let sum: Rational = self.terms.iter().map(|(a, _)| a.coeff(0)).sum();
        sum * rat(self.r as i64)
    }

    /// The minimal monic annihilator `∏_i (t^r − λ_i^r)^{deg a_i + 1}` of
    /// the sequence under the shift action; `1` for the zero function.
    pub fn char_poly(&self) -> Result<PolynomialQ, ExpPolyError> {
        if let Some(s) = self.first_symbol() {
            return Err(ExpPolyError::SymbolicEvaluation(s.to_owned()));
        }
        let mut out = PolynomialQ::one();
        for (a, base) in &self.terms {
            let lambda = base.numeric().expect("symbols were rejected above");
            let mut coeffs = vec![Rational::zero(); self.r as usize + 1];
            coeffs[0] = -rational_pow(lambda, self.r as i64);
            coeffs[self.r as usize] = Rational::one();
            let factor = PolynomialQ::from_coeffs(coeffs);
            let mult = a.degree().expect("zero terms were dropped") as u32 + 1;
            out = out.mul(&factor.pow(mult));
        }
        Ok(out)
    }
}

/// A finite linear combination `Σ c_{λ,k} ε_{λ,k}` stored as a map from
/// `(λ, k)` to the nonzero coefficient `c_{λ,k}`; the empty map is the
/// zero function.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeExpPoly {
    terms: BTreeMap<(Rational, u32), Rational>,
}

impl FreeExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from `((λ, k), c)` items, summing duplicates and dropping
    /// zero coefficients. Panics on `λ = 0`.
    pub fn from_terms(
        items: impl IntoIterator<Item = ((Rational, u32), Rational)>,
    ) -> Self {
        let mut terms: BTreeMap<(Rational, u32), Rational> = BTreeMap::new();
        for ((lambda, k), c) in items {
            assert!(!lambda.is_zero(), "exponential base must be nonzero");
            let entry = terms.entry((lambda, k)).or_insert_with(Rational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    /// The single basis sequence `ε_{λ,k}`.
    pub fn atom(lambda: Rational, k: u32) -> Self {
        Self::from_terms([((lambda, k), Rational::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(Rational, u32), Rational> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Rational, k: u32) -> Rational {
        self.terms
            .get(&(lambda.clone(), k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(key, c)| (key.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(key, v)| (key.clone(), v * c))
                .collect(),
        }
    }

    /// Exact value `Σ c_{λ,k}·m^k·λ^m`.
    pub fn evaluate(&self, m: i64) -> Rational {
        let mut acc = Rational::zero();
        for ((lambda, k), c) in &self.terms {
            let mk = Rational::from_integer(BigInt::from(m).pow(*k));
            acc += c * mk * rational_pow(lambda, m);
        }
        acc
    }

    /// Regroups the atoms by base: `λ ↦ Σ_k c_{λ,k} m^k` as a polynomial
    /// in `m`.
    pub fn coefficient_polynomials(&self) -> BTreeMap<Rational, PolynomialQ> {
        let mut out: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
        for ((lambda, k), c) in &self.terms {
            let coeffs = out.entry(lambda.clone()).or_default();
            if coeffs.len() <= *k as usize {
                coeffs.resize(*k as usize + 1, Rational::zero());
            }
            coeffs[*k as usize] = c.clone();
        }
        out.into_iter()
            .map(|(lambda, coeffs)| (lambda, PolynomialQ::from_coeffs(coeffs)))
            .collect()
    }

    /// One application of the shift operator:
    /// `t·ε_{λ,k} = λ·Σ_{j≤k} C(k,j) ε_{λ,j}`.
    fn shift_once(&self) -> Self {
        let mut items = Vec::new();
        for ((lambda, k), c) in &self.terms {
            let binomials = binomial_row(*k);
            for (j, b) in binomials.iter().enumerate() {
                let coeff = c * lambda * Rational::from_integer(b.clone());
                items.push(((lambda.clone(), j as u32), coeff));
            }
        }
        Self::from_terms(items)
    }
}

/// Row `k` of Pascal's triangle: `[C(k,0), …, C(k,k)]`.
fn binomial_row(k: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(k as usize + 1);
    row.push(BigInt::one());
    for j in 0..k {
        let next = &row[j as usize] * BigInt::from(k - j) / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

/// Applies the operator polynomial `c(t)` to `f` inside the span of the
/// `ε_{λ,k}`, returning the structural (not pointwise) image. Uses Horner
/// evaluation in the shift operator.
pub fn shift_apply(c: &PolynomialQ, f: &FreeExpPoly) -> FreeExpPoly {
    let Some(deg) = c.degree() else {
        return FreeExpPoly::zero();
    };
    let mut acc = FreeExpPoly::zero();
    for j in (0..=deg).rev() {
        acc = acc.shift_once().add(&f.scale(&c.coeff(j)));
    }
    acc
}

/// The values `(c·φ)(m) = Σ_j c_j φ(m+j)` for `m` in `lo..=hi`, computed
/// pointwise from `evaluate`.
pub fn operator_apply_values(
    c: &PolynomialQ,
    phi: &CanonicalExpPoly,
    lo: i64,
    hi: i64,
) -> Result<Vec<Rational>, ExpPolyError> {
    assert!(lo <= hi, "window must be nonempty");
    let q = c.degree().unwrap_or(0) as i64;
    let values: Vec<Rational> = (lo..=hi + q)
        .map(|m| phi.evaluate(m))
        .collect::<Result<_, _>>()?;
    Ok((0..=(hi - lo) as usize)
        .map(|m| {
            (0..=q as usize)
                .map(|j| c.coeff(j) * &values[m + j])
                .sum()
        })
        .collect())
}

/// The generator of the submonoid of `Z` generated by `S ∪ (−S)`: the gcd
/// of the absolute values (`0` when every element is `0`).
pub fn monoid_generator(s: &[i64]) -> u64 {
    assert!(!s.is_empty(), "the generating set must be nonempty");
    s.iter()
        .map(|&x| x.unsigned_abs())
        .fold(0, num::integer::gcd)
}

/// The period of the support of a nonzero free-form function with rational
/// bases: `2` when for every `λ` the coefficient polynomials at `λ` and
/// `−λ` agree (the values then vanish off `2Z`), else `1`.
pub fn degree_freeform(f: &FreeExpPoly) -> Result<u64, ExpPolyError> {
    if f.is_zero() {
        return Err(ExpPolyError::ZeroFunction);
    }
    let by_base = f.coefficient_polynomials();
    for (lambda, a) in &by_base {
        let mirrored = by_base.get(&-lambda).cloned().unwrap_or_default();
        if *a != mirrored {
            return Ok(1);
        }
    }
    Ok(2)
}

fn validate_recurrence(
    c: &PolynomialQ,
    initial: &[Rational],
) -> Result<usize, ExpPolyError> {
    if !c.is_monic() {
        return Err(ExpPolyError::NotMonic(c.clone()));
    }
    if c.coeff(0).is_zero() {
        return Err(ExpPolyError::ZeroConstantTerm);
    }
    let q = c.degree().expect("monic polynomials are nonzero");
    if initial.len() != q {
        return Err(ExpPolyError::InitialLengthMismatch {
            expected: q,
            got: initial.len(),
        });
    }
    Ok(q)
}

/// Extends the values `initial = (φ(0), …, φ(q−1))` of a solution of the
/// recurrence `Σ_j c_j φ(m+j) = 0` to the whole window `lo..=hi`, in both
/// directions.
pub fn recurrence_unroll(
    c: &PolynomialQ,
    initial: &[Rational],
    lo: i64,
    hi: i64,
) -> Result<Vec<Rational>, ExpPolyError> {
    assert!(lo <= hi, "window must be nonempty");
    let q = validate_recurrence(c, initial)?;
    if q == 0 {
        // c is the constant 1: the only solution is the zero sequence.
        return Ok(vec![Rational::zero(); (hi - lo) as usize + 1]);
    }

    let base_lo = lo.min(0);
    let base_hi = hi.max(q as i64 - 1);
    let len = (base_hi - base_lo) as usize + 1;
    let idx = |m: i64| (m - base_lo) as usize;

    let mut values = vec![Rational::zero(); len];
    for (m, v) in initial.iter().enumerate() {
        values[idx(m as i64)] = v.clone();
    }
    // Forward: φ(m+q) = −Σ_{j<q} c_j φ(m+j).
    for m in (q as i64)..=base_hi {
        let mut acc = Rational::zero();
        for j in 0..q {
            acc += c.coeff(j) * &values[idx(m - q as i64 + j as i64)];
        }
        values[idx(m)] = -acc;
    }
    // Backward: φ(m) = −(Σ_{j≥1} c_j φ(m+j)) / c_0.
    for m in (base_lo..0).rev() {
        let mut acc = Rational::zero();
        for j in 1..=q {
            acc += c.coeff(j) * &values[idx(m + j as i64)];
        }
        values[idx(m)] = -acc / c.coeff(0);
    }
    Ok(values[idx(lo)..=idx(hi)].to_vec())
}

/// Finds all rational roots of `c` with multiplicities by the rational
/// root theorem, deflating as it goes. Returns the roots and the monic
/// residual polynomial with no rational roots left.
fn rational_roots(
    c: &PolynomialQ,
) -> Result<(Vec<(Rational, usize)>, PolynomialQ), ExpPolyError> {
    const TRIAL_LIMIT: u128 = 2_000_000;
    const CANDIDATE_BUDGET: usize = 200_000;

    // Scale to integer coefficients: L·c has constant term b0 and leading
    // coefficient L (c is monic).
    let scale = c
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, q| num::integer::lcm(acc, q.denom().clone()));
    let b0 = (c.coeff(0) * Rational::from_integer(scale.clone()))
        .to_integer()
        .magnitude()
        .to_u128()
        .ok_or(ExpPolyError::RootSearchOverflow)?;
    let lead = scale.to_u128().ok_or(ExpPolyError::RootSearchOverflow)?;

    let factor = |mut n: u128| -> Result<Vec<(u128, u32)>, ExpPolyError> {
        let mut factors = Vec::new();
        let mut p: u128 = 2;
        while p <= TRIAL_LIMIT && p * p <= n {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            if n > TRIAL_LIMIT * TRIAL_LIMIT {
                return Err(ExpPolyError::RootSearchOverflow);
            }
            factors.push((n, 1)); // below the square of the trial bound ⇒ prime
        }
        Ok(factors)
    };
    let divisors = |factors: &[(u128, u32)]| -> Vec<u128> {
        let mut divs = vec![1u128];
        for &(p, e) in factors {
            let prev = divs.clone();
            let mut power = 1u128;
            for _ in 0..e {
                power *= p;
                divs.extend(prev.iter().map(|d| d * power));
            }
        }
        divs
    };

    let p_divs = divisors(&factor(b0)?);
    let s_divs = divisors(&factor(lead)?);
    if p_divs.len().saturating_mul(s_divs.len()) > CANDIDATE_BUDGET {
        return Err(ExpPolyError::RootSearchOverflow);
    }

    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    for &p in &p_divs {
        for &s in &s_divs {
            let q = Rational::new(BigInt::from(p), BigInt::from(s));
            candidates.insert(q.clone());
            candidates.insert(-q);
        }
    }

    let mut residual = c.clone();
    let mut roots = Vec::new();
    for lambda in candidates {
        let mut mult = 0;
        let linear = PolynomialQ::from_coeffs(vec![-lambda.clone(), Rational::one()]);
        while residual.degree() > Some(0) && residual.eval(&lambda).is_zero() {
            let (quotient, rem) = residual.div_rem(&linear);
            debug_assert!(rem.is_zero());
            residual = quotient;
            mult += 1;
        }
        if mult > 0 {
            roots.push((lambda, mult));
        }
    }
    Ok((roots, residual))
}

/// Solves the recurrence with monic characteristic polynomial `c` (which
/// must split into linear factors over the rationals) and the given
/// initial values `φ(0), …, φ(q−1)`: returns the unique combination of
/// the atoms `ε_{λ,k}` (`c(λ) = 0`, `k <` multiplicity) matching them.
pub fn recurrence_solve(
    c: &PolynomialQ,
    initial: &[Rational],
) -> Result<FreeExpPoly, ExpPolyError> {
    let q = validate_recurrence(c, initial)?;
    if q == 0 {
        return Ok(FreeExpPoly::zero());
    }
    let (roots, residual) = rational_roots(c)?;
    if residual.degree() > Some(0) {
        return Err(ExpPolyError::NotSplitOverRationals(residual));
    }

    let atoms: Vec<(Rational, u32)> = roots
        .iter()
        .flat_map(|(lambda, mult)| (0..*mult as u32).map(|k| (lambda.clone(), k)))
        .collect();
    debug_assert_eq!(atoms.len(), q);

    let matrix: Vec<Vec<Rational>> = (0..q as i64)
        .map(|m| {
            atoms
                .iter()
                .map(|(lambda, k)| {
                    Rational::from_integer(BigInt::from(m).pow(*k))
                        * rational_pow(lambda, m)
                })
                .collect()
        })
        .collect();
    let solution = solve_linear_system(matrix, initial.to_vec())
        .expect("distinct exponential-polynomial atoms have a nonsingular evaluation matrix");

    Ok(FreeExpPoly::from_terms(
        atoms.into_iter().zip(solution),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn num(q: i64) -> ScalarBase {
        ScalarBase::Numeric(rat(q))
    }

    fn sym(s: &str) -> ScalarBase {
        ScalarBase::Symbol(s.to_owned())
    }

    fn poly(vals: &[i64]) -> PolynomialQ {
        PolynomialQ::from_ints(vals)
    }

    fn delta(r: u64) -> CanonicalExpPoly {
        make_canonical(r, vec![(poly(&[1]), num(1))]).unwrap()
    }

    #[test]
    fn make_canonical_drops_zero_terms_and_sorts() {
        let phi = make_canonical(2, vec![(poly(&[1]), num(3)), (poly(&[]), num(5))]).unwrap();
        assert_eq!(phi.terms().len(), 1);
        assert_eq!(phi.terms()[0].1, num(3));

        let phi = make_canonical(4, vec![(poly(&[-1]), sym("b")), (poly(&[-1]), sym("a"))])
            .unwrap();
        assert_eq!(phi.terms()[0].1, sym("a"));
        assert!(!phi.is_zero());

        let zero = make_canonical(3, vec![(poly(&[]), num(2))]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn make_canonical_rejects_base_collisions() {
        let err = make_canonical(2, vec![(poly(&[1]), num(3)), (poly(&[1]), num(-3))])
            .unwrap_err();
        assert!(matches!(err, ExpPolyError::DistinctnessViolation(_)));
        assert!(err.to_string().starts_with("DistinctnessViolation"));

        let err = make_canonical(4, vec![(poly(&[1]), sym("a")), (poly(&[2]), sym("a"))])
            .unwrap_err();
        assert!(matches!(err, ExpPolyError::DistinctnessViolation(_)));

        // Distinct bases with distinct squares are fine.
        assert!(make_canonical(2, vec![(poly(&[1]), num(3)), (poly(&[1]), num(5))]).is_ok());
    }

    #[test]
    fn make_canonical_rejects_zero_base_even_on_zero_terms() {
        let err = make_canonical(1, vec![(poly(&[]), num(0))]).unwrap_err();
        assert_eq!(err, ExpPolyError::ZeroScalar);
    }

    #[test]
    fn evaluate_matches_definition() {
        assert_eq!(delta(6).evaluate(6).unwrap(), rat(6));
        assert_eq!(delta(6).evaluate(3).unwrap(), rat(0));
        assert_eq!(delta(6).evaluate(-12).unwrap(), rat(6));

        let phi = make_canonical(2, vec![(poly(&[1]), num(3))]).unwrap();
        assert_eq!(phi.evaluate(4).unwrap(), rat(162));
        assert_eq!(phi.evaluate(-2).unwrap(), Rational::new(2.into(), 9.into()));

        let phi = make_canonical(1, vec![(poly(&[0, 0, 1]), num(2))]).unwrap();
        assert_eq!(phi.evaluate(3).unwrap(), rat(72));

        let phi = make_canonical(4, vec![(poly(&[-1]), sym("a"))]).unwrap();
        assert_eq!(
            phi.evaluate(0).unwrap_err(),
            ExpPolyError::SymbolicEvaluation("a".to_owned())
        );
    }

    #[test]
    fn phi_at_zero_examples() {
        assert_eq!(delta(6).phi_at_zero(), rat(6));
        let phi = make_canonical(4, vec![(poly(&[-1]), sym("a")), (poly(&[-1]), sym("b"))])
            .unwrap();
        assert_eq!(phi.phi_at_zero(), rat(-8));
        let phi = make_canonical(2, vec![(poly(&[1]), sym("a")), (poly(&[-1]), sym("b"))])
            .unwrap();
        assert_eq!(phi.phi_at_zero(), rat(0));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(delta(6).char_poly().unwrap(), poly(&[-1, 0, 0, 0, 0, 0, 1]));

        let phi = make_canonical(1, vec![(poly(&[0, 0, 1]), num(2))]).unwrap();
        assert_eq!(phi.char_poly().unwrap(), poly(&[-8, 12, -6, 1]));

        let phi = make_canonical(2, vec![(poly(&[1]), num(3))]).unwrap();
        assert_eq!(phi.char_poly().unwrap(), poly(&[-9, 0, 1]));

        let zero = make_canonical(2, vec![]).unwrap();
        assert_eq!(zero.char_poly().unwrap(), PolynomialQ::one());

        let phi = make_canonical(4, vec![(poly(&[-1]), sym("a"))]).unwrap();
        assert!(matches!(
            phi.char_poly(),
            Err(ExpPolyError::SymbolicEvaluation(_))
        ));
    }

    #[test]
    fn operator_apply_values_examples() {
        let phi = make_canonical(2, vec![(poly(&[1]), num(3))]).unwrap();
        let chi = phi.char_poly().unwrap();
        let vals = operator_apply_values(&chi, &phi, -10, 10).unwrap();
        assert!(vals.iter().all(Zero::is_zero));

        let identity = PolynomialQ::one();
        let vals = operator_apply_values(&identity, &phi, 0, 4).unwrap();
        let direct: Vec<Rational> =
            (0..=4).map(|m| phi.evaluate(m).unwrap()).collect();
        assert_eq!(vals, direct);

        let geom = make_canonical(1, vec![(poly(&[1]), num(2))]).unwrap();
        let vals = operator_apply_values(&poly(&[-2, 1]), &geom, -5, 5).unwrap();
        assert!(vals.iter().all(Zero::is_zero));
    }

    #[test]
    fn shift_apply_kernel_and_factorial_identities() {
        let atom = FreeExpPoly::atom(rat(3), 2);
        let annihilator = poly(&[-3, 1]).pow(3);
        assert!(shift_apply(&annihilator, &atom).is_zero());

        let almost = poly(&[-3, 1]).pow(2);
        let image = shift_apply(&almost, &atom);
        assert_eq!(image, FreeExpPoly::from_terms([((rat(3), 0), rat(18))]));

        let image = shift_apply(&poly(&[-1, 1]), &FreeExpPoly::atom(rat(2), 0));
        assert_eq!(image, FreeExpPoly::atom(rat(2), 0));
    }

    #[test]
    fn monoid_generator_examples() {
        assert_eq!(monoid_generator(&[6, -4]), 2);
        assert_eq!(monoid_generator(&[5, -5]), 5);
        assert_eq!(monoid_generator(&[0]), 0);
        assert_eq!(monoid_generator(&[0, 9, 6]), 3);
    }

    #[test]
    fn degree_freeform_examples() {
        let even = FreeExpPoly::from_terms([
            ((rat(1), 0), rat(1)),
            ((rat(-1), 0), rat(1)),
        ]);
        assert_eq!(degree_freeform(&even).unwrap(), 2);

        assert_eq!(degree_freeform(&FreeExpPoly::atom(rat(2), 0)).unwrap(), 1);

        let pm3 = FreeExpPoly::from_terms([
            ((rat(3), 0), rat(1)),
            ((rat(-3), 0), rat(1)),
        ]);
        assert_eq!(degree_freeform(&pm3).unwrap(), 2);
        // Support check: values vanish off 2Z.
        for m in -8..=8 {
            assert_eq!(pm3.evaluate(m).is_zero(), m % 2 != 0);
        }

        assert_eq!(
            degree_freeform(&FreeExpPoly::zero()).unwrap_err(),
            ExpPolyError::ZeroFunction
        );
    }

    fn rats(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn recurrence_unroll_examples() {
        let vals = recurrence_unroll(&poly(&[2, -3, 1]), &rats(&[0, 1]), 0, 5).unwrap();
        assert_eq!(vals, rats(&[0, 1, 3, 7, 15, 31]));

        let vals = recurrence_unroll(&poly(&[-1, 1]), &rats(&[5]), -3, 3).unwrap();
        assert_eq!(vals, rats(&[5, 5, 5, 5, 5, 5, 5]));

        let vals = recurrence_unroll(&poly(&[-1, 0, 1]), &rats(&[2, 0]), -2, 4).unwrap();
        assert_eq!(vals, rats(&[2, 0, 2, 0, 2, 0, 2]));
    }

    #[test]
    fn recurrence_validation_errors() {
        let err = recurrence_unroll(&poly(&[0, -1, 1]), &rats(&[0, 1]), 0, 3).unwrap_err();
        assert_eq!(err, ExpPolyError::ZeroConstantTerm);

        let err = recurrence_unroll(&poly(&[-1, 2]), &rats(&[1]), 0, 3).unwrap_err();
        assert!(matches!(err, ExpPolyError::NotMonic(_)));

        let err = recurrence_solve(&poly(&[2, -3, 1]), &rats(&[0, 1, 2])).unwrap_err();
        assert_eq!(
            err,
            ExpPolyError::InitialLengthMismatch { expected: 2, got: 3 }
        );

        let err = recurrence_solve(&poly(&[1, 0, 1]), &rats(&[0, 1])).unwrap_err();
        match err {
            ExpPolyError::NotSplitOverRationals(residual) => {
                assert_eq!(residual, poly(&[1, 0, 1]));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn recurrence_solve_examples() {
        let f = recurrence_solve(&poly(&[2, -3, 1]), &rats(&[0, 1])).unwrap();
        let expected = FreeExpPoly::from_terms([
            ((rat(2), 0), rat(1)),
            ((rat(1), 0), rat(-1)),
        ]);
        assert_eq!(f, expected);

        let f = recurrence_solve(&poly(&[4, -4, 1]), &rats(&[0, 2])).unwrap();
        assert_eq!(f, FreeExpPoly::atom(rat(2), 1));

        let f = recurrence_solve(&poly(&[-3, 1]), &rats(&[1])).unwrap();
        assert_eq!(f, FreeExpPoly::atom(rat(3), 0));
    }

    #[test]
    fn recurrence_solve_handles_rational_roots() {
        // (t − 1/2)(t − 3), scaled: roots 1/2 and 3.
        let c = PolynomialQ::from_coeffs(vec![
            Rational::new(3.into(), 2.into()),
            Rational::new((-7).into(), 2.into()),
            Rational::one(),
        ]);
        let initial = vec![rat(2), Rational::new(7.into(), 2.into())];
        let f = recurrence_solve(&c, &initial).unwrap();
        let expected = FreeExpPoly::from_terms([
            ((Rational::new(1.into(), 2.into()), 0), rat(1)),
            ((rat(3), 0), rat(1)),
        ]);
        assert_eq!(f, expected);
    }

    fn small_free() -> impl Strategy<Value = FreeExpPoly> {
        prop::collection::vec(
            (
                (-3i64..=3).prop_filter("nonzero base", |&l| l != 0),
                0u32..=2,
                -3i64..=3,
            ),
            1..=3,
        )
        .prop_map(|items| {
            FreeExpPoly::from_terms(
                items
                    .into_iter()
                    .map(|(l, k, c)| ((rat(l), k), rat(c))),
            )
        })
    }

    fn small_operator() -> impl Strategy<Value = PolynomialQ> {
        prop::collection::vec(-3i64..=3, 1..=4).prop_map(|v| PolynomialQ::from_ints(&v))
    }

    proptest! {
        #[test]
        fn shift_apply_matches_pointwise_shifts(f in small_free(), c in small_operator()) {
            let image = shift_apply(&c, &f);
            let q = c.degree().unwrap_or(0);
            for m in -6..=6i64 {
                let direct: Rational = (0..=q)
                    .map(|j| c.coeff(j) * f.evaluate(m + j as i64))
                    .sum();
                prop_assert_eq!(image.evaluate(m), direct);
            }
        }

        #[test]
        fn solve_matches_unroll(roots in prop::collection::vec(
            (-4i64..=4).prop_filter("nonzero", |&l| l != 0), 1..=4),
            seeds in prop::collection::vec(-5i64..=5, 4))
        {
            let c = roots.iter().fold(PolynomialQ::one(), |acc, &l| {
                acc.mul(&PolynomialQ::from_ints(&[-l, 1]))
            });
            let q = c.degree().unwrap();
            let initial = rats(&seeds[..q]);
            let f = recurrence_solve(&c, &initial).unwrap();
            let window = recurrence_unroll(&c, &initial, -5, 10).unwrap();
            for (offset, expected) in window.iter().enumerate() {
                prop_assert_eq!(&f.evaluate(-5 + offset as i64), expected);
            }
        }
    }
}
