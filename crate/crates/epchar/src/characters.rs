//! Weight-multiplicity arrays of the irreducible level-zero highest-weight
//! modules attached to exponential-polynomial functions.
//!
//! For `φ = δ_r·Σ_i a_i ε_{λ_i}` in canonical form, the character lives on
//! the lattice of weights `φ(0)·α/2 − k·α + n·δ` (the symbols `α` and `δ`
//! stay formal: a cell is addressed by its coordinates `(k, n)` plus the
//! scalar `φ(0)`). The multiplicity at `(k, n)` depends on `n` only mod
//! `r` and equals the coefficient of `X^k` in
//! `(1/r)·Σ_{d|r} c_d(n)·(F_φ(X^d))^{r/d}`, where `c_d` are Ramanujan
//! sums and `F_φ = ∏_{a_i∈Z_+}(1−Z^{a_i+1})/(1−Z)^M` with
//! `M = Σ_i (deg a_i + 1)` is the highest-weight-module series of the
//! associated truncated current algebra. A second, independent route
//! computes the same array as the eigencomponent dimensions of the cyclic
//! rotation action on the `r`-th tensor power of a space with Poincaré
//! series `F_φ`; the two must agree everywhere.

use crate::exppoly::CanonicalExpPoly;
use crate::numbers::{divisors, ramanujan_sum};
use crate::poly::PolynomialQ;
use crate::semiinvariants::{tensor_component_series, SemiInvariantsError};
use crate::series::{
    expand_rational, series_add, series_pow, series_scale, series_substitute_power,
    TruncatedSeries,
};
use crate::util::rat;
use crate::{BigUint, Rational};
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharactersError {
    /// The coefficient polynomial of a highest-weight series is zero.
    #[error("ZeroPolynomial: the coefficient polynomial must be nonzero")]
    ZeroPolynomial,
    /// The zero function carries no module and hence no character.
    #[error("ZeroFunction: the zero function does not define a character")]
    ZeroFunction,
    /// A multiplicity came out non-integral — impossible for valid input;
    /// reported rather than rounded.
    #[error("NonIntegerEntry: array entry at (k={k}, n={n}) is not an integer")]
    NonIntegerEntry { k: usize, n: u64 },
    /// A multiplicity came out negative — likewise an internal-bug signal.
    #[error("NegativeEntry: array entry at (k={k}, n={n}) is negative")]
    NegativeEntry { k: usize, n: u64 },
}

/// The series `F_φ`: Poincaré series of the highest-weight space the
/// character formula tensors with itself. Constant term is always 1 and
/// every coefficient is a nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSeries {
    series: TruncatedSeries,
}

impl FSeries {
    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn cutoff(&self) -> usize {
        self.series.cutoff()
    }

    pub fn into_series(self) -> TruncatedSeries {
        self.series
    }
}

/// Weight-multiplicity array: `rows[k][n]` is the multiplicity of the
/// weight `φ(0)·α/2 − k·α + n·δ` for `k = 0..=K` and `n` a residue mod
/// `r` (the array is `n`-periodic, so one period is stored).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterArray {
    phi0: Rational,
    r: u64,
    rows: Vec<Vec<BigUint>>,
}

impl CharacterArray {
    pub fn phi0(&self) -> &Rational {
        &self.phi0
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Rows indexed by `k`, each holding the `r` entries `n = 0..r−1`.
    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Multiplicity at `(k, n)` for any integer residue representative
    /// `n` (periodicity is applied).
    pub fn entry(&self, k: usize, n: u64) -> &BigUint {
        &self.rows[k][(n % self.r) as usize]
    }

    /// The formal weight of a cell: the pair of the `α`-coefficient
    /// `φ(0)/2 − k` and the `δ`-coefficient `n`.
    pub fn weight_of_cell(&self, k: usize, n: i64) -> (Rational, i64) {
        let alpha = &self.phi0 / rat(2) - rat(k as i64);
        (alpha, n)
    }
}

/// Character series of the cyclic highest-weight module of a truncated
/// current algebra with coefficient polynomial `a`: the finite geometric
/// series `1 + X + ⋯ + X^a` when `a` is a constant nonnegative integer,
/// and the full geometric series `1/(1−X)` otherwise.
pub fn truncated_current_char(
    a: &PolynomialQ,
    cutoff: usize,
) -> Result<TruncatedSeries, CharactersError> {
    if a.is_zero() {
        return Err(CharactersError::ZeroPolynomial);
    }
    let ones = TruncatedSeries::from_coeffs(vec![Rational::one(); cutoff + 1]);
    if !a.is_constant() {
        return Ok(ones);
    }
    let value = a.coeff(0);
    if !value.is_integer() || value.is_negative() {
        return Ok(ones);
    }
    let top = value
        .to_integer()
        .to_usize()
        .map_or(cutoff, |v| v.min(cutoff));
    let coeffs = (0..=cutoff)
        .map(|k| if k <= top { Rational::one() } else { Rational::zero() })
        .collect();
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// The series `F_φ = ∏_{a_i∈Z_+}(1−Z^{a_i+1}) / (1−Z)^M` with
/// `M = Σ_i (deg a_i + 1)`, truncated at the cutoff. Only the coefficient
/// polynomials of `φ` matter, so symbolic bases are fine.
pub fn f_series(phi: &CanonicalExpPoly, cutoff: usize) -> Result<FSeries, CharactersError> {
    if phi.is_zero() {
        return Err(CharactersError::ZeroFunction);
    }
    let mut numerator_exponents = Vec::new();
    let mut m_total: u64 = 0;
    for (a, _) in phi.terms() {
        m_total += a.degree().expect("canonical terms are nonzero") as u64 + 1;
        if a.is_constant() {
            let value = a.coeff(0);
            if value.is_integer() && value.is_positive() {
                // (1 − Z^b) with b = value + 1; anything past the cutoff
                // acts as 1, so clamp to keep the exponent machine-sized.
                let b = (value.to_integer() + BigInt::one())
                    .min(BigInt::from(cutoff as u64 + 1));
                numerator_exponents.push(b.to_u64().expect("clamped to cutoff + 1"));
            }
        }
    }
    let series = expand_rational(&numerator_exponents, m_total, cutoff);
    assert!(series.coeff(0).is_one(), "F always has constant term 1");
    assert!(
        series.has_nonneg_integer_coeffs(),
        "F always has nonnegative integer coefficients"
    );
    Ok(FSeries { series })
}

/// Converts the length-`kmax+1` column series for residue `n` into exact
/// nonnegative integers, reporting the offending cell otherwise.
fn column_entries(
    series: &TruncatedSeries,
    n: u64,
) -> Result<Vec<BigUint>, CharactersError> {
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, q)| {
            if !q.is_integer() {
                return Err(CharactersError::NonIntegerEntry { k, n });
            }
            q.to_integer()
                .to_biguint()
                .ok_or(CharactersError::NegativeEntry { k, n })
        })
        .collect()
}

fn assemble(
    phi: &CanonicalExpPoly,
    columns: Vec<Vec<BigUint>>,
    kmax: usize,
) -> CharacterArray {
    let mut rows = vec![Vec::with_capacity(columns.len()); kmax + 1];
    for column in columns {
        for (k, entry) in column.into_iter().enumerate() {
            rows[k].push(entry);
        }
    }
    CharacterArray {
        phi0: phi.phi_at_zero(),
        r: phi.r(),
        rows,
    }
}

/// The weight-multiplicity array of the module attached to `φ`, rows
/// `k = 0..=kmax`: entry `(k, n)` is the coefficient of `X^k` in
/// `(1/r)·Σ_{d|r} c_d(n)·(F_φ(X^d))^{r/d}`.
pub fn character_array(
    phi: &CanonicalExpPoly,
    kmax: usize,
) -> Result<CharacterArray, CharactersError> {
    let f = f_series(phi, kmax)?;
    let r = phi.r();
    let powers: Vec<(u64, TruncatedSeries)> = divisors(r)
        .into_iter()
        .map(|d| {
            let s = series_pow(&series_substitute_power(f.series(), d), r / d);
            (d, s)
        })
        .collect();
    let inv_r = Rational::new(1.into(), BigInt::from(r));

    let mut columns = Vec::with_capacity(r as usize);
    for n in 0..r {
        let mut acc = TruncatedSeries::zero(kmax);
        for (d, s) in &powers {
            let c = ramanujan_sum(*d, n as i64);
            if c != 0 {
                acc = series_add(&acc, &series_scale(s, &rat(c)));
            }
        }
        let scaled = series_scale(&acc, &inv_r);
        columns.push(column_entries(&scaled, n)?);
    }
    Ok(assemble(phi, columns, kmax))
}

/// The same array computed through the cyclic-rotation eigencomponents of
/// the `r`-th tensor power of a space with Poincaré series `F_φ` — an
/// independent route kept separate as a cross-check.
pub fn character_array_via_semiinvariants(
    phi: &CanonicalExpPoly,
    kmax: usize,
) -> Result<CharacterArray, CharactersError> {
    let f = f_series(phi, kmax)?;
    let r = phi.r();
    let mut columns = Vec::with_capacity(r as usize);
    for n in 0..r {
        let component =
            tensor_component_series(f.series(), r, n as i64).map_err(|e| match e {
                SemiInvariantsError::NonIntegerResult { k } => {
                    CharactersError::NonIntegerEntry { k, n }
                }
                other => unreachable!("unexpected component error: {other}"),
            })?;
        columns.push(column_entries(&component, n)?);
    }
    Ok(assemble(phi, columns, kmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exppoly::{make_canonical, ScalarBase};
    use crate::series::series_mul;

    fn num(q: i64) -> ScalarBase {
        ScalarBase::Numeric(rat(q))
    }

    fn sym(s: &str) -> ScalarBase {
        ScalarBase::Symbol(s.to_owned())
    }

    fn poly(vals: &[i64]) -> PolynomialQ {
        PolynomialQ::from_ints(vals)
    }

    fn s(vals: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_ints(vals)
    }

    fn delta(r: u64) -> CanonicalExpPoly {
        make_canonical(r, vec![(poly(&[1]), num(1))]).unwrap()
    }

    fn neg_delta(r: u64) -> CanonicalExpPoly {
        make_canonical(r, vec![(poly(&[-1]), num(1))]).unwrap()
    }

    fn fig_b_input() -> CanonicalExpPoly {
        make_canonical(4, vec![(poly(&[-1]), sym("a")), (poly(&[-1]), sym("b"))]).unwrap()
    }

    fn fig_d_input() -> CanonicalExpPoly {
        make_canonical(2, vec![(poly(&[1]), sym("a")), (poly(&[-1]), sym("b"))]).unwrap()
    }

    fn assert_rows(arr: &CharacterArray, expected: &[&[u64]]) {
        assert_eq!(arr.row_count(), expected.len(), "row count");
        for (k, row) in expected.iter().enumerate() {
            let got: Vec<u64> = arr.rows()[k]
                .iter()
                .map(|e| u64::try_from(e).expect("entry fits in u64"))
                .collect();
            assert_eq!(&got, row, "row k={k}");
        }
    }

    #[test]
    fn truncated_current_char_cases() {
        assert_eq!(
            truncated_current_char(&poly(&[2]), 5).unwrap(),
            s(&[1, 1, 1, 0, 0, 0])
        );
        assert_eq!(
            truncated_current_char(&poly(&[-1]), 4).unwrap(),
            s(&[1, 1, 1, 1, 1])
        );
        assert_eq!(
            truncated_current_char(&poly(&[0, 1]), 4).unwrap(),
            s(&[1, 1, 1, 1, 1])
        );
        let half = PolynomialQ::from_coeffs(vec![Rational::new(3.into(), 2.into())]);
        assert_eq!(truncated_current_char(&half, 3).unwrap(), s(&[1, 1, 1, 1]));
        assert_eq!(
            truncated_current_char(&poly(&[5]), 3).unwrap(),
            s(&[1, 1, 1, 1])
        );
        assert_eq!(
            truncated_current_char(&PolynomialQ::zero(), 3).unwrap_err(),
            CharactersError::ZeroPolynomial
        );
    }

    #[test]
    fn f_series_examples() {
        assert_eq!(f_series(&delta(6), 4).unwrap().series(), &s(&[1, 1, 0, 0, 0]));
        assert_eq!(
            f_series(&fig_b_input(), 5).unwrap().series(),
            &s(&[1, 2, 3, 4, 5, 6])
        );
        assert_eq!(
            f_series(&fig_d_input(), 5).unwrap().series(),
            &s(&[1, 2, 2, 2, 2, 2])
        );
        // Non-constant coefficient: numerator empty, M counts deg + 1.
        let phi = make_canonical(1, vec![(poly(&[0, 1]), num(2))]).unwrap();
        assert_eq!(f_series(&phi, 4).unwrap().series(), &s(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn f_series_multiplies_current_characters_for_constant_terms() {
        // For all-constant coefficients, F is the product of the per-term
        // highest-weight series.
        let phi = make_canonical(3, vec![(poly(&[2]), sym("a")), (poly(&[1]), sym("b"))])
            .unwrap();
        let cutoff = 8;
        let f = f_series(&phi, cutoff).unwrap();
        let product = series_mul(
            &truncated_current_char(&poly(&[2]), cutoff).unwrap(),
            &truncated_current_char(&poly(&[1]), cutoff).unwrap(),
        );
        assert_eq!(f.series(), &product);
    }

    #[test]
    fn figure_a_array() {
        let arr = character_array(&delta(6), 7).unwrap();
        assert_eq!(arr.phi0(), &rat(6));
        assert_eq!(arr.r(), 6);
        assert_rows(
            &arr,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[1, 1, 1, 1, 1, 1],
                &[3, 2, 3, 2, 3, 2],
                &[4, 3, 3, 4, 3, 3],
                &[3, 2, 3, 2, 3, 2],
                &[1, 1, 1, 1, 1, 1],
                &[1, 0, 0, 0, 0, 0],
                &[0, 0, 0, 0, 0, 0],
            ],
        );
    }

    #[test]
    fn figure_b_array() {
        let arr = character_array(&fig_b_input(), 7).unwrap();
        assert_eq!(arr.phi0(), &rat(-8));
        assert_rows(
            &arr,
            &[
                &[1, 0, 0, 0],
                &[2, 2, 2, 2],
                &[10, 8, 10, 8],
                &[30, 30, 30, 30],
                &[86, 80, 84, 80],
                &[198, 198, 198, 198],
                &[434, 424, 434, 424],
                &[858, 858, 858, 858],
            ],
        );
    }

    #[test]
    fn figure_c_array() {
        let arr = character_array(&neg_delta(6), 9).unwrap();
        assert_eq!(arr.phi0(), &rat(-6));
        assert_rows(
            &arr,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[1, 1, 1, 1, 1, 1],
                &[4, 3, 4, 3, 4, 3],
                &[10, 9, 9, 10, 9, 9],
                &[22, 20, 22, 20, 22, 20],
                &[42, 42, 42, 42, 42, 42],
                &[80, 75, 78, 76, 78, 75],
                &[132, 132, 132, 132, 132, 132],
                &[217, 212, 217, 212, 217, 212],
                &[335, 333, 333, 335, 333, 333],
            ],
        );
    }

    #[test]
    fn figure_d_array() {
        let arr = character_array(&fig_d_input(), 9).unwrap();
        assert_eq!(arr.phi0(), &rat(0));
        assert_rows(
            &arr,
            &[
                &[1, 0],
                &[2, 2],
                &[5, 3],
                &[6, 6],
                &[9, 7],
                &[10, 10],
                &[13, 11],
                &[14, 14],
                &[17, 15],
                &[18, 18],
            ],
        );
    }

    #[test]
    fn both_routes_agree() {
        for phi in [delta(6), neg_delta(6), fig_b_input(), fig_d_input()] {
            assert_eq!(
                character_array(&phi, 8).unwrap(),
                character_array_via_semiinvariants(&phi, 8).unwrap()
            );
        }
    }

    #[test]
    fn r_one_rows_are_the_f_coefficients() {
        let phi = make_canonical(1, vec![(poly(&[0, 1]), num(2))]).unwrap();
        let arr = character_array(&phi, 6).unwrap();
        let f = f_series(&phi, 6).unwrap();
        for k in 0..=6 {
            assert_eq!(arr.rows()[k].len(), 1);
            assert_eq!(
                Rational::from_integer(BigInt::from(arr.entry(k, 0).clone())),
                *f.series().coeff(k)
            );
        }
        assert_eq!(
            arr,
            character_array_via_semiinvariants(&phi, 6).unwrap()
        );
    }

    #[test]
    fn top_row_is_a_highest_weight_line() {
        for phi in [delta(4), fig_b_input(), fig_d_input()] {
            let arr = character_array(&phi, 3).unwrap();
            assert_eq!(arr.entry(0, 0), &BigUint::from(1u32));
            for n in 1..phi.r() {
                assert_eq!(arr.entry(0, n), &BigUint::from(0u32));
            }
        }
    }

    #[test]
    fn columns_sum_to_the_tensor_power_series() {
        let phi = fig_b_input();
        let kmax = 9;
        let arr = character_array(&phi, kmax).unwrap();
        let f = f_series(&phi, kmax).unwrap();
        let full = series_pow(f.series(), phi.r());
        for k in 0..=kmax {
            let total: BigUint = arr.rows()[k].iter().sum();
            assert_eq!(
                Rational::from_integer(BigInt::from(total)),
                *full.coeff(k),
                "column sum at k={k}"
            );
        }
    }

    #[test]
    fn integrable_input_has_finitely_many_rows() {
        let arr = character_array(&delta(6), 12).unwrap();
        for k in 7..=12 {
            assert!(
                arr.rows()[k].iter().all(Zero::is_zero),
                "row k={k} should vanish"
            );
        }
    }

    #[test]
    fn weight_labels() {
        let arr = character_array(&delta(6), 2).unwrap();
        assert_eq!(arr.weight_of_cell(0, 0), (rat(3), 0));

        let arr = character_array(&fig_b_input(), 2).unwrap();
        assert_eq!(arr.weight_of_cell(2, 1), (rat(-6), 1));

        let arr = character_array(&fig_d_input(), 1).unwrap();
        assert_eq!(arr.weight_of_cell(1, 0), (rat(-1), 0));
    }

    #[test]
    fn periodic_entry_access() {
        let arr = character_array(&delta(6), 3).unwrap();
        assert_eq!(arr.entry(3, 0), arr.entry(3, 6));
        assert_eq!(arr.entry(3, 1), arr.entry(3, 13));
    }

    #[test]
    fn zero_function_is_rejected() {
        let zero = make_canonical(2, vec![]).unwrap();
        assert_eq!(
            f_series(&zero, 4).unwrap_err(),
            CharactersError::ZeroFunction
        );
        assert_eq!(
            character_array(&zero, 4).unwrap_err(),
            CharactersError::ZeroFunction
        );
        assert_eq!(
            character_array_via_semiinvariants(&zero, 4).unwrap_err(),
            CharactersError::ZeroFunction
        );
    }
}
