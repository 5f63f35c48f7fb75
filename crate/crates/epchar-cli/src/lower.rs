//! Lowering from expression trees to the canonical form `δ_r·Σ a_i(m)·λ_i^m`.
//!
//! The tree is evaluated bottom-up into a linear combination mapping each
//! exponential base to its polynomial coefficient, with the base `1`
//! carrying pure polynomials and scalars. Products fold numeric bases
//! pointwise (`λ^m·μ^m = (λμ)^m`); a product involving a symbolic base is
//! rejected because `a^m·b^m` has no base in the language. The delta
//! factor contributes its period and otherwise acts as the constant `1`.

use std::collections::BTreeMap;

use crate::ast::Expr;
use crate::error::CliError;
use epchar::exppoly::{make_canonical, CanonicalExpPoly, ScalarBase};
use epchar::poly::PolynomialQ;
use epchar::Rational;

type LinComb = BTreeMap<ScalarBase, PolynomialQ>;

fn identity_base() -> ScalarBase {
    ScalarBase::Numeric(Rational::from_integer(1.into()))
}

fn singleton(base: ScalarBase, coeff: PolynomialQ) -> LinComb {
    let mut lc = LinComb::new();
    if !coeff.is_zero() {
        lc.insert(base, coeff);
    }
    lc
}

fn lc_add(mut a: LinComb, b: LinComb, negate_b: bool) -> LinComb {
    for (base, p) in b {
        let incoming = if negate_b { p.neg() } else { p };
        let sum = match a.remove(&base) {
            Some(existing) => existing.add(&incoming),
            None => incoming,
        };
        if !sum.is_zero() {
            a.insert(base, sum);
        }
    }
    a
}

fn lc_scale(lc: LinComb, factor: &Rational) -> LinComb {
    lc.into_iter()
        .map(|(base, p)| (base, p.scale(factor)))
        .collect()
}

fn base_product(a: &ScalarBase, b: &ScalarBase) -> Result<ScalarBase, CliError> {
    match (a, b) {
        (ScalarBase::Numeric(x), ScalarBase::Numeric(y)) => {
            Ok(ScalarBase::Numeric(x * y))
        }
        _ if *a == identity_base() => Ok(b.clone()),
        _ if *b == identity_base() => Ok(a.clone()),
        _ => Err(CliError::MixedBaseArithmetic(a.clone(), b.clone())),
    }
}

fn lc_mul(a: &LinComb, b: &LinComb) -> Result<LinComb, CliError> {
    let mut out = LinComb::new();
    for (ba, pa) in a {
        for (bb, pb) in b {
            let base = base_product(ba, bb)?;
            let product = pa.mul(pb);
            let sum = match out.remove(&base) {
                Some(existing) => existing.add(&product),
                None => product,
            };
            if !sum.is_zero() {
                out.insert(base, sum);
            }
        }
    }
    Ok(out)
}

/// Evaluates the tree into a linear combination, recording the delta
/// period when the factor is seen. Placement was already validated, so at
/// most one delta can be reached here.
fn eval(e: &Expr, delta: &mut Option<u64>) -> Result<LinComb, CliError> {
    match e {
        Expr::Rational(q) => Ok(singleton(
            identity_base(),
            PolynomialQ::from_coeffs(vec![q.clone()]),
        )),
        Expr::M => Ok(singleton(identity_base(), PolynomialQ::from_ints(&[0, 1]))),
        Expr::Exp(base) => Ok(singleton(base.clone(), PolynomialQ::one())),
        Expr::Delta(r) => {
            debug_assert!(delta.is_none(), "placement check admits one delta");
            *delta = Some(*r);
            Ok(singleton(identity_base(), PolynomialQ::one()))
        }
        Expr::Neg(a) => Ok(lc_scale(
            eval(a, delta)?,
            &Rational::from_integer((-1).into()),
        )),
        Expr::Add(a, b) => Ok(lc_add(eval(a, delta)?, eval(b, delta)?, false)),
        Expr::Sub(a, b) => Ok(lc_add(eval(a, delta)?, eval(b, delta)?, true)),
        Expr::Mul(a, b) => lc_mul(&eval(a, delta)?, &eval(b, delta)?),
        Expr::Pow(a, k) => {
            let base = eval(a, delta)?;
            let mut acc = singleton(identity_base(), PolynomialQ::one());
            for _ in 0..*k {
                acc = lc_mul(&acc, &base)?;
            }
            Ok(acc)
        }
    }
}

/// Distributes the tree into `Σ a_i(m)·λ_i^m`, extracts the delta period
/// (default 1), and validates the result into canonical form — where the
/// base-distinctness rule is enforced.
pub fn lower_to_canonical(e: &Expr) -> Result<CanonicalExpPoly, CliError> {
    let mut delta = None;
    let lc = eval(e, &mut delta)?;
    let r = delta.unwrap_or(1);
    let terms = lc.into_iter().map(|(base, p)| (p, base)).collect();
    Ok(make_canonical(r, terms)?)
}
