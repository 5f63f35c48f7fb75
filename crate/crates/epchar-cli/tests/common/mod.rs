//! Shared plumbing for the integration suites: invoking the built binary,
//! the frozen golden-file and error-case tables, a seeded random generator
//! of canonical functions, and a cyclotomic factorization oracle used to
//! probe minimality of characteristic polynomials.

#![allow(dead_code)]

use std::process::Command;

use epchar::exppoly::{make_canonical, CanonicalExpPoly, ScalarBase};
use epchar::numbers::divisors;
use epchar::poly::PolynomialQ;
use epchar::Rational;
use num::{One, Zero};
use rand::Rng;

/// Runs the compiled binary; returns (exit code, stdout, stderr).
pub fn run_binary(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_epchar"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("utf-8 stdout"),
        String::from_utf8(output.stderr).expect("utf-8 stderr"),
    )
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub expected: &'static str,
}

/// The four published arrays in all three formats, frozen byte-for-byte.
pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "figure_a.text",
        args: &["char", "--expr", "delta(6)", "--rows", "8", "--format", "text"],
        expected: include_str!("../golden/figure_a.text"),
    },
    GoldenCase {
        name: "figure_a.csv",
        args: &["char", "--expr", "delta(6)", "--rows", "8", "--format", "csv"],
        expected: include_str!("../golden/figure_a.csv"),
    },
    GoldenCase {
        name: "figure_a.json",
        args: &["char", "--expr", "delta(6)", "--rows", "8", "--format", "json"],
        expected: include_str!("../golden/figure_a.json"),
    },
    GoldenCase {
        name: "figure_b.text",
        args: &[
            "char",
            "--expr",
            "-delta(4)*(exp(a)+exp(b))",
            "--rows",
            "8",
            "--format",
            "text",
        ],
        expected: include_str!("../golden/figure_b.text"),
    },
    GoldenCase {
        name: "figure_b.csv",
        args: &[
            "char",
            "--expr",
            "-delta(4)*(exp(a)+exp(b))",
            "--rows",
            "8",
            "--format",
            "csv",
        ],
        expected: include_str!("../golden/figure_b.csv"),
    },
    GoldenCase {
        name: "figure_b.json",
        args: &[
            "char",
            "--expr",
            "-delta(4)*(exp(a)+exp(b))",
            "--rows",
            "8",
            "--format",
            "json",
        ],
        expected: include_str!("../golden/figure_b.json"),
    },
    GoldenCase {
        name: "figure_c.text",
        args: &["char", "--expr", "-delta(6)", "--rows", "10", "--format", "text"],
        expected: include_str!("../golden/figure_c.text"),
    },
    GoldenCase {
        name: "figure_c.csv",
        args: &["char", "--expr", "-delta(6)", "--rows", "10", "--format", "csv"],
        expected: include_str!("../golden/figure_c.csv"),
    },
    GoldenCase {
        name: "figure_c.json",
        args: &["char", "--expr", "-delta(6)", "--rows", "10", "--format", "json"],
        expected: include_str!("../golden/figure_c.json"),
    },
    GoldenCase {
        name: "figure_d.text",
        args: &[
            "char",
            "--expr",
            "delta(2)*(exp(a)-exp(b))",
            "--rows",
            "10",
            "--format",
            "text",
        ],
        expected: include_str!("../golden/figure_d.text"),
    },
    GoldenCase {
        name: "figure_d.csv",
        args: &[
            "char",
            "--expr",
            "delta(2)*(exp(a)-exp(b))",
            "--rows",
            "10",
            "--format",
            "csv",
        ],
        expected: include_str!("../golden/figure_d.csv"),
    },
    GoldenCase {
        name: "figure_d.json",
        args: &[
            "char",
            "--expr",
            "delta(2)*(exp(a)-exp(b))",
            "--rows",
            "10",
            "--format",
            "json",
        ],
        expected: include_str!("../golden/figure_d.json"),
    },
];

/// Every documented failure mode reachable from the command line, paired
/// with the typed error name that must open the diagnostic.
pub const ERROR_CASES: &[(&[&str], &str)] = &[
    (&["char", "--expr", "delta(6"], "SyntaxError"),
    (&["char", "--expr", "delta(2)+1"], "NestedDelta"),
    (&["char", "--expr", "delta(2)*delta(3)"], "MultipleDelta"),
    (&["char", "--expr", "exp(a)*exp(b)"], "MixedBaseArithmetic"),
    (
        &["char", "--expr", "delta(2)*(exp(3)+exp(-3))"],
        "DistinctnessViolation",
    ),
    (&["char", "--expr", "exp(0)"], "ZeroScalar"),
    (&["char", "--expr", "exp(2)-exp(2)"], "ZeroFunction"),
    (&["charpoly", "--expr", "exp(a)"], "SymbolicEvaluation"),
    (
        &["eval", "--expr", "delta(2)*exp(a)", "--at", "0"],
        "SymbolicEvaluation",
    ),
    (
        &["solve-recurrence", "--char-poly", "1,0,1", "--init", "0,1"],
        "NotSplitOverRationals",
    ),
    (
        &["solve-recurrence", "--char-poly", "0,1", "--init", "1"],
        "ZeroConstantTerm",
    ),
    (
        &["solve-recurrence", "--char-poly", "-2,2", "--init", "1"],
        "NotMonic",
    ),
    (
        &["solve-recurrence", "--char-poly", "-2,1", "--init", "1,2"],
        "InitialLengthMismatch",
    ),
    (
        &["poincare", "--dims", "9,9", "-r", "9", "-n", "0", "--oracle"],
        "EnumerationTooLarge",
    ),
];

/// Draws a random nonzero canonical function: period up to `max_r`, up to
/// `max_terms` terms with coefficient degree ≤ 2 and small rational bases
/// (plus symbols from a fixed pool unless `numeric_only`). Draws violating
/// the base-distinctness rule are resampled.
pub fn random_canonical(
    rng: &mut impl Rng,
    max_r: u64,
    max_terms: usize,
    numeric_only: bool,
) -> CanonicalExpPoly {
    loop {
        let r = rng.gen_range(1..=max_r);
        let count = rng.gen_range(1..=max_terms);
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let degree = rng.gen_range(0..=2usize);
            let coeffs: Vec<Rational> = (0..=degree)
                .map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into()))
                .collect();
            let poly = PolynomialQ::from_coeffs(coeffs);
            let base = if numeric_only || rng.gen_bool(0.7) {
                let p = loop {
                    let p = rng.gen_range(-4i64..=4);
                    if p != 0 {
                        break p;
                    }
                };
                let q = rng.gen_range(1i64..=3);
                ScalarBase::Numeric(Rational::new(p.into(), q.into()))
            } else {
                let pool = ["a", "b", "c"];
                ScalarBase::Symbol(pool[rng.gen_range(0..pool.len())].to_owned())
            };
            terms.push((poly, base));
        }
        if let Ok(phi) = make_canonical(r, terms) {
            if !phi.is_zero() {
                return phi;
            }
        }
    }
}

/// The `d`-th cyclotomic polynomial via `Φ_d = (t^d − 1) / ∏_{e|d, e<d} Φ_e`.
pub fn cyclotomic(d: u64) -> PolynomialQ {
    let mut coeffs = vec![Rational::zero(); d as usize + 1];
    coeffs[0] = -Rational::one();
    coeffs[d as usize] = Rational::one();
    let mut quotient = PolynomialQ::from_coeffs(coeffs);
    for e in divisors(d) {
        if e < d {
            let (q, rem) = quotient.div_rem(&cyclotomic(e));
            assert!(rem.is_zero(), "cyclotomic division is exact");
            quotient = q;
        }
    }
    quotient
}

/// The monic irreducible factor `λ^{deg Φ_d}·Φ_d(t/λ)` of `t^r − λ^r`
/// attached to the divisor `d`.
pub fn scaled_cyclotomic(d: u64, lambda: &Rational) -> PolynomialQ {
    let phi = cyclotomic(d);
    let deg = phi.degree().expect("cyclotomics are nonzero");
    let coeffs = (0..=deg)
        .map(|j| {
            let mut power = Rational::one();
            for _ in 0..(deg - j) {
                power *= lambda;
            }
            phi.coeff(j) * power
        })
        .collect();
    PolynomialQ::from_coeffs(coeffs)
}
