//! Emitters. The text table mirrors the array layout — rows k top to
//! bottom, columns n left to right — with right-aligned entries. CSV is
//! the bare grid. JSON keeps rationals as strings so nothing is rounded.
//! Closed-form solutions are rendered in the input grammar and re-parse.

use std::fmt::Write;

use epchar::characters::CharacterArray;
use epchar::exppoly::FreeExpPoly;
use epchar::poly::PolynomialQ;
use epchar::series::TruncatedSeries;
use epchar::Rational;
use num::{One, Signed, Zero};

pub fn render_text(arr: &CharacterArray) -> String {
    let width = arr
        .rows()
        .iter()
        .flatten()
        .map(|e| e.to_string().len())
        .max()
        .unwrap_or(1);
    let mut s = format!("phi0 = {}\n", arr.phi0());
    for row in arr.rows() {
        let line: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn render_csv(arr: &CharacterArray) -> String {
    let mut s = String::new();
    for row in arr.rows() {
        let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

pub fn render_json(arr: &CharacterArray) -> String {
    let mut s = String::from("{\n");
    let _ = writeln!(s, "  \"phi0\": \"{}\",", arr.phi0());
    let _ = writeln!(s, "  \"r\": {},", arr.r());
    s.push_str("  \"rows\": [\n");
    let count = arr.row_count();
    for (i, row) in arr.rows().iter().enumerate() {
        let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        let comma = if i + 1 < count { "," } else { "" };
        let _ = writeln!(s, "    [{}]{comma}", line.join(", "));
    }
    s.push_str("  ],\n");
    s.push_str("  \"weights\": {\n");
    let (alpha, _) = arr.weight_of_cell(0, 0);
    let _ = writeln!(s, "    \"alpha_coeff_at_k0\": \"{alpha}\"");
    s.push_str("  }\n}\n");
    s
}

/// Series coefficients on one line: `1, 0, 2, 5`.
pub fn render_series_line(series: &TruncatedSeries) -> String {
    let parts: Vec<String> = series.coeffs().iter().map(|c| c.to_string()).collect();
    let mut s = parts.join(", ");
    s.push('\n');
    s
}

/// A closed form `Σ a_λ(m)·λ^m` in the input grammar, groups in
/// increasing base order: `m*exp(-3) + (m^2 + 1/2)*exp(2)`.
pub fn render_closed_form(f: &FreeExpPoly) -> String {
    if f.is_zero() {
        return "0\n".to_owned();
    }
    let mut out = String::new();
    for (lambda, poly) in f.coefficient_polynomials() {
        let (negative, magnitude) = group_term(&lambda, &poly);
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&magnitude);
    }
    out.push('\n');
    out
}

/// One `a_λ(m)·λ^m` group as (sign, magnitude-text). Single monomials
/// render flat (`3*m^2*exp(2)`); longer polynomials are parenthesized with
/// a positive leading coefficient so the sign can be hoisted out.
fn group_term(lambda: &Rational, poly: &PolynomialQ) -> (bool, String) {
    let one = Rational::one();
    let monomials: Vec<usize> = (0..=poly.degree().expect("groups are nonzero"))
        .filter(|&k| !poly.coeff(k).is_zero())
        .collect();

    if let [k] = monomials.as_slice() {
        let c = poly.coeff(*k);
        let negative = c.is_negative();
        let magnitude = c.abs();
        let mut parts: Vec<String> = Vec::new();
        if !(magnitude == one && (*k > 0 || *lambda != one)) {
            parts.push(magnitude.to_string());
        }
        match k {
            0 => {}
            1 => parts.push("m".to_owned()),
            _ => parts.push(format!("m^{k}")),
        }
        if *lambda != one {
            parts.push(format!("exp({lambda})"));
        }
        let text = if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        };
        return (negative, text);
    }

    let negative = poly
        .coeff(poly.degree().expect("groups are nonzero"))
        .is_negative();
    let oriented = if negative { poly.neg() } else { poly.clone() };
    let mut text = format!("({})", poly_in_m(&oriented));
    if *lambda != one {
        let _ = write!(text, "*exp({lambda})");
    }
    (negative, text)
}

/// A polynomial with positive leading coefficient, highest degree first:
/// `m^2 - 3*m + 1/2`.
fn poly_in_m(p: &PolynomialQ) -> String {
    let one = Rational::one();
    let mut out = String::new();
    for k in (0..=p.degree().expect("nonzero polynomial")).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            debug_assert!(!c.is_negative(), "leading coefficient was oriented");
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let magnitude = c.abs();
        let coeff_needed = !(magnitude == one && k > 0);
        if coeff_needed {
            out.push_str(&magnitude.to_string());
        }
        match k {
            0 => {}
            1 => {
                if coeff_needed {
                    out.push('*');
                }
                out.push('m');
            }
            _ => {
                if coeff_needed {
                    out.push('*');
                }
                let _ = write!(out, "m^{k}");
            }
        }
    }
    out
}
