//! Expression trees for the input language: rational literals, the
//! indeterminate `m`, exponentials `exp(λ)`, period factors `delta(r)`,
//! and the arithmetic connectives. The renderer emits text that parses
//! back to the same tree, which keeps closed-form output machine-readable.

use epchar::exppoly::ScalarBase;
use epchar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A nonnegative literal like `5` or `3/2` (signs parse as [`Expr::Neg`]).
    Rational(Rational),
    /// The polynomial indeterminate `m`.
    M,
    /// `exp(λ)` with a numeric or symbolic base.
    Exp(ScalarBase),
    /// `delta(r)`, the indicator of `rZ` scaled by `r`.
    Delta(u64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Binding strength, loosest to tightest: `+ −` < `*` < unary `−` < `^`
/// < atoms. Parenthesization during rendering compares these levels.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Rational(_) | Expr::M | Expr::Exp(_) | Expr::Delta(_) => 5,
    }
}

/// Renders the tree in the input grammar. Operators are left-associative,
/// so a right child at the same level is parenthesized to preserve shape;
/// `parse(render(e)) == e` whenever `e` came out of the parser.
pub fn render(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(e, &mut s);
    s
}

fn write_expr(e: &Expr, s: &mut String) {
    match e {
        Expr::Rational(q) => s.push_str(&q.to_string()),
        Expr::M => s.push('m'),
        Expr::Exp(base) => {
            s.push_str("exp(");
            s.push_str(&base.to_string());
            s.push(')');
        }
        Expr::Delta(r) => {
            s.push_str("delta(");
            s.push_str(&r.to_string());
            s.push(')');
        }
        Expr::Neg(a) => {
            s.push('-');
            write_child(a, precedence(e), s);
        }
        Expr::Add(a, b) => {
            write_child_left(a, precedence(e), s);
            s.push_str(" + ");
            write_child(b, precedence(e), s);
        }
        Expr::Sub(a, b) => {
            write_child_left(a, precedence(e), s);
            s.push_str(" - ");
            write_child(b, precedence(e), s);
        }
        Expr::Mul(a, b) => {
            write_child_left(a, precedence(e), s);
            s.push('*');
            // A bare unary minus on the right of `*` would parse, but
            // parenthesizing it reads far better: `a*(-b)` over `a*-b`.
            write_child(b, precedence(e) + 1, s);
        }
        Expr::Pow(a, k) => {
            // The grammar only exponentiates atoms.
            write_child(a, 5, s);
            s.push('^');
            s.push_str(&k.to_string());
        }
    }
}

/// Left children keep their own level (left associativity needs no parens).
fn write_child_left(e: &Expr, parent: u8, s: &mut String) {
    if precedence(e) < parent {
        s.push('(');
        write_expr(e, s);
        s.push(')');
    } else {
        write_expr(e, s);
    }
}

/// Right children and unary operands are wrapped when they bind no tighter
/// than the parent.
fn write_child(e: &Expr, parent: u8, s: &mut String) {
    if precedence(e) <= parent && precedence(e) < 5 {
        s.push('(');
        write_expr(e, s);
        s.push(')');
    } else {
        write_expr(e, s);
    }
}
