//! Parser for the expression language.
//!
//! Grammar (whitespace-insensitive; positions in diagnostics are 1-based
//! character offsets):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?            -- exponent: nonnegative integer
//! atom   := rational                    -- digits, optionally / digits
//!         | 'm'                         -- the polynomial indeterminate
//!         | 'exp' '(' ['-'] (rational | ident) ')'
//!         | 'delta' '(' uint ')'        -- positive integer
//!         | '(' expr ')'
//! ```
//!
//! `/` occurs only inside rational literals. `m`, `exp`, and `delta` are
//! reserved; any other identifier names a symbolic exponential base.
//!
//! Structural rule enforced after parsing: `delta(r)` may appear at most
//! once, and only as a factor of the top-level product (unary minus is
//! transparent). Anything else — delta under `+`, `-` between terms, an
//! exponent, or a second delta — is rejected with a typed error.

use crate::ast::Expr;
use crate::error::CliError;
use epchar::exppoly::ScalarBase;
use epchar::{BigInt, Rational};
use num::Zero;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(BigInt),
    Ident(String),
    M,
    ExpKw,
    DeltaKw,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    /// 1-based character offset of the token's first character.
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>, CliError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits
                    .parse::<BigInt>()
                    .expect("digit runs always parse as integers");
                toks.push(Spanned {
                    tok: Tok::Number(value),
                    pos,
                });
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "m" => Tok::M,
                    "exp" => Tok::ExpKw,
                    "delta" => Tok::DeltaKw,
                    _ => Tok::Ident(word),
                };
                toks.push(Spanned { tok, pos });
                continue;
            }
            other => {
                return Err(syntax(pos, format!("unexpected character '{other}'")))
            }
        };
        toks.push(Spanned { tok, pos });
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    cursor: usize,
    /// Position just past the end of the input, for EOF diagnostics.
    end: usize,
}

/// Parses `src` and checks the delta-placement rule.
pub fn parse_expression(src: &str) -> Result<Expr, CliError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        cursor: 0,
        end: src.chars().count() + 1,
    };
    let expr = p.expr()?;
    if let Some(s) = p.peek() {
        return Err(syntax(s.pos, "unexpected trailing input"));
    }
    check_delta_placement(&expr)?;
    Ok(expr)
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.cursor)
    }

    fn next(&mut self) -> Option<Spanned> {
        let s = self.toks.get(self.cursor).cloned();
        if s.is_some() {
            self.cursor += 1;
        }
        s
    }

    fn eat(&mut self, want: Tok, what: &str) -> Result<usize, CliError> {
        match self.next() {
            Some(s) if s.tok == want => Ok(s.pos),
            Some(s) => Err(syntax(s.pos, format!("expected {what}"))),
            None => Err(syntax(self.end, format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Plus) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.unary()?;
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Star)) {
            self.cursor += 1;
            let rhs = self.unary()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if matches!(self.peek().map(|s| &s.tok), Some(Tok::Minus)) {
            self.cursor += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if matches!(self.peek().map(|s| &s.tok), Some(Tok::Caret)) {
            self.cursor += 1;
            let (value, pos) = self.integer("a nonnegative integer exponent")?;
            let exponent = u32::try_from(value)
                .map_err(|_| syntax(pos, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    /// A bare integer literal (no sign, no slash), returned with its position.
    fn integer(&mut self, what: &str) -> Result<(u64, usize), CliError> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Number(n),
                pos,
            }) => {
                let value = u64::try_from(&n)
                    .map_err(|_| syntax(pos, format!("{what} is out of range")))?;
                Ok((value, pos))
            }
            Some(s) => Err(syntax(s.pos, format!("expected {what}"))),
            None => Err(syntax(self.end, format!("expected {what}, found end of input"))),
        }
    }

    /// `p` or `p/q` built from unsigned number tokens already lexed.
    fn rational_tail(&mut self, numerator: BigInt) -> Result<Rational, CliError> {
        if matches!(self.peek().map(|s| &s.tok), Some(Tok::Slash)) {
            self.cursor += 1;
            match self.next() {
                Some(Spanned {
                    tok: Tok::Number(d),
                    pos,
                }) => {
                    if d.is_zero() {
                        return Err(syntax(pos, "zero denominator in rational literal"));
                    }
                    Ok(Rational::new(numerator, d))
                }
                Some(s) => Err(syntax(s.pos, "expected a denominator after '/'")),
                None => Err(syntax(
                    self.end,
                    "expected a denominator after '/', found end of input",
                )),
            }
        } else {
            Ok(Rational::from_integer(numerator))
        }
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Number(n),
                ..
            }) => Ok(Expr::Rational(self.rational_tail(n)?)),
            Some(Spanned { tok: Tok::M, .. }) => Ok(Expr::M),
            Some(Spanned {
                tok: Tok::ExpKw, ..
            }) => {
                self.eat(Tok::LParen, "'(' after exp")?;
                let base = self.exp_base()?;
                self.eat(Tok::RParen, "')' closing exp")?;
                Ok(Expr::Exp(base))
            }
            Some(Spanned {
                tok: Tok::DeltaKw, ..
            }) => {
                self.eat(Tok::LParen, "'(' after delta")?;
                let (r, pos) = self.integer("a positive integer period")?;
                if r == 0 {
                    return Err(syntax(pos, "delta period must be positive"));
                }
                self.eat(Tok::RParen, "')' closing delta")?;
                Ok(Expr::Delta(r))
            }
            Some(Spanned {
                tok: Tok::LParen, ..
            }) => {
                let inner = self.expr()?;
                self.eat(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Spanned {
                tok: Tok::Ident(name),
                pos,
            }) => Err(syntax(
                pos,
                format!("bare identifier '{name}' (symbolic bases go inside exp(...))"),
            )),
            Some(s) => Err(syntax(s.pos, "expected a value")),
            None => Err(syntax(self.end, "expected a value, found end of input")),
        }
    }

    /// The argument of `exp(...)`: an optionally negated rational literal,
    /// or a non-reserved identifier.
    fn exp_base(&mut self) -> Result<ScalarBase, CliError> {
        let negate = if matches!(self.peek().map(|s| &s.tok), Some(Tok::Minus)) {
            self.cursor += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Spanned {
                tok: Tok::Number(n),
                ..
            }) => {
                let q = self.rational_tail(n)?;
                Ok(ScalarBase::Numeric(if negate { -q } else { q }))
            }
            Some(Spanned {
                tok: Tok::Ident(name),
                pos,
            }) => {
                if negate {
                    Err(syntax(pos, "a symbolic base cannot carry a sign"))
                } else {
                    Ok(ScalarBase::Symbol(name))
                }
            }
            Some(Spanned { tok: Tok::M, pos }) => Err(syntax(
                pos,
                "'m' is the polynomial indeterminate and cannot be an exponential base",
            )),
            Some(s) => Err(syntax(s.pos, "expected a rational or identifier base")),
            None => Err(syntax(
                self.end,
                "expected a rational or identifier base, found end of input",
            )),
        }
    }
}

/// Enforces the structural delta rule. `Neg` and `*` are transparent, so a
/// factor chain like `-delta(4)*(exp(a)+exp(b))` is fine; a delta under
/// `+`/`-`, inside `exp`-level parentheses of a sum, or raised to a power
/// is not, and two deltas in the product are rejected separately.
fn check_delta_placement(e: &Expr) -> Result<(), CliError> {
    let mut count = 0usize;
    walk_factors(e, &mut count)?;
    if count > 1 {
        return Err(CliError::MultipleDelta);
    }
    Ok(())
}

fn walk_factors(e: &Expr, count: &mut usize) -> Result<(), CliError> {
    match e {
        Expr::Delta(_) => {
            *count += 1;
            Ok(())
        }
        Expr::Neg(a) => walk_factors(a, count),
        Expr::Mul(a, b) => {
            walk_factors(a, count)?;
            walk_factors(b, count)
        }
        Expr::Pow(base, k) if contains_delta(base) => match k {
            0 => Err(CliError::NestedDelta),
            1 => walk_factors(base, count),
            _ => Err(CliError::MultipleDelta),
        },
        other => {
            if contains_delta(other) {
                Err(CliError::NestedDelta)
            } else {
                Ok(())
            }
        }
    }
}

fn contains_delta(e: &Expr) -> bool {
    match e {
        Expr::Delta(_) => true,
        Expr::Rational(_) | Expr::M | Expr::Exp(_) => false,
        Expr::Neg(a) | Expr::Pow(a, _) => contains_delta(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            contains_delta(a) || contains_delta(b)
        }
    }
}
