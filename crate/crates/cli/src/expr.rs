//! Form expressions: a small product language over named forms.
//!
//! ```text
//! expr   := power (('*' | '/') power)*
//! power  := atom ('^' ['-'] integer)?
//! atom   := name | integer | '(' expr ')'
//! name   := E<k> | delta | j | eigenform<k> | g<m>
//! ```

use std::fmt;

use modform_core::classical::{delta, eisenstein, j_invariant};
use modform_core::hecke::eigenform;
use modform_core::nonordinary::g_form;
use modform_core::qseries::at_precision;
use modform_core::{BigInt, BigRational, QSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leaf {
    Eisenstein(i64),
    Delta,
    J,
    Eigenform(i64),
    G(i64),
    Constant(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Leaf(Leaf),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.src[self.pos..].starts_with(&pred) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some('-');
        if negative {
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err(start, "expected an integer exponent");
        }
        let Ok(e) = digits.parse::<i64>() else {
            return self.err(start, "exponent out of range");
        };
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start..].chars().next().unwrap();
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(')') {
                return self.err(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let digits = self.take_while(|c| c.is_ascii_digit());
            let n: BigInt = digits.parse().expect("digits");
            return Ok(Expr::Leaf(Leaf::Constant(n)));
        }
        if !c.is_ascii_alphabetic() {
            return self.err(start, format!("unexpected character '{c}'"));
        }
        let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        let split = word
            .find(|c: char| c.is_ascii_digit())
            .unwrap_or(word.len());
        let (name, index) = word.split_at(split);
        let index = || -> Result<i64, ParseError> {
            index.parse().map_err(|_| ParseError {
                pos: start + split,
                message: format!("'{name}' needs a numeric index"),
            })
        };
        let leaf = match name {
            "E" => Leaf::Eisenstein(index()?),
            "eigenform" => Leaf::Eigenform(index()?),
            "g" => Leaf::G(index()?),
            "delta" | "Delta" if split == word.len() => Leaf::Delta,
            "j" if split == word.len() => Leaf::J,
            _ => return self.err(start, format!("unknown form '{word}'")),
        };
        Ok(Expr::Leaf(leaf))
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    if !src.is_ascii() {
        let pos = src.find(|c: char| !c.is_ascii()).unwrap();
        return p.err(pos, "non-ASCII character");
    }
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{c}'"));
    }
    Ok(e)
}

fn eval_at(e: &Expr, prec: i64) -> modform_core::Result<QSeries> {
    Ok(match e {
        Expr::Leaf(Leaf::Eisenstein(k)) => eisenstein(*k, prec)?,
        Expr::Leaf(Leaf::Delta) => delta(prec),
        Expr::Leaf(Leaf::J) => j_invariant(prec),
        Expr::Leaf(Leaf::Eigenform(k)) => eigenform(*k, prec)?.with_weight(Some(*k)),
        Expr::Leaf(Leaf::G(m)) => g_form(*m, prec)?,
        Expr::Leaf(Leaf::Constant(n)) => {
            QSeries::monomial(0, BigRational::from_integer(n.clone()), prec).with_weight(Some(0))
        }
        Expr::Mul(a, b) => eval_at(a, prec)?.multiply(&eval_at(b, prec)?),
        Expr::Div(a, b) => eval_at(a, prec)?.multiply(&eval_at(b, prec)?.pow(-1)?),
        Expr::Pow(a, n) => eval_at(a, prec)?.pow(*n)?,
    })
}

/// Evaluates to exactly `O(q^prec)`, raising the working precision as needed
/// to make up for poles.
pub fn evaluate(e: &Expr, prec: i64) -> modform_core::Result<QSeries> {
    at_precision(prec, |w| eval_at(e, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn parses_products_and_powers() {
        let e = parse("delta*E6*E4^2").unwrap();
        let f = evaluate(&e, 20).unwrap();
        assert_eq!(f.weight(), Some(26));
        assert_eq!(f.coefficient(2).unwrap(), int(-48));
        assert_eq!(f.prec(), 20);
    }

    #[test]
    fn negative_exponents_and_division_agree() {
        let a = evaluate(&parse("E4^2 * E6^3 * delta^-2").unwrap(), 10).unwrap();
        let b = evaluate(&parse("E4^2*E6^3/(delta*delta)").unwrap(), 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.weight(), Some(2));
        assert_eq!(a.valuation(), -2);
        assert_eq!(a.prec(), 10);
    }

    #[test]
    fn j_and_constants() {
        let f = evaluate(&parse("j").unwrap(), 2).unwrap();
        assert_eq!(f.coefficient(-1).unwrap(), int(1));
        assert_eq!(f.coefficient(0).unwrap(), int(744));
        let g = evaluate(&parse("1728 * delta").unwrap(), 3).unwrap();
        assert_eq!(g.coefficient(1).unwrap(), int(1728));
        assert_eq!(g.weight(), Some(12));
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse("E4 * ").unwrap_err().pos, 5);
        assert_eq!(parse("E4 ^ x").unwrap_err().pos, 5);
        assert_eq!(parse("delta + E4").unwrap_err().pos, 6);
        assert_eq!(parse("foo").unwrap_err().pos, 0);
        assert_eq!(parse("(E4").unwrap_err().pos, 3);
        assert_eq!(parse("E").unwrap_err().pos, 1);
        assert_eq!(parse("E4*gx").unwrap_err().pos, 3);
    }

    #[test]
    fn core_errors_surface() {
        let e = parse("E5").unwrap();
        assert!(evaluate(&e, 4).is_err());
        let e = parse("eigenform24").unwrap();
        assert!(evaluate(&e, 4).is_err());
    }
}
