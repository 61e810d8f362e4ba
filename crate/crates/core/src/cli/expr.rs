//! Expression parsing for the command layer.
//!
//! Grammar, whitespace-insensitive, standard precedence:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)*
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers resolve to declared variables or the field generator.
//! Every error carries the byte offset where parsing stopped.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::field::{FieldElement, NumberFieldCtx};
use crate::field::RatFunc;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".to_string(),
            Tok::Minus => "`-`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Slash => "`/`".to_string(),
            Tok::Caret => "`^`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digit run");
                out.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected character `{}`", &src[i..].chars().next().unwrap()),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a [String],
    field: Option<&'a Arc<NumberFieldCtx>>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let msg = format!("expected {}, found {}", want.describe(), t.describe());
                self.fail(msg)
            }
            None => self.fail(format!("expected {}, found end of input", want.describe())),
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(Error::Parse {
                            offset: at,
                            message: "division by zero".to_string(),
                        });
                    }
                    acc = &acc / &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let negative = if matches!(self.peek(), Some(Tok::Minus)) {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.offset();
            let Some(Tok::Int(n)) = self.bump() else {
                return Err(Error::Parse {
                    offset: at,
                    message: "expected integer exponent after `^`".to_string(),
                });
            };
            let Some(mut e) = n.to_i64() else {
                return Err(Error::Parse { offset: at, message: "exponent out of range".to_string() });
            };
            if negative {
                e = -e;
            }
            if e < 0 && base.is_zero() {
                return Err(Error::Parse { offset: at, message: "division by zero".to_string() });
            }
            base = base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => {
                Ok(RatFunc::constant(self.names.len(), FieldElement::from_bigint(n)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(idx) = self.names.iter().position(|v| *v == name) {
                    return Ok(RatFunc::var(self.names.len(), idx));
                }
                if let Some(ctx) = self.field {
                    if ctx.generator() == name {
                        return Ok(RatFunc::constant(
                            self.names.len(),
                            FieldElement::generator(ctx),
                        ));
                    }
                }
                Err(Error::Parse { offset: at, message: format!("unknown identifier `{name}`") })
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => {
                Err(Error::Parse { offset: at, message: format!("unexpected {}", t.describe()) })
            }
            None => {
                Err(Error::Parse { offset: at, message: "unexpected end of input".to_string() })
            }
        }
    }
}

/// Parses `src` into a rational function over the declared variables.
///
/// `names` fixes both the variable symbols and their order (first name =
/// most significant in the graded ordering).  When `field` is given, its
/// generator symbol is also in scope as a constant.
pub fn parse_expression(
    src: &str,
    names: &[String],
    field: Option<&Arc<NumberFieldCtx>>,
) -> Result<RatFunc> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, end: src.len(), names, field };
    let value = p.expr()?;
    if let Some(t) = p.peek() {
        let msg = format!("unexpected {} after complete expression", t.describe());
        return p.fail(msg);
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::MultiPoly;
    use num_rational::BigRational;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn parse(src: &str, vars: &[&str]) -> RatFunc {
        parse_expression(src, &names(vars), None).unwrap()
    }

    #[test]
    fn sums_of_variables() {
        let f = parse("a1 + a3", &["a1", "a2", "a3"]);
        assert_eq!(f, &RatFunc::var(3, 0) + &RatFunc::var(3, 2));
    }

    #[test]
    fn polynomial_with_powers_and_products() {
        let f = parse("(a2^2*a3 + a2*a3 + 1)", &["a1", "a2", "a3"]);
        let p = MultiPoly::from_terms(
            3,
            vec![
                (vec![0, 2, 1], FieldElement::one()),
                (vec![0, 1, 1], FieldElement::one()),
                (vec![0, 0, 0], FieldElement::one()),
            ],
        );
        assert_eq!(f, RatFunc::from_poly(p));
    }

    #[test]
    fn unbalanced_paren_reports_the_eof_offset() {
        let err = parse_expression("1/(a1-1", &names(&["a1"]), None).unwrap_err();
        match err {
            Error::Parse { offset, message } => {
                assert_eq!(offset, 7);
                assert!(message.contains("`)`"), "message was {message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn precedence_binds_power_then_product_then_sum() {
        let a1 = RatFunc::var(1, 0);
        let expected = &RatFunc::one(1) - &a1.pow(2).scale(&FieldElement::from_fraction(1, 2));
        assert_eq!(parse("1 - 2*a1^2/4", &["a1"]), expected);
        assert_eq!(parse("-a1^2", &["a1"]), -&a1.pow(2));
        assert_eq!(parse("a1^-2", &["a1"]), a1.pow(-2));
    }

    #[test]
    fn division_chains_left_to_right() {
        let a1 = RatFunc::var(1, 0);
        let expected = &(&(&a1 + &RatFunc::one(1)) / &(&a1 - &RatFunc::one(1))) / &a1;
        assert_eq!(parse("(a1+1)/(a1-1)/a1", &["a1"]), expected);
    }

    #[test]
    fn rational_literals_via_division() {
        let f = parse("-3/4", &[]);
        assert_eq!(f, RatFunc::constant(0, FieldElement::from_fraction(-3, 4)));
    }

    #[test]
    fn unknown_identifier_is_an_error_with_offset() {
        let err = parse_expression("a1 + b2", &names(&["a1"]), None).unwrap_err();
        match err {
            Error::Parse { offset, message } => {
                assert_eq!(offset, 5);
                assert!(message.contains("b2"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn division_by_a_zero_polynomial_is_rejected() {
        let err = parse_expression("1/(a1 - a1)", &names(&["a1"]), None).unwrap_err();
        match err {
            Error::Parse { message, .. } => assert!(message.contains("division by zero")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn generator_symbol_parses_in_an_extension_field() {
        // theta^2 = theta + 1
        let ctx = NumberFieldCtx::new(
            vec![
                BigRational::from_integer((-1).into()),
                BigRational::from_integer((-1).into()),
                BigRational::from_integer(1.into()),
            ],
            "t",
        )
        .unwrap();
        let f = parse_expression("t^2 - t", &names(&["a1"]), Some(&ctx)).unwrap();
        assert_eq!(f, RatFunc::one(1));
        let err = parse_expression("t", &names(&["a1"]), None).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn rendered_output_parses_back_unchanged() {
        let ctx = NumberFieldCtx::new(
            vec![
                BigRational::from_integer((-2).into()),
                BigRational::from_integer(0.into()),
                BigRational::from_integer(1.into()),
            ],
            "r",
        )
        .unwrap();
        let theta = FieldElement::generator(&ctx);
        let vars = names(&["x", "y", "z"]);
        let samples = vec![
            RatFunc::zero(3),
            RatFunc::constant(3, FieldElement::from_fraction(-7, 3)),
            &RatFunc::var(3, 0) - &RatFunc::var(3, 2).pow(3),
            &RatFunc::one(3) / &(&RatFunc::var(3, 0) * &RatFunc::var(3, 2).pow(2)),
            &(&RatFunc::var(3, 1) + &RatFunc::one(3)) / &(&RatFunc::var(3, 0) - &RatFunc::constant(3, FieldElement::from_integer(2))),
            RatFunc::var(3, 1).scale(&theta).pow(-2),
            &RatFunc::constant(3, &theta + &FieldElement::one()) * &RatFunc::var(3, 0),
        ];
        for f in samples {
            let text = f.render(&["x", "y", "z"]);
            let back = parse_expression(&text, &vars, Some(&ctx)).unwrap();
            assert_eq!(back, f, "round trip failed for {text}");
        }
    }
}
