//! Reader for rational-function expressions.
//!
//! Accepts the canonical text produced by `Display` plus ordinary hand
//! notation: `+ - * /`, `^` with signed integer exponents, parentheses,
//! integer literals, the single-letter variables `z w q t u`, juxtaposition
//! as multiplication (`qt^2`), and the Unicode minus sign.

use std::str::FromStr;

use num_bigint::BigInt;
use super::{AlgError, MPoly, RatFunc, Scalar, Var};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, AlgError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c => match Var::from_char(c) {
                Some(v) => Tok::Var(v),
                None => {
                    return Err(AlgError::Parse {
                        pos,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            },
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgError> {
        Err(AlgError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFunc, AlgError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, AlgError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| AlgError::Parse {
                        pos,
                        msg: "division by zero".into(),
                    })?;
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, AlgError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, AlgError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let e = self.exponent()?;
        if e < 0 && base.is_zero() {
            return Err(AlgError::Parse {
                pos,
                msg: "negative power of zero".into(),
            });
        }
        Ok(base.pow(e))
    }

    fn exponent(&mut self) -> Result<i32, AlgError> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.bump();
        }
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -1
            }
            Some(Tok::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        let e = match self.bump() {
            Some(Tok::Num(n)) => match i32::try_from(n) {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            },
            _ => {
                self.at -= 1;
                return self.err("expected integer exponent");
            }
        };
        if paren && self.bump() != Some(Tok::RParen) {
            self.at -= 1;
            return self.err("expected ')'");
        }
        Ok(sign * e)
    }

    fn atom(&mut self) -> Result<RatFunc, AlgError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(RatFunc::from_scalar(Scalar::from_integer(n))),
            Some(Tok::Var(v)) => Ok(RatFunc::var(v)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.at -= 1;
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            _ => {
                self.at -= 1;
                self.err("expected a number, variable or '('")
            }
        }
    }
}

impl FromStr for RatFunc {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(AlgError::Parse {
                pos: 0,
                msg: "empty expression".into(),
            });
        }
        let mut p = Parser {
            toks,
            at: 0,
            end: s.len(),
        };
        let value = p.expr()?;
        if p.at < p.toks.len() {
            return p.err("trailing input");
        }
        Ok(value)
    }
}

impl FromStr for MPoly {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let f: RatFunc = s.parse()?;
        f.as_polynomial().ok_or_else(|| AlgError::NotPolynomial {
            witness: f.den().to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_text() {
        for s in [
            "z^2 - w^2",
            "(q*t^2)/(q*t^2 - 1)",
            "3/2*z*w^-1 - w^2 + 1",
            "-u^-2",
            "0",
        ] {
            let f: RatFunc = s.parse().unwrap();
            assert_eq!(f.to_string(), s, "{s}");
        }
    }

    #[test]
    fn hand_notation() {
        let a: RatFunc = "qt^2 + t".parse().unwrap();
        let b: RatFunc = "t*(q*t + 1)".parse().unwrap();
        assert_eq!(a, b);
        let c: RatFunc = "(z − w)^(2)".parse().unwrap();
        assert_eq!(c, "z^2 - 2zw + w^2".parse().unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!("1/0".parse::<RatFunc>(), Err(AlgError::Parse { .. })));
        assert!(matches!("z + x".parse::<RatFunc>(), Err(AlgError::Parse { pos: 4, .. })));
        assert!("(z".parse::<RatFunc>().is_err());
        assert!("".parse::<RatFunc>().is_err());
        assert!("z^".parse::<RatFunc>().is_err());
    }
}
