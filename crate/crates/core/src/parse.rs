//! Expression parser shared by the command line and tests.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := "-"? factor (("*" | "/")? factor)*
//! factor  := atom ("^" "*" | "^" exponent)*
//! exponent:= "-"? INT | "(" "-"? INT "/" INT ")" | "{" "-"? INT "/" INT "}"
//! atom    := INT | IDENT | "(" expr ")"
//! ```
//!
//! `q` is the deformation parameter; `q^(k/2)` is allowed. Juxtaposition is
//! multiplication. Division is only by nonzero scalars.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linear::LinComb;
use crate::ncpoly::{Alphabet, NCExpr, Word};
use crate::scalars::{qh, Scalar};
use crate::uqsl2::{self, Pbw, UqElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("at {position}: unknown generator `{name}` for {algebra}")]
    UnknownGenerator {
        position: usize,
        name: String,
        algebra: String,
    },
    #[error("at {position}: {message}")]
    Invalid { position: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|x| x.1).collect())));
        } else if "+-*/^(){}".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                position: pos,
                expected: "an expression".into(),
                found: format!("`{c}`"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Where parsed expressions are evaluated.
pub trait ParseTarget {
    type Key: Ord + Clone;

    fn algebra_name(&self) -> String;
    fn unit_key(&self) -> Self::Key;
    /// A generator, or `name^*` when `starred`; `None` if unknown.
    fn generator(&self, name: &str, starred: bool) -> Option<LinComb<Self::Key>>;
    fn mul(&self, a: &LinComb<Self::Key>, b: &LinComb<Self::Key>) -> LinComb<Self::Key>;
    fn star(&self, _e: &LinComb<Self::Key>) -> Option<LinComb<Self::Key>> {
        None
    }
    fn inverse(&self, _e: &LinComb<Self::Key>) -> Option<LinComb<Self::Key>> {
        None
    }
}

/// Words in a free algebra over an alphabet; nothing is rewritten.
pub struct FreeTarget<'a> {
    pub alphabet: &'a Alphabet,
    pub name: String,
}

impl ParseTarget for FreeTarget<'_> {
    type Key = Word;

    fn algebra_name(&self) -> String {
        self.name.clone()
    }

    fn unit_key(&self) -> Word {
        Word::empty()
    }

    fn generator(&self, name: &str, starred: bool) -> Option<NCExpr> {
        if starred {
            let g = self.alphabet.lookup(&format!("{name}^*"))?;
            return Some(NCExpr::basis(Word(vec![g])));
        }
        self.alphabet.lookup(name).map(|g| NCExpr::basis(Word(vec![g])))
    }

    fn mul(&self, a: &NCExpr, b: &NCExpr) -> NCExpr {
        crate::ncpoly::free_mul(a, b)
    }

    fn star(&self, e: &NCExpr) -> Option<NCExpr> {
        Some(self.alphabet.star(e))
    }
}

/// `U_q(sl2)` in PBW form; generators `E`, `F`, `K`.
pub struct UqTarget;

impl ParseTarget for UqTarget {
    type Key = Pbw;

    fn algebra_name(&self) -> String {
        "uqsl2".into()
    }

    fn unit_key(&self) -> Pbw {
        Pbw::ONE
    }

    fn generator(&self, name: &str, starred: bool) -> Option<UqElement> {
        if starred {
            return None;
        }
        match name {
            "E" => Some(uqsl2::e()),
            "F" => Some(uqsl2::f()),
            "K" => Some(uqsl2::k_pow(1)),
            _ => None,
        }
    }

    fn mul(&self, a: &UqElement, b: &UqElement) -> UqElement {
        uqsl2::multiply(a, b)
    }

    fn star(&self, e: &UqElement) -> Option<UqElement> {
        Some(uqsl2::involution(e))
    }

    fn inverse(&self, e: &UqElement) -> Option<UqElement> {
        let (m, c) = e.iter().next()?;
        if e.len() != 1 || m.e != 0 || m.f != 0 {
            return None;
        }
        Some(uqsl2::k_pow(-m.k).scale(&c.inv().ok()?))
    }
}

struct Parser<'a, T: ParseTarget> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    target: &'a T,
}

type Elem<T> = LinComb<<T as ParseTarget>::Key>;

impl<T: ParseTarget> Parser<'_, T> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<R>(&self, expected: &str) -> Result<R, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos(),
            expected: expected.into(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(&format!("`{c}`"))
        }
    }

    fn scalar(&self, s: Scalar) -> Elem<T> {
        LinComb::term(self.target.unit_key(), s)
    }

    fn as_scalar(&self, e: &Elem<T>) -> Option<Scalar> {
        let unit = self.target.unit_key();
        e.keys().all(|k| *k == unit).then(|| e.coeff(&unit))
    }

    fn expr(&mut self) -> Result<Elem<T>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Elem<T>, ParseError> {
        let negate = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = self.target.mul(&acc, &f);
                }
                Tok::Sym('/') => {
                    self.bump();
                    let pos = self.pos();
                    let f = self.factor()?;
                    let s = self.as_scalar(&f).filter(|s| !s.is_zero()).ok_or(ParseError::Invalid {
                        position: pos,
                        message: "division by something other than a nonzero scalar".into(),
                    })?;
                    acc = acc.scale(&s.inv().expect("nonzero"));
                }
                _ if self.starts_factor() => {
                    let f = self.factor()?;
                    acc = self.target.mul(&acc, &f);
                }
                _ => break,
            }
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    /// Exponent in half units.
    fn exponent(&mut self) -> Result<(i64, bool), ParseError> {
        let int = |p: &mut Self| -> Result<i64, ParseError> {
            let neg = if *p.peek() == Tok::Sym('-') {
                p.bump();
                true
            } else {
                false
            };
            let save = p.at;
            match p.bump() {
                Tok::Int(n) => {
                    let v: i64 = n.try_into().map_err(|_| ParseError::Invalid {
                        position: p.pos(),
                        message: "exponent too large".into(),
                    })?;
                    Ok(if neg { -v } else { v })
                }
                _ => {
                    p.at = save;
                    p.err("an integer exponent")
                }
            }
        };
        let close = match self.peek() {
            Tok::Sym('(') => Some(')'),
            Tok::Sym('{') => Some('}'),
            _ => None,
        };
        let Some(close) = close else {
            return Ok((2 * int(self)?, false));
        };
        self.bump();
        let n = int(self)?;
        let result = if *self.peek() == Tok::Sym('/') {
            self.bump();
            let d = int(self)?;
            match d {
                1 => (2 * n, false),
                2 => (n, n % 2 != 0),
                _ => return self.err("denominator 1 or 2"),
            }
        } else {
            (2 * n, false)
        };
        self.expect(close)?;
        Ok(result)
    }

    fn factor(&mut self) -> Result<Elem<T>, ParseError> {
        let start = self.pos();
        let (mut acc, mut is_q) = self.atom()?;
        while *self.peek() == Tok::Sym('^') {
            self.bump();
            if *self.peek() == Tok::Sym('*') {
                let pos = self.pos();
                self.bump();
                acc = self.target.star(&acc).ok_or(ParseError::Invalid {
                    position: pos,
                    message: format!("no star operation on {}", self.target.algebra_name()),
                })?;
                is_q = false;
                continue;
            }
            let pos = self.pos();
            let (half, fractional) = self.exponent()?;
            if is_q {
                acc = self.scalar(qh(half));
                is_q = false;
                continue;
            }
            if fractional {
                return Err(ParseError::Invalid {
                    position: pos,
                    message: "fractional exponents apply to q only".into(),
                });
            }
            acc = self.power(acc, half / 2, start)?;
        }
        Ok(acc)
    }

    fn power(&self, base: Elem<T>, n: i64, position: usize) -> Result<Elem<T>, ParseError> {
        let base = if n < 0 {
            match self.as_scalar(&base) {
                Some(s) if !s.is_zero() => self.scalar(s.inv().unwrap()),
                _ => self.target.inverse(&base).ok_or(ParseError::Invalid {
                    position,
                    message: "negative power of a non-invertible element".into(),
                })?,
            }
        } else {
            base
        };
        let mut acc = self.scalar(Scalar::one());
        for _ in 0..n.unsigned_abs() {
            acc = self.target.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// The element and whether it is the bare symbol `q`.
    fn atom(&mut self) -> Result<(Elem<T>, bool), ParseError> {
        let pos = self.pos();
        let save = self.at;
        match self.bump() {
            Tok::Int(n) => Ok((self.scalar(Scalar::from_bigint(n)), false)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok((e, false))
            }
            Tok::Ident(name) if name == "q" => Ok((self.scalar(Scalar::q()), true)),
            Tok::Ident(name) => {
                // `z^*` may be a generator name of its own
                let starred = self.toks[self.at].1 == Tok::Sym('^') && self.toks.get(self.at + 1).map(|t| &t.1) == Some(&Tok::Sym('*'));
                if starred {
                    if let Some(g) = self.target.generator(&name, true) {
                        self.bump();
                        self.bump();
                        return Ok((g, false));
                    }
                }
                self.target
                    .generator(&name, false)
                    .map(|g| (g, false))
                    .ok_or(ParseError::UnknownGenerator {
                        position: pos,
                        name,
                        algebra: self.target.algebra_name(),
                    })
            }
            _ => {
                self.at = save;
                self.err("a number, generator or `(`")
            }
        }
    }
}

pub fn parse_with<T: ParseTarget>(text: &str, target: &T) -> Result<LinComb<T::Key>, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        target,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("an operator or end of input");
    }
    Ok(e)
}

/// Parse into the free algebra on `alphabet`.
pub fn parse_expression(text: &str, alphabet: &Alphabet, algebra: &str) -> Result<NCExpr, ParseError> {
    parse_with(
        text,
        &FreeTarget {
            alphabet,
            name: algebra.into(),
        },
    )
}

/// Parse an element of `U_q(sl2)`.
pub fn parse_uq(text: &str) -> Result<UqElement, ParseError> {
    parse_with(text, &UqTarget)
}

/// Parse a scalar such as `(1 - q^2)/(1 + q^(1/2))`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let alpha = Alphabet::new(vec![]).expect("empty alphabet");
    let e = parse_expression(text, &alpha, "scalars")?;
    Ok(e.coeff(&Word::empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{disc_alphabet, finite_alphabet, Z, ZSTAR};
    use crate::scalars::{int, q};

    #[test]
    fn disc_examples() {
        let a = disc_alphabet();
        let e = parse_expression("z^* z", &a, "pol_c_q").unwrap();
        assert_eq!(e, NCExpr::basis(Word(vec![ZSTAR, Z])));
        let e = parse_expression("q^2 z z^* + 1 - q^2", &a, "pol_c_q").unwrap();
        let mut expected = NCExpr::term(Word(vec![Z, ZSTAR]), q(2));
        expected.add_term(Word::empty(), int(1) - q(2));
        assert_eq!(e, expected);
        let e = parse_expression("(z)^* + z^*^2", &a, "pol_c_q").unwrap();
        let mut expected = NCExpr::basis(Word(vec![ZSTAR]));
        expected.add_term(Word(vec![ZSTAR, ZSTAR]), Scalar::one());
        assert_eq!(e, expected);
    }

    #[test]
    fn uq_examples() {
        let e = parse_uq("E F - F E").unwrap();
        let expected = uqsl2::k_pow(1).sub(&uqsl2::k_pow(-1)).scale(&(q(1) - q(-1)).inv().unwrap());
        assert_eq!(e, expected);
        assert_eq!(parse_uq("K^-1 K").unwrap(), uqsl2::one());
        assert_eq!(parse_uq("K E").unwrap(), uqsl2::multiply(&uqsl2::k_pow(1), &uqsl2::e()));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("q^(1/2)").unwrap(), Scalar::sqrt_q());
        assert_eq!(parse_scalar("q^{-3/2}").unwrap(), qh(-3));
        assert_eq!(parse_scalar("2/(1 - q^2)").unwrap(), int(2) * (int(1) - q(2)).inv().unwrap());
        assert_eq!(parse_scalar("(3/2)*q^2").unwrap(), Scalar::from_ratio(3, 2).unwrap() * q(2));
        assert_eq!(parse_scalar("-q^-1").unwrap(), -q(-1));
    }

    #[test]
    fn errors() {
        let a = disc_alphabet();
        assert!(matches!(
            parse_expression("z + w", &a, "pol_c_q"),
            Err(ParseError::UnknownGenerator { position: 4, .. })
        ));
        assert!(matches!(parse_expression("z +", &a, "pol_c_q"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_expression("z / z", &a, "pol_c_q"), Err(ParseError::Invalid { .. })));
        assert!(matches!(parse_expression("(z", &a, "pol_c_q"), Err(ParseError::Syntax { .. })));
        assert!(parse_expression("z^(1/2)", &a, "pol_c_q").is_err());
        assert!(parse_expression("z @", &a, "pol_c_q").is_err());
    }

    #[test]
    fn round_trip() {
        let a = finite_alphabet();
        for text in [
            "z^* z - q^2 z z^* - 1 + q^2",
            "(q^-2 + 1) z f0 z^*^2 + q^(3/2) f0",
            "2/(1 - q^2) z^2 + (3/2)*q^-1 z^*",
            "-(q + 1)/(1 - q^2) f0 z",
        ] {
            let e = parse_expression(text, &a, "finite").unwrap();
            let printed = a.format(&e);
            assert_eq!(parse_expression(&printed, &a, "finite").unwrap(), e, "{text} -> {printed}");
        }
        for text in ["E F - F E", "F^2 K^-1 E + q^(1/2) K^3"] {
            let e = parse_uq(text).unwrap();
            assert_eq!(parse_uq(&uqsl2::format(&e)).unwrap(), e);
        }
    }
}
