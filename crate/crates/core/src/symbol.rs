//! Text form of symbols.
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := [coef ['*']] [zpart] [zbpart]
//! zpart      := 'z' ['^' uint]
//! zbpart     := 'zb' ['^' uint]
//! coef       := rational | '(' rational [('+'|'-') rational 'i'] ')'
//! rational   := int ['/' uint]
//! ```
//!
//! Whitespace is ignored everywhere. Inside parentheses the leading rational
//! may carry a sign. Error positions are byte offsets into the source.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{format_rational, Element, GaussianRational, Monomial, Rational};
use crate::error::ParseError;

/// Parses a symbol expression into its canonical [`Element`].
pub fn parse_symbol(text: &str) -> Result<Element, ParseError> {
    let mut parser = Parser::new(text);
    let element = parser.expression()?;
    Ok(element)
}

/// Canonical text form; `parse_symbol(&format_symbol(e)) == e`.
pub fn format_symbol(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, coef)) in e.terms().enumerate() {
        let (sign, body) = if coef.im.is_zero() {
            let sign = if coef.re.is_negative() { '-' } else { '+' };
            (sign, real_coefficient_text(&coef.re.abs(), *mono))
        } else {
            let c = format!("({}{}i)", format_rational(&coef.re), signed_rational(&coef.im));
            ('+', join_parts(Some(c), *mono))
        };
        match (i, sign) {
            (0, '+') => {}
            (0, _) => out.push('-'),
            (_, s) => {
                out.push(' ');
                out.push(s);
                out.push(' ');
            }
        }
        out.push_str(&body);
    }
    out
}

fn signed_rational(r: &Rational) -> String {
    if r.is_negative() {
        format_rational(r)
    } else {
        format!("+{}", format_rational(r))
    }
}

fn real_coefficient_text(abs: &Rational, mono: Monomial) -> String {
    let is_one = abs.is_integer() && abs.numer() == &BigInt::from(1);
    let coef = if is_one && mono != Monomial::ONE {
        None
    } else if abs.is_integer() {
        Some(abs.numer().to_string())
    } else {
        Some(format_rational(abs))
    };
    join_parts(coef, mono)
}

fn join_parts(coef: Option<String>, mono: Monomial) -> String {
    let power = |base: &str, e: u32| match e {
        0 => None,
        1 => Some(base.to_string()),
        e => Some(format!("{base}^{e}")),
    };
    let parts: Vec<String> = coef.into_iter().chain(power("z", mono.n)).chain(power("zb", mono.m)).collect();
    parts.join(" ")
}

/// A symbol together with the text it was parsed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolExpression {
    pub source: String,
    pub parsed: Element,
}

impl FromStr for SymbolExpression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Ok(Self { source: s.to_string(), parsed: parse_symbol(s)? })
    }
}

impl SymbolExpression {
    pub fn canonical(&self) -> String {
        format_symbol(&self.parsed)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, at: 0, end: text.len() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.at + offset).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos(), message: message.into() }
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        }
    }

    fn expression(&mut self) -> Result<Element, ParseError> {
        let mut out = Element::zero();
        let mut negate = !self.eat('+') && self.eat('-');
        loop {
            let (coef, mono) = self.term()?;
            out.add_term(mono, &if negate { -coef } else { coef });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else if self.peek().is_none() {
                return Ok(out);
            } else {
                return Err(self.syntax(format!("expected `+`, `-` or end of input, found {}", self.describe_next())));
            }
        }
    }

    fn term(&mut self) -> Result<(GaussianRational, Monomial), ParseError> {
        let start = self.at;
        let coef = match self.peek() {
            Some('(') => Some(self.parenthesized()?),
            Some(c) if c.is_ascii_digit() => Some(GaussianRational::real(self.rational(false)?)),
            _ => None,
        };
        let starred = coef.is_some() && self.eat('*');
        let mut mono = Monomial::ONE;
        if self.peek() == Some('z') && self.peek_at(1) != Some('b') {
            self.at += 1;
            mono.n = self.exponent()?;
        }
        if self.peek() == Some('z') && self.peek_at(1) == Some('b') {
            self.at += 2;
            mono.m = self.exponent()?;
        }
        if self.at == start || (starred && mono == Monomial::ONE) {
            return Err(self.syntax(format!("expected a term, found {}", self.describe_next())));
        }
        Ok((coef.unwrap_or_else(GaussianRational::one), mono))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        if self.peek() == Some('-') {
            return Err(ParseError::NegativeExponent { pos: self.pos() });
        }
        let pos = self.pos();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.syntax(format!("expected an exponent, found {}", self.describe_next())));
        }
        digits.parse().map_err(|_| ParseError::Syntax { pos, message: "exponent too large".to_string() })
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        s
    }

    fn rational(&mut self, signed: bool) -> Result<Rational, ParseError> {
        let pos = self.pos();
        let mut negative = false;
        if signed {
            negative = self.eat('-');
            if !negative {
                self.eat('+');
            }
        }
        let num = self.digits();
        if num.is_empty() {
            return Err(ParseError::MalformedRational { pos, message: "expected digits".to_string() });
        }
        let mut value = Rational::from_integer(BigInt::from_str(&num).expect("ascii digits"));
        if self.eat('/') {
            let den_pos = self.pos();
            let den = self.digits();
            if den.is_empty() {
                return Err(ParseError::MalformedRational {
                    pos: den_pos,
                    message: "expected an unsigned denominator".to_string(),
                });
            }
            let den = BigInt::from_str(&den).expect("ascii digits");
            if den.is_zero() {
                return Err(ParseError::MalformedRational { pos: den_pos, message: "zero denominator".to_string() });
            }
            value /= Rational::from_integer(den);
        }
        Ok(if negative { -value } else { value })
    }

    fn parenthesized(&mut self) -> Result<GaussianRational, ParseError> {
        self.eat('(');
        let re = self.rational(true)?;
        let im = if self.peek() == Some('+') || self.peek() == Some('-') {
            let negative = self.peek() == Some('-');
            self.at += 1;
            let im = self.rational(false)?;
            if !self.eat('i') {
                return Err(self.syntax(format!("expected `i`, found {}", self.describe_next())));
            }
            if negative {
                -im
            } else {
                im
            }
        } else {
            Rational::zero()
        };
        if !self.eat(')') {
            return Err(self.syntax(format!("expected `)`, found {}", self.describe_next())));
        }
        Ok(GaussianRational::new(re, im))
    }
}
