//! Element literals such as `e^f`, `2*e1^e2 - 1/2*e2^e3` or `h + 3*f*`.
//!
//! A term is an optional rational coefficient followed by generator labels
//! joined with `^` (or `∧`). A label that ends in `*` (as in `e*`) is read as
//! one label when the basis has it.

use num_bigint::BigInt;

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::scalar::Scalar;
use crate::structures::DoubleSection;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
}

fn lex(basis: &Basis, text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut p = 0;
    while p < chars.len() {
        let c = chars[p];
        if c.is_whitespace() {
            p += 1;
        } else if c.is_ascii_digit() {
            let start = p;
            while p < chars.len() && chars[p].is_ascii_digit() {
                p += 1;
            }
            let s: String = chars[start..p].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = p;
            while p < chars.len()
                && (chars[p].is_alphanumeric() || chars[p] == '_' || chars[p] == '\'')
            {
                p += 1;
            }
            let mut name: String = chars[start..p].iter().collect();
            if p < chars.len() && chars[p] == '*' && basis.lookup(&format!("{name}*")).is_some() {
                let next = chars.get(p + 1);
                if !next.is_some_and(|n| n.is_alphanumeric() || *n == '_') {
                    name.push('*');
                    p += 1;
                }
            }
            out.push(Tok::Name(name));
        } else {
            out.push(match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' | '∧' => Tok::Wedge,
                _ => {
                    return Err(Error::Parse(format!(
                        "unexpected character {c:?} in {text:?}"
                    )))
                }
            });
            p += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    basis: &'a Basis,
    toks: Vec<Tok>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.text))
    }

    fn label(&mut self) -> Result<usize> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                self.basis
                    .lookup(&n)
                    .ok_or_else(|| self.err(&format!("unknown generator {n:?}")))
            }
            _ => Err(self.err("expected a generator name")),
        }
    }

    fn term(&mut self) -> Result<GradedElement> {
        let mut coeff = Scalar::from_integer(1.into());
        let mut has_num = false;
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            has_num = true;
            let mut c = Scalar::from_integer(n);
            if self.eat(&Tok::Slash) {
                match self.peek().cloned() {
                    Some(Tok::Num(d)) if d != BigInt::from(0) => {
                        self.pos += 1;
                        c /= Scalar::from_integer(d);
                    }
                    _ => return Err(self.err("expected a nonzero denominator")),
                }
            }
            coeff = c;
        }
        let starred = has_num && self.eat(&Tok::Star);
        let mut gens = Vec::new();
        if matches!(self.peek(), Some(Tok::Name(_))) {
            gens.push(self.label()?);
            while self.eat(&Tok::Wedge) {
                gens.push(self.label()?);
            }
        } else if starred || !has_num {
            return Err(self.err("expected a generator name"));
        }
        Ok(GradedElement::monomial(self.basis, &gens, coeff))
    }

    fn expr(&mut self) -> Result<GradedElement> {
        let mut out = GradedElement::zero(self.basis);
        let mut first = true;
        loop {
            let negative = if self.eat(&Tok::Minus) {
                true
            } else {
                let plus = self.eat(&Tok::Plus);
                if !first && !plus {
                    break;
                }
                false
            };
            let t = self.term()?;
            if negative {
                out -= &t;
            } else {
                out += &t;
            }
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        if self.pos != self.toks.len() {
            return Err(self.err("trailing input"));
        }
        Ok(out)
    }
}

/// Parses an element of `Λ(F⊕F*)` written with the labels of `basis`.
pub fn parse_element(basis: &Basis, text: &str) -> Result<GradedElement> {
    let toks = lex(basis, text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    Parser {
        basis,
        toks,
        pos: 0,
        text,
    }
    .expr()
}

/// Parses a degree-1 element `x + ξ` as a section of the double.
pub fn parse_section(basis: &Basis, text: &str) -> Result<DoubleSection> {
    DoubleSection::from_element(&parse_element(basis, text)?)
}
