//! Recursive-descent parser for the formula and rule text syntax.
//!
//! Grammar, loosest first:
//!
//! ```text
//! rule    :=  [formula ("," formula)*] "/" [formula ("," formula)*]
//! formula :=  or ("->" formula)?            right-associative
//! or      :=  and ("|" and)*
//! and     :=  unary ("&" unary)*
//! unary   :=  "~" unary | atom
//! atom    :=  ident | "0" | "1" | "(" formula ")"
//! ident   :=  [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! Errors carry the byte offset into the input, so rule-side errors point at
//! the position in the whole rule line, not the comma-separated piece.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Formula, MRule, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnclosedParen,
    TrailingInput,
    EmptyFormula,
    MissingSlash,
    ExtraSlash,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {c:?} at byte {}", self.pos)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at byte {}", self.pos)
            }
            ParseErrorKind::UnclosedParen => {
                write!(f, "expected ')' at byte {}", self.pos)
            }
            ParseErrorKind::TrailingInput => {
                write!(f, "trailing input at byte {}", self.pos)
            }
            ParseErrorKind::EmptyFormula => {
                write!(f, "empty formula at byte {}", self.pos)
            }
            ParseErrorKind::MissingSlash => {
                write!(f, "rule must contain '/' between premises and conclusions")
            }
            ParseErrorKind::ExtraSlash => {
                write!(f, "second '/' at byte {}; a rule has exactly one", self.pos)
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses a single formula. The whole input must be consumed.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    parse_formula_at(input, 0)
}

fn parse_formula_at(input: &str, base: usize) -> Result<Formula, ParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        base,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err(ParseErrorKind::EmptyFormula));
    }
    let f = p.implication()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(ParseErrorKind::TrailingInput));
    }
    Ok(f)
}

/// Parses a rule `Γ / Δ`. Either comma-separated side may be empty.
pub fn parse_rule(input: &str) -> Result<MRule, ParseError> {
    let mut slash_positions = input.bytes().enumerate().filter(|&(_, b)| b == b'/');
    let slash = match slash_positions.next() {
        None => {
            return Err(ParseError {
                pos: input.len(),
                kind: ParseErrorKind::MissingSlash,
            })
        }
        Some((i, _)) => i,
    };
    if let Some((i, _)) = slash_positions.next() {
        return Err(ParseError {
            pos: i,
            kind: ParseErrorKind::ExtraSlash,
        });
    }
    let premises = parse_side(&input[..slash], 0)?;
    let conclusions = parse_side(&input[slash + 1..], slash + 1)?;
    Ok(MRule::new(premises, conclusions))
}

fn parse_side(side: &str, base: usize) -> Result<Vec<Formula>, ParseError> {
    if side.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    // Formula syntax has no commas, so splitting before parsing is safe.
    for piece in side.split(',') {
        if piece.trim().is_empty() {
            return Err(ParseError {
                pos: base + offset,
                kind: ParseErrorKind::EmptyFormula,
            });
        }
        out.push(parse_formula_at(piece, base + offset)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.base + self.pos,
            kind,
        }
    }

    fn err_here(&self) -> ParseError {
        match self.peek() {
            Some(b) => self.err(ParseErrorKind::UnexpectedChar(b as char)),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            if !self.eat(b'>') {
                return Err(self.err_here());
            }
            self.skip_ws();
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        loop {
            self.skip_ws();
            if self.eat(b'|') {
                self.skip_ws();
                f = Formula::or(f, self.conjunction()?);
            } else {
                return Ok(f);
            }
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        loop {
            self.skip_ws();
            if self.eat(b'&') {
                self.skip_ws();
                f = Formula::and(f, self.unary()?);
            } else {
                return Ok(f);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        if self.eat(b'~') {
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(b'(') => {
                self.pos += 1;
                let f = self.implication()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(if self.at_end() {
                        self.err(ParseErrorKind::UnclosedParen)
                    } else {
                        self.err_here()
                    });
                }
                Ok(f)
            }
            Some(b) if b.is_ascii_alphabetic() => Ok(Formula::Var(self.ident())),
            _ => Err(self.err_here()),
        }
    }

    fn ident(&mut self) -> Var {
        let start = self.pos;
        self.pos += 1;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        let name =
            core::str::from_utf8(&self.bytes[start..self.pos]).expect("identifier bytes are ASCII");
        Var::new(String::from(name))
    }
}
