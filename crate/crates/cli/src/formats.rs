//! File formats.
//!
//! Rule and formula files: UTF-8, one entry per line, `#` starts a comment,
//! blank lines ignored.
//!
//! Algebra files hold one or more blocks. A table block is
//!
//! ```text
//! heyting 3
//! bot 0
//! top 2
//! meet
//! 0 0 0
//! 0 1 1
//! 0 1 2
//! join
//! 0 1 2
//! 1 1 2
//! 2 2 2
//! imp
//! 2 2 2
//! 0 2 2
//! 0 1 2
//! ```
//!
//! (table rows may wrap anywhere; only the count matters), and a poset
//! block is `poset n` followed by `< i j` lines, standing for the algebra
//! of downsets of that order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mrules_core::algebra::{from_poset, Poset};
use mrules_core::syntax::{parse_formula, parse_rule};
use mrules_core::{FiniteHeytingAlgebra, Formula, MRule};

use crate::errors::CliError;

/// Ceiling for expanding a poset block into its downset algebra; a poset
/// file is compact, so the expansion is where blowup would happen.
pub const POSET_FILE_CAP: usize = 100_000;

/// A value along with where it came from, e.g. `path:line`.
#[derive(Clone, Debug)]
pub struct Sourced<T> {
    pub origin: String,
    pub value: T,
}

fn syntax_error(path: &str, line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{path}:{line}: {msg}"))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Reads one parseable item per non-blank line.
fn read_lines<T>(
    path: &str,
    text: &str,
    parse: impl Fn(&str) -> Result<T, mrules_core::syntax::ParseError>,
) -> Result<Vec<Sourced<T>>, CliError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        match parse(body) {
            Ok(value) => out.push(Sourced {
                origin: format!("{path}:{line}"),
                value,
            }),
            Err(e) => return Err(syntax_error(path, line, e)),
        }
    }
    Ok(out)
}

pub fn rules_from_str(path: &str, text: &str) -> Result<Vec<Sourced<MRule>>, CliError> {
    read_lines(path, text, parse_rule)
}

pub fn formulas_from_str(path: &str, text: &str) -> Result<Vec<Sourced<Formula>>, CliError> {
    read_lines(path, text, parse_formula)
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_rules(path: &Path) -> Result<Vec<Sourced<MRule>>, CliError> {
    rules_from_str(&path.display().to_string(), &read_to_string(path)?)
}

pub fn read_formulas(path: &Path) -> Result<Vec<Sourced<Formula>>, CliError> {
    formulas_from_str(&path.display().to_string(), &read_to_string(path)?)
}

/// Token with the line it started on.
struct Tok {
    line: usize,
    text: String,
}

fn tokenize(text: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        for word in strip_comment(raw).split_whitespace() {
            toks.push(Tok {
                line: idx + 1,
                text: word.to_string(),
            });
        }
    }
    toks
}

struct BlockReader<'a> {
    path: &'a str,
    toks: Vec<Tok>,
    at: usize,
}

impl<'a> BlockReader<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn next(&mut self, what: &str) -> Result<&Tok, CliError> {
        let line = self.toks.last().map_or(1, |t| t.line);
        match self.toks.get(self.at) {
            Some(_) => {
                self.at += 1;
                Ok(&self.toks[self.at - 1])
            }
            None => Err(syntax_error(
                self.path,
                line,
                format!("unexpected end of file, expected {what}"),
            )),
        }
    }

    fn number(&mut self, what: &str) -> Result<(usize, usize), CliError> {
        let path = self.path;
        let tok = self.next(what)?;
        let line = tok.line;
        match tok.text.parse::<usize>() {
            Ok(n) => Ok((n, line)),
            Err(_) => Err(syntax_error(
                path,
                line,
                format!("expected {what}, found {:?}", tok.text),
            )),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<usize, CliError> {
        let path = self.path;
        let tok = self.next(&format!("keyword '{word}'"))?;
        let line = tok.line;
        if tok.text == word {
            Ok(line)
        } else {
            Err(syntax_error(
                path,
                line,
                format!("expected {word:?}, found {:?}", tok.text),
            ))
        }
    }

    fn table(&mut self, name: &str, n: usize) -> Result<Vec<usize>, CliError> {
        self.keyword(name)?;
        let mut cells = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let (value, line) = self.number(&format!("a {name}-table entry"))?;
            if value >= n {
                return Err(syntax_error(
                    self.path,
                    line,
                    format!("table entry {value} is outside 0..{n}"),
                ));
            }
            cells.push(value);
        }
        Ok(cells)
    }

    fn heyting_block(&mut self, start: usize) -> Result<Sourced<FiniteHeytingAlgebra>, CliError> {
        let (n, _) = self.number("the carrier size")?;
        if n == 0 {
            return Err(syntax_error(
                self.path,
                start,
                "carrier size must be positive",
            ));
        }
        self.keyword("bot")?;
        let (bot, bot_line) = self.number("the bottom element")?;
        self.keyword("top")?;
        let (top, top_line) = self.number("the top element")?;
        for (el, line, what) in [(bot, bot_line, "bot"), (top, top_line, "top")] {
            if el >= n {
                return Err(syntax_error(
                    self.path,
                    line,
                    format!("{what} {el} is outside 0..{n}"),
                ));
            }
        }
        let meet = self.table("meet", n)?;
        let join = self.table("join", n)?;
        let imp = self.table("imp", n)?;
        match FiniteHeytingAlgebra::from_tables(n, bot, top, meet, join, imp) {
            Ok(a) => Ok(Sourced {
                origin: format!("{}:{start}", self.path),
                value: a,
            }),
            Err(e) => Err(syntax_error(self.path, start, e)),
        }
    }

    fn poset_block(&mut self, start: usize) -> Result<Sourced<FiniteHeytingAlgebra>, CliError> {
        let (n, _) = self.number("the number of points")?;
        let mut pairs = Vec::new();
        while let Some(tok) = self.peek() {
            if tok.text != "<" {
                break;
            }
            self.next("'<'")?;
            let (i, i_line) = self.number("the smaller point")?;
            let (j, j_line) = self.number("the larger point")?;
            for (p, line) in [(i, i_line), (j, j_line)] {
                if p >= n {
                    return Err(syntax_error(
                        self.path,
                        line,
                        format!("point {p} is outside 0..{n}"),
                    ));
                }
            }
            pairs.push((i, j));
        }
        let poset = Poset::new(n, &pairs).map_err(|e| syntax_error(self.path, start, e))?;
        match from_poset(&poset, POSET_FILE_CAP) {
            Ok(a) => Ok(Sourced {
                origin: format!("{}:{start}", self.path),
                value: a,
            }),
            Err(e) => Err(CliError::Limit(format!("{}:{start}: {e}", self.path))),
        }
    }
}

pub fn algebras_from_str(
    path: &str,
    text: &str,
) -> Result<Vec<Sourced<FiniteHeytingAlgebra>>, CliError> {
    let mut reader = BlockReader {
        path,
        toks: tokenize(text),
        at: 0,
    };
    let mut out = Vec::new();
    while reader.peek().is_some() {
        let tok = reader.next("a block header")?;
        let (word, line) = (tok.text.clone(), tok.line);
        match word.as_str() {
            "heyting" => out.push(reader.heyting_block(line)?),
            "poset" => out.push(reader.poset_block(line)?),
            other => {
                return Err(syntax_error(
                    path,
                    line,
                    format!("expected 'heyting' or 'poset' block, found {other:?}"),
                ))
            }
        }
    }
    if out.is_empty() {
        return Err(syntax_error(path, 1, "no algebra blocks in file"));
    }
    Ok(out)
}

pub fn read_algebras(path: &Path) -> Result<Vec<Sourced<FiniteHeytingAlgebra>>, CliError> {
    algebras_from_str(&path.display().to_string(), &read_to_string(path)?)
}

/// Renders an algebra as a table block that [`algebras_from_str`] reads
/// back verbatim.
pub fn algebra_to_string(a: &FiniteHeytingAlgebra) -> String {
    let n = a.size();
    let mut s = String::new();
    let _ = writeln!(s, "heyting {n}");
    let _ = writeln!(s, "bot {}", a.bot());
    let _ = writeln!(s, "top {}", a.top());
    for (name, op) in [
        (
            "meet",
            FiniteHeytingAlgebra::meet as fn(&FiniteHeytingAlgebra, usize, usize) -> usize,
        ),
        ("join", FiniteHeytingAlgebra::join),
        ("imp", FiniteHeytingAlgebra::imp),
    ] {
        let _ = writeln!(s, "{name}");
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| op(a, i, j).to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
    }
    s
}

/// Renders rules as a file that [`rules_from_str`] reads back, one per
/// line under a comment header.
pub fn rules_to_string(header: &str, rules: &[MRule]) -> String {
    let mut s = String::new();
    for line in header.lines() {
        let _ = writeln!(s, "# {line}");
    }
    for r in rules {
        let _ = writeln!(s, "{r}");
    }
    s
}
