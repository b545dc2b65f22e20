//! Formulas, multiple-conclusion rules, and substitutions.
//!
//! The language is propositional: variables, the constants `0` (falsum) and
//! `1` (verum), `~` (negation, binds tightest), `&`, `|`, and `->` (weakest,
//! right-associative). `parse_formula` and `parse_rule` accept exactly the
//! text syntax that [`Display`](core::fmt::Display) produces, so round trips
//! are identities.
//!
//! Rule sides are treated as sets: construction sorts each side by printed
//! form and drops syntactic duplicates. All equality in this module is
//! syntactic tree equality; no logical simplification happens anywhere.

mod parser;

pub use parser::{parse_formula, parse_rule, ParseError, ParseErrorKind};

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A propositional variable name: `[a-zA-Z][a-zA-Z0-9_]*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(String);

/// True iff `name` matches the variable grammar `[a-zA-Z][a-zA-Z0-9_]*`.
pub fn is_valid_identifier(name: &str) -> bool {
    let mut bytes = name.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Var {
    /// Wraps a name. The name must match the variable grammar; the parser
    /// enforces this for external input.
    pub fn new(name: impl Into<String>) -> Var {
        let name = name.into();
        debug_assert!(is_valid_identifier(&name), "invalid variable name {name:?}");
        Var(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(name: &str) -> Var {
        Var::new(name)
    }
}

/// A propositional formula over Heyting connectives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(Var),
    Bot,
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(Var::new(name))
    }

    // An associated constructor by value, deliberately not `ops::Not` for
    // `&Formula`: these builders all consume their arguments.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// The set of variables occurring in the formula.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::Not(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    // Binding strength, loosest to tightest: -> < | < & < ~ < atoms.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::Var(_) | Formula::Bot | Formula::Top => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            f.write_str("(")?;
            self.fmt_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Bot => f.write_str("0"),
            Formula::Top => f.write_str("1"),
            Formula::Not(a) => {
                f.write_str("~")?;
                a.fmt_prec(f, 4)
            }
            // & and | print left-associatively; -> right-associatively.
            Formula::And(a, b) => {
                a.fmt_prec(f, 3)?;
                f.write_str(" & ")?;
                b.fmt_prec(f, 4)
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" | ")?;
                b.fmt_prec(f, 3)
            }
            Formula::Imp(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" -> ")?;
                b.fmt_prec(f, 1)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Folds formulas into a left-associated conjunction, in printed-form order.
/// The empty conjunction is `1`.
pub fn big_and(parts: &[Formula]) -> Formula {
    fold_sorted(parts, Formula::Top, Formula::and)
}

/// Folds formulas into a left-associated disjunction, in printed-form order.
/// The empty disjunction is `0`.
pub fn big_or(parts: &[Formula]) -> Formula {
    fold_sorted(parts, Formula::Bot, Formula::or)
}

fn fold_sorted(parts: &[Formula], empty: Formula, op: fn(Formula, Formula) -> Formula) -> Formula {
    let mut sorted: Vec<&Formula> = parts.iter().collect();
    sorted.sort_by_cached_key(|f| f.to_string());
    sorted.dedup_by(|a, b| a == b);
    let mut iter = sorted.into_iter();
    match iter.next() {
        None => empty,
        Some(first) => iter.fold(first.clone(), |acc, f| op(acc, f.clone())),
    }
}

/// A multiple-conclusion rule `Γ / Δ`. Either side may be empty. Sides are
/// kept sorted by printed form with syntactic duplicates removed, so two
/// rules are equal exactly when their premise and conclusion sets are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MRule {
    premises: Vec<Formula>,
    conclusions: Vec<Formula>,
}

impl MRule {
    pub fn new(premises: Vec<Formula>, conclusions: Vec<Formula>) -> MRule {
        MRule {
            premises: canonical_side(premises),
            conclusions: canonical_side(conclusions),
        }
    }

    pub fn premises(&self) -> &[Formula] {
        &self.premises
    }

    pub fn conclusions(&self) -> &[Formula] {
        &self.conclusions
    }

    /// Single-conclusion rules are the `|Δ| = 1` case.
    pub fn is_single_conclusion(&self) -> bool {
        self.conclusions.len() == 1
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for f in self.premises.iter().chain(&self.conclusions) {
            f.collect_vars(&mut out);
        }
        out
    }
}

fn canonical_side(mut side: Vec<Formula>) -> Vec<Formula> {
    side.sort_by_cached_key(|f| f.to_string());
    side.dedup();
    side
}

/// A formula `φ` read as the premise-free rule `/ φ`: valid in an algebra
/// exactly when the formula is.
impl From<Formula> for MRule {
    fn from(f: Formula) -> MRule {
        MRule::new(Vec::new(), alloc::vec![f])
    }
}

impl fmt::Display for MRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.premises {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("/")?;
        let mut first = true;
        for c in &self.conclusions {
            f.write_str(if first { " " } else { ", " })?;
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// A finite map from variables to formulas, applied simultaneously.
/// Variables outside the domain are left unchanged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Formula>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn bind(&mut self, v: Var, f: Formula) -> &mut Substitution {
        self.map.insert(v, f);
        self
    }

    pub fn get(&self, v: &Var) -> Option<&Formula> {
        self.map.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Formula)> {
        self.map.iter()
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Var(v) => match self.map.get(v) {
                Some(image) => image.clone(),
                None => f.clone(),
            },
            Formula::Bot | Formula::Top => f.clone(),
            Formula::Not(a) => Formula::not(self.apply(a)),
            Formula::And(a, b) => Formula::and(self.apply(a), self.apply(b)),
            Formula::Or(a, b) => Formula::or(self.apply(a), self.apply(b)),
            Formula::Imp(a, b) => Formula::imp(self.apply(a), self.apply(b)),
        }
    }

    /// Applies to both sides. Substitution can collapse distinct formulas,
    /// so the result is re-canonicalized.
    pub fn apply_rule(&self, r: &MRule) -> MRule {
        MRule::new(
            r.premises.iter().map(|f| self.apply(f)).collect(),
            r.conclusions.iter().map(|f| self.apply(f)).collect(),
        )
    }

    /// The substitution equivalent to applying `self` first, `then` second:
    /// `compose(σ, τ)(φ) = τ(σ(φ))`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut map = BTreeMap::new();
        for (v, f) in &self.map {
            map.insert(v.clone(), then.apply(f));
        }
        for (v, f) in &then.map {
            map.entry(v.clone()).or_insert_with(|| f.clone());
        }
        Substitution { map }
    }
}

impl FromIterator<(Var, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Formula)>>(iter: I) -> Substitution {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, image) in &self.map {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{v} := {image}")?;
            first = false;
        }
        Ok(())
    }
}

/// First member of the family `q0, q1, ...` not occurring in `r`. Inputs may
/// legitimately use `q`-names themselves, so freshness is checked against the
/// rule rather than assumed.
pub fn fresh_variable(r: &MRule) -> Var {
    fresh_for_vars(&r.vars())
}

/// Like [`fresh_variable`], but fresh for every rule in the slice at once.
pub fn fresh_variable_for_all(rules: &[MRule]) -> Var {
    let mut used = BTreeSet::new();
    for r in rules {
        used.append(&mut r.vars());
    }
    fresh_for_vars(&used)
}

fn fresh_for_vars(used: &BTreeSet<Var>) -> Var {
    for n in 0usize.. {
        let candidate = Var(alloc::format!("q{n}"));
        if !used.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!("unbounded fresh-variable family exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(name: &str) -> Formula {
        Formula::var(name)
    }

    #[test]
    fn imp_is_right_associative() {
        let f = parse_formula("p -> q -> r").unwrap();
        assert_eq!(f, Formula::imp(v("p"), Formula::imp(v("q"), v("r"))));
        assert_eq!(f.to_string(), "p -> q -> r");
    }

    #[test]
    fn precedence_not_and_or_imp() {
        let f = parse_formula("~p & q | r -> 0").unwrap();
        let lhs = Formula::or(Formula::and(Formula::not(v("p")), v("q")), v("r"));
        assert_eq!(f, Formula::imp(lhs, Formula::Bot));
        assert_eq!(f.to_string(), "~p & q | r -> 0");
    }

    #[test]
    fn parentheses_survive_round_trips() {
        for text in [
            "(p -> q) -> r",
            "p & (q | r)",
            "~(p & q)",
            "(p | q) & (q | p)",
            "p | (q & (r -> 1))",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{text}");
        }
    }

    #[test]
    fn rule_sides_are_sorted_and_deduped() {
        let r = parse_rule("q, p, q / q, p").unwrap();
        assert_eq!(r.premises(), &[v("p"), v("q")]);
        assert_eq!(r.conclusions(), &[v("p"), v("q")]);
        assert_eq!(r.to_string(), "p, q / p, q");
    }

    #[test]
    fn empty_rule_sides_parse_and_print() {
        let axiom = parse_rule("/ 1").unwrap();
        assert!(axiom.premises().is_empty());
        assert_eq!(axiom.conclusions(), &[Formula::Top]);
        assert_eq!(axiom.to_string(), "/ 1");

        let antitheorem = parse_rule("0 /").unwrap();
        assert_eq!(antitheorem.premises(), &[Formula::Bot]);
        assert!(antitheorem.conclusions().is_empty());
        assert_eq!(antitheorem.to_string(), "0 /");

        let both = parse_rule(" / ").unwrap();
        assert!(both.premises().is_empty() && both.conclusions().is_empty());
        assert_eq!(parse_rule(&both.to_string()).unwrap(), both);
    }

    #[test]
    fn substitution_composition_agrees_with_sequential_application() {
        let sigma: Substitution = [(Var::new("p"), v("q"))].into_iter().collect();
        let tau: Substitution = [(Var::new("q"), v("r"))].into_iter().collect();
        let composed = sigma.compose(&tau);
        let expected: Substitution = [(Var::new("p"), v("r")), (Var::new("q"), v("r"))]
            .into_iter()
            .collect();
        assert_eq!(composed, expected);

        let f = parse_formula("p -> q & p").unwrap();
        assert_eq!(tau.apply(&sigma.apply(&f)), composed.apply(&f));
    }

    #[test]
    fn substitution_collapse_dedupes_rule_sides() {
        let r = parse_rule("p, q / p, q").unwrap();
        let sigma: Substitution = [(Var::new("q"), v("p"))].into_iter().collect();
        let image = sigma.apply_rule(&r);
        assert_eq!(image, parse_rule("p / p").unwrap());
    }

    #[test]
    fn fresh_variable_skips_used_q_names() {
        let dp = parse_rule("p | q / p, q").unwrap();
        assert_eq!(fresh_variable(&dp), Var::new("q0"));

        let crowded = parse_rule("q0, q1, q2 / q3 & q4 -> q5").unwrap();
        assert_eq!(fresh_variable(&crowded), Var::new("q6"));
    }

    #[test]
    fn big_folds_sort_by_printed_form() {
        assert_eq!(big_and(&[]), Formula::Top);
        assert_eq!(big_or(&[]), Formula::Bot);
        let parts = vec![v("q"), v("p"), v("q")];
        assert_eq!(big_and(&parts).to_string(), "p & q");
        let nested = vec![v("r"), Formula::and(v("a"), v("b"))];
        assert_eq!(big_or(&nested).to_string(), "a & b | r");
    }

    #[test]
    fn formula_as_rule_has_empty_premises() {
        let r: MRule = parse_formula("p | ~p").unwrap().into();
        assert!(r.premises().is_empty());
        assert_eq!(r.to_string(), "/ p | ~p");
    }
}
