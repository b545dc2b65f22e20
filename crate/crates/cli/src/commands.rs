//! Subcommand surface and drivers.
//!
//! Exit-code convention: 0 when the command's question is answered
//! affirmatively (all rules valid, the formula is a theorem, the witness
//! was found, the transformation succeeded), 1 for the negative answer,
//! 2 for usage and input errors, 3 when a budget or cap ran out first.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use mrules_core::algebra::enumerate;
use mrules_core::freealg::{
    check_admissible_bounded, free_algebra, refute_derivability, AdmissibilityVerdict,
};
use mrules_core::prover::is_theorem;
use mrules_core::semantics::{models_formula, models_mrule, EvalBudget, Refutation, Verdict};
use mrules_core::syntax::{parse_formula, parse_rule};
use mrules_core::transforms::{
    find_independence_witness, m_basis_from_s_basis, s_basis_from_m_basis, Basis, BasisKind,
};
use mrules_core::{FiniteHeytingAlgebra, Formula, MRule};
use serde_json::json;

use crate::config::Config;
use crate::corpus;
use crate::errors::CliError;
use crate::formats::{self, Sourced};
use crate::output::{refutation_json, refutation_text, Printer};
use crate::suites;

/// The logical answer of a run: process exit code 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Affirmative,
    Negative,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse rules or formulas and print their canonical forms
    Parse(ParseCmd),
    /// Check rules for validity on algebras, with refutation witnesses
    Check(CheckCmd),
    /// List all algebras up to a size, one per isomorphism class
    Enumerate(EnumerateCmd),
    /// Construct a finitely generated free algebra over components
    Free(FreeCmd),
    /// Bounded admissibility check over free algebras of growing rank
    Admissible(AdmissibleCmd),
    /// Find an algebra validating side rules while refuting a target rule
    #[command(name = "refute-derivability")]
    RefuteDerivability(RefuteCmd),
    /// Translate a basis between single- and multiple-conclusion form
    Transform(TransformCmd),
    /// Witness that a basis rule is underivable from the others plus splitting
    Independence(IndependenceCmd),
    /// Decide intuitionistic provability of formulas
    Prove(ProveCmd),
    /// Run the built-in verification suites
    #[command(name = "verify-suite")]
    VerifySuite(VerifySuiteCmd),
}

pub fn run(cmd: Command, cfg: Config) -> Result<Outcome, CliError> {
    let printer = Printer::new(cfg.format);
    match cmd {
        Command::Parse(c) => c.run(&printer),
        Command::Check(c) => c.run(&cfg, &printer),
        Command::Enumerate(c) => c.run(&cfg, &printer),
        Command::Free(c) => c.run(&cfg, &printer),
        Command::Admissible(c) => c.run(&cfg, &printer),
        Command::RefuteDerivability(c) => c.run(&cfg, &printer),
        Command::Transform(c) => c.run(&printer),
        Command::Independence(c) => c.run(&cfg, &printer),
        Command::Prove(c) => c.run(&cfg, &printer),
        Command::VerifySuite(c) => c.run(cfg, &printer),
    }
}

/// Where checked algebras come from; every command that consumes algebras
/// accepts all three, combined in the order files, chains, enumeration.
#[derive(Debug, Args)]
struct AlgebraSource {
    /// Algebra files (heyting/poset blocks); every block is used
    #[arg(long = "algebras", value_name = "FILE")]
    algebras: Vec<PathBuf>,

    /// Chain (totally ordered) algebra with N elements; repeatable
    #[arg(long = "chain", value_name = "N")]
    chain: Vec<usize>,

    /// All algebras with at most N elements, one per isomorphism class
    #[arg(long = "enumerate", value_name = "N")]
    enumerate: Option<usize>,
}

impl AlgebraSource {
    fn resolve(&self, cfg: &Config) -> Result<Vec<Sourced<FiniteHeytingAlgebra>>, CliError> {
        let mut out = Vec::new();
        for path in &self.algebras {
            out.extend(formats::read_algebras(path)?);
        }
        for &n in &self.chain {
            if n == 0 {
                return Err(CliError::Usage("--chain needs at least one element".into()));
            }
            out.push(Sourced {
                origin: format!("chain({n})"),
                value: FiniteHeytingAlgebra::chain(n),
            });
        }
        if let Some(n) = self.enumerate {
            for (i, a) in enumerate(n, &cfg.enumerate_options())?
                .into_iter()
                .enumerate()
            {
                out.push(Sourced {
                    origin: format!("enumerate[{i}] (size {})", a.size()),
                    value: a,
                });
            }
        }
        if out.is_empty() {
            return Err(CliError::Usage(
                "no algebras given: use --algebras, --chain, or --enumerate".into(),
            ));
        }
        Ok(out)
    }
}

fn parse_inline_rule(text: &str) -> Result<MRule, CliError> {
    parse_rule(text).map_err(|e| CliError::Usage(format!("rule {text:?}: {e}")))
}

fn parse_inline_formula(text: &str) -> Result<Formula, CliError> {
    parse_formula(text).map_err(|e| CliError::Usage(format!("formula {text:?}: {e}")))
}

/// Rules drawn from files and inline flags, in that order.
fn gather_rules(files: &[PathBuf], inline: &[String]) -> Result<Vec<Sourced<MRule>>, CliError> {
    let mut out = Vec::new();
    for path in files {
        out.extend(formats::read_rules(path)?);
    }
    for text in inline {
        out.push(Sourced {
            origin: format!("rule {text:?}"),
            value: parse_inline_rule(text)?,
        });
    }
    Ok(out)
}

#[derive(Debug, Args)]
pub struct ParseCmd {
    /// Rule files, one rule per line, `#` comments
    files: Vec<PathBuf>,

    /// Inline rule text; repeatable
    #[arg(long = "rule", value_name = "TEXT")]
    rule: Vec<String>,

    /// Inline formula text; repeatable
    #[arg(long = "formula", value_name = "TEXT")]
    formula: Vec<String>,
}

impl ParseCmd {
    fn run(&self, printer: &Printer) -> Result<Outcome, CliError> {
        if self.files.is_empty() && self.rule.is_empty() && self.formula.is_empty() {
            return Err(CliError::Usage(
                "nothing to parse: give files, --rule, or --formula".into(),
            ));
        }
        for text in &self.formula {
            let f = parse_inline_formula(text)?;
            let vars: Vec<String> = f.vars().iter().map(|v| v.to_string()).collect();
            printer.record(
                || format!("formula {f}   [vars: {}]", vars.join(", ")),
                || json!({"kind": "formula", "canonical": f.to_string(), "vars": vars}),
            );
        }
        let rules = gather_rules(&self.files, &self.rule)?;
        for r in &rules {
            let vars: Vec<String> = r.value.vars().iter().map(|v| v.to_string()).collect();
            printer.record(
                || {
                    format!(
                        "rule {}   [{}; {} premise(s), {} conclusion(s); vars: {}]",
                        r.value,
                        r.origin,
                        r.value.premises().len(),
                        r.value.conclusions().len(),
                        vars.join(", ")
                    )
                },
                || {
                    json!({
                        "kind": "rule",
                        "origin": r.origin,
                        "canonical": r.value.to_string(),
                        "premises": r.value.premises().len(),
                        "conclusions": r.value.conclusions().len(),
                        "single_conclusion": r.value.is_single_conclusion(),
                        "vars": vars,
                    })
                },
            );
        }
        Ok(Outcome::Affirmative)
    }
}

#[derive(Debug, Args)]
pub struct CheckCmd {
    /// Rule files to check
    #[arg(long = "rules", value_name = "FILE")]
    rules: Vec<PathBuf>,

    /// Inline rule to check; repeatable
    #[arg(long = "rule", value_name = "TEXT")]
    rule: Vec<String>,

    #[command(flatten)]
    source: AlgebraSource,

    /// Write the first refuting algebra to this file for replay
    #[arg(long, value_name = "PATH")]
    emit_witness: Option<PathBuf>,
}

impl CheckCmd {
    fn run(&self, cfg: &Config, printer: &Printer) -> Result<Outcome, CliError> {
        let rules = gather_rules(&self.rules, &self.rule)?;
        if rules.is_empty() {
            return Err(CliError::Usage(
                "no rules given: use --rules or --rule".into(),
            ));
        }
        let algebras = self.source.resolve(cfg)?;
        let mut budget = cfg.fresh_budget();
        let mut invalid = 0usize;
        let mut first_witness: Option<&Sourced<FiniteHeytingAlgebra>> = None;
        for r in &rules {
            for a in &algebras {
                let verdict = models_mrule(&a.value, &r.value, &mut budget)?;
                match verdict {
                    Verdict::Holds => printer.record(
                        || format!("valid   {} on {}", r.value, a.origin),
                        || {
                            json!({
                                "kind": "check", "rule": r.value.to_string(),
                                "algebra": a.origin, "algebra_size": a.value.size(),
                                "valid": true,
                            })
                        },
                    ),
                    Verdict::Refuted(w) => {
                        invalid += 1;
                        first_witness.get_or_insert(a);
                        printer.record(
                            || {
                                format!(
                                    "INVALID {} on {}: {}",
                                    r.value,
                                    a.origin,
                                    refutation_text(&w, &r.value)
                                )
                            },
                            || {
                                json!({
                                    "kind": "check", "rule": r.value.to_string(),
                                    "algebra": a.origin, "algebra_size": a.value.size(),
                                    "valid": false, "refutation": refutation_json(&w),
                                })
                            },
                        );
                    }
                }
            }
        }
        if let (Some(path), Some(w)) = (&self.emit_witness, first_witness) {
            fs::write(path, formats::algebra_to_string(&w.value))?;
        }
        let pairs = rules.len() * algebras.len();
        printer.record(
            || {
                format!(
                    "checked {} rule(s) on {} algebra(s): {} valid, {invalid} invalid",
                    rules.len(),
                    algebras.len(),
                    pairs - invalid
                )
            },
            || {
                json!({
                    "kind": "summary", "rules": rules.len(), "algebras": algebras.len(),
                    "valid": pairs - invalid, "invalid": invalid,
                })
            },
        );
        Ok(if invalid == 0 {
            Outcome::Affirmative
        } else {
            Outcome::Negative
        })
    }
}

#[derive(Debug, Args)]
pub struct EnumerateCmd {
    /// Largest algebra size to include
    size: usize,

    /// Also include the one-element algebra
    #[arg(long)]
    include_degenerate: bool,

    /// Write every algebra as a block to this file
    #[arg(long, value_name = "PATH")]
    emit: Option<PathBuf>,
}

impl EnumerateCmd {
    fn run(&self, cfg: &Config, printer: &Printer) -> Result<Outcome, CliError> {
        let mut opts = cfg.enumerate_options();
        opts.include_degenerate = self.include_degenerate;
        let algebras = enumerate(self.size, &opts)?;
        let mut counts = vec![0usize; self.size + 1];
        for (i, a) in algebras.iter().enumerate() {
            counts[a.size()] += 1;
            printer.record(
                || {
                    format!(
                        "enumerate[{i}]: size {}, {}",
                        a.size(),
                        if a.is_well_connected() {
                            "well-connected"
                        } else {
                            "not well-connected"
                        }
                    )
                },
                || {
                    json!({
                        "kind": "algebra", "index": i, "size": a.size(),
                        "well_connected": a.is_well_connected(),
                    })
                },
            );
        }
        if let Some(path) = &self.emit {
            let mut text = String::new();
            for (i, a) in algebras.iter().enumerate() {
                text.push_str(&format!("# enumerate[{i}]\n"));
                text.push_str(&formats::algebra_to_string(a));
                text.push('\n');
            }
            fs::write(path, text)?;
        }
        printer.record(
            || {
                format!(
                    "{} algebra(s) up to size {}; counts by size: {:?}",
                    algebras.len(),
                    self.size,
                    &counts[1..]
                )
            },
            || {
                json!({
                    "kind": "summary", "total": algebras.len(),
                    "counts_by_size": &counts[1..],
                })
            },
        );
        Ok(Outcome::Affirmative)
    }
}

#[derive(Debug, Args)]
pub struct FreeCmd {
    /// Number of free generators
    #[arg(long)]
    rank: usize,

    #[command(flatten)]
    source: AlgebraSource,

    /// Write the resulting algebra to this file
    #[arg(long, value_name = "PATH")]
    emit: Option<PathBuf>,

    /// Print the generating formula traced for every element
    #[arg(long)]
    traces: bool,
}

impl FreeCmd {
    fn run(&self, cfg: &Config, printer: &Printer) -> Result<Outcome, CliError> {
        let components = self.source.resolve(cfg)?;
        let values: Vec<FiniteHeytingAlgebra> =
            components.iter().map(|s| s.value.clone()).collect();
        let free = free_algebra(&values, self.rank, &cfg.limits())?;
        let origins: Vec<&str> = components.iter().map(|s| s.origin.as_str()).collect();
        printer.record(
            || {
                format!(
                    "free algebra of rank {} over [{}]: {} elements, {}",
                    free.rank(),
                    origins.join(", "),
                    free.size(),
                    if free.algebra().is_well_connected() {
                        "well-connected"
                    } else {
                        "not well-connected"
                    }
                )
            },
            || {
                json!({
                    "kind": "free", "rank": free.rank(), "components": origins,
                    "size": free.size(),
                    "well_connected": free.algebra().is_well_connected(),
                    "generators": free.generators(),
                })
            },
        );
        if self.traces {
            for e in 0..free.size() {
                let trace = free.trace(e);
                printer.record(
                    || format!("element {e}: {trace}"),
                    || json!({"kind": "trace", "element": e, "formula": trace.to_string()}),
                );
            }
        }
        if let Some(path) = &self.emit {
            fs::write(path, formats::algebra_to_string(free.algebra()))?;
        }
        Ok(Outcome::Affirmative)
    }
}

#[derive(Debug, Args)]
pub struct AdmissibleCmd {
    /// Rule files to test
    #[arg(long = "rules", value_name = "FILE")]
    rules: Vec<PathBuf>,

    /// Inline rule to test; repeatable
    #[arg(long = "rule", value_name = "TEXT")]
    rule: Vec<String>,

    /// Components of the logic's defining algebra set
    #[command(flatten)]
    source: AlgebraSource,

    /// Largest free-algebra rank to scan (default: configured bound)
    #[arg(long, value_name = "N")]
    max_rank: Option<usize>,
}

impl AdmissibleCmd {
    fn run(&self, cfg: &Config, printer: &Printer) -> Result<Outcome, CliError> {
        let rules = gather_rules(&self.rules, &self.rule)?;
        if rules.is_empty() {
            return Err(CliError::Usage(
                "no rules given: use --rules or --rule".into(),
            ));
        }
        let components = self.source.resolve(cfg)?;
        let values: Vec<FiniteHeytingAlgebra> =
            components.iter().map(|s| s.value.clone()).collect();
        let max_rank = self.max_rank.unwrap_or(cfg.rank_bound);
        let mut budget = cfg.fresh_budget();
        let mut all_admissible = true;
        for r in &rules {
            let verdict =
                check_admissible_bounded(&r.value, &values, max_rank, &cfg.limits(), &mut budget)?;
            if verdict.is_not_admissible() {
                all_admissible = false;
            }
            printer.record(
                || format!("{}: {verdict}", r.value),
                || match &verdict {
                    AdmissibilityVerdict::NotAdmissible {
                        rank,
                        witness,
                        refutation,
                    } => json!({
                        "kind": "admissible", "rule": r.value.to_string(),
                        "admissible": false, "rank": rank,
                        "witness": witness.iter()
                            .map(|(v, f)| (v.to_string(), json!(f.to_string())))
                            .collect::<serde_json::Map<_, _>>(),
                        "refutation": refutation_json(refutation),
                    }),
                    AdmissibilityVerdict::AdmissibleUpToRank(n) => json!({
                        "kind": "admissible", "rule": r.value.to_string(),
                        "admissible": true, "up_to_rank": n,
                    }),
                },
            );
        }
        Ok(if all_admissible {
            Outcome::Affirmative
        } else {
            Outcome::Negative
        })
    }
}

/// Scans the pool one algebra at a time so reports can name the origin of
/// the witness; each step is the library search on a singleton pool.
fn scan_pool<'a>(
    rules: &[MRule],
    target: &MRule,
    pool: &'a [Sourced<FiniteHeytingAlgebra>],
    budget: &mut EvalBudget,
    independence: bool,
) -> Result<Option<(&'a Sourced<FiniteHeytingAlgebra>, Refutation)>, CliError> {
    for s in pool {
        let found = if independence {
            find_independence_witness(rules, target, [s.value.clone()], budget)?
        } else {
            refute_derivability(rules, target, [s.value.clone()], budget)?
        };
        if let Some((_, w)) = found {
            return Ok(Some((s, w)));
        }
    }
    Ok(None)
}

/// Shared reporting for the two witness searches. `side_desc` names what
/// the witness must keep valid ("the side rule", "the rest of the set");
/// empty when there is nothing to preserve.
fn report_separation(
    printer: &Printer,
    kind: &str,
    target: &MRule,
    side_desc: &str,
    pool_len: usize,
    found: Option<(&Sourced<FiniteHeytingAlgebra>, Refutation)>,
) -> Outcome {
    match found {
        Some((s, w)) => {
            printer.record(
                || {
                    let validating = if side_desc.is_empty() {
                        String::new()
                    } else {
                        format!("validates {side_desc} and ")
                    };
                    format!(
                        "witness {}: {validating}refutes {target} {}",
                        s.origin,
                        refutation_text(&w, target)
                    )
                },
                || {
                    json!({
                        "kind": kind, "found": true, "algebra": s.origin,
                        "algebra_size": s.value.size(), "rule": target.to_string(),
                        "refutation": refutation_json(&w),
                    })
                },
            );
            Outcome::Affirmative
        }
        None => {
            printer.record(
                || {
                    let caveat = if side_desc.is_empty() {
                        String::new()
                    } else {
                        format!(" while validating {side_desc}")
                    };
                    format!("no witness among {pool_len} algebra(s): none refutes {target}{caveat}")
                },
                || {
                    json!({
                        "kind": kind, "found": false, "rule": target.to_string(),
                        "pool": pool_len,
                    })
                },
            );
            Outcome::Negative
        }
    }
}

#[derive(Debug, Args)]
pub struct RefuteCmd {
    /// Rule that must stay valid on the witness; repeatable
    #[arg(long = "side", value_name = "TEXT")]
    side: Vec<String>,

    /// File of rules that must stay valid on the witness
    #[arg(long = "side-file", value_name = "FILE")]
    side_file: Vec<PathBuf>,

    /// The rule to refute
    #[arg(long = "rule", value_name = "TEXT", required = true)]
    rule: String,

    #[command(flatten)]
    source: AlgebraSource,
}

impl RefuteCmd {
    fn run(&self, cfg: &Config, printer: &Printer) -> Result<Outcome, CliError> {
        let sides = gather_rules(&self.side_file, &self.side)?;
        let side_rules: Vec<MRule> = sides.iter().map(|s| s.value.clone()).collect();
        let target = parse_inline_rule(&self.rule)?;
        let pool = self.source.resolve(cfg)?;
        let mut budget = cfg.fresh_budget();
        let found = scan_pool(&side_rules, &target, &pool, &mut budget, false)?;
        let side_desc = match side_rules.len() {
            0 => String::new(),
            1 => String::from("the side rule"),
            n => format!("all {n} side rules"),
        };
        Ok(report_separation(
            printer,
            "refute-derivability",
            &target,
            &side_desc,
            pool.len(),
            found,
        ))
    }
}

#[derive(Debug, Args)]
pub struct IndependenceCmd {
    /// The rule set to separate within
    #[arg(long = "rules", value_name = "FILE", required = true)]
    rules: PathBuf,

    /// The member rule to separate, by text
    #[arg(long = "rule", value_name = "TEXT", conflicts_with = "index")]
    rule: Option<String>,

    /// The member rule to separate, by zero-based position in the file
    #[arg(long, value_name = "I")]
    index: Option<usize>,

    #[command(flatten)]
    source: AlgebraSource,
}

impl IndependenceCmd {
    fn run(&self, cfg: &Config, printer: &Printer) -> Result<Outcome, CliError> {
        let rules = formats::read_rules(&self.rules)?;
        let set: Vec<MRule> = rules.iter().map(|s| s.value.clone()).collect();
        let target = match (&self.rule, self.index) {
            (Some(text), None) => parse_inline_rule(text)?,
            (None, Some(i)) => set.get(i).cloned().ok_or_else(|| {
                CliError::Usage(format!(
                    "--index {i} is out of range: the set has {} rule(s)",
                    set.len()
                ))
            })?,
            _ => {
                return Err(CliError::Usage(
                    "pick the rule with exactly one of --rule or --index".into(),
                ))
            }
        };
        let pool = self.source.resolve(cfg)?;
        let mut budget = cfg.fresh_budget();
        // The library search adds the splitting rule to the side set and
        // rejects targets outside the set; surface that error before the
        // pool scan for a clean message.
        let found = scan_pool(&set, &target, &pool, &mut budget, true)?;
        Ok(report_separation(
            printer,
            "independence",
            &target,
            "the rest of the set (splitting rule adjoined)",
            pool.len(),
            found,
        ))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    /// Multiple-conclusion basis (adds the splitting rule)
    M,
    /// Single-conclusion basis (joins a shared fresh variable onto both sides)
    S,
}

#[derive(Debug, Args)]
pub struct TransformCmd {
    /// Target basis kind
    #[arg(long = "to", value_enum)]
    to: KindArg,

    /// Basis file; its kind must match the direction
    #[arg(long = "basis", value_name = "FILE", required = true)]
    basis: PathBuf,

    /// Write the transformed basis here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Description recorded in the output header
    #[arg(long, value_name = "TEXT")]
    description: Option<String>,
}

impl TransformCmd {
    fn run(&self, printer: &Printer) -> Result<Outcome, CliError> {
        let rules = formats::read_rules(&self.basis)?;
        let set: Vec<MRule> = rules.iter().map(|s| s.value.clone()).collect();
        let file = self.basis.display();
        let description = self
            .description
            .clone()
            .unwrap_or_else(|| format!("basis from {file}"));
        let input_kind = match self.to {
            KindArg::M => BasisKind::SingleConclusion,
            KindArg::S => BasisKind::MultipleConclusion,
        };
        let basis = Basis::new(input_kind, set, &description)
            .map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
        let (transformed, fresh) = match self.to {
            KindArg::M => (m_basis_from_s_basis(&basis)?, None),
            KindArg::S => {
                let (b, q) = s_basis_from_m_basis(&basis)?;
                (b, Some(q))
            }
        };
        let header = match &fresh {
            Some(q) => format!(
                "{} ({}; shared fresh variable {q})",
                transformed.description(),
                transformed.kind()
            ),
            None => format!("{} ({})", transformed.description(), transformed.kind()),
        };
        let body = formats::rules_to_string(&header, transformed.rules());
        match &self.out {
            Some(path) => {
                fs::write(path, &body)?;
                printer.record(
                    || {
                        format!(
                            "wrote {} with {} rule(s) to {}{}",
                            transformed.kind(),
                            transformed.rules().len(),
                            path.display(),
                            fresh
                                .as_ref()
                                .map(|q| format!("; fresh variable {q}"))
                                .unwrap_or_default()
                        )
                    },
                    || transform_json(&transformed, &fresh),
                );
            }
            None => printer.record(
                || body.trim_end().to_string(),
                || transform_json(&transformed, &fresh),
            ),
        }
        Ok(Outcome::Affirmative)
    }
}

fn transform_json(b: &Basis, fresh: &Option<mrules_core::Var>) -> serde_json::Value {
    json!({
        "kind": "transform",
        "basis_kind": b.kind().to_string(),
        "rules": b.rules().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "fresh_variable": fresh.as_ref().map(|q| q.to_string()),
    })
}

#[derive(Debug, Args)]
pub struct ProveCmd {
    /// Formula files, one formula per line, `#` comments
    files: Vec<PathBuf>,

    /// Inline formula; repeatable
    #[arg(long = "formula", value_name = "TEXT")]
    formula: Vec<String>,

    /// For rejected formulas, search algebras up to size N for a countermodel
    #[arg(long, value_name = "N")]
    countermodel: Option<usize>,
}

impl ProveCmd {
    fn run(&self, cfg: &Config, printer: &Printer) -> Result<Outcome, CliError> {
        let mut formulas: Vec<Sourced<Formula>> = Vec::new();
        for path in &self.files {
            formulas.extend(formats::read_formulas(path)?);
        }
        for text in &self.formula {
            formulas.push(Sourced {
                origin: format!("formula {text:?}"),
                value: parse_inline_formula(text)?,
            });
        }
        if formulas.is_empty() {
            return Err(CliError::Usage(
                "nothing to prove: give files or --formula".into(),
            ));
        }
        let pool = match self.countermodel {
            Some(n) => enumerate(n, &cfg.enumerate_options())?,
            None => Vec::new(),
        };
        let mut budget = cfg.fresh_budget();
        let mut all = true;
        for f in &formulas {
            if is_theorem(&f.value) {
                printer.record(
                    || format!("theorem       {}", f.value),
                    || json!({"kind": "prove", "formula": f.value.to_string(), "theorem": true}),
                );
                continue;
            }
            all = false;
            let mut counter = None;
            for a in &pool {
                if let Verdict::Refuted(w) = models_formula(a, &f.value, &mut budget)? {
                    counter = Some((a, w));
                    break;
                }
            }
            printer.record(
                || match &counter {
                    Some((a, w)) => format!(
                        "not a theorem {} (countermodel of size {} under {})",
                        f.value,
                        a.size(),
                        w.valuation
                    ),
                    None => format!("not a theorem {}", f.value),
                },
                || {
                    json!({
                        "kind": "prove", "formula": f.value.to_string(), "theorem": false,
                        "countermodel": counter.as_ref().map(|(a, w)| json!({
                            "algebra_size": a.size(),
                            "refutation": refutation_json(w),
                        })),
                    })
                },
            );
        }
        Ok(if all {
            Outcome::Affirmative
        } else {
            Outcome::Negative
        })
    }
}

#[derive(Debug, Args)]
pub struct VerifySuiteCmd {
    /// Size range for the quantified suites, inclusive, as `LO..HI`
    #[arg(long, value_name = "LO..HI", default_value = "1..6")]
    sizes: String,

    /// Extra rule files appended to the embedded corpus; repeatable
    #[arg(long = "corpus", value_name = "FILE")]
    corpus: Vec<PathBuf>,

    /// Number of seeded random formulas in the prover suite
    #[arg(long, value_name = "N", default_value_t = 500)]
    samples: usize,

    /// List the suite names and exit
    #[arg(long)]
    list: bool,
}

impl VerifySuiteCmd {
    fn run(&self, mut cfg: Config, printer: &Printer) -> Result<Outcome, CliError> {
        if self.list {
            for name in suites::suite_names() {
                printer.record(
                    || name.to_string(),
                    || json!({"kind": "suite-name", "name": name}),
                );
            }
            return Ok(Outcome::Affirmative);
        }
        let (lo, hi) = parse_sizes(&self.sizes)?;
        cfg.corpus = self.corpus.clone();
        let rules = corpus::corpus_rules(&cfg.corpus)?;
        let reports = suites::run_all(&cfg, lo..=hi, self.samples, &rules);
        suites::emit(&reports, printer)
    }
}

fn parse_sizes(text: &str) -> Result<(usize, usize), CliError> {
    let err = || {
        CliError::Usage(format!(
            "--sizes {text:?}: expected an inclusive range like 1..6"
        ))
    };
    let (lo, hi) = text.split_once("..").ok_or_else(err)?;
    let lo: usize = lo.trim().parse().map_err(|_| err())?;
    let hi: usize = hi
        .trim()
        .trim_start_matches('=')
        .trim()
        .parse()
        .map_err(|_| err())?;
    if lo == 0 || hi < lo {
        return Err(err());
    }
    Ok((lo, hi))
}
