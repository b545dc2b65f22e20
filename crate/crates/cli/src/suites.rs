//! The built-in verification suites behind `verify-suite`.
//!
//! Each suite exercises one slice of the library against facts established
//! independently of this code: hand-checked minimal countermodels, algebra
//! counts confirmed by a separate downset enumeration, and structural laws
//! (product behavior, reduction equivalences over well-connected algebras)
//! checked on concrete instances. Suites run in parallel but the report is
//! emitted sorted by suite name, so for a fixed seed and configuration two
//! runs produce byte-identical output.
//!
//! A suite that exhausts its evaluation budget or hits a size cap reports
//! SKIP, never PASS: an unfinished check is not evidence.

use std::ops::RangeInclusive;
use std::thread;

use mrules_core::algebra::{enumerate, EnumerateOptions};
use mrules_core::freealg::{check_admissible_bounded, free_algebra, AdmissibilityVerdict};
use mrules_core::prover::is_theorem;
use mrules_core::semantics::{
    eval, models_formula, models_mrule, BudgetExceeded, EvalBudget, Refutation, Valuation, Verdict,
};
use mrules_core::syntax::{fresh_variable, parse_formula, parse_rule};
use mrules_core::transforms::{
    dp_rule, find_independence_witness, m_basis_from_s_basis, q_reduce, reduce,
    s_basis_from_m_basis, Basis, BasisKind,
};
use mrules_core::{FiniteHeytingAlgebra, Formula, MRule, Substitution, Var};
use serde_json::json;

use crate::commands::Outcome;
use crate::config::Config;
use crate::corpus::{self, curated_formula, CURATED_NON_THEOREMS};
use crate::errors::CliError;
use crate::formats::Sourced;
use crate::output::Printer;

/// Isomorphism-class counts by algebra size, starting at size 1 and
/// including the degenerate algebra. Confirmed against an independent
/// enumeration of finite distributive lattices via poset downsets.
const ALGEBRA_COUNTS_BY_SIZE: [usize; 8] = [1, 1, 1, 2, 3, 5, 8, 15];

/// Element traces of the one-generator free algebra over the two-element
/// Boolean algebra, in element order.
const FREE_B2_RANK1_TRACES: [&str; 4] = ["0", "1", "x0", "x0 -> 0"];

/// No algebra with fewer than nine elements refutes the restricted-premise
/// splitting rule below; the least refuting algebra has exactly nine.
const HARROP_MIN_REFUTER_SIZE: usize = 9;

const HARROP: &str = "~p -> q | r / (~p -> q) | (~p -> r)";

pub struct Ctx<'a> {
    cfg: &'a Config,
    lo: usize,
    hi: usize,
    samples: usize,
    rules: &'a [Sourced<MRule>],
}

impl Ctx<'_> {
    /// Non-degenerate algebras with size in `[lo, min(cap, hi)]`.
    fn pool(&self, cap: usize) -> Result<Vec<FiniteHeytingAlgebra>, CliError> {
        let upper = cap.min(self.hi);
        let mut pool = enumerate(upper, &self.cfg.enumerate_options())?;
        pool.retain(|a| a.size() >= self.lo);
        Ok(pool)
    }

    fn budget(&self) -> EvalBudget {
        self.cfg.fresh_budget()
    }
}

/// Tally of assertions made by one suite, with the first failure kept for
/// the report.
#[derive(Default)]
struct Checks {
    count: usize,
    failures: usize,
    first: Option<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }
}

pub enum SuiteResult {
    Pass {
        checks: usize,
    },
    Fail {
        checks: usize,
        failures: usize,
        first: String,
    },
    Skip {
        reason: String,
    },
}

pub struct SuiteReport {
    pub name: &'static str,
    pub result: SuiteResult,
}

type SuiteFn = fn(&Ctx) -> Result<Checks, CliError>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("admissibility-dp", admissibility_dp),
    ("basis-transforms", basis_transforms),
    ("enumeration-counts", enumeration_counts),
    ("free-algebra-sizes", free_algebra_sizes),
    ("independence-harrop", independence_harrop),
    ("product-validity", product_validity),
    ("prover-countermodels", prover_countermodels),
    ("prover-soundness", prover_soundness),
    ("reduction-equivalence", reduction_equivalence),
    ("syntax-roundtrip", syntax_roundtrip),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(name, _)| *name)
}

pub fn run_all(
    cfg: &Config,
    sizes: RangeInclusive<usize>,
    samples: usize,
    rules: &[Sourced<MRule>],
) -> Vec<SuiteReport> {
    let ctx = Ctx {
        cfg,
        lo: *sizes.start(),
        hi: *sizes.end(),
        samples,
        rules,
    };
    let ctx = &ctx;
    let mut reports: Vec<SuiteReport> = thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|&(name, suite)| (name, scope.spawn(move || suite(ctx))))
            .collect();
        handles
            .into_iter()
            .map(|(name, handle)| SuiteReport {
                name,
                result: match handle.join() {
                    Ok(outcome) => settle(outcome),
                    Err(_) => SuiteResult::Fail {
                        checks: 0,
                        failures: 1,
                        first: String::from("suite panicked"),
                    },
                },
            })
            .collect()
    });
    reports.sort_by_key(|r| r.name);
    reports
}

fn settle(outcome: Result<Checks, CliError>) -> SuiteResult {
    match outcome {
        Ok(c) if c.failures == 0 => SuiteResult::Pass { checks: c.count },
        Ok(c) => SuiteResult::Fail {
            checks: c.count,
            failures: c.failures,
            first: c.first.unwrap_or_default(),
        },
        // A cap or budget ran out: the suite is inconclusive, not passed.
        Err(CliError::Limit(reason)) => SuiteResult::Skip { reason },
        Err(CliError::Usage(message)) => SuiteResult::Fail {
            checks: 0,
            failures: 1,
            first: message,
        },
    }
}

pub fn emit(reports: &[SuiteReport], printer: &Printer) -> Result<Outcome, CliError> {
    let (mut passed, mut failed, mut skipped) = (0usize, 0usize, 0usize);
    for r in reports {
        match &r.result {
            SuiteResult::Pass { checks } => {
                passed += 1;
                printer.record(
                    || format!("PASS {} ({checks} checks)", r.name),
                    || json!({"kind": "suite", "name": r.name, "status": "pass", "checks": checks}),
                );
            }
            SuiteResult::Fail {
                checks,
                failures,
                first,
            } => {
                failed += 1;
                printer.record(
                    || {
                        format!(
                            "FAIL {} ({checks} checks, {failures} failed): {first}",
                            r.name
                        )
                    },
                    || {
                        json!({
                            "kind": "suite", "name": r.name, "status": "fail",
                            "checks": checks, "failures": failures, "first": first,
                        })
                    },
                );
            }
            SuiteResult::Skip { reason } => {
                skipped += 1;
                printer.record(
                    || format!("SKIP {}: {reason}", r.name),
                    || json!({"kind": "suite", "name": r.name, "status": "skip", "reason": reason}),
                );
            }
        }
    }
    printer.record(
        || format!("{passed} passed, {failed} failed, {skipped} skipped"),
        || json!({"kind": "summary", "passed": passed, "failed": failed, "skipped": skipped}),
    );
    if failed > 0 {
        Ok(Outcome::Negative)
    } else if skipped > 0 {
        Err(CliError::Limit(format!(
            "{skipped} suite(s) skipped: a budget or cap ran out before they finished"
        )))
    } else {
        Ok(Outcome::Affirmative)
    }
}

fn b2() -> FiniteHeytingAlgebra {
    FiniteHeytingAlgebra::two_element()
}

/// First algebra in `pool` refuting the formula, with the least refutation.
fn first_countermodel<'a>(
    pool: &'a [FiniteHeytingAlgebra],
    f: &Formula,
    budget: &mut EvalBudget,
) -> Result<Option<(&'a FiniteHeytingAlgebra, Refutation)>, BudgetExceeded> {
    for a in pool {
        if let Verdict::Refuted(w) = models_formula(a, f, budget)? {
            return Ok(Some((a, w)));
        }
    }
    Ok(None)
}

/// Premise-free rule concluding `f`; refutations of `f` replay against it.
fn as_rule(f: &Formula) -> MRule {
    MRule::new(Vec::new(), vec![f.clone()])
}

/// The splitting rule is not admissible over the two-element algebra: the
/// verdict's substitution sends the premise to a classical tautology whose
/// disjuncts are separately refutable. Derivable rules stay admissible.
fn admissibility_dp(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let mut budget = ctx.budget();
    let k = [b2()];
    let dp = dp_rule();
    let verdict = check_admissible_bounded(&dp, &k, 2, &ctx.cfg.limits(), &mut budget)?;
    match &verdict {
        AdmissibilityVerdict::NotAdmissible {
            rank,
            witness,
            refutation,
        } => {
            c.check(*rank == 2, || {
                format!("splitting rule refuted at rank {rank}, not 2")
            });
            c.check(refutation.replays(&dp), || {
                String::from("stored refutation of the splitting rule does not replay")
            });
            let premise = witness.apply(&dp.premises()[0]);
            c.check(
                models_formula(&k[0], &premise, &mut budget)?.holds(),
                || {
                    format!(
                        "witness premise image {premise} is not valid on the two-element algebra"
                    )
                },
            );
            for conclusion in dp.conclusions() {
                let image = witness.apply(conclusion);
                c.check(!models_formula(&k[0], &image, &mut budget)?.holds(), || {
                    format!("witness conclusion image {image} is valid on the two-element algebra")
                });
                c.check(!is_theorem(&image), || {
                    format!("witness conclusion image {image} is intuitionistically provable")
                });
            }
        }
        AdmissibilityVerdict::AdmissibleUpToRank(_) => {
            c.check(false, || {
                String::from("splitting rule reported admissible over the two-element algebra")
            });
        }
    }
    // Rules derivable in every Heyting algebra, and the restricted-premise
    // splitting rule (classically derivable), stay admissible here.
    for text in ["p, p -> q / q", "p & q / p", HARROP] {
        let r = parse_rule(text).expect("suite rule parses");
        let verdict = check_admissible_bounded(&r, &k, 2, &ctx.cfg.limits(), &mut budget)?;
        c.check(!verdict.is_not_admissible(), || {
            format!("{r} reported not admissible over the two-element algebra")
        });
    }
    Ok(c)
}

/// Basis conversions: the empty single-conclusion basis gains exactly the
/// splitting rule; converting back joins one shared fresh variable onto both
/// sides; and substituting bottom for that variable collapses the joined
/// form back to the plain reduction, intuitionistically.
fn basis_transforms(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let empty = Basis::new(BasisKind::SingleConclusion, Vec::new(), "empty")?;
    let m = m_basis_from_s_basis(&empty)?;
    c.check(m.rules() == [dp_rule()], || {
        String::from("empty s-basis did not become exactly the splitting rule")
    });
    let (s, q) = s_basis_from_m_basis(&m)?;
    c.check(q == Var::new("q0"), || {
        format!("fresh variable was {q}, not q0")
    });
    c.check(
        s.rules().len() == 1 && s.rules()[0].to_string() == "p | q | q0 / p | q | q0",
        || format!("joined splitting rule came out as {}", s.rules()[0]),
    );

    // Round trip over the single-conclusion corpus rules: exactly one rule
    // (the joined splitting rule) is added.
    let shape: Vec<MRule> = ctx
        .rules
        .iter()
        .filter(|r| r.value.is_single_conclusion())
        .map(|r| r.value.clone())
        .collect();
    let width = shape.len();
    let basis = Basis::new(BasisKind::SingleConclusion, shape, "corpus")?;
    let (back, _) = s_basis_from_m_basis(&m_basis_from_s_basis(&basis)?)?;
    c.check(back.rules().len() == width + 1, || {
        format!(
            "round trip of {width} rules produced {} rules, expected {}",
            back.rules().len(),
            width + 1
        )
    });

    // For every corpus rule, sending the fresh variable to bottom makes the
    // joined reduction intuitionistically equivalent to the plain one.
    for r in ctx.rules {
        let q = fresh_variable(&r.value);
        let mut sigma = Substitution::new();
        sigma.bind(q.clone(), Formula::Bot);
        let plain = reduce(&r.value);
        let joined = sigma.apply_rule(&q_reduce(&r.value, &q)?);
        let equivalent = core::iter::zip(
            plain.premises().iter().chain(plain.conclusions()),
            joined.premises().iter().chain(joined.conclusions()),
        )
        .all(|(a, b)| {
            is_theorem(&Formula::imp(a.clone(), b.clone()))
                && is_theorem(&Formula::imp(b.clone(), a.clone()))
        });
        c.check(equivalent, || {
            format!(
                "{}: bottom-substituted joined reduction differs from the plain one",
                r.origin
            )
        });
    }
    Ok(c)
}

/// Class counts match the independently confirmed table, and enumerated
/// algebras are pairwise non-isomorphic.
fn enumeration_counts(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let upper = ctx.hi.min(ALGEBRA_COUNTS_BY_SIZE.len());
    let opts = EnumerateOptions {
        include_degenerate: true,
        size_cap: ctx.cfg.size_cap,
    };
    let all = enumerate(upper, &opts)?;
    let mut counts = vec![0usize; upper + 1];
    for a in &all {
        counts[a.size()] += 1;
    }
    for size in 1..=upper {
        c.check(counts[size] == ALGEBRA_COUNTS_BY_SIZE[size - 1], || {
            format!(
                "size {size}: enumerated {} classes, expected {}",
                counts[size],
                ALGEBRA_COUNTS_BY_SIZE[size - 1]
            )
        });
    }
    let small: Vec<&FiniteHeytingAlgebra> =
        all.iter().filter(|a| a.size() <= 6.min(upper)).collect();
    for i in 0..small.len() {
        for j in i + 1..small.len() {
            c.check(!small[i].is_isomorphic(small[j]), || {
                format!("enumerated algebras {i} and {j} are isomorphic")
            });
        }
    }
    Ok(c)
}

/// Free-algebra sizes over small components, the exact trace list in the
/// rank-one Boolean case, and coordinatewise replay of every trace.
fn free_algebra_sizes(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let limits = ctx.cfg.limits();

    let f1 = free_algebra(&[b2()], 1, &limits)?;
    c.check(f1.size() == 4, || {
        format!(
            "rank-1 free algebra over the two-element algebra has {} elements, expected 4",
            f1.size()
        )
    });
    let traces: Vec<String> = f1.traces().iter().map(|t| t.to_string()).collect();
    c.check(traces == FREE_B2_RANK1_TRACES, || {
        format!("rank-1 traces were {traces:?}")
    });

    let f2 = free_algebra(&[b2()], 2, &limits)?;
    c.check(f2.size() == 16, || {
        format!(
            "rank-2 free algebra over the two-element algebra has {} elements, expected 16",
            f2.size()
        )
    });

    let g1 = free_algebra(&[FiniteHeytingAlgebra::chain(3)], 1, &limits)?;
    c.check(g1.size() == 6, || {
        format!(
            "rank-1 free algebra over the three-element chain has {} elements, expected 6",
            g1.size()
        )
    });

    // Replay: evaluating an element's trace at any coordinate's argument
    // tuple recovers that coordinate of the element.
    for (label, free) in [
        ("rank-1/two-element", &f1),
        ("rank-2/two-element", &f2),
        ("rank-1/three-chain", &g1),
    ] {
        let mut ok = true;
        'elements: for e in 0..free.size() {
            for (coord, (component, args)) in free.coordinates().iter().enumerate() {
                let mut nu = Valuation::new();
                for (i, &value) in args.iter().enumerate() {
                    nu.bind(Var::new(format!("x{i}")), value);
                }
                let got = eval(&free.components()[*component], &nu, free.trace(e));
                if got != Ok(free.tuple(e)[coord]) {
                    ok = false;
                    break 'elements;
                }
            }
        }
        c.check(ok, || {
            format!("{label}: some trace does not replay coordinatewise")
        });
    }
    Ok(c)
}

/// The restricted-premise splitting rule is underivable but only barely:
/// no algebra with at most eight elements refutes it, and the least witness
/// (which also validates the splitting rule) has exactly nine.
fn independence_harrop(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let mut budget = ctx.budget();
    let harrop = parse_rule(HARROP).expect("suite rule parses");
    let rules = vec![dp_rule(), harrop.clone()];

    let mut pool = enumerate(HARROP_MIN_REFUTER_SIZE, &ctx.cfg.enumerate_options())?;
    pool.sort_by_key(FiniteHeytingAlgebra::size);
    for a in pool.iter().filter(|a| a.size() < HARROP_MIN_REFUTER_SIZE) {
        c.check(models_mrule(a, &harrop, &mut budget)?.holds(), || {
            format!("a {}-element algebra refutes the rule", a.size())
        });
    }
    let found = find_independence_witness(&rules, &harrop, pool, &mut budget)?;
    match found {
        Some((witness, refutation)) => {
            c.check(witness.size() == HARROP_MIN_REFUTER_SIZE, || {
                format!(
                    "least witness has {} elements, expected {}",
                    witness.size(),
                    HARROP_MIN_REFUTER_SIZE
                )
            });
            c.check(witness.is_well_connected(), || {
                String::from("least witness is not well-connected")
            });
            c.check(refutation.replays(&harrop), || {
                String::from("witness refutation does not replay")
            });
            c.check(
                models_mrule(&witness, &dp_rule(), &mut budget)?.holds(),
                || String::from("witness does not validate the splitting rule"),
            );
        }
        None => c.check(false, || String::from("no witness found at size 9")),
    }
    Ok(c)
}

/// Direct products: never well-connected, always refute the splitting rule,
/// and validate a single-conclusion rule exactly when both factors do.
fn product_validity(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let mut budget = ctx.budget();
    let factors = ctx.pool(4)?;
    let dp = dp_rule();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            let p = a.direct_product(b, ctx.cfg.element_cap)?;
            c.check(!p.is_well_connected(), || {
                format!("{}x{} product is well-connected", a.size(), b.size())
            });
            match models_mrule(&p, &dp, &mut budget)? {
                Verdict::Refuted(w) => c.check(w.replays(&dp), || {
                    format!(
                        "{}x{} product: splitting refutation does not replay",
                        a.size(),
                        b.size()
                    )
                }),
                Verdict::Holds => c.check(false, || {
                    format!(
                        "{}x{} product validates the splitting rule",
                        a.size(),
                        b.size()
                    )
                }),
            }
            for r in ctx.rules.iter().filter(|r| r.value.is_single_conclusion()) {
                let on_product = models_mrule(&p, &r.value, &mut budget)?.holds();
                let on_factors = models_mrule(a, &r.value, &mut budget)?.holds()
                    && models_mrule(b, &r.value, &mut budget)?.holds();
                c.check(on_product == on_factors, || {
                    format!(
                        "{}: {}x{} product validity {} but factor validity {}",
                        r.origin,
                        a.size(),
                        b.size(),
                        on_product,
                        on_factors
                    )
                });
            }
        }
    }
    Ok(c)
}

/// Each curated non-theorem is rejected by the prover and refuted first at
/// exactly its known minimal algebra size.
fn prover_countermodels(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let mut budget = ctx.budget();
    let largest = CURATED_NON_THEOREMS
        .iter()
        .map(|t| t.min_countermodel_size)
        .max()
        .expect("curated list is non-empty");
    let mut pool = enumerate(largest, &ctx.cfg.enumerate_options())?;
    pool.sort_by_key(FiniteHeytingAlgebra::size);
    for t in CURATED_NON_THEOREMS {
        let f = curated_formula(t);
        c.check(!is_theorem(&f), || format!("{f} was proved"));
        match first_countermodel(&pool, &f, &mut budget)? {
            Some((a, w)) => {
                c.check(a.size() == t.min_countermodel_size, || {
                    format!(
                        "{f}: first countermodel has {} elements, expected {}",
                        a.size(),
                        t.min_countermodel_size
                    )
                });
                c.check(w.replays(&as_rule(&f)), || {
                    format!("{f}: countermodel does not replay")
                });
            }
            None => c.check(false, || {
                format!("{f}: no countermodel up to size {largest}")
            }),
        }
    }
    Ok(c)
}

/// Seeded random formulas: everything the prover accepts is valid in every
/// algebra of the size range, and every countermodel found for a rejected
/// formula replays.
fn prover_soundness(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let mut budget = ctx.budget();
    let pool = ctx.pool(6)?;
    for f in corpus::random_formulas(ctx.cfg.seed, ctx.samples) {
        if is_theorem(&f) {
            c.check(
                first_countermodel(&pool, &f, &mut budget)?.is_none(),
                || format!("proved formula {f} has a countermodel"),
            );
        } else if let Some((_, w)) = first_countermodel(&pool, &f, &mut budget)? {
            c.check(w.replays(&as_rule(&f)), || {
                format!("countermodel for {f} does not replay")
            });
        }
    }
    Ok(c)
}

/// On well-connected algebras a rule, its fold to `meet / join`, and its
/// variable-joined fold are all equivalent; on a product the rule and its
/// fold come apart (the splitting rule fails while its fold holds).
fn reduction_equivalence(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    let mut budget = ctx.budget();
    let pool = ctx.pool(8)?;
    for a in pool.iter().filter(|a| a.is_well_connected()) {
        for r in ctx.rules {
            let q = fresh_variable(&r.value);
            let direct = models_mrule(a, &r.value, &mut budget)?.holds();
            let plain = models_mrule(a, &reduce(&r.value), &mut budget)?.holds();
            let joined = models_mrule(a, &q_reduce(&r.value, &q)?, &mut budget)?.holds();
            c.check(direct == plain && direct == joined, || {
                format!(
                    "{}: on a well-connected {}-element algebra the rule gives {direct}, its fold {plain}, its joined fold {joined}",
                    r.origin,
                    a.size()
                )
            });
        }
    }
    let dp = dp_rule();
    let square = b2().direct_product(&b2(), ctx.cfg.element_cap)?;
    c.check(!models_mrule(&square, &dp, &mut budget)?.holds(), || {
        String::from("the four-element product validates the splitting rule")
    });
    c.check(
        models_mrule(&square, &reduce(&dp), &mut budget)?.holds(),
        || String::from("the four-element product refutes the splitting rule's fold"),
    );
    Ok(c)
}

/// Printing then parsing is the identity on corpus rules and on seeded
/// random formulas.
fn syntax_roundtrip(ctx: &Ctx) -> Result<Checks, CliError> {
    let mut c = Checks::default();
    for r in ctx.rules {
        let printed = r.value.to_string();
        c.check(parse_rule(&printed).as_ref() == Ok(&r.value), || {
            format!("{}: {printed} does not round-trip", r.origin)
        });
    }
    for f in corpus::random_formulas(ctx.cfg.seed, 200) {
        let printed = f.to_string();
        c.check(parse_formula(&printed).as_ref() == Ok(&f), || {
            format!("{printed} does not round-trip")
        });
    }
    Ok(c)
}
