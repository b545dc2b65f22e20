//! Built-in workloads: the embedded fifty-rule corpus, a curated list of
//! intuitionistically invalid formulas with the size of their smallest
//! countermodels, and a seeded random formula generator.

use std::path::Path;

use mrules_core::syntax::parse_formula;
use mrules_core::{Formula, MRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::errors::CliError;
use crate::formats::{self, Sourced};

/// The embedded corpus, compiled into the binary.
pub const RULES_TEXT: &str = include_str!("../corpus/rules.txt");

/// Parses the embedded corpus. Infallible by construction; unit-tested.
pub fn embedded_rules() -> Vec<Sourced<MRule>> {
    formats::rules_from_str("corpus", RULES_TEXT).expect("the embedded corpus parses")
}

/// The embedded corpus plus any extra rule files from the configuration.
pub fn corpus_rules(extra: &[impl AsRef<Path>]) -> Result<Vec<Sourced<MRule>>, CliError> {
    let mut rules = embedded_rules();
    for path in extra {
        rules.extend(formats::read_rules(path.as_ref())?);
    }
    Ok(rules)
}

/// A formula the prover must reject, paired with the exact size of its
/// smallest Heyting countermodel. The sizes were found by exhaustive
/// search over all algebras with at most ten elements and are asserted
/// exactly: a countermodel of the stated size exists and none smaller
/// does.
pub struct CuratedNonTheorem {
    pub text: &'static str,
    pub min_countermodel_size: usize,
}

/// Twenty classically valid schemes that fail intuitionistically.
///
/// Only the last entry needs nine elements: a refuting algebra for it must
/// contain a three-element antichain with a common upper bound, and the
/// smallest such downset lattice has nine elements.
pub const CURATED_NON_THEOREMS: &[CuratedNonTheorem] = &[
    CuratedNonTheorem {
        text: "p | ~p",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "~~p -> p",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "((p -> q) -> p) -> p",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "(p -> q) -> (~p | q)",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "p | (p -> q)",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "(~p -> ~q) -> (q -> p)",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "~(~p & ~q) -> (p | q)",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "(p -> (q | r)) -> ((p -> q) | r)",
        min_countermodel_size: 3,
    },
    CuratedNonTheorem {
        text: "~(p & q) -> ~p | ~q",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "(p -> q) | (q -> p)",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "~p | ~~p",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "((p | q) -> p) | ((p | q) -> q)",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "(p -> (q | r)) -> ((p -> q) | (p -> r))",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "((p -> q) -> r) -> (((q -> p) -> r) -> r)",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "((p & q) -> r) -> ((p -> r) | (q -> r))",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "(~~p -> p) -> (p | ~p)",
        min_countermodel_size: 5,
    },
    CuratedNonTheorem {
        text: "((p -> q) -> (p | r)) -> (((p -> q) -> p) | ((p -> q) -> r))",
        min_countermodel_size: 7,
    },
    CuratedNonTheorem {
        text: "((~~p -> p) -> p | ~p) -> (((~~p -> p) -> ~p) | ((~~p -> p) -> ~~p))",
        min_countermodel_size: 7,
    },
    CuratedNonTheorem {
        text: "((~~p -> p) -> p | ~p) -> (~~p | ~p)",
        min_countermodel_size: 7,
    },
    CuratedNonTheorem {
        text: "(~p -> (q | r)) -> ((~p -> q) | (~p -> r))",
        min_countermodel_size: 9,
    },
];

pub fn curated_formula(c: &CuratedNonTheorem) -> Formula {
    parse_formula(c.text).expect("curated formulas parse")
}

/// Randomly generated formulas over at most `p, q, r`, nesting depth at
/// most four. The stream is a pure function of the seed.
pub fn random_formulas(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_formula(&mut rng, 4)).collect()
}

fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_range(0..10) < 3 {
        return match rng.gen_range(0..5) {
            0 => Formula::var("p"),
            1 => Formula::var("q"),
            2 => Formula::var("r"),
            3 => Formula::Bot,
            _ => Formula::Top,
        };
    }
    match rng.gen_range(0..7) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 | 2 => Formula::and(
            random_formula(rng, depth - 1),
            random_formula(rng, depth - 1),
        ),
        3 | 4 => Formula::or(
            random_formula(rng, depth - 1),
            random_formula(rng, depth - 1),
        ),
        _ => Formula::imp(
            random_formula(rng, depth - 1),
            random_formula(rng, depth - 1),
        ),
    }
}
