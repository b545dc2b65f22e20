//! Syntactic rule transformations and basis conversions.
//!
//! The two reductions turn an m-rule `Γ / Δ` into single-conclusion form:
//! [`reduce`] folds it to `⋀Γ / ⋁Δ` (with `⋀∅ = 1`, `⋁∅ = 0`), and
//! [`q_reduce`] to `(⋀Γ) ∨ q / (⋁Δ) ∨ q` for a variable `q` foreign to the
//! rule. Over well-connected algebras all three are equivalent, which is
//! what the basis conversions exploit: an s-basis becomes an m-basis by
//! adjoining the splitting rule `p ∨ q / p, q`, and an m-basis becomes an
//! s-basis by q-reducing every rule with one shared fresh variable.
//!
//! Neither reduction simplifies formulas; equivalences such as `φ ∨ 0 ≡ φ`
//! are left to the validity prover.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::FiniteHeytingAlgebra;
use crate::freealg::refute_derivability;
use crate::semantics::{BudgetExceeded, EvalBudget, Refutation};
use crate::syntax::{big_and, big_or, fresh_variable_for_all, Formula, MRule, Var};

/// Whether a rule set is constrained to single-conclusion rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    SingleConclusion,
    MultipleConclusion,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::SingleConclusion => f.write_str("s-basis"),
            BasisKind::MultipleConclusion => f.write_str("m-basis"),
        }
    }
}

/// A finite set of rules presented as a basis for some logic's admissible
/// rules, tagged by kind. Rules are kept deduplicated in first-occurrence
/// order; an s-basis may contain only single-conclusion rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    kind: BasisKind,
    rules: Vec<MRule>,
    description: String,
}

impl Basis {
    pub fn new(
        kind: BasisKind,
        rules: Vec<MRule>,
        description: impl Into<String>,
    ) -> Result<Basis, TransformError> {
        let rules = dedupe(rules);
        if kind == BasisKind::SingleConclusion {
            if let Some(index) = rules.iter().position(|r| !r.is_single_conclusion()) {
                return Err(TransformError::NotSingleConclusion { index });
            }
        }
        Ok(Basis {
            kind,
            rules,
            description: description.into(),
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn rules(&self) -> &[MRule] {
        &self.rules
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

fn dedupe(rules: Vec<MRule>) -> Vec<MRule> {
    let mut out: Vec<MRule> = Vec::with_capacity(rules.len());
    for r in rules {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformError {
    KindMismatch {
        expected: BasisKind,
        found: BasisKind,
    },
    NotSingleConclusion {
        index: usize,
    },
    VariableOccurs(Var),
    RuleNotInSet,
    Budget(BudgetExceeded),
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::KindMismatch { expected, found } => {
                write!(f, "expected an {expected}, found an {found}")
            }
            TransformError::NotSingleConclusion { index } => {
                write!(f, "rule {index} of an s-basis has conclusion count != 1")
            }
            TransformError::VariableOccurs(v) => {
                write!(f, "variable {v} already occurs in the rule")
            }
            TransformError::RuleNotInSet => f.write_str("the rule is not a member of the set"),
            TransformError::Budget(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for TransformError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            TransformError::Budget(e) => Some(e),
            _ => None,
        }
    }
}

impl From<BudgetExceeded> for TransformError {
    fn from(e: BudgetExceeded) -> TransformError {
        TransformError::Budget(e)
    }
}

/// The reduction `Γ / Δ ↦ ⋀Γ / ⋁Δ`, with `⋀∅ = 1` and `⋁∅ = 0`.
pub fn reduce(r: &MRule) -> MRule {
    MRule::new(
        alloc::vec![big_and(r.premises())],
        alloc::vec![big_or(r.conclusions())],
    )
}

/// The q-reduction `Γ / Δ ↦ (⋀Γ) ∨ q / (⋁Δ) ∨ q`; `q` must not occur in
/// the rule (see [`crate::syntax::fresh_variable`]).
pub fn q_reduce(r: &MRule, q: &Var) -> Result<MRule, TransformError> {
    if r.vars().contains(q) {
        return Err(TransformError::VariableOccurs(q.clone()));
    }
    Ok(MRule::new(
        alloc::vec![Formula::or(big_and(r.premises()), Formula::Var(q.clone()))],
        alloc::vec![Formula::or(
            big_or(r.conclusions()),
            Formula::Var(q.clone())
        )],
    ))
}

/// The splitting rule `p ∨ q / p, q`, valid exactly in the well-connected
/// algebras.
pub fn dp_rule() -> MRule {
    let p = || Formula::var("p");
    let q = || Formula::var("q");
    MRule::new(alloc::vec![Formula::or(p(), q())], alloc::vec![p(), q()])
}

/// Converts an s-basis to an m-basis by adjoining the splitting rule.
pub fn m_basis_from_s_basis(b: &Basis) -> Result<Basis, TransformError> {
    if b.kind != BasisKind::SingleConclusion {
        return Err(TransformError::KindMismatch {
            expected: BasisKind::SingleConclusion,
            found: b.kind,
        });
    }
    let mut rules = b.rules.clone();
    rules.push(dp_rule());
    Basis::new(BasisKind::MultipleConclusion, rules, b.description.clone())
}

/// Converts an m-basis to an s-basis by q-reducing every rule with one
/// shared variable fresh for the whole basis; returns that variable too.
pub fn s_basis_from_m_basis(b: &Basis) -> Result<(Basis, Var), TransformError> {
    if b.kind != BasisKind::MultipleConclusion {
        return Err(TransformError::KindMismatch {
            expected: BasisKind::MultipleConclusion,
            found: b.kind,
        });
    }
    let q = fresh_variable_for_all(&b.rules);
    let rules = b
        .rules
        .iter()
        .map(|r| q_reduce(r, &q).expect("shared variable is fresh for every rule"))
        .collect();
    let basis = Basis::new(BasisKind::SingleConclusion, rules, b.description.clone())
        .expect("q-reduced rules are single-conclusion");
    Ok((basis, q))
}

/// Independence of `r` within the m-basis `rules ∪ {splitting rule}`:
/// searches `pool` for an algebra validating every other basis rule while
/// refuting `r`. For single-conclusion `r` the side set contains the
/// splitting rule, so any witness is automatically well-connected; for the
/// splitting rule itself the side set is just the other rules. A witness
/// certifies `r` is not derivable from the rest; `None` is inconclusive.
///
/// `r` must be a member of `rules`.
pub fn find_independence_witness<I>(
    rules: &[MRule],
    r: &MRule,
    pool: I,
    budget: &mut EvalBudget,
) -> Result<Option<(FiniteHeytingAlgebra, Refutation)>, TransformError>
where
    I: IntoIterator<Item = FiniteHeytingAlgebra>,
{
    if !rules.contains(r) {
        return Err(TransformError::RuleNotInSet);
    }
    let mut side = rules.to_vec();
    side.push(dp_rule());
    let side: Vec<MRule> = dedupe(side).into_iter().filter(|ru| ru != r).collect();
    Ok(refute_derivability(&side, r, pool, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poset;
    use crate::prover::is_theorem;
    use crate::semantics::models_mrule;
    use crate::syntax::{parse_rule, Substitution};
    use std::string::ToString;
    use std::vec;
    use std::vec::Vec;

    fn b2() -> FiniteHeytingAlgebra {
        FiniteHeytingAlgebra::two_element()
    }

    fn square() -> FiniteHeytingAlgebra {
        b2().direct_product(&b2(), 16).unwrap()
    }

    fn harrop() -> MRule {
        parse_rule("~p -> q | r / (~p -> q) | (~p -> r)").unwrap()
    }

    #[test]
    fn reduce_folds_both_sides() {
        assert_eq!(reduce(&dp_rule()).to_string(), "p | q / p | q");
        assert_eq!(reduce(&parse_rule("/").unwrap()).to_string(), "1 / 0");
        let kuznetsov =
            parse_rule("(~~p -> p) -> p | ~p / ((~~p -> p) -> ~p) | ((~~p -> p) -> ~~p)").unwrap();
        assert_eq!(reduce(&kuznetsov), kuznetsov);
        assert_eq!(
            reduce(&parse_rule("a, b / c, d").unwrap()).to_string(),
            "a & b / c | d"
        );
    }

    #[test]
    fn q_reduce_joins_the_fresh_variable_on_both_sides() {
        let q0 = Var::new("q0");
        // Disjunction associates left, so `(p | q) | q0` prints without
        // parentheses; the parse tree still nests the fresh variable last.
        let dp_q = q_reduce(&dp_rule(), &q0).unwrap();
        assert_eq!(dp_q.to_string(), "p | q | q0 / p | q | q0");
        assert_eq!(
            dp_q.premises()[0],
            Formula::or(
                Formula::or(Formula::var("p"), Formula::var("q")),
                Formula::var("q0")
            )
        );
        assert_eq!(
            q_reduce(&parse_rule("a / b1, b2").unwrap(), &q0)
                .unwrap()
                .to_string(),
            "a | q0 / b1 | b2 | q0"
        );
        assert_eq!(
            q_reduce(&parse_rule("/").unwrap(), &q0)
                .unwrap()
                .to_string(),
            "1 | q0 / 0 | q0"
        );
        assert_eq!(
            q_reduce(&dp_rule(), &Var::new("p")),
            Err(TransformError::VariableOccurs(Var::new("p")))
        );
    }

    #[test]
    fn splitting_rule_shape_and_validity() {
        let dp = dp_rule();
        assert_eq!(dp.to_string(), "p | q / p, q");
        assert!(!dp.is_single_conclusion());
        let mut budget = EvalBudget::default();
        assert!(models_mrule(&b2(), &dp, &mut budget).unwrap().holds());
        assert!(!models_mrule(&square(), &dp, &mut budget).unwrap().holds());
    }

    #[test]
    fn s_basis_rejects_multiple_conclusions_and_dedupes() {
        let err = Basis::new(BasisKind::SingleConclusion, vec![dp_rule()], "broken").unwrap_err();
        assert_eq!(err, TransformError::NotSingleConclusion { index: 0 });

        let b = Basis::new(
            BasisKind::SingleConclusion,
            vec![harrop(), harrop()],
            "deduped",
        )
        .unwrap();
        assert_eq!(b.rules().len(), 1);
    }

    #[test]
    fn m_basis_from_s_basis_adjoins_the_splitting_rule_once() {
        let empty = Basis::new(BasisKind::SingleConclusion, vec![], "empty").unwrap();
        let m = m_basis_from_s_basis(&empty).unwrap();
        assert_eq!(m.kind(), BasisKind::MultipleConclusion);
        assert_eq!(m.rules(), &[dp_rule()]);

        let s = Basis::new(BasisKind::SingleConclusion, vec![harrop()], "harrop").unwrap();
        let m = m_basis_from_s_basis(&s).unwrap();
        assert_eq!(m.rules(), &[harrop(), dp_rule()]);

        // Set semantics: adjoining again does not duplicate.
        let again = Basis::new(
            BasisKind::MultipleConclusion,
            m.rules().iter().cloned().chain([dp_rule()]).collect(),
            "again",
        )
        .unwrap();
        assert_eq!(again.rules(), m.rules());

        // Literal re-application is a kind error: the result is an m-basis.
        assert_eq!(
            m_basis_from_s_basis(&m),
            Err(TransformError::KindMismatch {
                expected: BasisKind::SingleConclusion,
                found: BasisKind::MultipleConclusion,
            })
        );
    }

    #[test]
    fn s_basis_from_m_basis_q_reduces_with_one_shared_fresh_variable() {
        let m = Basis::new(BasisKind::MultipleConclusion, vec![dp_rule()], "dp").unwrap();
        let (s, q) = s_basis_from_m_basis(&m).unwrap();
        assert_eq!(q, Var::new("q0"));
        assert_eq!(s.kind(), BasisKind::SingleConclusion);
        assert_eq!(s.rules().len(), 1);
        assert_eq!(s.rules()[0].to_string(), "p | q | q0 / p | q | q0");

        // The shared variable avoids every rule in the basis.
        let occupied = Basis::new(
            BasisKind::MultipleConclusion,
            vec![dp_rule(), parse_rule("q0 / q0").unwrap()],
            "occupied",
        )
        .unwrap();
        let (s, q) = s_basis_from_m_basis(&occupied).unwrap();
        assert_eq!(q, Var::new("q1"));
        assert!(s.rules().iter().all(MRule::is_single_conclusion));

        assert_eq!(
            s_basis_from_m_basis(&s),
            Err(TransformError::KindMismatch {
                expected: BasisKind::MultipleConclusion,
                found: BasisKind::SingleConclusion,
            })
        );
    }

    #[test]
    fn independence_witness_for_a_single_conclusion_rule() {
        let mut budget = EvalBudget::default();
        let rules = vec![dp_rule(), harrop()];
        // Chains validate the rule, so they are skipped; the nine-element
        // well-connected algebra refutes it while validating the rest.
        let nine =
            crate::algebra::from_poset(&Poset::new(4, &[(0, 3), (1, 3), (2, 3)]).unwrap(), 16)
                .unwrap();
        let pool = [FiniteHeytingAlgebra::chain(3), nine];
        let (witness, refutation) = find_independence_witness(&rules, &harrop(), pool, &mut budget)
            .unwrap()
            .expect("witness");
        assert_eq!(witness.size(), 9);
        assert!(witness.is_well_connected());
        assert!(refutation.replays(&harrop()));
    }

    #[test]
    fn independence_witness_for_the_splitting_rule_itself() {
        let mut budget = EvalBudget::default();
        let rules = vec![dp_rule(), parse_rule("p, p -> q / q").unwrap()];
        let (witness, refutation) =
            find_independence_witness(&rules, &dp_rule(), [square()], &mut budget)
                .unwrap()
                .expect("witness");
        assert_eq!(witness.size(), 4);
        assert!(!witness.is_well_connected());
        assert!(refutation.replays(&dp_rule()));
    }

    #[test]
    fn independence_witness_edge_cases() {
        let mut budget = EvalBudget::default();
        let identity = parse_rule("p / p").unwrap();
        // A rule valid everywhere has no witness over any pool.
        assert!(find_independence_witness(
            core::slice::from_ref(&identity),
            &identity,
            [b2(), FiniteHeytingAlgebra::chain(3), square()],
            &mut budget,
        )
        .unwrap()
        .is_none());
        // Membership is required.
        assert_eq!(
            find_independence_witness(&[], &identity, [b2()], &mut budget),
            Err(TransformError::RuleNotInSet)
        );
    }

    #[test]
    fn substituting_bottom_for_q_recovers_the_plain_reduction() {
        let mut sigma = Substitution::new();
        for rule in [
            dp_rule(),
            harrop(),
            parse_rule("p, p -> q / q").unwrap(),
            parse_rule("/").unwrap(),
        ] {
            let q = crate::syntax::fresh_variable(&rule);
            sigma.bind(q.clone(), Formula::Bot);
            let reduced = reduce(&rule);
            let q_reduced = sigma.apply_rule(&q_reduce(&rule, &q).unwrap());
            let pairs: Vec<(&Formula, &Formula)> = core::iter::zip(
                reduced.premises().iter().chain(reduced.conclusions()),
                q_reduced.premises().iter().chain(q_reduced.conclusions()),
            )
            .collect();
            assert_eq!(pairs.len(), 2);
            for (a, b) in pairs {
                assert!(is_theorem(&Formula::imp(a.clone(), b.clone())));
                assert!(is_theorem(&Formula::imp(b.clone(), a.clone())));
            }
        }
    }
}
