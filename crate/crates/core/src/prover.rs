//! Decision procedure for intuitionistic propositional validity.
//!
//! This is the contraction-free single-succedent calculus: left rules for
//! implication are split four ways by the shape of the antecedent's premise
//! (atom, conjunction, disjunction, implication), which makes proof search
//! terminate without loop checking. Invertible rules are applied eagerly;
//! the only backtracking points are the choice of disjunct on the right and
//! the choice of nested implication to break on the left.
//!
//! Verdicts are booleans; no proof objects are built. `~a` is treated as
//! `a -> 0`, and `0`/`1` are folded away before search, so the search core
//! only ever sees `0` as the conclusion of an implication or as a goal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::syntax::{big_and, Formula, Var};

/// True iff `f` is an intuitionistic tautology.
pub fn is_theorem(f: &Formula) -> bool {
    let goal = normalize(f);
    prove(Ctx::default(), goal)
}

/// Finite-premise consequence: true iff `1 & premises -> goal` folds to an
/// intuitionistic tautology, i.e. `is_theorem(big_and(premises) -> goal)`.
pub fn proves(premises: &[Formula], goal: &Formula) -> bool {
    is_theorem(&Formula::imp(big_and(premises), goal.clone()))
}

/// Rewrites `~a` to `a -> 0` and folds constants: afterwards `1` can only be
/// the whole formula, and `0` only the whole formula or an implication
/// conclusion. All rewrites are intuitionistic equivalences.
fn normalize(f: &Formula) -> Formula {
    match f {
        Formula::Var(_) | Formula::Bot | Formula::Top => f.clone(),
        Formula::Not(a) => match normalize(a) {
            Formula::Top => Formula::Bot,
            Formula::Bot => Formula::Top,
            na => Formula::imp(na, Formula::Bot),
        },
        Formula::And(a, b) => match (normalize(a), normalize(b)) {
            (Formula::Bot, _) | (_, Formula::Bot) => Formula::Bot,
            (Formula::Top, nb) => nb,
            (na, Formula::Top) => na,
            (na, nb) => Formula::and(na, nb),
        },
        Formula::Or(a, b) => match (normalize(a), normalize(b)) {
            (Formula::Top, _) | (_, Formula::Top) => Formula::Top,
            (Formula::Bot, nb) => nb,
            (na, Formula::Bot) => na,
            (na, nb) => Formula::or(na, nb),
        },
        Formula::Imp(a, b) => match (normalize(a), normalize(b)) {
            (Formula::Bot, _) => Formula::Top,
            (_, Formula::Top) => Formula::Top,
            (Formula::Top, nb) => nb,
            (na, nb) => Formula::imp(na, nb),
        },
    }
}

/// Left-hand state of a sequent. Contexts are sets: everything popped off
/// `todo` goes through `seen` once, so duplicates are free weakenings.
#[derive(Clone, Debug, Default)]
struct Ctx {
    atoms: BTreeSet<Var>,
    /// `p -> B`, parked until the atom `p` shows up on the left.
    waiting: BTreeMap<Var, Vec<Formula>>,
    /// `(A -> B) -> C`, parked for the backtracking phase, as `(A, B, C)`.
    nested: Vec<(Formula, Formula, Formula)>,
    todo: Vec<Formula>,
    seen: BTreeSet<Formula>,
}

impl Ctx {
    fn push(&mut self, f: Formula) {
        self.todo.push(f);
    }

    fn without_nested(&self, i: usize) -> Ctx {
        let mut c = self.clone();
        c.nested.remove(i);
        c
    }
}

fn prove(mut ctx: Ctx, goal: Formula) -> bool {
    // Saturation: invertible left rules, eagerly.
    while let Some(f) = ctx.todo.pop() {
        if !ctx.seen.insert(f.clone()) {
            continue;
        }
        match f {
            Formula::Bot => return true,
            Formula::Top => {}
            // Normalized input has no negations, but stay total: ~a is a -> 0.
            Formula::Not(a) => ctx.push(Formula::imp(*a, Formula::Bot)),
            Formula::Var(p) => {
                if let Some(parked) = ctx.waiting.remove(&p) {
                    ctx.todo.extend(parked);
                }
                ctx.atoms.insert(p);
            }
            Formula::And(a, b) => {
                ctx.push(*a);
                ctx.push(*b);
            }
            Formula::Or(a, b) => {
                let mut left = ctx.clone();
                left.push(*a);
                let mut right = ctx;
                right.push(*b);
                return prove(left, goal.clone()) && prove(right, goal);
            }
            Formula::Imp(a, b) => match *a {
                // `0 -> B` is vacuous, `1 -> B` is just B. These only occur
                // via re-pushed nested premises, not from normalized input.
                Formula::Bot => {}
                Formula::Top => ctx.push(*b),
                Formula::Var(p) => {
                    if ctx.atoms.contains(&p) {
                        ctx.push(*b);
                    } else {
                        ctx.waiting.entry(p).or_default().push(*b);
                    }
                }
                Formula::And(c, d) => {
                    ctx.push(Formula::imp(*c, Formula::Imp(d, b)));
                }
                Formula::Or(c, d) => {
                    ctx.push(Formula::Imp(c, b.clone()));
                    ctx.push(Formula::Imp(d, b));
                }
                Formula::Imp(c, d) => ctx.nested.push((*c, *d, *b)),
                Formula::Not(c) => ctx.nested.push((*c, Formula::Bot, *b)),
            },
        }
    }

    // Invertible right rules.
    match goal {
        Formula::Top => return true,
        Formula::And(a, b) => return prove(ctx.clone(), *a) && prove(ctx, *b),
        Formula::Imp(a, b) => {
            ctx.push(*a);
            return prove(ctx, *b);
        }
        Formula::Not(a) => {
            ctx.push(*a);
            return prove(ctx, Formula::Bot);
        }
        Formula::Var(ref p) if ctx.atoms.contains(p) => return true,
        _ => {}
    }

    // Backtracking phase: try each disjunct, then each nested implication
    // `(A -> B) -> C`: first derive `A -> B` with `B -> C` in its place,
    // then continue from `C`.
    if let Formula::Or(ref a, ref b) = goal {
        if prove(ctx.clone(), (**a).clone()) || prove(ctx.clone(), (**b).clone()) {
            return true;
        }
    }
    for i in 0..ctx.nested.len() {
        let (a, b, c) = ctx.nested[i].clone();
        let mut first = ctx.without_nested(i);
        first.push(Formula::imp(b.clone(), c.clone()));
        if prove(first, Formula::imp(a, b)) {
            let mut second = ctx.without_nested(i);
            second.push(c);
            if prove(second, goal.clone()) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn thm(text: &str) -> bool {
        is_theorem(&parse_formula(text).unwrap())
    }

    #[test]
    fn accepts_core_intuitionistic_theorems() {
        for text in [
            "p -> p",
            "p -> q -> p",
            "(p -> q -> r) -> (p -> q) -> p -> r",
            "0 -> p",
            "p -> ~~p",
            "~~~p -> ~p",
            "p & q -> p",
            "p -> p | q",
            "(p | q -> r) -> (p -> r) & (q -> r)",
            "(p -> r) & (q -> r) -> (p | q -> r)",
            "p & (q | r) -> p & q | p & r",
            "~p | q -> p -> q",
            "~(p | q) -> ~p & ~q",
            "~p & ~q -> ~(p | q)",
            "(p -> q) -> (q -> r) -> p -> r",
            "~~(p | ~p)",
            "~~(~~p -> p)",
            "~~(((p -> q) -> p) -> p)",
        ] {
            assert!(thm(text), "expected theorem: {text}");
        }
    }

    #[test]
    fn rejects_classical_but_not_intuitionistic_schemes() {
        for text in [
            "p | ~p",
            "~~p -> p",
            "((p -> q) -> p) -> p",
            "(p -> q) | (q -> p)",
            "~p | ~~p",
            "~(p & q) -> ~p | ~q",
            "(p -> q) -> ~p | q",
            "((p -> q) -> q) -> p | q",
            "(~p -> q | r) -> (~p -> q) | (~p -> r)",
            "(~q -> ~p) -> p -> q",
        ] {
            assert!(!thm(text), "expected non-theorem: {text}");
        }
    }

    #[test]
    fn constants_fold_before_search() {
        assert!(thm("1"));
        assert!(!thm("0"));
        assert!(thm("(1 -> p) -> p"));
        assert!(thm("p -> 1"));
        assert!(!thm("1 -> p"));
        assert!(thm("~0"));
        assert!(!thm("~1"));
        assert!(thm("(p & 1) -> p"));
        assert!(thm("p | 1"));
    }

    #[test]
    fn proves_folds_premises_into_an_implication() {
        let p = parse_formula("p").unwrap();
        let q = parse_formula("q").unwrap();
        let p_imp_q = parse_formula("p -> q").unwrap();
        assert!(proves(&[p.clone(), p_imp_q.clone()], &q));
        assert!(!proves(&[p_imp_q], &q));
        assert!(proves(&[], &parse_formula("p -> p").unwrap()));
        assert!(proves(
            &[parse_formula("p | q").unwrap()],
            &parse_formula("q | p").unwrap()
        ));
        assert!(!proves(&[parse_formula("p | q").unwrap()], &p));
    }

    #[test]
    fn nested_implications_backtrack() {
        // Needs the nested rule twice and succeeds only on one ordering.
        assert!(thm(
            "((p -> q) -> q) -> ((q -> p) -> p) -> ~~((p -> q) | (q -> p))"
        ));
        // Mints-style: provable implication inside an unprovable shell.
        assert!(!thm(
            "((p -> q) -> p | r) -> ((p -> q) -> p) | ((p -> q) -> r)"
        ));
        assert!(thm("((p -> q) -> r) -> (p -> q) -> r"));
    }

    #[test]
    fn soundness_spot_check_against_model_search() {
        use crate::algebra::FiniteHeytingAlgebra;
        use crate::semantics::{models_formula, EvalBudget};

        let pool = [
            FiniteHeytingAlgebra::two_element(),
            FiniteHeytingAlgebra::chain(3),
            FiniteHeytingAlgebra::two_element()
                .direct_product(&FiniteHeytingAlgebra::two_element(), 16)
                .unwrap(),
        ];
        let mut budget = EvalBudget::default();
        for text in [
            "p -> p",
            "p | ~p",
            "~~(p | ~p)",
            "((p -> q) -> p) -> p",
            "p & q -> q & p",
            "(p -> q) | (q -> p)",
        ] {
            let f = parse_formula(text).unwrap();
            if is_theorem(&f) {
                for a in &pool {
                    assert!(
                        models_formula(a, &f, &mut budget).unwrap().holds(),
                        "accepted formula refuted: {text}"
                    );
                }
            }
        }
    }
}
