//! Valuations and exhaustive model checking over finite Heyting algebras.
//!
//! A formula holds in an algebra when every valuation sends it to top. An
//! m-rule `Γ / Δ` holds when every valuation sending all of `Γ` to top sends
//! some member of `Δ` to top; with empty `Δ` that reads "no valuation makes
//! all premises top", matching the empty-disjunction-is-`0` convention, and
//! empty `Γ` is satisfied by every valuation.
//!
//! Search is exhaustive over `|A|^|vars|` valuations, in lexicographic order
//! over the sorted variable list, so the witness returned is always the
//! least one. Every evaluation is charged against an [`EvalBudget`];
//! exhausting the budget is reported as an error, never as "holds".

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Elem, FiniteHeytingAlgebra};
use crate::syntax::{Formula, MRule, Var};

/// A finite assignment of carrier elements to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    map: BTreeMap<Var, Elem>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn bind(&mut self, v: Var, e: Elem) -> &mut Valuation {
        self.map.insert(v, e);
        self
    }

    pub fn get(&self, v: &Var) -> Option<Elem> {
        self.map.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, Elem)> {
        self.map.iter().map(|(v, &e)| (v, e))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl FromIterator<(Var, Elem)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (Var, Elem)>>(iter: I) -> Valuation {
        Valuation {
            map: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{v} = {e}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable(Var),
    /// The valuation binds a variable to a number that is not an element of
    /// the algebra being evaluated in.
    ElementOutOfRange {
        var: Var,
        element: Elem,
        size: usize,
    },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(v) => write!(f, "variable {v} has no value"),
            EvalError::ElementOutOfRange { var, element, size } => write!(
                f,
                "variable {var} is bound to {element}, outside the algebra's {size} elements"
            ),
        }
    }
}

impl core::error::Error for EvalError {}

/// Evaluates a formula under a valuation by structural folding over the
/// algebra's tables.
pub fn eval(a: &FiniteHeytingAlgebra, nu: &Valuation, f: &Formula) -> Result<Elem, EvalError> {
    match f {
        Formula::Var(v) => match nu.get(v) {
            None => Err(EvalError::UnboundVariable(v.clone())),
            Some(e) if e >= a.size() => Err(EvalError::ElementOutOfRange {
                var: v.clone(),
                element: e,
                size: a.size(),
            }),
            Some(e) => Ok(e),
        },
        Formula::Bot => Ok(a.bot()),
        Formula::Top => Ok(a.top()),
        Formula::Not(x) => Ok(a.neg(eval(a, nu, x)?)),
        Formula::And(l, r) => Ok(a.meet(eval(a, nu, l)?, eval(a, nu, r)?)),
        Formula::Or(l, r) => Ok(a.join(eval(a, nu, l)?, eval(a, nu, r)?)),
        Formula::Imp(l, r) => Ok(a.imp(eval(a, nu, l)?, eval(a, nu, r)?)),
    }
}

/// Counts formula evaluations across one top-level search and cuts it off at
/// a configured limit.
#[derive(Clone, Debug)]
pub struct EvalBudget {
    limit: u64,
    used: u64,
}

/// Default evaluation budget: generous for every intended workload, small
/// enough to interrupt accidentally exponential searches.
pub const DEFAULT_EVAL_BUDGET: u64 = 100_000_000;

impl EvalBudget {
    pub fn new(limit: u64) -> EvalBudget {
        EvalBudget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn charge(&mut self) -> Result<(), BudgetExceeded> {
        if self.used >= self.limit {
            return Err(BudgetExceeded { limit: self.limit });
        }
        self.used += 1;
        Ok(())
    }
}

impl Default for EvalBudget {
    fn default() -> EvalBudget {
        EvalBudget::new(DEFAULT_EVAL_BUDGET)
    }
}

/// The search ran out of evaluation budget before reaching a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub limit: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "evaluation budget of {} exhausted", self.limit)
    }
}

impl core::error::Error for BudgetExceeded {}

/// A completed exhaustive check: either the formula/rule holds, or here is
/// the least refuting valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Refuted(Refutation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Verdict::Holds => None,
            Verdict::Refuted(r) => Some(r),
        }
    }
}

/// A self-contained counterexample: the algebra, the valuation, and the
/// value of every conclusion (each below top; premises all evaluated to
/// top). [`Refutation::replays`] re-checks it from scratch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub algebra: FiniteHeytingAlgebra,
    pub valuation: Valuation,
    pub conclusion_values: Vec<Elem>,
}

impl Refutation {
    /// True iff this refutation genuinely refutes `r`: all premises top,
    /// every conclusion below top with exactly the stored values.
    pub fn replays(&self, r: &MRule) -> bool {
        let top = self.algebra.top();
        for p in r.premises() {
            match eval(&self.algebra, &self.valuation, p) {
                Ok(value) if value == top => {}
                _ => return false,
            }
        }
        if r.conclusions().len() != self.conclusion_values.len() {
            return false;
        }
        for (c, &stored) in r.conclusions().iter().zip(&self.conclusion_values) {
            match eval(&self.algebra, &self.valuation, c) {
                Ok(value) if value == stored && value != top => {}
                _ => return false,
            }
        }
        true
    }
}

/// Exhaustively checks a formula; `Refuted` carries the least valuation not
/// sending it to top.
pub fn models_formula(
    a: &FiniteHeytingAlgebra,
    f: &Formula,
    budget: &mut EvalBudget,
) -> Result<Verdict, BudgetExceeded> {
    search(a, &[], core::slice::from_ref(f), true, budget)
}

/// Exhaustively checks an m-rule; `Refuted` carries the least valuation
/// making every premise top and no conclusion top.
pub fn models_mrule(
    a: &FiniteHeytingAlgebra,
    r: &MRule,
    budget: &mut EvalBudget,
) -> Result<Verdict, BudgetExceeded> {
    search(a, r.premises(), r.conclusions(), false, budget)
}

/// First algebra in `pool` (in pool order) refuting `r`, with the least
/// refutation on it.
pub fn find_refuting_algebra<I>(
    r: &MRule,
    pool: I,
    budget: &mut EvalBudget,
) -> Result<Option<(FiniteHeytingAlgebra, Refutation)>, BudgetExceeded>
where
    I: IntoIterator<Item = FiniteHeytingAlgebra>,
{
    for a in pool {
        if let Verdict::Refuted(w) = models_mrule(&a, r, budget)? {
            return Ok(Some((a, w)));
        }
    }
    Ok(None)
}

/// Theoremhood in the logic determined by a finite set of algebras: the
/// formula must hold in every one of them. `Refuted` reports the first
/// failing algebra's least counterexample.
pub fn valid_in_all(
    algebras: &[FiniteHeytingAlgebra],
    f: &Formula,
    budget: &mut EvalBudget,
) -> Result<Verdict, BudgetExceeded> {
    for a in algebras {
        if let v @ Verdict::Refuted(_) = models_formula(a, f, budget)? {
            return Ok(v);
        }
    }
    Ok(Verdict::Holds)
}

// Compiled form of a formula: postorder instructions over a variable-slot
// table, so the inner search loop is table lookups on a small stack instead
// of tree walks.
enum Instr {
    Load(usize),
    PushBot,
    PushTop,
    ApplyNot,
    ApplyAnd,
    ApplyOr,
    ApplyImp,
}

fn compile(f: &Formula, slots: &BTreeMap<Var, usize>, code: &mut Vec<Instr>) {
    match f {
        Formula::Var(v) => code.push(Instr::Load(slots[v])),
        Formula::Bot => code.push(Instr::PushBot),
        Formula::Top => code.push(Instr::PushTop),
        Formula::Not(x) => {
            compile(x, slots, code);
            code.push(Instr::ApplyNot);
        }
        Formula::And(l, r) => {
            compile(l, slots, code);
            compile(r, slots, code);
            code.push(Instr::ApplyAnd);
        }
        Formula::Or(l, r) => {
            compile(l, slots, code);
            compile(r, slots, code);
            code.push(Instr::ApplyOr);
        }
        Formula::Imp(l, r) => {
            compile(l, slots, code);
            compile(r, slots, code);
            code.push(Instr::ApplyImp);
        }
    }
}

fn run(code: &[Instr], a: &FiniteHeytingAlgebra, values: &[Elem], stack: &mut Vec<Elem>) -> Elem {
    let n = a.size();
    let meet = a.meet_table();
    let join = a.join_table();
    let imp = a.imp_table();
    stack.clear();
    for instr in code {
        match instr {
            Instr::Load(slot) => stack.push(values[*slot]),
            Instr::PushBot => stack.push(a.bot()),
            Instr::PushTop => stack.push(a.top()),
            Instr::ApplyNot => {
                let x = stack.pop().expect("operand");
                stack.push(a.neg(x));
            }
            Instr::ApplyAnd => {
                let r = stack.pop().expect("operand");
                let l = stack.pop().expect("operand");
                stack.push(meet[l * n + r]);
            }
            Instr::ApplyOr => {
                let r = stack.pop().expect("operand");
                let l = stack.pop().expect("operand");
                stack.push(join[l * n + r]);
            }
            Instr::ApplyImp => {
                let r = stack.pop().expect("operand");
                let l = stack.pop().expect("operand");
                stack.push(imp[l * n + r]);
            }
        }
    }
    stack.pop().expect("result")
}

/// Core search shared by formula and rule checks. `formula_mode` changes the
/// conclusion test from "some conclusion is top" (rule validity) to "the
/// value is top" (formula validity); for a single conclusion and no premises
/// those coincide.
fn search(
    a: &FiniteHeytingAlgebra,
    premises: &[Formula],
    conclusions: &[Formula],
    formula_mode: bool,
    budget: &mut EvalBudget,
) -> Result<Verdict, BudgetExceeded> {
    debug_assert!(!formula_mode || (premises.is_empty() && conclusions.len() == 1));
    let mut vars: BTreeSet<Var> = BTreeSet::new();
    for f in premises.iter().chain(conclusions) {
        vars.append(&mut f.vars());
    }
    let vars: Vec<Var> = vars.into_iter().collect();
    let slots: BTreeMap<Var, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let compiled: Vec<Vec<Instr>> = premises
        .iter()
        .chain(conclusions)
        .map(|f| {
            let mut code = Vec::new();
            compile(f, &slots, &mut code);
            code
        })
        .collect();
    let (premise_code, conclusion_code) = compiled.split_at(premises.len());

    let n = a.size();
    let top = a.top();
    let mut values = alloc::vec![0usize; vars.len()];
    let mut stack = Vec::new();
    let mut conclusion_values = alloc::vec![0usize; conclusions.len()];
    loop {
        let mut premises_hold = true;
        for code in premise_code {
            budget.charge()?;
            if run(code, a, &values, &mut stack) != top {
                premises_hold = false;
                break;
            }
        }
        if premises_hold {
            let mut some_top = false;
            for (slot, code) in conclusion_code.iter().enumerate() {
                budget.charge()?;
                let value = run(code, a, &values, &mut stack);
                conclusion_values[slot] = value;
                if value == top {
                    some_top = true;
                    break;
                }
            }
            if !some_top {
                let valuation: Valuation =
                    vars.iter().cloned().zip(values.iter().copied()).collect();
                return Ok(Verdict::Refuted(Refutation {
                    algebra: a.clone(),
                    valuation,
                    conclusion_values: conclusion_values.clone(),
                }));
            }
        }
        // Odometer step: the last variable varies fastest, giving
        // lexicographic order over the sorted variable list.
        let mut pos = values.len();
        loop {
            if pos == 0 {
                return Ok(Verdict::Holds);
            }
            pos -= 1;
            values[pos] += 1;
            if values[pos] < n {
                break;
            }
            values[pos] = 0;
        }
    }
}
