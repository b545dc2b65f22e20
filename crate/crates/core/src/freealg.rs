//! Free algebras of the variety generated by a finite list of finite
//! Heyting algebras, and the bounded oracles built on them.
//!
//! The free algebra of rank `k` over generating algebras `K` is realized
//! concretely as the subalgebra of `∏_{A∈K} A^(A^k)` generated by the `k`
//! projection tuples: an element is one value per coordinate `(A, t)` with
//! `t ∈ A^k`, and the generator `gᵢ` has value `tᵢ` at `(A, t)`. A formula
//! in `k` variables is valid in every member of `K` exactly when it is valid
//! in this algebra, which is what makes it a bounded admissibility oracle:
//! an m-rule refuted in the rank-`k` free algebra has a concrete
//! substitution counterexample, read off the generation traces.
//!
//! All verdicts distinguish definitive negatives (`NotAdmissible`, with a
//! replayable witness) from bounded positives (`AdmissibleUpToRank`), and a
//! refutation found at one rank persists at all larger ranks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Elem, FiniteHeytingAlgebra, SizeLimitExceeded};
use crate::semantics::{models_mrule, BudgetExceeded, EvalBudget, Refutation, Verdict};
use crate::syntax::{Formula, MRule, Substitution, Var};

/// Default cap on the a-priori size bound `∏ |A|^(|A|^k)`.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// Size limits for free-algebra construction. The cap bounds the product
/// `∏_{A∈K} |A|^(|A|^k)` (an upper bound on the closure, computed before any
/// allocation), so the element count can never exceed it; note the finished
/// algebra still materializes three `n²` operation tables.
#[derive(Clone, Copy, Debug)]
pub struct FreeAlgebraLimits {
    pub element_cap: usize,
}

impl Default for FreeAlgebraLimits {
    fn default() -> FreeAlgebraLimits {
        FreeAlgebraLimits {
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }
}

/// The variable naming the `i`-th free generator: `x0, x1, ...`.
pub fn generator_variable(i: usize) -> Var {
    Var::new(format!("x{i}"))
}

/// The free algebra of rank `rank` of the variety generated by
/// `components`, as a concrete finite Heyting algebra plus provenance.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    algebra: FiniteHeytingAlgebra,
    components: Vec<FiniteHeytingAlgebra>,
    rank: usize,
    generators: Vec<Elem>,
    /// Per coordinate: which component algebra it lives in, and the argument
    /// tuple `t ∈ A^rank` it stands for.
    coordinates: Vec<(usize, Vec<Elem>)>,
    /// Element id -> its value at every coordinate.
    elements: Vec<Vec<Elem>>,
    /// Element id -> earliest formula over `x0..` that generates it.
    traces: Vec<Formula>,
}

impl FreeAlgebra {
    pub fn algebra(&self) -> &FiniteHeytingAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> FiniteHeytingAlgebra {
        self.algebra
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[FiniteHeytingAlgebra] {
        &self.components
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn coordinates(&self) -> &[(usize, Vec<Elem>)] {
        &self.coordinates
    }

    pub fn tuple(&self, e: Elem) -> &[Elem] {
        &self.elements[e]
    }

    pub fn trace(&self, e: Elem) -> &Formula {
        &self.traces[e]
    }

    pub fn traces(&self) -> &[Formula] {
        &self.traces
    }

    /// Reads a valuation into this algebra back as a substitution, sending
    /// each variable to the generation trace of its value. A refuting
    /// valuation for a rule thereby becomes a syntactic counterexample.
    pub fn substitution_from_valuation(&self, nu: &crate::semantics::Valuation) -> Substitution {
        nu.iter()
            .map(|(v, e)| (v.clone(), self.traces[e].clone()))
            .collect()
    }
}

/// `base^exp` saturating at `u128::MAX`.
fn sat_pow(base: u128, exp: u128) -> u128 {
    match base {
        0 => {
            if exp == 0 {
                1
            } else {
                0
            }
        }
        1 => 1,
        _ => {
            if exp >= 128 {
                return u128::MAX;
            }
            let mut acc: u128 = 1;
            for _ in 0..exp {
                acc = acc.saturating_mul(base);
            }
            acc
        }
    }
}

/// A-priori bound on the closure size: the full product `∏ |A|^(|A|^rank)`,
/// and at least the number of seeded tuples.
fn size_bound(components: &[FiniteHeytingAlgebra], rank: usize) -> u128 {
    let product = components.iter().fold(1u128, |acc, a| {
        let inner = sat_pow(a.size() as u128, rank as u128);
        acc.saturating_mul(sat_pow(a.size() as u128, inner))
    });
    product.max(rank as u128 + 2)
}

struct Closure<'a> {
    components: &'a [FiniteHeytingAlgebra],
    /// Coordinate -> component index (parallel to coordinate argument lists).
    owners: Vec<usize>,
    elements: Vec<Vec<Elem>>,
    index: BTreeMap<Vec<Elem>, usize>,
    traces: Vec<Formula>,
}

impl Closure<'_> {
    fn insert(&mut self, tuple: Vec<Elem>, trace: Formula) -> usize {
        if let Some(&id) = self.index.get(&tuple) {
            return id;
        }
        let id = self.elements.len();
        self.index.insert(tuple.clone(), id);
        self.elements.push(tuple);
        self.traces.push(trace);
        id
    }

    fn pointwise(
        &self,
        op: fn(&FiniteHeytingAlgebra, Elem, Elem) -> Elem,
        a: usize,
        b: usize,
    ) -> Vec<Elem> {
        self.owners
            .iter()
            .zip(self.elements[a].iter().zip(&self.elements[b]))
            .map(|(&o, (&x, &y))| op(&self.components[o], x, y))
            .collect()
    }
}

/// Builds the rank-`rank` free algebra of the variety generated by
/// `components`: the subalgebra of `∏_{A∈K} A^(A^rank)` generated by the
/// projection tuples, closed under meet, join and implication (with bottom
/// and top seeded, so negation comes along as `_ -> 0`).
///
/// Errors if the a-priori size bound `∏ |A|^(|A|^rank)` exceeds the cap.
/// Element ids are in discovery order (bottom, top, generators, then a
/// deterministic worklist sweep), and each element's trace is the earliest
/// formula that produced it.
pub fn free_algebra(
    components: &[FiniteHeytingAlgebra],
    rank: usize,
    limits: &FreeAlgebraLimits,
) -> Result<FreeAlgebra, SizeLimitExceeded> {
    let bound = size_bound(components, rank);
    if bound > limits.element_cap as u128 {
        return Err(SizeLimitExceeded {
            required: bound,
            limit: limits.element_cap,
        });
    }

    // Coordinates: for each component A, one per argument tuple t ∈ A^rank,
    // with t decoded as base-|A| digits (digit i = value of generator i).
    let mut owners = Vec::new();
    let mut coordinates = Vec::new();
    for (ci, a) in components.iter().enumerate() {
        let count = sat_pow(a.size() as u128, rank as u128) as usize;
        for t in 0..count {
            let mut args = Vec::with_capacity(rank);
            let mut rest = t;
            for _ in 0..rank {
                args.push(rest % a.size());
                rest /= a.size();
            }
            owners.push(ci);
            coordinates.push((ci, args));
        }
    }

    let mut closure = Closure {
        components,
        owners,
        elements: Vec::new(),
        index: BTreeMap::new(),
        traces: Vec::new(),
    };

    let bot_tuple: Vec<Elem> = closure
        .owners
        .iter()
        .map(|&o| components[o].bot())
        .collect();
    let top_tuple: Vec<Elem> = closure
        .owners
        .iter()
        .map(|&o| components[o].top())
        .collect();
    let bot_id = closure.insert(bot_tuple, Formula::Bot);
    let top_id = closure.insert(top_tuple, Formula::Top);
    let mut generators = Vec::with_capacity(rank);
    for i in 0..rank {
        let tuple: Vec<Elem> = coordinates.iter().map(|(_, args)| args[i]).collect();
        generators.push(closure.insert(tuple, Formula::var(generator_variable(i).as_str())));
    }

    // Worklist sweep: every unordered pair is combined exactly once, with
    // implication applied in both directions. Meet before join before
    // implication fixes discovery order and hence element ids and traces.
    type Bin = (
        fn(&FiniteHeytingAlgebra, Elem, Elem) -> Elem,
        fn(Formula, Formula) -> Formula,
    );
    let ops: [Bin; 3] = [
        (FiniteHeytingAlgebra::meet, Formula::and),
        (FiniteHeytingAlgebra::join, Formula::or),
        (FiniteHeytingAlgebra::imp, Formula::imp),
    ];
    let mut i = 0;
    while i < closure.elements.len() {
        for j in 0..=i {
            for &(alg_op, trace_op) in &ops {
                for (a, b) in [(i, j), (j, i)] {
                    let tuple = closure.pointwise(alg_op, a, b);
                    if !closure.index.contains_key(&tuple) {
                        let trace = trace_op(closure.traces[a].clone(), closure.traces[b].clone());
                        closure.insert(tuple, trace);
                    }
                }
            }
        }
        i += 1;
    }

    let n = closure.elements.len();
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    let mut imp = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            meet.push(closure.index[&closure.pointwise(FiniteHeytingAlgebra::meet, a, b)]);
            join.push(closure.index[&closure.pointwise(FiniteHeytingAlgebra::join, a, b)]);
            imp.push(closure.index[&closure.pointwise(FiniteHeytingAlgebra::imp, a, b)]);
        }
    }
    let algebra = FiniteHeytingAlgebra::from_tables(n, bot_id, top_id, meet, join, imp)
        .expect("closure of product projections yields Heyting tables");

    Ok(FreeAlgebra {
        algebra,
        components: components.to_vec(),
        rank,
        generators,
        coordinates,
        elements: closure.elements,
        traces: closure.traces,
    })
}

/// Verdict of a bounded admissibility check.
///
/// `NotAdmissible` is definitive (and persists at every larger rank): the
/// witness substitution sends the rule's premises to theorems of the logic
/// of the generating algebras while no conclusion becomes one.
/// `AdmissibleUpToRank` is only the bounded claim that no refutation exists
/// in free algebras up to the stated rank.
#[derive(Clone, Debug)]
pub enum AdmissibilityVerdict {
    NotAdmissible {
        rank: usize,
        witness: Substitution,
        refutation: Refutation,
    },
    AdmissibleUpToRank(usize),
}

impl AdmissibilityVerdict {
    pub fn is_not_admissible(&self) -> bool {
        matches!(self, AdmissibilityVerdict::NotAdmissible { .. })
    }
}

impl fmt::Display for AdmissibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityVerdict::NotAdmissible { rank, witness, .. } => {
                write!(
                    f,
                    "not admissible: the rank-{rank} free algebra refutes it under {witness}"
                )
            }
            AdmissibilityVerdict::AdmissibleUpToRank(n) => {
                write!(f, "admissible up to rank {n} (bounded claim)")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum FreeAlgebraError {
    Cap(SizeLimitExceeded),
    Budget(BudgetExceeded),
}

impl fmt::Display for FreeAlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeAlgebraError::Cap(e) => e.fmt(f),
            FreeAlgebraError::Budget(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for FreeAlgebraError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            FreeAlgebraError::Cap(e) => Some(e),
            FreeAlgebraError::Budget(e) => Some(e),
        }
    }
}

impl From<SizeLimitExceeded> for FreeAlgebraError {
    fn from(e: SizeLimitExceeded) -> FreeAlgebraError {
        FreeAlgebraError::Cap(e)
    }
}

impl From<BudgetExceeded> for FreeAlgebraError {
    fn from(e: BudgetExceeded) -> FreeAlgebraError {
        FreeAlgebraError::Budget(e)
    }
}

/// Default rank bound for [`check_admissible_bounded`]: at least the rule's
/// own variable count, and at least 3.
pub fn default_rank_bound(r: &MRule) -> usize {
    r.vars().len().max(3)
}

/// Bounded admissibility of `r` over the logic of `components`: checks the
/// free algebras of ranks `vars(r) ..= max(n_max, vars(r))` in order. The
/// first refutation yields `NotAdmissible` with the substitution witness
/// read off the traces; if none exists the result is the bounded
/// `AdmissibleUpToRank`.
pub fn check_admissible_bounded(
    r: &MRule,
    components: &[FiniteHeytingAlgebra],
    n_max: usize,
    limits: &FreeAlgebraLimits,
    budget: &mut EvalBudget,
) -> Result<AdmissibilityVerdict, FreeAlgebraError> {
    let start = r.vars().len();
    let end = n_max.max(start);
    for k in start..=end {
        let free = free_algebra(components, k, limits)?;
        match models_mrule(free.algebra(), r, budget)? {
            Verdict::Holds => {}
            Verdict::Refuted(refutation) => {
                let witness = free.substitution_from_valuation(&refutation.valuation);
                return Ok(AdmissibilityVerdict::NotAdmissible {
                    rank: k,
                    witness,
                    refutation,
                });
            }
        }
    }
    Ok(AdmissibilityVerdict::AdmissibleUpToRank(end))
}

/// Searches `pool` (in order) for an algebra validating every rule in
/// `rules` while refuting `r`. Such an algebra certifies that `r` is not
/// derivable from `rules`; absence of a witness is inconclusive.
pub fn refute_derivability<I>(
    rules: &[MRule],
    r: &MRule,
    pool: I,
    budget: &mut EvalBudget,
) -> Result<Option<(FiniteHeytingAlgebra, Refutation)>, BudgetExceeded>
where
    I: IntoIterator<Item = FiniteHeytingAlgebra>,
{
    'pool: for a in pool {
        let refutation = match models_mrule(&a, r, budget)? {
            Verdict::Refuted(w) => w,
            Verdict::Holds => continue,
        };
        for rule in rules {
            if !models_mrule(&a, rule, budget)?.holds() {
                continue 'pool;
            }
        }
        return Ok(Some((a, refutation)));
    }
    Ok(None)
}
