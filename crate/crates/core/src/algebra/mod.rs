//! Finite Heyting algebras as validated operation tables, plus the finite
//! poset / downset-lattice constructions used to build and enumerate them.
//!
//! An algebra is a carrier `0..n` with total `meet`, `join`, and `imp`
//! tables. [`FiniteHeytingAlgebra::from_tables`] checks the bounded
//! distributive lattice laws and residuation (`meet(a, c) <= b` iff
//! `c <= imp(a, b)`) and reports every violated law with witnesses.
//! Constructions that are correct by design (products, downset lattices,
//! relabelings) skip the table check but debug-assert it at small sizes.
//!
//! Isomorphism goes through a canonical form: the lexicographically least
//! relabeling of the tables over all carrier permutations that send bot to
//! `0` and top to `n - 1` (every isomorphism fixes bot and top, so the
//! restriction loses nothing). Canonical presentations therefore always have
//! bot first and top last; arbitrary placements are accepted on input.

mod enumerate;

pub use enumerate::{enumerate, EnumerateError, EnumerateOptions, DEFAULT_SIZE_CAP};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Carrier elements are indices into the operation tables.
pub type Elem = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpName {
    Meet,
    Join,
    Imp,
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpName::Meet => "meet",
            OpName::Join => "join",
            OpName::Imp => "imp",
        })
    }
}

/// One failed algebra law together with the elements that witness the
/// failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    BadShape(String),
    OutOfRange {
        op: OpName,
        a: Elem,
        b: Elem,
        value: usize,
    },
    NotCommutative {
        op: OpName,
        a: Elem,
        b: Elem,
    },
    NotIdempotent {
        op: OpName,
        a: Elem,
    },
    NotAssociative {
        op: OpName,
        a: Elem,
        b: Elem,
        c: Elem,
    },
    AbsorptionFailed {
        outer: OpName,
        a: Elem,
        b: Elem,
    },
    BoundFailed {
        law: &'static str,
        a: Elem,
    },
    NotDistributive {
        a: Elem,
        b: Elem,
        c: Elem,
    },
    ResiduationFailed {
        a: Elem,
        b: Elem,
        c: Elem,
    },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::BadShape(what) => write!(f, "malformed tables: {what}"),
            LawViolation::OutOfRange { op, a, b, value } => {
                write!(f, "{op}({a}, {b}) = {value} is outside the carrier")
            }
            LawViolation::NotCommutative { op, a, b } => {
                write!(f, "{op} is not commutative at ({a}, {b})")
            }
            LawViolation::NotIdempotent { op, a } => {
                write!(f, "{op}({a}, {a}) != {a}")
            }
            LawViolation::NotAssociative { op, a, b, c } => {
                write!(f, "{op} is not associative at ({a}, {b}, {c})")
            }
            LawViolation::AbsorptionFailed { outer, a, b } => {
                write!(f, "absorption under {outer} fails at ({a}, {b})")
            }
            LawViolation::BoundFailed { law, a } => {
                write!(f, "bound law {law} fails at {a}")
            }
            LawViolation::NotDistributive { a, b, c } => {
                write!(f, "meet does not distribute over join at ({a}, {b}, {c})")
            }
            LawViolation::ResiduationFailed { a, b, c } => {
                write!(f, "residuation fails at a={a}, b={b}, c={c}")
            }
        }
    }
}

/// All law violations found in a table triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationError {
    pub violations: Vec<LawViolation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} law violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(f, "; {v}")?;
        }
        if self.violations.len() > 5 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeLimitExceeded {
    pub required: u128,
    pub limit: usize,
}

impl fmt::Display for SizeLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "construction needs {} elements, over the limit of {}",
            self.required, self.limit
        )
    }
}

impl core::error::Error for SizeLimitExceeded {}

/// A finite Heyting algebra: validated `meet`/`join`/`imp` tables over the
/// carrier `0..size`, with negation derived as `imp(a, bot)`. Immutable
/// after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHeytingAlgebra {
    size: usize,
    bot: Elem,
    top: Elem,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    imp: Vec<Elem>,
    neg: Vec<Elem>,
}

impl FiniteHeytingAlgebra {
    /// Builds an algebra from raw tables, checking every law. On failure
    /// returns the full list of violations.
    pub fn from_tables(
        size: usize,
        bot: Elem,
        top: Elem,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        imp: Vec<Elem>,
    ) -> Result<FiniteHeytingAlgebra, ValidationError> {
        let violations = check_shape(size, bot, top, &meet, &join, &imp);
        if !violations.is_empty() {
            return Err(ValidationError { violations });
        }
        let a = FiniteHeytingAlgebra::assemble(size, bot, top, meet, join, imp);
        let violations = a.check_laws();
        if violations.is_empty() {
            Ok(a)
        } else {
            Err(ValidationError { violations })
        }
    }

    /// For constructions whose tables are correct by design. Still verified
    /// in debug builds at sizes where the cubic law scan is cheap.
    pub(crate) fn from_tables_unchecked(
        size: usize,
        bot: Elem,
        top: Elem,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        imp: Vec<Elem>,
    ) -> FiniteHeytingAlgebra {
        let a = FiniteHeytingAlgebra::assemble(size, bot, top, meet, join, imp);
        debug_assert!(
            a.size > 64 || a.check_laws().is_empty(),
            "unchecked construction produced invalid tables"
        );
        a
    }

    fn assemble(
        size: usize,
        bot: Elem,
        top: Elem,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        imp: Vec<Elem>,
    ) -> FiniteHeytingAlgebra {
        let neg = (0..size).map(|a| imp[a * size + bot]).collect();
        FiniteHeytingAlgebra {
            size,
            bot,
            top,
            meet,
            join,
            imp,
            neg,
        }
    }

    /// The two-element Boolean algebra.
    pub fn two_element() -> FiniteHeytingAlgebra {
        FiniteHeytingAlgebra::chain(2)
    }

    /// The `n`-element chain `0 < 1 < ... < n-1`. Requires `n >= 1`.
    pub fn chain(n: usize) -> FiniteHeytingAlgebra {
        assert!(n >= 1, "a chain needs at least one element");
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        let mut imp = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                meet.push(a.min(b));
                join.push(a.max(b));
                imp.push(if a <= b { n - 1 } else { b });
            }
        }
        FiniteHeytingAlgebra::from_tables_unchecked(n, 0, n - 1, meet, join, imp)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size + b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size + b]
    }

    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a * self.size + b]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    /// The one-element algebra (bot = top) is permitted but usually
    /// excluded from enumeration, since it validates everything.
    pub fn is_degenerate(&self) -> bool {
        self.size == 1
    }

    // Raw table access for the evaluator hot path.
    pub(crate) fn meet_table(&self) -> &[Elem] {
        &self.meet
    }

    pub(crate) fn join_table(&self) -> &[Elem] {
        &self.join
    }

    pub(crate) fn imp_table(&self) -> &[Elem] {
        &self.imp
    }

    /// Componentwise product. Element `i + j * self.size()` is the pair
    /// `(i, j)`; [`product_split`] recovers the pair. The first factor is
    /// the fastest-varying index, so lexicographic searches over the product
    /// favor small second components first.
    pub fn direct_product(
        &self,
        other: &FiniteHeytingAlgebra,
        max_size: usize,
    ) -> Result<FiniteHeytingAlgebra, SizeLimitExceeded> {
        let required = self.size as u128 * other.size as u128;
        if required > max_size as u128 {
            return Err(SizeLimitExceeded {
                required,
                limit: max_size,
            });
        }
        let n = self.size * other.size;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        let mut imp = vec![0; n * n];
        for x in 0..n {
            let (xa, xb) = product_split(self.size, x);
            for y in 0..n {
                let (ya, yb) = product_split(self.size, y);
                meet[x * n + y] = product_index(self.size, self.meet(xa, ya), other.meet(xb, yb));
                join[x * n + y] = product_index(self.size, self.join(xa, ya), other.join(xb, yb));
                imp[x * n + y] = product_index(self.size, self.imp(xa, ya), other.imp(xb, yb));
            }
        }
        let bot = product_index(self.size, self.bot, other.bot);
        let top = product_index(self.size, self.top, other.top);
        Ok(FiniteHeytingAlgebra::from_tables_unchecked(
            n, bot, top, meet, join, imp,
        ))
    }

    /// The least pair `(a, b)` of non-top elements with `a v b = top`, if
    /// any; `None` means the algebra is well-connected.
    pub fn well_connected_witness(&self) -> Option<(Elem, Elem)> {
        for a in 0..self.size {
            if a == self.top {
                continue;
            }
            for b in 0..self.size {
                if b != self.top && self.join(a, b) == self.top {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// True iff `a v b = top` forces `a = top` or `b = top`.
    pub fn is_well_connected(&self) -> bool {
        self.well_connected_witness().is_none()
    }

    /// Lexicographically least relabeling of `(size, bot, top, meet, join,
    /// imp)` over carrier permutations with bot at 0 and top at `n - 1`.
    /// Equal forms characterize isomorphism. Factorial in `size - 2`, fine
    /// for the intended range (sizes up to ~10).
    pub fn canonical_form(&self) -> Vec<usize> {
        let n = self.size;
        let mut search = CanonSearch {
            alg: self,
            perm: vec![0; n],
            inv: vec![0; n],
            buf: Vec::with_capacity(3 + 3 * n * n),
            best: None,
        };
        search.perm[self.bot] = 0;
        search.perm[self.top] = n - 1;
        let mut free: Vec<Elem> = (0..n).filter(|&e| e != self.bot && e != self.top).collect();
        let count = free.len();
        search.run(&mut free, 0, count);
        search.best.expect("at least one permutation is considered")
    }

    /// The canonical representative of this algebra's isomorphism class.
    pub fn canonicalize(&self) -> FiniteHeytingAlgebra {
        decode_canonical_form(&self.canonical_form())
    }

    pub fn is_isomorphic(&self, other: &FiniteHeytingAlgebra) -> bool {
        self.size == other.size && self.canonical_form() == other.canonical_form()
    }

    fn check_laws(&self) -> Vec<LawViolation> {
        let mut v = Vec::new();
        let n = self.size;
        for op in [OpName::Meet, OpName::Join] {
            let t = match op {
                OpName::Meet => &self.meet,
                _ => &self.join,
            };
            for a in 0..n {
                if t[a * n + a] != a {
                    v.push(LawViolation::NotIdempotent { op, a });
                }
                for b in 0..n {
                    if t[a * n + b] != t[b * n + a] {
                        v.push(LawViolation::NotCommutative { op, a, b });
                    }
                    for c in 0..n {
                        if t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]] {
                            v.push(LawViolation::NotAssociative { op, a, b, c });
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.meet(a, self.join(a, b)) != a {
                    v.push(LawViolation::AbsorptionFailed {
                        outer: OpName::Meet,
                        a,
                        b,
                    });
                }
                if self.join(a, self.meet(a, b)) != a {
                    v.push(LawViolation::AbsorptionFailed {
                        outer: OpName::Join,
                        a,
                        b,
                    });
                }
            }
        }
        for a in 0..n {
            if self.meet(self.top, a) != a {
                v.push(LawViolation::BoundFailed {
                    law: "meet(top, a) = a",
                    a,
                });
            }
            if self.join(self.bot, a) != a {
                v.push(LawViolation::BoundFailed {
                    law: "join(bot, a) = a",
                    a,
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c))
                    {
                        v.push(LawViolation::NotDistributive { a, b, c });
                    }
                }
            }
        }
        // Residuation: meet(a, c) <= b exactly when c <= imp(a, b).
        for a in 0..n {
            for b in 0..n {
                let r = self.imp(a, b);
                for c in 0..n {
                    let lhs = self.leq(self.meet(a, c), b);
                    let rhs = self.leq(c, r);
                    if lhs != rhs {
                        v.push(LawViolation::ResiduationFailed { a, b, c });
                    }
                }
            }
        }
        v
    }
}

/// Pairs `(i, j)` into a product element index; inverse of [`product_split`].
pub fn product_index(left_size: usize, i: Elem, j: Elem) -> Elem {
    i + j * left_size
}

/// Splits a product element into its `(left, right)` components.
pub fn product_split(left_size: usize, x: Elem) -> (Elem, Elem) {
    (x % left_size, x / left_size)
}

fn check_shape(
    size: usize,
    bot: Elem,
    top: Elem,
    meet: &[Elem],
    join: &[Elem],
    imp: &[Elem],
) -> Vec<LawViolation> {
    let mut v = Vec::new();
    if size == 0 {
        v.push(LawViolation::BadShape(String::from("carrier is empty")));
        return v;
    }
    for (op, t) in [
        (OpName::Meet, meet),
        (OpName::Join, join),
        (OpName::Imp, imp),
    ] {
        if t.len() != size * size {
            v.push(LawViolation::BadShape(alloc::format!(
                "{op} table has {} entries, expected {}",
                t.len(),
                size * size
            )));
        }
    }
    if bot >= size || top >= size {
        v.push(LawViolation::BadShape(alloc::format!(
            "bot = {bot} or top = {top} outside carrier 0..{size}"
        )));
    }
    if !v.is_empty() {
        return v;
    }
    for (op, t) in [
        (OpName::Meet, meet),
        (OpName::Join, join),
        (OpName::Imp, imp),
    ] {
        for a in 0..size {
            for b in 0..size {
                let value = t[a * size + b];
                if value >= size {
                    v.push(LawViolation::OutOfRange { op, a, b, value });
                }
            }
        }
    }
    v
}

struct CanonSearch<'a> {
    alg: &'a FiniteHeytingAlgebra,
    perm: Vec<Elem>,
    inv: Vec<Elem>,
    buf: Vec<usize>,
    best: Option<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn run(&mut self, free: &mut Vec<Elem>, k: usize, count: usize) {
        if k == count {
            self.consider(free);
            return;
        }
        for i in k..count {
            free.swap(k, i);
            self.run(free, k + 1, count);
            free.swap(k, i);
        }
    }

    fn consider(&mut self, free: &[Elem]) {
        let n = self.alg.size;
        for (slot, &old) in free.iter().enumerate() {
            self.perm[old] = slot + 1;
        }
        for old in 0..n {
            self.inv[self.perm[old]] = old;
        }
        self.buf.clear();
        self.buf.push(n);
        self.buf.push(self.perm[self.alg.bot]);
        self.buf.push(self.perm[self.alg.top]);
        for table in [&self.alg.meet, &self.alg.join, &self.alg.imp] {
            for x in 0..n {
                let row = self.inv[x] * n;
                for y in 0..n {
                    self.buf.push(self.perm[table[row + self.inv[y]]]);
                }
            }
        }
        if self.best.as_ref().is_none_or(|best| self.buf < *best) {
            self.best = Some(self.buf.clone());
        }
    }
}

fn decode_canonical_form(form: &[usize]) -> FiniteHeytingAlgebra {
    let n = form[0];
    let (bot, top) = (form[1], form[2]);
    let tables = &form[3..];
    FiniteHeytingAlgebra::from_tables_unchecked(
        n,
        bot,
        top,
        tables[..n * n].to_vec(),
        tables[n * n..2 * n * n].to_vec(),
        tables[2 * n * n..].to_vec(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    PairOutOfRange { i: usize, j: usize },
    Cycle { via: usize },
    TooLarge { size: usize },
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::PairOutOfRange { i, j } => {
                write!(f, "pair ({i}, {j}) is outside the poset")
            }
            PosetError::Cycle { via } => {
                write!(f, "order relation has a cycle through {via}")
            }
            PosetError::TooLarge { size } => {
                write!(f, "poset size {size} exceeds the supported maximum of 64")
            }
        }
    }
}

impl core::error::Error for PosetError {}

/// A finite strict partial order on `0..size`, closed under transitivity at
/// construction. Sizes are limited to 64 so subsets fit in a bit mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    strict: Vec<bool>,
}

impl Poset {
    /// Builds the poset generated by `pairs` (each `(i, j)` meaning
    /// `i < j`). Rejects cycles and out-of-range points.
    pub fn new(size: usize, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        if size > 64 {
            return Err(PosetError::TooLarge { size });
        }
        let mut strict = vec![false; size * size];
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(PosetError::PairOutOfRange { i, j });
            }
            strict[i * size + j] = true;
        }
        // Warshall closure, then irreflexivity.
        for k in 0..size {
            for i in 0..size {
                if strict[i * size + k] {
                    for j in 0..size {
                        if strict[k * size + j] {
                            strict[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            if strict[i * size + i] {
                return Err(PosetError::Cycle { via: i });
            }
        }
        Ok(Poset { size, strict })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.strict[i * self.size + j]
    }

    /// Bit mask of `{ j : j < i }`.
    fn strictly_below(&self, i: usize) -> u64 {
        let mut mask = 0u64;
        for j in 0..self.size {
            if self.less(j, i) {
                mask |= 1 << j;
            }
        }
        mask
    }

    /// All downward-closed subsets as bit masks, ascending. Fails once more
    /// than `limit` downsets exist.
    pub fn downsets(&self, limit: usize) -> Result<Vec<u64>, SizeLimitExceeded> {
        let below: Vec<u64> = (0..self.size).map(|i| self.strictly_below(i)).collect();
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(0u64);
        let mut frontier = vec![0u64];
        while let Some(s) = frontier.pop() {
            for (i, &b) in below.iter().enumerate() {
                if s & (1 << i) == 0 && b & !s == 0 {
                    let extended = s | (1 << i);
                    if seen.insert(extended) {
                        if seen.len() > limit {
                            return Err(SizeLimitExceeded {
                                required: seen.len() as u128,
                                limit,
                            });
                        }
                        frontier.push(extended);
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// The Heyting algebra of downsets of `p`, ordered by inclusion: meet is
/// intersection, join is union, and `imp(a, b)` collects the points whose
/// principal downset meets `a` inside `b`. Fails if the lattice would have
/// more than `max_elements` elements.
pub fn from_poset(
    p: &Poset,
    max_elements: usize,
) -> Result<FiniteHeytingAlgebra, SizeLimitExceeded> {
    let downsets = p.downsets(max_elements)?;
    let n = downsets.len();
    let index: BTreeMap<u64, usize> = downsets
        .iter()
        .enumerate()
        .map(|(i, &mask)| (mask, i))
        .collect();
    let below: Vec<u64> = (0..p.size)
        .map(|i| p.strictly_below(i) | (1 << i))
        .collect();
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    let mut imp = Vec::with_capacity(n * n);
    for &a in &downsets {
        for &b in &downsets {
            meet.push(index[&(a & b)]);
            join.push(index[&(a | b)]);
            let mut rel = 0u64;
            for (i, &down_i) in below.iter().enumerate() {
                if down_i & a & !b == 0 {
                    rel |= 1 << i;
                }
            }
            imp.push(index[&rel]);
        }
    }
    Ok(FiniteHeytingAlgebra::from_tables_unchecked(
        n,
        0,
        n - 1,
        meet,
        join,
        imp,
    ))
}
