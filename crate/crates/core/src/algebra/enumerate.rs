//! Enumeration of finite Heyting algebras up to isomorphism.
//!
//! Finite Heyting algebras are exactly finite distributive lattices, and
//! those are downset lattices of finite posets, uniquely up to isomorphism.
//! So the enumerator walks posets instead of tables: grow posets one point
//! at a time (a new point is glued onto a downset/upset pair), prune any
//! poset whose downset count already exceeds the target size (removing a
//! point never increases the count, so pruning is complete), deduplicate
//! posets by their least relabeled adjacency matrix, and emit the downset
//! lattice of each survivor in canonical presentation.
//!
//! The output is sorted by size and then by canonical form, so repeated runs
//! produce identical streams.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{from_poset, FiniteHeytingAlgebra, Poset};

/// Default ceiling for [`enumerate`] requests. Canonical forms cost
/// `(n - 2)!` per algebra, so sizes much beyond this stop being interactive.
pub const DEFAULT_SIZE_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Keep the one-element algebra in the output. Off by default: it
    /// validates every rule, so it only adds noise to refutation searches.
    pub include_degenerate: bool,
    /// Refuse requests above this size.
    pub size_cap: usize,
}

impl Default for EnumerateOptions {
    fn default() -> EnumerateOptions {
        EnumerateOptions {
            include_degenerate: false,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerateError {
    CapExceeded { requested: usize, cap: usize },
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::CapExceeded { requested, cap } => write!(
                f,
                "enumeration up to size {requested} exceeds the cap of {cap}"
            ),
        }
    }
}

impl core::error::Error for EnumerateError {}

/// All Heyting algebras with at most `max_size` elements, one canonical
/// representative per isomorphism class, sorted by size then canonical form.
pub fn enumerate(
    max_size: usize,
    opts: &EnumerateOptions,
) -> Result<Vec<FiniteHeytingAlgebra>, EnumerateError> {
    if max_size > opts.size_cap {
        return Err(EnumerateError::CapExceeded {
            requested: max_size,
            cap: opts.size_cap,
        });
    }
    let mut forms: Vec<Vec<usize>> = Vec::new();
    for poset in posets_with_downsets_up_to(max_size) {
        let algebra = from_poset(&poset, max_size)
            .expect("poset generation prunes oversized downset lattices");
        if algebra.is_degenerate() && !opts.include_degenerate {
            continue;
        }
        forms.push(algebra.canonical_form());
    }
    // Canonical forms start with the size, so this sorts by size first.
    forms.sort();
    let before = forms.len();
    forms.dedup();
    debug_assert_eq!(
        before,
        forms.len(),
        "distinct posets yielded isomorphic downset lattices"
    );
    Ok(forms
        .iter()
        .map(|form| super::decode_canonical_form(form))
        .collect())
}

/// Grows posets point by point, keeping only those with at most
/// `max_downsets` downsets and one representative per isomorphism class.
fn posets_with_downsets_up_to(max_downsets: usize) -> Vec<Poset> {
    let empty = Poset::new(0, &[]).expect("empty poset");
    if max_downsets == 0 {
        return Vec::new();
    }
    let mut all = vec![empty.clone()];
    let mut level = vec![empty];
    while !level.is_empty() {
        let mut next: BTreeMap<Vec<u8>, Poset> = BTreeMap::new();
        for p in &level {
            extend_poset(p, max_downsets, &mut next);
        }
        level = next.into_values().collect();
        all.extend(level.iter().cloned());
    }
    all
}

/// Adds one point to `p` in every consistent way: pick a downset `d` (what
/// lies below the new point) and an upset `u` (what lies above), disjoint,
/// with everything in `d` already below everything in `u`; the result is
/// transitive by construction.
fn extend_poset(p: &Poset, max_downsets: usize, out: &mut BTreeMap<Vec<u8>, Poset>) {
    let n = p.size();
    let downs = p
        .downsets(max_downsets)
        .expect("kept posets stay under the downset limit");
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let above: Vec<u64> = (0..n)
        .map(|d| {
            (0..n)
                .filter(|&u| p.less(d, u))
                .fold(0u64, |m, u| m | (1 << u))
        })
        .collect();

    let mut existing_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if p.less(i, j) {
                existing_pairs.push((i, j));
            }
        }
    }

    for &d_mask in &downs {
        'upsets: for &complement in &downs {
            let u_mask = full & !complement;
            if d_mask & u_mask != 0 {
                continue;
            }
            for (d, &up) in above.iter().enumerate() {
                if d_mask >> d & 1 == 1 && u_mask & !up != 0 {
                    continue 'upsets;
                }
            }
            let mut pairs = existing_pairs.clone();
            for i in 0..n {
                if d_mask >> i & 1 == 1 {
                    pairs.push((i, n));
                }
                if u_mask >> i & 1 == 1 {
                    pairs.push((n, i));
                }
            }
            let q = Poset::new(n + 1, &pairs).expect("extension preserves acyclicity");
            if q.downsets(max_downsets).is_err() {
                continue;
            }
            out.entry(poset_canonical_form(&q)).or_insert(q);
        }
    }
}

/// Least relabeled adjacency matrix over all permutations of the points.
fn poset_canonical_form(p: &Poset) -> Vec<u8> {
    let n = p.size();
    let mut search = PosetCanon {
        p,
        buf: Vec::with_capacity(n * n),
        best: None,
    };
    let mut order: Vec<usize> = (0..n).collect();
    search.run(&mut order, 0, n);
    search.best.expect("at least one permutation is considered")
}

struct PosetCanon<'a> {
    p: &'a Poset,
    buf: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl PosetCanon<'_> {
    fn run(&mut self, order: &mut Vec<usize>, k: usize, count: usize) {
        if k == count {
            self.consider(order);
            return;
        }
        for i in k..count {
            order.swap(k, i);
            self.run(order, k + 1, count);
            order.swap(k, i);
        }
    }

    fn consider(&mut self, order: &[usize]) {
        let n = self.p.size();
        self.buf.clear();
        for x in 0..n {
            for y in 0..n {
                self.buf.push(self.p.less(order[x], order[y]) as u8);
            }
        }
        if self.best.as_ref().is_none_or(|best| self.buf < *best) {
            self.best = Some(self.buf.clone());
        }
    }
}
