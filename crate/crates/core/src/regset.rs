//! Regenerating sets and the union-size function Φ.
//!
//! A regenerating set of coordinate `i` is a set `R ∋ i` such that `Y_i`
//! is determined by `Y_{R∖{i}}`, i.e. `H(R) = H(R ∖ {i})`. A sequence of
//! regenerating sets has a nontrivial union when each target lies outside
//! the union of the sets before it. `Φ(x)` is the smallest possible union
//! of such a sequence of length `x`, and `ρ` is the largest `x` with
//! `Φ(x) - x < M/α`. Everything here is computed through an
//! [`EntropyOracle`].

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::code::EntropyOracle;
use crate::coords::{k_subsets_of, CoordSet};
use crate::error::{usage, Error, Result};

/// A coordinate together with a set of coordinates that determines it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegeneratingSet {
    target: usize,
    members: CoordSet,
}

impl RegeneratingSet {
    /// Pairs a target with a member set; the target must be a member.
    ///
    /// This only checks membership. Use [`RegeneratingSet::validated`] to
    /// also check the entropy condition against a code.
    pub fn new(target: usize, members: CoordSet) -> Result<Self> {
        if !members.contains(target) {
            return usage(format!(
                "target {} is not a member of {:?}",
                target + 1,
                members.labels()
            ));
        }
        Ok(RegeneratingSet { target, members })
    }

    /// Like [`RegeneratingSet::new`] but also requires that `members`
    /// actually regenerates `target`.
    pub fn validated<O: EntropyOracle + ?Sized>(
        oracle: &O,
        target: usize,
        members: CoordSet,
    ) -> Result<Self> {
        if !is_regenerating(oracle, target, members)? {
            return usage(format!(
                "{:?} is not a regenerating set of coordinate {}",
                members.labels(),
                target + 1
            ));
        }
        Ok(RegeneratingSet { target, members })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn members(&self) -> CoordSet {
        self.members
    }

    /// Members other than the target.
    pub fn helpers(&self) -> CoordSet {
        self.members.without(self.target)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Orders by target, then by the sorted member list.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.target
            .cmp(&other.target)
            .then_with(|| self.members.lex_cmp(other.members))
    }
}

/// An ordered sequence of regenerating sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegSetSequence(pub Vec<RegeneratingSet>);

impl RegSetSequence {
    pub fn new(items: Vec<RegeneratingSet>) -> Self {
        RegSetSequence(items)
    }

    pub fn items(&self) -> &[RegeneratingSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self) -> CoordSet {
        self.0
            .iter()
            .fold(CoordSet::EMPTY, |acc, r| acc.union(r.members))
    }

    /// The ordering condition alone: target `j` avoids the union of the
    /// first `j - 1` sets. Does not look at entropies.
    pub fn has_nontrivial_order(&self) -> bool {
        let mut seen = CoordSet::EMPTY;
        for r in &self.0 {
            if seen.contains(r.target) {
                return false;
            }
            seen = seen.union(r.members);
        }
        true
    }
}

/// Whether `members` regenerates coordinate `target`.
pub fn is_regenerating<O: EntropyOracle + ?Sized>(
    oracle: &O,
    target: usize,
    members: CoordSet,
) -> Result<bool> {
    let n = oracle.length();
    if !members.is_subset(CoordSet::full(n)) {
        return usage(format!(
            "coordinate set {:?} not contained in 1..={n}",
            members.labels()
        ));
    }
    if !members.contains(target) {
        return usage(format!(
            "target {} is not a member of {:?}",
            target + 1,
            members.labels()
        ));
    }
    Ok(oracle.joint_entropy(members) == oracle.joint_entropy(members.without(target)))
}

/// All inclusion-minimal regenerating sets of `target` with at most
/// `size_cap` members, ordered by size and then lexicographically.
///
/// Sizes are scanned upward. A candidate is kept when it regenerates the
/// target and contains no smaller set already found; since every
/// regenerating set contains a minimal one, this yields exactly the
/// minimal sets.
pub fn minimal_regsets<O: EntropyOracle + ?Sized>(
    oracle: &O,
    target: usize,
    size_cap: usize,
) -> Vec<RegeneratingSet> {
    let n = oracle.length();
    assert!(target < n, "target {target} outside code of length {n}");
    let others = CoordSet::full(n).without(target);
    let mut found: Vec<CoordSet> = Vec::new();
    let mut out = Vec::new();
    for size in 1..=size_cap.min(n) {
        let mut this_size = Vec::new();
        for helpers in k_subsets_of(others, size - 1) {
            if found.iter().any(|f| f.is_subset(helpers)) {
                continue;
            }
            let members = helpers.with(target);
            if oracle.joint_entropy(members) == oracle.joint_entropy(helpers) {
                this_size.push(members);
            }
        }
        this_size.sort_by(|a, b| a.lex_cmp(*b));
        for members in this_size {
            found.push(members.without(target));
            out.push(RegeneratingSet { target, members });
        }
    }
    out
}

/// Checks the nontrivial-union property of `seq`. Every item must be a
/// genuine regenerating set of its target, otherwise this is a usage error.
pub fn is_nontrivial_union<O: EntropyOracle + ?Sized>(
    oracle: &O,
    seq: &RegSetSequence,
) -> Result<bool> {
    for r in seq.items() {
        if !is_regenerating(oracle, r.target, r.members)? {
            return usage(format!(
                "{:?} is not a regenerating set of coordinate {}",
                r.members.labels(),
                r.target + 1
            ));
        }
    }
    Ok(seq.has_nontrivial_order())
}

/// Checks `H(∪R) ≤ α(|∪R| - m)` for a sequence of `m` sets with a
/// nontrivial union. This always holds; `false` means the oracle or the
/// caller is broken.
pub fn check_union_entropy<O: EntropyOracle + ?Sized>(
    oracle: &O,
    seq: &RegSetSequence,
) -> Result<bool> {
    if !is_nontrivial_union(oracle, seq)? {
        return usage("sequence does not have a nontrivial union");
    }
    let union = seq.union();
    let budget = oracle.alpha() * (union.len() - seq.len());
    Ok(oracle.joint_entropy(union) <= budget)
}

/// Φ values, `ρ`, and one minimizing sequence per computed `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiProfile {
    /// `phi[x] = Φ(x)`, for `x` up to the requested maximum or the last
    /// `x` for which a sequence exists, whichever is smaller.
    pub phi: Vec<usize>,
    pub rho: usize,
    pub witnesses: Vec<RegSetSequence>,
    /// Size cap applied to candidate regenerating sets.
    pub size_cap: usize,
}

/// Exact Φ search over the minimal regenerating sets within a size cap.
///
/// Restricting to minimal sets loses nothing: replacing a set by a minimal
/// regenerating subset with the same target keeps its target, cannot grow
/// the union, and cannot put a later target inside an earlier set.
pub struct PhiSearch<'a, O: EntropyOracle + ?Sized> {
    oracle: &'a O,
    size_cap: usize,
    by_target: Vec<Vec<RegeneratingSet>>,
}

impl<'a, O: EntropyOracle + ?Sized> PhiSearch<'a, O> {
    /// Search with the default cap: the declared locality `r` gives `r + 1`,
    /// otherwise `n`.
    pub fn new(oracle: &'a O) -> Self {
        let cap = default_size_cap(oracle);
        Self::with_cap(oracle, cap)
    }

    pub fn with_cap(oracle: &'a O, size_cap: usize) -> Self {
        let by_target = (0..oracle.length())
            .map(|t| {
                let mut sets = minimal_regsets(oracle, t, size_cap);
                sets.sort_by(|a, b| a.lex_cmp(b));
                sets
            })
            .collect();
        PhiSearch {
            oracle,
            size_cap,
            by_target,
        }
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    /// Candidate sets for `target`, in lexicographic order.
    pub fn candidates(&self, target: usize) -> &[RegeneratingSet] {
        &self.by_target[target]
    }

    /// `Φ(x)` and the lexicographically first minimizing sequence, or
    /// `None` if no nontrivial union of `x` candidate sets exists.
    pub fn phi(&self, x: usize) -> Option<(usize, RegSetSequence)> {
        if x == 0 {
            return Some((0, RegSetSequence::default()));
        }
        let mut state = Dfs {
            search: self,
            x,
            best: usize::MAX,
            best_seq: Vec::new(),
            path: Vec::with_capacity(x),
            visited: HashSet::new(),
        };
        state.descend(CoordSet::EMPTY);
        (state.best != usize::MAX).then_some((state.best, RegSetSequence(state.best_seq)))
    }

    /// Φ(0..=x_max) together with ρ.
    ///
    /// ρ needs Φ up to the first `x` failing `α(Φ(x) - x) < M`, so the
    /// search may run past `x_max`; only the first `x_max + 1` values are
    /// reported. For every `x ≤ ρ` the witness union must leave some
    /// coordinate uncovered, which is checked here.
    pub fn profile(&self, x_max: usize) -> Result<PhiProfile> {
        let m = self.oracle.file_size();
        let alpha = self.oracle.alpha();
        let full = CoordSet::full(self.oracle.length());
        let mut phi = Vec::new();
        let mut witnesses = Vec::new();
        let mut rho: Option<usize> = None;
        let mut x = 0;
        loop {
            if x > x_max && rho.is_some() {
                break;
            }
            let Some((value, seq)) = self.phi(x) else {
                break;
            };
            if rho.is_none() {
                if alpha * (value - x) < m {
                    if seq.union() == full {
                        return Err(Error::Invariant(format!(
                            "witness union for x={x} covers every coordinate although Φ(x)-x < M/α"
                        )));
                    }
                } else {
                    rho = Some(x - 1);
                }
            }
            if x <= x_max {
                phi.push(value);
                witnesses.push(seq);
            }
            x += 1;
        }
        // Φ ran out before the threshold was crossed: every computed x passed.
        let rho = rho.unwrap_or(x - 1);
        Ok(PhiProfile {
            phi,
            rho,
            witnesses,
            size_cap: self.size_cap,
        })
    }

    pub fn rho(&self) -> Result<usize> {
        Ok(self.profile(0)?.rho)
    }
}

struct Dfs<'s, 'a, O: EntropyOracle + ?Sized> {
    search: &'s PhiSearch<'a, O>,
    x: usize,
    best: usize,
    best_seq: Vec<RegeneratingSet>,
    path: Vec<RegeneratingSet>,
    visited: HashSet<(u64, usize)>,
}

impl<O: EntropyOracle + ?Sized> Dfs<'_, '_, O> {
    // Sequences are explored in lexicographic order and the incumbent is
    // only replaced on strict improvement, so the reported witness is the
    // lexicographically first minimizer. Completions depend only on the
    // current union and depth; a repeated (union, depth) state can only
    // reproduce completions already seen from an earlier prefix.
    fn descend(&mut self, union: CoordSet) {
        let depth = self.path.len();
        if depth == self.x {
            if union.len() < self.best {
                self.best = union.len();
                self.best_seq = self.path.clone();
            }
            return;
        }
        // each further set adds at least its own target
        if union.len() + (self.x - depth) >= self.best {
            return;
        }
        if !self.visited.insert((union.mask(), depth)) {
            return;
        }
        let n = self.search.oracle.length();
        for target in 0..n {
            if union.contains(target) {
                continue;
            }
            for &r in &self.search.by_target[target] {
                let next = union.union(r.members);
                if next.len() + (self.x - depth - 1) >= self.best {
                    continue;
                }
                self.path.push(r);
                self.descend(next);
                self.path.pop();
            }
        }
    }
}

/// `r + 1` for codes declaring locality `r`, otherwise `n`.
pub fn default_size_cap<O: EntropyOracle + ?Sized>(oracle: &O) -> usize {
    match oracle.declared_locality() {
        Some(r) => (r + 1).min(oracle.length()),
        None => oracle.length(),
    }
}

/// Φ(x) with an explicit candidate size cap.
pub fn phi<O: EntropyOracle + ?Sized>(oracle: &O, x: usize, size_cap: usize) -> Option<usize> {
    PhiSearch::with_cap(oracle, size_cap).phi(x).map(|(v, _)| v)
}

/// ρ with the default size cap.
pub fn rho<O: EntropyOracle + ?Sized>(oracle: &O) -> Result<usize> {
    PhiSearch::new(oracle).rho()
}

/// Enumeration limits for [`verify_locality`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalityLimits {
    pub max_delta: usize,
    pub max_length: usize,
}

impl Default for LocalityLimits {
    fn default() -> Self {
        LocalityLimits {
            max_delta: 4,
            max_length: 25,
        }
    }
}

/// Whether every coordinate has locality `r` with repair tolerance
/// `delta - 1`, using the default enumeration limits.
pub fn verify_locality<O: EntropyOracle + ?Sized>(oracle: &O, r: usize, delta: usize) -> Result<bool> {
    verify_locality_with(oracle, r, delta, LocalityLimits::default())
}

/// For every coordinate `i` and every erasure set `E ∋ i` with
/// `|E| ≤ delta - 1`, some regenerating set `R` of `i` has `|R| ≤ r + 1`
/// and `R ∩ E = {i}`.
///
/// Only erasure sets of the largest admissible size are enumerated: a
/// set avoiding a larger `E` also avoids every subset of it.
pub fn verify_locality_with<O: EntropyOracle + ?Sized>(
    oracle: &O,
    r: usize,
    delta: usize,
    limits: LocalityLimits,
) -> Result<bool> {
    if delta < 2 {
        return usage(format!("repair tolerance parameter delta must be >= 2, got {delta}"));
    }
    if delta > limits.max_delta {
        return Err(Error::TooLarge {
            what: "delta for exhaustive locality check",
            actual: delta,
            limit: limits.max_delta,
        });
    }
    let n = oracle.length();
    if n > limits.max_length {
        return Err(Error::TooLarge {
            what: "code length for exhaustive locality check",
            actual: n,
            limit: limits.max_length,
        });
    }
    for i in 0..n {
        let helpers: Vec<CoordSet> = minimal_regsets(oracle, i, r + 1)
            .iter()
            .map(|s| s.helpers())
            .collect();
        if helpers.is_empty() {
            return Ok(false);
        }
        let others = CoordSet::full(n).without(i);
        let extra = (delta - 2).min(n - 1);
        for co_failed in k_subsets_of(others, extra) {
            if helpers.iter().all(|h| !h.intersection(co_failed).is_empty()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
