//! Erasure injection and local repair.
//!
//! A plan repairs failed coordinates one at a time. Each step reads a
//! regenerating set of at most `cap + 1` coordinates that avoids every
//! coordinate still failed at that point, and rebuilds the target as a
//! fixed linear combination of the other members.

use crate::code::{EntropyOracle, LinearCode};
use crate::coords::CoordSet;
use crate::error::{usage, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::solve_in_span;
use crate::regset::{minimal_regsets, verify_locality, RegeneratingSet};

/// A set of failed coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErasurePattern {
    failed: CoordSet,
}

impl ErasurePattern {
    pub fn new(failed: CoordSet, n: usize) -> Result<Self> {
        if !failed.is_subset(CoordSet::full(n)) {
            return usage(format!(
                "erasure pattern {:?} not contained in 1..={n}",
                failed.labels()
            ));
        }
        Ok(ErasurePattern { failed })
    }

    pub fn failed(&self) -> CoordSet {
        self.failed
    }
}

/// One repair: `symbol[target] = Σ coefficients[k] · symbol[helper_k]`,
/// with helpers taken in increasing coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairStep {
    pub set: RegeneratingSet,
    pub coefficients: Vec<FieldElement>,
}

impl RepairStep {
    pub fn target(&self) -> usize {
        self.set.target()
    }
}

/// An ordered list of repair steps for one erasure pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairPlan {
    field: FieldSpec,
    length: usize,
    steps: Vec<RepairStep>,
}

impl RepairPlan {
    pub fn from_steps(field: FieldSpec, length: usize, steps: Vec<RepairStep>) -> Self {
        RepairPlan {
            field,
            length,
            steps,
        }
    }

    pub fn steps(&self) -> &[RepairStep] {
        &self.steps
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Coordinates the plan rebuilds.
    pub fn targets(&self) -> CoordSet {
        self.steps.iter().map(|s| s.target()).collect()
    }

    /// Checks the plan against `code`: each step's set meets the
    /// still-failed coordinates only in its target, and its coefficients
    /// reproduce the target's generator column exactly.
    pub fn validate(&self, code: &LinearCode) -> Result<()> {
        let f = code.field();
        let mut failed = self.targets();
        if failed.len() != self.steps.len() {
            return Err(Error::Invariant("a coordinate is repaired twice".into()));
        }
        for step in &self.steps {
            let t = step.target();
            if step.set.members().intersection(failed) != CoordSet::single(t) {
                return Err(Error::Invariant(format!(
                    "step for coordinate {} reads a failed coordinate",
                    t + 1
                )));
            }
            let helpers = step.set.helpers();
            if helpers.len() != step.coefficients.len() {
                return Err(Error::Invariant("coefficient count mismatch".into()));
            }
            for k in 0..code.dimension() {
                let combo = helpers
                    .iter()
                    .zip(&step.coefficients)
                    .fold(FieldElement::ZERO, |acc, (h, &c)| {
                        f.add(acc, f.mul(c, code.column(h)[k]))
                    });
                if combo != code.column(t)[k] {
                    return Err(Error::Invariant(format!(
                        "coefficients do not rebuild coordinate {}",
                        t + 1
                    )));
                }
            }
            failed.remove(t);
        }
        Ok(())
    }
}

/// Greedy sequential repair plan.
///
/// At each step the lowest-indexed failed coordinate that has a usable
/// set is repaired. A set is usable if it has at most `locality_cap + 1`
/// members and meets the still-failed coordinates only in its target.
/// Among usable sets, ones that avoid every originally failed coordinate
/// are preferred, so a step reads repaired symbols only when it must.
pub fn plan_repair(
    code: &LinearCode,
    pattern: &ErasurePattern,
    locality_cap: usize,
) -> Result<RepairPlan> {
    if locality_cap == 0 {
        return usage("locality cap must be at least 1");
    }
    let n = code.len();
    let original = pattern.failed();
    if !original.is_subset(code.all()) {
        return usage(format!(
            "erasure pattern {:?} not contained in 1..={n}",
            original.labels()
        ));
    }
    let candidates: Vec<Vec<RegeneratingSet>> = (0..n)
        .map(|i| {
            if original.contains(i) {
                minimal_regsets(code, i, locality_cap + 1)
            } else {
                Vec::new()
            }
        })
        .collect();

    let mut failed = original;
    let mut steps = Vec::with_capacity(original.len());
    while !failed.is_empty() {
        let choice = failed.iter().find_map(|i| {
            let usable = |r: &&RegeneratingSet| r.members().intersection(failed) == CoordSet::single(i);
            let pristine = |r: &&RegeneratingSet| r.members().intersection(original) == CoordSet::single(i);
            let sets = &candidates[i];
            sets.iter()
                .find(pristine)
                .or_else(|| sets.iter().find(usable))
                .copied()
        });
        let Some(set) = choice else {
            return Err(Error::Unrepairable {
                stuck: failed.iter().next().expect("nonempty") + 1,
                cap: locality_cap,
                residual: failed.labels(),
            });
        };
        let helpers: Vec<&[FieldElement]> = set.helpers().iter().map(|h| code.column(h)).collect();
        let coefficients = solve_in_span(code.field(), &helpers, code.column(set.target()))
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "coordinate {} is not in the span of its regenerating set",
                    set.target() + 1
                ))
            })?;
        failed.remove(set.target());
        steps.push(RepairStep { set, coefficients });
    }
    let plan = RepairPlan::from_steps(code.field().clone(), n, steps);
    plan.validate(code)?;
    Ok(plan)
}

/// Applies `plan` to a codeword with erasures marked `None`.
///
/// The erased positions must be exactly the plan's targets.
pub fn execute_repair(
    codeword: &[Option<FieldElement>],
    plan: &RepairPlan,
) -> Result<Vec<FieldElement>> {
    if codeword.len() != plan.length() {
        return usage(format!(
            "codeword has {} symbols, plan is for length {}",
            codeword.len(),
            plan.length()
        ));
    }
    let erased: CoordSet = codeword
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(i, _)| i)
        .collect();
    if erased != plan.targets() {
        return usage(format!(
            "erased positions {:?} do not match plan targets {:?}",
            erased.labels(),
            plan.targets().labels()
        ));
    }
    let f = plan.field();
    let mut word = codeword.to_vec();
    for step in plan.steps() {
        let mut acc = FieldElement::ZERO;
        for (h, &c) in step.set.helpers().iter().zip(&step.coefficients) {
            let sym = word[h].ok_or_else(|| {
                Error::Usage(format!("step reads erased coordinate {}", h + 1))
            })?;
            acc = f.add(acc, f.mul(c, sym));
        }
        word[step.target()] = Some(acc);
    }
    Ok(word.into_iter().map(|s| s.expect("all repaired")).collect())
}

/// Largest `t` such that every coordinate keeps a repair set of size
/// `≤ locality_cap + 1` under any `t - 1` other erasures; 0 when some
/// coordinate has no such set at all.
pub fn repair_tolerance<O: EntropyOracle + ?Sized>(oracle: &O, locality_cap: usize) -> Result<usize> {
    let mut t = 0;
    while t < oracle.length() && verify_locality(oracle, locality_cap, t + 2)? {
        t += 1;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{repetition_code, single_parity_code};
    use crate::square::{GridIndex, SquareCode};

    fn g(i: usize, j: usize) -> usize {
        GridIndex::new(i, j).coord(2)
    }

    #[test]
    fn single_erasure_uses_row() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let p = ErasurePattern::new(CoordSet::single(g(1, 1)), 9).unwrap();
        let plan = plan_repair(sc.code(), &p, 2).unwrap();
        assert_eq!(plan.steps().len(), 1);
        assert_eq!(plan.steps()[0].set.members().labels(), vec![1, 2, 3]);
        assert_eq!(plan.steps()[0].coefficients, vec![FieldElement::ONE; 2]);
    }

    #[test]
    fn row_mates_use_columns() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let failed: CoordSet = [g(1, 1), g(1, 2)].into_iter().collect();
        let plan = plan_repair(sc.code(), &ErasurePattern::new(failed, 9).unwrap(), 2).unwrap();
        let used: Vec<Vec<usize>> = plan.steps().iter().map(|s| s.set.members().labels()).collect();
        assert_eq!(used, vec![vec![1, 4, 7], vec![2, 5, 8]]);
    }

    #[test]
    fn empty_pattern() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let plan = plan_repair(sc.code(), &ErasurePattern::new(CoordSet::EMPTY, 9).unwrap(), 2).unwrap();
        assert!(plan.steps().is_empty());
        let f = sc.code().field();
        let msg = [f.monomial(1), f.monomial(2), FieldElement::ONE];
        let cw = sc.code().encode(&msg).unwrap();
        let wrapped: Vec<_> = cw.iter().copied().map(Some).collect();
        assert_eq!(execute_repair(&wrapped, &plan).unwrap(), cw);
    }

    #[test]
    fn row_repair_is_sum_of_mates() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let f = sc.code().field();
        let msg = [f.monomial(3), f.monomial(0), f.monomial(2)];
        let cw = sc.code().encode(&msg).unwrap();
        let mut damaged: Vec<_> = cw.iter().copied().map(Some).collect();
        damaged[g(1, 1)] = None;
        let plan = plan_repair(sc.code(), &ErasurePattern::new(CoordSet::single(0), 9).unwrap(), 2).unwrap();
        let fixed = execute_repair(&damaged, &plan).unwrap();
        assert_eq!(fixed[0], f.add(cw[1], cw[2]));
        assert_eq!(fixed, cw);
    }

    #[test]
    fn unrepairable_names_coordinate() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        // (1,1) loses its row mate (1,2) and column mate (2,1)
        let failed: CoordSet = [g(1, 1), g(1, 2), g(2, 1), g(2, 2)].into_iter().collect();
        let err = plan_repair(sc.code(), &ErasurePattern::new(failed, 9).unwrap(), 2).unwrap_err();
        match err {
            Error::Unrepairable { stuck, residual, .. } => {
                assert_eq!(stuck, 1);
                assert_eq!(residual, vec![1, 2, 4, 5]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mismatched_codeword_is_usage_error() {
        let sc = SquareCode::build(2, 3, None).unwrap();
        let plan = plan_repair(sc.code(), &ErasurePattern::new(CoordSet::single(0), 9).unwrap(), 2).unwrap();
        let word = vec![Some(FieldElement::ONE); 9];
        assert!(matches!(execute_repair(&word, &plan), Err(Error::Usage(_))));
        assert!(matches!(execute_repair(&word[..4], &plan), Err(Error::Usage(_))));
    }

    #[test]
    fn tolerance_examples() {
        let f = crate::field::FieldSpec::with_degree(4).unwrap();
        let rep = repetition_code(f.clone(), 3).unwrap();
        assert_eq!(repair_tolerance(&rep, 1).unwrap(), 2);
        let sp = single_parity_code(f, 3).unwrap();
        assert_eq!(repair_tolerance(&sp, 3).unwrap(), 1);
        assert_eq!(repair_tolerance(&sp, 2).unwrap(), 0);
        let sc = SquareCode::build(2, 3, None).unwrap();
        assert_eq!(repair_tolerance(sc.code(), 2).unwrap(), 2);
    }
}
