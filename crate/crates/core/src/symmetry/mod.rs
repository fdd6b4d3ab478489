//! Operator-level symmetry: falsifiers built from explicit constructions,
//! the Step-3 counterexample, left-symmetry classifiers and the theorem
//! suites.
//!
//! An operator `T` is left symmetric when `T ⊥_B A ⇒ A ⊥_B T` for every `A`,
//! right symmetric when `A ⊥_B T ⇒ T ⊥_B A`. Falsifiers return a witness `A`
//! violating the implication, or `symmetric-within-budget`.

mod classify;
mod left;
mod right;
mod step3;
mod suites;

pub use classify::{
    classify_left_symmetric_direct_sum, classify_left_symmetric_from_l1, rank_one_factors, ClassifierVerdict,
    LeftSymmetric, RankOneFactors,
};
pub use left::{check_minus_cone_lemma, falsify_left_symmetric_op, s1_witness};
pub use right::{
    dim2_extreme_check, falsify_right_symmetric_op, kernel_identity_test, spectral_instance_test, Dim2Report,
    KernelIdentityReport, SpectralReport,
};
pub use step3::{common_kernel, construct_step3_witness, Step3Certificate};
pub use suites::{verify_theorem, Outcome, SuiteConfig, SuiteReport, TrialRecord, THEOREM_IDS};

use crate::error::Result;
use crate::operator::{norm_with_maximizers, op_bj_orthogonal_pinned, LinearOperator};
use crate::orthogonality::{Direction, OrthogonalityVerdict, Subject, SymmetryReport, SymmetryVerdict, Witness};
use crate::tolerance::Tolerances;

/// Default candidate budget per falsifier.
pub const DEFAULT_BUDGET: usize = 500;

pub(crate) fn empty_report(subject: &LinearOperator, direction: Direction, seed: u64, tol: &Tolerances) -> SymmetryReport {
    SymmetryReport {
        subject: Subject::Operator(subject.clone()),
        direction,
        verdict: SymmetryVerdict::SymmetricWithinBudget,
        witness: None,
        strategy: None,
        holding: None,
        refuted: None,
        trials_used: 0,
        seed,
        tolerance: tol.numeric,
    }
}

/// A precomputed `(||T||, maximizers)` pair, reused across nested verdicts.
#[derive(Debug, Clone)]
pub(crate) struct Anchored {
    pub op: LinearOperator,
    pub norm: f64,
    pub pins: Vec<Vec<f64>>,
}

impl Anchored {
    pub fn new(op: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<Self> {
        let (norm, pins) = norm_with_maximizers(op, tol, seed)?;
        Ok(Self {
            op: op.clone(),
            norm,
            pins,
        })
    }

    pub fn with(op: &LinearOperator, norm: f64, pins: Vec<Vec<f64>>) -> Self {
        Self {
            op: op.clone(),
            norm,
            pins,
        }
    }

    /// `self ⊥_B other`.
    pub fn orthogonal_to(&self, other: &LinearOperator, tol: &Tolerances, seed: u64) -> OrthogonalityVerdict {
        op_bj_orthogonal_pinned(&self.op, other, self.norm, self.pins.clone(), tol, seed)
    }
}

/// `first ⊥_B second` must hold and `second ⊥_B first` must fail with a
/// value drop above the witness margin.
pub(crate) fn one_way(
    first: &Anchored,
    second: &Anchored,
    tol: &Tolerances,
    seed: u64,
) -> Option<(OrthogonalityVerdict, OrthogonalityVerdict)> {
    let holding = first.orthogonal_to(&second.op, tol, seed);
    if !holding.orthogonal {
        return None;
    }
    let refuted = second.orthogonal_to(&first.op, tol, seed);
    if refuted.orthogonal || refuted.margin <= tol.witness_margin(refuted.base_value) {
        return None;
    }
    Some((holding, refuted))
}

pub(crate) fn record_witness(
    report: &mut SymmetryReport,
    witness: LinearOperator,
    label: Option<&str>,
    strategy: &str,
    claims: (OrthogonalityVerdict, OrthogonalityVerdict),
) {
    report.verdict = SymmetryVerdict::NotSymmetric;
    report.witness = Some(Witness::Operator {
        label: label.map(str::to_string),
        operator: witness,
    });
    report.strategy = Some(strategy.to_string());
    report.holding = Some(claims.0);
    report.refuted = Some(claims.1);
}
