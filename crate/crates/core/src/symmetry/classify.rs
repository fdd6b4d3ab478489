//! Left-symmetry classifiers for `ℓ_1^n` and `X ⊕₁ ℝ` domains: `T` is left
//! symmetric iff `T = f(·) w` with `w` a left-symmetric point of a smooth `Y`
//! and `f` of the stated shape (a signed coordinate functional on `ℓ_1^n`,
//! vanishing on `X` for `X ⊕₁ ℝ`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{operator_norm, LinearOperator};
use crate::orthogonality::{point_left_symmetric, SymmetryReport};
use crate::space::{dot, Space};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeftSymmetric {
    Yes,
    No,
    ZeroOperator,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifierVerdict {
    pub left_symmetric: LeftSymmetric,
    /// The unit functional `f` of `T/||T|| = f(·) w`.
    pub f: Option<Vec<f64>>,
    /// The unit direction `w`.
    pub w: Option<Vec<f64>>,
    /// Index of the active extreme point `e_k` (`ℓ_1` domains).
    pub k: Option<usize>,
    /// First failed condition when the verdict is `no`.
    pub violation: Option<String>,
    /// Vector-level witness when `w` is not left symmetric.
    pub point_report: Option<SymmetryReport>,
}

impl ClassifierVerdict {
    fn zero() -> Self {
        Self {
            left_symmetric: LeftSymmetric::ZeroOperator,
            f: None,
            w: None,
            k: None,
            violation: None,
            point_report: None,
        }
    }

    fn no(violation: &str) -> Self {
        Self {
            left_symmetric: LeftSymmetric::No,
            violation: Some(violation.to_string()),
            ..Self::zero()
        }
    }

    pub fn is_yes(&self) -> bool {
        self.left_symmetric == LeftSymmetric::Yes
    }
}

pub const VIOLATION_RANK: &str = "rank(T) > 1";
pub const VIOLATION_COORDINATE: &str = "f not a signed coordinate functional";
pub const VIOLATION_KERNEL: &str = "X ⊄ ker f";
pub const VIOLATION_POINT: &str = "w not left symmetric";

/// `T = f(·) w` with `||w|| = 1` and `||f||_* = ||T||`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankOneFactors {
    pub f: Vec<f64>,
    pub w: Vec<f64>,
}

/// Rank-one factorisation when every 2x2 minor is below `rank_tol · ||T||²`
/// (norm taken as the largest absolute entry, which keeps the test
/// scale-free).
pub fn rank_one_factors(t: &LinearOperator, rank_tol: f64) -> Option<RankOneFactors> {
    let m = t.matrix();
    let scale = m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    let (rows, cols) = (m.nrows(), m.ncols());
    for i in 0..rows {
        for k in (i + 1)..rows {
            for j in 0..cols {
                for l in (j + 1)..cols {
                    let minor = m[(i, j)] * m[(k, l)] - m[(i, l)] * m[(k, j)];
                    if minor.abs() > rank_tol * scale * scale {
                        return None;
                    }
                }
            }
        }
    }
    let k = (0..cols)
        .max_by(|&a, &b| {
            let na: f64 = m.column(a).norm();
            let nb: f64 = m.column(b).norm();
            na.total_cmp(&nb)
        })
        .expect("nonempty");
    let c = t.column(k);
    let cc = dot(&c, &c);
    let cn = t.codomain().norm(&c);
    let w: Vec<f64> = c.iter().map(|v| v / cn).collect();
    let f: Vec<f64> = (0..cols).map(|j| dot(&t.column(j), &c) / cc * cn).collect();
    Some(RankOneFactors { f, w })
}

fn check_smooth_codomain(t: &LinearOperator) -> Result<()> {
    if !t.codomain().is_smooth() {
        return Err(Error::pre("codomain must be smooth"));
    }
    Ok(())
}

fn point_check(
    t: &LinearOperator,
    mut verdict: ClassifierVerdict,
    budget: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<ClassifierVerdict> {
    let w = verdict.w.clone().expect("factors present");
    let report = point_left_symmetric(t.codomain(), &w, budget, seed, tol)?;
    if report.is_symmetric_within_budget() {
        verdict.left_symmetric = LeftSymmetric::Yes;
    } else {
        verdict.left_symmetric = LeftSymmetric::No;
        verdict.violation = Some(VIOLATION_POINT.into());
    }
    verdict.point_report = Some(report);
    Ok(verdict)
}

/// Classifier for `T : ℓ_1^n → Y`, `Y` smooth.
pub fn classify_left_symmetric_from_l1(t: &LinearOperator, budget: usize, seed: u64, tol: &Tolerances) -> Result<ClassifierVerdict> {
    if !t.domain().is_l1() {
        return Err(Error::UnsupportedSpace("domain must be l1^n".into()));
    }
    check_smooth_codomain(t)?;
    if t.is_zero() {
        return Ok(ClassifierVerdict::zero());
    }
    let Some(RankOneFactors { f, w }) = rank_one_factors(t, tol.rank) else {
        return Ok(ClassifierVerdict::no(VIOLATION_RANK));
    };
    let fn_ = t.domain().dual_norm(&f);
    let f: Vec<f64> = f.iter().map(|v| v / fn_).collect();
    let active: Vec<usize> = (0..f.len()).filter(|&j| f[j].abs() > 1e-9).collect();
    let mut verdict = ClassifierVerdict {
        left_symmetric: LeftSymmetric::No,
        f: Some(f.clone()),
        w: Some(w),
        k: None,
        violation: None,
        point_report: None,
    };
    if active.len() != 1 || (f[active[0]].abs() - 1.0).abs() > 1e-9 {
        verdict.violation = Some(VIOLATION_COORDINATE.into());
        return Ok(verdict);
    }
    verdict.k = Some(active[0]);
    point_check(t, verdict, budget, seed, tol)
}

/// Classifier for `T : X ⊕₁ ℝ → Y` with `||T|| = ||T(0, 1)||`, `Y` smooth.
pub fn classify_left_symmetric_direct_sum(t: &LinearOperator, budget: usize, seed: u64, tol: &Tolerances) -> Result<ClassifierVerdict> {
    let Some((x_space, line)) = t.domain().blocks() else {
        return Err(Error::UnsupportedSpace("domain must be X ⊕₁ ℝ".into()));
    };
    if line.dim() != 1 {
        return Err(Error::UnsupportedSpace("second summand must be one-dimensional".into()));
    }
    check_smooth_codomain(t)?;
    if t.is_zero() {
        return Ok(ClassifierVerdict::zero());
    }
    let n = x_space.dim();
    let last = t.column(n);
    let top = t.codomain().norm(&last);
    let norm = operator_norm(t).value;
    if (norm - top).abs() > 1e-9 * norm.max(1.0) {
        return Err(Error::pre(format!("||T|| = {norm} differs from ||T(0,1)|| = {top}")));
    }
    let Some(RankOneFactors { f, w }) = rank_one_factors(t, tol.rank) else {
        return Ok(ClassifierVerdict::no(VIOLATION_RANK));
    };
    let fn_ = t.domain().dual_norm(&f);
    let f: Vec<f64> = f.iter().map(|v| v / fn_).collect();
    let mut verdict = ClassifierVerdict {
        left_symmetric: LeftSymmetric::No,
        f: Some(f),
        w: Some(w),
        k: None,
        violation: None,
        point_report: None,
    };
    let x_block_zero = (0..n).all(|j| t.codomain().norm(&t.column(j)) <= 1e-9 * norm);
    if !x_block_zero {
        verdict.violation = Some(VIOLATION_KERNEL.into());
        return Ok(verdict);
    }
    point_check(t, verdict, budget, seed, tol)
}

/// `X ⊕₁ ℝ` convenience constructor used by examples and suites.
pub(crate) fn with_line(x: Space) -> Space {
    Space::sum1(x, Space::l2(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::rank_one;
    use crate::space::{Functional, Vector};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn l1_classifier_examples() {
        let w = Vector::new(Space::l2(2), vec![0.6, 0.8]).unwrap();
        let t = rank_one(&Functional::coordinate(Space::l1(2), 0).unwrap(), &w);
        let v = classify_left_symmetric_from_l1(&t, 40, 0, &tol()).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.k, Some(0));
        let f = v.f.unwrap();
        assert!((f[0].abs() - 1.0).abs() < 1e-12 && f[1] == 0.0);

        let t = rank_one(&Functional::new(Space::l1(2), vec![0.6, 0.8]).unwrap(), &w);
        let v = classify_left_symmetric_from_l1(&t, 40, 0, &tol()).unwrap();
        assert_eq!(v.violation.as_deref(), Some(VIOLATION_COORDINATE));

        let z = LinearOperator::zero(Space::l1(2), Space::l2(2));
        assert_eq!(
            classify_left_symmetric_from_l1(&z, 40, 0, &tol()).unwrap().left_symmetric,
            LeftSymmetric::ZeroOperator
        );

        let full = LinearOperator::identity(Space::l1(2));
        assert!(classify_left_symmetric_from_l1(&full, 40, 0, &tol()).is_err());
        let full = LinearOperator::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]], Space::l1(2), Space::l2(2)).unwrap();
        assert_eq!(
            classify_left_symmetric_from_l1(&full, 40, 0, &tol()).unwrap().violation.as_deref(),
            Some(VIOLATION_RANK)
        );
    }

    #[test]
    fn direct_sum_classifier_examples() {
        let dom = with_line(Space::l2(2));
        let t = LinearOperator::from_rows(&[vec![0.0, 0.0, 0.6], vec![0.0, 0.0, 0.8]], dom.clone(), Space::l2(2)).unwrap();
        assert!(classify_left_symmetric_direct_sum(&t, 40, 0, &tol()).unwrap().is_yes());

        let t = LinearOperator::from_rows(&[vec![0.06, 0.0, 0.6], vec![0.08, 0.0, 0.8]], dom.clone(), Space::l2(2)).unwrap();
        let v = classify_left_symmetric_direct_sum(&t, 40, 0, &tol()).unwrap();
        assert_eq!(v.violation.as_deref(), Some(VIOLATION_KERNEL));

        let y = Space::lp(3.0, 2).unwrap();
        let w = y.normalize(&[2.0, 1.0]).unwrap();
        let t = LinearOperator::from_rows(&[vec![0.0, 0.0, w[0]], vec![0.0, 0.0, w[1]]], dom.clone(), y).unwrap();
        let v = classify_left_symmetric_direct_sum(&t, 40, 0, &tol()).unwrap();
        assert_eq!(v.violation.as_deref(), Some(VIOLATION_POINT));
        let pw = v.point_report.unwrap();
        let pw = pw.witness_vector().unwrap();
        assert!((pw[0] * -4.0 - pw[1]).abs() < 1e-9);

        let t = LinearOperator::from_rows(&[vec![2.0, 0.0, 0.6], vec![0.0, 0.0, 0.8]], dom, Space::l2(2)).unwrap();
        assert!(matches!(
            classify_left_symmetric_direct_sum(&t, 40, 0, &tol()),
            Err(Error::Precondition(_))
        ));
    }
}
