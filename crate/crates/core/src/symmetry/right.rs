use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{norm_attainment_set, operator_norm, rank_one, LinearOperator, NormEvaluator};
use crate::orthogonality::{point_right_symmetric, Direction, OrthogonalityVerdict, SymmetryReport};
use crate::rng;
use crate::search::minimize_convex;
use crate::space::{Functional, Vector};
use crate::tolerance::Tolerances;

use super::{empty_report, one_way, record_witness, Anchored};

/// Outcome of the kernel observation: a nonzero `u ∈ ker T` gives
/// `||I + λT|| >= ||(I + λT)u|| = ||u||`, so `I ⊥_B T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelIdentityReport {
    pub nullity: usize,
    pub kernel_vector: Vec<f64>,
    /// `I ⊥_B T`, which must hold.
    pub identity_orthogonal: OrthogonalityVerdict,
    /// `T ⊥_B I`; when it fails, `I` witnesses that `T` is not right symmetric.
    pub operator_orthogonal: OrthogonalityVerdict,
}

fn square(t: &LinearOperator) -> Result<()> {
    if t.domain() != t.codomain() {
        return Err(Error::pre("domain and codomain must coincide"));
    }
    Ok(())
}

fn nullity(t: &LinearOperator, tol: &Tolerances) -> usize {
    t.domain().dim() - t.rank(tol.rank)
}

/// Unit kernel vector from the smallest singular value.
fn kernel_vector(t: &LinearOperator) -> Option<Vec<f64>> {
    let svd = t.matrix().clone().svd(false, true);
    let vt = svd.v_t?;
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    let u: Vec<f64> = vt.row(k).iter().copied().collect();
    t.domain().normalize(&u)
}

pub fn kernel_identity_test(t: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<KernelIdentityReport> {
    square(t)?;
    let nullity = nullity(t, tol);
    if nullity == 0 {
        return Err(Error::pre("T has trivial kernel"));
    }
    let u = kernel_vector(t).ok_or_else(|| Error::Internal("no kernel vector".into()))?;
    let neg: Vec<f64> = u.iter().map(|v| -v).collect();
    let identity = Anchored::with(&LinearOperator::identity(t.domain().clone()), 1.0, vec![u.clone(), neg]);
    let anchor = Anchored::new(t, tol, seed)?;
    Ok(KernelIdentityReport {
        nullity,
        identity_orthogonal: identity.orthogonal_to(t, tol, seed),
        operator_orthogonal: anchor.orthogonal_to(&identity.op, tol, seed),
        kernel_vector: u,
    })
}

/// Search for `A` with `A ⊥_B T` and `T ⊥̸_B A`.
///
/// R1: a nontrivial kernel gives `I ⊥_B T`; `I` is the witness when
/// `T ⊥_B I` fails. R2: when `M_T = {±x}`, a point witness `y` for `Tx`
/// (`y ⊥_B Tx`, `Tx ⊥̸_B y`) lifts to `A = f(·) y` with `f ∈ J(x)`. R3: random
/// `A₀` shifted to `cT + A₀` with `c` minimising `||cT + A₀||`.
pub fn falsify_right_symmetric_op(t: &LinearOperator, budget: usize, seed: u64, tol: &Tolerances) -> Result<SymmetryReport> {
    if t.is_zero() {
        return Err(Error::ZeroOperator("right symmetry falsifier needs T != 0".into()));
    }
    let mut report = empty_report(t, Direction::Right, seed, tol);
    let m = norm_attainment_set(t, tol, seed)?;
    let anchor = Anchored::with(t, m.norm_value, m.points.clone());

    // R1
    if t.domain() == t.codomain() && nullity(t, tol) > 0 && report.trials_used < budget {
        report.trials_used += 1;
        let k = kernel_identity_test(t, tol, seed)?;
        if k.identity_orthogonal.orthogonal
            && !k.operator_orthogonal.orthogonal
            && k.operator_orthogonal.margin > tol.witness_margin(k.operator_orthogonal.base_value)
        {
            let claims = (k.identity_orthogonal, k.operator_orthogonal);
            record_witness(&mut report, LinearOperator::identity(t.domain().clone()), Some("identity"), "R1", claims);
            return Ok(report);
        }
    }

    // R2
    if m.cardinality() == Some(2) && report.trials_used < budget {
        let x = &m.points[0];
        let tx = t.apply(x);
        let share = (budget - report.trials_used).div_ceil(2);
        let point = point_right_symmetric(t.codomain(), &tx, share, rng::sub_seed(seed, 21), tol)?;
        report.trials_used += point.trials_used;
        if let Some(y) = point.witness_vector() {
            let f = Functional::new(t.domain().clone(), t.domain().norming_representative(x))?;
            let w = Vector::new(t.codomain().clone(), y.to_vec())?;
            let op = rank_one(&f, &w);
            let support = t.domain().support_point(&f.coords);
            let neg: Vec<f64> = support.iter().map(|v| -v).collect();
            let witness = Anchored::with(&op, f.dual_norm() * w.norm(), vec![support, neg]);
            if let Some(claims) = one_way(&witness, &anchor, tol, rng::sub_seed(seed, 22)) {
                record_witness(&mut report, op, None, "R2", claims);
                return Ok(report);
            }
        }
    }

    // R3
    let mut r = rng::rng(rng::sub_seed(seed, 23));
    let (rows, cols) = (t.codomain().dim(), t.domain().dim());
    while report.trials_used < budget {
        report.trials_used += 1;
        let data: Vec<Vec<f64>> = (0..rows).map(|_| rng::normal_vec(&mut r, cols)).collect();
        let a0 = LinearOperator::from_rows(&data, t.domain().clone(), t.codomain().clone())?;
        let na0 = operator_norm(&a0).value;
        let bracket = 2.0 * na0 / m.norm_value;
        let mut ev = NormEvaluator::new(rng::sub_seed(seed, 24 + report.trials_used as u64));
        let c = minimize_convex(|s| ev.norm(&a0.add_scaled(s, t)), -bracket, bracket).arg;
        let op = a0.add_scaled(c, t);
        if op.is_zero() {
            continue;
        }
        let witness = Anchored::new(&op, tol, seed)?;
        if let Some(claims) = one_way(&witness, &anchor, tol, rng::sub_seed(seed, report.trials_used as u64)) {
            record_witness(&mut report, op, None, "R3", claims);
            return Ok(report);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub norm: f64,
    pub eigenvalue_moduli: Vec<f64>,
    pub nullity: usize,
    pub report: SymmetryReport,
    /// The falsifier returned `not-symmetric`, as the theorem requires.
    pub consistent: bool,
}

/// Instance check: `||T||` a spectral value and nullity `>= 1` force `T`
/// not right symmetric.
pub fn spectral_instance_test(t: &LinearOperator, budget: usize, seed: u64, tol: &Tolerances) -> Result<SpectralReport> {
    square(t)?;
    let norm = operator_norm(t).value;
    let moduli: Vec<f64> = t
        .matrix()
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    if !moduli.iter().any(|m| (m - norm).abs() <= 1e-7 * norm.max(1.0)) {
        return Err(Error::pre("||T|| is not an eigenvalue modulus"));
    }
    let nullity = nullity(t, tol);
    if nullity == 0 {
        return Err(Error::pre("T has trivial kernel"));
    }
    let report = falsify_right_symmetric_op(t, budget, seed, tol)?;
    Ok(SpectralReport {
        norm,
        eigenvalue_moduli: moduli,
        nullity,
        consistent: !report.is_symmetric_within_budget(),
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dim2Report {
    /// `None` when the whole sphere attains the norm.
    pub cardinality: Option<usize>,
    pub independent_pair: Option<(Vec<f64>, Vec<f64>)>,
    pub falsifier: Option<SymmetryReport>,
    pub consistent: bool,
}

/// Two-dimensional check: a right-symmetric `T` has `card M_T >= 4`.
/// With `card M_T = 2` the falsifier must find a witness; otherwise two
/// linearly independent attainment points must exist.
pub fn dim2_extreme_check(t: &LinearOperator, budget: usize, seed: u64, tol: &Tolerances) -> Result<Dim2Report> {
    if t.domain().dim() != 2 {
        return Err(Error::pre("domain must be two-dimensional"));
    }
    if !t.domain().is_strictly_convex() {
        return Err(Error::pre("domain must be strictly convex"));
    }
    if !(t.codomain().is_strictly_convex() && t.codomain().is_smooth()) {
        return Err(Error::pre("codomain must be strictly convex and smooth"));
    }
    let m = norm_attainment_set(t, tol, seed)?;
    let cardinality = m.cardinality();
    if cardinality == Some(2) {
        let report = falsify_right_symmetric_op(t, budget, seed, tol)?;
        return Ok(Dim2Report {
            cardinality,
            independent_pair: None,
            consistent: !report.is_symmetric_within_budget(),
            falsifier: Some(report),
        });
    }
    let mut pair = None;
    'search: for (i, a) in m.points.iter().enumerate() {
        for b in &m.points[i + 1..] {
            if (a[0] * b[1] - a[1] * b[0]).abs() > 1e-6 {
                pair = Some((a.clone(), b.clone()));
                break 'search;
            }
        }
    }
    Ok(Dim2Report {
        cardinality,
        consistent: pair.is_some(),
        independent_pair: pair,
        falsifier: None,
    })
}
