use crate::error::{Error, Result};
use crate::operator::{norm_attainment_set, rank_one, LinearOperator};
use crate::orthogonality::{
    bj_orthogonal, candidate_directions, in_cone, james_left_companion, mutual_partner, ConeSign, Direction, Method,
    SymmetryReport,
};
use crate::rng;
use crate::space::{axpy, norming_functionals, Functional, Space, Vector};
use crate::tolerance::Tolerances;

use super::step3::construct_step3_witness;
use super::{empty_report, one_way, record_witness, Anchored};

/// Strategy S1: for `x ∈ M_T` and `y ⊥_B x` with `Ty ≠ 0`, the operator
/// `A = f(·) Ty` with `f ∈ J(y)`, `f(x) = 0`. `Ax = 0` at a norm-attaining
/// point gives `T ⊥_B A`; `||A|| = ||Ty||` is attained at `y`.
///
/// Returns `None` when `Ty` vanishes or no member of `J(y)` vanishes on `x`.
pub fn s1_witness(t: &LinearOperator, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<Option<(LinearOperator, f64, Vec<f64>)>> {
    let dom = t.domain();
    let ty = t.apply(y);
    let scale = t.codomain().norm(&t.apply(x)).max(f64::MIN_POSITIVE);
    if t.codomain().norm(&ty) <= 1e-9 * scale {
        return Ok(None);
    }
    let j = norming_functionals(dom, y, tol.zero_coordinate)?;
    let Some(f) = j.vanishing_on(x, 1e-9 * dom.norm(x)) else {
        return Ok(None);
    };
    let f = Functional::new(dom.clone(), f)?;
    let w = Vector::new(t.codomain().clone(), ty)?;
    let norm = f.dual_norm() * w.norm();
    let support = dom.support_point(&f.coords);
    Ok(Some((rank_one(&f, &w), norm, support)))
}

/// Search for `A` with `T ⊥_B A` and `A ⊥̸_B T`.
///
/// Strategies, in order: S1 on half the budget; the Step-3 construction
/// when every S1 candidate has `Ty = 0` and the domain is smooth and
/// strictly convex; then S3, random `A₀` shifted along `T` by the right
/// companion `c` so that `T ⊥_B cT + A₀`.
pub fn falsify_left_symmetric_op(t: &LinearOperator, budget: usize, seed: u64, tol: &Tolerances) -> Result<SymmetryReport> {
    if t.is_zero() {
        return Err(Error::ZeroOperator("left symmetry falsifier needs T != 0".into()));
    }
    let mut report = empty_report(t, Direction::Left, seed, tol);
    let m = norm_attainment_set(t, tol, seed)?;
    let anchor = Anchored::with(t, m.norm_value, m.points.clone());
    let dom = t.domain();
    let reps: Vec<Vec<f64>> = m.representatives().take(4).cloned().collect();

    // S1
    let s1_budget = budget.div_ceil(2);
    let mut saw_image = false;
    'outer: for (k, y0) in candidate_directions(dom.dim(), s1_budget, rng::sub_seed(seed, 0))
        .into_iter()
        .enumerate()
    {
        report.trials_used += 1;
        for x in &reps {
            let Ok(a) = james_left_companion(dom, x, &y0, tol) else { continue };
            let Some(y) = dom.normalize(&axpy(&y0, a, x)) else { continue };
            let Some((op, norm, support)) = s1_witness(t, x, &y, tol)? else { continue };
            saw_image = true;
            let neg: Vec<f64> = support.iter().map(|v| -v).collect();
            let witness = Anchored::with(&op, norm, vec![support, neg]);
            if let Some(claims) = one_way(&anchor, &witness, tol, rng::sub_seed(seed, k as u64 + 1)) {
                record_witness(&mut report, op, None, "S1", claims);
                return Ok(report);
            }
            continue 'outer;
        }
    }

    // S2
    if !saw_image && dom.is_smooth() && dom.is_strictly_convex() && report.trials_used < budget {
        report.trials_used += 1;
        if let Some(op) = step3_candidate(t, &reps[0], m.norm_value, seed, tol) {
            let witness = Anchored::new(&op, tol, seed)?;
            if let Some(claims) = one_way(&anchor, &witness, tol, rng::sub_seed(seed, 7)) {
                record_witness(&mut report, op, None, "S2-step3", claims);
                return Ok(report);
            }
        }
    }

    // S3
    let mut r = rng::rng(rng::sub_seed(seed, 3));
    let (rows, cols) = (t.codomain().dim(), dom.dim());
    while report.trials_used < budget {
        report.trials_used += 1;
        let data: Vec<Vec<f64>> = (0..rows).map(|_| rng::normal_vec(&mut r, cols)).collect();
        let a0 = LinearOperator::from_rows(&data, dom.clone(), t.codomain().clone())?;
        let Some(c) = operator_right_companion(t, &a0, &m.points, m.norm_value, tol) else { continue };
        let op = a0.add_scaled(c, t);
        if op.is_zero() {
            continue;
        }
        let witness = Anchored::new(&op, tol, seed)?;
        if let Some(claims) = one_way(&anchor, &witness, tol, rng::sub_seed(seed, report.trials_used as u64)) {
            record_witness(&mut report, op, None, "S3", claims);
            return Ok(report);
        }
    }
    Ok(report)
}

/// Midpoint of the scalars `c` with `T ⊥_B (cT + A)`. The one-sided
/// derivatives of `||T + λB||` at 0 are the extremes of `d±(Tx, Bx)` over
/// `x ∈ M_T`, and they shift by `c ||T||` when `B = cT + A`.
fn operator_right_companion(t: &LinearOperator, a: &LinearOperator, points: &[Vec<f64>], norm: f64, tol: &Tolerances) -> Option<f64> {
    let cod = t.codomain();
    let mut d_plus = f64::NEG_INFINITY;
    let mut d_minus = f64::INFINITY;
    for x in points {
        let tx = t.apply(x);
        let j = norming_functionals(cod, &tx, tol.zero_coordinate).ok()?;
        let ax = a.apply(x);
        d_plus = d_plus.max(j.support(&ax));
        d_minus = d_minus.min(j.lower(&ax));
    }
    if !d_plus.is_finite() || norm == 0.0 {
        return None;
    }
    Some(-0.5 * (d_plus + d_minus) / norm)
}

fn step3_candidate(t: &LinearOperator, x: &[f64], norm: f64, seed: u64, tol: &Tolerances) -> Option<LinearOperator> {
    let unit = t.scaled(1.0 / norm);
    let y = mutual_partner(t.domain(), x, rng::sub_seed(seed, 11), tol).ok()?;
    let tx = unit.apply(x);
    let v = mutual_partner(t.codomain(), &tx, rng::sub_seed(seed, 12), tol).ok()?;
    let v = t.codomain().normalize(&v)?;
    let cert = construct_step3_witness(&unit, x, &y, &v, tol, seed).ok()?;
    Some(cert.a.scaled(norm))
}

/// Lemma check: for unit `u`, `v` with `v ⊥_B u`, `t ∈ (0, 1)` and `ab > 0`,
/// `a·u ∉ (av + bw)⁻` where `w = (1-t)u + tv`. Returns `true` when the
/// conclusion holds.
pub fn check_minus_cone_lemma(space: &Space, u: &[f64], v: &[f64], a: f64, b: f64, t: f64, tol: &Tolerances) -> Result<bool> {
    if !space.is_strictly_convex() {
        return Err(Error::pre("space is not strictly convex"));
    }
    if (a * b).is_nan() || a * b <= 0.0 {
        return Err(Error::pre("needs ab > 0"));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::pre("needs t in (0, 1)"));
    }
    space.check(u)?;
    space.check(v)?;
    if space.norm(u) == 0.0 || space.norm(v) == 0.0 {
        return Err(Error::pre("u and v must be nonzero"));
    }
    let relaxed = Tolerances {
        analytic: tol.analytic.max(1e-8),
        ..*tol
    };
    if !bj_orthogonal(space, v, u, Method::Analytic, &relaxed)?.orthogonal {
        return Err(Error::pre("v is not B-J orthogonal to u"));
    }
    let w: Vec<f64> = u.iter().zip(v).map(|(ui, vi)| (1.0 - t) * ui + t * vi).collect();
    let base: Vec<f64> = v.iter().zip(&w).map(|(vi, wi)| a * vi + b * wi).collect();
    let au: Vec<f64> = u.iter().map(|ui| a * ui).collect();
    Ok(!in_cone(space, &base, &au, ConeSign::Minus, 0.0, tol)?.inside)
}
