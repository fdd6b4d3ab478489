//! Seeded property suites, one per theorem id. Each trial is `pass`, `fail`
//! (a re-verified counterexample to the tested instance) or `inconclusive`
//! (a budget ran out); `symmetric-within-budget` never counts as a proof.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operator::{
    embed_gamma, norm_attainment_set, op_bj_orthogonal_numeric, op_bj_orthogonal_via_mt, operator_norm, rank_one,
    LinearOperator,
};
use crate::orthogonality::{
    bj_orthogonal, james_left_companion, james_right_companion, point_left_symmetric, point_right_symmetric,
    Direction, Method, SymmetryReport,
};
use crate::rng::{self, Rng};
use crate::space::{axpy, is_smooth_point, sample_unit_sphere, Functional, Space, Vector};
use crate::tolerance::Tolerances;

use super::classify::with_line;
use super::{
    check_minus_cone_lemma, classify_left_symmetric_direct_sum, classify_left_symmetric_from_l1, dim2_extreme_check,
    falsify_left_symmetric_op, falsify_right_symmetric_op, kernel_identity_test, s1_witness, spectral_instance_test,
};

pub const THEOREM_IDS: [&str; 13] = [
    "prop-2.1",
    "th-2.2",
    "th-2.3",
    "lemma-2.5",
    "th-2.6",
    "gamma-2.11",
    "th-2.13",
    "th-2.14",
    "th-3.1",
    "prop-3.2",
    "th-3.3",
    "th-3.4",
    "th-3.5",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Trials per space family.
    pub trials: usize,
    pub seed: u64,
    /// Candidate budget handed to each falsifier.
    pub budget: usize,
    /// Space family override; empty means the suite's own families.
    pub spaces: Vec<Space>,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 20,
            seed: 7,
            budget: super::DEFAULT_BUDGET,
            spaces: Vec::new(),
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub family: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub theorem: String,
    pub config: SuiteConfig,
    pub trials: Vec<TrialRecord>,
    pub witnesses: Vec<Value>,
    pub pass: bool,
    pub status: Outcome,
    pub tolerances: Tolerances,
    pub seed: u64,
}

impl SuiteReport {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.trials.iter().filter(|t| t.outcome == outcome).count()
    }
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    tol: Tolerances,
    trials: Vec<TrialRecord>,
    witnesses: Vec<Value>,
}

impl Ctx<'_> {
    fn record(&mut self, family: &str, outcome: Outcome, detail: impl Into<String>) {
        let index = self.trials.len();
        self.trials.push(TrialRecord {
            index,
            family: family.to_string(),
            outcome,
            detail: detail.into(),
        });
    }

    fn witness(&mut self, value: Value) {
        let index = self.trials.len();
        self.witnesses.push(json!({ "trial": index, "witness": value }));
    }

    fn trial_rng(&self, family: usize, trial: usize) -> Rng {
        rng::rng(self.trial_seed(family, trial))
    }

    fn trial_seed(&self, family: usize, trial: usize) -> u64 {
        rng::sub_seed(rng::sub_seed(self.cfg.seed, family as u64), trial as u64)
    }

    fn vector_families(&self, default: Vec<Space>) -> Vec<Space> {
        if self.cfg.spaces.is_empty() {
            default
        } else {
            self.cfg.spaces.clone()
        }
    }

    fn operator_families(&self, default: Vec<(Space, Space)>) -> Vec<(Space, Space)> {
        if self.cfg.spaces.is_empty() {
            return default;
        }
        let s = &self.cfg.spaces;
        s.iter()
            .flat_map(|a| s.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }
}

fn label(s: &Space) -> String {
    match s {
        Space::Lp { p, dim } if p.is_infinite() => format!("linf^{dim}"),
        Space::Lp { p, dim } => format!("l{p}^{dim}"),
        Space::Sum1 { left, right } => format!("({} + {})", label(left), label(right)),
    }
}

fn family_label(d: &Space, c: &Space) -> String {
    format!("{} -> {}", label(d), label(c))
}

fn lp(p: f64, n: usize) -> Space {
    Space::lp(p, n).expect("valid exponent")
}

/// `ℓ_p^n → ℓ_q^n` for `p, q ∈ {1.5, 2, 3}`.
pub(crate) fn smooth_families(n: usize) -> Vec<(Space, Space)> {
    let ps = [1.5, 2.0, 3.0];
    ps.iter()
        .flat_map(|&p| ps.iter().map(move |&q| (lp(p, n), lp(q, n))))
        .collect()
}

pub(crate) fn random_operator(d: &Space, c: &Space, r: &mut Rng) -> LinearOperator {
    let rows: Vec<Vec<f64>> = (0..c.dim()).map(|_| rng::normal_vec(r, d.dim())).collect();
    LinearOperator::from_rows(&rows, d.clone(), c.clone()).expect("shapes match")
}

fn random_unit(s: &Space, r: &mut Rng) -> Vec<f64> {
    loop {
        if let Some(u) = s.normalize(&rng::normal_vec(r, s.dim())) {
            return u;
        }
    }
}

/// Random `A` adjusted so that `Tx ⊥_B Ax` at a point `x ∈ M_T`, hence `T ⊥_B A`.
pub(crate) fn orthogonal_partner(t: &LinearOperator, a: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<LinearOperator> {
    let m = norm_attainment_set(t, tol, seed)?;
    let x = &m.points[0];
    let tx = t.apply(x);
    let b = james_right_companion(t.codomain(), &tx, &a.apply(x), tol)?;
    let f = Functional::new(t.domain().clone(), t.domain().norming_representative(x))?;
    let w = Vector::new(t.codomain().clone(), tx)?;
    Ok(a.add_scaled(b, &rank_one(&f, &w)))
}

/// Fresh-seed re-check of both claims carried by an operator report.
pub(crate) fn reverify(report: &SymmetryReport, subject: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<bool> {
    let Some(a) = report.witness_operator() else { return Ok(false) };
    let (first, second) = match report.direction {
        Direction::Left => (subject, a),
        Direction::Right => (a, subject),
    };
    let holding = op_bj_orthogonal_numeric(first, second, tol, seed)?;
    let refuted = op_bj_orthogonal_numeric(second, first, tol, seed)?;
    Ok(holding.orthogonal && !refuted.orthogonal && refuted.margin > tol.witness_margin(refuted.base_value))
}

fn reverify_point(space: &Space, x: &[f64], report: &SymmetryReport, tol: &Tolerances) -> Result<bool> {
    let Some(y) = report.witness_vector() else { return Ok(false) };
    let (a, b) = match report.direction {
        Direction::Left => (x, y),
        Direction::Right => (y, x),
    };
    let relaxed = Tolerances {
        analytic: tol.analytic.max(1e-8),
        ..*tol
    };
    let holding = bj_orthogonal(space, a, b, Method::Analytic, &relaxed)?;
    let refuted = bj_orthogonal(space, b, a, Method::Numeric, tol)?;
    Ok(holding.orthogonal && !refuted.orthogonal && refuted.margin > tol.witness_margin(space.norm(b)))
}

fn operator_witness_outcome(
    ctx: &mut Ctx,
    family: &str,
    t: &LinearOperator,
    report: &SymmetryReport,
    seed: u64,
) -> Result<()> {
    if report.is_symmetric_within_budget() {
        ctx.record(family, Outcome::Inconclusive, format!("no witness in {} trials", report.trials_used));
        return Ok(());
    }
    if reverify(report, t, &ctx.tol, rng::sub_seed(seed, 99))? {
        ctx.witness(serde_json::to_value(report)?);
        ctx.record(
            family,
            Outcome::Pass,
            format!("witness via {}", report.strategy.as_deref().unwrap_or("?")),
        );
    } else {
        ctx.record(family, Outcome::Fail, "witness failed re-verification");
    }
    Ok(())
}

/// Run the suite for `id`.
pub fn verify_theorem(id: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if !THEOREM_IDS.contains(&id) {
        return Err(Error::UnknownTheorem(id.to_string()));
    }
    if cfg.trials == 0 || cfg.budget == 0 {
        return Err(Error::input("trials and budget must be positive"));
    }
    let mut ctx = Ctx {
        cfg,
        tol: cfg.tolerances,
        trials: Vec::new(),
        witnesses: Vec::new(),
    };
    match id {
        "prop-2.1" => prop_2_1(&mut ctx)?,
        "th-2.2" => th_2_2(&mut ctx)?,
        "th-2.3" => th_2_3(&mut ctx)?,
        "lemma-2.5" => lemma_2_5(&mut ctx)?,
        "th-2.6" => th_2_6(&mut ctx)?,
        "gamma-2.11" => gamma_2_11(&mut ctx)?,
        "th-2.13" => th_2_13(&mut ctx)?,
        "th-2.14" => th_2_14(&mut ctx)?,
        "th-3.1" => th_3_1(&mut ctx)?,
        "prop-3.2" => prop_3_2(&mut ctx)?,
        "th-3.3" => th_3_3(&mut ctx)?,
        "th-3.4" => th_3_4(&mut ctx)?,
        "th-3.5" => th_3_5(&mut ctx)?,
        _ => unreachable!(),
    }
    let status = if ctx.trials.iter().any(|t| t.outcome == Outcome::Fail) {
        Outcome::Fail
    } else if ctx.trials.iter().any(|t| t.outcome == Outcome::Inconclusive) {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    Ok(SuiteReport {
        theorem: id.to_string(),
        config: cfg.clone(),
        trials: ctx.trials,
        witnesses: ctx.witnesses,
        pass: status == Outcome::Pass,
        status,
        tolerances: cfg.tolerances,
        seed: cfg.seed,
    })
}

/// Point-level consistency: right symmetric and smooth ⇒ left symmetric;
/// in strictly convex spaces, left symmetric ⇒ right symmetric and smooth.
fn prop_2_1(ctx: &mut Ctx) -> Result<()> {
    let ps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let default = [2, 3]
        .iter()
        .flat_map(|&n| ps.iter().map(move |&p| lp(p, n)))
        .collect();
    let tol = ctx.tol;
    let budget = ctx.cfg.budget.min(60);
    for (fi, s) in ctx.vector_families(default).into_iter().enumerate() {
        let fam = label(&s);
        for k in 0..ctx.cfg.trials {
            let seed = ctx.trial_seed(fi, k);
            let x = if k % 3 == 0 {
                s.basis_vector(0)
            } else {
                sample_unit_sphere(&s, seed, 1).remove(0)
            };
            let mut r = ctx.trial_rng(fi, k + 1_000_000);
            let y = rng::normal_vec(&mut r, s.dim());
            let a = james_left_companion(&s, &x, &y, &tol);
            let b = james_right_companion(&s, &x, &y, &tol);
            if let Some(e) = a.err().or(b.err()) {
                ctx.record(&fam, Outcome::Fail, format!("companion search failed: {e}"));
                continue;
            }
            let left = point_left_symmetric(&s, &x, budget, seed, &tol)?;
            let right = point_right_symmetric(&s, &x, budget, seed, &tol)?;
            for rep in [&left, &right] {
                if !rep.is_symmetric_within_budget() && !reverify_point(&s, &x, rep, &tol)? {
                    ctx.record(&fam, Outcome::Fail, "point witness failed re-verification");
                }
            }
            let smooth = is_smooth_point(&s, &x, tol.zero_coordinate)?.smooth;
            let sc = s.is_strictly_convex();
            let lw = left.is_symmetric_within_budget();
            let rw = right.is_symmetric_within_budget();
            let clash = if rw && smooth && !lw {
                Some("right-symmetric-within-budget smooth point with a left witness")
            } else if sc && lw && !rw {
                Some("left-symmetric-within-budget point of a strictly convex space with a right witness")
            } else if sc && lw && !smooth {
                Some("left-symmetric-within-budget non-smooth point of a strictly convex space")
            } else {
                None
            };
            match clash {
                Some(msg) => ctx.record(&fam, Outcome::Inconclusive, msg),
                None => ctx.record(
                    &fam,
                    Outcome::Pass,
                    format!("left {}, right {}, smooth {smooth}", left.verdict, right.verdict),
                ),
            }
        }
    }
    Ok(())
}

/// Definitional operator orthogonality agrees with the `M_T` characterisation.
fn th_2_2(ctx: &mut Ctx) -> Result<()> {
    let mut default = smooth_families(3);
    default.push((Space::l1(3), Space::l2(3)));
    let tol = ctx.tol;
    for (fi, (d, c)) in ctx.operator_families(default).into_iter().enumerate() {
        let fam = family_label(&d, &c);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = random_operator(&d, &c, &mut r);
            let mut a = random_operator(&d, &c, &mut r);
            if k % 2 == 0 {
                a = orthogonal_partner(&t, &a, &tol, seed)?;
            }
            let def = op_bj_orthogonal_numeric(&t, &a, &tol, seed)?;
            let mt = op_bj_orthogonal_via_mt(&t, &a, &tol, seed)?;
            if def.orthogonal == mt.orthogonal {
                ctx.record(&fam, Outcome::Pass, format!("both {}", def.orthogonal));
            } else {
                ctx.record(
                    &fam,
                    Outcome::Fail,
                    format!(
                        "definition {} (violation {:e}), M_T {}",
                        def.orthogonal, def.violation, mt.orthogonal
                    ),
                );
            }
        }
    }
    Ok(())
}

/// The S1 construction always gives `T ⊥_B A`, and `A ⊥_B T` fails when `Ty ≠ 0`.
fn th_2_3(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    for (fi, (d, c)) in ctx.operator_families(smooth_families(3)).into_iter().enumerate() {
        let fam = family_label(&d, &c);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = random_operator(&d, &c, &mut r);
            let m = norm_attainment_set(&t, &tol, seed)?;
            let x = m.points[0].clone();
            let y0 = rng::normal_vec(&mut r, d.dim());
            let a = james_left_companion(&d, &x, &y0, &tol)?;
            let Some(y) = d.normalize(&axpy(&y0, a, &x)) else {
                ctx.record(&fam, Outcome::Inconclusive, "degenerate sample");
                continue;
            };
            let Some((op, _, _)) = s1_witness(&t, &x, &y, &tol)? else {
                ctx.record(&fam, Outcome::Inconclusive, "Ty = 0");
                continue;
            };
            let holding = op_bj_orthogonal_numeric(&t, &op, &tol, seed)?;
            if !holding.orthogonal {
                ctx.record(&fam, Outcome::Fail, format!("T ⊥_B A fails (violation {:e})", holding.violation));
                continue;
            }
            let back = op_bj_orthogonal_numeric(&op, &t, &tol, seed)?;
            if !back.orthogonal && back.margin > tol.witness_margin(back.base_value) {
                ctx.record(&fam, Outcome::Pass, format!("A ⊥_B T refuted, margin {:e}", back.margin));
            } else {
                ctx.record(&fam, Outcome::Inconclusive, "A ⊥_B T not refuted");
            }
        }
    }
    Ok(())
}

/// `(u, v, a, b, t)` for the minus-cone lemma.
pub(crate) type LemmaInstance = (Vec<f64>, Vec<f64>, f64, f64, f64);

/// Random instance of the minus-cone lemma in a strictly convex space.
pub(crate) fn lemma_instance(s: &Space, r: &mut Rng, tol: &Tolerances) -> Result<LemmaInstance> {
    let u = random_unit(s, r);
    let v0 = rng::normal_vec(r, s.dim());
    let a = james_left_companion(s, &u, &v0, tol)?;
    let v = s
        .normalize(&axpy(&v0, a, &u))
        .ok_or_else(|| Error::NumericFailure("degenerate lemma sample".into()))?;
    let sign = if rng::uniform(r, 0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
    let ca = sign * rng::uniform(r, 0.1, 2.0);
    let cb = sign * rng::uniform(r, 0.1, 2.0);
    let mut t = rng::uniform(r, 0.0, 1.0);
    while t <= 0.0 {
        t = rng::uniform(r, 0.0, 1.0);
    }
    Ok((u, v, ca, cb, t))
}

fn lemma_2_5(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    for (fi, s) in ctx
        .vector_families(vec![Space::l2(3), lp(3.0, 3)])
        .into_iter()
        .enumerate()
    {
        let fam = label(&s);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let (u, v, a, b, t) = lemma_instance(&s, &mut r, &tol)?;
            match check_minus_cone_lemma(&s, &u, &v, a, b, t, &tol) {
                Ok(true) => ctx.record(&fam, Outcome::Pass, "a·u outside the minus cone"),
                Ok(false) => ctx.record(&fam, Outcome::Fail, format!("a·u inside the minus cone (t = {t})")),
                Err(e) => ctx.record(&fam, Outcome::Inconclusive, e.to_string()),
            }
        }
    }
    Ok(())
}

/// Every nonzero operator between strictly convex smooth spaces has a left witness.
fn th_2_6(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    for (fi, (d, c)) in ctx.operator_families(smooth_families(3)).into_iter().enumerate() {
        let fam = family_label(&d, &c);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = random_operator(&d, &c, &mut r);
            let report = falsify_left_symmetric_op(&t, ctx.cfg.budget, seed, &tol)?;
            operator_witness_outcome(ctx, &fam, &t, &report, seed)?;
        }
    }
    Ok(())
}

/// `y ↦ f(·) y` is an isometry that preserves and reflects B-J orthogonality.
fn gamma_2_11(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    let default = vec![
        (lp(3.0, 3), Space::l2(3)),
        (lp(1.5, 3), lp(3.0, 3)),
        (Space::l2(3), lp(1.5, 3)),
    ];
    for (fi, (d, c)) in ctx.operator_families(default).into_iter().enumerate() {
        let fam = family_label(&d, &c);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let g = rng::normal_vec(&mut r, d.dim());
            let gn = d.dual_norm(&g);
            let f = Functional::new(d.clone(), g.iter().map(|v| v / gn).collect())?;
            let z = rng::normal_vec(&mut r, c.dim());
            let mut w = rng::normal_vec(&mut r, c.dim());
            if k % 2 == 0 {
                let b = james_right_companion(&c, &z, &w, &tol)?;
                w = axpy(&w, b, &z);
            }
            let az = embed_gamma(&f, &Vector::new(c.clone(), z.clone())?)?;
            let aw = embed_gamma(&f, &Vector::new(c.clone(), w.clone())?)?;
            let nz = operator_norm(&az).value;
            if (nz - c.norm(&z)).abs() > 1e-9 * c.norm(&z).max(1.0) {
                ctx.record(&fam, Outcome::Fail, format!("||A_z|| = {nz} vs ||z|| = {}", c.norm(&z)));
                continue;
            }
            let vec_orth = bj_orthogonal(&c, &z, &w, Method::Numeric, &tol)?.orthogonal;
            let op_orth = op_bj_orthogonal_numeric(&az, &aw, &tol, seed)?.orthogonal;
            if vec_orth == op_orth {
                ctx.record(&fam, Outcome::Pass, format!("both {vec_orth}"));
            } else {
                ctx.record(&fam, Outcome::Fail, format!("vector {vec_orth}, operator {op_orth}"));
            }
        }
    }
    Ok(())
}

fn classifier_agreement(
    ctx: &mut Ctx,
    fam: &str,
    t: &LinearOperator,
    classified_yes: bool,
    seed: u64,
) -> Result<()> {
    let tol = ctx.tol;
    let report = falsify_left_symmetric_op(t, ctx.cfg.budget, seed, &tol)?;
    if classified_yes {
        if report.is_symmetric_within_budget() {
            ctx.record(fam, Outcome::Pass, "classifier yes, no witness");
        } else if reverify(&report, t, &tol, rng::sub_seed(seed, 99))? {
            ctx.witness(serde_json::to_value(&report)?);
            ctx.record(fam, Outcome::Fail, "classifier yes but a verified witness exists");
        } else {
            ctx.record(fam, Outcome::Inconclusive, "classifier yes, unverifiable witness");
        }
    } else {
        operator_witness_outcome(ctx, fam, t, &report, seed)?;
    }
    Ok(())
}

/// `X ⊕₁ ℝ → Y` classifier against the falsifier.
fn th_2_13(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    let dom = with_line(Space::l2(2));
    let fam = family_label(&dom, &Space::l2(2));
    for k in 0..ctx.cfg.trials {
        let mut r = ctx.trial_rng(0, k);
        let seed = ctx.trial_seed(0, k);
        let kind = k % 3;
        let y = if kind == 2 { lp(3.0, 2) } else { Space::l2(2) };
        let w = random_unit(&y, &mut r);
        let fx: Vec<f64> = if kind == 1 {
            let g = rng::normal_vec(&mut r, 2);
            let gn = Space::l2(2).dual_norm(&g);
            g.iter().map(|v| 0.1 * v / gn).collect()
        } else {
            vec![0.0, 0.0]
        };
        let f = Functional::new(dom.clone(), vec![fx[0], fx[1], 1.0])?;
        let t = rank_one(&f, &Vector::new(y.clone(), w)?);
        let verdict = classify_left_symmetric_direct_sum(&t, ctx.cfg.budget.min(100), seed, &tol)?;
        let fam = if kind == 2 { family_label(&dom, &y) } else { fam.clone() };
        classifier_agreement(ctx, &fam, &t, verdict.is_yes(), seed)?;
    }
    Ok(())
}

/// Rank-one operators from `ℓ_1^n`, coordinate functionals and spread ones.
pub(crate) fn l1_rank_one(n: usize, coordinate: bool, r: &mut Rng) -> LinearOperator {
    let d = Space::l1(n);
    let c = Space::l2(n);
    let w = random_unit(&c, r);
    let mut f = vec![0.0; n];
    if coordinate {
        let k = (rng::uniform(r, 0.0, n as f64) as usize).min(n - 1);
        f[k] = if rng::uniform(r, 0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
    } else {
        for v in f.iter_mut().take(2) {
            let s = if rng::uniform(r, 0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
            *v = s * rng::uniform(r, 0.2, 1.0);
        }
        for v in f.iter_mut().skip(2) {
            *v = rng::uniform(r, -1.0, 1.0);
        }
    }
    rank_one(&Functional::new(d, f).expect("dims"), &Vector::new(c, w).expect("dims"))
}

fn th_2_14(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    for (fi, n) in [2usize, 3].into_iter().enumerate() {
        let fam = family_label(&Space::l1(n), &Space::l2(n));
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = l1_rank_one(n, k % 2 == 0, &mut r);
            let verdict = classify_left_symmetric_from_l1(&t, ctx.cfg.budget.min(100), seed, &tol)?;
            classifier_agreement(ctx, &fam, &t, verdict.is_yes(), seed)?;
        }
    }
    Ok(())
}

/// Operators with `M_T = {±x}` on smooth spaces are not right symmetric.
fn th_3_1(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    let default: Vec<(Space, Space)> = [1.5, 2.0, 3.0]
        .iter()
        .flat_map(|&p| [2usize, 3].map(|n| (lp(p, n), lp(p, n))))
        .collect();
    for (fi, (d, c)) in ctx.operator_families(default).into_iter().enumerate() {
        let fam = family_label(&d, &c);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = random_operator(&d, &c, &mut r);
            let m = norm_attainment_set(&t, &tol, seed)?;
            if m.cardinality() != Some(2) {
                ctx.record(&fam, Outcome::Inconclusive, "M_T is not a single antipodal pair");
                continue;
            }
            let report = falsify_right_symmetric_op(&t, ctx.cfg.budget, seed, &tol)?;
            operator_witness_outcome(ctx, &fam, &t, &report, seed)?;
        }
    }
    Ok(())
}

/// With `M_T = {±x}`, a point witness for `Tx` lifts to an operator witness.
fn prop_3_2(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    let default = vec![(lp(2.0, 3), lp(3.0, 3)), (lp(3.0, 3), lp(1.5, 3)), (lp(1.5, 3), lp(3.0, 3))];
    for (fi, (d, c)) in ctx.operator_families(default).into_iter().enumerate() {
        let fam = family_label(&d, &c);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = random_operator(&d, &c, &mut r);
            let m = norm_attainment_set(&t, &tol, seed)?;
            if m.cardinality() != Some(2) {
                ctx.record(&fam, Outcome::Inconclusive, "M_T is not a single antipodal pair");
                continue;
            }
            let x = &m.points[0];
            let tx = t.apply(x);
            let point = point_right_symmetric(&c, &tx, ctx.cfg.budget.min(100), seed, &tol)?;
            let Some(y) = point.witness_vector() else {
                ctx.record(&fam, Outcome::Inconclusive, "Tx right symmetric within budget");
                continue;
            };
            let f = Functional::new(d.clone(), d.norming_representative(x))?;
            let a = rank_one(&f, &Vector::new(c.clone(), y.to_vec())?);
            let holding = op_bj_orthogonal_numeric(&a, &t, &tol, seed)?;
            if !holding.orthogonal {
                ctx.record(&fam, Outcome::Fail, format!("A ⊥_B T fails (violation {:e})", holding.violation));
                continue;
            }
            let back = op_bj_orthogonal_numeric(&t, &a, &tol, seed)?;
            if !back.orthogonal && back.margin > tol.witness_margin(back.base_value) {
                ctx.witness(json!({ "operator": t, "witness": a }));
                ctx.record(&fam, Outcome::Pass, format!("T ⊥_B A refuted, margin {:e}", back.margin));
            } else {
                ctx.record(&fam, Outcome::Inconclusive, "T ⊥_B A not refuted");
            }
        }
    }
    Ok(())
}

fn th_3_3(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    for (fi, (d, c)) in ctx.operator_families(smooth_families(2)).into_iter().enumerate() {
        let fam = family_label(&d, &c);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = if k % 5 == 4 && d == c {
                LinearOperator::identity(d.clone())
            } else {
                random_operator(&d, &c, &mut r)
            };
            let rep = dim2_extreme_check(&t, ctx.cfg.budget, seed, &tol)?;
            if rep.consistent {
                if let Some(f) = &rep.falsifier {
                    if !reverify(f, &t, &tol, rng::sub_seed(seed, 99))? {
                        ctx.record(&fam, Outcome::Fail, "witness failed re-verification");
                        continue;
                    }
                }
                ctx.record(&fam, Outcome::Pass, format!("card M_T {:?}", rep.cardinality));
            } else {
                ctx.record(&fam, Outcome::Inconclusive, format!("card M_T {:?}, no witness", rep.cardinality));
            }
        }
    }
    Ok(())
}

/// Diagonal operator with a unit eigenvalue of maximal modulus, a zero and
/// a smaller third entry, in random positions.
pub(crate) fn spectral_instance(s: &Space, r: &mut Rng) -> LinearOperator {
    let n = s.dim();
    let mut d = vec![0.0; n];
    let top = (rng::uniform(r, 0.0, n as f64) as usize).min(n - 1);
    let zero = (top + 1 + (rng::uniform(r, 0.0, (n - 1) as f64) as usize).min(n - 2)) % n;
    for (i, v) in d.iter_mut().enumerate() {
        *v = if i == top {
            if rng::uniform(r, 0.0, 1.0) < 0.5 { -1.0 } else { 1.0 }
        } else if i == zero {
            0.0
        } else {
            rng::uniform(r, -0.9, 0.9)
        };
    }
    let scale = rng::uniform(r, 0.5, 2.0);
    let d: Vec<f64> = d.iter().map(|v| v * scale).collect();
    LinearOperator::diagonal(s.clone(), &d).expect("dims")
}

fn th_3_4(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    for (fi, s) in ctx
        .vector_families(vec![lp(1.5, 3), Space::l2(3), lp(3.0, 3)])
        .into_iter()
        .enumerate()
    {
        let fam = label(&s);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = spectral_instance(&s, &mut r);
            let rep = spectral_instance_test(&t, ctx.cfg.budget, seed, &tol)?;
            operator_witness_outcome(ctx, &fam, &t, &rep.report, seed)?;
        }
    }
    Ok(())
}

/// Random rank-deficient operator on `s`.
pub(crate) fn singular_operator(s: &Space, r: &mut Rng) -> LinearOperator {
    let n = s.dim();
    let mut t = random_operator(s, s, r);
    let c = rng::normal_vec(r, n - 1);
    let mut m = t.matrix().clone();
    for i in 0..n {
        let v: f64 = (0..n - 1).map(|j| c[j] * m[(i, j)]).sum();
        m[(i, n - 1)] = v;
    }
    t = LinearOperator::new(m, s.clone(), s.clone()).expect("dims");
    t
}

fn th_3_5(ctx: &mut Ctx) -> Result<()> {
    let tol = ctx.tol;
    for (fi, s) in ctx
        .vector_families(vec![lp(1.5, 3), Space::l2(3), lp(3.0, 3)])
        .into_iter()
        .enumerate()
    {
        let fam = label(&s);
        for k in 0..ctx.cfg.trials {
            let mut r = ctx.trial_rng(fi, k);
            let seed = ctx.trial_seed(fi, k);
            let t = singular_operator(&s, &mut r);
            let ki = kernel_identity_test(&t, &tol, seed)?;
            if !ki.identity_orthogonal.orthogonal || ki.identity_orthogonal.min_value < 1.0 - 1e-9 {
                ctx.record(
                    &fam,
                    Outcome::Fail,
                    format!("I ⊥_B T fails: min {}", ki.identity_orthogonal.min_value),
                );
                continue;
            }
            if ki.operator_orthogonal.orthogonal {
                ctx.record(&fam, Outcome::Pass, "T ⊥_B I holds");
                continue;
            }
            let report = falsify_right_symmetric_op(&t, ctx.cfg.budget, seed, &tol)?;
            let is_identity = report.witness_operator() == Some(&LinearOperator::identity(s.clone()));
            if !is_identity {
                ctx.record(&fam, Outcome::Fail, "T ⊥_B I refuted but identity not reported");
                continue;
            }
            operator_witness_outcome(ctx, &fam, &t, &report, seed)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_theorem_is_rejected() {
        assert!(matches!(
            verify_theorem("no-such-id", &SuiteConfig::default()),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn small_lemma_suite_passes() {
        let cfg = SuiteConfig {
            trials: 25,
            ..SuiteConfig::default()
        };
        let r = verify_theorem("lemma-2.5", &cfg).unwrap();
        assert!(r.pass, "{:?}", r.trials.iter().find(|t| t.outcome != Outcome::Pass));
        assert_eq!(r.trials.len(), 50);
    }

    #[test]
    fn spectral_instances_have_the_hypotheses() {
        let mut r = rng::rng(1);
        for _ in 0..20 {
            let t = spectral_instance(&Space::l2(3), &mut r);
            assert_eq!(t.rank(1e-9), 2);
        }
        let t = singular_operator(&Space::l2(3), &mut r);
        assert_eq!(t.rank(1e-9), 2);
    }
}
