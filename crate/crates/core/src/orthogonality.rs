//! Vector-level Birkhoff-James orthogonality.
//!
//! `x ⊥_B y` iff `||x + λy|| >= ||x||` for every real `λ`. Two independent
//! deciders are provided: the analytic one reads the one-sided derivatives of
//! `λ ↦ ||x + λy||` at zero off the norming set `J(x)`, the numeric one
//! minimises the profile directly.
//!
//! Both report a dimensionless *violation rate* and call the pair orthogonal
//! when it is at most their tolerance. Analytically it is
//! `max(d₋, -d₊, 0) / ||y||`; numerically it is the chord slope
//! `(||x|| - min) / (|λ*| ||y||)` from `λ = 0` to the minimiser, counted only
//! when the drop clears a rounding floor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::rng;
use crate::search::{bisect, minimize_convex, Minimum};
use crate::space::{axpy, dot, norming_functionals, Space, Vector};
use crate::tolerance::Tolerances;

const BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Numeric,
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Method::Analytic),
            "numeric" => Ok(Method::Numeric),
            "both" => Ok(Method::Both),
            other => Err(Error::input(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeSign {
    Plus,
    Minus,
}

impl FromStr for ConeSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(ConeSign::Plus),
            "minus" => Ok(ConeSign::Minus),
            other => Err(Error::input(format!("unknown cone `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityVerdict {
    pub orthogonal: bool,
    /// Minimising scalar of `λ ↦ ||x + λy||` (0 when orthogonal).
    pub minimizer: f64,
    pub min_value: f64,
    /// `||x||`, the value at `λ = 0`.
    pub base_value: f64,
    /// `base_value - min_value`, never negative.
    pub margin: f64,
    pub violation: f64,
    pub method: Method,
    pub tolerance: f64,
}

impl OrthogonalityVerdict {
    fn trivial(base_value: f64, method: Method, tolerance: f64) -> Self {
        Self {
            orthogonal: true,
            minimizer: 0.0,
            min_value: base_value,
            base_value,
            margin: 0.0,
            violation: 0.0,
            method,
            tolerance,
        }
    }

    /// Build a verdict from a profile minimisation.
    pub(crate) fn from_profile(
        base_value: f64,
        direction_scale: f64,
        min: Minimum,
        floor: f64,
        method: Method,
        tolerance: f64,
    ) -> Self {
        let (minimizer, min_value) = if min.value < base_value {
            (min.arg, min.value)
        } else {
            (0.0, base_value)
        };
        let margin = base_value - min_value;
        let violation = chord_violation(margin, minimizer, direction_scale, floor * base_value);
        Self {
            orthogonal: violation <= tolerance,
            minimizer,
            min_value,
            base_value,
            margin,
            violation,
            method,
            tolerance,
        }
    }
}

pub(crate) fn chord_violation(drop: f64, minimizer: f64, direction_scale: f64, floor: f64) -> f64 {
    if drop <= floor || minimizer == 0.0 {
        0.0
    } else {
        drop / (minimizer.abs() * direction_scale)
    }
}

/// `(d₋, d₊)`, the one-sided derivatives of `λ ↦ ||x + λy||` at 0.
pub fn one_sided_derivatives(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<(f64, f64)> {
    space.check(y)?;
    let j = norming_functionals(space, x, tol.zero_coordinate)?;
    Ok((j.lower(y), j.support(y)))
}

/// Same as [`one_sided_derivatives`] but defined at `x = 0` too (`∓||y||`).
fn derivatives_or_cone(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> (f64, f64) {
    match norming_functionals(space, x, tol.zero_coordinate) {
        Ok(j) => (j.lower(y), j.support(y)),
        Err(_) => {
            let n = space.norm(y);
            (-n, n)
        }
    }
}

fn profile<'a>(space: &'a Space, x: &'a [f64], y: &'a [f64]) -> impl FnMut(f64) -> f64 + 'a {
    let mut buf = vec![0.0; x.len()];
    move |lambda| {
        for ((b, xi), yi) in buf.iter_mut().zip(x).zip(y) {
            *b = xi + lambda * yi;
        }
        space.norm(&buf)
    }
}

/// Bracket radius `2||x|| / ||y||`: outside it `||x + λy|| >= |λ| ||y|| - ||x|| > ||x||`.
pub fn search_radius(norm_x: f64, norm_y: f64) -> f64 {
    2.0 * norm_x / norm_y
}

pub fn bj_orthogonal(space: &Space, x: &[f64], y: &[f64], method: Method, tol: &Tolerances) -> Result<OrthogonalityVerdict> {
    space.check(x)?;
    space.check(y)?;
    let nx = space.norm(x);
    let ny = space.norm(y);
    let tolerance = match method {
        Method::Analytic => tol.analytic,
        Method::Numeric | Method::Both => tol.numeric,
    };
    if nx == 0.0 || ny == 0.0 {
        return Ok(OrthogonalityVerdict::trivial(nx, method, tolerance));
    }
    match method {
        Method::Analytic => Ok(analytic(space, x, y, nx, ny, tol)),
        Method::Numeric => Ok(numeric(space, x, y, nx, ny, tol)),
        Method::Both => {
            let a = analytic(space, x, y, nx, ny, tol);
            let n = numeric(space, x, y, nx, ny, tol);
            if a.orthogonal != n.orthogonal {
                return Err(Error::Inconsistent(format!(
                    "analytic {} (violation {:e}), numeric {} (violation {:e}, margin {:e})",
                    a.orthogonal, a.violation, n.orthogonal, n.violation, n.margin
                )));
            }
            Ok(OrthogonalityVerdict {
                method: Method::Both,
                ..n
            })
        }
    }
}

fn analytic(space: &Space, x: &[f64], y: &[f64], nx: f64, ny: f64, tol: &Tolerances) -> OrthogonalityVerdict {
    let (dm, dp) = derivatives_or_cone(space, x, y, tol);
    let violation = dm.max(-dp).max(0.0) / ny;
    if violation <= tol.analytic {
        return OrthogonalityVerdict {
            violation,
            ..OrthogonalityVerdict::trivial(nx, Method::Analytic, tol.analytic)
        };
    }
    // Evidence: minimise on the descending half-line.
    let r = search_radius(nx, ny);
    let (lo, hi) = if dp < 0.0 { (0.0, r) } else { (-r, 0.0) };
    let min = minimize_convex(profile(space, x, y), lo, hi);
    let (minimizer, min_value) = if min.value < nx { (min.arg, min.value) } else { (0.0, nx) };
    OrthogonalityVerdict {
        orthogonal: false,
        minimizer,
        min_value,
        base_value: nx,
        margin: nx - min_value,
        violation,
        method: Method::Analytic,
        tolerance: tol.analytic,
    }
}

fn numeric(space: &Space, x: &[f64], y: &[f64], nx: f64, ny: f64, tol: &Tolerances) -> OrthogonalityVerdict {
    let r = search_radius(nx, ny);
    let min = minimize_convex(profile(space, x, y), -r, r);
    OrthogonalityVerdict::from_profile(nx, ny, min, tol.value_floor, Method::Numeric, tol.numeric)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeVerdict {
    pub inside: bool,
    pub sign: ConeSign,
    pub eps: f64,
    pub minimizer: f64,
    pub min_value: f64,
    /// `sqrt(1 - eps²) ||x||`
    pub threshold: f64,
    pub violation: f64,
    pub tolerance: f64,
}

/// Membership `y ∈ x^{±ε}`: `||x + λy|| >= sqrt(1 - ε²) ||x||` on the half-line
/// `λ >= 0` (plus) or `λ <= 0` (minus).
pub fn in_cone(space: &Space, x: &[f64], y: &[f64], sign: ConeSign, eps: f64, tol: &Tolerances) -> Result<ConeVerdict> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::input(format!("eps = {eps} outside [0, 1)")));
    }
    space.check(x)?;
    space.check(y)?;
    let nx = space.norm(x);
    let ny = space.norm(y);
    let threshold = (1.0 - eps * eps).sqrt() * nx;
    if nx == 0.0 || ny == 0.0 {
        return Ok(ConeVerdict {
            inside: true,
            sign,
            eps,
            minimizer: 0.0,
            min_value: nx,
            threshold,
            violation: 0.0,
            tolerance: tol.numeric,
        });
    }
    let r = search_radius(nx, ny);
    let (lo, hi) = match sign {
        ConeSign::Plus => (0.0, r),
        ConeSign::Minus => (-r, 0.0),
    };
    let min = minimize_convex(profile(space, x, y), lo, hi);
    let v = OrthogonalityVerdict::from_profile(nx, ny, min, tol.value_floor, Method::Numeric, tol.numeric);
    let relaxed = eps > 0.0 && v.margin <= (nx - threshold) + tol.numeric * nx.max(1.0);
    Ok(ConeVerdict {
        inside: v.orthogonal || relaxed,
        sign,
        eps,
        minimizer: v.minimizer,
        min_value: v.min_value,
        threshold,
        violation: v.violation,
        tolerance: tol.numeric,
    })
}

/// Interval of scalars `a` with `(a x + y) ⊥_B x`; this is the argmin set of
/// the convex map `a ↦ ||a x + y||`, located by two bisections on its
/// one-sided derivatives.
pub fn left_companion_interval(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<(f64, f64)> {
    space.check(x)?;
    space.check(y)?;
    let nx = space.norm(x);
    if nx == 0.0 {
        return Err(Error::ZeroVector);
    }
    let r = 2.0 * space.norm(y) / nx;
    if r == 0.0 {
        return Ok((0.0, 0.0));
    }
    let lo = left_companion_in(space, x, y, (-r, r), tol);
    let hi = left_companion_upper_in(space, x, y, (-r, r), tol);
    Ok((lo, hi.max(lo)))
}

/// Smallest minimiser of `a ↦ ||a x + y||` inside `bracket`, by bisection on
/// the right derivative.
pub fn left_companion_in(space: &Space, x: &[f64], y: &[f64], bracket: (f64, f64), tol: &Tolerances) -> f64 {
    let rising = |a: f64| derivatives_or_cone(space, &axpy(y, a, x), x, tol).1 >= 0.0;
    if rising(bracket.0) {
        return bracket.0;
    }
    bisect(rising, bracket.0, bracket.1, BISECTION_STEPS)
}

fn left_companion_upper_in(space: &Space, x: &[f64], y: &[f64], bracket: (f64, f64), tol: &Tolerances) -> f64 {
    let rising = |a: f64| derivatives_or_cone(space, &axpy(y, a, x), x, tol).0 > 0.0;
    if !rising(bracket.1) {
        return bracket.1;
    }
    bisect(rising, bracket.0, bracket.1, BISECTION_STEPS)
}

/// A scalar `a` with `(a x + y) ⊥_B x`.
pub fn james_left_companion(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<f64> {
    let (lo, hi) = left_companion_interval(space, x, y, tol)?;
    let a = 0.5 * (lo + hi);
    let z = axpy(y, a, x);
    let v = bj_orthogonal(space, &z, x, Method::Analytic, &loosened(tol))?;
    // Near a vanishing coordinate of an ℓ_p norm with p < 2 the derivative
    // resolves only to about the square root of machine precision.
    if !v.orthogonal && !bj_orthogonal(space, &z, x, Method::Numeric, tol)?.orthogonal {
        return Err(Error::NumericFailure(format!(
            "left companion {a} leaves violation {:e}",
            v.violation
        )));
    }
    Ok(a)
}

/// Interval of scalars `b` with `x ⊥_B (b x + y)`:
/// `[-max_J f(y), -min_J f(y)] / ||x||`.
pub fn right_companion_interval(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<(f64, f64)> {
    let (dm, dp) = one_sided_derivatives(space, x, y, tol)?;
    let nx = space.norm(x);
    Ok((-dp / nx, -dm / nx))
}

/// Smallest `b` in `bracket` with `x ⊥_B (b x + y)`, by bisection on `d₊(x, b x + y) >= 0`.
pub fn right_companion_in(space: &Space, x: &[f64], y: &[f64], bracket: (f64, f64), tol: &Tolerances) -> Result<f64> {
    let j = norming_functionals(space, x, tol.zero_coordinate)?;
    space.check(y)?;
    let rising = |b: f64| j.support(&axpy(y, b, x)) >= 0.0;
    if rising(bracket.0) {
        return Ok(bracket.0);
    }
    Ok(bisect(rising, bracket.0, bracket.1, BISECTION_STEPS))
}

/// A scalar `b` with `x ⊥_B (b x + y)`. Closed form `-f(y)/f(x)` at smooth
/// points; otherwise the midpoint of the two bisection endpoints.
pub fn james_right_companion(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<f64> {
    space.check(y)?;
    let j = norming_functionals(space, x, tol.zero_coordinate)?;
    let nx = space.norm(x);
    if j.is_singleton() {
        return Ok(-j.support(y) / nx);
    }
    let r = 2.0 * space.norm(y) / nx;
    if r == 0.0 {
        return Ok(0.0);
    }
    let lo = right_companion_in(space, x, y, (-r, r), tol)?;
    let falling = |b: f64| j.lower(&axpy(y, b, x)) > 0.0;
    let hi = if falling(r) { bisect(falling, -r, r, BISECTION_STEPS) } else { r };
    Ok(0.5 * (lo + hi.max(lo)))
}

/// Companion residual checks allow bisection-level error on top of the
/// analytic tolerance.
fn loosened(tol: &Tolerances) -> Tolerances {
    Tolerances {
        analytic: tol.analytic.max(1e-8),
        ..*tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            other => Err(Error::input(format!("unknown direction `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryVerdict {
    /// No counterexample found; never a proof of symmetry.
    SymmetricWithinBudget,
    NotSymmetric,
}

impl fmt::Display for SymmetryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryVerdict::SymmetricWithinBudget => "symmetric-within-budget",
            SymmetryVerdict::NotSymmetric => "not-symmetric",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Subject {
    Vector(Vector),
    Operator(LinearOperator),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Vector { coords: Vec<f64> },
    Operator { label: Option<String>, operator: LinearOperator },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub subject: Subject,
    pub direction: Direction,
    pub verdict: SymmetryVerdict,
    pub witness: Option<Witness>,
    /// Strategy that produced the witness.
    pub strategy: Option<String>,
    /// The orthogonality relation that holds between subject and witness.
    pub holding: Option<OrthogonalityVerdict>,
    /// The relation the witness refutes.
    pub refuted: Option<OrthogonalityVerdict>,
    pub trials_used: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl SymmetryReport {
    pub fn is_symmetric_within_budget(&self) -> bool {
        self.verdict == SymmetryVerdict::SymmetricWithinBudget
    }

    pub fn witness_vector(&self) -> Option<&[f64]> {
        match &self.witness {
            Some(Witness::Vector { coords }) => Some(coords),
            _ => None,
        }
    }

    pub fn witness_operator(&self) -> Option<&LinearOperator> {
        match &self.witness {
            Some(Witness::Operator { operator, .. }) => Some(operator),
            _ => None,
        }
    }
}

/// Candidate directions: half structured (coordinate vectors and their
/// pairwise sums/differences), the rest seeded normal draws.
pub(crate) fn candidate_directions(dim: usize, budget: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(budget);
    let structured = budget / 2;
    'outer: for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        out.push(e);
        if out.len() >= structured {
            break 'outer;
        }
    }
    'pairs: for i in 0..dim {
        for j in (i + 1)..dim {
            for s in [1.0, -1.0] {
                if out.len() >= structured {
                    break 'pairs;
                }
                let mut e = vec![0.0; dim];
                e[i] = 1.0;
                e[j] = s;
                out.push(e);
            }
        }
    }
    let mut r = rng::rng(seed);
    while out.len() < budget {
        out.push(rng::normal_vec(&mut r, dim));
    }
    out
}

fn sample_interval(lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = Vec::with_capacity(4);
    if lo <= 0.0 && 0.0 <= hi {
        pts.push(0.0);
    }
    if hi - lo <= 1e-12 * (1.0 + lo.abs().max(hi.abs())) {
        pts.push(0.5 * (lo + hi));
    } else {
        pts.extend([lo, 0.5 * (lo + hi), hi]);
    }
    pts
}

/// Search for `y` with `x ⊥_B y` and `y ⊥̸_B x`.
pub fn point_left_symmetric(space: &Space, x: &[f64], budget: usize, seed: u64, tol: &Tolerances) -> Result<SymmetryReport> {
    point_symmetry(space, x, Direction::Left, budget, seed, tol)
}

/// Search for `y` with `y ⊥_B x` and `x ⊥̸_B y`.
pub fn point_right_symmetric(space: &Space, x: &[f64], budget: usize, seed: u64, tol: &Tolerances) -> Result<SymmetryReport> {
    point_symmetry(space, x, Direction::Right, budget, seed, tol)
}

fn point_symmetry(
    space: &Space,
    x: &[f64],
    direction: Direction,
    budget: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<SymmetryReport> {
    space.check(x)?;
    let nx = space.norm(x);
    if nx == 0.0 {
        return Err(Error::ZeroVector);
    }
    let subject = Subject::Vector(Vector::new(space.clone(), x.to_vec())?);
    let mut report = SymmetryReport {
        subject,
        direction,
        verdict: SymmetryVerdict::SymmetricWithinBudget,
        witness: None,
        strategy: None,
        holding: None,
        refuted: None,
        trials_used: 0,
        seed,
        tolerance: tol.numeric,
    };

    for y0 in candidate_directions(space.dim(), budget, seed) {
        report.trials_used += 1;
        let (lo, hi) = match direction {
            Direction::Left => right_companion_interval(space, x, &y0, tol)?,
            Direction::Right => left_companion_interval(space, x, &y0, tol)?,
        };
        for shift in sample_interval(lo, hi) {
            let y = axpy(&y0, shift, x);
            let Some(y) = space.normalize(&y) else { continue };
            if space.norm(&axpy(&y0, shift, x)) <= 1e-9 * space.norm(&y0) {
                continue;
            }
            let (a, b) = match direction {
                Direction::Left => (x, y.as_slice()),
                Direction::Right => (y.as_slice(), x),
            };
            // holding: a ⊥_B b; refuted: b ⊥_B a
            let holding = bj_orthogonal(space, a, b, Method::Analytic, &loosened(tol))?;
            if !holding.orthogonal {
                continue;
            }
            let refuted = bj_orthogonal(space, b, a, Method::Numeric, tol)?;
            let scale = space.norm(b);
            if refuted.orthogonal || refuted.margin <= tol.witness_margin(scale) {
                continue;
            }
            let confirm = bj_orthogonal(space, b, a, Method::Analytic, tol)?;
            if confirm.orthogonal {
                continue;
            }
            report.verdict = SymmetryVerdict::NotSymmetric;
            report.witness = Some(Witness::Vector { coords: y });
            report.strategy = Some("companion-shift".into());
            report.holding = Some(holding);
            report.refuted = Some(refuted);
            return Ok(report);
        }
    }
    Ok(report)
}

/// `true` when both `x ⊥_B y` and `y ⊥_B x` hold analytically.
pub fn mutually_orthogonal(space: &Space, x: &[f64], y: &[f64], tol: &Tolerances) -> Result<bool> {
    let t = loosened(tol);
    Ok(bj_orthogonal(space, x, y, Method::Analytic, &t)?.orthogonal
        && bj_orthogonal(space, y, x, Method::Analytic, &t)?.orthogonal)
}

/// A unit pair `(x, y)` with `x ⊥_B y` and `y ⊥_B x`. Coordinate pairs work in
/// every descriptor space; random anchors with a partner search are the
/// fallback.
pub fn mutually_orthogonal_pair(space: &Space, seed: u64, tol: &Tolerances) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = space.dim();
    if n < 2 {
        return Err(Error::input("mutually orthogonal pairs need dimension >= 2"));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (x, y) = (space.basis_vector(i), space.basis_vector(j));
            let (x, y) = (space.normalize(&x).unwrap(), space.normalize(&y).unwrap());
            if mutually_orthogonal(space, &x, &y, tol)? {
                return Ok((x, y));
            }
        }
    }
    for (k, x) in crate::space::sample_unit_sphere(space, seed, 16).into_iter().enumerate() {
        if let Ok(y) = mutual_partner(space, &x, rng::sub_seed(seed, k as u64), tol) {
            return Ok((x, y));
        }
    }
    Err(Error::NotFound("no mutually orthogonal pair within budget".into()))
}

/// Euclidean-orthonormal basis of `{ z : f·z = 0 }`.
pub(crate) fn kernel_basis(f: &[f64]) -> Vec<Vec<f64>> {
    let n = f.len();
    let ff = dot(f, f);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let mut z = vec![0.0; n];
        z[i] = 1.0;
        if ff > 0.0 {
            let c = f[i] / ff;
            for (zk, fk) in z.iter_mut().zip(f) {
                *zk -= c * fk;
            }
        }
        for b in &basis {
            let c = dot(&z, b);
            for (zk, bk) in z.iter_mut().zip(b) {
                *zk -= c * bk;
            }
        }
        let len = dot(&z, &z).sqrt();
        if len > 1e-8 {
            basis.push(z.iter().map(|v| v / len).collect());
        }
        if basis.len() + usize::from(ff > 0.0) == n {
            break;
        }
    }
    basis
}

/// A unit `y` with `x ⊥_B y` and `y ⊥_B x`, taken from the kernel of a
/// norming functional of `x`. On each trial plane inside that kernel the map
/// `θ ↦ J(y(θ))(x)` is odd under `θ ↦ θ + π`, so it changes sign on `[0, π]`.
pub fn mutual_partner(space: &Space, x: &[f64], seed: u64, tol: &Tolerances) -> Result<Vec<f64>> {
    let j = norming_functionals(space, x, tol.zero_coordinate)?;
    let f = j.argsupport(x);
    let kernel = kernel_basis(&f);
    let mid = |y: &[f64]| {
        let (dm, dp) = derivatives_or_cone(space, y, x, tol);
        0.5 * (dm + dp)
    };
    let accept = |y: Vec<f64>| -> Result<Option<Vec<f64>>> {
        let Some(y) = space.normalize(&y) else { return Ok(None) };
        Ok(mutually_orthogonal(space, x, &y, tol)?.then_some(y))
    };

    if kernel.len() == 1 {
        return accept(kernel[0].clone())?
            .ok_or_else(|| Error::NotFound("one-dimensional kernel direction is not a mutual partner".into()));
    }
    if kernel.is_empty() {
        return Err(Error::NotFound("trivial kernel".into()));
    }

    let mut r = rng::rng(seed);
    const GRID: usize = 64;
    for attempt in 0..32 {
        let (u1, u2) = if attempt == 0 {
            (kernel[0].clone(), kernel[1].clone())
        } else {
            let c1 = rng::normal_vec(&mut r, kernel.len());
            let c2 = rng::normal_vec(&mut r, kernel.len());
            let combine = |c: &[f64]| {
                let mut v = vec![0.0; x.len()];
                for (ck, b) in c.iter().zip(&kernel) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += ck * bi;
                    }
                }
                v
            };
            let a = combine(&c1);
            let mut b = combine(&c2);
            let aa = dot(&a, &a);
            let c = dot(&a, &b) / aa;
            for (bi, ai) in b.iter_mut().zip(&a) {
                *bi -= c * ai;
            }
            let (na, nb) = (aa.sqrt(), dot(&b, &b).sqrt());
            if nb < 1e-8 {
                continue;
            }
            (a.iter().map(|v| v / na).collect(), b.iter().map(|v| v / nb).collect())
        };
        let point = |theta: f64| -> Vec<f64> {
            u1.iter()
                .zip(&u2)
                .map(|(a, b)| theta.cos() * a + theta.sin() * b)
                .collect()
        };
        let mut prev_theta = 0.0;
        let mut prev = mid(&point(0.0));
        if let Some(y) = accept(point(0.0))? {
            return Ok(y);
        }
        for k in 1..=GRID {
            let theta = std::f64::consts::PI * k as f64 / GRID as f64;
            let cur = mid(&point(theta));
            if prev.signum() != cur.signum() || cur == 0.0 {
                let sign0 = prev > 0.0;
                let t = bisect(|t| (mid(&point(t)) > 0.0) != sign0, prev_theta, theta, 100);
                if let Some(y) = accept(point(t))? {
                    return Ok(y);
                }
            }
            prev = cur;
            prev_theta = theta;
        }
    }
    Err(Error::NotFound("no mutual partner found".into()))
}
