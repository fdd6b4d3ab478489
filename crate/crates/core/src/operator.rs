//! Linear operators between descriptor spaces.
//!
//! Operator norms use a closed form whenever one is available (`ℓ_1` or
//! `⊕₁` domains, `ℓ_∞^n` domains with `n <= 20`, `ℓ_∞` codomains, `ℓ_2 → ℓ_2`)
//! and otherwise a seeded multi-start ascent of `x ↦ ||Tx||` on the unit
//! sphere. Every numeric value is a lower bound attained at a returned unit
//! vector.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthogonality::{chord_violation, in_cone, ConeSign, Method, OrthogonalityVerdict};
use crate::rng::{self, Rng};
use crate::search::{minimize_convex, Minimum};
use crate::space::{axpy, dot, sample_unit_sphere, sign_vectors, Functional, Space, Vector, LINF_ENUMERATION_LIMIT};
use crate::tolerance::Tolerances;

pub const RANDOM_STARTS: usize = 32;
pub const MAX_ASCENT_ITERATIONS: usize = 200;
const POLISH_ITERATIONS: usize = 2000;
/// Cluster radius for attainment points, in the domain norm.
pub const CLUSTER_RADIUS: f64 = 1e-6;
/// Fraction of raw random starts that must attain the norm to report the whole sphere.
pub const ENTIRE_SPHERE_FRACTION: f64 = 0.9;
/// Attainment points closer than this (domain norm) are linked when testing connectivity.
pub const CONNECTIVITY_LINK: f64 = 0.5;
/// Upper bound on norm evaluations inside one nested verdict.
pub const MAX_NESTED_EVALUATIONS: usize = 10_000;
const ENTIRE_SPHERE_POINT_CAP: usize = 64;

/// A real matrix acting from `domain` to `codomain`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct LinearOperator {
    matrix: DMatrix<f64>,
    domain: Space,
    codomain: Space,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    matrix: Vec<Vec<f64>>,
    domain: Space,
    codomain: Space,
}

impl TryFrom<OperatorRepr> for LinearOperator {
    type Error = Error;

    fn try_from(r: OperatorRepr) -> Result<Self> {
        LinearOperator::from_rows(&r.matrix, r.domain, r.codomain)
    }
}

impl From<LinearOperator> for OperatorRepr {
    fn from(op: LinearOperator) -> Self {
        OperatorRepr {
            matrix: op.rows(),
            domain: op.domain,
            codomain: op.codomain,
        }
    }
}

impl LinearOperator {
    pub fn new(matrix: DMatrix<f64>, domain: Space, codomain: Space) -> Result<Self> {
        if matrix.ncols() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                got: matrix.ncols(),
            });
        }
        if matrix.nrows() != codomain.dim() {
            return Err(Error::DimensionMismatch {
                expected: codomain.dim(),
                got: matrix.nrows(),
            });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("matrix entries must be finite"));
        }
        Ok(Self {
            matrix,
            domain,
            codomain,
        })
    }

    /// Build from row-major data.
    pub fn from_rows(rows: &[Vec<f64>], domain: Space, codomain: Space) -> Result<Self> {
        let n = domain.dim();
        if rows.len() != codomain.dim() {
            return Err(Error::DimensionMismatch {
                expected: codomain.dim(),
                got: rows.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        let m = DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
        Self::new(m, domain, codomain)
    }

    pub fn identity(space: Space) -> Self {
        let n = space.dim();
        Self {
            matrix: DMatrix::identity(n, n),
            domain: space.clone(),
            codomain: space,
        }
    }

    pub fn zero(domain: Space, codomain: Space) -> Self {
        Self {
            matrix: DMatrix::zeros(codomain.dim(), domain.dim()),
            domain,
            codomain,
        }
    }

    /// Diagonal operator on a single space.
    pub fn diagonal(space: Space, diag: &[f64]) -> Result<Self> {
        if diag.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: diag.len(),
            });
        }
        let m = DMatrix::from_fn(diag.len(), diag.len(), |i, j| if i == j { diag[i] } else { 0.0 });
        Self::new(m, space.clone(), space)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.matrix.nrows())
            .map(|i| self.matrix.row(i).iter().copied().collect())
            .collect()
    }

    pub fn column(&self, k: usize) -> Vec<f64> {
        self.matrix.column(k).iter().copied().collect()
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.matrix.row(i).iter().copied().collect()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.matrix.nrows()];
        for (j, xj) in x.iter().enumerate() {
            if *xj != 0.0 {
                for (o, m) in out.iter_mut().zip(self.matrix.column(j).iter()) {
                    *o += m * xj;
                }
            }
        }
        out
    }

    /// `Tᵀ φ`: the functional `φ ∘ T` on the domain.
    pub fn pullback(&self, phi: &[f64]) -> Vec<f64> {
        (0..self.matrix.ncols())
            .map(|j| dot(self.matrix.column(j).as_slice(), phi))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|v| *v == 0.0)
    }

    pub fn same_spaces(&self, other: &LinearOperator) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::input("operators act between different spaces"));
        }
        Ok(())
    }

    /// `self + λ·other`.
    pub fn add_scaled(&self, lambda: f64, other: &LinearOperator) -> LinearOperator {
        LinearOperator {
            matrix: &self.matrix + &other.matrix * lambda,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }

    pub fn scaled(&self, a: f64) -> LinearOperator {
        LinearOperator {
            matrix: &self.matrix * a,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }

    /// Restriction to a contiguous block of domain coordinates.
    fn restrict(&self, start: usize, block: &Space) -> LinearOperator {
        LinearOperator {
            matrix: self.matrix.columns(start, block.dim()).into_owned(),
            domain: block.clone(),
            codomain: self.codomain.clone(),
        }
    }

    /// Product `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if other.codomain != self.domain {
            return Err(Error::input("composition of mismatched spaces"));
        }
        Ok(LinearOperator {
            matrix: &self.matrix * &other.matrix,
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
        })
    }

    /// Numerical rank with singular values below `tol · σ_max` treated as zero.
    pub fn rank(&self, tol: f64) -> usize {
        let s = self.matrix.clone().singular_values();
        let max = s.iter().cloned().fold(0.0, f64::max);
        if max == 0.0 {
            return 0;
        }
        s.iter().filter(|v| **v > tol * max).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormValue {
    pub value: f64,
    pub exactness: Exactness,
    /// Unit vectors at which the value is attained.
    pub maximizers: Vec<Vec<f64>>,
}

/// Attaining indices within `1e-12` relative of the maximum.
fn attaining<T>(values: &[(T, f64)]) -> (f64, Vec<&T>) {
    let best = values.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    let pts = values
        .iter()
        .filter(|(_, v)| *v >= best * (1.0 - 1e-12))
        .map(|(t, _)| t)
        .collect();
    (best, pts)
}

fn with_antipodes(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * points.len());
    for p in points {
        let neg: Vec<f64> = p.iter().map(|v| -v).collect();
        out.push(p);
        out.push(neg);
    }
    out
}

/// Closed-form operator norm, when the spaces admit one.
pub fn exact_norm(op: &LinearOperator) -> Option<NormValue> {
    let exact = |value, maximizers| {
        Some(NormValue {
            value,
            exactness: Exactness::Exact,
            maximizers,
        })
    };
    if op.is_zero() {
        return exact(0.0, Vec::new());
    }
    let n = op.domain.dim();
    match &op.domain {
        Space::Lp { p, .. } if *p == 1.0 => {
            let cols: Vec<(usize, f64)> = (0..n).map(|k| (k, op.codomain.norm(&op.column(k)))).collect();
            let (value, ks) = attaining(&cols);
            let pts = ks.into_iter().map(|&k| op.domain.basis_vector(k)).collect();
            return exact(value, with_antipodes(pts));
        }
        Space::Lp { p, .. } if p.is_infinite() && n <= LINF_ENUMERATION_LIMIT => {
            let vals: Vec<(Vec<f64>, f64)> = sign_vectors(n)
                .into_iter()
                .map(|s| {
                    let v = op.codomain.norm(&op.apply(&s));
                    (s, v)
                })
                .collect();
            let (value, pts) = attaining(&vals);
            return exact(value, pts.into_iter().cloned().collect());
        }
        Space::Sum1 { left, right } => {
            let a = operator_norm(&op.restrict(0, left));
            let b = operator_norm(&op.restrict(left.dim(), right));
            if a.exactness == Exactness::Exact && b.exactness == Exactness::Exact {
                return Some(combine_blocks(op, a, b));
            }
            return None;
        }
        _ => {}
    }
    if op.codomain.is_linf() {
        let rows: Vec<(usize, f64)> = (0..op.codomain.dim())
            .map(|i| (i, op.domain.dual_norm(&op.row(i))))
            .collect();
        let (value, is) = attaining(&rows);
        let pts = is.into_iter().map(|&i| op.domain.support_point(&op.row(i))).collect();
        return exact(value, with_antipodes(pts));
    }
    if op.domain.is_l2() && op.codomain.is_l2() {
        let svd = op.matrix.clone().svd(false, true);
        let vt = svd.v_t.as_ref()?;
        let (k, value) = svd
            .singular_values
            .iter()
            .copied()
            .enumerate()
            .fold((0, 0.0), |acc, (i, s)| if s > acc.1 { (i, s) } else { acc });
        let v: Vec<f64> = vt.row(k).iter().copied().collect();
        return exact(value, with_antipodes(vec![v]));
    }
    None
}

fn combine_blocks(op: &LinearOperator, a: NormValue, b: NormValue) -> NormValue {
    let split = op.domain.blocks().map(|(l, _)| l.dim()).unwrap_or(0);
    let n = op.domain.dim();
    let value = a.value.max(b.value);
    let mut maximizers = Vec::new();
    if a.value >= value * (1.0 - 1e-12) {
        for m in &a.maximizers {
            let mut x = vec![0.0; n];
            x[..split].copy_from_slice(m);
            maximizers.push(x);
        }
    }
    if b.value >= value * (1.0 - 1e-12) {
        for m in &b.maximizers {
            let mut x = vec![0.0; n];
            x[split..].copy_from_slice(m);
            maximizers.push(x);
        }
    }
    let exactness = if a.exactness == Exactness::Exact && b.exactness == Exactness::Exact {
        Exactness::Exact
    } else {
        Exactness::Numeric
    };
    NormValue {
        value,
        exactness,
        maximizers,
    }
}

/// `||T||`: closed form when available, numeric multi-start ascent otherwise.
pub fn operator_norm(op: &LinearOperator) -> NormValue {
    if let Some(v) = exact_norm(op) {
        return v;
    }
    if let Space::Sum1 { left, right } = &op.domain {
        let a = operator_norm(&op.restrict(0, left));
        let b = operator_norm(&op.restrict(left.dim(), right));
        return combine_blocks(op, a, b);
    }
    operator_norm_numeric(op, 0)
}

/// One ascent run from `x0`; returns the final unit vector and `||Tx||`.
///
/// Each iteration takes the better of the power step `x ↦ argmax_{||z||<=1} ⟨Tᵀφ, z⟩`
/// (`φ` a norming functional of `Tx`) and a backtracking gradient step
/// retracted to the sphere. Both never decrease `||Tx||`.
pub fn ascend(op: &LinearOperator, x0: &[f64], iterations: usize) -> Option<(Vec<f64>, f64)> {
    let mut x = op.domain.normalize(x0)?;
    let mut v = op.codomain.norm(&op.apply(&x));
    for _ in 0..iterations {
        if v == 0.0 {
            break;
        }
        let z = op.apply(&x);
        let phi = op.codomain.norming_representative(&z);
        let g = op.pullback(&phi);
        let mut next: Option<(Vec<f64>, f64)> = None;

        let cand = op.domain.support_point(&g);
        let vc = op.codomain.norm(&op.apply(&cand));
        if vc > v {
            next = Some((cand, vc));
        } else {
            let gn = dot(&g, &g).sqrt();
            if gn > 0.0 {
                let mut s = 1.0 / gn;
                for _ in 0..20 {
                    if let Some(y) = op.domain.normalize(&axpy(&x, s, &g)) {
                        let vy = op.codomain.norm(&op.apply(&y));
                        if vy > v {
                            next = Some((y, vy));
                            break;
                        }
                    }
                    s *= 0.5;
                }
            }
        }
        let Some((nx, nv)) = next else { break };
        let step = nx.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = nx;
        v = nv;
        if step < 1e-14 {
            break;
        }
    }
    Some((x, v))
}

fn start_points(space: &Space, seed: u64) -> Vec<Vec<f64>> {
    let mut starts = sample_unit_sphere(space, seed, RANDOM_STARTS);
    starts.extend((0..space.dim()).map(|i| space.basis_vector(i)));
    starts
}

/// Lexicographic order on coordinates, used to break value ties deterministically.
fn lex_greater(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x > y;
        }
    }
    false
}

fn better(a: &(Vec<f64>, f64), b: &(Vec<f64>, f64)) -> bool {
    a.1 > b.1 || (a.1 == b.1 && lex_greater(&a.0, &b.0))
}

/// Multi-start ascent (32 seeded starts plus coordinate starts), then a
/// longer polish of the best start.
pub fn operator_norm_numeric(op: &LinearOperator, seed: u64) -> NormValue {
    if op.is_zero() {
        return NormValue {
            value: 0.0,
            exactness: Exactness::Numeric,
            maximizers: Vec::new(),
        };
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    for s in start_points(&op.domain, seed) {
        if let Some(r) = ascend(op, &s, MAX_ASCENT_ITERATIONS) {
            if best.as_ref().is_none_or(|b| better(&r, b)) {
                best = Some(r);
            }
        }
    }
    let (x, _) = best.expect("nonempty start set");
    let (x, value) = ascend(op, &x, POLISH_ITERATIONS).expect("unit start");
    NormValue {
        value,
        exactness: Exactness::Numeric,
        maximizers: with_antipodes(vec![x]),
    }
}

/// Repeated norm evaluation for families `T + λA`: exact paths where they
/// exist, otherwise ascent from pinned points, a pool of recent maximizers
/// and two fresh random starts.
pub struct NormEvaluator {
    pinned: Vec<Vec<f64>>,
    pool: VecDeque<Vec<f64>>,
    pool_size: usize,
    random_starts: usize,
    rng: Rng,
    pub evaluations: usize,
}

impl NormEvaluator {
    pub fn new(seed: u64) -> Self {
        Self::with_pinned(Vec::new(), seed)
    }

    pub fn with_pinned(pinned: Vec<Vec<f64>>, seed: u64) -> Self {
        Self {
            pinned,
            pool: VecDeque::new(),
            pool_size: 6,
            random_starts: 2,
            rng: rng::rng(seed),
            evaluations: 0,
        }
    }

    /// Fresh random ascent starts per evaluation (default 2).
    pub fn with_random_starts(mut self, count: usize) -> Self {
        self.random_starts = count;
        self
    }

    pub fn norm(&mut self, op: &LinearOperator) -> f64 {
        self.evaluations += 1;
        if let Some(v) = exact_norm(op) {
            return v.value;
        }
        if let Space::Sum1 { left, right } = &op.domain {
            // Blocks are evaluated independently; pooled points do not split.
            let a = operator_norm(&op.restrict(0, left));
            let b = operator_norm(&op.restrict(left.dim(), right));
            return a.value.max(b.value);
        }
        let n = op.domain.dim();
        let mut starts: Vec<Vec<f64>> = self.pinned.iter().chain(self.pool.iter()).cloned().collect();
        for _ in 0..self.random_starts {
            starts.push(rng::normal_vec(&mut self.rng, n));
        }
        let mut best: Option<(Vec<f64>, f64)> = None;
        for s in &starts {
            if let Some(r) = ascend(op, s, MAX_ASCENT_ITERATIONS) {
                if best.as_ref().is_none_or(|b| better(&r, b)) {
                    best = Some(r);
                }
            }
        }
        let Some((x, v)) = best else { return 0.0 };
        let close = |p: &Vec<f64>| {
            p.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-9) || p.iter().zip(&x).all(|(a, b)| (a + b).abs() < 1e-9)
        };
        if !self.pool.iter().any(close) {
            self.pool.push_front(x);
            self.pool.truncate(self.pool_size);
        }
        v
    }
}

/// `M_T = { x ∈ S_X : ||Tx|| = ||T|| }`, as clusters closed under `x ↦ -x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormAttainment {
    pub norm_value: f64,
    /// Antipodal pairs `[x, -x, x', -x', ...]`.
    pub points: Vec<Vec<f64>>,
    pub exactness: Exactness,
    pub attainment_tolerance: f64,
    /// Set when more than 90% of random sphere samples already attain the
    /// norm; `points` is then a capped sample of the sphere.
    pub entire_sphere: bool,
}

impl NormAttainment {
    /// Number of points, `None` when the whole sphere attains.
    pub fn cardinality(&self) -> Option<usize> {
        (!self.entire_sphere).then_some(self.points.len())
    }

    /// Representatives `x` of the antipodal pairs.
    pub fn representatives(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.points.iter().step_by(2)
    }

    /// Connected components of the attainment points under links of length
    /// `link` (domain norm).
    pub fn components(&self, space: &Space, link: f64) -> Vec<Vec<usize>> {
        let n = self.points.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut j = i;
            while p[j] != r {
                let next = p[j];
                p[j] = r;
                j = next;
            }
            r
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d: Vec<f64> = self.points[i].iter().zip(&self.points[j]).map(|(a, b)| a - b).collect();
                if space.norm(&d) <= link {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }
}

fn canonical_sign(x: &[f64]) -> Vec<f64> {
    let k = x.iter().position(|v| v.abs() > 1e-9).unwrap_or(0);
    if x[k] < 0.0 {
        x.iter().map(|v| -v).collect()
    } else {
        x.to_vec()
    }
}

pub fn norm_attainment_set(op: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<NormAttainment> {
    if op.is_zero() {
        return Err(Error::ZeroOperator("M_T of the zero operator is the whole sphere".into()));
    }
    let exact = exact_norm(op);
    let raw = sample_unit_sphere(&op.domain, seed, RANDOM_STARTS);

    let mut found: Vec<(Vec<f64>, f64)> = Vec::new();
    if let Some(e) = &exact {
        for m in &e.maximizers {
            found.push((m.clone(), op.codomain.norm(&op.apply(m))));
        }
    }
    for s in raw.iter().cloned().chain((0..op.domain.dim()).map(|i| op.domain.basis_vector(i))) {
        if let Some(r) = ascend(op, &s, MAX_ASCENT_ITERATIONS) {
            found.push(r);
        }
    }
    let ascended_best = found.iter().map(|r| r.1).fold(0.0, f64::max);
    let reference = exact.as_ref().map_or(ascended_best, |e| e.value.max(ascended_best));
    let gate = reference * (1.0 - 1e-6);
    for r in found.iter_mut() {
        if r.1 >= gate && r.1 < reference {
            if let Some(p) = ascend(op, &r.0, POLISH_ITERATIONS) {
                *r = p;
            }
        }
    }
    let norm_value = exact
        .as_ref()
        .map_or_else(|| found.iter().map(|r| r.1).fold(0.0, f64::max), |e| e.value);
    let floor = norm_value * (1.0 - tol.attainment);

    let attaining_raw = raw
        .iter()
        .filter(|x| op.codomain.norm(&op.apply(x)) >= floor)
        .count();
    let entire_sphere = attaining_raw as f64 > ENTIRE_SPHERE_FRACTION * raw.len() as f64;

    let mut candidates: Vec<(Vec<f64>, f64)> = found.into_iter().filter(|r| r.1 >= floor).collect();
    if entire_sphere {
        candidates.extend(raw.iter().map(|x| (x.clone(), op.codomain.norm(&op.apply(x)))));
    }
    // Highest values first so each cluster keeps its best point.
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut reps: Vec<Vec<f64>> = Vec::new();
    for (x, _) in candidates {
        let c = canonical_sign(&x);
        let near = reps.iter().any(|r| {
            let d: Vec<f64> = r.iter().zip(&c).map(|(a, b)| a - b).collect();
            let s: Vec<f64> = r.iter().zip(&c).map(|(a, b)| a + b).collect();
            op.domain.norm(&d) <= CLUSTER_RADIUS || op.domain.norm(&s) <= CLUSTER_RADIUS
        });
        if !near {
            reps.push(c);
        }
    }
    if entire_sphere {
        reps.truncate(ENTIRE_SPHERE_POINT_CAP / 2);
    }
    Ok(NormAttainment {
        norm_value,
        points: with_antipodes(reps),
        exactness: if exact.is_some() {
            Exactness::Exact
        } else {
            Exactness::Numeric
        },
        attainment_tolerance: tol.attainment,
        entire_sphere,
    })
}

/// `||T||` together with unit vectors attaining it.
pub fn norm_with_maximizers(t: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<(f64, Vec<Vec<f64>>)> {
    if let Some(e) = exact_norm(t) {
        return Ok((e.value, e.maximizers));
    }
    if t.is_zero() {
        return Ok((0.0, Vec::new()));
    }
    let m = norm_attainment_set(t, tol, seed)?;
    Ok((m.norm_value, m.points))
}

/// Definitional test of `T ⊥_B A`: minimise `λ ↦ ||T + λA||` over
/// `|λ| <= 2||T||/||A||` and compare with `||T||`.
pub fn op_bj_orthogonal_numeric(t: &LinearOperator, a: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<OrthogonalityVerdict> {
    t.same_spaces(a)?;
    let (nt, pins) = norm_with_maximizers(t, tol, seed)?;
    Ok(op_bj_orthogonal_pinned(t, a, nt, pins, tol, seed))
}

/// [`op_bj_orthogonal_numeric`] with `||T||` and extra ascent starts supplied
/// by the caller. Every nested evaluation is a lower bound, so a claimed drop
/// is re-measured at the minimiser with a full multi-start before it counts.
pub fn op_bj_orthogonal_pinned(
    t: &LinearOperator,
    a: &LinearOperator,
    nt: f64,
    pins: Vec<Vec<f64>>,
    tol: &Tolerances,
    seed: u64,
) -> OrthogonalityVerdict {
    let trivial = Minimum {
        arg: 0.0,
        value: nt,
        evaluations: 0,
    };
    if nt == 0.0 || a.is_zero() {
        return OrthogonalityVerdict::from_profile(nt, 1.0, trivial, tol.operator_value_floor, Method::Numeric, tol.numeric);
    }
    let na = operator_norm(a).value;
    let r = 2.0 * nt / na;
    let mut pins = pins;
    let mut min = trivial;
    // An underestimated norm can steer the search away from the true
    // minimiser; when the re-check exposes one, search again with more starts.
    for attempt in 0..3 {
        let mut ev = NormEvaluator::with_pinned(pins.clone(), rng::sub_seed(seed, 1 + attempt))
            .with_random_starts(2 << (2 * attempt));
        min = minimize_convex(|l| ev.norm(&t.add_scaled(l, a)), -r, r);
        if min.value >= nt * (1.0 - tol.operator_value_floor) {
            break;
        }
        let probe = t.add_scaled(min.arg, a);
        if exact_norm(&probe).is_some() {
            break;
        }
        let again = operator_norm_numeric(&probe, rng::sub_seed(seed, 100 + attempt));
        if again.value <= min.value * (1.0 + 1e-12) || again.value < nt * (1.0 - tol.operator_value_floor) {
            min.value = min.value.max(again.value);
            break;
        }
        min.value = again.value;
        pins.extend(again.maximizers);
    }
    OrthogonalityVerdict::from_profile(nt, na, min, tol.operator_value_floor, Method::Numeric, tol.numeric)
}

/// Outcome of the `M_T`-based test: `T ⊥_B A` iff some `x ∈ M_T` has
/// `Ax ∈ (Tx)⁺` and some `y ∈ M_T` has `Ay ∈ (Ty)⁻`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MtVerdict {
    pub orthogonal: bool,
    pub plus_witness: Option<Vec<f64>>,
    pub minus_witness: Option<Vec<f64>>,
    pub attainment: NormAttainment,
    pub tolerance: f64,
}

pub fn op_bj_orthogonal_via_mt(t: &LinearOperator, a: &LinearOperator, tol: &Tolerances, seed: u64) -> Result<MtVerdict> {
    t.same_spaces(a)?;
    let attainment = norm_attainment_set(t, tol, seed)?;
    let mut plus = None;
    let mut minus = None;
    for x in &attainment.points {
        let tx = t.apply(x);
        let ax = a.apply(x);
        if plus.is_none() && in_cone(&t.codomain, &tx, &ax, ConeSign::Plus, 0.0, tol)?.inside {
            plus = Some(x.clone());
        }
        if minus.is_none() && in_cone(&t.codomain, &tx, &ax, ConeSign::Minus, 0.0, tol)?.inside {
            minus = Some(x.clone());
        }
        if plus.is_some() && minus.is_some() {
            break;
        }
    }
    Ok(MtVerdict {
        orthogonal: plus.is_some() && minus.is_some(),
        plus_witness: plus,
        minus_witness: minus,
        attainment,
        tolerance: tol.numeric,
    })
}

/// Midpoint of the one-sided derivatives of `λ ↦ ||Tx + λAx||` at 0.
fn cone_balance(t: &LinearOperator, a: &LinearOperator, x: &[f64], tol: &Tolerances) -> Option<f64> {
    let tx = t.apply(x);
    let ax = a.apply(x);
    let j = crate::space::norming_functionals(&t.codomain, &tx, tol.zero_coordinate).ok()?;
    Some(0.5 * (j.lower(&ax) + j.support(&ax)))
}

fn pointwise_orthogonal(t: &LinearOperator, a: &LinearOperator, x: &[f64], tol: &Tolerances) -> Result<bool> {
    let tx = t.apply(x);
    let ax = a.apply(x);
    Ok(crate::orthogonality::bj_orthogonal(&t.codomain, &tx, &ax, Method::Numeric, tol)?.orthogonal)
}

/// A point `x ∈ M_T` with `Tx ⊥_B Ax`, assuming `T ⊥_B A` and that `M_T` is
/// `D ∪ (-D)` with `D` connected.
pub fn op_orth_witness_connected(
    t: &LinearOperator,
    a: &LinearOperator,
    tol: &Tolerances,
    seed: u64,
) -> Result<Option<Vec<f64>>> {
    t.same_spaces(a)?;
    if t.is_zero() {
        return Err(Error::ZeroOperator("T = 0".into()));
    }
    if !op_bj_orthogonal_numeric(t, a, tol, seed)?.orthogonal {
        return Err(Error::pre("T is not B-J orthogonal to A"));
    }
    let mut m = norm_attainment_set(t, tol, seed)?;
    if m.entire_sphere {
        if t.domain.dim() < 2 {
            return Err(Error::PreconditionNotEstablished("sphere of dimension 0".into()));
        }
        let mut pts = sample_unit_sphere(&t.domain, rng::sub_seed(seed, 2), ENTIRE_SPHERE_POINT_CAP);
        pts.extend(m.points.iter().cloned());
        m.points = pts;
    } else {
        let comps = m.components(&t.domain, CONNECTIVITY_LINK);
        let ok = match comps.len() {
            1 => true,
            2 => {
                // The two components must be antipodal images of each other.
                let first = &m.points[comps[0][0]];
                let neg: Vec<f64> = first.iter().map(|v| -v).collect();
                comps[1].iter().any(|&i| {
                    let d: Vec<f64> = m.points[i].iter().zip(&neg).map(|(a, b)| a - b).collect();
                    t.domain.norm(&d) <= CLUSTER_RADIUS * 10.0
                })
            }
            _ => false,
        };
        if !ok {
            return Err(Error::PreconditionNotEstablished(format!(
                "M_T splits into {} components",
                comps.len()
            )));
        }
    }
    for x in &m.points {
        if pointwise_orthogonal(t, a, x, tol)? {
            return Ok(Some(x.clone()));
        }
    }
    // Intermediate values along chords between points of opposite balance.
    let balances: Vec<(usize, f64)> = m
        .points
        .iter()
        .enumerate()
        .filter_map(|(i, x)| cone_balance(t, a, x, tol).map(|b| (i, b)))
        .collect();
    for &(i, bi) in &balances {
        for &(j, bj) in &balances {
            if bi <= 0.0 || bj >= 0.0 {
                continue;
            }
            let (xi, xj) = (&m.points[i], &m.points[j]);
            let along = |s: f64| -> Option<Vec<f64>> {
                let p: Vec<f64> = xi.iter().zip(xj).map(|(u, v)| (1.0 - s) * u + s * v).collect();
                t.domain.normalize(&p)
            };
            if along(0.5).is_none() {
                continue;
            }
            let s = crate::search::bisect(
                |s| along(s).and_then(|p| cone_balance(t, a, &p, tol)).is_some_and(|b| b < 0.0),
                0.0,
                1.0,
                100,
            );
            let Some(p) = along(s) else { continue };
            let p = if m.entire_sphere {
                p
            } else {
                ascend(t, &p, POLISH_ITERATIONS).map(|r| r.0).unwrap_or(p)
            };
            if t.codomain.norm(&t.apply(&p)) >= m.norm_value * (1.0 - tol.attainment) && pointwise_orthogonal(t, a, &p, tol)? {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

/// `x ↦ f(x) w`.
pub fn rank_one(f: &Functional, w: &Vector) -> LinearOperator {
    let m = DMatrix::from_fn(w.coords.len(), f.coords.len(), |i, j| w.coords[i] * f.coords[j]);
    LinearOperator {
        matrix: m,
        domain: f.space.clone(),
        codomain: w.space.clone(),
    }
}

/// `A_y = f(·) y` for a unit functional `f`; `y ↦ A_y` is an isometry.
pub fn embed_gamma(f: &Functional, y: &Vector) -> Result<LinearOperator> {
    let n = f.dual_norm();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::input(format!("functional has dual norm {n}, expected 1")));
    }
    Ok(rank_one(f, y))
}

/// `T*` between the dual spaces; defined for `ℓ_p` domain and codomain.
pub fn adjoint(t: &LinearOperator) -> Result<LinearOperator> {
    let domain = t.codomain.dual()?;
    let codomain = t.domain.dual()?;
    Ok(LinearOperator {
        matrix: t.matrix.transpose(),
        domain,
        codomain,
    })
}

/// Violation rate of a profile minimum, for callers that evaluate their own profiles.
pub fn profile_violation(base: f64, scale: f64, minimizer: f64, min_value: f64, tol: &Tolerances) -> f64 {
    chord_violation(base - min_value, minimizer, scale, tol.operator_value_floor * base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    /// Independent lower bound on `||T||` from a dense grid of the 2-sphere
    /// (or circle), normalised in the domain norm.
    fn grid_norm(op: &LinearOperator) -> f64 {
        let n = op.domain().dim();
        let mut best: f64 = 0.0;
        if n == 2 {
            for k in 0..100_000 {
                let th = std::f64::consts::PI * k as f64 / 100_000.0;
                let x = op.domain().normalize(&[th.cos(), th.sin()]).unwrap();
                best = best.max(op.codomain().norm(&op.apply(&x)));
            }
        }
        best
    }

    #[test]
    fn norm_examples() {
        let t = LinearOperator::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.5]], Space::l1(2), Space::l2(2)).unwrap();
        let v = operator_norm(&t);
        assert_eq!(v.exactness, Exactness::Exact);
        assert!((v.value - 1.0).abs() < 1e-15);
        assert!((grid_norm(&t) - 1.0).abs() < 1e-9);

        let i = LinearOperator::identity(Space::l2(2));
        assert!((operator_norm(&i).value - 1.0).abs() < 1e-12);

        let t = LinearOperator::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]], Space::linf(2), Space::l1(2)).unwrap();
        let v = operator_norm(&t);
        assert_eq!(v.value, 2.0);
        assert_eq!(v.maximizers.len(), 4);
    }

    #[test]
    fn numeric_path_matches_exact_paths() {
        let mut r = rng::rng(3);
        for (dom, cod) in [
            (Space::l1(3), Space::lp(3.0, 3).unwrap()),
            (Space::linf(3), Space::lp(1.5, 3).unwrap()),
            (Space::l2(3), Space::l2(3)),
            (Space::lp(3.0, 3).unwrap(), Space::linf(3)),
        ] {
            for _ in 0..10 {
                let rows: Vec<Vec<f64>> = (0..3).map(|_| rng::normal_vec(&mut r, 3)).collect();
                let t = LinearOperator::from_rows(&rows, dom.clone(), cod.clone()).unwrap();
                let e = exact_norm(&t).unwrap().value;
                let n = operator_norm_numeric(&t, 9).value;
                assert!(n <= e * (1.0 + 1e-12));
                assert!((e - n).abs() <= 1e-6 * e, "{dom:?} {cod:?}: {e} vs {n}");
            }
        }
    }

    #[test]
    fn attainment_examples() {
        let t = LinearOperator::diagonal(Space::l2(2), &[1.0, 0.5]).unwrap();
        let m = norm_attainment_set(&t, &tol(), 0).unwrap();
        assert_eq!(m.cardinality(), Some(2));
        assert!((m.points[0][0].abs() - 1.0).abs() < 1e-9);

        let i = LinearOperator::identity(Space::l2(2));
        let m = norm_attainment_set(&i, &tol(), 0).unwrap();
        assert!(m.entire_sphere);
        assert_eq!(m.cardinality(), None);

        let t = LinearOperator::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]], Space::l1(2), Space::l2(2)).unwrap();
        let m = norm_attainment_set(&t, &tol(), 0).unwrap();
        assert_eq!(m.cardinality(), Some(4));

        let z = LinearOperator::zero(Space::l2(2), Space::l2(2));
        assert!(matches!(norm_attainment_set(&z, &tol(), 0), Err(Error::ZeroOperator(_))));

        let t = LinearOperator::diagonal(Space::l2(3), &[1.0, 1.0, 0.5]).unwrap();
        let m = norm_attainment_set(&t, &tol(), 0).unwrap();
        assert!(!m.entire_sphere);
        for x in &m.points {
            assert!(x[2].abs() < 1e-6);
        }
    }

    #[test]
    fn operator_orthogonality_examples() {
        let s = Space::l2(2);
        let t = LinearOperator::diagonal(s.clone(), &[1.0, 0.5]).unwrap();
        let a = LinearOperator::diagonal(s.clone(), &[0.0, 1.0]).unwrap();
        assert!(op_bj_orthogonal_numeric(&t, &a, &tol(), 0).unwrap().orthogonal);
        assert!(op_bj_orthogonal_via_mt(&t, &a, &tol(), 0).unwrap().orthogonal);

        let v = op_bj_orthogonal_numeric(&t, &t, &tol(), 0).unwrap();
        assert!(!v.orthogonal);
        assert!((v.minimizer + 1.0).abs() < 1e-6);
        assert!(v.min_value < 1e-6);

        let a = LinearOperator::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]], s.clone(), s.clone()).unwrap();
        assert!(op_bj_orthogonal_numeric(&t, &a, &tol(), 0).unwrap().orthogonal);
        assert!(op_bj_orthogonal_via_mt(&t, &a, &tol(), 0).unwrap().orthogonal);

        let a = LinearOperator::diagonal(s.clone(), &[1.0, 0.0]).unwrap();
        assert!(!op_bj_orthogonal_numeric(&t, &a, &tol(), 0).unwrap().orthogonal);
        assert!(!op_bj_orthogonal_via_mt(&t, &a, &tol(), 0).unwrap().orthogonal);

        let z = LinearOperator::zero(s.clone(), s.clone());
        let v = op_bj_orthogonal_via_mt(&t, &z, &tol(), 0).unwrap();
        assert!(v.orthogonal);
        assert_eq!(v.plus_witness, v.minus_witness);
    }

    #[test]
    fn connected_witness_examples() {
        let s = Space::l2(2);
        let f = Functional::new(s.clone(), vec![0.6, 0.8]).unwrap();
        let w = Vector::new(s.clone(), vec![1.0, 0.0]).unwrap();
        let t = rank_one(&f, &w);
        let a = LinearOperator::from_rows(&[vec![0.0, 0.0], vec![0.3, -0.7]], s.clone(), s.clone()).unwrap();
        let x = op_orth_witness_connected(&t, &a, &tol(), 0).unwrap().unwrap();
        assert!(pointwise_orthogonal(&t, &a, &x, &tol()).unwrap());

        let i = LinearOperator::identity(s.clone());
        let a = LinearOperator::from_rows(&[vec![0.2, 1.0], vec![-1.0, -0.5]], s.clone(), s.clone()).unwrap();
        let x = op_orth_witness_connected(&i, &a, &tol(), 0).unwrap().unwrap();
        assert!(dot(&x, &a.apply(&x)).abs() < 1e-7);

        let t = LinearOperator::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]], Space::l1(2), Space::l2(2)).unwrap();
        let a = LinearOperator::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]], Space::l1(2), Space::l2(2)).unwrap();
        assert!(matches!(
            op_orth_witness_connected(&t, &a, &tol(), 0),
            Err(Error::PreconditionNotEstablished(_))
        ));
    }

    #[test]
    fn rank_one_and_adjoint() {
        let f = Functional::coordinate(Space::l1(2), 1).unwrap();
        let w = Vector::new(Space::l2(2), vec![0.6, 0.8]).unwrap();
        let t = rank_one(&f, &w);
        assert_eq!(t.rows(), vec![vec![0.0, 0.6], vec![0.0, 0.8]]);
        assert!((operator_norm(&t).value - 1.0).abs() < 1e-12);

        let f0 = Functional::new(Space::l1(2), vec![0.0, 0.0]).unwrap();
        assert!(rank_one(&f0, &w).is_zero());

        let t = LinearOperator::from_rows(&[vec![1.0, -2.0], vec![0.5, 3.0]], Space::l1(2), Space::l2(2)).unwrap();
        let ts = adjoint(&t).unwrap();
        assert!(ts.domain().is_l2() && ts.codomain().is_linf());
        assert!((operator_norm(&ts).value - operator_norm(&t).value).abs() < 1e-12);
        assert_eq!(adjoint(&ts).unwrap(), t);

        let sum = Space::sum1(Space::l2(1), Space::l2(1));
        assert!(adjoint(&LinearOperator::identity(sum)).is_err());

        let bad = Functional::new(Space::l2(2), vec![1.0, 1.0]).unwrap();
        assert!(embed_gamma(&bad, &w).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = LinearOperator::from_rows(&[vec![1.0, -2.0], vec![0.5, 3.0]], Space::linf(2), Space::lp(3.0, 2).unwrap()).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"matrix\":[[1.0,-2.0],[0.5,3.0]]"));
        let back: LinearOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<LinearOperator>(
            r#"{"matrix":[[1,2,3]],"domain":{"kind":"lp","p":2,"dim":2},"codomain":{"kind":"lp","p":2,"dim":1}}"#
        )
        .is_err());
    }
}
