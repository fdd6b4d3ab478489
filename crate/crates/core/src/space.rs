//! Finite-dimensional normed spaces: `ℓ_p^n` for `1 <= p <= ∞` and `⊕₁` sums.
//!
//! Vectors and functionals are plain coordinate slices; a functional acts on a
//! vector through the standard dot product, so the dual of `ℓ_p^n` is
//! `ℓ_q^n` with `1/p + 1/q = 1` and the dual of `X ⊕₁ Y` carries the max norm
//! of the two dual norms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// Exponents in `(1, 1 + P_MIN_GAP)` and above `P_MAX` are rejected: the
/// duality-map exponent `p - 1` loses precision there.
pub const P_MIN_GAP: f64 = 1e-6;
pub const P_MAX: f64 = 1e6;

/// Largest `n` for which the `2^n` vertices of the `ℓ_∞^n` ball are enumerated.
pub const LINF_ENUMERATION_LIMIT: usize = 20;

/// Sample budget used when a functional set is materialised as a list.
pub const DEFAULT_SAMPLE_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub enum Space {
    Lp { p: f64, dim: usize },
    Sum1 { left: Box<Space>, right: Box<Space> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpaceRepr {
    Lp { p: ExponentRepr, dim: usize },
    Sum1 { left: Box<SpaceRepr>, right: Box<SpaceRepr> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<SpaceRepr> for Space {
    type Error = Error;

    fn try_from(repr: SpaceRepr) -> Result<Self> {
        match repr {
            SpaceRepr::Lp { p, dim } => {
                let p = match p {
                    ExponentRepr::Number(p) => p,
                    ExponentRepr::Text(s) if s.eq_ignore_ascii_case("inf") => f64::INFINITY,
                    ExponentRepr::Text(s) => s
                        .parse::<f64>()
                        .map_err(|_| Error::input(format!("bad exponent `{s}`")))?,
                };
                Space::lp(p, dim)
            }
            SpaceRepr::Sum1 { left, right } => {
                Ok(Space::sum1(Space::try_from(*left)?, Space::try_from(*right)?))
            }
        }
    }
}

impl From<Space> for SpaceRepr {
    fn from(space: Space) -> Self {
        match space {
            Space::Lp { p, dim } => SpaceRepr::Lp {
                p: if p.is_infinite() {
                    ExponentRepr::Text("inf".into())
                } else {
                    ExponentRepr::Number(p)
                },
                dim,
            },
            Space::Sum1 { left, right } => SpaceRepr::Sum1 {
                left: Box::new((*left).into()),
                right: Box::new((*right).into()),
            },
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Lp { p, dim } if p.is_infinite() => write!(f, "l_inf^{dim}"),
            Space::Lp { p, dim } => write!(f, "l_{p}^{dim}"),
            Space::Sum1 { left, right } => write!(f, "({left} (+)_1 {right})"),
        }
    }
}

impl Space {
    pub fn lp(p: f64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("dimension must be at least 1"));
        }
        if p.is_nan() || p < 1.0 {
            return Err(Error::input(format!("exponent {p} outside [1, inf]")));
        }
        if p > 1.0 && p < 1.0 + P_MIN_GAP {
            return Err(Error::input(format!(
                "exponent {p} too close to 1; use p = 1 or p >= 1 + {P_MIN_GAP}"
            )));
        }
        if p.is_finite() && p > P_MAX {
            return Err(Error::input(format!(
                "exponent {p} above {P_MAX}; use p = inf"
            )));
        }
        Ok(Space::Lp { p, dim })
    }

    pub fn l1(dim: usize) -> Self {
        Space::Lp { p: 1.0, dim }
    }

    pub fn l2(dim: usize) -> Self {
        Space::Lp { p: 2.0, dim }
    }

    pub fn linf(dim: usize) -> Self {
        Space::Lp {
            p: f64::INFINITY,
            dim,
        }
    }

    pub fn sum1(left: Space, right: Space) -> Self {
        Space::Sum1 {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Space::Lp { dim, .. } => *dim,
            Space::Sum1 { left, right } => left.dim() + right.dim(),
        }
    }

    /// Exponent of an `ℓ_p` space, `None` for direct sums.
    pub fn exponent(&self) -> Option<f64> {
        match self {
            Space::Lp { p, .. } => Some(*p),
            Space::Sum1 { .. } => None,
        }
    }

    pub fn is_l1(&self) -> bool {
        matches!(self, Space::Lp { p, .. } if *p == 1.0)
    }

    pub fn is_linf(&self) -> bool {
        matches!(self, Space::Lp { p, .. } if p.is_infinite())
    }

    pub fn is_l2(&self) -> bool {
        matches!(self, Space::Lp { p, .. } if *p == 2.0)
    }

    pub fn is_strictly_convex(&self) -> bool {
        match self {
            Space::Lp { p, dim } => *dim == 1 || (*p > 1.0 && p.is_finite()),
            Space::Sum1 { .. } => false,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.is_strictly_convex()
    }

    /// Finite-dimensional spaces are reflexive.
    pub fn is_reflexive(&self) -> bool {
        true
    }

    /// Weak and norm topologies agree in finite dimension, so the
    /// Kadets-Klee property always holds.
    pub fn is_kadets_klee(&self) -> bool {
        true
    }

    /// Dual descriptor; only defined for `ℓ_p` spaces.
    pub fn dual(&self) -> Result<Space> {
        match self {
            Space::Lp { p, dim } => Ok(Space::Lp {
                p: conjugate_exponent(*p),
                dim: *dim,
            }),
            Space::Sum1 { .. } => Err(Error::UnsupportedSpace(format!(
                "dual descriptor of direct sum {self} is not in the descriptor family"
            ))),
        }
    }

    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("coordinates must be finite"));
        }
        Ok(())
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            Space::Lp { p, .. } => lp_norm(x, *p),
            Space::Sum1 { left, right } => {
                let (a, b) = x.split_at(left.dim());
                left.norm(a) + right.norm(b)
            }
        }
    }

    /// Norm of `g` as a functional on this space.
    pub fn dual_norm(&self, g: &[f64]) -> f64 {
        debug_assert_eq!(g.len(), self.dim());
        match self {
            Space::Lp { p, .. } => lp_norm(g, conjugate_exponent(*p)),
            Space::Sum1 { left, right } => {
                let (a, b) = g.split_at(left.dim());
                left.dual_norm(a).max(right.dual_norm(b))
            }
        }
    }

    pub fn normalize(&self, x: &[f64]) -> Option<Vec<f64>> {
        let n = self.norm(x);
        (n > 0.0 && n.is_finite()).then(|| x.iter().map(|v| v / n).collect())
    }

    /// A unit vector `x` with `g(x) = ||g||_*`.
    pub fn support_point(&self, g: &[f64]) -> Vec<f64> {
        match self {
            Space::Lp { p, dim } => {
                let mut x = vec![0.0; *dim];
                if g.iter().all(|v| *v == 0.0) {
                    x[0] = 1.0;
                    return x;
                }
                if *p == 1.0 {
                    let k = argmax_abs(g);
                    x[k] = sign(g[k]);
                } else if p.is_infinite() {
                    for (xi, gi) in x.iter_mut().zip(g) {
                        *xi = if *gi < 0.0 { -1.0 } else { 1.0 };
                    }
                } else {
                    let q = conjugate_exponent(*p);
                    let s = lp_norm(g, q);
                    for (xi, gi) in x.iter_mut().zip(g) {
                        *xi = sign(*gi) * (gi.abs() / s).powf(q - 1.0);
                    }
                }
                x
            }
            Space::Sum1 { left, right } => {
                let (a, b) = g.split_at(left.dim());
                let mut x = vec![0.0; self.dim()];
                if left.dual_norm(a) >= right.dual_norm(b) {
                    x[..left.dim()].copy_from_slice(&left.support_point(a));
                } else {
                    x[left.dim()..].copy_from_slice(&right.support_point(b));
                }
                x
            }
        }
    }

    /// One member of `J(x)`; the zero vector when `x = 0`.
    pub fn norming_representative(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Space::Lp { p, .. } => {
                let n = lp_norm(x, *p);
                if n == 0.0 {
                    return vec![0.0; x.len()];
                }
                if *p == 1.0 {
                    x.iter().map(|v| sign(*v)).collect()
                } else if p.is_infinite() {
                    let k = argmax_abs(x);
                    let mut f = vec![0.0; x.len()];
                    f[k] = sign(x[k]);
                    f
                } else {
                    x.iter()
                        .map(|v| sign(*v) * (v.abs() / n).powf(p - 1.0))
                        .collect()
                }
            }
            Space::Sum1 { left, right } => {
                let (a, b) = x.split_at(left.dim());
                let mut f = left.norming_representative(a);
                f.extend(right.norming_representative(b));
                f
            }
        }
    }

    /// Block decomposition of a direct sum, `None` for `ℓ_p` spaces.
    pub fn blocks(&self) -> Option<(&Space, &Space)> {
        match self {
            Space::Sum1 { left, right } => Some((left, right)),
            Space::Lp { .. } => None,
        }
    }

    /// Unit coordinate vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<f64> {
        let mut e = vec![0.0; self.dim()];
        e[i] = 1.0;
        e
    }
}

pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    let m = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if p.is_infinite() || m == 0.0 {
        return m;
    }
    if p == 2.0 {
        let s: f64 = x.iter().map(|v| (v / m) * (v / m)).sum();
        return m * s.sqrt();
    }
    let s: f64 = x.iter().map(|v| (v.abs() / m).powf(p)).sum();
    m * s.powf(1.0 / p)
}

/// Checked norm evaluation.
pub fn norm(space: &Space, x: &[f64]) -> Result<f64> {
    space.check(x)?;
    Ok(space.norm(x))
}

pub(crate) fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub(crate) fn argmax_abs(x: &[f64]) -> usize {
    let mut k = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[k].abs() {
            k = i;
        }
    }
    k
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `x + a y`
pub fn axpy(x: &[f64], a: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| u + a * v).collect()
}

pub fn scaled(x: &[f64], a: f64) -> Vec<f64> {
    x.iter().map(|v| a * v).collect()
}

/// A coordinate vector tagged with the space it lives in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    pub coords: Vec<f64>,
    pub space: Space,
}

impl Vector {
    pub fn new(space: Space, coords: Vec<f64>) -> Result<Self> {
        space.check(&coords)?;
        Ok(Self { coords, space })
    }

    pub fn norm(&self) -> f64 {
        self.space.norm(&self.coords)
    }
}

/// A linear functional acting on `space` by the coordinate pairing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Functional {
    pub coords: Vec<f64>,
    pub space: Space,
}

impl Functional {
    pub fn new(space: Space, coords: Vec<f64>) -> Result<Self> {
        space.check(&coords)?;
        Ok(Self { coords, space })
    }

    /// The coordinate functional `e_k^*`.
    pub fn coordinate(space: Space, k: usize) -> Result<Self> {
        if k >= space.dim() {
            return Err(Error::input(format!("index {k} out of range")));
        }
        let coords = space.basis_vector(k);
        Ok(Self { coords, space })
    }

    pub fn apply(&self, x: &[f64]) -> f64 {
        dot(&self.coords, x)
    }

    pub fn dual_norm(&self) -> f64 {
        self.space.dual_norm(&self.coords)
    }
}

/// The set `J(x)` of norming functionals of a nonzero vector, in a structured
/// form that supports exact support-function evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FunctionalSet {
    Singleton {
        coords: Vec<f64>,
    },
    /// `ℓ_1` case: `f_i = fixed[i]` off the free set, `f_i ∈ [-1, 1]` on it.
    L1Box {
        fixed: Vec<f64>,
        free: Vec<usize>,
    },
    /// `ℓ_∞` case: convex hull of `signs[j] e_{active[j]}`.
    LinfSimplex {
        dim: usize,
        active: Vec<usize>,
        signs: Vec<f64>,
    },
    /// The whole closed unit ball of the dual of `space` (norming set of a
    /// zero block inside a direct sum).
    DualBall {
        space: Space,
    },
    /// Product set for `X ⊕₁ Y`; the first `split` coordinates belong to `X`.
    DirectSum {
        split: usize,
        left: Box<FunctionalSet>,
        right: Box<FunctionalSet>,
    },
    NumericSample {
        members: Vec<Vec<f64>>,
    },
}

impl FunctionalSet {
    pub fn dim(&self) -> usize {
        match self {
            FunctionalSet::Singleton { coords } => coords.len(),
            FunctionalSet::L1Box { fixed, .. } => fixed.len(),
            FunctionalSet::LinfSimplex { dim, .. } => *dim,
            FunctionalSet::DualBall { space } => space.dim(),
            FunctionalSet::DirectSum { left, right, .. } => left.dim() + right.dim(),
            FunctionalSet::NumericSample { members } => members.first().map_or(0, Vec::len),
        }
    }

    pub fn is_singleton(&self) -> bool {
        match self {
            FunctionalSet::Singleton { .. } => true,
            FunctionalSet::L1Box { free, .. } => free.is_empty(),
            FunctionalSet::LinfSimplex { active, .. } => active.len() == 1,
            FunctionalSet::DualBall { .. } => false,
            FunctionalSet::DirectSum { left, right, .. } => {
                left.is_singleton() && right.is_singleton()
            }
            FunctionalSet::NumericSample { members } => members
                .windows(2)
                .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| (a - b).abs() < 1e-12)),
        }
    }

    /// `max { f(y) : f in the set }`
    pub fn support(&self, y: &[f64]) -> f64 {
        match self {
            FunctionalSet::Singleton { coords } => dot(coords, y),
            FunctionalSet::L1Box { fixed, free } => {
                let mut s = dot(fixed, y);
                for &i in free {
                    s += y[i].abs();
                }
                s
            }
            FunctionalSet::LinfSimplex { active, signs, .. } => active
                .iter()
                .zip(signs)
                .map(|(&i, s)| s * y[i])
                .fold(f64::NEG_INFINITY, f64::max),
            FunctionalSet::DualBall { space } => space.norm(y),
            FunctionalSet::DirectSum { split, left, right } => {
                let (a, b) = y.split_at(*split);
                left.support(a) + right.support(b)
            }
            FunctionalSet::NumericSample { members } => members
                .iter()
                .map(|f| dot(f, y))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// `min { f(y) : f in the set }`
    pub fn lower(&self, y: &[f64]) -> f64 {
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        -self.support(&neg)
    }

    /// A member attaining [`support`](Self::support).
    pub fn argsupport(&self, y: &[f64]) -> Vec<f64> {
        match self {
            FunctionalSet::Singleton { coords } => coords.clone(),
            FunctionalSet::L1Box { fixed, free } => {
                let mut f = fixed.clone();
                for &i in free {
                    f[i] = if y[i] < 0.0 { -1.0 } else { 1.0 };
                }
                f
            }
            FunctionalSet::LinfSimplex { dim, active, signs } => {
                let mut best = 0;
                for j in 1..active.len() {
                    if signs[j] * y[active[j]] > signs[best] * y[active[best]] {
                        best = j;
                    }
                }
                let mut f = vec![0.0; *dim];
                f[active[best]] = signs[best];
                f
            }
            FunctionalSet::DualBall { space } => {
                let n = space.norm(y);
                if n == 0.0 {
                    vec![0.0; y.len()]
                } else {
                    space.norming_representative(y)
                }
            }
            FunctionalSet::DirectSum { split, left, right } => {
                let (a, b) = y.split_at(*split);
                let mut f = left.argsupport(a);
                f.extend(right.argsupport(b));
                f
            }
            FunctionalSet::NumericSample { members } => {
                let mut best = &members[0];
                for f in members {
                    if dot(f, y) > dot(best, y) {
                        best = f;
                    }
                }
                best.clone()
            }
        }
    }

    pub fn arglower(&self, y: &[f64]) -> Vec<f64> {
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        self.argsupport(&neg)
    }

    /// A member `f` with `f(x) = 0`, if the set contains one (up to `slack`).
    pub fn vanishing_on(&self, x: &[f64], slack: f64) -> Option<Vec<f64>> {
        let lo = self.lower(x);
        let hi = self.support(x);
        if lo > slack || hi < -slack {
            return None;
        }
        let f_lo = self.arglower(x);
        let f_hi = self.argsupport(x);
        let theta = if hi - lo > 0.0 {
            ((0.0 - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            0.0
        };
        Some(
            f_lo.iter()
                .zip(&f_hi)
                .map(|(a, b)| (1.0 - theta) * a + theta * b)
                .collect(),
        )
    }

    /// Two distinct members when the set is not a singleton.
    pub fn distinct_pair(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        if self.is_singleton() {
            return None;
        }
        // The direction separating two members: probe each coordinate.
        for i in 0..self.dim() {
            let mut e = vec![0.0; self.dim()];
            e[i] = 1.0;
            if self.support(&e) - self.lower(&e) > 1e-12 {
                return Some((self.arglower(&e), self.argsupport(&e)));
            }
        }
        None
    }

    /// Seeded members of the set, for evidence and tests.
    pub fn sample_members(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = rng::rng(seed);
        (0..count).map(|_| self.sample_one(&mut rng)).collect()
    }

    fn sample_one(&self, rng: &mut rng::Rng) -> Vec<f64> {
        match self {
            FunctionalSet::Singleton { coords } => coords.clone(),
            FunctionalSet::L1Box { fixed, free } => {
                let mut f = fixed.clone();
                for &i in free {
                    f[i] = rng::uniform(rng, -1.0, 1.0);
                }
                f
            }
            FunctionalSet::LinfSimplex { dim, active, signs } => {
                let weights: Vec<f64> = active
                    .iter()
                    .map(|_| -rng::uniform(rng, 1e-12, 1.0).ln())
                    .collect();
                let total: f64 = weights.iter().sum();
                let mut f = vec![0.0; *dim];
                for ((&i, s), w) in active.iter().zip(signs).zip(&weights) {
                    f[i] = s * w / total;
                }
                f
            }
            FunctionalSet::DualBall { space } => {
                let g = rng::normal_vec(rng, space.dim());
                let n = space.dual_norm(&g);
                let r = rng::uniform(rng, 0.0, 1.0);
                g.iter().map(|v| r * v / n).collect()
            }
            FunctionalSet::DirectSum { left, right, .. } => {
                let mut f = left.sample_one(rng);
                f.extend(right.sample_one(rng));
                f
            }
            FunctionalSet::NumericSample { members } => {
                use rand::Rng as _;
                members[rng.random_range(0..members.len())].clone()
            }
        }
    }

    /// Materialise the set as a list of members.
    pub fn to_numeric_sample(&self, budget: usize, seed: u64) -> FunctionalSet {
        FunctionalSet::NumericSample {
            members: self.sample_members(budget, seed),
        }
    }
}

/// The norming set `J(x) = { f : ||f||_* = 1, f(x) = ||x|| }`.
pub fn norming_functionals(space: &Space, x: &[f64], zero_tol: f64) -> Result<FunctionalSet> {
    space.check(x)?;
    let n = space.norm(x);
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(build_norming(space, x, zero_tol * n))
}

fn build_norming(space: &Space, x: &[f64], zero_abs: f64) -> FunctionalSet {
    match space {
        Space::Lp { p, dim } => {
            if *p == 1.0 {
                let mut fixed = vec![0.0; *dim];
                let mut free = Vec::new();
                for (i, v) in x.iter().enumerate() {
                    if v.abs() > zero_abs {
                        fixed[i] = sign(*v);
                    } else {
                        free.push(i);
                    }
                }
                if free.is_empty() {
                    FunctionalSet::Singleton { coords: fixed }
                } else {
                    FunctionalSet::L1Box { fixed, free }
                }
            } else if p.is_infinite() {
                let m = lp_norm(x, f64::INFINITY);
                let (active, signs): (Vec<usize>, Vec<f64>) = x
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.abs() >= m - zero_abs)
                    .map(|(i, v)| (i, sign(*v)))
                    .unzip();
                if active.len() == 1 {
                    let mut coords = vec![0.0; *dim];
                    coords[active[0]] = signs[0];
                    FunctionalSet::Singleton { coords }
                } else {
                    FunctionalSet::LinfSimplex {
                        dim: *dim,
                        active,
                        signs,
                    }
                }
            } else {
                FunctionalSet::Singleton {
                    coords: space.norming_representative(x),
                }
            }
        }
        Space::Sum1 { left, right } => {
            let (a, b) = x.split_at(left.dim());
            let part = |s: &Space, v: &[f64]| {
                if s.norm(v) <= zero_abs {
                    FunctionalSet::DualBall { space: s.clone() }
                } else {
                    build_norming(s, v, zero_abs)
                }
            };
            FunctionalSet::DirectSum {
                split: left.dim(),
                left: Box::new(part(left, a)),
                right: Box::new(part(right, b)),
            }
        }
    }
}

/// Smoothness verdict with evidence: two distinct norming functionals when
/// the point is not smooth.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub evidence: Option<(Vec<f64>, Vec<f64>)>,
}

pub fn is_smooth_point(space: &Space, x: &[f64], zero_tol: f64) -> Result<SmoothnessVerdict> {
    let set = norming_functionals(space, x, zero_tol)?;
    let evidence = set.distinct_pair();
    Ok(SmoothnessVerdict {
        smooth: evidence.is_none(),
        evidence,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "points", rename_all = "kebab-case")]
pub enum ExtremePoints {
    Finite(Vec<Vec<f64>>),
    NotEnumerable,
}

/// Extreme points of the closed unit ball.
pub fn extreme_points(space: &Space) -> ExtremePoints {
    match space {
        Space::Lp { p, dim } => {
            if *dim == 1 {
                return ExtremePoints::Finite(vec![vec![1.0], vec![-1.0]]);
            }
            if *p == 1.0 {
                let mut pts = Vec::with_capacity(2 * dim);
                for i in 0..*dim {
                    for s in [1.0, -1.0] {
                        let mut e = vec![0.0; *dim];
                        e[i] = s;
                        pts.push(e);
                    }
                }
                ExtremePoints::Finite(pts)
            } else if p.is_infinite() && *dim <= LINF_ENUMERATION_LIMIT {
                ExtremePoints::Finite(sign_vectors(*dim))
            } else {
                ExtremePoints::NotEnumerable
            }
        }
        Space::Sum1 { left, right } => match (extreme_points(left), extreme_points(right)) {
            (ExtremePoints::Finite(a), ExtremePoints::Finite(b)) => {
                let (m, n) = (left.dim(), right.dim());
                let mut pts = Vec::with_capacity(a.len() + b.len());
                for e in a {
                    let mut v = e;
                    v.resize(m + n, 0.0);
                    pts.push(v);
                }
                for e in b {
                    let mut v = vec![0.0; m];
                    v.extend(e);
                    pts.push(v);
                }
                ExtremePoints::Finite(pts)
            }
            _ => ExtremePoints::NotEnumerable,
        },
    }
}

/// All `2^n` vectors with entries `±1`, in binary-counter order.
pub fn sign_vectors(n: usize) -> Vec<Vec<f64>> {
    (0..1usize << n)
        .map(|mask| {
            (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 })
                .collect()
        })
        .collect()
}

/// `count` seeded unit vectors: standard-normal draws normalised in the space norm.
pub fn sample_unit_sphere(space: &Space, seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = rng::rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = rng::normal_vec(&mut rng, space.dim());
        if let Some(u) = space.normalize(&g) {
            out.push(u);
        }
    }
    out
}
