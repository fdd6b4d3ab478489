//! The explicit counterexample for operators whose kernel contains the
//! hyperplane `H = ker J(x)` at a norm-attaining `x`.
//!
//! The construction writes every `z` as `a·x + b·y + h` with `h ∈ H ∩ ker J(y)`
//! and sets `A z = a·v + b·w`, `w = (1-t)Tx + t·v`. Here `v` is a unit vector
//! of the codomain and `A : X → Y`; the source text states `v ∈ S_X` and
//! `A : X → X`, which does not type-check against `A ⊥_B T`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{op_bj_orthogonal_numeric, operator_norm, LinearOperator};
use crate::orthogonality::{bj_orthogonal, Method, OrthogonalityVerdict};
use crate::space::{dot, Space};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step3Certificate {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub v: Vec<f64>,
    /// `||x + y||`, strictly between 1 and 2.
    pub r: f64,
    /// `(2 - r) / (1 + 2r)`
    pub bound: f64,
    pub t: f64,
    /// `(1 - t)(1 + ||T||)`
    pub slack: f64,
    pub eps: f64,
    pub w: Vec<f64>,
    pub a: LinearOperator,
    /// `||A((x + y)/r)||`, which must exceed `1 + 2ε`.
    pub amplified: f64,
    pub holding: OrthogonalityVerdict,
    pub refuted: OrthogonalityVerdict,
}

impl Step3Certificate {
    /// Re-check the stored inequalities.
    pub fn inequalities_hold(&self, norm_t: f64) -> bool {
        let wv: Vec<f64> = self.w.iter().zip(&self.v).map(|(a, b)| a - b).collect();
        let dist = self.a.codomain().norm(&wv);
        1.0 < self.r
            && self.r < 2.0
            && self.t > 0.0
            && self.t < 1.0
            && self.eps > 0.0
            && self.eps < 1.0
            && (1.0 - self.t) * (1.0 + norm_t) < self.eps
            && self.eps < self.bound
            && dist <= self.slack * (1.0 + 1e-12)
            && self.slack < self.eps
            && self.amplified > 1.0 + 2.0 * self.eps
    }
}

/// Euclidean-orthonormal basis of `{ z : ⟨row, z⟩ = 0 for every row }`.
pub fn common_kernel(rows: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut span: Vec<Vec<f64>> = Vec::new();
    let push = |mut z: Vec<f64>, span: &mut Vec<Vec<f64>>| -> Option<Vec<f64>> {
        for _ in 0..2 {
            for b in span.iter() {
                let c = dot(&z, b);
                for (zk, bk) in z.iter_mut().zip(b) {
                    *zk -= c * bk;
                }
            }
        }
        let len = dot(&z, &z).sqrt();
        (len > 1e-8).then(|| z.iter().map(|v| v / len).collect())
    };
    for r in rows {
        if let Some(u) = push(r.clone(), &mut span) {
            span.push(u);
        }
    }
    let mut kernel = Vec::new();
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        if let Some(u) = push(e, &mut span) {
            span.push(u.clone());
            kernel.push(u);
        }
    }
    kernel
}

/// Build the Step-3 operator for a unit-norm `T`.
///
/// Preconditions (each reported as a named error): `||T|| = 1`, smooth and
/// strictly convex domain, `x ∈ M_T`, `x` and `y` mutually orthogonal, `Tx`
/// and the unit `v` mutually orthogonal, and `T` vanishing on `ker J(x)`.
pub fn construct_step3_witness(
    t: &LinearOperator,
    x: &[f64],
    y: &[f64],
    v: &[f64],
    tol: &Tolerances,
    seed: u64,
) -> Result<Step3Certificate> {
    let dom = t.domain();
    let cod = t.codomain();
    dom.check(x)?;
    dom.check(y)?;
    cod.check(v)?;
    if !(dom.is_smooth() && dom.is_strictly_convex()) {
        return Err(Error::pre("domain must be smooth and strictly convex"));
    }
    let norm_t = operator_norm(t).value;
    if (norm_t - 1.0).abs() > 1e-7 {
        return Err(Error::pre(format!("||T|| = {norm_t}, expected 1")));
    }
    let unit = |s: &Space, z: &[f64]| (s.norm(z) - 1.0).abs() <= 1e-9;
    if !unit(dom, x) || !unit(dom, y) || !unit(cod, v) {
        return Err(Error::pre("x, y and v must be unit vectors"));
    }
    let tx = t.apply(x);
    if cod.norm(&tx) < norm_t * (1.0 - tol.attainment) {
        return Err(Error::pre("x is not in M_T"));
    }
    let relaxed = Tolerances {
        analytic: tol.analytic.max(1e-8),
        ..*tol
    };
    let orth = |s: &Space, a: &[f64], b: &[f64]| -> Result<bool> {
        Ok(bj_orthogonal(s, a, b, Method::Analytic, &relaxed)?.orthogonal)
    };
    if !orth(dom, x, y)? || !orth(dom, y, x)? {
        return Err(Error::pre("x and y are not mutually B-J orthogonal"));
    }
    if !orth(cod, &tx, v)? || !orth(cod, v, &tx)? {
        return Err(Error::pre("Tx and v are not mutually B-J orthogonal"));
    }
    let fx = dom.norming_representative(x);
    for h in common_kernel(std::slice::from_ref(&fx), dom.dim()) {
        if cod.norm(&t.apply(&h)) > 1e-9 {
            return Err(Error::pre("T does not vanish on the kernel of the norming functional of x"));
        }
    }

    let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let r = dom.norm(&sum);
    if !(r > 1.0 && r < 2.0) {
        return Err(Error::Internal(format!("||x + y|| = {r} outside (1, 2)")));
    }
    let bound = (2.0 - r) / (1.0 + 2.0 * r);
    let t_mix = 1.0 - bound / (2.0 * (1.0 + norm_t));
    let slack = (1.0 - t_mix) * (1.0 + norm_t);
    let eps = 0.5 * (slack + bound);
    if !(slack < eps && eps < bound) {
        return Err(Error::Internal("empty bracket for ε".into()));
    }
    let w: Vec<f64> = tx.iter().zip(v).map(|(a, b)| (1.0 - t_mix) * a + t_mix * b).collect();

    // Basis {x, y, H ∩ ker J(y)} and images {v, w, 0, ...}.
    let gy = dom.norming_representative(y);
    let rest = common_kernel(&[fx, gy], dom.dim());
    let n = dom.dim();
    let m = cod.dim();
    if rest.len() + 2 != n {
        return Err(Error::Internal("basis construction lost rank".into()));
    }
    let mut basis = DMatrix::zeros(n, n);
    let mut image = DMatrix::zeros(m, n);
    for i in 0..n {
        basis[(i, 0)] = x[i];
        basis[(i, 1)] = y[i];
        for (k, h) in rest.iter().enumerate() {
            basis[(i, k + 2)] = h[i];
        }
    }
    for i in 0..m {
        image[(i, 0)] = v[i];
        image[(i, 1)] = w[i];
    }
    let inv = basis
        .try_inverse()
        .ok_or_else(|| Error::Internal("singular basis".into()))?;
    let a = LinearOperator::new(image * inv, dom.clone(), cod.clone())?;

    let mid: Vec<f64> = sum.iter().map(|s| s / r).collect();
    let amplified = cod.norm(&a.apply(&mid));
    let holding = op_bj_orthogonal_numeric(t, &a, tol, seed)?;
    let refuted = op_bj_orthogonal_numeric(&a, t, tol, seed)?;
    let cert = Step3Certificate {
        x: x.to_vec(),
        y: y.to_vec(),
        v: v.to_vec(),
        r,
        bound,
        t: t_mix,
        slack,
        eps,
        w,
        a,
        amplified,
        holding,
        refuted,
    };
    if !cert.inequalities_hold(norm_t) {
        return Err(Error::NumericFailure("certificate inequalities fail".into()));
    }
    if !cert.holding.orthogonal {
        return Err(Error::NumericFailure(format!(
            "T ⊥_B A fails (violation {:e})",
            cert.holding.violation
        )));
    }
    if cert.refuted.orthogonal || cert.refuted.margin <= tol.witness_margin(cert.refuted.base_value) {
        return Err(Error::NumericFailure(format!(
            "A ⊥_B T not refuted (margin {:e})",
            cert.refuted.margin
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::rank_one;
    use crate::space::{Functional, Vector};

    #[test]
    fn bracket_arithmetic_for_l3() {
        let s = Space::lp(3.0, 3).unwrap();
        let r = s.norm(&[1.0, 1.0, 0.0]);
        assert!((r - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
        let bound = (2.0 - r) / (1.0 + 2.0 * r);
        assert!((bound - 0.2103).abs() < 1e-4);
        assert!((1.0 - bound / 2.0 - 0.8949).abs() < 1e-4);
        for k in 1..1000 {
            let r = 1.0 + k as f64 / 1000.0;
            assert!((2.0 - r) / (1.0 + 2.0 * r) < 1.0);
        }
    }

    #[test]
    fn constructs_certificate_for_rank_one() {
        let dom = Space::lp(3.0, 3).unwrap();
        let cod = Space::l2(3);
        let f = Functional::coordinate(dom.clone(), 0).unwrap();
        let w = Vector::new(cod.clone(), vec![1.0, 0.0, 0.0]).unwrap();
        let t = rank_one(&f, &w);
        let tol = Tolerances::default();
        let c = construct_step3_witness(&t, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &tol, 0).unwrap();
        assert!(c.inequalities_hold(1.0));
        assert!(c.holding.orthogonal);
        assert!(!c.refuted.orthogonal);

        let err = construct_step3_witness(&t, &[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], &tol, 0);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn common_kernel_annihilates_rows() {
        let rows = vec![vec![1.0, 2.0, 0.0, -1.0], vec![0.0, 1.0, 1.0, 1.0]];
        let k = common_kernel(&rows, 4);
        assert_eq!(k.len(), 2);
        for u in &k {
            for r in &rows {
                assert!(dot(u, r).abs() < 1e-12);
            }
        }
    }
}
