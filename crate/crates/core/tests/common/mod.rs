//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's norm, derivative or search code.

#![allow(dead_code)]

use birkhoff::rng::{self, Rng};
use birkhoff::{LinearOperator, Space};

pub fn exponent(s: &Space) -> f64 {
    match s {
        Space::Lp { p, .. } => *p,
        Space::Sum1 { .. } => panic!("oracles cover ℓ_p only"),
    }
}

pub fn lp(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        x.iter().map(|v| v.abs()).sum()
    } else {
        let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m == 0.0 {
            return 0.0;
        }
        m * x.iter().map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

pub fn comb(x: &[f64], a: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| u + a * v).collect()
}

/// The norming functional of `x` in `ℓ_p`, `1 < p < ∞`: `sign(x_i)|x_i|^{p-1} / ||x||^{p-1}`.
pub fn smooth_norming(x: &[f64], p: f64) -> Vec<f64> {
    let n = lp(x, p);
    x.iter()
        .map(|v| v.signum() * (v.abs() / n).powf(p - 1.0))
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

/// One-sided finite differences of `λ ↦ ||x + λy||_p` at 0.
pub fn fd_derivatives(x: &[f64], y: &[f64], p: f64, h: f64) -> (f64, f64) {
    let base = lp(x, p);
    let plus = (lp(&comb(x, h, y), p) - base) / h;
    let minus = (base - lp(&comb(x, -h, y), p)) / h;
    (minus, plus)
}

/// Dense λ-grid minimum of `λ ↦ f(λ)` on `[-r, r]`, refined by ternary search
/// around the best grid point.
pub fn grid_min(r: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let n = 4000;
    let mut best = (0.0, f(0.0));
    for i in 0..=n {
        let l = -r + 2.0 * r * i as f64 / n as f64;
        let v = f(l);
        if v < best.1 {
            best = (l, v);
        }
    }
    let step = 2.0 * r / n as f64;
    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mid = 0.5 * (lo + hi);
    let v = f(mid);
    if v < best.1 {
        (mid, v)
    } else {
        best
    }
}

/// Grid oracle for `x ⊥_B y`: no λ on a dense grid lowers `||x + λy||`
/// by more than `rel · ||x||`.
pub fn grid_orthogonal(x: &[f64], y: &[f64], p: f64, rel: f64) -> bool {
    let nx = lp(x, p);
    let ny = lp(y, p);
    if nx == 0.0 || ny == 0.0 {
        return true;
    }
    let (_, m) = grid_min(2.0 * nx / ny, |l| lp(&comb(x, l, y), p));
    m >= nx * (1.0 - rel)
}

fn apply(rows: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    rows.iter().map(|r| dot(r, x)).collect()
}

/// Operator norm `ℓ_p^n → ℓ_q^m` and a maximiser: exact column maximum
/// for `p = 1`, otherwise a dense random sphere sample refined by compass
/// search.
pub fn oracle_norm(op: &LinearOperator) -> (f64, Vec<f64>) {
    let p = exponent(op.domain());
    let q = exponent(op.codomain());
    let rows = op.rows();
    let n = op.domain().dim();
    if p == 1.0 {
        let mut best = (0.0, vec![0.0; n]);
        for j in 0..n {
            let v = lp(&op.column(j), q);
            if v > best.0 {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                best = (v, e);
            }
        }
        return best;
    }
    let value = |x: &[f64]| {
        let nx = lp(x, p);
        if nx == 0.0 {
            0.0
        } else {
            lp(&apply(&rows, x), q) / nx
        }
    };
    let mut r: Rng = rng::rng(0x5eed);
    let mut samples: Vec<(f64, Vec<f64>)> = (0..20_000)
        .map(|_| {
            let x = rng::normal_vec(&mut r, n);
            (value(&x), x)
        })
        .collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        samples.push((value(&e), e));
    }
    samples.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = (0.0, vec![0.0; n]);
    for (_, x0) in samples.into_iter().take(6) {
        let mut x = x0.clone();
        let mut fx = value(&x);
        let mut step = 0.1 * lp(&x, 2.0);
        while step > 1e-13 * lp(&x, 2.0) {
            let mut improved = false;
            for j in 0..n {
                for s in [1.0, -1.0] {
                    let mut z = x.clone();
                    z[j] += s * step;
                    let fz = value(&z);
                    if fz > fx {
                        x = z;
                        fx = fz;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if fx > best.0 {
            let nx = lp(&x, p);
            best = (fx, x.iter().map(|v| v / nx).collect());
        }
    }
    best
}

/// Oracle confirmation of `first ⊥_B second` and `second ⊥̸_B first`.
///
/// Holding side: on a log-spaced λ grid, `||first + λ second||` must not drop
/// below `||first||`; the bound `||(first + λ second) x||` at the oracle
/// maximiser `x` is tried first and the full oracle norm only when it fails.
/// Refuted side: an oracle norm drop of `second + λ* first`.
pub fn oracle_witness(first: &LinearOperator, second: &LinearOperator, lambda_star: f64) -> Result<(), String> {
    let q = exponent(first.codomain());
    let (nt, x) = oracle_norm(first);
    let (na, _) = oracle_norm(second);
    let tx = first.apply(&x);
    let ax = second.apply(&x);
    let radius = 2.0 * nt / na;
    for k in 0..=80 {
        let mag = radius * 10f64.powf(-8.0 * (1.0 - k as f64 / 80.0));
        for l in [mag, -mag] {
            let slack = 1e-6 * l.abs() * na + 1e-9 * nt;
            if lp(&comb(&tx, l, &ax), q) >= nt - slack {
                continue;
            }
            let full = oracle_norm(&first.add_scaled(l, second)).0;
            if full < nt - slack {
                return Err(format!("holding side: ||T + {l} A|| = {full} < {nt}"));
            }
        }
    }
    let (dropped, _) = oracle_norm(&second.add_scaled(lambda_star, first));
    if dropped < na - 1e-6 * na.max(1.0) {
        Ok(())
    } else {
        Err(format!("refuted side: ||A + {lambda_star} T|| = {dropped} vs ||A|| = {na}"))
    }
}

pub fn random_rows(r: &mut Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    (0..m).map(|_| rng::normal_vec(r, n)).collect()
}

pub fn random_operator(r: &mut Rng, d: &Space, c: &Space) -> LinearOperator {
    LinearOperator::from_rows(&random_rows(r, c.dim(), d.dim()), d.clone(), c.clone()).unwrap()
}

pub fn lp_space(p: f64, n: usize) -> Space {
    Space::lp(p, n).unwrap()
}
