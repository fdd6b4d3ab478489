//! One-dimensional convex minimisation and monotone bisection.

/// Golden-section stopping width, relative to the initial bracket.
pub const GOLDEN_RELATIVE_WIDTH: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimise a convex function on `[lo, hi]`: golden-section down to
/// `GOLDEN_RELATIVE_WIDTH` of the initial width, then a three-point parabolic
/// polish. The endpoints are always evaluated so boundary minima are exact.
pub fn minimize_convex<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> Minimum {
    assert!(lo <= hi, "empty bracket [{lo}, {hi}]");
    let mut evals = 0usize;
    let mut eval = |t: f64| {
        evals += 1;
        f(t)
    };

    let f_lo = eval(lo);
    let f_hi = eval(hi);
    let mut best = if f_lo <= f_hi { (lo, f_lo) } else { (hi, f_hi) };
    if hi - lo == 0.0 {
        return Minimum {
            arg: best.0,
            value: best.1,
            evaluations: evals,
        };
    }

    let stop = GOLDEN_RELATIVE_WIDTH * (hi - lo);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    while b - a > stop {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d);
        }
    }
    for (t, v) in [(c, fc), (d, fd)] {
        if v < best.1 {
            best = (t, v);
        }
    }

    // Parabolic polish through the final triple.
    let (x0, x1, x2) = (a, 0.5 * (a + b), b);
    let (y0, y1, y2) = (eval(x0), eval(x1), eval(x2));
    for (t, v) in [(x0, y0), (x1, y1), (x2, y2)] {
        if v < best.1 {
            best = (t, v);
        }
    }
    let denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if denom.abs() > 0.0 {
        let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
        let t = x1 - 0.5 * num / denom;
        if t.is_finite() && t > lo && t < hi {
            let v = eval(t);
            if v < best.1 {
                best = (t, v);
            }
        }
    }

    Minimum {
        arg: best.0,
        value: best.1,
        evaluations: evals,
    }
}

/// Boundary of a monotone predicate on `[lo, hi]` with `pred(lo) = false` and
/// `pred(hi) = true`; returns the `true`-side end of the final bracket.
pub fn bisect<P: FnMut(f64) -> bool>(mut pred: P, mut lo: f64, mut hi: f64, iterations: usize) -> f64 {
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_minimum_of_parabola() {
        let m = minimize_convex(|t| (t - 0.3).powi(2) + 1.0, -4.0, 4.0);
        assert!((m.arg - 0.3).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn finds_kink_minimum() {
        let m = minimize_convex(|t| (t + 0.5).abs() + 1.0, -4.0, 4.0);
        assert!((m.arg + 0.5).abs() < 1e-10);
        assert!((m.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn boundary_minimum_is_exact() {
        let m = minimize_convex(|t| t, -2.0, 3.0);
        assert_eq!(m.arg, -2.0);
        let m = minimize_convex(|t| t * t, 0.0, 0.0);
        assert_eq!(m.value, 0.0);
    }

    #[test]
    fn bisection_locates_threshold() {
        let t = bisect(|s| s >= 0.25, -1.0, 1.0, 200);
        assert!((t - 0.25).abs() < 1e-15);
    }
}
