//! Birkhoff-James orthogonality by the analytic derivative test and by
//! direct minimisation of λ ↦ ||x + λy||.

use birkhoff::orthogonality::bj_orthogonal;
use birkhoff::{Method, Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let cases: [(Space, [f64; 2], [f64; 2]); 4] = [
        (Space::l1(2), [1.0, 0.0], [0.5, 1.0]),
        (Space::l2(2), [1.0, 0.0], [1.0, 0.0]),
        (Space::l2(2), [1.0, 1.0], [1.0, -1.0]),
        (Space::lp(3.0, 2)?, [1.0, 1.0], [1.0, -1.0]),
    ];
    for (s, x, y) in cases {
        let v = bj_orthogonal(&s, &x, &y, Method::Both, &tol)?;
        println!(
            "{s:?} x={x:?} y={y:?}: orthogonal {} (minimiser {:+.6}, margin {:.3e})",
            v.orthogonal, v.minimizer, v.margin
        );
    }
    Ok(())
}
