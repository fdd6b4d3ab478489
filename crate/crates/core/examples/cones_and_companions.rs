//! ε-orthogonality cones and James companions: the scalars a, b with
//! (y + a x) ⊥ x and x ⊥ (y + b x).

use birkhoff::orthogonality::{bj_orthogonal, in_cone, james_left_companion, james_right_companion, ConeSign};
use birkhoff::space::axpy;
use birkhoff::{Method, Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let s = Space::lp(3.0, 3)?;
    let x = [1.0, -0.5, 0.25];
    let y = [0.2, 1.0, -0.7];

    for eps in [0.0, 0.3, 0.9] {
        for sign in [ConeSign::Plus, ConeSign::Minus] {
            let c = in_cone(&s, &x, &y, sign, eps, &tol)?;
            println!("eps {eps:.1} {sign:?}: inside {}", c.inside);
        }
    }

    let a = james_left_companion(&s, &x, &y, &tol)?;
    let left = axpy(&y, a, &x);
    println!("a = {a:.9}, (y + a x) ⊥ x: {}", bj_orthogonal(&s, &left, &x, Method::Both, &tol)?.orthogonal);
    let b = james_right_companion(&s, &x, &y, &tol)?;
    let right = axpy(&y, b, &x);
    println!("b = {b:.9}, x ⊥ (y + b x): {}", bj_orthogonal(&s, &x, &right, Method::Both, &tol)?.orthogonal);
    Ok(())
}
