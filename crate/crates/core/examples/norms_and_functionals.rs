//! Norms, dual norms and norming functionals in ℓ_p and ℓ_1 direct sums.

use birkhoff::space::{is_smooth_point, norming_functionals};
use birkhoff::Space;

fn main() -> birkhoff::Result<()> {
    let x = [3.0, -4.0, 0.0];
    for s in [Space::l1(3), Space::lp(1.5, 3)?, Space::l2(3), Space::linf(3)] {
        let j = norming_functionals(&s, &x, 1e-12)?;
        println!(
            "{s:?}: ||x|| = {:.6}, smooth at x: {}, J(x) singleton: {}, representative {:?}",
            s.norm(&x),
            is_smooth_point(&s, &x, 1e-12)?.smooth,
            j.is_singleton(),
            s.norming_representative(&x),
        );
    }

    let sum = Space::sum1(Space::l2(2), Space::l1(1));
    let z = [3.0, 4.0, -2.0];
    println!("||(3, 4) ⊕ (-2)|| in ℓ_2 ⊕₁ ℝ = {}", sum.norm(&z));
    println!("dual norm of (1, 1, 1) = {}", sum.dual_norm(&[1.0, 1.0, 1.0]));
    Ok(())
}
