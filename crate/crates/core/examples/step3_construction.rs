//! The explicit construction of A with T ⊥_B A and A not ⊥_B T for a
//! rank-one T = J(x)(·) w on a smooth, strictly convex domain.

use birkhoff::operator::rank_one;
use birkhoff::orthogonality::mutual_partner;
use birkhoff::space::{Functional, Vector};
use birkhoff::symmetry::construct_step3_witness;
use birkhoff::{Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let d = Space::lp(3.0, 3)?;
    let c = Space::l2(3);
    let x = d.normalize(&[1.0, -0.4, 0.7]).expect("nonzero");
    let w = [0.0, 0.6, 0.8];
    let t = rank_one(&Functional::new(d.clone(), d.norming_representative(&x))?, &Vector::new(c, w.to_vec())?);

    let y = mutual_partner(&d, &x, 1, &tol)?;
    let y = d.normalize(&y).expect("nonzero");
    let v = [1.0, 0.0, 0.0];
    let cert = construct_step3_witness(&t, &x, &y, &v, &tol, 1)?;
    println!("r = {:.9}, t = {:.9}, eps = {:.3e}", cert.r, cert.t, cert.eps);
    println!("inequalities hold: {}", cert.inequalities_hold(1.0));
    println!("T ⊥ A: {}", cert.holding.orthogonal);
    println!("A ⊥ T: {} (drop {:.3e} at λ = {:+.6})", cert.refuted.orthogonal, cert.refuted.margin, cert.refuted.minimizer);
    Ok(())
}
