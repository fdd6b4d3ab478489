//! Right symmetry: the kernel observation and the witness search.

use birkhoff::symmetry::{falsify_right_symmetric_op, kernel_identity_test, spectral_instance_test};
use birkhoff::{LinearOperator, Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let s = Space::lp(3.0, 2)?;
    let singular = LinearOperator::diagonal(s.clone(), &[1.0, 0.0])?;

    let k = kernel_identity_test(&singular, &tol, 1)?;
    println!(
        "nullity {}, kernel vector {:?}, I ⊥ T: {}, T ⊥ I: {}",
        k.nullity, k.kernel_vector, k.identity_orthogonal.orthogonal, k.operator_orthogonal.orthogonal
    );

    let sp = spectral_instance_test(&singular, 60, 1, &tol)?;
    println!("||T|| = {} is an eigenvalue modulus; falsifier agrees: {}", sp.norm, sp.consistent);

    let r = falsify_right_symmetric_op(&LinearOperator::identity(s), 60, 1, &tol)?;
    println!("identity: {} after {} trials", r.verdict, r.trials_used);
    Ok(())
}
