//! Operator orthogonality T ⊥_B A, decided by minimising λ ↦ ||T + λA||
//! and by the attainment-set characterisation.

use birkhoff::operator::{op_bj_orthogonal_numeric, op_bj_orthogonal_via_mt};
use birkhoff::{LinearOperator, Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let s = Space::lp(3.0, 2)?;
    let t = LinearOperator::diagonal(s.clone(), &[1.0, 0.5])?;
    for (name, a) in [
        ("diag(0, 1)", LinearOperator::diagonal(s.clone(), &[0.0, 1.0])?),
        ("diag(1, 0)", LinearOperator::diagonal(s.clone(), &[1.0, 0.0])?),
        ("swap", LinearOperator::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]], s.clone(), s.clone())?),
    ] {
        let numeric = op_bj_orthogonal_numeric(&t, &a, &tol, 3)?;
        let mt = op_bj_orthogonal_via_mt(&t, &a, &tol, 3)?;
        println!(
            "T ⊥ {name}: numeric {} (λ* {:+.6}), via M_T {}",
            numeric.orthogonal, numeric.minimizer, mt.orthogonal
        );
    }
    Ok(())
}
