//! Searching for operators A with T ⊥_B A but not A ⊥_B T.

use birkhoff::symmetry::falsify_left_symmetric_op;
use birkhoff::{LinearOperator, Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let diag = LinearOperator::diagonal(Space::l2(2), &[1.0, 0.5])?;
    let l1_rank_one = LinearOperator::from_rows(&[vec![0.0, 0.6], vec![0.0, 0.8]], Space::l1(2), Space::l2(2))?;
    for (name, t) in [("diag(1, 0.5) on ℓ_2", diag), ("e_2* ⊗ (0.6, 0.8) on ℓ_1 -> ℓ_2", l1_rank_one)] {
        let r = falsify_left_symmetric_op(&t, 100, 7, &tol)?;
        println!("{name}: {} after {} trials, strategy {:?}", r.verdict, r.trials_used, r.strategy);
        if let (Some(a), Some(refuted)) = (r.witness_operator(), &r.refuted) {
            println!("  witness A = {:?}", a.rows());
            println!("  ||A + {:+.6} T|| = {:.9} < ||A|| = {:.9}", refuted.minimizer, refuted.min_value, refuted.base_value);
        }
    }
    Ok(())
}
