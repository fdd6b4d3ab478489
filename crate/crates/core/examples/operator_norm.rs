//! Operator norms between ℓ_p spaces and the norm attainment set M_T.

use birkhoff::operator::{exact_norm, norm_attainment_set, operator_norm_numeric};
use birkhoff::{LinearOperator, Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let rows = [vec![1.0, -2.0, 0.5], vec![0.3, 1.0, 1.0]];
    for (d, c) in [
        (Space::l1(3), Space::l2(2)),
        (Space::linf(3), Space::lp(3.0, 2)?),
        (Space::l2(3), Space::l2(2)),
        (Space::lp(1.5, 3)?, Space::lp(3.0, 2)?),
    ] {
        let t = LinearOperator::from_rows(&rows, d.clone(), c.clone())?;
        let exact = exact_norm(&t).map(|n| n.value);
        let numeric = operator_norm_numeric(&t, 1).value;
        let m = norm_attainment_set(&t, &tol, 1)?;
        println!(
            "{d:?} -> {c:?}: exact {exact:?}, numeric {numeric:.12}, card M_T = {:?}",
            m.cardinality()
        );
    }
    Ok(())
}
