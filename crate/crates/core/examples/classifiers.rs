//! Deciding left symmetry exactly for operators on ℓ_1^n and X ⊕₁ ℝ.

use birkhoff::symmetry::{classify_left_symmetric_direct_sum, classify_left_symmetric_from_l1};
use birkhoff::{LinearOperator, Space, Tolerances};

fn main() -> birkhoff::Result<()> {
    let tol = Tolerances::default();
    let c = Space::l2(2);
    let coordinate = LinearOperator::from_rows(&[vec![0.0, 0.6], vec![0.0, 0.8]], Space::l1(2), c.clone())?;
    let spread = LinearOperator::from_rows(&[vec![0.3, 0.6], vec![0.4, 0.8]], Space::l1(2), c.clone())?;
    for (name, t) in [("coordinate functional", coordinate), ("spread functional", spread)] {
        let v = classify_left_symmetric_from_l1(&t, 100, 1, &tol)?;
        println!("ℓ_1: {name}: {:?} {:?}", v.left_symmetric, v.violation);
    }

    let d = Space::sum1(Space::l2(2), Space::l1(1));
    let last = LinearOperator::from_rows(&[vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 2.0]], d.clone(), c.clone())?;
    let mixed = LinearOperator::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 0.0, 2.0]], d, c)?;
    for (name, t) in [("vanishing on X", last), ("not rank one", mixed)] {
        let v = classify_left_symmetric_direct_sum(&t, 100, 1, &tol)?;
        println!("ℓ_2 ⊕₁ ℝ: {name}: {:?} {:?}", v.left_symmetric, v.violation);
    }
    Ok(())
}
