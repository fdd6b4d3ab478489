mod common;

use birkhoff::operator::{norm_attainment_set, op_bj_orthogonal_numeric, rank_one};
use birkhoff::orthogonality::{james_left_companion, Direction};
use birkhoff::rng;
use birkhoff::space::{Functional, Vector};
use birkhoff::symmetry::{
    classify_left_symmetric_from_l1, falsify_left_symmetric_op, falsify_right_symmetric_op, kernel_identity_test,
    s1_witness, verify_theorem, Outcome, SuiteConfig, THEOREM_IDS,
};
use birkhoff::{LinearOperator, Space, Tolerances};

use common::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn classifier_and_falsifier_agree_on_l1_rank_one() {
    let t = tol();
    let mut r = rng::rng(21);
    let c = Space::l2(2);
    for k in 0..200 {
        let n = 2 + k % 2;
        let d = Space::l1(n);
        let mut f = rng::normal_vec(&mut r, n);
        if k % 3 == 0 {
            let j = k % n;
            f = vec![0.0; n];
            f[j] = if k % 2 == 0 { 1.0 } else { -1.0 };
        }
        let w = rng::normal_vec(&mut r, 2);
        let op = rank_one(&Functional::new(d, f).unwrap(), &Vector::new(c.clone(), w).unwrap());
        let verdict = classify_left_symmetric_from_l1(&op, 100, k as u64, &t).unwrap();
        let budget = if verdict.is_yes() { 100 } else { 500 };
        let report = falsify_left_symmetric_op(&op, budget, k as u64, &t).unwrap();
        assert_eq!(
            verdict.is_yes(),
            report.is_symmetric_within_budget(),
            "instance {k}: classifier {:?}, falsifier {:?}",
            verdict.violation,
            report.strategy
        );
    }
}

#[test]
fn s1_operators_are_right_orthogonal_to_t() {
    let t = tol();
    let mut r = rng::rng(22);
    for k in 0..40 {
        let p = [1.5, 2.0, 3.0][k % 3];
        let q = [2.0, 3.0, 1.5][k % 3];
        let (d, c) = (lp_space(p, 3), lp_space(q, 3));
        let op = random_operator(&mut r, &d, &c);
        let m = norm_attainment_set(&op, &t, k as u64).unwrap();
        let x = &m.points[0];
        let y0 = rng::normal_vec(&mut r, 3);
        let a = james_left_companion(&d, x, &y0, &t).unwrap();
        let y = d.normalize(&comb(&y0, a, x)).unwrap();
        let (w, norm, support) = s1_witness(&op, x, &y, &t).unwrap().expect("Ty != 0");
        assert!(op_bj_orthogonal_numeric(&op, &w, &t, k as u64).unwrap().orthogonal);
        assert!((c.norm(&w.apply(&support)) - norm).abs() <= 1e-9 * norm.max(1.0));
        assert!(w.apply(x).iter().all(|v| v.abs() < 1e-9));
    }
}

#[test]
fn kernel_always_gives_identity_orthogonality() {
    let t = tol();
    let mut r = rng::rng(23);
    for k in 0..30 {
        let p = [1.5, 2.0, 3.0, 1.0, f64::INFINITY][k % 5];
        let s = lp_space(p, 3);
        let rows = random_rows(&mut r, 3, 2);
        let rows: Vec<Vec<f64>> = rows.iter().map(|row| vec![row[0], row[1], row[0] - row[1]]).collect();
        let op = LinearOperator::from_rows(&rows, s.clone(), s).unwrap();
        let ki = kernel_identity_test(&op, &t, k as u64).unwrap();
        assert_eq!(ki.nullity, 1);
        assert!(ki.identity_orthogonal.orthogonal);
        assert!(ki.identity_orthogonal.min_value >= 1.0 - 1e-9);
        let u = ki.kernel_vector;
        assert!(op.apply(&u).iter().all(|v| v.abs() < 1e-9));
    }
}

#[test]
fn right_witnesses_pass_the_oracle() {
    let t = tol();
    let mut r = rng::rng(24);
    let mut found = 0;
    for k in 0..12 {
        let p = [1.5, 2.0, 3.0][k % 3];
        let s = lp_space(p, 3);
        let op = random_operator(&mut r, &s, &s);
        let report = falsify_right_symmetric_op(&op, 200, k as u64, &t).unwrap();
        assert_eq!(report.direction, Direction::Right);
        if let (Some(a), Some(refuted)) = (report.witness_operator(), &report.refuted) {
            oracle_witness(a, &op, refuted.minimizer).unwrap_or_else(|e| panic!("instance {k}: {e}"));
            found += 1;
        }
    }
    assert_eq!(found, 12);
}

#[test]
fn identity_is_right_symmetric_within_budget() {
    let s = lp_space(3.0, 2);
    let report = falsify_right_symmetric_op(&LinearOperator::identity(s), 40, 5, &tol()).unwrap();
    assert!(report.is_symmetric_within_budget());
    assert_eq!(report.trials_used, 40);
}

#[test]
fn every_suite_passes_at_small_scale() {
    for id in THEOREM_IDS {
        let cfg = SuiteConfig {
            trials: 3,
            budget: 200,
            seed: 31,
            ..SuiteConfig::default()
        };
        let report = verify_theorem(id, &cfg).unwrap();
        assert!(
            report.status != Outcome::Fail,
            "{id}: {:?}",
            report.trials.iter().find(|t| t.outcome == Outcome::Fail)
        );
        assert_eq!(report.pass, report.status == Outcome::Pass);
    }
}

#[test]
fn suites_are_deterministic() {
    let cfg = SuiteConfig {
        trials: 4,
        seed: 9,
        ..SuiteConfig::default()
    };
    let a = verify_theorem("th-3.1", &cfg).unwrap();
    let b = verify_theorem("th-3.1", &cfg).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn space_override_is_respected() {
    let cfg = SuiteConfig {
        trials: 5,
        spaces: vec![Space::l2(2)],
        ..SuiteConfig::default()
    };
    let report = verify_theorem("lemma-2.5", &cfg).unwrap();
    assert_eq!(report.trials.len(), 5);
    assert!(report.trials.iter().all(|t| t.family == "l2^2"));
}
