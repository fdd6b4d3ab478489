mod common;

use birkhoff::operator::{exact_norm, norm_attainment_set, operator_norm_numeric, rank_one, NormEvaluator};
use birkhoff::orthogonality::{bj_orthogonal, in_cone, ConeSign, Method};
use birkhoff::space::{is_smooth_point, norming_functionals, sample_unit_sphere, Functional, Vector};
use birkhoff::{LinearOperator, Space, Tolerances};
use proptest::prelude::*;

use common::{comb, lp};

fn space_strategy() -> impl Strategy<Value = Space> {
    (prop::sample::select(vec![1.0, 1.25, 1.5, 2.0, 3.0, 4.0, f64::INFINITY]), 2usize..=5)
        .prop_map(|(p, n)| Space::lp(p, n).unwrap())
}

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, n)
}

fn space_and_vectors() -> impl Strategy<Value = (Space, Vec<f64>, Vec<f64>)> {
    space_strategy().prop_flat_map(|s| {
        let n = s.dim();
        (Just(s), vec_strategy(n), vec_strategy(n))
    })
}

fn operator_strategy(dims: (usize, usize)) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-3.0f64..3.0, dims.1), dims.0)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_axioms((s, x, y) in space_and_vectors(), a in -5.0f64..5.0) {
        let ax: Vec<f64> = x.iter().map(|v| a * v).collect();
        prop_assert!((s.norm(&ax) - a.abs() * s.norm(&x)).abs() <= 1e-12 * (1.0 + a.abs() * s.norm(&x)));
        prop_assert!(s.norm(&comb(&x, 1.0, &y)) <= s.norm(&x) + s.norm(&y) + 1e-12);
    }

    #[test]
    fn norm_matches_independent_formula((s, x, _y) in space_and_vectors()) {
        let p = s.exponent().unwrap();
        prop_assert!((s.norm(&x) - lp(&x, p)).abs() <= 1e-12 * (1.0 + lp(&x, p)));
    }

    #[test]
    fn norming_functionals_are_norming((s, x, y) in space_and_vectors(), seed in 0u64..1000) {
        prop_assume!(s.norm(&x) > 1e-6);
        let j = norming_functionals(&s, &x, 1e-12).unwrap();
        let nx = s.norm(&x);
        let mut members = j.sample_members(8, seed);
        members.push(j.argsupport(&y));
        members.push(j.arglower(&y));
        for f in members {
            prop_assert!((s.dual_norm(&f) - 1.0).abs() <= 1e-10);
            let fx: f64 = f.iter().zip(&x).map(|(a, b)| a * b).sum();
            prop_assert!((fx - nx).abs() <= 1e-10 * nx.max(1.0));
        }
    }

    #[test]
    fn direct_sum_norm_is_sum_of_parts(x in vec_strategy(5), p in prop::sample::select(vec![1.5, 2.0, 3.0])) {
        let left = Space::lp(p, 3).unwrap();
        let right = Space::l2(2);
        let s = Space::sum1(left.clone(), right.clone());
        let expected = left.norm(&x[..3]) + right.norm(&x[3..]);
        prop_assert!((s.norm(&x) - expected).abs() <= 1e-15 * expected.max(1.0));
    }

    #[test]
    fn profile_is_midpoint_convex((s, x, y) in space_and_vectors(), l1 in -5.0f64..5.0, l2 in -5.0f64..5.0) {
        let mid = s.norm(&comb(&x, 0.5 * (l1 + l2), &y));
        let avg = 0.5 * (s.norm(&comb(&x, l1, &y)) + s.norm(&comb(&x, l2, &y)));
        prop_assert!(mid <= avg + 1e-10);
    }

    #[test]
    fn verdict_is_scale_invariant((s, x, y) in space_and_vectors(), a in 0.1f64..10.0, b in 0.1f64..10.0, flip in any::<bool>()) {
        let b = if flip { -b } else { b };
        let v = bj_orthogonal(&s, &x, &y, Method::Analytic, &tol()).unwrap();
        let ax: Vec<f64> = x.iter().map(|t| a * t).collect();
        let by: Vec<f64> = y.iter().map(|t| b * t).collect();
        let w = bj_orthogonal(&s, &ax, &by, Method::Analytic, &tol()).unwrap();
        prop_assert_eq!(v.orthogonal, w.orthogonal);
    }

    #[test]
    fn degenerate_pairs_are_orthogonal((s, x, _y) in space_and_vectors()) {
        let zero = vec![0.0; s.dim()];
        for m in [Method::Analytic, Method::Numeric, Method::Both] {
            prop_assert!(bj_orthogonal(&s, &x, &zero, m, &tol()).unwrap().orthogonal);
            prop_assert!(bj_orthogonal(&s, &zero, &x, m, &tol()).unwrap().orthogonal);
        }
    }

    #[test]
    fn cones_grow_with_eps((s, x, y) in space_and_vectors(), e1 in 0.0f64..0.9, d in 0.0f64..0.09, plus in any::<bool>()) {
        let sign = if plus { ConeSign::Plus } else { ConeSign::Minus };
        let small = in_cone(&s, &x, &y, sign, e1, &tol()).unwrap();
        let large = in_cone(&s, &x, &y, sign, e1 + d, &tol()).unwrap();
        prop_assert!(!small.inside || large.inside);
    }

    #[test]
    fn l2_verdict_is_the_inner_product(x in vec_strategy(3), y in vec_strategy(3)) {
        let s = Space::l2(3);
        prop_assume!(s.norm(&x) > 1e-3 && s.norm(&y) > 1e-3);
        let v = bj_orthogonal(&s, &x, &y, Method::Analytic, &tol()).unwrap();
        let ip: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        prop_assert_eq!(v.orthogonal, ip.abs() <= 1e-9 * s.norm(&x) * s.norm(&y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn numeric_norm_matches_exact_paths(rows in operator_strategy((3, 3)), q in prop::sample::select(vec![1.5, 2.0, 3.0]), linf in any::<bool>(), seed in 0u64..1000) {
        let d = if linf { Space::linf(3) } else { Space::l1(3) };
        let t = LinearOperator::from_rows(&rows, d, Space::lp(q, 3).unwrap()).unwrap();
        let exact = exact_norm(&t).unwrap().value;
        let numeric = operator_norm_numeric(&t, seed).value;
        prop_assert!(numeric <= exact * (1.0 + 1e-12));
        prop_assert!(numeric >= exact * (1.0 - 1e-6));
    }

    #[test]
    fn operator_profile_is_convex(t in operator_strategy((3, 3)), a in operator_strategy((3, 3)), l1 in -3.0f64..3.0, l2 in -3.0f64..3.0) {
        let s = Space::lp(3.0, 3).unwrap();
        let c = Space::lp(1.5, 3).unwrap();
        let t = LinearOperator::from_rows(&t, s.clone(), c.clone()).unwrap();
        let a = LinearOperator::from_rows(&a, s, c).unwrap();
        let norm = |l: f64| operator_norm_numeric(&t.add_scaled(l, &a), 3).value;
        prop_assert!(norm(0.5 * (l1 + l2)) <= 0.5 * (norm(l1) + norm(l2)) + 1e-9);
    }

    #[test]
    fn attainment_set_is_antipodal_and_attains(rows in operator_strategy((3, 3)), p in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY]), seed in 0u64..100) {
        let s = Space::lp(p, 3).unwrap();
        let t = LinearOperator::from_rows(&rows, s.clone(), Space::l2(3)).unwrap();
        prop_assume!(!t.is_zero());
        let m = norm_attainment_set(&t, &tol(), seed).unwrap();
        for x in &m.points {
            prop_assert!((s.norm(x) - 1.0).abs() <= 1e-9);
            prop_assert!(Space::l2(3).norm(&t.apply(x)) >= m.norm_value * (1.0 - 1e-8));
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            prop_assert!(m.points.iter().any(|y| y.iter().zip(&neg).all(|(a, b)| (a - b).abs() < 1e-9)));
        }
        if p == 1.0 {
            let has_vertex = m.points.iter().any(|x| x.iter().filter(|v| v.abs() > 1e-12).count() == 1);
            prop_assert!(has_vertex);
        }
    }

    #[test]
    fn rank_one_with_strictly_convex_domain_has_two_point_attainment(f in vec_strategy(3), w in vec_strategy(3), p in prop::sample::select(vec![1.5, 2.0, 3.0]), seed in 0u64..100) {
        let d = Space::lp(p, 3).unwrap();
        prop_assume!(d.dual_norm(&f) > 1e-3 && Space::l2(3).norm(&w) > 1e-3);
        let t = rank_one(&Functional::new(d, f).unwrap(), &Vector::new(Space::l2(3), w).unwrap());
        let m = norm_attainment_set(&t, &tol(), seed).unwrap();
        prop_assert_eq!(m.cardinality(), Some(2));
    }
}

#[test]
fn strict_convexity_flag_is_consistent() {
    for p in [1.25, 1.5, 2.0, 3.0, 4.0] {
        let s = Space::lp(p, 3).unwrap();
        assert!(s.is_strictly_convex());
        let xs = sample_unit_sphere(&s, 1, 500);
        let ys = sample_unit_sphere(&s, 2, 500);
        for (x, y) in xs.iter().zip(&ys) {
            let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| 0.5 * (a + b)).collect();
            assert!(s.norm(&mid) < 1.0 - 1e-12, "p = {p}");
        }
    }
    for s in [Space::l1(3), Space::linf(3), Space::sum1(Space::l2(2), Space::l2(1))] {
        assert!(!s.is_strictly_convex());
    }
}

#[test]
fn smoothness_flag_is_consistent() {
    for p in [1.25, 1.5, 2.0, 3.0, 4.0] {
        let s = Space::lp(p, 4).unwrap();
        assert!(s.is_smooth());
        for x in sample_unit_sphere(&s, 3, 500) {
            assert!(is_smooth_point(&s, &x, 1e-12).unwrap().smooth);
        }
    }
    assert!(!Space::l1(2).is_smooth());
    assert!(!is_smooth_point(&Space::l1(2), &[1.0, 0.0], 1e-12).unwrap().smooth);
    assert!(!is_smooth_point(&Space::linf(2), &[1.0, 1.0], 1e-12).unwrap().smooth);
}

#[test]
fn evaluator_never_exceeds_exact_norm() {
    let t = LinearOperator::from_rows(&[vec![1.0, -2.0], vec![0.5, 0.25]], Space::l2(2), Space::l2(2)).unwrap();
    let exact = exact_norm(&t).unwrap().value;
    let mut ev = NormEvaluator::new(0);
    assert!((ev.norm(&t) - exact).abs() < 1e-12);
}
