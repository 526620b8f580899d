use fdt_emden::algebra::shift_divide_default;
use fdt_emden::oracle::caputo_power_derivative;
use fdt_emden::{
    caputo_transform, cauchy_product, evaluate, gamma_ratio, monomial_transform, polynomial_of_u,
    residual, solve, CoeffSeq, Monomial, ProblemSpec, RationalOrder,
};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> RationalOrder {
    RationalOrder::new(n, d).unwrap()
}

fn grid() -> impl Strategy<Value = RationalOrder> {
    (1i64..=8).prop_map(|q| r(1, q))
}

fn seq_on(alpha: RationalOrder, max_len: usize) -> impl Strategy<Value = CoeffSeq> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_len)
        .prop_map(move |c| CoeffSeq::new(alpha, c).unwrap())
}

fn seq_pair(max_len: usize) -> impl Strategy<Value = (CoeffSeq, CoeffSeq)> {
    grid().prop_flat_map(move |a| (seq_on(a, max_len), seq_on(a, max_len)))
}

fn seq_triple(max_len: usize) -> impl Strategy<Value = (CoeffSeq, CoeffSeq, CoeffSeq)> {
    grid().prop_flat_map(move |a| (seq_on(a, max_len), seq_on(a, max_len), seq_on(a, max_len)))
}

fn assert_close(a: &CoeffSeq, b: &CoeffSeq, tol: f64) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.len(), b.len());
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        prop_assert!(
            (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0),
            "{} vs {}",
            x,
            y
        );
    }
    Ok(())
}

proptest! {
    #[test]
    fn cauchy_commutes((a, b) in seq_pair(16)) {
        assert_close(&cauchy_product(&a, &b).unwrap(), &cauchy_product(&b, &a).unwrap(), 1e-12)?;
    }

    #[test]
    fn cauchy_associates((a, b, c) in seq_triple(16)) {
        let left = cauchy_product(&cauchy_product(&a, &b).unwrap(), &c).unwrap();
        let right = cauchy_product(&a, &cauchy_product(&b, &c).unwrap()).unwrap();
        assert_close(&left, &right, 1e-12)?;
    }

    #[test]
    fn cauchy_distributes((a, b, c) in seq_triple(16)) {
        let left = cauchy_product(&a, &b.add(&c).unwrap()).unwrap();
        let right = cauchy_product(&a, &b).unwrap().add(&cauchy_product(&a, &c).unwrap()).unwrap();
        assert_close(&left, &right, 1e-12)?;
    }

    #[test]
    fn caputo_of_monomial_is_power_rule(q in 1i64..=6, j in 0usize..30, b in 1u64..12) {
        let alpha = r(1, q);
        prop_assume!(j as u64 >= b);
        let beta = alpha.checked_mul_int(b).unwrap();
        let e = alpha.checked_mul_int(j as u64).unwrap();
        let k = j + 3;
        let image = caputo_transform(&monomial_transform(&Monomial::new(1.0, e), alpha, k).unwrap(), beta).unwrap();
        // t^e -> Γ(e+1)/Γ(e-β+1) t^{e-β}
        let want = gamma_ratio(e.to_f64() + 1.0, e.to_f64() - beta.to_f64() + 1.0).unwrap();
        let at = j - b as usize;
        for (i, &c) in image.coeffs().iter().enumerate() {
            if i == at {
                prop_assert!((c - want).abs() <= 1e-11 * want.abs());
            } else {
                prop_assert_eq!(c, 0.0);
            }
        }
    }

    #[test]
    fn shift_divide_of_monomial(q in 1i64..=6, s in 0u64..10, extra in 0u64..10, c in -5.0f64..5.0) {
        let alpha = r(1, q);
        let rr = alpha.checked_mul_int(s).unwrap();
        let top = alpha.checked_mul_int(s + extra).unwrap();
        let k = (s + extra + 4) as usize;
        let g = monomial_transform(&Monomial::new(c, top), alpha, k).unwrap();
        let shifted = shift_divide_default(&g, rr).unwrap();
        let want = monomial_transform(&Monomial::new(c, alpha.checked_mul_int(extra).unwrap()), alpha, k - s as usize).unwrap();
        prop_assert_eq!(shifted, want);
    }

    #[test]
    fn evaluate_is_linear((a, b) in seq_pair(20), x in -3.0f64..3.0, y in -3.0f64..3.0, t in 0.0f64..1.5) {
        let combo = a.scale(x).add(&b.scale(y)).unwrap();
        let n = combo.len() - 1;
        let lhs = evaluate(&combo, t).unwrap();
        let rhs = x * evaluate(&a.truncate(n), t).unwrap() + y * evaluate(&b.truncate(n), t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()) * (n as f64 + 1.0));
    }

    #[test]
    fn polynomial_of_u_is_prefix_causal(
        (u, k) in grid().prop_flat_map(|a| seq_on(a, 16)).prop_flat_map(|u| { let n = u.len(); (Just(u), 0..n) }),
        poly in prop::collection::vec(-1.0f64..1.0, 1..5),
    ) {
        let full = polynomial_of_u(&u, &poly).unwrap();
        let cut = polynomial_of_u(&u.truncate(k), &poly).unwrap();
        prop_assert_eq!(&full.coeffs()[..=k], cut.coeffs());
    }

    #[test]
    fn power_rule_matches_transform_for_solutions(p in 6i64..=10, a in 0.2f64..3.0) {
        // β = p/10 on (1/2, 1]
        let beta = r(p, 10);
        let sol = solve(&ProblemSpec::linear(beta, a).unwrap(), 60).unwrap();
        for lambda in [beta, beta.checked_mul_int(2).unwrap()] {
            let x = caputo_transform(sol.coeffs(), lambda).unwrap();
            let y = caputo_power_derivative(sol.coeffs(), lambda).unwrap();
            assert_close(&x, &y, 1e-12)?;
        }
    }
}

#[test]
fn nonlinear_problem_residual_shrinks() {
    // f = 1 + t^{1/2}/2, g(u) = u^3
    let p = ProblemSpec::new(
        r(2, 3),
        1.0,
        vec![Monomial::constant(1.0), Monomial::new(0.5, r(1, 2))],
        vec![0.0, 0.0, 0.0, 1.0],
    )
    .unwrap();
    let pts = [0.05, 0.1, 0.2];
    let coarse = residual(&solve(&p, 24).unwrap(), &pts)
        .unwrap()
        .max_abs_residual;
    let fine = residual(&solve(&p, 48).unwrap(), &pts)
        .unwrap()
        .max_abs_residual;
    assert!(fine * 10.0 <= coarse, "{coarse:e} -> {fine:e}");
}

#[test]
fn nonlinear_lane_emden_matches_classic_series() {
    // u'' + (2/t) u' + u^n = 0 has u = 1 - t^2/6 + n t^4/120 + ...
    for n in 1..=5 {
        let mut g = vec![0.0; n + 1];
        g[n] = 1.0;
        let p =
            ProblemSpec::new(RationalOrder::ONE, 1.0, vec![Monomial::constant(1.0)], g).unwrap();
        let c = solve(&p, 6).unwrap().coeffs().coeffs().to_vec();
        assert!((c[2] + 1.0 / 6.0).abs() < 1e-15);
        assert!((c[4] - n as f64 / 120.0).abs() < 1e-15, "n = {n}: {}", c[4]);
    }
    // n = 0: u = 1 - t^2/6 exactly
    let p = ProblemSpec::new(
        RationalOrder::ONE,
        1.0,
        vec![Monomial::constant(1.0)],
        vec![1.0],
    )
    .unwrap();
    let c = solve(&p, 10).unwrap().coeffs().coeffs().to_vec();
    assert!((c[2] + 1.0 / 6.0).abs() < 1e-15);
    assert!(c[3..].iter().all(|&x| x == 0.0));
}
