//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fdt_emden::oracle::caputo_power_derivative;
use fdt_emden::{
    caputo_transform, cauchy_product, choose_grid, gamma, index_of, polynomial_of_u,
    reference_lane_emden, residual, solve, CoeffSeq, ProblemSpec, RationalOrder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(n: i64, d: i64) -> RationalOrder {
    RationalOrder::new(n, d).unwrap()
}

fn linear(beta: RationalOrder) -> ProblemSpec {
    ProblemSpec::linear(beta, 1.0).unwrap()
}

fn block(beta: RationalOrder) -> usize {
    let p = linear(beta);
    2 * index_of(beta, choose_grid(&p).unwrap()).unwrap()
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn check(cond: bool, ok: String, bad: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

/// Lane-Emden coefficients (-1)^k/(2k+1)!, odd entries exactly zero.
fn c1_lane_emden_coefficients() -> Outcome {
    let start = Instant::now();
    let s = solve(&linear(RationalOrder::ONE), 24).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let u = s.coeffs().coeffs();
    let mut worst = 0.0f64;
    for k in 0..=12u32 {
        let want = if k % 2 == 0 { 1.0 } else { -1.0 } / factorial(2 * k + 1);
        worst = worst.max(rel_err(u[2 * k as usize], want));
    }
    let odd_zero = u.iter().skip(1).step_by(2).all(|&c| c == 0.0);
    check(
        worst <= 1e-13 && odd_zero && elapsed < Duration::from_secs(1),
        format!("max rel err {worst:.2e} <= 1e-13, odd entries zero, {elapsed:?}"),
        format!("max rel err {worst:.2e}, odd zero = {odd_zero}, {elapsed:?}"),
    )
}

/// Evaluated series vs sin t / t.
fn c2_exact_solution() -> Outcome {
    let s = solve(&linear(RationalOrder::ONE), 24).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for t in [0.25f64, 0.5, 1.0] {
        let exact = t.sin() / t;
        worst = worst.max((s.evaluate(t).map_err(|e| e.to_string())? - exact).abs());
    }
    check(
        worst <= 1e-10,
        format!("max |u - sin t/t| = {worst:.2e} <= 1e-10"),
        format!("max error {worst:.2e}"),
    )
}

/// Only indices divisible by 2b are nonzero.
fn c3_zero_pattern() -> Outcome {
    let mut notes = Vec::new();
    for beta in [r(3, 4), r(3, 5), r(9, 10)] {
        let m = block(beta);
        let s = solve(&linear(beta), 10 * m).map_err(|e| e.to_string())?;
        let u = s.coeffs().coeffs();
        if let Some(k) = (0..u.len()).find(|&k| k % m != 0 && u[k] != 0.0) {
            return Err(format!("beta {beta}: U({k}) = {:e} should be 0", u[k]));
        }
        if (0..u.len()).step_by(m).any(|k| u[k] == 0.0) {
            return Err(format!("beta {beta}: a block coefficient vanished"));
        }
        notes.push(format!("{beta}: K={}", 10 * m));
    }
    Ok(notes.join(", "))
}

/// First nonzero step against Γ-expression evaluated directly.
fn c4_first_step_closed_form() -> Outcome {
    let b = 0.75;
    let g2b = gamma(2.0 * b + 1.0).map_err(|e| e.to_string())?;
    let gb = gamma(b + 1.0).map_err(|e| e.to_string())?;
    let want = -1.0 / (g2b + 2.0 * g2b / gb);
    let s = solve(&linear(r(3, 4)), 6).map_err(|e| e.to_string())?;
    let got = s.coeffs().coeffs()[6];
    let e = rel_err(got, want);
    check(
        e <= 1e-12,
        format!("U(6) = {got:.10} vs {want:.10}, rel {e:.2e} <= 1e-12"),
        format!("U(6) = {got} vs {want}, rel {e:.2e}"),
    )
}

/// Residual drops at least 10x from K = 16 to K = 32; β = 1 at K = 20 below 1e-12.
fn c5_residual() -> Outcome {
    let pts = [0.05, 0.1, 0.2];
    let mut notes = Vec::new();
    for beta in [r(3, 5), r(2, 3), r(3, 4), r(4, 5)] {
        let p = linear(beta);
        let r16 = residual(&solve(&p, 16).unwrap(), &pts)
            .unwrap()
            .max_abs_residual;
        let r32 = residual(&solve(&p, 32).unwrap(), &pts)
            .unwrap()
            .max_abs_residual;
        if r16 < 10.0 * r32 || r16.is_nan() {
            return Err(format!("beta {beta}: K=16 {r16:.2e}, K=32 {r32:.2e}"));
        }
        notes.push(format!("{beta}: {:.1e}x", r16 / r32));
    }
    let s = solve(&linear(RationalOrder::ONE), 20).unwrap();
    let grid: Vec<f64> = (1..=20).map(|i| i as f64 / 20.0).collect();
    let r1 = residual(&s, &grid).unwrap().max_abs_residual;
    if r1 > 1e-12 {
        return Err(format!("beta 1: residual {r1:.2e} > 1e-12"));
    }
    notes.push(format!("beta 1 K=20: {r1:.1e}"));
    Ok(notes.join(", "))
}

/// Random sequence on grid 1/q whose fractional powers below `lambda` vanish.
fn random_caputo_case(rng: &mut ChaCha8Rng) -> (CoeffSeq, RationalOrder) {
    let q = rng.gen_range(1..=8u64);
    let alpha = r(1, q as i64);
    let b = rng.gen_range(1..=2 * q);
    let lambda = alpha.checked_mul_int(b).unwrap();
    let len = rng.gen_range(b as usize + 1..=b as usize + 24);
    let coeffs = (0..len)
        .map(|k| {
            let e = alpha.checked_mul_int(k as u64).unwrap();
            if e < lambda && !e.is_integer() {
                0.0
            } else {
                rng.gen_range(-2.0..2.0)
            }
        })
        .collect();
    (CoeffSeq::new(alpha, coeffs).unwrap(), lambda)
}

fn c6_dual_caputo() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let (s, lambda) = random_caputo_case(&mut rng);
        let a = caputo_transform(&s, lambda).map_err(|e| format!("case {case}: {e}"))?;
        let b = caputo_power_derivative(&s, lambda).map_err(|e| format!("case {case}: {e}"))?;
        if a.len() != b.len() {
            return Err(format!("case {case}: lengths {} vs {}", a.len(), b.len()));
        }
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            worst = worst.max(rel_err(*x, *y));
        }
    }
    check(
        worst <= 1e-12,
        format!("200 pairs, max rel diff {worst:.2e} <= 1e-12"),
        format!("max rel diff {worst:.2e}"),
    )
}

/// Full (untruncated) polynomial product.
fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expands sum c_m u^m by full products, then truncates.
fn brute_poly_of_u(u: &[f64], poly: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut acc = vec![0.0; n];
    let mut power = vec![1.0];
    for (m, c) in poly.iter().enumerate() {
        if m > 0 {
            power = poly_mul(&power, u);
        }
        for (a, p) in acc.iter_mut().zip(&power) {
            *a += c * p;
        }
    }
    acc
}

fn close(got: &[f64], want: &[f64], scale: &[f64]) -> f64 {
    got.iter()
        .zip(want)
        .zip(scale)
        .map(|((g, w), s)| {
            if *s == 0.0 {
                g.abs()
            } else {
                (g - w).abs() / s
            }
        })
        .fold(0.0, f64::max)
}

fn c7_algebra_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let q = rng.gen_range(1..=6);
        let alpha = r(1, q);
        let n = rng.gen_range(1..=16);
        let m = rng.gen_range(1..=16);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = cauchy_product(
            &CoeffSeq::new(alpha, a.clone()).unwrap(),
            &CoeffSeq::new(alpha, b.clone()).unwrap(),
        )
        .unwrap();
        let len = n.min(m);
        if got.len() != len {
            return Err(format!("product length {} != {len}", got.len()));
        }
        let want = poly_mul(&a, &b);
        let abs_a: Vec<f64> = a.iter().map(|x| x.abs()).collect();
        let abs_b: Vec<f64> = b.iter().map(|x| x.abs()).collect();
        let scale = poly_mul(&abs_a, &abs_b);
        worst = worst.max(close(got.coeffs(), &want[..len], &scale[..len]));

        let degree = rng.gen_range(0..=4);
        let poly: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = polynomial_of_u(&CoeffSeq::new(alpha, a.clone()).unwrap(), &poly).unwrap();
        let want = brute_poly_of_u(&a, &poly);
        let abs_poly: Vec<f64> = poly.iter().map(|x| x.abs()).collect();
        let scale = brute_poly_of_u(&abs_a, &abs_poly);
        worst = worst.max(close(got.coeffs(), &want, &scale));
    }
    check(
        worst <= 1e-12,
        format!("500 instances, max rel err {worst:.2e} <= 1e-12"),
        format!("max rel err {worst:.2e}"),
    )
}

/// Fractional solutions approach sin t / t as β -> 1.
///
/// Each truncation holds 41 nonzero terms: K = 40 * (2β/α), which is K = 80
/// grid steps at β = 1.
fn c8_beta_to_one() -> Outcome {
    let t = 0.5;
    let exact = reference_lane_emden(t);
    let err = |beta: RationalOrder| -> Result<(usize, f64), String> {
        let k = 40 * block(beta);
        let s = solve(&linear(beta), k).map_err(|e| e.to_string())?;
        Ok((k, (s.evaluate(t).map_err(|e| e.to_string())? - exact).abs()))
    };
    let (k_hi, near) = err(r(99, 100))?;
    let (k_lo, far) = err(r(3, 5))?;
    check(
        near < far,
        format!("|err| beta 99/100 (K={k_hi}) {near:.3e} < beta 3/5 (K={k_lo}) {far:.3e}"),
        format!("beta 99/100 {near:.3e} vs beta 3/5 {far:.3e}"),
    )
}

fn c9_gamma_reference() -> Outcome {
    let sqrt_pi = PI.sqrt();
    let cases = [
        (0.5, sqrt_pi),
        (1.0, 1.0),
        (1.5, sqrt_pi / 2.0),
        (2.5, 0.75 * sqrt_pi),
        (5.0, factorial(4)),
        // Γ(1/4) ∏_{j=0}^{9} (j + 1/4), to 20 digits
        (10.25, 639_232.598_779_576_8),
        (20.0, factorial(19)),
    ];
    let mut worst = 0.0f64;
    for (x, want) in cases {
        worst = worst.max(rel_err(gamma(x).map_err(|e| e.to_string())?, want));
    }
    check(
        worst <= 1e-12,
        format!("max rel err {worst:.2e} <= 1e-12"),
        format!("max rel err {worst:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 Lane-Emden coefficients", c1_lane_emden_coefficients),
        ("2 exact solution sin t / t", c2_exact_solution),
        ("3 fractional zero pattern", c3_zero_pattern),
        ("4 first-step closed form", c4_first_step_closed_form),
        ("5 residual decay", c5_residual),
        ("6 dual Caputo formulas", c6_dual_caputo),
        ("7 algebra vs brute force", c7_algebra_oracles),
        ("8 beta -> 1 consistency", c8_beta_to_one),
        ("9 gamma reference values", c9_gamma_reference),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("PASS  criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
