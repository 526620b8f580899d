//! Independent checks on computed series.
//!
//! [`caputo_power_derivative`] differentiates a series term by term with the
//! Caputo power rule, written from the source exponent's point of view and
//! sharing no index arithmetic with [`crate::algebra::caputo_transform`].
//! [`residual`] substitutes a truncated solution back into the equation.

use crate::algebra::CoeffSeq;
use crate::error::{Error, Result};
use crate::gamma::{gamma, ln_gamma, MAX_ARG};
use crate::order::{index_of, RationalOrder};
use crate::solver::SeriesSolution;

/// Caputo derivative of order `lambda` of `sum_k s[k] t^(alpha k)`.
///
/// Integer powers below `lambda` are annihilated; `c t^e` with `e ≥ lambda`
/// becomes `c Γ(e+1)/Γ(e-lambda+1) t^(e-lambda)`. A fractional power below
/// `lambda` with a nonzero coefficient has no Caputo derivative of this form.
pub fn caputo_power_derivative(s: &CoeffSeq, lambda: RationalOrder) -> Result<CoeffSeq> {
    let alpha = s.alpha();
    // validates that lambda is on the grid
    index_of(lambda, alpha)?;
    let mut out: Vec<(RationalOrder, f64)> = Vec::with_capacity(s.len());
    for (k, &c) in s.coeffs().iter().enumerate() {
        let e = s.exponent(k);
        match e.checked_sub(lambda) {
            None => {
                if c != 0.0 && !e.is_integer() {
                    return Err(Error::NotCaputoDomain {
                        exponent: e,
                        order: lambda,
                    });
                }
            }
            Some(rest) => {
                let factor = if c == 0.0 {
                    0.0
                } else {
                    power_rule_factor(e.to_f64(), rest.to_f64())?
                };
                out.push((rest, c * factor));
            }
        }
    }
    let len = out
        .iter()
        .map(|(e, _)| index_of(*e, alpha))
        .try_fold(0usize, |m, i| i.map(|i| m.max(i + 1)))?;
    let mut coeffs = vec![0.0; len.max(1)];
    for (e, c) in out {
        coeffs[index_of(e, alpha)?] = c;
    }
    CoeffSeq::new(alpha, coeffs)
}

/// Γ(e + 1) / Γ(rest + 1).
fn power_rule_factor(e: f64, rest: f64) -> Result<f64> {
    if e + 1.0 <= MAX_ARG {
        Ok(gamma(e + 1.0)? / gamma(rest + 1.0)?)
    } else {
        Ok((ln_gamma(e + 1.0)? - ln_gamma(rest + 1.0)?).exp())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub sample_points: Vec<f64>,
    pub residuals: Vec<f64>,
    pub truncation_index: usize,
    pub max_abs_residual: f64,
}

/// Residual of the equation at each point for the truncated solution.
pub fn residual(sol: &SeriesSolution, points: &[f64]) -> Result<ResidualReport> {
    if let Some(&t) = points.iter().find(|&&t| t.is_nan() || t <= 0.0) {
        return Err(Error::NonPositivePoint(t));
    }
    let p = sol.problem();
    let beta = p.beta();
    let two_beta = beta
        .checked_mul_int(2)
        .ok_or_else(|| Error::InvalidOrder("2β overflows".into()))?;
    let u = sol.coeffs();
    let d2 = caputo_power_derivative(u, two_beta)?;
    let d1 = caputo_power_derivative(u, beta)?;
    let b = beta.to_f64();

    let residuals = points
        .iter()
        .map(|&t| {
            let uv = u.evaluate(t)?;
            Ok(d2.evaluate(t)? + 2.0 / t.powf(b) * d1.evaluate(t)? + p.eval_f(t) * p.eval_g(uv))
        })
        .collect::<Result<Vec<f64>>>()?;
    let max_abs_residual = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    Ok(ResidualReport {
        sample_points: points.to_vec(),
        residuals,
        truncation_index: sol.truncation_index(),
        max_abs_residual,
    })
}

/// `{t_max * 2^-j : j = 0..n}`, from the outer point inward.
pub fn geometric_points(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|j| t_max * 0.5f64.powi(j as i32)).collect()
}

/// Exact solution `sin t / t` of the integer-order linear problem with
/// `u(0) = 1`.
pub fn reference_lane_emden(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        t.sin() / t
    }
}
