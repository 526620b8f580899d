//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! The page builds a [`Demo`] per parameter set and asks it for the solution
//! curve, the coefficient table and the residual profile. All work happens in
//! [`Session`], which is plain Rust and tested natively.

use fdt_emden::oracle::{caputo_power_derivative, reference_lane_emden};
use fdt_emden::{solve, Monomial, ProblemSpec, RationalOrder, SeriesSolution};
use wasm_bindgen::prelude::*;

pub struct Session {
    sol: SeriesSolution,
}

impl Session {
    /// `f(t) = f_coeff * t^f_exponent`, `g(u) = sum g[m] u^m`.
    pub fn new(
        beta: &str,
        a: f64,
        f_coeff: f64,
        f_exponent: &str,
        g: Vec<f64>,
        order: usize,
    ) -> Result<Self, String> {
        let beta: RationalOrder = beta.parse().map_err(|e| format!("beta: {e}"))?;
        let exponent: RationalOrder = f_exponent.parse().map_err(|e| format!("f exponent: {e}"))?;
        let problem = ProblemSpec::new(beta, a, vec![Monomial::new(f_coeff, exponent)], g)
            .map_err(|e| e.to_string())?;
        let min = problem.min_truncation().map_err(|e| e.to_string())?;
        let sol = solve(&problem, order.max(min)).map_err(|e| e.to_string())?;
        Ok(Session { sol })
    }

    pub fn alpha(&self) -> String {
        self.sol.alpha().to_string()
    }

    pub fn order(&self) -> usize {
        self.sol.truncation_index()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.sol.coeffs().coeffs().to_vec()
    }

    /// `u(t)` at `points` uniformly spaced values on `[0, t_max]`.
    pub fn curve(&self, t_max: f64, points: usize) -> Result<Vec<f64>, String> {
        grid(t_max, points)
            .map(|t| self.sol.evaluate(t).map_err(|e| e.to_string()))
            .collect()
    }

    /// `log10 |R(t)|` on the same grid, skipping t = 0 (reported as NaN).
    pub fn residual_profile(&self, t_max: f64, points: usize) -> Result<Vec<f64>, String> {
        let p = self.sol.problem();
        let beta = p.beta();
        let err = |e: fdt_emden::Error| e.to_string();
        let u = self.sol.coeffs();
        let d2 = caputo_power_derivative(u, beta.checked_mul_int(2).ok_or("2β overflows")?)
            .map_err(err)?;
        let d1 = caputo_power_derivative(u, beta).map_err(err)?;
        let b = beta.to_f64();
        grid(t_max, points)
            .map(|t| {
                if t == 0.0 {
                    return Ok(f64::NAN);
                }
                let uv = u.evaluate(t).map_err(err)?;
                let r = d2.evaluate(t).map_err(err)?
                    + 2.0 / t.powf(b) * d1.evaluate(t).map_err(err)?
                    + p.eval_f(t) * p.eval_g(uv);
                Ok(r.abs().max(1e-300).log10())
            })
            .collect()
    }
}

fn grid(t_max: f64, points: usize) -> impl Iterator<Item = f64> {
    let n = points.max(2);
    (0..n).map(move |i| t_max * i as f64 / (n - 1) as f64)
}

pub fn reference_points(t_max: f64, points: usize) -> Vec<f64> {
    grid(t_max, points).map(reference_lane_emden).collect()
}

#[wasm_bindgen]
pub struct Demo {
    inner: Session,
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(
        beta: &str,
        a: f64,
        f_coeff: f64,
        f_exponent: &str,
        g: Vec<f64>,
        order: usize,
    ) -> Result<Demo, JsError> {
        Session::new(beta, a, f_coeff, f_exponent, g, order)
            .map(|inner| Demo { inner })
            .map_err(|e| JsError::new(&e))
    }

    pub fn alpha(&self) -> String {
        self.inner.alpha()
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.inner.coefficients()
    }

    pub fn curve(&self, t_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
        self.inner
            .curve(t_max, points)
            .map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = residualProfile)]
    pub fn residual_profile(&self, t_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
        self.inner
            .residual_profile(t_max, points)
            .map_err(|e| JsError::new(&e))
    }
}

/// `sin t / t` on the uniform grid.
#[wasm_bindgen(js_name = referenceCurve)]
pub fn reference_curve(t_max: f64, points: usize) -> Vec<f64> {
    reference_points(t_max, points)
}
