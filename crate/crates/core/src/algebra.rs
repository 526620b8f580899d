//! Coefficient sequences of fractional power series and the transform rules
//! that act on them.
//!
//! A [`CoeffSeq`] on grid `alpha` stands for the truncated series
//! `sum_k U(k) t^(alpha k)` about the origin. Each rule maps an operation on
//! functions (multiplication by a power, products, division by a power,
//! Caputo differentiation) to an operation on coefficients.
//!
//! Binary operations return the shortest length both inputs determine; they
//! never pad.

use crate::error::{Error, Result};
use crate::gamma::gamma_ratio;
use crate::order::{index_of, RationalOrder};

/// Truncated fractional power series about t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    alpha: RationalOrder,
    coeffs: Vec<f64>,
}

impl CoeffSeq {
    pub fn new(alpha: RationalOrder, coeffs: Vec<f64>) -> Result<Self> {
        if alpha.is_zero() || alpha > RationalOrder::ONE {
            return Err(Error::InvalidSequence(format!(
                "grid step {alpha} not in (0, 1]"
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidSequence("empty coefficient list".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "coefficient {i} is not finite"
            )));
        }
        Ok(CoeffSeq { alpha, coeffs })
    }

    pub fn zeros(alpha: RationalOrder, len: usize) -> Result<Self> {
        Self::new(alpha, vec![0.0; len.max(1)])
    }

    pub fn alpha(&self) -> RationalOrder {
        self.alpha
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Highest index K; the sequence holds K + 1 entries.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Exponent `alpha * k` as an exact fraction.
    pub fn exponent(&self, k: usize) -> RationalOrder {
        self.alpha
            .checked_mul_int(k as u64)
            .expect("grid exponent overflows u64")
    }

    /// The first `k + 1` coefficients.
    pub fn truncate(&self, k: usize) -> CoeffSeq {
        let n = (k + 1).min(self.coeffs.len());
        CoeffSeq {
            alpha: self.alpha,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Element-wise sum, truncated to the shorter input.
    pub fn add(&self, other: &CoeffSeq) -> Result<CoeffSeq> {
        check_grid(self, other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CoeffSeq {
            alpha: self.alpha,
            coeffs,
        })
    }

    pub fn scale(&self, c: f64) -> CoeffSeq {
        CoeffSeq {
            alpha: self.alpha,
            coeffs: self.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        evaluate(self, t)
    }
}

/// `coefficient * t^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coefficient: f64,
    pub exponent: RationalOrder,
}

impl Monomial {
    pub fn new(coefficient: f64, exponent: RationalOrder) -> Self {
        Monomial {
            coefficient,
            exponent,
        }
    }

    pub fn constant(c: f64) -> Self {
        Monomial::new(c, RationalOrder::ZERO)
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.exponent.is_zero() {
            self.coefficient
        } else {
            self.coefficient * t.powf(self.exponent.to_f64())
        }
    }
}

fn check_grid(a: &CoeffSeq, b: &CoeffSeq) -> Result<()> {
    if a.alpha != b.alpha {
        return Err(Error::GridMismatch {
            left: a.alpha,
            right: b.alpha,
        });
    }
    Ok(())
}

/// Image of `c * t^r`: a Kronecker delta at `r / alpha` scaled by `c`.
pub fn monomial_transform(m: &Monomial, alpha: RationalOrder, k_max: usize) -> Result<CoeffSeq> {
    let j = index_of(m.exponent, alpha)?;
    if j > k_max {
        return Err(Error::InvalidSequence(format!(
            "monomial t^{} sits at index {j}, beyond truncation {k_max}",
            m.exponent
        )));
    }
    let mut coeffs = vec![0.0; k_max + 1];
    coeffs[j] = m.coefficient;
    CoeffSeq::new(alpha, coeffs)
}

/// Image of a product `g * h`: the truncated Cauchy convolution.
pub fn cauchy_product(g: &CoeffSeq, h: &CoeffSeq) -> Result<CoeffSeq> {
    check_grid(g, h)?;
    let n = g.len().min(h.len());
    let coeffs = (0..n)
        .map(|k| (0..=k).map(|l| g.coeffs[l] * h.coeffs[k - l]).sum())
        .collect();
    Ok(CoeffSeq {
        alpha: g.alpha,
        coeffs,
    })
}

/// Tolerance used by [`shift_divide_default`]: `1e-12 * max |g|`.
pub fn default_drop_tolerance(g: &CoeffSeq) -> f64 {
    1e-12 * g.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
}

/// Image of `g / t^r`: shift left by `s = r / alpha`.
///
/// The `s` dropped leading coefficients must vanish (within `tol`),
/// otherwise the quotient is not a series of this kind.
pub fn shift_divide(g: &CoeffSeq, r: RationalOrder, tol: f64) -> Result<CoeffSeq> {
    let s = index_of(r, g.alpha)?;
    if s > g.order() {
        return Err(Error::InvalidSequence(format!(
            "shift {s} exceeds truncation {}",
            g.order()
        )));
    }
    if let Some((index, &value)) = g.coeffs[..s]
        .iter()
        .enumerate()
        .find(|(_, c)| c.abs() > tol)
    {
        return Err(Error::NegativePowerTerms { index, value });
    }
    Ok(CoeffSeq {
        alpha: g.alpha,
        coeffs: g.coeffs[s..].to_vec(),
    })
}

pub fn shift_divide_default(g: &CoeffSeq, r: RationalOrder) -> Result<CoeffSeq> {
    shift_divide(g, r, default_drop_tolerance(g))
}

/// Image of the Caputo derivative of order `beta`:
/// `F(k) = Γ(αk + β + 1) / Γ(αk + 1) * G(k + β/α)`.
pub fn caputo_transform(g: &CoeffSeq, beta: RationalOrder) -> Result<CoeffSeq> {
    let b = index_of(beta, g.alpha)?;
    if b > g.order() {
        return Err(Error::InvalidSequence(format!(
            "derivative order {beta} needs index {b}, beyond truncation {}",
            g.order()
        )));
    }
    let alpha = g.alpha.to_f64();
    let beta = beta.to_f64();
    let coeffs = (0..=g.order() - b)
        .map(|k| {
            let ak = alpha * k as f64;
            let c = g.coeffs[k + b];
            if c == 0.0 {
                Ok(0.0)
            } else {
                Ok(gamma_ratio(ak + beta + 1.0, ak + 1.0)? * c)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoeffSeq {
        alpha: g.alpha,
        coeffs,
    })
}

/// Image of `g(u) = sum_m poly[m] * u^m`, via repeated Cauchy products.
///
/// Entry k of the result depends only on `u[0..=k]`.
pub fn polynomial_of_u(u: &CoeffSeq, poly: &[f64]) -> Result<CoeffSeq> {
    if poly.is_empty() {
        return Err(Error::InvalidProblem("empty polynomial".into()));
    }
    let n = u.len();
    let mut power = vec![0.0; n];
    power[0] = 1.0;
    let mut power = CoeffSeq {
        alpha: u.alpha,
        coeffs: power,
    };
    let mut acc = vec![0.0; n];
    for (m, &c) in poly.iter().enumerate() {
        if m > 0 {
            power = cauchy_product(&power, u)?;
        }
        if c != 0.0 {
            for (a, p) in acc.iter_mut().zip(&power.coeffs) {
                *a += c * p;
            }
        }
    }
    CoeffSeq::new(u.alpha, acc)
}

/// Inverse transform: `sum_k s[k] * t^(alpha k)`, Neumaier-compensated.
///
/// At t = 0 only the constant term survives.
pub fn evaluate(s: &CoeffSeq, t: f64) -> Result<f64> {
    if t < 0.0 && !s.alpha.is_integer() {
        return Err(Error::NegativeBase(t));
    }
    if t == 0.0 {
        return Ok(s.coeffs[0]);
    }
    let (num, den) = (s.alpha.numerator() as f64, s.alpha.denominator() as f64);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (k, &c) in s.coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let term = if k == 0 {
            c
        } else {
            c * t.powf(k as f64 * num / den)
        };
        let next = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - next) + term;
        } else {
            comp += (term - next) + sum;
        }
        sum = next;
    }
    Ok(sum + comp)
}
