//! Series solution of the singular fractional Emden-Fowler problem
//!
//! ```text
//! D^{2β} u + (2 / t^β) D^β u + f(t) g(u) = 0,   u(0) = A,  u'(0) = 0,
//! ```
//!
//! with Caputo derivatives, `1/2 < β ≤ 1` rational, `f` a sum of monomials
//! and `g` a polynomial. Transforming term by term gives, for every grid
//! index `k ≥ 0`,
//!
//! ```text
//! D(k) U(k + 2b) = -(F ⊛ G)(k),
//! D(k) = Γ(αk+2β+1)/Γ(αk+1) + 2 Γ(αk+2β+1)/Γ(αk+β+1),
//! ```
//!
//! where `b = β/α`. The first `2b` coefficients come from the initial data
//! and the rest follow one at a time.

use crate::algebra::{monomial_transform, CoeffSeq, Monomial};
use crate::error::{Error, Result};
use crate::gamma::gamma_ratio;
use crate::order::{index_of, select_alpha, RationalOrder};

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    beta: RationalOrder,
    initial_value: f64,
    f: Vec<Monomial>,
    g: Vec<f64>,
}

impl ProblemSpec {
    pub fn new(
        beta: RationalOrder,
        initial_value: f64,
        f: Vec<Monomial>,
        g: Vec<f64>,
    ) -> Result<Self> {
        let half = RationalOrder::new(1, 2)?;
        if beta <= half || beta > RationalOrder::ONE {
            return Err(Error::BetaOutOfRange(beta));
        }
        if !initial_value.is_finite() {
            return Err(Error::InvalidProblem(
                "initial value A is not finite".into(),
            ));
        }
        if f.is_empty() {
            return Err(Error::InvalidProblem("f has no monomials".into()));
        }
        if let Some(m) = f.iter().find(|m| !m.coefficient.is_finite()) {
            return Err(Error::InvalidProblem(format!(
                "f coefficient of t^{} is not finite",
                m.exponent
            )));
        }
        if g.is_empty() {
            return Err(Error::InvalidProblem("g has no coefficients".into()));
        }
        if g.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidProblem(
                "g has a non-finite coefficient".into(),
            ));
        }
        Ok(ProblemSpec {
            beta,
            initial_value,
            f,
            g,
        })
    }

    /// `f ≡ 1`, `g(u) = u`: the linear model problem.
    pub fn linear(beta: RationalOrder, initial_value: f64) -> Result<Self> {
        Self::new(
            beta,
            initial_value,
            vec![Monomial::constant(1.0)],
            vec![0.0, 1.0],
        )
    }

    pub fn beta(&self) -> RationalOrder {
        self.beta
    }

    pub fn initial_value(&self) -> f64 {
        self.initial_value
    }

    pub fn f(&self) -> &[Monomial] {
        &self.f
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn eval_f(&self, t: f64) -> f64 {
        self.f.iter().map(|m| m.eval(t)).sum()
    }

    pub fn eval_g(&self, u: f64) -> f64 {
        self.g.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    /// Smallest admissible truncation index, `2β/α`.
    pub fn min_truncation(&self) -> Result<usize> {
        let alpha = choose_grid(self)?;
        Ok(2 * index_of(self.beta, alpha)?)
    }
}

/// Grid step for a problem: `1/L` with `L` the lcm of the denominators of
/// β, 2β, 1 and every exponent in `f`.
pub fn choose_grid(p: &ProblemSpec) -> Result<RationalOrder> {
    let two_beta = p
        .beta
        .checked_mul_int(2)
        .ok_or_else(|| Error::InvalidOrder("2β overflows".into()))?;
    let mut orders = vec![p.beta, two_beta, RationalOrder::ONE];
    orders.extend(p.f.iter().map(|m| m.exponent).filter(|e| !e.is_zero()));
    select_alpha(&orders)
}

/// Seed coefficients `U(0..2b)` from `u(0) = A`, `u'(0) = 0`.
///
/// Only grid points with integer exponent carry initial data; the slot at
/// exponent 1 holds `u'(0) = 0` and the fractional slots are zero.
pub fn ic_transform(p: &ProblemSpec, alpha: RationalOrder) -> Result<Vec<f64>> {
    let b = index_of(p.beta, alpha)?;
    let one = index_of(RationalOrder::ONE, alpha)?;
    let mut seeds = vec![0.0; 2 * b];
    seeds[0] = p.initial_value;
    // u'(0) = 0; β > 1/2 guarantees this slot is below 2b
    debug_assert!(one < 2 * b);
    seeds[one] = 0.0;
    Ok(seeds)
}

/// Combined left-hand coefficient `D(k)` of the recurrence; always positive.
pub fn denominator(k: usize, beta: RationalOrder, alpha: RationalOrder) -> Result<f64> {
    let ak = alpha.to_f64() * k as f64;
    let b = beta.to_f64();
    let wrap = |e| Error::Denominator {
        k,
        source: Box::new(e),
    };
    let first = gamma_ratio(ak + 2.0 * b + 1.0, ak + 1.0).map_err(wrap)?;
    let second = gamma_ratio(ak + 2.0 * b + 1.0, ak + b + 1.0).map_err(wrap)?;
    let d = first + 2.0 * second;
    if !d.is_finite() {
        return Err(wrap(Error::Overflow(ak)));
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    problem: ProblemSpec,
    coeffs: CoeffSeq,
}

impl SeriesSolution {
    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn alpha(&self) -> RationalOrder {
        self.coeffs.alpha()
    }

    pub fn coeffs(&self) -> &CoeffSeq {
        &self.coeffs
    }

    pub fn truncation_index(&self) -> usize {
        self.coeffs.order()
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        self.coeffs.evaluate(t)
    }

    /// The same solution cut at a smaller index. The recurrence is causal, so
    /// this equals solving with truncation `k` directly.
    pub fn truncated(&self, k: usize) -> SeriesSolution {
        SeriesSolution {
            problem: self.problem.clone(),
            coeffs: self.coeffs.truncate(k),
        }
    }
}

/// Computes `U(0..=k_max)`.
pub fn solve(p: &ProblemSpec, k_max: usize) -> Result<SeriesSolution> {
    let alpha = choose_grid(p)?;
    let seeds = ic_transform(p, alpha)?;
    let shift = seeds.len();
    if k_max < shift {
        return Err(Error::TruncationTooSmall {
            k: k_max,
            min: shift,
        });
    }
    let steps = k_max - shift + 1;

    // F only matters on 0..steps; monomials beyond that never reach the sum
    let mut f_coeffs = vec![0.0; steps];
    for m in &p.f {
        let j = index_of(m.exponent, alpha)?;
        if j < steps {
            let image = monomial_transform(m, alpha, j)?;
            f_coeffs[j] += image.coeffs()[j];
        }
    }
    let f_support: Vec<(usize, f64)> = f_coeffs
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, c)| *c != 0.0)
        .collect();

    let mut u = vec![0.0; k_max + 1];
    u[..shift].copy_from_slice(&seeds);

    let mut g_image = GImage::new(&p.g, steps);
    for k in 0..steps {
        // G(k) needs U(0..=k), all fixed because k < k + shift
        g_image.push(&u[..=k]);
        let rhs: f64 = f_support
            .iter()
            .take_while(|(l, _)| *l <= k)
            .map(|(l, c)| c * g_image.values[k - l])
            .sum();
        let next = if rhs == 0.0 {
            0.0
        } else {
            -rhs / denominator(k, p.beta, alpha)?
        };
        if !next.is_finite() {
            return Err(Error::Overflow(alpha.to_f64() * (k + shift) as f64));
        }
        u[k + shift] = next;
    }

    Ok(SeriesSolution {
        problem: p.clone(),
        coeffs: CoeffSeq::new(alpha, u)?,
    })
}

/// Incremental image of `g(u)`: memoized powers `u^m` extended one index at
/// a time as coefficients of `u` become known.
struct GImage<'a> {
    poly: &'a [f64],
    /// powers[m - 1] holds the coefficients of u^m computed so far
    powers: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl<'a> GImage<'a> {
    fn new(poly: &'a [f64], capacity: usize) -> Self {
        let degree = poly.len() - 1;
        GImage {
            poly,
            powers: (0..degree).map(|_| Vec::with_capacity(capacity)).collect(),
            values: Vec::with_capacity(capacity),
        }
    }

    /// Appends entry k = `u.len() - 1`.
    fn push(&mut self, u: &[f64]) {
        let k = u.len() - 1;
        let mut value = if k == 0 { self.poly[0] } else { 0.0 };
        for m in 0..self.powers.len() {
            let entry = if m == 0 {
                u[k]
            } else {
                let (lower, upper) = self.powers.split_at(m);
                let prev = &lower[m - 1];
                debug_assert_eq!(upper[0].len(), k);
                (0..=k).map(|l| prev[l] * u[k - l]).sum()
            };
            self.powers[m].push(entry);
            value += self.poly[m + 1] * entry;
        }
        self.values.push(value);
    }
}
