//! Fractional differential transform solver for singular initial value
//! problems of fractional Emden-Fowler type,
//!
//! ```text
//! D^{2β} u + (2 / t^β) D^β u + f(t) g(u) = 0,   u(0) = A,  u'(0) = 0,
//! ```
//!
//! where `D` is the Caputo derivative and `1/2 < β ≤ 1` is rational. The
//! solution is a truncated fractional power series `sum_k U(k) t^(αk)` whose
//! coefficients follow from a one-step recurrence.
//!
//! ```
//! use fdt_emden::{solve, ProblemSpec, RationalOrder};
//!
//! let beta = RationalOrder::new(3, 4).unwrap();
//! let problem = ProblemSpec::linear(beta, 1.0).unwrap();
//! let sol = solve(&problem, 48).unwrap();
//! assert_eq!(sol.alpha(), RationalOrder::new(1, 4).unwrap());
//! let u = sol.evaluate(0.5).unwrap();
//! assert!(u < 1.0 && u > 0.0);
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod oracle;
pub mod order;
pub mod solver;

pub use algebra::{
    caputo_transform, cauchy_product, evaluate, monomial_transform, polynomial_of_u, shift_divide,
    CoeffSeq, Monomial,
};
pub use error::{Error, Result};
pub use gamma::{gamma, gamma_ratio, ln_gamma};
pub use oracle::{caputo_power_derivative, reference_lane_emden, residual, ResidualReport};
pub use order::{index_of, normalize, select_alpha, RationalOrder};
pub use solver::{choose_grid, denominator, ic_transform, solve, ProblemSpec, SeriesSolution};
