//! Exact rational orders and selection of the series grid step.
//!
//! Every derivative order and exponent in a problem is a nonnegative
//! rational. The fractional power series lives on the grid
//! `{alpha * k : k = 0, 1, ...}` and all index bookkeeping is exact integer
//! arithmetic, so decisions like "is `alpha * k` a natural number" never
//! depend on rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A nonnegative rational `numerator / denominator`, always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalOrder {
    num: u64,
    den: u64,
}

impl RationalOrder {
    pub const ZERO: RationalOrder = RationalOrder { num: 0, den: 1 };
    pub const ONE: RationalOrder = RationalOrder { num: 1, den: 1 };

    /// Reduces `num / den` to lowest terms with a positive denominator.
    ///
    /// Fails on a zero denominator or a negative value.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidOrder(format!(
                "{num}/{den} has zero denominator"
            )));
        }
        if num != 0 && (num < 0) != (den < 0) {
            return Err(Error::InvalidOrder(format!("{num}/{den} is negative")));
        }
        Ok(Self::from_parts(num.unsigned_abs(), den.unsigned_abs()))
    }

    pub fn integer(n: u64) -> Self {
        RationalOrder { num: n, den: 1 }
    }

    fn from_parts(num: u64, den: u64) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        RationalOrder {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Smallest integer not below `self`.
    pub fn ceil(self) -> u64 {
        self.num.div_ceil(self.den)
    }

    pub fn checked_mul_int(self, k: u64) -> Option<Self> {
        // reduce k against the denominator first to delay overflow
        let g = k.gcd(&self.den);
        let num = self.num.checked_mul(k / g)?;
        Some(Self::from_parts(num, self.den / g))
    }

    pub fn checked_add(self, other: Self) -> Option<Self> {
        let l = self.den.lcm(&other.den);
        let a = self.num.checked_mul(l / self.den)?;
        let b = other.num.checked_mul(l / other.den)?;
        Some(Self::from_parts(a.checked_add(b)?, l))
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(self, other: Self) -> Option<Self> {
        let l = self.den.lcm(&other.den);
        let a = self.num.checked_mul(l / self.den)?;
        let b = other.num.checked_mul(l / other.den)?;
        Some(Self::from_parts(a.checked_sub(b)?, l))
    }
}

/// Same as [`RationalOrder::new`].
pub fn normalize(num: i64, den: i64) -> Result<RationalOrder> {
    RationalOrder::new(num, den)
}

impl Ord for RationalOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for RationalOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalOrder {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidOrder(format!("malformed fraction {s:?}, expected \"p/q\""));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        RationalOrder::new(n, d)
    }
}

/// Grid step `alpha = 1/L`, where `L` is the least common multiple of the
/// denominators of all `orders` (and of 1).
///
/// Every input order is then an integer multiple of `alpha`, and so is 1,
/// which lets integer-order initial conditions sit on the grid.
pub fn select_alpha(orders: &[RationalOrder]) -> Result<RationalOrder> {
    if orders.is_empty() {
        return Err(Error::InvalidOrder(
            "no orders to select a grid from".into(),
        ));
    }
    let mut l: u64 = 1;
    for o in orders {
        if o.is_zero() {
            return Err(Error::InvalidOrder(format!("order {o} is not positive")));
        }
        let g = l.gcd(&o.den);
        l = (l / g)
            .checked_mul(o.den)
            .ok_or_else(|| Error::InvalidOrder("grid denominator overflows".into()))?;
    }
    Ok(RationalOrder { num: 1, den: l })
}

/// The integer `k` with `k * alpha == order`.
pub fn index_of(order: RationalOrder, alpha: RationalOrder) -> Result<usize> {
    if alpha.is_zero() {
        return Err(Error::InvalidOrder("grid step must be positive".into()));
    }
    // order / alpha = (on * ad) / (od * an)
    let num = order.num as u128 * alpha.den as u128;
    let den = order.den as u128 * alpha.num as u128;
    if !num.is_multiple_of(den) {
        return Err(Error::OffGrid { order, alpha });
    }
    usize::try_from(num / den)
        .map_err(|_| Error::InvalidOrder(format!("index of {order} overflows")))
}
