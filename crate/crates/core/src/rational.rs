//! Exact rationals and the standard MV-algebra on `[0,1] ∩ ℚ`.

use alloc::format;
use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Unrestricted exact rational.
pub type Q = Ratio<i128>;

pub fn q(numer: i128, denom: i128) -> Q {
    Q::new(numer, denom)
}

/// Parses `"n/d"` or `"n"`.
pub fn parse_q(text: &str) -> Result<Q> {
    let bad = || Error::Syntax {
        pos: 0,
        msg: format!("not a rational: `{text}`"),
    };
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: i128 = n.parse().map_err(|_| bad())?;
    let d: i128 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn lcm(a: i128, b: i128) -> i128 {
    a.lcm(&b)
}

/// An exact rational in the closed unit interval, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat01(Q);

impl Rat01 {
    pub const ZERO: Rat01 = Rat01(Ratio::new_raw(0, 1));
    pub const ONE: Rat01 = Rat01(Ratio::new_raw(1, 1));

    pub fn new(numer: i128, denom: i128) -> Result<Self> {
        if denom == 0 {
            return Err(Error::OutOfUnitInterval(format!("{numer}/0")));
        }
        Self::from_q(Q::new(numer, denom))
    }

    pub fn from_q(value: Q) -> Result<Self> {
        if value < Q::zero() || value > Q::one() {
            return Err(Error::OutOfUnitInterval(value.to_string()));
        }
        Ok(Rat01(value))
    }

    pub fn value(self) -> Q {
        self.0
    }

    pub fn numer(self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    /// `min(1, x + y)`
    pub fn oplus(self, other: Self) -> Self {
        let s = self.0 + other.0;
        if s > Q::one() {
            Self::ONE
        } else {
            Rat01(s)
        }
    }

    /// `1 - x`
    pub fn neg(self) -> Self {
        Rat01(Q::one() - self.0)
    }

    /// `max(0, x + y - 1)`
    pub fn odot(self, other: Self) -> Self {
        let s = self.0 + other.0 - Q::one();
        if s < Q::zero() {
            Self::ZERO
        } else {
            Rat01(s)
        }
    }

    pub fn meet(self, other: Self) -> Self {
        core::cmp::min(self, other)
    }

    pub fn join(self, other: Self) -> Self {
        core::cmp::max(self, other)
    }

    /// The partial sum `x + y`, defined only when `x <= neg y`.
    pub fn partial_add(self, other: Self) -> Result<Self> {
        if self > other.neg() {
            return Err(Error::UndefinedPartialSum(self, other));
        }
        Ok(Rat01(self.0 + other.0))
    }

    /// Real product, which never leaves the unit interval.
    pub fn mul(self, other: Self) -> Self {
        Rat01(self.0 * other.0)
    }
}

impl fmt::Display for Rat01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Rat01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Rat01 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rat01::from_q(parse_q(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rat01 {
        Rat01::new(n, d).unwrap()
    }

    #[test]
    fn truncated_sum_saturates() {
        assert_eq!(r(1, 2).oplus(r(2, 3)), Rat01::ONE);
        assert_eq!(r(1, 6).oplus(r(1, 3)), r(1, 2));
    }

    #[test]
    fn negation_endpoints() {
        assert_eq!(Rat01::ZERO.neg(), Rat01::ONE);
        assert_eq!(Rat01::ONE.neg(), Rat01::ZERO);
    }

    #[test]
    fn odot_by_direct_arithmetic() {
        // max(0, 1/2 + 1/2 - 1)
        assert_eq!(r(1, 2).odot(r(1, 2)), Rat01::ZERO);
        assert_eq!(r(3, 4).odot(r(1, 2)), r(1, 4));
    }

    #[test]
    fn partial_add_requires_room() {
        assert_eq!(r(1, 3).partial_add(r(2, 3)).unwrap(), Rat01::ONE);
        assert!(matches!(
            r(1, 2).partial_add(r(2, 3)),
            Err(Error::UndefinedPartialSum(_, _))
        ));
    }

    #[test]
    fn parsing_and_printing() {
        assert_eq!("2/4".parse::<Rat01>().unwrap(), r(1, 2));
        assert_eq!("1".parse::<Rat01>().unwrap(), Rat01::ONE);
        assert!("3/2".parse::<Rat01>().is_err());
        assert!("1/0".parse::<Rat01>().is_err());
        assert_eq!(r(2, 6).to_string(), "1/3");
        assert_eq!(Rat01::ZERO.to_string(), "0");
    }

    #[test]
    fn reduced_invariant() {
        let x = r(6, 8);
        assert_eq!((x.numer(), x.denom()), (3, 4));
    }
}
