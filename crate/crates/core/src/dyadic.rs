//! Exact nonnegative dyadic rationals `a / 2^b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DyadicParseError;

/// Largest exponent we allow before refusing to go further; keeps every
/// intermediate product inside `u128`.
const MAX_EXPONENT: u32 = 62;

/// A nonnegative dyadic rational `numerator / 2^exponent`, always kept in
/// lowest terms (numerator odd, or exponent zero).
#[derive(Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, exp: 1 };

    pub fn new(num: u64, exp: u32) -> Dyadic {
        assert!(
            exp <= MAX_EXPONENT,
            "dyadic exponent {exp} exceeds {MAX_EXPONENT}"
        );
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: u64) -> Dyadic {
        Dyadic { num: n, exp: 0 }
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i32) -> Dyadic {
        if k >= 0 {
            Dyadic::from_int(1u64 << k)
        } else {
            Dyadic::new(1, (-k) as u32)
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn exponent(self) -> u32 {
        self.exp
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    fn from_wide(num: u128, exp: u32) -> Dyadic {
        let mut num = num;
        let mut exp = exp;
        if num == 0 {
            return Dyadic::ZERO;
        }
        let tz = num.trailing_zeros().min(exp);
        num >>= tz;
        exp -= tz;
        assert!(
            exp <= MAX_EXPONENT,
            "dyadic exponent {exp} exceeds {MAX_EXPONENT}"
        );
        let num = u64::try_from(num).expect("dyadic numerator overflow");
        Dyadic { num, exp }
    }

    /// Both numerators scaled to the common exponent.
    fn aligned(self, other: Dyadic) -> (u128, u128, u32) {
        let exp = self.exp.max(other.exp);
        let a = (self.num as u128) << (exp - self.exp);
        let b = (other.num as u128) << (exp - other.exp);
        (a, b, exp)
    }

    pub fn checked_sub(self, other: Dyadic) -> Option<Dyadic> {
        let (a, b, exp) = self.aligned(other);
        a.checked_sub(b).map(|n| Dyadic::from_wide(n, exp))
    }

    /// Absolute difference.
    pub fn abs_diff(self, other: Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(other);
        Dyadic::from_wide(a.abs_diff(b), exp)
    }

    pub fn half(self) -> Dyadic {
        if self.num == 0 {
            return self;
        }
        Dyadic::new(self.num, self.exp + 1)
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(self, k: i32) -> Dyadic {
        if self.num == 0 {
            return self;
        }
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                Dyadic {
                    num: self.num,
                    exp: self.exp - k,
                }
            } else {
                Dyadic::from_wide((self.num as u128) << (k - self.exp), 0)
            }
        } else {
            Dyadic::new(self.num, self.exp + (-k) as u32)
        }
    }

    pub fn midpoint(self, other: Dyadic) -> Dyadic {
        (self + other).half()
    }

    /// If `self` is an integral power of two, returns the exponent.
    pub fn log2_exact(self) -> Option<i32> {
        if self.num.is_power_of_two() {
            Some(self.num.trailing_zeros() as i32 - self.exp as i32)
        } else {
            None
        }
    }

    /// Exact quotient `self / other` when it is a power of two.
    pub fn ratio_pow2(self, other: Dyadic) -> Option<i32> {
        if other.is_zero() || self.is_zero() {
            return None;
        }
        let (a, b, _) = self.aligned(other);
        let (big, small, sign) = if a >= b { (a, b, 1) } else { (b, a, -1) };
        if big % small != 0 {
            return None;
        }
        let q = big / small;
        q.is_power_of_two()
            .then(|| sign * q.trailing_zeros() as i32)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (2f64).powi(self.exp as i32)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::ZERO
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::from_wide(a + b, exp)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::from_wide(self.num as u128 * rhs.num as u128, self.exp + rhs.exp)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = DyadicParseError;

    /// Accepts `a/2^b`, `a/c` with `c` a power of two, or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DyadicParseError(s.to_string());
        let s = s.trim();
        let Some((num, den)) = s.split_once('/') else {
            return s.parse::<u64>().map(Dyadic::from_int).map_err(|_| bad());
        };
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den = den.trim();
        let exp = if let Some(e) = den.strip_prefix("2^") {
            e.parse::<u32>().map_err(|_| bad())?
        } else {
            let d: u64 = den.parse().map_err(|_| bad())?;
            if !d.is_power_of_two() {
                return Err(bad());
            }
            d.trailing_zeros()
        };
        if exp > MAX_EXPONENT {
            return Err(bad());
        }
        Ok(Dyadic::new(num, exp))
    }
}

impl From<Dyadic> for String {
    fn from(d: Dyadic) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Dyadic {
    type Error = DyadicParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_to_lowest_terms() {
        let d = Dyadic::new(4, 3);
        assert_eq!((d.numerator(), d.exponent()), (1, 1));
        assert_eq!(Dyadic::new(0, 5), Dyadic::ZERO);
        assert_eq!(Dyadic::new(8, 3), Dyadic::ONE);
    }

    #[test]
    fn arithmetic() {
        let q = Dyadic::new(1, 2);
        assert_eq!(q + q, Dyadic::HALF);
        assert_eq!(Dyadic::ONE.checked_sub(q), Some(Dyadic::new(3, 2)));
        assert_eq!(q.checked_sub(Dyadic::ONE), None);
        assert_eq!(Dyadic::ZERO.midpoint(Dyadic::HALF), q);
        assert_eq!(q * Dyadic::HALF, Dyadic::new(1, 3));
        assert_eq!(q.mul_pow2(2), Dyadic::ONE);
        assert_eq!(q.mul_pow2(-1), Dyadic::new(1, 3));
        assert!(Dyadic::new(3, 3) < Dyadic::HALF);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(Dyadic::new(1, 3).log2_exact(), Some(-3));
        assert_eq!(Dyadic::from_int(4).log2_exact(), Some(2));
        assert_eq!(Dyadic::new(3, 3).log2_exact(), None);
        assert_eq!(Dyadic::HALF.ratio_pow2(Dyadic::new(1, 2)), Some(1));
        assert_eq!(Dyadic::new(1, 2).ratio_pow2(Dyadic::HALF), Some(-1));
        assert_eq!(Dyadic::new(3, 2).ratio_pow2(Dyadic::HALF), None);
        assert_eq!(Dyadic::pow2(-2), Dyadic::new(1, 2));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0/2^0", "1/2^0", "3/2^4", "1/2^1"] {
            let d: Dyadic = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("2/4".parse::<Dyadic>().unwrap(), Dyadic::HALF);
        assert_eq!("1".parse::<Dyadic>().unwrap(), Dyadic::ONE);
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("x/2^1".parse::<Dyadic>().is_err());
    }
}
