//! Exact rationals on 128-bit integers. Overflow is an error, never wraparound.

use crate::error::{Error, Result};
use std::fmt;

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParam("zero denominator".into()));
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        Ok(Rational {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn from_integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn checked_mul(&self, other: &Rational) -> Result<Rational> {
        // cross-reduce before multiplying to keep intermediates small
        let g1 = gcd_i128(self.num.unsigned_abs(), other.den.unsigned_abs()) as i128;
        let g2 = gcd_i128(other.num.unsigned_abs(), self.den.unsigned_abs()) as i128;
        let num = (self.num / g1)
            .checked_mul(other.num / g2)
            .ok_or(Error::Overflow("rational multiply"))?;
        let den = (self.den / g2)
            .checked_mul(other.den / g1)
            .ok_or(Error::Overflow("rational multiply"))?;
        Rational::new(num, den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces() {
        let r = Rational::new(448, 385).unwrap();
        assert_eq!((r.numerator(), r.denominator()), (64, 55));
        assert_eq!(r.to_string(), "64/55");
    }

    #[test]
    fn sign_normalization() {
        let r = Rational::new(3, -6).unwrap();
        assert_eq!((r.numerator(), r.denominator()), (-1, 2));
    }

    #[test]
    fn integer_display() {
        assert_eq!(Rational::from_integer(7).to_string(), "7");
    }

    #[test]
    fn mul_cross_reduces() {
        // would overflow without cross-reduction
        let a = Rational::new(1 << 100, 3).unwrap();
        let b = Rational::new(9, 1 << 100).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap(), Rational::from_integer(3));
    }
}
