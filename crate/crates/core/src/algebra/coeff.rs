//! Exact rational coefficients with an inline fast path for machine integers.
//!
//! Almost every coefficient produced by shuffle products is a small integer,
//! so `Coeff` keeps those in an `i64` and only promotes to `BigRational` on
//! overflow or division.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Coeff {
    Small(i64),
    Big(BigRational),
}

impl Coeff {
    pub const ZERO: Coeff = Coeff::Small(0);
    pub const ONE: Coeff = Coeff::Small(1);

    pub fn from_big(r: BigRational) -> Coeff {
        if r.is_integer() {
            if let Some(v) = r.numer().to_i64() {
                return Coeff::Small(v);
            }
        }
        Coeff::Big(r)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Coeff::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Coeff::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Small(v) => *v == 0,
            Coeff::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Small(v) => *v == 1,
            Coeff::Big(r) => r.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(v) => *v < 0,
            Coeff::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Coeff {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero coefficient");
        match self {
            Coeff::Small(1) => Coeff::Small(1),
            Coeff::Small(-1) => Coeff::Small(-1),
            _ => Coeff::from_big(self.to_big().recip()),
        }
    }

    pub fn pow(&self, e: i32) -> Coeff {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Coeff::ONE;
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn add_assign_ref(&mut self, other: &Coeff) {
        if let (Coeff::Small(a), Coeff::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_add(*b) {
                *self = Coeff::Small(s);
                return;
            }
        }
        *self = Coeff::from_big(self.to_big() + other.to_big());
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::ZERO
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl From<BigRational> for Coeff {
    fn from(r: BigRational) -> Self {
        Coeff::from_big(r)
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => a == b,
            // Big values are never integral i64s, so mixed variants differ.
            (Coeff::Big(a), Coeff::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Coeff {}

impl std::hash::Hash for Coeff {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Coeff::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Coeff::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Small(v) => match v.checked_neg() {
                Some(n) => Coeff::Small(n),
                None => Coeff::from_big(-BigRational::from_integer(BigInt::from(v))),
            },
            Coeff::Big(r) => Coeff::from_big(-r),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -self.clone()
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, rhs) {
            if let Some(p) = a.checked_mul(*b) {
                return Coeff::Small(p);
            }
        }
        Coeff::from_big(self.to_big() * rhs.to_big())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseCoeffError(pub String);

impl FromStr for Coeff {
    type Err = ParseCoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCoeffError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| err())?;
                Ok(Coeff::from_big(BigRational::from_integer(n)))
            }
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Coeff::from_big(BigRational::new(n, d)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Coeff::Small(i64::MAX);
        let b = &a + &Coeff::ONE;
        assert!(matches!(b, Coeff::Big(_)));
        let c = &b - &Coeff::ONE;
        assert_eq!(c, Coeff::Small(i64::MAX));
        let sq = &a * &a;
        assert_eq!(sq.to_big(), a.to_big() * a.to_big());
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "-3", "7/2", "-1/3", "123456789012345678901234567890"] {
            let c: Coeff = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        let c: Coeff = "4/2".parse().unwrap();
        assert_eq!(c, Coeff::Small(2));
        assert!("1/0".parse::<Coeff>().is_err());
    }

    #[test]
    fn inverse_and_pow() {
        let c: Coeff = "-2/3".parse().unwrap();
        assert_eq!(&c * &c.inv(), Coeff::ONE);
        assert_eq!(c.pow(-2).to_string(), "9/4");
        assert_eq!(Coeff::Small(i64::MIN).neg().to_big(), -Coeff::Small(i64::MIN).to_big());
    }
}
