use std::fmt;

use super::monomial::{q_exponent_text, Monomial, VarId};
use super::{Coeff, LaurentPoly};

/// The binomial `left - q^{shift/2} * right`, with `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearBinomial {
    left: VarId,
    right: VarId,
    /// Half units of `q`.
    shift: i32,
}

impl LinearBinomial {
    /// Normalize `a - q^{shift/2} b`.
    ///
    /// Returns the normalized binomial together with the monomial unit `u`
    /// (a signed power of `q`) such that `a - q^{shift/2} b = u * binomial`.
    pub fn normalized(a: VarId, b: VarId, shift: i32) -> (Coeff, Monomial, LinearBinomial) {
        assert!(a != b, "binomial needs two distinct variables");
        assert!(a != VarId::Q && b != VarId::Q, "q cannot appear in a binomial");
        if a < b {
            (
                Coeff::ONE,
                Monomial::one(),
                LinearBinomial {
                    left: a,
                    right: b,
                    shift,
                },
            )
        } else {
            // a - q^m b = -q^m (b - q^{-m} a)
            (
                Coeff::Small(-1),
                Monomial::q_half(shift),
                LinearBinomial {
                    left: b,
                    right: a,
                    shift: -shift,
                },
            )
        }
    }

    /// Build `a - q^{shift/2} b`, panicking unless already normalized.
    pub fn new(a: VarId, b: VarId, shift: i32) -> LinearBinomial {
        let (c, m, bin) = LinearBinomial::normalized(a, b, shift);
        assert!(c.is_one() && m.is_one(), "binomial {a} - q*{b} is not in normal order");
        bin
    }

    pub fn left(&self) -> VarId {
        self.left
    }

    pub fn right(&self) -> VarId {
        self.right
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn involves(&self, v: VarId) -> bool {
        self.left == v || self.right == v
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(vec![
            (Monomial::var(self.left, 1), Coeff::ONE),
            (
                Monomial::q_half(self.shift).mul(&Monomial::var(self.right, 1)),
                Coeff::Small(-1),
            ),
        ])
    }

    /// Rename variables and renormalize, returning the unit factor as well.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> (Coeff, Monomial, LinearBinomial) {
        LinearBinomial::normalized(f(self.left), f(self.right), self.shift)
    }
}

impl fmt::Display for LinearBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "{} - {}", self.left, self.right),
            2 => write!(f, "{} - q*{}", self.left, self.right),
            s => write!(f, "{} - q^{{{}}}*{}", self.left, q_exponent_text(s), self.right),
        }
    }
}
