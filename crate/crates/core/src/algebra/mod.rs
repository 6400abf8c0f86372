//! Exact arithmetic kernel: Laurent polynomials over the rationals in
//! `q^{1/2}, x, y, z_{i,b}` and rational functions with binomial denominators.

mod binomial;
mod coeff;
mod monomial;
mod poly;
mod ratfunc;

pub use binomial::LinearBinomial;
pub use coeff::{Coeff, ParseCoeffError};
pub use monomial::{Monomial, VarId};
pub use poly::{poly_arith, LaurentPoly, PolyOp, Term};
pub use ratfunc::{poly_from_json, poly_to_json, DenomJson, RatFunc, RatFuncJson, TermJson};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("binomial {0} does not divide the polynomial")]
    NotDivisible(LinearBinomial),
    #[error("substitution for {0} mentions the substituted variable {1}")]
    CyclicAssignment(VarId, VarId),
    #[error("substituting zero for {0}")]
    ZeroSubstitution(VarId),
    #[error("cannot substitute into denominator factor ({0})")]
    DenominatorSubstitution(LinearBinomial),
    #[error("expected a pole of order {expected} along x = y, found {found}")]
    PoleOrder { expected: usize, found: usize },
    #[error("denominator couples {var} to {other}, which is not a larger contour variable")]
    IllOrderedContour { var: VarId, other: VarId },
    #[error("factor {0} leaves the supported coefficient ring")]
    UnsupportedFactor(String),
    #[error("parse error: {0}")]
    Parse(String),
}
