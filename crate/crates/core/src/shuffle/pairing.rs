use crate::algebra::{AlgebraError, Coeff, LaurentPoly, Monomial, RatFunc, VarId};
use crate::quiver::Quiver;

use super::{homogeneous_degree, zeta_shift, ShuffleElement};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("word letter {0} is not a vertex of the quiver")]
    MalformedWord(usize),
    #[error("element has rank {found}, quiver has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The integrand `R(z_1, ..., z_k) prod z_a^{-d_a} / prod_{a < b} zeta(z_a / z_b)`,
/// with the `a`-th letter of color `i` plugged into slot `#{earlier letters of color i} + 1`.
/// Also returns the position variables in word order.
pub fn pairing_integrand(
    q: &Quiver,
    f: &ShuffleElement,
    word: &[(usize, i32)],
) -> Result<(RatFunc, Vec<VarId>), PairingError> {
    let mut seen = vec![0usize; q.rank()];
    let mut vars = Vec::with_capacity(word.len());
    for &(i, _) in word {
        if i >= q.rank() {
            return Err(PairingError::MalformedWord(i));
        }
        seen[i] += 1;
        vars.push(VarId::z(i, seen[i]));
    }
    let shift = Monomial::from_pairs(vars.iter().zip(word).map(|(&v, &(_, d))| (v, -d)));
    let mut num = f.numerator.scale(&Coeff::ONE, &shift);
    let mut flips = 0usize;
    let mut den = Vec::new();
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            let (i, j) = (word[a].0, word[b].0);
            let Some(s) = zeta_shift(q, i, j) else { continue };
            if i == j {
                num = num.mul(&super::binomial_poly(vars[a], vars[b], 0));
            } else if q.orientation.has_edge(j, i) {
                // the edge factor of R is z_b - z_a
                flips += 1;
            }
            den.push((vars[a], vars[b], s));
        }
    }
    if flips % 2 == 1 {
        num = num.neg();
    }
    let mut r = RatFunc::from_poly(num);
    for (a, b, s) in den {
        r = r.div_binomial(a, b, s, 1);
    }
    Ok((r, vars))
}

/// `<R, f_{i_1,-d_1} ... f_{i_k,-d_k}>`: the iterated constant term of the
/// integrand, innermost variable `z_1` (contour `|z_1| << ... << |z_k|`).
///
/// Pairings in non-opposite degrees are zero. The result is a Laurent
/// polynomial in `q^{1/2}`.
pub fn pairing(q: &Quiver, f: &ShuffleElement, word: &[(usize, i32)]) -> Result<LaurentPoly, PairingError> {
    if f.degree.rank() != q.rank() {
        return Err(PairingError::RankMismatch {
            expected: q.rank(),
            found: f.degree.rank(),
        });
    }
    let mut colors = vec![0usize; q.rank()];
    for &(i, _) in word {
        if i >= q.rank() {
            return Err(PairingError::MalformedWord(i));
        }
        colors[i] += 1;
    }
    if colors != f.degree.0 || f.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let total: i64 = word.iter().map(|&(_, d)| d as i64).sum();
    if homogeneous_degree(q, f).is_some_and(|d| d != total) {
        return Ok(LaurentPoly::zero());
    }
    let (mut r, vars) = pairing_integrand(q, f, word)?;
    for a in 0..vars.len() {
        r = r.constant_term(vars[a], &vars[a + 1..])?;
    }
    debug_assert!(r.denominator().is_empty() && r.qdiff_power() == 0);
    Ok(r.numerator().clone())
}
