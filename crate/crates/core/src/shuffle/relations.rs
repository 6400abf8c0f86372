//! Defining relations of the quantum loop algebra, written as identities
//! between products of generators. Each function returns `LHS - RHS`.

use crate::algebra::LaurentPoly;
use crate::quiver::Quiver;

use super::{product_of_generators, zeta_shift, ShuffleElement, ShuffleError};

/// `q^{-(a_i, a_j)} (z_i^{a+1} * z_j^b) - z_i^a * z_j^{b+1}`
/// minus `z_j^b * z_i^{a+1} - q^{-(a_i, a_j)} (z_j^{b+1} * z_i^a)`.
pub fn zeta_commutation_defect(q: &Quiver, i: usize, j: usize, a: i32, b: i32) -> Result<ShuffleElement, ShuffleError> {
    let t = LaurentPoly::q_half(zeta_shift(q, i, j).unwrap_or(0));
    let lhs = product_of_generators(q, &[(i, a + 1), (j, b)])?
        .scale_poly(&t)
        .sub(&product_of_generators(q, &[(i, a), (j, b + 1)])?);
    let rhs = product_of_generators(q, &[(j, b), (i, a + 1)])?
        .sub(&product_of_generators(q, &[(j, b + 1), (i, a)])?.scale_poly(&t));
    Ok(lhs.sub(&rhs))
}

/// `z_i z_i z_j - (q + q^{-1}) z_i z_j z_i + z_j z_i z_i` in modes 0, for adjacent `i, j`.
pub fn serre_defect(q: &Quiver, i: usize, j: usize) -> Result<ShuffleElement, ShuffleError> {
    let qq = LaurentPoly::q_half(2).add(&LaurentPoly::q_half(-2));
    let iij = product_of_generators(q, &[(i, 0), (i, 0), (j, 0)])?;
    let iji = product_of_generators(q, &[(i, 0), (j, 0), (i, 0)])?;
    let jii = product_of_generators(q, &[(j, 0), (i, 0), (i, 0)])?;
    Ok(iij.sub(&iji.scale_poly(&qq)).add(&jii))
}
