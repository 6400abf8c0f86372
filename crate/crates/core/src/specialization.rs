//! Specialization maps `z_{ib} -> x q^{tau(i)}` and the two-point functions
//! obtained by splitting the variables of an element between `x` and `y`.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraError, Coeff, LaurentPoly, LinearBinomial, Monomial, RatFunc, VarId};
use crate::quiver::Quiver;
use crate::roots::RootVec;
use crate::shuffle::{zeta_shift, ColorDegree, ShuffleElement};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("pole of order {order} at {place} exceeds the bound {bound} for v = {v}, w = {w}")]
    BoundViolated {
        place: &'static str,
        order: usize,
        bound: usize,
        v: RootVec,
        w: RootVec,
    },
    #[error("split sends {found} slots of color {color} to x, expected {expected}")]
    BadSplit {
        color: usize,
        expected: usize,
        found: usize,
    },
    #[error("element has degree {found}, expected {expected}")]
    DegreeMismatch { expected: ColorDegree, found: ColorDegree },
    #[error("specialization variable must be x or y, got {0}")]
    BadVariable(VarId),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_var(var: VarId) -> Result<(), SpecError> {
    match var {
        VarId::X | VarId::Y => Ok(()),
        v => Err(SpecError::BadVariable(v)),
    }
}

/// `q^{-sum_{i->j} tau(i) v_i v_j} [var q^{-1/2} (q - q^{-1})]^{-v.v}`.
pub fn gamma(q: &Quiver, v: &RootVec, var: VarId) -> Result<RatFunc, SpecError> {
    check_var(var)?;
    let edge: i64 = q
        .orientation
        .edges
        .iter()
        .map(|&(i, j)| q.tau[i] * v.0[i] * v.0[j])
        .sum();
    let vv = v.dot(v);
    let half = -2 * edge + vv;
    let mono = Monomial::q_half(half as i32).mul(&Monomial::var(var, -(vv as i32)));
    Ok(RatFunc::from_poly(LaurentPoly::monomial(mono)).div_qdiff(vv as u32))
}

/// The term `var q^{tau(i)}`.
fn slot_image(q: &Quiver, i: usize, var: VarId) -> (Coeff, Monomial) {
    (
        Coeff::ONE,
        Monomial::q_half(2 * q.tau[i] as i32).mul(&Monomial::var(var, 1)),
    )
}

fn check_degree(f: &ShuffleElement, expected: &ColorDegree) -> Result<(), SpecError> {
    if &f.degree != expected {
        return Err(SpecError::DegreeMismatch {
            expected: expected.clone(),
            found: f.degree.clone(),
        });
    }
    Ok(())
}

/// `spec_v(R) = gamma_v * r(z_{ib} -> var q^{tau(i)})` with `v` the degree of `R`.
pub fn spec_map(q: &Quiver, f: &ShuffleElement, var: VarId) -> Result<RatFunc, SpecError> {
    check_var(var)?;
    let mut sub = BTreeMap::new();
    for (i, &k) in f.degree.0.iter().enumerate() {
        for b in 1..=k {
            sub.insert(VarId::z(i, b), slot_image(q, i, var));
        }
    }
    let value = f.numerator.substitute(&sub)?;
    Ok(gamma(q, &f.degree.to_root(), var)?.mul_poly(&value).normalize())
}

/// Which slots of each color are specialized to `x`; the others go to `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub x_slots: Vec<Vec<usize>>,
}

impl Split {
    /// The first `v_i` slots of color `i` go to `x`.
    pub fn canonical(v: &RootVec) -> Split {
        Split {
            x_slots: v.0.iter().map(|&a| (1..=a as usize).collect()).collect(),
        }
    }

    fn validate(&self, v: &RootVec) -> Result<(), SpecError> {
        for (i, s) in self.x_slots.iter().enumerate() {
            if s.len() != v.0[i] as usize {
                return Err(SpecError::BadSplit {
                    color: i,
                    expected: v.0[i] as usize,
                    found: s.len(),
                });
            }
        }
        Ok(())
    }

    fn var_of(&self, i: usize, b: usize) -> VarId {
        if self.x_slots[i].contains(&b) {
            VarId::X
        } else {
            VarId::Y
        }
    }
}

/// The two-point function of an element of degree `v + w`, with the pole
/// orders of its normalized form.
#[derive(Clone, Debug)]
pub struct TwoPoint {
    pub value: RatFunc,
    pub v: RootVec,
    pub w: RootVec,
    /// Order of the pole along `x = y`.
    pub pole_diag: usize,
    /// Order of the pole along `x = y q^2`.
    pub pole_q2: usize,
    /// Order of the pole along `x = y q^{-2}`.
    pub pole_qm2: usize,
}

fn split_numerator(q: &Quiver, f: &ShuffleElement, split: &Split) -> Result<LaurentPoly, SpecError> {
    let mut sub = BTreeMap::new();
    for (i, &k) in f.degree.0.iter().enumerate() {
        for b in 1..=k {
            sub.insert(VarId::z(i, b), slot_image(q, i, split.var_of(i, b)));
        }
    }
    Ok(f.numerator.substitute(&sub)?)
}

/// Divide by `(a - q^{shift/2} b)^e`; negative `e` multiplies.
fn div_power(r: RatFunc, a: VarId, b: VarId, shift: i32, e: i64) -> RatFunc {
    if e >= 0 {
        r.div_binomial(a, b, shift, e as u32)
    } else {
        let p = LaurentPoly::from_terms([
            (Monomial::var(a, 1), Coeff::ONE),
            (Monomial::q_half(shift).mul(&Monomial::var(b, 1)), Coeff::Small(-1)),
        ]);
        r.mul_poly(&p.pow((-e) as u32))
    }
}

fn with_poles(value: RatFunc, v: &RootVec, w: &RootVec) -> TwoPoint {
    let value = value.normalize();
    let order = |shift| value.multiplicity(&LinearBinomial::new(VarId::X, VarId::Y, shift));
    TwoPoint {
        pole_diag: order(0),
        pole_q2: order(4),
        pole_qm2: order(-4),
        v: v.clone(),
        w: w.clone(),
        value,
    }
}

/// The closed form
/// `gamma_v(x) gamma_w(y) r(split) / [(x - y)^{-<v,w>} (y q^2 - x)^{v.w - <w,v>} (x - y q^{-2})^{v.w} q^{sum_{i->j} (tau(i) v_i w_j + tau(j) v_j w_i)}]`.
pub fn two_point(
    q: &Quiver,
    f: &ShuffleElement,
    v: &RootVec,
    w: &RootVec,
    split: &Split,
) -> Result<TwoPoint, SpecError> {
    check_degree(f, &ColorDegree::from_root(&v.add(w)))?;
    split.validate(v)?;
    let num = split_numerator(q, f, split)?;
    let g = gamma(q, v, VarId::X)?.mul(&gamma(q, w, VarId::Y)?);
    let tau_sum: i64 = q
        .orientation
        .edges
        .iter()
        .map(|&(i, j)| q.tau[i] * v.0[i] * w.0[j] + q.tau[j] * v.0[j] * w.0[i])
        .sum();
    let vw = v.dot(w);
    let (evw, ewv) = (q.euler_form(v, w), q.euler_form(w, v));
    let mut r = g
        .mul_poly(&num)
        .scale(&Coeff::ONE, &Monomial::q_half(-2 * tau_sum as i32));
    r = div_power(r, VarId::X, VarId::Y, 0, -evw);
    // (y q^2 - x) = -(x - q^2 y)
    let e = vw - ewv;
    r = div_power(r, VarId::X, VarId::Y, 4, e);
    if e.rem_euclid(2) == 1 {
        r = r.neg();
    }
    r = div_power(r, VarId::X, VarId::Y, -4, vw);
    Ok(with_poles(r, v, w))
}

/// `zeta_ij(u / w) = (u - q^{-a_ij} w) / (u - w)` at `u = xa q^{tu}`,
/// `w = ya q^{tw}`, or its reciprocal when `invert` is set.
fn zeta_at(q: &Quiver, i: usize, j: usize, (xa, tu): (VarId, i64), (ya, tw): (VarId, i64), invert: bool) -> RatFunc {
    let Some(s) = zeta_shift(q, i, j) else {
        return RatFunc::one();
    };
    // u - q^{s/2} w = q^{tu} (xa - q^{s/2 + tw - tu} ya); the q^{tu} cancels
    let d = 2 * (tw - tu) as i32;
    let (top, bottom) = if invert { (d, s + d) } else { (s + d, d) };
    let num = LaurentPoly::from_terms([
        (Monomial::var(xa, 1), Coeff::ONE),
        (Monomial::q_half(top).mul(&Monomial::var(ya, 1)), Coeff::Small(-1)),
    ]);
    RatFunc::from_poly(num).div_binomial(xa, ya, bottom, 1)
}

fn rat_pow(r: &RatFunc, e: i64) -> RatFunc {
    let mut acc = RatFunc::one();
    for _ in 0..e {
        acc = acc.mul(r);
    }
    acc
}

/// The left-hand side route: `spec_v(x) (x) spec_w(y) (R) / prod_{i,j} zeta_ij(x q^{tau(i)} / y q^{tau(j)})^{v_i w_j}`,
/// with the cross edge factors of the denominator of `R` evaluated directly.
pub fn two_point_direct(
    q: &Quiver,
    f: &ShuffleElement,
    v: &RootVec,
    w: &RootVec,
    split: &Split,
) -> Result<TwoPoint, SpecError> {
    check_degree(f, &ColorDegree::from_root(&v.add(w)))?;
    split.validate(v)?;
    let num = split_numerator(q, f, split)?;
    let mut r = gamma(q, v, VarId::X)?.mul(&gamma(q, w, VarId::Y)?).mul_poly(&num);
    let k = &f.degree.0;
    for &(i, j) in &q.orientation.edges {
        for b in 1..=k[i] {
            for c in 1..=k[j] {
                let (va, vb) = (split.var_of(i, b), split.var_of(j, c));
                if va == vb {
                    continue;
                }
                // va q^{tau i} - vb q^{tau j} = q^{tau i} (va - q^{tau j - tau i} vb)
                let shift = 2 * (q.tau[j] - q.tau[i]) as i32;
                r = r
                    .scale(&Coeff::ONE, &Monomial::q_half(-2 * q.tau[i] as i32))
                    .div_binomial(va, vb, shift, 1);
            }
        }
    }
    let n = q.rank();
    for i in 0..n {
        for j in 0..n {
            let e = v.0[i] * w.0[j];
            if e == 0 {
                continue;
            }
            let z = zeta_at(q, i, j, (VarId::X, q.tau[i]), (VarId::Y, q.tau[j]), true);
            r = r.mul(&rat_pow(&z, e));
        }
    }
    Ok(with_poles(r, v, w))
}

/// The pole orders at `x = y q^2` and `x = y q^{-2}`, checked against
/// `max(0, -<w,v>)` and `max(0, <v,w>)`; both must vanish when `v < w`.
pub fn pole_order_check(q: &Quiver, t: &TwoPoint, v_below_w: bool) -> Result<(usize, usize), SpecError> {
    let b_plus = (-q.euler_form(&t.w, &t.v)).max(0) as usize;
    let b_minus = q.euler_form(&t.v, &t.w).max(0) as usize;
    let (b_plus, b_minus) = if v_below_w { (0, 0) } else { (b_plus, b_minus) };
    if t.pole_q2 > b_plus {
        return Err(SpecError::BoundViolated {
            place: "x = y q^2",
            order: t.pole_q2,
            bound: b_plus,
            v: t.v.clone(),
            w: t.w.clone(),
        });
    }
    if t.pole_qm2 > b_minus {
        return Err(SpecError::BoundViolated {
            place: "x = y q^-2",
            order: t.pole_qm2,
            bound: b_minus,
            v: t.v.clone(),
            w: t.w.clone(),
        });
    }
    Ok((t.pole_q2, t.pole_qm2))
}

/// `prod_{i,j} [zeta_ji(y q^{tau(j)} / x q^{tau(i)}) / zeta_ij(x q^{tau(i)} / y q^{tau(j)})]^{a_i b_j}`.
pub fn zeta_ratio(q: &Quiver, a: &RootVec, b: &RootVec) -> RatFunc {
    let n = q.rank();
    let mut r = RatFunc::one();
    for i in 0..n {
        for j in 0..n {
            let e = a.0[i] * b.0[j];
            if e == 0 {
                continue;
            }
            let top = zeta_at(q, j, i, (VarId::Y, q.tau[j]), (VarId::X, q.tau[i]), false);
            let bottom = zeta_at(q, i, j, (VarId::X, q.tau[i]), (VarId::Y, q.tau[j]), true);
            r = r.mul(&rat_pow(&top.mul(&bottom), e));
        }
    }
    r.normalize()
}

/// `(x q - y q^{-1}) / (x - y)`.
pub fn expected_zeta_ratio() -> RatFunc {
    let num = LaurentPoly::from_terms([
        (Monomial::q_half(2).mul(&Monomial::var(VarId::X, 1)), Coeff::ONE),
        (Monomial::q_half(-2).mul(&Monomial::var(VarId::Y, 1)), Coeff::Small(-1)),
    ]);
    RatFunc::from_poly(num).div_binomial(VarId::X, VarId::Y, 0, 1)
}

/// Outcome of the residue check for one element and one minimal pair.
#[derive(Clone, Debug)]
pub struct FusionCheck {
    pub pole_q2: usize,
    pub pole_qm2: usize,
    pub pole_diag: usize,
    /// `lim_{y -> x} (x - y) * two_point`, when the pole along `x = y` is at most simple.
    pub residue: Option<RatFunc>,
    pub spec: RatFunc,
    pub residue_matches: bool,
    pub zeta_ok: bool,
}

impl FusionCheck {
    pub fn no_poles_q2(&self) -> bool {
        self.pole_q2 == 0 && self.pole_qm2 == 0
    }

    pub fn simple_diag(&self) -> bool {
        self.pole_diag <= 1
    }

    pub fn pass(&self) -> bool {
        self.no_poles_q2() && self.simple_diag() && self.residue_matches && self.zeta_ok
    }
}

/// Check, for the pair `alpha < beta` and `R` of degree `alpha + beta`, that the
/// two-point function has no poles at `x = y q^{+-2}`, at most a simple pole at
/// `x = y` with residue `spec_{alpha + beta}(R)`, and that the zeta ratio of the
/// pair is `(x q - y q^{-1}) / (x - y)`.
pub fn fusion_residue_check(
    q: &Quiver,
    alpha: &RootVec,
    beta: &RootVec,
    f: &ShuffleElement,
    zeta_ok: bool,
) -> Result<FusionCheck, SpecError> {
    let t = two_point(q, f, alpha, beta, &Split::canonical(alpha))?;
    let spec = spec_map(q, f, VarId::X)?;
    let residue = match t.pole_diag {
        0 => Some(RatFunc::zero()),
        1 => Some(t.value.residue_on_diagonal()?),
        _ => None,
    };
    let residue_matches = residue.as_ref().is_some_and(|r| r.equals(&spec));
    Ok(FusionCheck {
        pole_q2: t.pole_q2,
        pole_qm2: t.pole_qm2,
        pole_diag: t.pole_diag,
        residue,
        spec,
        residue_matches,
        zeta_ok,
    })
}
