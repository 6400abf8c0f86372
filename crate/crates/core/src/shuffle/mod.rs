//! Elements of the shuffle algebra attached to an oriented Dynkin quiver.
//!
//! An element of color degree `k` is stored as the Laurent polynomial `r` in
//! the variables `z_{i,b}` (`b <= k_i`); the element itself is
//! `r / prod_{i -> j} prod_{b, c} (z_{ib} - z_{jc})` over the edges of the
//! orientation.

mod pairing;
mod relations;
mod spanning;

pub use pairing::{pairing, pairing_integrand, PairingError};
pub use relations::{serre_defect, zeta_commutation_defect};
pub use spanning::{color_words, exponent_tuples, spanning_set, visit_spanning_set, SpanEntry, WordKernel};

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    poly_from_json, poly_to_json, Coeff, LaurentPoly, LinearBinomial, Monomial, RatFunc, TermJson, VarId,
};
use crate::quiver::Quiver;
use crate::roots::RootVec;

/// A vector of nonnegative color multiplicities `k = sum k_i e_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorDegree(pub Vec<usize>);

impl ColorDegree {
    pub fn zero(rank: usize) -> ColorDegree {
        ColorDegree(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> ColorDegree {
        let mut k = vec![0; rank];
        k[i] = 1;
        ColorDegree(k)
    }

    /// Panics on negative entries.
    pub fn from_root(v: &RootVec) -> ColorDegree {
        ColorDegree(
            v.0.iter()
                .map(|&a| usize::try_from(a).expect("color degrees are nonnegative"))
                .collect(),
        )
    }

    pub fn to_root(&self) -> RootVec {
        RootVec(self.0.iter().map(|&a| a as i64).collect())
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &ColorDegree) -> ColorDegree {
        ColorDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn le(&self, other: &ColorDegree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All `l` with `0 <= l <= self`, in lexicographic order.
    pub fn sub_degrees(&self) -> Vec<ColorDegree> {
        let mut out = vec![Vec::new()];
        for &k in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..=k).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(ColorDegree).collect()
    }

    /// The variables `z_{i,1..k_i}`, color by color.
    pub fn variables(&self) -> Vec<VarId> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| (1..=k).map(move |b| VarId::z(i, b)))
            .collect()
    }
}

impl fmt::Display for ColorDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_root())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShuffleElement {
    pub degree: ColorDegree,
    pub numerator: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ShuffleError {
    #[error("color degree {found} has rank {}, expected {expected}", found.rank())]
    RankMismatch { expected: usize, found: ColorDegree },
    #[error("numerator mentions {0}, which is not a variable of degree {1}")]
    StrayVariable(VarId, ColorDegree),
    #[error("color index {0} out of range")]
    ColorOutOfRange(usize),
}

impl ShuffleElement {
    pub fn new(degree: ColorDegree, numerator: LaurentPoly) -> Result<ShuffleElement, ShuffleError> {
        let vars = degree.variables();
        if let Some(v) = numerator
            .variables()
            .into_iter()
            .find(|v| *v != VarId::Q && !vars.contains(v))
        {
            return Err(ShuffleError::StrayVariable(v, degree));
        }
        Ok(ShuffleElement { degree, numerator })
    }

    /// The unit: empty degree, numerator 1.
    pub fn unit(rank: usize) -> ShuffleElement {
        ShuffleElement {
            degree: ColorDegree::zero(rank),
            numerator: LaurentPoly::one(),
        }
    }

    pub fn zero(degree: ColorDegree) -> ShuffleElement {
        ShuffleElement {
            degree,
            numerator: LaurentPoly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &ShuffleElement) -> ShuffleElement {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        ShuffleElement {
            degree: self.degree.clone(),
            numerator: self.numerator.add(&other.numerator),
        }
    }

    pub fn sub(&self, other: &ShuffleElement) -> ShuffleElement {
        self.add(&other.scale_poly(&LaurentPoly::constant(Coeff::Small(-1))))
    }

    /// Multiply by a scalar in `Q(q^{1/2})` given as a Laurent polynomial in `q^{1/2}`.
    pub fn scale_poly(&self, c: &LaurentPoly) -> ShuffleElement {
        debug_assert!(c.variables().iter().all(|v| *v == VarId::Q));
        ShuffleElement {
            degree: self.degree.clone(),
            numerator: self.numerator.mul(c),
        }
    }
}

/// `z_{i,1}^d` in degree `e_i`.
pub fn generator(rank: usize, i: usize, d: i32) -> ShuffleElement {
    ShuffleElement {
        degree: ColorDegree::unit(rank, i),
        numerator: LaurentPoly::monomial(Monomial::var(VarId::z(i, 1), d)),
    }
}

/// Half-unit `q` shift of the numerator of `zeta_ij(u/w)`, i.e.
/// `zeta_ij(u/w) = (u - q^{shift/2} w) / (u - w)`; `None` when `zeta_ij = 1`.
pub(crate) fn zeta_shift(q: &Quiver, i: usize, j: usize) -> Option<i32> {
    match q.cartan(i, j) {
        0 => None,
        a => Some(-2 * a as i32),
    }
}

fn binomial_poly(a: VarId, b: VarId, shift: i32) -> LaurentPoly {
    LaurentPoly::from_terms([
        (Monomial::var(a, 1), Coeff::ONE),
        (Monomial::q_half(shift).mul(&Monomial::var(b, 1)), Coeff::Small(-1)),
    ])
}

/// All increasing `k`-subsets of `1..=n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..=n {
            if n - s + 1 < k - cur.len() {
                break;
            }
            cur.push(s);
            go(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn check_rank(q: &Quiver, f: &ShuffleElement) -> Result<(), ShuffleError> {
    if f.degree.rank() != q.rank() {
        return Err(ShuffleError::RankMismatch {
            expected: q.rank(),
            found: f.degree.clone(),
        });
    }
    Ok(())
}

/// The shuffle product, as a sum over shuffles: for every color, the slots
/// `1..k_i + l_i` are split into a `k_i`-subset carrying `F` and the
/// complement carrying `G`.
pub fn shuffle_product(q: &Quiver, f: &ShuffleElement, g: &ShuffleElement) -> Result<ShuffleElement, ShuffleError> {
    check_rank(q, f)?;
    check_rank(q, g)?;
    let n = q.rank();
    let k = &f.degree.0;
    let l = &g.degree.0;
    let total = f.degree.add(&g.degree);
    if f.degree.total() == 0 {
        return Ok(ShuffleElement {
            degree: total,
            numerator: g.numerator.mul(&f.numerator),
        });
    }
    if g.degree.total() == 0 {
        return Ok(ShuffleElement {
            degree: total,
            numerator: f.numerator.mul(&g.numerator),
        });
    }
    // Sign from writing the cross edge factors of the zeta denominators in
    // the orientation of the quiver: an F variable at the head of an edge
    // whose tail is a G variable gives (z_F - z_G) = -(z_tail - z_head).
    let edge_flips: usize = q.orientation.edges.iter().map(|&(a, b)| k[b] * l[a]).sum();

    let choices: Vec<Vec<Vec<usize>>> = (0..n).map(|i| subsets(k[i] + l[i], k[i])).collect();
    let mixed: Vec<usize> = (0..n).filter(|&i| k[i] > 0 && l[i] > 0).collect();
    let mut parts = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let sets: Vec<&Vec<usize>> = (0..n).map(|i| &choices[i][idx[i]]).collect();
        let comp: Vec<Vec<usize>> = (0..n)
            .map(|i| (1..=k[i] + l[i]).filter(|s| !sets[i].contains(s)).collect())
            .collect();
        let rf = f.numerator.rename(|v| match v {
            VarId::Z { color, slot } => VarId::z(color as usize, sets[color as usize][slot as usize - 1]),
            v => v,
        });
        let rg = g.numerator.rename(|v| match v {
            VarId::Z { color, slot } => VarId::z(color as usize, comp[color as usize][slot as usize - 1]),
            v => v,
        });
        let mut term = rf.mul(&rg);
        let mut flips = edge_flips;
        for i in 0..n {
            for j in 0..n {
                let Some(shift) = zeta_shift(q, i, j) else { continue };
                for &b in sets[i] {
                    for &c in &comp[j] {
                        term = term.mul(&binomial_poly(VarId::z(i, b), VarId::z(j, c), shift));
                        if i == j && b > c {
                            flips += 1;
                        }
                    }
                }
            }
        }
        // Complete the same-color cross denominators to a full Vandermonde.
        for &i in &mixed {
            for side in [sets[i], &comp[i]] {
                for (x, &b) in side.iter().enumerate() {
                    for &c in &side[x + 1..] {
                        term = term.mul(&binomial_poly(VarId::z(i, b), VarId::z(i, c), 0));
                    }
                }
            }
        }
        if flips % 2 == 1 {
            term = term.neg();
        }
        parts.push(term);

        // next coset
        let mut pos = 0;
        loop {
            if pos == n {
                let mut r = LaurentPoly::sum(parts.iter());
                for &i in &mixed {
                    for b in 1..=k[i] + l[i] {
                        for c in b + 1..=k[i] + l[i] {
                            r = r
                                .exact_divide(&LinearBinomial::new(VarId::z(i, b), VarId::z(i, c), 0))
                                .expect("the symmetrized sum is antisymmetric in each color");
                        }
                    }
                }
                return Ok(ShuffleElement {
                    degree: total,
                    numerator: r,
                });
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Product of a word of generators `z_{i_1 1}^{d_1} * ... * z_{i_k 1}^{d_k}`,
/// multiplied left to right.
pub fn product_of_generators(q: &Quiver, word: &[(usize, i32)]) -> Result<ShuffleElement, ShuffleError> {
    let mut acc = ShuffleElement::unit(q.rank());
    for &(i, d) in word {
        if i >= q.rank() {
            return Err(ShuffleError::ColorOutOfRange(i));
        }
        acc = shuffle_product(q, &acc, &generator(q.rank(), i, d))?;
    }
    Ok(acc)
}

/// The wheel conditions: for adjacent colors `i, j` with `k_i >= 2` and
/// `k_j >= 1`, the numerator vanishes at `z_{i1} = q z_{j1}, z_{i2} = q^{-1} z_{j1}`.
/// By color symmetry the first slots suffice.
pub fn wheel_check(q: &Quiver, f: &ShuffleElement) -> bool {
    let k = &f.degree.0;
    for i in 0..k.len() {
        for j in 0..k.len() {
            if i == j || !q.roots.cartan.adjacent(i, j) || k[i] < 2 || k[j] < 1 {
                continue;
            }
            let w = Monomial::var(VarId::z(j, 1), 1);
            let sub = BTreeMap::from([
                (VarId::z(i, 1), (Coeff::ONE, Monomial::q_half(2).mul(&w))),
                (VarId::z(i, 2), (Coeff::ONE, Monomial::q_half(-2).mul(&w))),
            ]);
            let value = f.numerator.substitute(&sub).expect("substitution is acyclic");
            if !value.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Invariance of the numerator under swapping adjacent slots of one color.
pub fn is_color_symmetric(f: &ShuffleElement) -> bool {
    f.degree.0.iter().enumerate().all(|(i, &k)| {
        (1..k).all(|b| {
            let swapped = f.numerator.rename(|v| {
                if v == VarId::z(i, b) {
                    VarId::z(i, b + 1)
                } else if v == VarId::z(i, b + 1) {
                    VarId::z(i, b)
                } else {
                    v
                }
            });
            swapped == f.numerator
        })
    })
}

/// Number of edge factors in the implied denominator.
pub fn denominator_degree(q: &Quiver, k: &ColorDegree) -> i64 {
    q.orientation.edges.iter().map(|&(i, j)| (k.0[i] * k.0[j]) as i64).sum()
}

/// The homogeneous degree `d` of the element, if it is homogeneous and nonzero.
pub fn homogeneous_degree(q: &Quiver, f: &ShuffleElement) -> Option<i64> {
    let mut degs = f.numerator.terms().iter().map(|(m, _)| m.total_degree());
    let first = degs.next()?;
    degs.all(|d| d == first)
        .then(|| first - denominator_degree(q, &f.degree))
}

/// The element as a rational function with its edge denominator.
pub fn to_ratfunc(q: &Quiver, f: &ShuffleElement) -> RatFunc {
    let mut r = RatFunc::from_poly(f.numerator.clone());
    let k = &f.degree.0;
    for &(i, j) in &q.orientation.edges {
        for b in 1..=k[i] {
            for c in 1..=k[j] {
                r = r.div_binomial(VarId::z(i, b), VarId::z(j, c), 0, 1);
            }
        }
    }
    r
}

/// Whether `R(xi z_l, z_rest) / xi^{mu |l|}` stays finite as `xi -> infinity`
/// for every `l <= k`, scaling the first `l_i` slots of each color.
pub fn slope_leq(q: &Quiver, f: &ShuffleElement, mu: &BigRational) -> bool {
    let r = to_ratfunc(q, f);
    f.degree.sub_degrees().iter().all(|l| {
        let subset = l.variables();
        match r.scaled_degree(&subset) {
            None => true,
            Some(g) => BigRational::from_integer(g.into()) <= mu * BigRational::from_integer((l.total() as i64).into()),
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleElementJson {
    pub degree: Vec<usize>,
    pub numerator: Vec<TermJson>,
}

impl ShuffleElement {
    pub fn to_json(&self) -> ShuffleElementJson {
        ShuffleElementJson {
            degree: self.degree.0.clone(),
            numerator: poly_to_json(&self.numerator),
        }
    }

    pub fn from_json(j: &ShuffleElementJson) -> Result<ShuffleElement, crate::Error> {
        let numerator = poly_from_json(&j.numerator)?;
        Ok(ShuffleElement::new(ColorDegree(j.degree.clone()), numerator)?)
    }
}

impl fmt::Display for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.degree, self.numerator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::parse("A2", "1>2").unwrap()
    }

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        let g = generator(2, 0, 0);
        assert_eq!(g.numerator, LaurentPoly::one());
        assert_eq!(g.degree, ColorDegree(vec![1, 0]));
        assert_eq!(generator(2, 1, -3).numerator, poly("z_{2,1}^{-3}"));
        assert_eq!(homogeneous_degree(&a2(), &generator(2, 1, -3)), Some(-3));
    }

    #[test]
    fn same_color_square() {
        let q = a2();
        let g = generator(2, 0, 0);
        let p = shuffle_product(&q, &g, &g).unwrap();
        assert_eq!(p.numerator, poly("1 + q^{-2}"));
        assert_eq!(p.degree, ColorDegree(vec![2, 0]));
    }

    #[test]
    fn a2_cross_products() {
        let q = a2();
        let (e1, e2) = (generator(2, 0, 0), generator(2, 1, 0));
        assert_eq!(
            shuffle_product(&q, &e1, &e2).unwrap().numerator,
            poly("z_{1,1} - q*z_{2,1}")
        );
        assert_eq!(
            shuffle_product(&q, &e2, &e1).unwrap().numerator,
            poly("q*z_{1,1} - z_{2,1}")
        );
        let r = to_ratfunc(&q, &shuffle_product(&q, &e1, &e2).unwrap());
        assert_eq!(r.to_string(), "(z_{1,1} - q*z_{2,1})/(z_{1,1} - z_{2,1})");
    }

    #[test]
    fn unit_is_neutral() {
        let q = a2();
        let f = product_of_generators(&q, &[(0, 1), (1, -1)]).unwrap();
        let one = ShuffleElement::unit(2);
        assert_eq!(shuffle_product(&q, &f, &one).unwrap(), f);
        assert_eq!(shuffle_product(&q, &one, &f).unwrap(), f);
    }

    #[test]
    fn wheel_examples() {
        let q = a2();
        let bad = ShuffleElement::new(ColorDegree(vec![2, 1]), LaurentPoly::one()).unwrap();
        assert!(!wheel_check(&q, &bad));
        let good = product_of_generators(&q, &[(0, 0), (0, 0), (1, 0)]).unwrap();
        assert!(wheel_check(&q, &good));
        assert!(is_color_symmetric(&good));
        let single = ShuffleElement::new(ColorDegree(vec![3, 0]), poly("z_{1,1}*z_{1,2} - 5")).unwrap();
        assert!(wheel_check(&q, &single));
        assert!(!is_color_symmetric(&single));
    }

    #[test]
    fn slope_examples() {
        let q = a2();
        let zero = BigRational::from_integer(0.into());
        let one = BigRational::from_integer(1.into());
        let sq = shuffle_product(&q, &generator(2, 0, 0), &generator(2, 0, 0)).unwrap();
        assert!(slope_leq(&q, &sq, &zero));
        let z = generator(2, 0, 1);
        assert!(!slope_leq(&q, &z, &zero));
        assert!(slope_leq(&q, &z, &one));
        let p = shuffle_product(&q, &generator(2, 0, 0), &generator(2, 1, 0)).unwrap();
        assert!(slope_leq(&q, &p, &zero));
    }

    #[test]
    fn stray_variables_rejected() {
        assert!(ShuffleElement::new(ColorDegree(vec![1, 0]), poly("z_{2,1}")).is_err());
        assert!(ShuffleElement::new(ColorDegree(vec![1, 0]), poly("q*z_{1,1}")).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let q = a2();
        let f = product_of_generators(&q, &[(1, 2), (0, -1), (0, 0)]).unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: ShuffleElementJson = serde_json::from_str(&j).unwrap();
        assert_eq!(ShuffleElement::from_json(&back).unwrap(), f);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 2), vec![vec![1, 2]]);
    }
}
