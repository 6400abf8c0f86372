//! Rational functions whose denominators are products of linear binomials
//! and powers of `q - q^{-1}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::binomial::LinearBinomial;
use super::monomial::{Monomial, VarId};
use super::poly::LaurentPoly;
use super::{AlgebraError, Coeff};

/// `numerator / (prod(denominator) * (q - q^{-1})^qdiff)`.
///
/// Denominators are never expanded. The extra `q - q^{-1}` power is needed
/// because the prefactors attached to specializations carry it and it is not
/// a binomial in two distinct variables.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: Vec<LinearBinomial>,
    qdiff: u32,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> RatFunc {
        RatFunc {
            num,
            den: Vec::new(),
            qdiff: 0,
        }
    }

    pub fn new(num: LaurentPoly, den: Vec<LinearBinomial>, qdiff: u32) -> RatFunc {
        let mut den = den;
        den.sort_unstable();
        RatFunc { num, den, qdiff }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &[LinearBinomial] {
        &self.den
    }

    pub fn qdiff_power(&self) -> u32 {
        self.qdiff
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divide by `a - q^{shift/2} b`, absorbing the sign/unit of normalization.
    pub fn div_binomial(mut self, a: VarId, b: VarId, shift: i32, power: u32) -> RatFunc {
        let (c, m, bin) = LinearBinomial::normalized(a, b, shift);
        for _ in 0..power {
            self.num = self.num.scale(&c.inv(), &m.inv());
            self.den.push(bin);
        }
        self.den.sort_unstable();
        self
    }

    /// Divide by `(q - q^{-1})^n`.
    pub fn div_qdiff(mut self, n: u32) -> RatFunc {
        self.qdiff += n;
        self
    }

    pub fn scale(&self, c: &Coeff, m: &Monomial) -> RatFunc {
        RatFunc {
            num: self.num.scale(c, m),
            den: self.den.clone(),
            qdiff: self.qdiff,
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunc {
        RatFunc {
            num: self.num.mul(p),
            den: self.den.clone(),
            qdiff: self.qdiff,
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let mut den = self.den.clone();
        den.extend_from_slice(&other.den);
        RatFunc::new(self.num.mul(&other.num), den, self.qdiff + other.qdiff)
    }

    pub fn neg(&self) -> RatFunc {
        self.scale(&Coeff::Small(-1), &Monomial::one())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let (lcm, extra_a, extra_b) = multiset_lcm(&self.den, &other.den);
        let qd = self.qdiff.max(other.qdiff);
        let a = self
            .num
            .mul(&product(&extra_a))
            .mul(&LaurentPoly::q_diff().pow(qd - self.qdiff));
        let b = other
            .num
            .mul(&product(&extra_b))
            .mul(&LaurentPoly::q_diff().pow(qd - other.qdiff));
        RatFunc::new(a.add(&b), lcm, qd)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    /// Multiplicity of `b` in the denominator.
    pub fn multiplicity(&self, b: &LinearBinomial) -> usize {
        self.den.iter().filter(|d| *d == b).count()
    }

    /// Cancel every denominator factor that divides the numerator.
    pub fn normalize(&self) -> RatFunc {
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        if num.is_zero() {
            return RatFunc::zero();
        }
        for b in &self.den {
            if num.vanishes_on(b) {
                num = num.exact_divide(b).expect("vanishing implies divisibility");
            } else {
                den.push(*b);
            }
        }
        let mut qdiff = self.qdiff;
        while qdiff > 0 {
            match divide_by_qdiff(&num) {
                Some(n) => {
                    num = n;
                    qdiff -= 1;
                }
                None => break,
            }
        }
        RatFunc { num, den, qdiff }
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &RatFunc) -> bool {
        let (_, extra_a, extra_b) = multiset_lcm(&self.den, &other.den);
        let qd = self.qdiff.max(other.qdiff);
        let a = self
            .num
            .mul(&product(&extra_a))
            .mul(&LaurentPoly::q_diff().pow(qd - self.qdiff));
        let b = other
            .num
            .mul(&product(&extra_b))
            .mul(&LaurentPoly::q_diff().pow(qd - other.qdiff));
        a == b
    }

    /// Substitute into the numerator; only allowed when no denominator
    /// binomial mentions an assigned variable.
    pub fn substitute_numerator(&self, assignment: &BTreeMap<VarId, super::Term>) -> Result<RatFunc, AlgebraError> {
        if let Some(b) = self
            .den
            .iter()
            .find(|b| assignment.contains_key(&b.left()) || assignment.contains_key(&b.right()))
        {
            return Err(AlgebraError::DenominatorSubstitution(*b));
        }
        Ok(RatFunc {
            num: self.num.substitute(assignment)?,
            den: self.den.clone(),
            qdiff: self.qdiff,
        })
    }

    /// `lim_{y -> x} (x - y) f`, requiring a simple pole along `x = y`.
    pub fn residue_on_diagonal(&self) -> Result<RatFunc, AlgebraError> {
        let g = self.normalize();
        let diag = LinearBinomial::new(VarId::X, VarId::Y, 0);
        let order = g.multiplicity(&diag);
        if order != 1 {
            return Err(AlgebraError::PoleOrder {
                expected: 1,
                found: order,
            });
        }
        let to_x = BTreeMap::from([(VarId::Y, (Coeff::ONE, Monomial::var(VarId::X, 1)))]);
        let mut num = g.num.substitute(&to_x)?;
        let mut den = Vec::new();
        let mut qdiff = g.qdiff;
        let mut removed = false;
        for b in &g.den {
            if *b == diag && !removed {
                removed = true;
                continue;
            }
            let rename = |v: VarId| if v == VarId::Y { VarId::X } else { v };
            let (l, r) = (rename(b.left()), rename(b.right()));
            if l == r {
                // x - q^m x = x (1 - q^m); only 1 - q^{+-2} stay inside our ring.
                let unit = match b.shift() {
                    4 => Monomial::q_half(2),   // 1 - q^2 = -q (q - q^{-1})
                    -4 => Monomial::q_half(-2), // 1 - q^{-2} = q^{-1} (q - q^{-1})
                    s => return Err(AlgebraError::UnsupportedFactor(format!("1 - q^({s}/2)"))),
                };
                let sign = if b.shift() == 4 { Coeff::Small(-1) } else { Coeff::ONE };
                num = num.scale(&sign, &unit.mul(&Monomial::var(VarId::X, 1)).inv());
                qdiff += 1;
            } else {
                let (c, m, nb) = LinearBinomial::normalized(l, r, b.shift());
                num = num.scale(&c.inv(), &m.inv());
                den.push(nb);
            }
        }
        Ok(RatFunc::new(num, den, qdiff).normalize())
    }

    /// Coefficient of `v^0` in the expansion of `self` where `|v|` is smaller
    /// than every variable of `larger`.
    pub fn constant_term(&self, v: VarId, larger: &[VarId]) -> Result<RatFunc, AlgebraError> {
        // Each factor 1/(binomial) involving v expands as A * sum_n (rho v)^n.
        let mut factors: Vec<(Coeff, Monomial, Monomial)> = Vec::new();
        let mut rest = Vec::new();
        for b in &self.den {
            if !b.involves(v) {
                rest.push(*b);
                continue;
            }
            let w = if b.left() == v { b.right() } else { b.left() };
            if !larger.contains(&w) {
                return Err(AlgebraError::IllOrderedContour { var: v, other: w });
            }
            let m = b.shift();
            let winv = Monomial::var(w, -1);
            if b.left() == v {
                // 1/(v - q^m w) = -q^{-m} w^{-1} sum_n (q^{-m} v / w)^n
                factors.push((
                    Coeff::Small(-1),
                    Monomial::q_half(-m).mul(&winv),
                    Monomial::q_half(-m).mul(&winv),
                ));
            } else {
                // 1/(w - q^m v) = w^{-1} sum_n (q^m v / w)^n
                factors.push((Coeff::ONE, winv.clone(), Monomial::q_half(m).mul(&winv)));
            }
        }
        let groups = self.num.collect_in(v);
        let lo = groups.keys().next().copied().unwrap_or(0);
        let order = (-lo).max(0) as usize;
        let mut series: Vec<LaurentPoly> = vec![LaurentPoly::zero(); order + 1];
        series[0] = LaurentPoly::one();
        for (a, am, rho) in &factors {
            let mut next = vec![LaurentPoly::zero(); order + 1];
            for n in 0..=order {
                let mut t = series[n].scale(a, am);
                if n > 0 {
                    t = t.add(&next[n - 1].scale(&Coeff::ONE, rho));
                }
                next[n] = t;
            }
            series = next;
        }
        let mut parts = Vec::new();
        for (n, s) in series.iter().enumerate() {
            if let Some(p) = groups.get(&-(n as i32)) {
                parts.push(p.mul(s));
            }
        }
        Ok(RatFunc::new(LaurentPoly::sum(parts.iter()), rest, self.qdiff))
    }

    /// Growth exponent under `z -> xi z` for the variables of `subset`;
    /// `None` stands for minus infinity (zero input).
    pub fn scaled_degree(&self, subset: &[VarId]) -> Option<i64> {
        let top = self.num.terms().iter().map(|(m, _)| m.degree_in(subset)).max()?;
        let below = self
            .den
            .iter()
            .filter(|b| subset.contains(&b.left()) || subset.contains(&b.right()))
            .count() as i64;
        Some(top - below)
    }

    pub fn to_json(&self) -> RatFuncJson {
        RatFuncJson {
            terms: poly_to_json(&self.num),
            denoms: self
                .den
                .iter()
                .map(|b| DenomJson {
                    left: b.left().to_string(),
                    right: b.right().to_string(),
                    shift: b.shift(),
                })
                .collect(),
            qdiff: self.qdiff,
        }
    }

    pub fn from_json(j: &RatFuncJson) -> Result<RatFunc, AlgebraError> {
        let num = poly_from_json(&j.terms)?;
        let mut den = Vec::new();
        for d in &j.denoms {
            let l: VarId = d.left.parse().map_err(AlgebraError::Parse)?;
            let r: VarId = d.right.parse().map_err(AlgebraError::Parse)?;
            if l >= r || l == VarId::Q {
                return Err(AlgebraError::Parse(format!("denominator {l} - {r} not normalized")));
            }
            den.push(LinearBinomial::new(l, r, d.shift));
        }
        Ok(RatFunc::new(num, den, j.qdiff))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() && self.qdiff == 0 {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let mut factors: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.den.len() {
            let mut j = i;
            while j < self.den.len() && self.den[j] == self.den[i] {
                j += 1;
            }
            let k = j - i;
            factors.push(if k == 1 {
                format!("({})", self.den[i])
            } else {
                format!("({})^{{{k}}}", self.den[i])
            });
            i = j;
        }
        match self.qdiff {
            0 => {}
            1 => factors.push("(q - q^{-1})".to_string()),
            n => factors.push(format!("(q - q^{{-1}})^{{{n}}}")),
        }
        if factors.len() == 1 {
            write!(f, "/{}", factors[0])
        } else {
            write!(f, "/({})", factors.join("*"))
        }
    }
}

fn product(bs: &[LinearBinomial]) -> LaurentPoly {
    bs.iter().fold(LaurentPoly::one(), |acc, b| acc.mul(&b.to_poly()))
}

/// Multiset lcm of two sorted binomial lists, with the factors each side
/// is missing.
fn multiset_lcm(
    a: &[LinearBinomial],
    b: &[LinearBinomial],
) -> (Vec<LinearBinomial>, Vec<LinearBinomial>, Vec<LinearBinomial>) {
    let mut count: BTreeMap<LinearBinomial, (usize, usize)> = BTreeMap::new();
    for x in a {
        count.entry(*x).or_default().0 += 1;
    }
    for x in b {
        count.entry(*x).or_default().1 += 1;
    }
    let (mut lcm, mut extra_a, mut extra_b) = (Vec::new(), Vec::new(), Vec::new());
    for (x, (ca, cb)) in count {
        let m = ca.max(cb);
        lcm.extend(std::iter::repeat_n(x, m));
        extra_a.extend(std::iter::repeat_n(x, m - ca));
        extra_b.extend(std::iter::repeat_n(x, m - cb));
    }
    (lcm, extra_a, extra_b)
}

/// Divide by `q - q^{-1} = q^{-1}(q^2 - 1)` if it is a factor.
fn divide_by_qdiff(p: &LaurentPoly) -> Option<LaurentPoly> {
    // In half units q^2 - 1 is Q^4 - 1. Solve (Q^4 - 1) s = p from the top:
    // s_{k-4} = p_k + s_k.
    let groups = p.collect_in(VarId::Q);
    let lo = *groups.keys().next()?;
    let hi = *groups.keys().next_back()?;
    let mut s: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
    for k in (lo..=hi).rev() {
        let pk = groups.get(&k).cloned().unwrap_or_default();
        let next = pk.add(&s.get(&k).cloned().unwrap_or_default());
        if k - 4 < lo {
            if !next.is_zero() {
                return None;
            }
        } else if !next.is_zero() {
            s.insert(k - 4, next);
        }
    }
    let q2 = Monomial::q_half(2);
    Some(LaurentPoly::from_terms(s.into_iter().flat_map(|(k, poly)| {
        let mk = Monomial::q_half(k).mul(&q2);
        poly.terms().to_vec().into_iter().map(move |(m, c)| (m.mul(&mk), c))
    })))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    /// Exact rational coefficient, e.g. "-3/2".
    pub coeffs: String,
    /// Variable exponents; the variable `q^{1/2}` counts half powers of q.
    pub exps: Vec<(String, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenomJson {
    pub left: String,
    pub right: String,
    /// Half units: the factor is `left - q^{shift/2} right`.
    pub shift: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub terms: Vec<TermJson>,
    pub denoms: Vec<DenomJson>,
    #[serde(default)]
    pub qdiff: u32,
}

pub fn poly_to_json(p: &LaurentPoly) -> Vec<TermJson> {
    p.display_terms()
        .into_iter()
        .map(|(m, c)| TermJson {
            coeffs: c.to_string(),
            exps: m
                .iter()
                .map(|(v, e)| {
                    let name = if v == VarId::Q {
                        "q^{1/2}".to_string()
                    } else {
                        v.to_string()
                    };
                    (name, e)
                })
                .collect(),
        })
        .collect()
}

pub fn poly_from_json(terms: &[TermJson]) -> Result<LaurentPoly, AlgebraError> {
    let mut out = Vec::new();
    for t in terms {
        let c: Coeff = t
            .coeffs
            .parse()
            .map_err(|e: super::ParseCoeffError| AlgebraError::Parse(e.to_string()))?;
        let mut m = Monomial::one();
        for (name, e) in &t.exps {
            let v = if name == "q^{1/2}" {
                VarId::Q
            } else {
                name.parse().map_err(AlgebraError::Parse)?
            };
            m = m.mul(&Monomial::var(v, *e));
        }
        out.push((m, c));
    }
    Ok(LaurentPoly::from_terms(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn xy(shift: i32) -> LinearBinomial {
        LinearBinomial::new(VarId::X, VarId::Y, shift)
    }

    #[test]
    fn normalize_examples() {
        let f = RatFunc::new(p("q*x - q*y"), vec![xy(0)], 0).normalize();
        assert!(f.denominator().is_empty());
        assert_eq!(f.numerator(), &p("q"));

        let g = RatFunc::new(p("y - q^{2}*x"), vec![xy(0)], 0);
        let gn = g.normalize();
        assert_eq!(gn.denominator(), &[xy(0)]);
        assert_eq!(gn.numerator(), g.numerator());

        let sq = xy(0).to_poly().pow(2);
        let h = RatFunc::new(sq, vec![xy(0)], 0).normalize();
        assert!(h.denominator().is_empty());
        assert_eq!(h.numerator(), &xy(0).to_poly());
    }

    #[test]
    fn normalize_cancels_qdiff() {
        let f = RatFunc::new(p("q^{3} - q"), vec![], 1).normalize();
        assert_eq!(f.qdiff_power(), 0);
        assert_eq!(f.numerator(), &p("q^{2}"));
        let g = RatFunc::new(p("q"), vec![], 2).normalize();
        assert_eq!(g.qdiff_power(), 2);
    }

    #[test]
    fn residue_examples() {
        // (y - q^2 x) / (x y (q - q^{-1})^2 (x - y))  ->  -q / (x (q - q^{-1}))
        let f = RatFunc::new(p("x^{-1}*y^{-1}").mul(&p("y - q^{2}*x")), vec![xy(0)], 2);
        let r = f.residue_on_diagonal().unwrap();
        let expect = RatFunc::new(p("-q*x^{-1}"), vec![], 1);
        assert_eq!(r, expect);
        assert_eq!(r.to_string(), "-q*x^{-1}/(q - q^{-1})");

        let one = RatFunc::new(p("1"), vec![xy(0)], 0);
        assert_eq!(one.residue_on_diagonal().unwrap(), RatFunc::one());

        let regular = RatFunc::from_poly(xy(0).to_poly().mul(&p("x + 3")));
        assert!(matches!(
            regular.residue_on_diagonal(),
            Err(AlgebraError::PoleOrder { found: 0, .. })
        ));
    }

    #[test]
    fn residue_handles_shifted_factors() {
        // 1 / ((x - y)(x - q^2 y))  ->  1 / (x (1 - q^2)) = -q^{-1} x^{-1} / (q - q^{-1})
        let f = RatFunc::new(p("1"), vec![xy(0), xy(4)], 0);
        let expect = RatFunc::new(p("-q^{-1}*x^{-1}"), vec![], 1);
        assert_eq!(f.residue_on_diagonal().unwrap(), expect);
    }

    #[test]
    fn constant_term_examples() {
        let v = VarId::z(0, 1);
        let w = VarId::z(0, 2);
        assert_eq!(RatFunc::one().constant_term(v, &[w]).unwrap(), RatFunc::one());
        let vd = RatFunc::from_poly(LaurentPoly::monomial(Monomial::var(v, 3)));
        assert!(vd.constant_term(v, &[w]).unwrap().is_zero());
        let vneg = RatFunc::from_poly(LaurentPoly::monomial(Monomial::var(v, -2)));
        assert!(vneg.constant_term(v, &[w]).unwrap().is_zero());

        // v^{-1} / (v - q w): only the n = 1 term survives: -q^{-1} w^{-1} * q^{-1} w^{-1}
        let f = RatFunc::new(
            LaurentPoly::monomial(Monomial::var(v, -1)),
            vec![LinearBinomial::new(v, w, 2)],
            0,
        );
        let ct = f.constant_term(v, &[w]).unwrap();
        assert_eq!(ct, RatFunc::from_poly(p("-q^{-2}*z_{1,2}^{-2}")));

        // ill-ordered contour
        let g = RatFunc::new(p("1"), vec![LinearBinomial::new(v, w, 2)], 0);
        assert!(matches!(
            g.constant_term(v, &[]),
            Err(AlgebraError::IllOrderedContour { .. })
        ));
    }

    #[test]
    fn constant_term_when_v_is_right() {
        // 1/(w - q v) with |v| << |w| is w^{-1} sum (q v / w)^n; v^{-2} picks n = 2.
        let w = VarId::z(0, 1);
        let v = VarId::z(0, 2);
        let f = RatFunc::new(
            LaurentPoly::monomial(Monomial::var(v, -2)),
            vec![LinearBinomial::new(w, v, 2)],
            0,
        );
        let ct = f.constant_term(v, &[w]).unwrap();
        assert_eq!(ct, RatFunc::from_poly(p("q^{2}*z_{1,1}^{-3}")));
    }

    #[test]
    fn scaled_degree_examples() {
        let z11 = VarId::z(0, 1);
        let z21 = VarId::z(1, 1);
        assert_eq!(RatFunc::from_poly(p("z_{1,1}")).scaled_degree(&[z11]), Some(1));
        assert_eq!(RatFunc::from_poly(p("1 + q^{-2}")).scaled_degree(&[z11]), Some(0));
        let f = RatFunc::new(p("z_{1,1} - q*z_{2,1}"), vec![LinearBinomial::new(z11, z21, 0)], 0);
        assert_eq!(f.scaled_degree(&[z11]), Some(0));
        assert_eq!(RatFunc::zero().scaled_degree(&[z11]), None);
    }

    #[test]
    fn json_round_trip() {
        let f = RatFunc::new(p("-3/2*q^{3/2}*x*z_{2,1}^{-1} + y"), vec![xy(4), xy(0), xy(0)], 3);
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let back: RatFuncJson = serde_json::from_str(&text).unwrap();
        let g = RatFunc::from_json(&back).unwrap();
        assert_eq!(g.numerator(), f.numerator());
        assert_eq!(g.denominator(), f.denominator());
        assert_eq!(serde_json::to_string(&g.to_json()).unwrap(), text);
    }

    #[test]
    fn display_format() {
        let f = RatFunc::new(p("x - q^{2}*y"), vec![xy(0), xy(0), xy(-4)], 2);
        assert_eq!(
            f.to_string(),
            "(x - q^{2}*y)/((x - q^{-2}*y)*(x - y)^{2}*(q - q^{-1})^{2})"
        );
    }
}
