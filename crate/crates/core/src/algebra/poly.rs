//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use super::binomial::LinearBinomial;
use super::monomial::{Monomial, VarId};
use super::{AlgebraError, Coeff};

/// A coefficient times a monomial; the image of a variable under substitution.
pub type Term = (Coeff, Monomial);

/// Terms kept sorted by monomial with no zero coefficients, so structural
/// equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Coeff)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// `poly_arith` from the operation table: a single entry point for the ring
/// operations, used by the CLI and tests.
pub fn poly_arith(a: &LaurentPoly, b: &LaurentPoly, op: PolyOp) -> LaurentPoly {
    match op {
        PolyOp::Add => a.add(b),
        PolyOp::Sub => a.sub(b),
        PolyOp::Mul => a.mul(b),
    }
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Coeff::ONE)
    }

    pub fn constant(c: Coeff) -> LaurentPoly {
        LaurentPoly::term(c, Monomial::one())
    }

    pub fn term(c: Coeff, m: Monomial) -> LaurentPoly {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> LaurentPoly {
        LaurentPoly::term(Coeff::ONE, m)
    }

    pub fn var(v: VarId) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(v, 1))
    }

    /// `q^{half/2}`.
    pub fn q_half(half: i32) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::q_half(half))
    }

    /// `q - q^{-1}`.
    pub fn q_diff() -> LaurentPoly {
        LaurentPoly::q_half(2).sub(&LaurentPoly::q_half(-2))
    }

    /// Collect arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> LaurentPoly {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(slot) => slot.add_assign_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        LaurentPoly::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Coeff>) -> LaurentPoly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }

    fn from_sorted(terms: Vec<(Monomial, Coeff)>) -> LaurentPoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    /// The constant coefficient if this is a constant.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The single term if this is a monomial times a coefficient.
    pub fn as_term(&self) -> Option<Term> {
        match self.terms.as_slice() {
            [(m, c)] => Some((c.clone(), m.clone())),
            _ => None,
        }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly::from_sorted(self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly::from_sorted(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    /// Multiply by the term `c * m`.
    pub fn scale(&self, c: &Coeff, m: &Monomial) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        // Multiplying every monomial by the same unit preserves their order.
        LaurentPoly::from_sorted(self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if let [(m, c)] = other.terms.as_slice() {
            return self.scale(c, m);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return other.scale(c, m);
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let p = c * d;
                match acc.entry(m.mul(n)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&p),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        LaurentPoly::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sum of many polynomials with a single accumulation pass.
    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a LaurentPoly>) -> LaurentPoly {
        LaurentPoly::from_terms(parts.into_iter().flat_map(|p| p.terms.iter().cloned()))
    }

    /// Rename variables; the map must be injective on the variables present.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> LaurentPoly {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly::from_sorted(terms)
    }

    /// Variables occurring with nonzero exponent, in order.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.iter().flat_map(|(m, _)| m.iter().map(|(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Minimum and maximum exponent of `v`; `None` for the zero polynomial.
    pub fn degree_range(&self, v: VarId) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| m.exponent(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Group by the exponent of `v`: `self = sum_k coeffs[k] * v^k`.
    pub fn collect_in(&self, v: VarId) -> BTreeMap<i32, LaurentPoly> {
        let mut groups: BTreeMap<i32, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            groups.entry(e).or_default().push((rest, c.clone()));
        }
        groups
            .into_iter()
            .map(|(e, mut ts)| {
                // Removing one variable from sorted distinct monomials keeps
                // them distinct, but may reorder them.
                ts.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                (e, LaurentPoly::from_sorted(ts))
            })
            .collect()
    }

    /// Exact substitution. Every assigned variable is replaced by its term;
    /// the terms must not mention any assigned variable.
    pub fn substitute(&self, assignment: &BTreeMap<VarId, Term>) -> Result<LaurentPoly, AlgebraError> {
        for (v, (c, m)) in assignment {
            if c.is_zero() {
                return Err(AlgebraError::ZeroSubstitution(*v));
            }
            if let Some(w) = m.iter().map(|(w, _)| w).find(|w| assignment.contains_key(w)) {
                return Err(AlgebraError::CyclicAssignment(*v, w));
            }
        }
        if assignment.is_empty() {
            return Ok(self.clone());
        }
        Ok(self.substitute_unchecked(assignment))
    }

    fn substitute_unchecked(&self, assignment: &BTreeMap<VarId, Term>) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut mono = Monomial::one();
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    Some((ac, am)) => {
                        coeff = &coeff * &ac.pow(e);
                        mono = mono.mul(&am.pow(e));
                    }
                    None => mono = mono.mul(&Monomial::var(v, e)),
                }
            }
            (mono, coeff)
        }))
    }

    /// Whether the binomial `b` divides this polynomial, i.e. whether the
    /// polynomial vanishes at `left = q^shift * right`.
    pub fn vanishes_on(&self, b: &LinearBinomial) -> bool {
        let sub = BTreeMap::from([(
            b.left(),
            (
                Coeff::ONE,
                Monomial::q_half(b.shift()).mul(&Monomial::var(b.right(), 1)),
            ),
        )]);
        self.substitute_unchecked(&sub).is_zero()
    }

    /// Exact division by a linear binomial.
    pub fn exact_divide(&self, b: &LinearBinomial) -> Result<LaurentPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // Write self = sum_k p_k u^k and solve (u - c w) s = self from the top.
        let u = b.left();
        let cw = Monomial::q_half(b.shift()).mul(&Monomial::var(b.right(), 1));
        let groups = self.collect_in(u);
        let lo = *groups.keys().next().unwrap();
        let hi = *groups.keys().next_back().unwrap();
        let mut quotient: Vec<(i32, LaurentPoly)> = Vec::new();
        let mut s = LaurentPoly::zero(); // s_k, starting from s_hi = 0
        for k in (lo..=hi).rev() {
            let pk = groups.get(&k).cloned().unwrap_or_default();
            let next = pk.add(&s.scale(&Coeff::ONE, &cw)); // s_{k-1}
            if k > lo {
                quotient.push((k - 1, next.clone()));
            } else if !next.is_zero() {
                return Err(AlgebraError::NotDivisible(*b));
            }
            s = next;
        }
        Ok(LaurentPoly::from_terms(quotient.into_iter().flat_map(|(k, p)| {
            let uk = Monomial::var(u, k);
            p.terms.into_iter().map(move |(m, c)| (m.mul(&uk), c))
        })))
    }

    /// Terms in graded lexicographic order (descending), used for printing.
    pub fn display_terms(&self) -> Vec<&(Monomial, Coeff)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| a.0.grlex_cmp(&b.0));
        ts
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;

    /// Parse the canonical text form, e.g. `-2*q^{3/2}*x + z_{1,1}^{-1} - 1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |msg: &str| AlgebraError::Parse(format!("{msg} in {s:?}"));
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut terms = Vec::new();
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let (chunk, next) = match (rest.find(" + "), rest.find(" - ")) {
                (None, None) => (rest, None),
                (Some(p), None) => (&rest[..p], Some((1, &rest[p + 3..]))),
                (None, Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
                (Some(p), Some(m)) if p < m => (&rest[..p], Some((1, &rest[p + 3..]))),
                (_, Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
            };
            let mut coeff = Coeff::Small(sign);
            let mut mono = Monomial::one();
            for (idx, factor) in chunk.split('*').enumerate() {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if idx == 0 && factor.starts_with(|c: char| c.is_ascii_digit()) {
                    let c: Coeff = factor.parse().map_err(|_| err("bad coefficient"))?;
                    coeff = &coeff * &c;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    None => (factor, None),
                    Some((n, e)) => {
                        let e = e
                            .strip_prefix('{')
                            .and_then(|e| e.strip_suffix('}'))
                            .ok_or_else(|| err("exponent needs braces"))?;
                        (n, Some(e))
                    }
                };
                let v: VarId = name.parse().map_err(|e: String| AlgebraError::Parse(e))?;
                let e = match exp {
                    None => {
                        if v == VarId::Q {
                            2
                        } else {
                            1
                        }
                    }
                    Some(text) => parse_exponent(v, text).ok_or_else(|| err("bad exponent"))?,
                };
                mono = mono.mul(&Monomial::var(v, e));
            }
            terms.push((mono, coeff));
            match next {
                None => break,
                Some((sg, r)) => {
                    sign = sg;
                    rest = r;
                }
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

fn parse_exponent(v: VarId, text: &str) -> Option<i32> {
    if v == VarId::Q {
        match text.split_once('/') {
            Some((n, "2")) => n.parse().ok(),
            Some(_) => None,
            None => text.parse::<i32>().ok().map(|e| 2 * e),
        }
    } else {
        text.parse().ok()
    }
}
