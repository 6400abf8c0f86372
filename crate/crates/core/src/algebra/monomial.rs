//! Variables and sparse Laurent monomials.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A variable of the polynomial ring.
///
/// `Q` stands for `q^{1/2}`, so a `Q` exponent counts half powers of `q`.
/// Colors are 0-based internally and printed 1-based; slots start at 1.
/// The derived order is the fixed variable order `Q < X < Y < Z(color, slot)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Q,
    X,
    Y,
    Z { color: u16, slot: u16 },
}

impl VarId {
    pub fn z(color: usize, slot: usize) -> VarId {
        assert!(slot >= 1, "z slots start at 1");
        VarId::Z {
            color: color as u16,
            slot: slot as u16,
        }
    }

    pub fn is_z(self) -> bool {
        matches!(self, VarId::Z { .. })
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Q => write!(f, "q"),
            VarId::X => write!(f, "x"),
            VarId::Y => write!(f, "y"),
            VarId::Z { color, slot } => write!(f, "z_{{{},{}}}", color + 1, slot),
        }
    }
}

impl std::str::FromStr for VarId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "q" => Ok(VarId::Q),
            "x" => Ok(VarId::X),
            "y" => Ok(VarId::Y),
            _ => {
                let inner = s
                    .strip_prefix("z_{")
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(|| format!("unknown variable {s:?}"))?;
                let (c, b) = inner.split_once(',').ok_or_else(|| format!("unknown variable {s:?}"))?;
                let c: usize = c.trim().parse().map_err(|_| format!("bad color in {s:?}"))?;
                let b: usize = b.trim().parse().map_err(|_| format!("bad slot in {s:?}"))?;
                if c == 0 || b == 0 {
                    return Err(format!("colors and slots are 1-based in {s:?}"));
                }
                Ok(VarId::z(c - 1, b))
            }
        }
    }
}

/// Sparse exponent vector, sorted by variable, with no zero entries.
///
/// The `Ord` impl compares dense exponent vectors lexicographically (absent
/// variables count as exponent 0), which makes it invariant under
/// multiplication by a fixed monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[(VarId, i32); 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId, e: i32) -> Monomial {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    /// `q^{half/2}`.
    pub fn q_half(half: i32) -> Monomial {
        Monomial::var(VarId::Q, half)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        match self.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, x)| (v, x * e)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Drop the variable `v`, returning its exponent and the rest.
    pub fn split_off(&self, v: VarId) -> (i32, Monomial) {
        let mut rest = self.clone();
        match rest.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => {
                let e = rest.0.remove(i).1;
                (e, rest)
            }
            Err(_) => (0, rest),
        }
    }

    /// Apply a variable renaming; the map must be injective on this monomial.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        let mut out: SmallVec<[(VarId, i32); 6]> = self.0.iter().map(|&(v, e)| (f(v), e)).collect();
        out.sort_unstable_by_key(|a| a.0);
        Monomial(out)
    }

    /// Sum of exponents over all variables except `Q`.
    pub fn total_degree(&self) -> i64 {
        self.0
            .iter()
            .filter(|(v, _)| *v != VarId::Q)
            .map(|&(_, e)| e as i64)
            .sum()
    }

    /// Sum of exponents over the given variables.
    pub fn degree_in(&self, vars: &[VarId]) -> i64 {
        self.0
            .iter()
            .filter(|(v, _)| vars.contains(v))
            .map(|&(_, e)| e as i64)
            .sum()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.exponent(v) != 0
    }

    /// Graded lexicographic comparison used for printing: higher total degree
    /// first, then larger exponents of earlier variables first, with the
    /// power of `q` compared last.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        let (qa, a) = self.split_off(VarId::Q);
        let (qb, b) = other.split_off(VarId::Q);
        b.total_degree()
            .cmp(&a.total_degree())
            .then_with(|| b.cmp(&a))
            .then_with(|| qb.cmp(&qa))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (ea, eb) = match (a.get(i), b.get(j)) {
                (Some(&(v, e)), Some(&(w, f))) if v == w => {
                    i += 1;
                    j += 1;
                    (e, f)
                }
                (Some(&(v, e)), Some(&(w, _))) if v < w => {
                    i += 1;
                    (e, 0)
                }
                (_, Some(&(_, f))) => {
                    j += 1;
                    (0, f)
                }
                (Some(&(_, e)), None) => {
                    i += 1;
                    (e, 0)
                }
                (None, None) => unreachable!(),
            };
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Format a `Q` exponent (half units) as a power of `q`.
pub(crate) fn q_exponent_text(half: i32) -> String {
    if half % 2 == 0 {
        format!("{}", half / 2)
    } else {
        format!("{}/2", half)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            let text = if v == VarId::Q {
                q_exponent_text(e)
            } else {
                e.to_string()
            };
            if text == "1" {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{{{text}}}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order() {
        assert!(VarId::Q < VarId::X);
        assert!(VarId::X < VarId::Y);
        assert!(VarId::Y < VarId::z(0, 1));
        assert!(VarId::z(0, 2) < VarId::z(1, 1));
        assert!(VarId::z(1, 1) < VarId::z(1, 2));
    }

    #[test]
    fn multiply_cancels() {
        let a = Monomial::from_pairs([(VarId::X, 2), (VarId::Q, 3)]);
        let b = Monomial::from_pairs([(VarId::X, -2), (VarId::Y, 1)]);
        let c = a.mul(&b);
        assert_eq!(c, Monomial::from_pairs([(VarId::Q, 3), (VarId::Y, 1)]));
        assert_eq!(c.exponent(VarId::X), 0);
        assert_eq!(a.mul(&a.inv()), Monomial::one());
    }

    #[test]
    fn display() {
        let m = Monomial::from_pairs([(VarId::Q, 3), (VarId::z(0, 1), -1), (VarId::X, 1)]);
        assert_eq!(m.to_string(), "q^{3/2}*x*z_{1,1}^{-1}");
        assert_eq!(Monomial::q_half(-2).to_string(), "q^{-1}");
        assert_eq!("z_{2,3}".parse::<VarId>().unwrap(), VarId::z(1, 3));
    }

    #[test]
    fn grlex() {
        let x2 = Monomial::var(VarId::X, 2);
        let xy = Monomial::from_pairs([(VarId::X, 1), (VarId::Y, 1)]);
        let y = Monomial::var(VarId::Y, 1);
        assert_eq!(x2.grlex_cmp(&xy), Ordering::Less);
        assert_eq!(xy.grlex_cmp(&y), Ordering::Less);
        assert_eq!(y.grlex_cmp(&y), Ordering::Equal);
    }
}
