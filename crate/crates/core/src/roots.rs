//! Simply-laced root systems and the root-combinatorial claims about minimal
//! pairs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("invalid Dynkin type {0:?}")]
    InvalidType(String),
    #[error("({alpha}, {beta}) is not a minimal pair of the given order")]
    NotMinimal { alpha: RootVec, beta: RootVec },
    #[error("vector {0} is not a positive root")]
    NotARoot(RootVec),
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<DynkinType, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(RootError::InvalidType(format!("{family:?}{rank}")))
        }
    }

    /// Edges of the Dynkin diagram (0-based, Bourbaki labelling).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                // path 1..n-1, with n attached to n-2
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1-3-4-5-...-n with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn expected_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RootError::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        DynkinType::new(family, rank).map_err(|_| bad())
    }
}

/// Symmetric Cartan matrix of a simply-laced type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn of(t: DynkinType) -> CartanMatrix {
        let n = t.rank;
        let mut entries = vec![vec![0; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in t.edges() {
            entries[i][j] = -1;
            entries[j][i] = -1;
        }
        CartanMatrix { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entries[i][j] != 0
    }
}

/// Integer vector in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(n: usize) -> RootVec {
        RootVec(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> RootVec {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVec(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|a| a * k).collect())
    }

    /// The plain dot product `v . w`.
    pub fn dot(&self, other: &RootVec) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &RootVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub dynkin: DynkinType,
    pub cartan: CartanMatrix,
    /// Sorted by height, then simple roots of lower index first.
    pub positive_roots: Vec<RootVec>,
}

/// Positive roots by closure from the simple roots: `beta + alpha_i` is a root
/// whenever `(beta, alpha_i) = -1`.
pub fn build_root_system(t: DynkinType) -> RootSystem {
    let cartan = CartanMatrix::of(t);
    let n = t.rank;
    let mut roots: Vec<RootVec> = (0..n).map(|i| RootVec::simple(n, i)).collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let ai = RootVec::simple(n, i);
                if *beta != ai && pairing_with(&cartan, beta, &ai) == -1 {
                    let cand = beta.add(&ai);
                    if !roots.contains(&cand) && !next.contains(&cand) {
                        next.push(cand);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    RootSystem {
        dynkin: t,
        cartan,
        positive_roots: roots,
    }
}

fn pairing_with(c: &CartanMatrix, a: &RootVec, b: &RootVec) -> i64 {
    let n = c.rank();
    let mut s = 0;
    for i in 0..n {
        if a.0[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += a.0[i] * c.get(i, j) * b.0[j];
        }
    }
    s
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.dynkin.rank
    }

    /// The symmetric form `(a, b) = a^T C b`.
    pub fn pairing_form(&self, a: &RootVec, b: &RootVec) -> i64 {
        pairing_with(&self.cartan, a, b)
    }

    pub fn is_root(&self, v: &RootVec) -> bool {
        self.index_of(v).is_some()
    }

    pub fn index_of(&self, v: &RootVec) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == v)
    }

    pub fn highest_root(&self) -> &RootVec {
        self.positive_roots.last().expect("root systems are nonempty")
    }
}

/// A total order on the positive roots, given as root indices from smallest
/// to largest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl TotalOrder {
    pub fn from_sequence(seq: Vec<usize>) -> TotalOrder {
        let mut pos = vec![usize::MAX; seq.len()];
        for (k, &r) in seq.iter().enumerate() {
            pos[r] = k;
        }
        assert!(pos.iter().all(|&p| p != usize::MAX), "not a permutation");
        TotalOrder { seq, pos }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn position(&self, root: usize) -> usize {
        self.pos[root]
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.pos[a] < self.pos[b]
    }

    /// Root indices strictly between `a` and `b` (in order), empty unless `a < b`.
    pub fn between(&self, a: usize, b: usize) -> &[usize] {
        let (pa, pb) = (self.pos[a], self.pos[b]);
        if pa < pb {
            &self.seq[pa + 1..pb]
        } else {
            &[]
        }
    }

    /// Convexity: whenever `a < b` and `a + b` is a root, `a < a + b < b`.
    pub fn is_convex(&self, rs: &RootSystem) -> bool {
        let roots = &rs.positive_roots;
        for a in 0..roots.len() {
            for b in 0..roots.len() {
                if !self.less(a, b) {
                    continue;
                }
                if let Some(s) = rs.index_of(&roots[a].add(&roots[b])) {
                    if !(self.less(a, s) && self.less(s, b)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Whether `(a, b)` is a minimal pair of `order`: `a < b`, `a + b` a root, and
/// no `a < a' < b' < b` with `a' + b' = a + b`.
pub fn is_minimal_pair(rs: &RootSystem, order: &TotalOrder, a: usize, b: usize) -> bool {
    if !order.less(a, b) {
        return false;
    }
    let roots = &rs.positive_roots;
    let sum = roots[a].add(&roots[b]);
    if !rs.is_root(&sum) {
        return false;
    }
    let inner = order.between(a, b);
    for (k, &c) in inner.iter().enumerate() {
        for &d in &inner[k + 1..] {
            if roots[c].add(&roots[d]) == sum {
                return false;
            }
        }
    }
    true
}

fn check_minimal(rs: &RootSystem, order: &TotalOrder, a: &RootVec, b: &RootVec) -> Result<(usize, usize), RootError> {
    let ia = rs.index_of(a).ok_or_else(|| RootError::NotARoot(a.clone()))?;
    let ib = rs.index_of(b).ok_or_else(|| RootError::NotARoot(b.clone()))?;
    if !is_minimal_pair(rs, order, ia, ib) {
        return Err(RootError::NotMinimal {
            alpha: a.clone(),
            beta: b.clone(),
        });
    }
    Ok((ia, ib))
}

/// Search for a multiset of at least `min_parts` roots from `pool` summing to
/// `target`. Returns the first witness found.
pub fn find_decomposition(rs: &RootSystem, pool: &[usize], target: &RootVec, min_parts: usize) -> Option<Vec<usize>> {
    fn go(
        rs: &RootSystem,
        pool: &[usize],
        start: usize,
        rest: &RootVec,
        chosen: &mut Vec<usize>,
        min_parts: usize,
    ) -> bool {
        if rest.0.iter().all(|&c| c == 0) {
            return chosen.len() >= min_parts;
        }
        for k in start..pool.len() {
            let r = &rs.positive_roots[pool[k]];
            if r.le(rest) {
                chosen.push(pool[k]);
                if go(rs, pool, k, &rest.sub(r), chosen, min_parts) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(rs, pool, 0, target, &mut chosen, min_parts).then_some(chosen)
}

/// No multiset of `k >= 2` roots strictly between `alpha` and `beta` sums to
/// `alpha + beta`.
pub fn claim1_check(rs: &RootSystem, order: &TotalOrder, alpha: &RootVec, beta: &RootVec) -> Result<bool, RootError> {
    let (ia, ib) = check_minimal(rs, order, alpha, beta)?;
    let sum = alpha.add(beta);
    Ok(find_decomposition(rs, order.between(ia, ib), &sum, 2).is_none())
}

/// No roots strictly between `alpha + beta` and `beta` sum to `alpha + 2 beta`,
/// and none strictly between `alpha` and `alpha + beta` sum to `2 alpha + beta`.
pub fn claim2_check(rs: &RootSystem, order: &TotalOrder, alpha: &RootVec, beta: &RootVec) -> Result<bool, RootError> {
    let (ia, ib) = check_minimal(rs, order, alpha, beta)?;
    let sum = alpha.add(beta);
    let is = rs.index_of(&sum).expect("minimal pairs sum to a root");
    let upper = find_decomposition(rs, order.between(is, ib), &sum.add(beta), 1);
    let lower = find_decomposition(rs, order.between(ia, is), &sum.add(alpha), 1);
    Ok(upper.is_none() && lower.is_none())
}
