use serde::Serialize;

use super::QuiverOrientation;
use crate::roots::{is_minimal_pair, RootSystem, RootVec, TotalOrder};

/// The AR quiver on the positive roots, built purely from the Euler form.
///
/// There is an arrow `a -> b` iff `a != b`, `<a, b> > 0`, and no third root
/// `c` has both `<a, c> > 0` and `<c, b> > 0`. An arrow `a -> b` means
/// `a > b`; the partial order is reachability.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub roots: Vec<RootVec>,
    pub arrows: Vec<(usize, usize)>,
    /// `above[a][b]` iff there is a nonempty path `a -> ... -> b`, i.e. `a > b`.
    above: Vec<Vec<bool>>,
}

/// How to break ties between AR-incomparable roots when refining to a total
/// order: by height, then by position in the root list (`Lex`) or by reverse
/// position (`RevLex`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TieBreak {
    Lex,
    RevLex,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MinimalPair {
    pub alpha: RootVec,
    pub beta: RootVec,
}

impl MinimalPair {
    pub fn sum(&self) -> RootVec {
        self.alpha.add(&self.beta)
    }
}

impl ArQuiver {
    pub fn build(o: &QuiverOrientation, rs: &RootSystem) -> ArQuiver {
        let roots = rs.positive_roots.clone();
        let n = roots.len();
        let e: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| o.euler_form(a, b)).collect())
            .collect();
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || e[a][b] <= 0 {
                    continue;
                }
                let blocked = (0..n).any(|c| c != a && c != b && e[a][c] > 0 && e[c][b] > 0);
                if !blocked {
                    arrows.push((a, b));
                }
            }
        }
        let mut above = vec![vec![false; n]; n];
        for &(a, b) in &arrows {
            above[a][b] = true;
        }
        // transitive closure
        for k in 0..n {
            for a in 0..n {
                if above[a][k] {
                    for b in 0..n {
                        if above[k][b] {
                            above[a][b] = true;
                        }
                    }
                }
            }
        }
        ArQuiver { roots, arrows, above }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[b][a]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.above[a][b] || self.above[b][a]
    }

    pub fn is_strict_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| !self.above[a][a])
    }

    /// `order_matrix[a][b] = 1` iff `a < b`.
    pub fn order_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        (0..n)
            .map(|a| (0..n).map(|b| u8::from(self.less(a, b))).collect())
            .collect()
    }

    /// Whether a total order refines the AR order.
    pub fn refined_by(&self, order: &TotalOrder) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| !self.less(a, b) || order.less(a, b)))
    }

    /// Greedy linear extension: repeatedly take the smallest available root by
    /// (height, tie-break).
    pub fn refinement(&self, tie: TieBreak) -> TotalOrder {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut seq = Vec::with_capacity(n);
        while seq.len() < n {
            let avail = (0..n).filter(|&a| !placed[a] && (0..n).all(|b| placed[b] || !self.less(b, a)));
            let pick = match tie {
                TieBreak::Lex => avail.min_by_key(|&a| (self.roots[a].height(), a)),
                TieBreak::RevLex => avail.min_by_key(|&a| (self.roots[a].height(), usize::MAX - a)),
            }
            .expect("a finite partial order has a minimal element");
            placed[pick] = true;
            seq.push(pick);
        }
        TotalOrder::from_sequence(seq)
    }

    /// All linear extensions, or `None` if there are more than `limit`.
    pub fn all_refinements(&self, limit: usize) -> Option<Vec<TotalOrder>> {
        fn go(
            ar: &ArQuiver,
            placed: &mut Vec<bool>,
            seq: &mut Vec<usize>,
            out: &mut Vec<TotalOrder>,
            limit: usize,
        ) -> bool {
            let n = ar.len();
            if seq.len() == n {
                if out.len() == limit {
                    return false;
                }
                out.push(TotalOrder::from_sequence(seq.clone()));
                return true;
            }
            for a in 0..n {
                if placed[a] || !(0..n).all(|b| placed[b] || !ar.less(b, a)) {
                    continue;
                }
                placed[a] = true;
                seq.push(a);
                let ok = go(ar, placed, seq, out, limit);
                seq.pop();
                placed[a] = false;
                if !ok {
                    return false;
                }
            }
            true
        }
        let mut out = Vec::new();
        let ok = go(self, &mut vec![false; self.len()], &mut Vec::new(), &mut out, limit);
        ok.then_some(out)
    }

    /// Minimal pairs of a total refinement.
    pub fn minimal_pairs(&self, rs: &RootSystem, order: &TotalOrder) -> Result<Vec<MinimalPair>, crate::Error> {
        if !self.refined_by(order) {
            return Err(crate::Error::NotARefinement);
        }
        let mut out = Vec::new();
        for &a in order.sequence() {
            for &b in order.sequence() {
                if is_minimal_pair(rs, order, a, b) {
                    out.push(MinimalPair {
                        alpha: self.roots[a].clone(),
                        beta: self.roots[b].clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Pairs that are minimal in at least one refinement, computed without
    /// enumerating refinements: `a < b` in the AR order, `a + b` a root, and no
    /// two roots strictly inside the AR interval `(a, b)` sum to `a + b`.
    ///
    /// Some refinement places exactly the AR interval between `a` and `b`
    /// (everything not above `a`, then the interval, then the rest), and every
    /// refinement places at least that interval between them.
    pub fn minimal_pairs_any_refinement(&self, rs: &RootSystem) -> Vec<MinimalPair> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if !self.less(a, b) {
                    continue;
                }
                let sum = self.roots[a].add(&self.roots[b]);
                if !rs.is_root(&sum) {
                    continue;
                }
                let inner: Vec<usize> = (0..n).filter(|&c| self.less(a, c) && self.less(c, b)).collect();
                let split = inner
                    .iter()
                    .enumerate()
                    .any(|(k, &c)| inner[k + 1..].iter().any(|&d| self.roots[c].add(&self.roots[d]) == sum));
                if !split {
                    out.push(MinimalPair {
                        alpha: self.roots[a].clone(),
                        beta: self.roots[b].clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
        for (k, r) in self.roots.iter().enumerate() {
            s.push_str(&format!("  r{k} [label=\"{r}\"];\n"));
        }
        for &(a, b) in &self.arrows {
            s.push_str(&format!("  r{a} -> r{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}
