//! Orientations of Dynkin diagrams, the Euler form, the level function and
//! the Auslander-Reiten combinatorics built from them.

mod ar;
mod rep;

pub use ar::{ArQuiver, MinimalPair, TieBreak};
pub use rep::{claim_ineq_max, generic_indecomposable, hom_ext_dims, random_rep, restrict, QuiverRep, RepError};

use std::fmt;

use crate::roots::{build_root_system, DynkinType, RootSystem, RootVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("cannot parse orientation {0:?}: expected edges like \"1>2,3>2\"")]
    Parse(String),
    #[error("vertex {vertex} out of range for {dynkin}")]
    VertexOutOfRange { vertex: usize, dynkin: DynkinType },
    #[error("edge {0}-{1} appears more than once (orientations must be acyclic)")]
    Duplicate(usize, usize),
    #[error("edge {0}-{1} is not an edge of the {2} diagram")]
    NotAnEdge(usize, usize, DynkinType),
    #[error("orientation misses the edge {0}-{1} of the diagram")]
    MissingEdge(usize, usize),
}

/// An orientation of the Dynkin diagram; edges are `(tail, head)`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverOrientation {
    pub dynkin: DynkinType,
    pub edges: Vec<(usize, usize)>,
}

impl QuiverOrientation {
    pub fn new(dynkin: DynkinType, edges: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        let n = dynkin.rank;
        let expected = dynkin.edges();
        let mut seen = Vec::new();
        for &(a, b) in &edges {
            for v in [a, b] {
                if v >= n {
                    return Err(QuiverError::VertexOutOfRange { vertex: v + 1, dynkin });
                }
            }
            let key = (a.min(b), a.max(b));
            if seen.contains(&key) {
                return Err(QuiverError::Duplicate(key.0 + 1, key.1 + 1));
            }
            if !expected.contains(&key) {
                return Err(QuiverError::NotAnEdge(a + 1, b + 1, dynkin));
            }
            seen.push(key);
        }
        if let Some(&(a, b)) = expected.iter().find(|e| !seen.contains(e)) {
            return Err(QuiverError::MissingEdge(a + 1, b + 1));
        }
        Ok(QuiverOrientation { dynkin, edges })
    }

    /// Parse a 1-based edge list such as `"1>2,3>2,4>2"`.
    pub fn parse(dynkin: DynkinType, text: &str) -> Result<Self, QuiverError> {
        let text = text.trim();
        let mut edges = Vec::new();
        if !text.is_empty() {
            for part in text.split(',') {
                let (a, b) = part
                    .split_once('>')
                    .ok_or_else(|| QuiverError::Parse(text.to_string()))?;
                let a: usize = a.trim().parse().map_err(|_| QuiverError::Parse(text.to_string()))?;
                let b: usize = b.trim().parse().map_err(|_| QuiverError::Parse(text.to_string()))?;
                if a == 0 || b == 0 {
                    return Err(QuiverError::Parse(text.to_string()));
                }
                edges.push((a - 1, b - 1));
            }
        }
        QuiverOrientation::new(dynkin, edges)
    }

    /// Every diagram edge `{i, j}` with `i < j` oriented `i -> j`.
    pub fn standard(dynkin: DynkinType) -> Self {
        QuiverOrientation {
            dynkin,
            edges: dynkin.edges(),
        }
    }

    /// All `2^{#edges}` orientations.
    pub fn all(dynkin: DynkinType) -> Vec<Self> {
        let base = dynkin.edges();
        (0..1u64 << base.len())
            .map(|mask| {
                let edges = base
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                QuiverOrientation { dynkin, edges }
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// `<v, w> = sum v_i w_i - sum_{i -> j} v_i w_j`.
    pub fn euler_form(&self, v: &RootVec, w: &RootVec) -> i64 {
        let diag = v.dot(w);
        let off: i64 = self.edges.iter().map(|&(i, j)| v.0[i] * w.0[j]).sum();
        diag - off
    }

    /// The level function with `tau(i) = tau(j) + 1` on every edge `i -> j`,
    /// anchored so that the minimum is 0.
    pub fn level_function(&self) -> Vec<i64> {
        let n = self.rank();
        let mut tau: Vec<Option<i64>> = vec![None; n];
        tau[0] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in &self.edges {
                match (tau[i], tau[j]) {
                    (Some(a), None) => {
                        tau[j] = Some(a - 1);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        tau[i] = Some(b + 1);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let tau: Vec<i64> = tau
            .into_iter()
            .map(|t| t.expect("Dynkin diagrams are connected"))
            .collect();
        let min = *tau.iter().min().unwrap();
        tau.into_iter().map(|t| t - min).collect()
    }
}

impl fmt::Display for QuiverOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(a, b)| format!("{}>{}", a + 1, b + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A root system together with an orientation and its level function; the
/// context for shuffle products and specializations.
#[derive(Clone, Debug)]
pub struct Quiver {
    pub roots: RootSystem,
    pub orientation: QuiverOrientation,
    pub tau: Vec<i64>,
}

impl Quiver {
    pub fn new(orientation: QuiverOrientation) -> Quiver {
        let roots = build_root_system(orientation.dynkin);
        let tau = orientation.level_function();
        Quiver {
            roots,
            orientation,
            tau,
        }
    }

    pub fn parse(dynkin: &str, orientation: &str) -> Result<Quiver, crate::Error> {
        let t: DynkinType = dynkin.parse()?;
        Ok(Quiver::new(QuiverOrientation::parse(t, orientation)?))
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.roots.cartan.get(i, j)
    }

    pub fn euler_form(&self, v: &RootVec, w: &RootVec) -> i64 {
        self.orientation.euler_form(v, w)
    }

    pub fn ar_quiver(&self) -> ArQuiver {
        ArQuiver::build(&self.orientation, &self.roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> DynkinType {
        "A2".parse().unwrap()
    }

    #[test]
    fn euler_form_examples() {
        let o = QuiverOrientation::parse(a2(), "1>2").unwrap();
        let (a1, a2v) = (RootVec(vec![1, 0]), RootVec(vec![0, 1]));
        assert_eq!(o.euler_form(&a1, &a2v), -1);
        assert_eq!(o.euler_form(&a2v, &a1), 0);
    }

    #[test]
    fn euler_form_symmetrizes_to_cartan() {
        for t in ["A3", "D4", "E6"] {
            let t: DynkinType = t.parse().unwrap();
            let rs = build_root_system(t);
            for o in QuiverOrientation::all(t).into_iter().take(8) {
                for v in &rs.positive_roots {
                    for w in &rs.positive_roots {
                        assert_eq!(o.euler_form(v, w) + o.euler_form(w, v), rs.pairing_form(v, w));
                    }
                }
            }
        }
    }

    #[test]
    fn level_function() {
        let t: DynkinType = "A3".parse().unwrap();
        assert_eq!(
            QuiverOrientation::parse(t, "1>2,2>3").unwrap().level_function(),
            vec![2, 1, 0]
        );
        assert_eq!(
            QuiverOrientation::parse(t, "1>2,3>2").unwrap().level_function(),
            vec![1, 0, 1]
        );
        let o = QuiverOrientation::parse("A2".parse().unwrap(), "1>2").unwrap();
        assert_eq!(o.level_function(), vec![1, 0]);
        for o in QuiverOrientation::all("E6".parse().unwrap()) {
            let tau = o.level_function();
            assert!(o.edges.iter().all(|&(i, j)| tau[i] == tau[j] + 1));
            assert_eq!(*tau.iter().min().unwrap(), 0);
        }
    }

    #[test]
    fn malformed_orientations() {
        let t = a2();
        assert!(matches!(
            QuiverOrientation::parse(t, "1>2,2>1"),
            Err(QuiverError::Duplicate(1, 2))
        ));
        assert!(matches!(
            QuiverOrientation::parse(t, "1>3"),
            Err(QuiverError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            QuiverOrientation::parse(t, ""),
            Err(QuiverError::MissingEdge(1, 2))
        ));
        assert!(matches!(QuiverOrientation::parse(t, "1-2"), Err(QuiverError::Parse(_))));
        let d4: DynkinType = "D4".parse().unwrap();
        assert!(matches!(
            QuiverOrientation::parse(d4, "1>2,2>3,3>4"),
            Err(QuiverError::NotAnEdge(3, 4, _))
        ));
        assert!(QuiverOrientation::parse(d4, "1>2,3>2,4>2").is_ok());
    }

    #[test]
    fn orientation_count() {
        assert_eq!(QuiverOrientation::all("E6".parse().unwrap()).len(), 32);
        assert_eq!(QuiverOrientation::all("A1".parse().unwrap()).len(), 1);
    }
}
