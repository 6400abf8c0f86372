//! Quiver representations over the rationals and their Hom/Ext dimensions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QuiverOrientation;
use crate::roots::RootVec;

pub type Matrix = Vec<Vec<BigRational>>;

const ENTRY_RANGE: i64 = 7;
const MAX_DRAWS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("no representation with one-dimensional endomorphisms found for {dims} after {draws} draws")]
    RetryExhausted { dims: RootVec, draws: usize },
    #[error("representations live on different quivers")]
    QuiverMismatch,
}

/// Vector spaces `Q^{dims[i]}` with one matrix per edge `i -> j` of shape
/// `dims[j] x dims[i]` (edges in orientation order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub orientation: QuiverOrientation,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl QuiverRep {
    pub fn zero_map(rows: usize, cols: usize) -> Matrix {
        vec![vec![BigRational::zero(); cols]; rows]
    }

    pub fn is_consistent(&self) -> bool {
        self.orientation
            .edges
            .iter()
            .zip(&self.maps)
            .all(|(&(i, j), m)| m.len() == self.dims[j] && m.iter().all(|row| row.len() == self.dims[i]))
            && self.maps.len() == self.orientation.edges.len()
    }

    pub fn dimension_vector(&self) -> RootVec {
        RootVec(self.dims.iter().map(|&d| d as i64).collect())
    }
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `(dim Hom(V, W), dim Ext^1(V, W))` from the map
/// `sum_i Hom(V_i, W_i) -> sum_{e: i -> j} Hom(V_i, W_j)`, `f -> f_j phi_e - psi_e f_i`.
pub fn hom_ext_dims(v: &QuiverRep, w: &QuiverRep) -> Result<(usize, usize), RepError> {
    if v.orientation != w.orientation {
        return Err(RepError::QuiverMismatch);
    }
    let n = v.dims.len();
    // column offsets for f_i (dims W_i x V_i)
    let mut col_off = vec![0; n + 1];
    for i in 0..n {
        col_off[i + 1] = col_off[i] + w.dims[i] * v.dims[i];
    }
    let edges = &v.orientation.edges;
    let mut row_off = vec![0; edges.len() + 1];
    for (e, &(i, j)) in edges.iter().enumerate() {
        row_off[e + 1] = row_off[e] + w.dims[j] * v.dims[i];
    }
    let (ncols, nrows) = (col_off[n], row_off[edges.len()]);
    let mut phi = QuiverRep::zero_map(nrows, ncols);
    for (e, &(i, j)) in edges.iter().enumerate() {
        let (pv, pw) = (&v.maps[e], &w.maps[e]);
        for r in 0..w.dims[j] {
            for c in 0..v.dims[i] {
                let row = row_off[e] + r * v.dims[i] + c;
                // (f_j phi_e)[r][c] = sum_k f_j[r][k] phi_e[k][c]
                for k in 0..v.dims[j] {
                    let col = col_off[j] + r * v.dims[j] + k;
                    phi[row][col] += &pv[k][c];
                }
                // -(psi_e f_i)[r][c] = -sum_k psi_e[r][k] f_i[k][c]
                for k in 0..w.dims[i] {
                    let col = col_off[i] + k * v.dims[i] + c;
                    phi[row][col] -= &pw[r][k];
                }
            }
        }
    }
    let rk = rank(&phi);
    Ok((ncols - rk, nrows - rk))
}

/// A representation with random integer entries in `[-range, range]`.
pub fn random_rep(o: &QuiverOrientation, dims: &[usize], range: i64, rng: &mut impl Rng) -> QuiverRep {
    let maps = o
        .edges
        .iter()
        .map(|&(i, j)| {
            (0..dims[j])
                .map(|_| {
                    (0..dims[i])
                        .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-range..=range))))
                        .collect()
                })
                .collect()
        })
        .collect();
    QuiverRep {
        orientation: o.clone(),
        dims: dims.to_vec(),
        maps,
    }
}

/// A representation of dimension vector `alpha` whose endomorphism algebra is
/// one-dimensional, found by seeded random draws.
pub fn generic_indecomposable(o: &QuiverOrientation, alpha: &RootVec, seed: u64) -> Result<QuiverRep, RepError> {
    let dims: Vec<usize> = alpha.0.iter().map(|&a| a.max(0) as usize).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let rep = random_rep(o, &dims, ENTRY_RANGE, &mut rng);
        if hom_ext_dims(&rep, &rep)?.0 == 1 {
            return Ok(rep);
        }
    }
    Err(RepError::RetryExhausted {
        dims: alpha.clone(),
        draws: MAX_DRAWS,
    })
}

/// Restriction to the full subquiver on `keep`: other vertices get the zero
/// space and edges leaving `keep` get empty maps.
pub fn restrict(v: &QuiverRep, keep: &[usize]) -> QuiverRep {
    let dims: Vec<usize> = (0..v.dims.len())
        .map(|i| if keep.contains(&i) { v.dims[i] } else { 0 })
        .collect();
    let maps = v
        .orientation
        .edges
        .iter()
        .zip(&v.maps)
        .map(|(&(i, j), m)| {
            if keep.contains(&i) && keep.contains(&j) {
                m.clone()
            } else {
                QuiverRep::zero_map(dims[j], dims[i])
            }
        })
        .collect();
    QuiverRep {
        orientation: v.orientation.clone(),
        dims,
        maps,
    }
}

/// Maximum over integer boxes `v' in [0, v]`, `w' in [0, w]` of
/// `-sum_i (v'_i w_i + v_i w'_i - v'_i w'_i) + sum_{j -> i} v'_i w'_j`.
pub fn claim_ineq_max(o: &QuiverOrientation, v: &RootVec, w: &RootVec) -> i64 {
    fn boxes(top: &RootVec) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &t in &top.0 {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=t).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }
    let (bv, bw) = (boxes(v), boxes(w));
    let n = v.len();
    let mut best = i64::MIN;
    for vp in &bv {
        for wp in &bw {
            let mut s = 0;
            for i in 0..n {
                s -= vp[i] * w.0[i] + v.0[i] * wp[i] - vp[i] * wp[i];
            }
            for &(j, i) in &o.edges {
                s += vp[i] * wp[j];
            }
            best = best.max(s);
        }
    }
    best
}

#[allow(dead_code)]
fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}
