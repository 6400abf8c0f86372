//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use adeshuffle::algebra::{LaurentPoly, VarId};
use adeshuffle::quiver::Quiver;
use adeshuffle::shuffle::ShuffleElement;

/// Laurent polynomial in `q^{1/2}` with integer coefficients, keyed by half-exponent.
pub type QPoly = BTreeMap<i32, i128>;

/// Series in the word-position variables `z_1..z_k` with `QPoly` coefficients.
type Series = HashMap<Vec<i32>, QPoly>;

fn qmul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn smul(a: &Series, b: &Series) -> Series {
    let mut out: Series = HashMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<i32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let c = qmul(ca, cb);
            let e = out.entry(m).or_default();
            for (k, v) in c {
                *e.entry(k).or_insert(0) += v;
            }
        }
    }
    out.retain(|_, c| {
        c.retain(|_, v| *v != 0);
        !c.is_empty()
    });
    out
}

fn unit_vec(k: usize, a: usize, e: i32) -> Vec<i32> {
    let mut v = vec![0; k];
    v[a] = e;
    v
}

/// `1 / (z_a - q^{s/2} z_b)`, expanded for `|z_a| << |z_b|` when `a < b` and the
/// other way round otherwise, truncated after `n + 1` terms.
fn inverse_binomial(k: usize, a: usize, b: usize, s: i32, n: i32) -> Series {
    let mut out = Series::new();
    for t in 0..=n {
        let mut m = vec![0; k];
        let (coef, qexp) = if a < b {
            // -(q^{s/2} z_b)^{-1} sum (z_a / (q^{s/2} z_b))^t
            m[a] = t;
            m[b] = -t - 1;
            (-1, -s * (t + 1))
        } else {
            // z_a^{-1} sum (q^{s/2} z_b / z_a)^t
            m[a] = -t - 1;
            m[b] = t;
            (1, s * t)
        };
        out.insert(m, QPoly::from([(qexp, coef)]));
    }
    out
}

fn binomial(k: usize, a: usize, b: usize, s: i32) -> Series {
    Series::from([
        (unit_vec(k, a, 1), QPoly::from([(0, 1)])),
        (unit_vec(k, b, 1), QPoly::from([(s, -1)])),
    ])
}

/// The pairing `<R, f_{i_1,-d_1} ... f_{i_k,-d_k}>` computed from scratch: the
/// full rational function `r / prod_{i->j} (z_i - z_j)` times
/// `prod z_a^{-d_a} / prod_{a<b} zeta(z_a / z_b)`, every denominator expanded as
/// a geometric series in the ordered region `|z_1| << ... << |z_k|`, and the
/// coefficient of `z^0` read off.
pub fn series_pairing(q: &Quiver, f: &ShuffleElement, word: &[(usize, i32)], n: i32) -> QPoly {
    let k = word.len();
    let mut pos = HashMap::new();
    let mut seen = vec![0usize; q.rank()];
    for (a, &(i, _)) in word.iter().enumerate() {
        seen[i] += 1;
        pos.insert(VarId::z(i, seen[i]), a);
    }
    // pairings between different color degrees vanish by definition
    if seen != f.degree.0 {
        return QPoly::new();
    }
    let mut acc = Series::new();
    for (m, c) in f.numerator.terms() {
        let c = c.to_big();
        assert!(c.is_integer(), "oracle handles integer coefficients only");
        let c: i128 = c.to_integer().try_into().unwrap();
        let mut zs = vec![0; k];
        let mut qe = 0;
        for (v, e) in m.iter() {
            match v {
                VarId::Q => qe = e,
                v => zs[pos[&v]] += e,
            }
        }
        for (a, &(_, d)) in word.iter().enumerate() {
            zs[a] -= d;
        }
        acc.entry(zs).or_default().insert(qe, c);
    }
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let (i, j) = (word[a].0, word[b].0);
            if q.orientation.has_edge(i, j) {
                acc = smul(&acc, &inverse_binomial(k, a, b, 0, n));
            }
            if a < b && q.cartan(i, j) != 0 {
                let s = -2 * q.cartan(i, j) as i32;
                acc = smul(&acc, &binomial(k, a, b, 0));
                acc = smul(&acc, &inverse_binomial(k, a, b, s, n));
            }
        }
    }
    acc.remove(&vec![0; k]).unwrap_or_default()
}

/// Convert a pure `q` Laurent polynomial.
pub fn to_qpoly(p: &LaurentPoly) -> QPoly {
    let mut out = QPoly::new();
    for (m, c) in p.terms() {
        let c = c.to_big();
        assert!(c.is_integer());
        out.insert(m.exponent(VarId::Q), c.to_integer().try_into().unwrap());
    }
    out
}
