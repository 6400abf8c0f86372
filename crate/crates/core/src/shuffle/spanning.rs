//! Products of generators, generated per color word.
//!
//! For a word `(i_1, ..., i_k)` the product `z_{i_1 1}^{d_1} * ... * z_{i_k 1}^{d_k}`
//! is a sum over assignments `pi` of word positions to slots of the same
//! color:
//!
//! `r = sum_pi z_pi^d * K_pi / V`, with `K_pi = +-prod_{a < b} (z_pi(a) - q^{-a_ij} z_pi(b))`
//!
//! over pairs of equal or adjacent colors and `V` the same-color Vandermonde.
//! The kernels `K_pi` only depend on the word, so each exponent tuple costs a
//! few monomial shifts and one exact division.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::{Coeff, LaurentPoly, LinearBinomial, Monomial, VarId};
use crate::quiver::Quiver;

use super::{binomial_poly, zeta_shift, ColorDegree, ShuffleElement};

/// All distinct arrangements of the color multiset `k`, in lexicographic order.
pub fn color_words(k: &ColorDegree) -> Vec<Vec<usize>> {
    fn go(left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, n: usize) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] == 0 {
                continue;
            }
            left[i] -= 1;
            cur.push(i);
            go(left, cur, out, n);
            cur.pop();
            left[i] += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut k.0.clone(), &mut Vec::new(), &mut out, k.total());
    out
}

/// All `(d_1, ..., d_n)` with `|d_a| <= window` and `sum d_a = d`, in
/// lexicographic order.
pub fn exponent_tuples(n: usize, d: i32, window: i32) -> Vec<Vec<i32>> {
    fn go(n: usize, rest: i32, w: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        let left = (n - cur.len()) as i32;
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in -w..=w {
            let r = rest - e;
            if r.abs() > (left - 1) * w {
                continue;
            }
            cur.push(e);
            go(n, r, w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if window >= 0 {
        go(n, d, window, &mut Vec::new(), &mut out);
    }
    out
}

/// The word-dependent part of a product of generators.
#[derive(Clone, Debug)]
pub struct WordKernel {
    pub word: Vec<usize>,
    degree: ColorDegree,
    /// For each assignment: slot variable of every word position, and `K_pi`.
    terms: Vec<(Vec<VarId>, LaurentPoly)>,
    vandermonde: Vec<LinearBinomial>,
}

impl WordKernel {
    pub fn new(q: &Quiver, word: &[usize]) -> WordKernel {
        let n = q.rank();
        let mut degree = vec![0usize; n];
        for &i in word {
            degree[i] += 1;
        }
        let positions: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..word.len()).filter(|&a| word[a] == i).collect())
            .collect();
        let mut assignments: Vec<Vec<usize>> = vec![vec![0; word.len()]];
        for i in 0..n {
            let perms = permutations(degree[i]);
            let pos = &positions[i];
            assignments = assignments
                .into_iter()
                .flat_map(|slots| {
                    perms.iter().map(move |p| {
                        let mut s = slots.clone();
                        for (x, &a) in pos.iter().enumerate() {
                            s[a] = p[x] + 1;
                        }
                        s
                    })
                })
                .collect();
        }
        let mut terms = Vec::with_capacity(assignments.len());
        for slots in assignments {
            let vars: Vec<VarId> = (0..word.len()).map(|a| VarId::z(word[a], slots[a])).collect();
            let mut k = LaurentPoly::one();
            let mut flips = 0usize;
            for a in 0..word.len() {
                for b in a + 1..word.len() {
                    let (i, j) = (word[a], word[b]);
                    let Some(s) = zeta_shift(q, i, j) else { continue };
                    k = k.mul(&binomial_poly(vars[a], vars[b], s));
                    let flip = if i == j {
                        slots[a] > slots[b]
                    } else {
                        q.orientation.has_edge(j, i)
                    };
                    flips += usize::from(flip);
                }
            }
            if flips % 2 == 1 {
                k = k.neg();
            }
            terms.push((vars, k));
        }
        let mut vandermonde = Vec::new();
        for (i, &d) in degree.iter().enumerate() {
            for b in 1..=d {
                for c in b + 1..=d {
                    vandermonde.push(LinearBinomial::new(VarId::z(i, b), VarId::z(i, c), 0));
                }
            }
        }
        WordKernel {
            word: word.to_vec(),
            degree: ColorDegree(degree),
            terms,
            vandermonde,
        }
    }

    pub fn degree(&self) -> &ColorDegree {
        &self.degree
    }

    /// The product with exponents `d` (one per letter).
    pub fn element(&self, exps: &[i32]) -> ShuffleElement {
        assert_eq!(exps.len(), self.word.len());
        let parts: Vec<LaurentPoly> = self
            .terms
            .iter()
            .map(|(vars, k)| {
                k.scale(
                    &Coeff::ONE,
                    &Monomial::from_pairs(vars.iter().copied().zip(exps.iter().copied())),
                )
            })
            .collect();
        let mut r = if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            LaurentPoly::sum(parts.iter())
        };
        for b in &self.vandermonde {
            r = r.exact_divide(b).expect("the sum over assignments is antisymmetric");
        }
        ShuffleElement {
            degree: self.degree.clone(),
            numerator: r,
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A member of a spanning set together with the word that produced it.
#[derive(Clone, Debug)]
pub struct SpanEntry {
    pub word: Vec<usize>,
    pub exponents: Vec<i32>,
    pub degree: i32,
    pub element: ShuffleElement,
}

impl SpanEntry {
    pub fn generators(&self) -> Vec<(usize, i32)> {
        self.word.iter().copied().zip(self.exponents.iter().copied()).collect()
    }
}

fn fingerprint(f: &ShuffleElement) -> [u8; 32] {
    let mut h = Sha256::new();
    for k in &f.degree.0 {
        h.update((*k as u64).to_le_bytes());
    }
    for (m, c) in f.numerator.terms() {
        for (v, e) in m.iter() {
            let tag: [u8; 5] = match v {
                VarId::Q => [0, 0, 0, 0, 0],
                VarId::X => [1, 0, 0, 0, 0],
                VarId::Y => [2, 0, 0, 0, 0],
                VarId::Z { color, slot } => {
                    let (c, s) = (color.to_le_bytes(), slot.to_le_bytes());
                    [3, c[0], c[1], s[0], s[1]]
                }
            };
            h.update(tag);
            h.update(e.to_le_bytes());
        }
        h.update(b"|");
        h.update(c.to_string().as_bytes());
        h.update(b";");
    }
    h.finalize().into()
}

/// Stream the products of generators with color multiset `k`, exponents in
/// `[-window, window]` and total degree in `degrees`, dropping repeated
/// numerators, and apply `f` to every distinct element.
///
/// Order is deterministic: degree, then word, then exponent tuple, each
/// ascending. Only one word's batch is held in memory at a time.
pub fn visit_spanning_set<T, F>(q: &Quiver, k: &ColorDegree, degrees: RangeInclusive<i32>, window: i32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&SpanEntry) -> T + Sync,
{
    let words = color_words(k);
    let kernels: Vec<WordKernel> = words.par_iter().map(|w| WordKernel::new(q, w)).collect();
    let mut seen: HashSet<[u8; 32]> = HashSet::new();
    let mut out = Vec::new();
    for d in degrees {
        let tuples = exponent_tuples(k.total(), d, window);
        for kernel in &kernels {
            let batch: Vec<(SpanEntry, [u8; 32])> = tuples
                .par_iter()
                .map(|e| {
                    let element = kernel.element(e);
                    let fp = fingerprint(&element);
                    let entry = SpanEntry {
                        word: kernel.word.clone(),
                        exponents: e.clone(),
                        degree: d,
                        element,
                    };
                    (entry, fp)
                })
                .collect();
            let fresh: Vec<SpanEntry> = batch
                .into_iter()
                .filter_map(|(e, fp)| seen.insert(fp).then_some(e))
                .collect();
            out.extend(fresh.par_iter().map(&f).collect::<Vec<_>>());
        }
    }
    out
}

/// All distinct products of generators of color degree `k`, exponents in
/// `[-window, window]` and total degree `d`. A test corpus, not a basis.
pub fn spanning_set(q: &Quiver, k: &ColorDegree, d: i32, window: i32) -> Vec<ShuffleElement> {
    visit_spanning_set(q, k, d..=d, window, |e| e.element.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::{generator, product_of_generators, wheel_check};

    #[test]
    fn words_and_tuples() {
        assert_eq!(
            color_words(&ColorDegree(vec![2, 1])),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        assert_eq!(color_words(&ColorDegree(vec![1, 2, 1, 1])).len(), 60);
        assert_eq!(exponent_tuples(2, 0, 1), vec![vec![-1, 1], vec![0, 0], vec![1, -1]]);
        assert!(exponent_tuples(2, 3, 1).is_empty());
        assert_eq!(exponent_tuples(3, 0, 2).len(), 19);
    }

    #[test]
    fn kernel_matches_iterated_product() {
        for (t, o, k) in [
            ("A2", "1>2", vec![2, 1]),
            ("A2", "2>1", vec![2, 2]),
            ("A3", "1>2,3>2", vec![1, 2, 1]),
            ("D4", "1>2,3>2,4>2", vec![1, 2, 1, 1]),
        ] {
            let q = Quiver::parse(t, o).unwrap();
            let k = ColorDegree(k);
            for word in color_words(&k).into_iter().take(12) {
                let kernel = WordKernel::new(&q, &word);
                for exps in exponent_tuples(word.len(), 1, 1).into_iter().step_by(7) {
                    let gens: Vec<(usize, i32)> = word.iter().copied().zip(exps.iter().copied()).collect();
                    let direct = product_of_generators(&q, &gens).unwrap();
                    assert_eq!(kernel.element(&exps), direct, "{t} {o} {gens:?}");
                }
            }
        }
    }

    #[test]
    fn single_color_spanning_set() {
        let q = Quiver::parse("A2", "1>2").unwrap();
        for d in -2..=2 {
            assert_eq!(
                spanning_set(&q, &ColorDegree(vec![1, 0]), d, 2),
                vec![generator(2, 0, d)]
            );
        }
        assert!(spanning_set(&q, &ColorDegree(vec![1, 0]), 3, 2).is_empty());
    }

    #[test]
    fn a2_two_elements() {
        let q = Quiver::parse("A2", "1>2").unwrap();
        let s = spanning_set(&q, &ColorDegree(vec![1, 1]), 0, 0);
        assert_eq!(s.len(), 2);
        assert_ne!(s[0], s[1]);
    }

    #[test]
    fn counting_bound_and_wheels() {
        let q = Quiver::parse("A3", "1>2,2>3").unwrap();
        let k = ColorDegree(vec![1, 2, 1]);
        for d in -1..=1 {
            let s = spanning_set(&q, &k, d, 1);
            assert!(s.len() <= color_words(&k).len() * exponent_tuples(4, d, 1).len());
            assert!(s.iter().all(|e| wheel_check(&q, e)));
        }
    }
}
