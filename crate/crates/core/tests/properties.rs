use adeshuffle::algebra::{Coeff, LaurentPoly, VarId};
use adeshuffle::paths::{
    area_between, convexify, enumerate_convex_above, enumerate_with_depth, is_convex, lies_below, size, Leg,
};
use adeshuffle::quiver::Quiver;
use adeshuffle::roots::RootVec;
use adeshuffle::shuffle::{
    is_color_symmetric, pairing, product_of_generators, serre_defect, shuffle_product, slope_leq, to_ratfunc,
    wheel_check, zeta_commutation_defect, ShuffleElement,
};
use adeshuffle::specialization::{pole_order_check, spec_map, two_point, two_point_direct, Split};
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const QUIVERS: [(&str, &str); 6] = [
    ("A2", "1>2"),
    ("A2", "2>1"),
    ("A3", "1>2,2>3"),
    ("A3", "1>2,3>2"),
    ("A3", "2>1,2>3"),
    ("D4", "1>2,3>2,4>2"),
];

fn quiver(k: usize) -> Quiver {
    let (t, o) = QUIVERS[k];
    Quiver::parse(t, o).unwrap()
}

/// Up to `max_len` generators `(color, mode)`; colors are reduced mod the rank.
fn word(max_len: usize) -> impl Strategy<Value = Vec<(usize, i32)>> {
    prop::collection::vec((0usize..4, -2i32..=2), 1..=max_len)
}

fn fit(q: &Quiver, w: &[(usize, i32)]) -> Vec<(usize, i32)> {
    w.iter().map(|&(i, d)| (i % q.rank(), d)).collect()
}

fn elem(q: &Quiver, w: &[(usize, i32)]) -> ShuffleElement {
    product_of_generators(q, &fit(q, w)).unwrap()
}

/// A word with the colors of `w` in a random order.
fn rearranged(w: &[(usize, i32)], seed: u64) -> Vec<(usize, i32)> {
    let mut out = w.to_vec();
    out.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    out
}

/// A random element of degree `v + w` built from a word in those colors.
fn element_of_degree(q: &Quiver, v: &RootVec, w: &RootVec, modes: &[i32], seed: u64) -> ShuffleElement {
    let mut letters = Vec::new();
    for (i, &c) in v.add(w).0.iter().enumerate() {
        for _ in 0..c {
            letters.push((i, modes[letters.len() % modes.len()]));
        }
    }
    product_of_generators(q, &rearranged(&letters, seed)).unwrap()
}

fn random_split(v: &RootVec, total: &RootVec, seed: u64) -> Split {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Split {
        x_slots: v
            .0
            .iter()
            .zip(&total.0)
            .map(|(&a, &k)| {
                let mut slots: Vec<usize> = (1..=k as usize).collect();
                slots.shuffle(&mut rng);
                let mut s = slots[..a as usize].to_vec();
                s.sort();
                s
            })
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zeta_commutation(k in 0usize..5, i in 0usize..3, j in 0usize..3, a in -2i32..=2, b in -2i32..=2) {
        let q = quiver(k);
        let (i, j) = (i % q.rank(), j % q.rank());
        prop_assert!(zeta_commutation_defect(&q, i, j, a, b).unwrap().is_zero());
    }

    #[test]
    fn serre(k in 0usize..6, i in 0usize..4, j in 0usize..4) {
        let q = quiver(k);
        let (i, j) = (i % q.rank(), j % q.rank());
        prop_assume!(q.cartan(i, j) == -1);
        prop_assert!(serre_defect(&q, i, j).unwrap().is_zero());
    }

    #[test]
    fn associativity(k in 0usize..5, f in word(2), g in word(1), h in word(2)) {
        let q = quiver(k);
        let (f, g, h) = (elem(&q, &f), elem(&q, &g), elem(&q, &h));
        let left = shuffle_product(&q, &shuffle_product(&q, &f, &g).unwrap(), &h).unwrap();
        let right = shuffle_product(&q, &f, &shuffle_product(&q, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_are_symmetric_wheel_elements(k in 0usize..6, w in word(4)) {
        let q = quiver(k);
        let r = elem(&q, &w);
        prop_assert!(is_color_symmetric(&r));
        prop_assert!(wheel_check(&q, &r));
    }

    #[test]
    fn poles_are_simple_and_adjacent(k in 0usize..6, w in word(4)) {
        let q = quiver(k);
        let r = to_ratfunc(&q, &elem(&q, &w)).normalize();
        for b in r.denominator() {
            prop_assert_eq!(r.multiplicity(b), 1);
            prop_assert_eq!(b.shift(), 0);
            match (b.left(), b.right()) {
                (VarId::Z { color: i, .. }, VarId::Z { color: j, .. }) => {
                    prop_assert_eq!(q.cartan(i as usize, j as usize), -1);
                }
                _ => prop_assert!(false, "unexpected factor {}", b),
            }
        }
    }

    #[test]
    fn slope_is_multiplicative(k in 0usize..5, f in word(2), g in word(2), mu in -2i64..=2) {
        let q = quiver(k);
        let (f, g) = (elem(&q, &f), elem(&q, &g));
        let mu = BigRational::from_integer(mu.into());
        prop_assume!(slope_leq(&q, &f, &mu) && slope_leq(&q, &g, &mu));
        prop_assert!(slope_leq(&q, &shuffle_product(&q, &f, &g).unwrap(), &mu));
    }

    #[test]
    fn pairing_is_bilinear(k in 0usize..5, w in word(3), seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let q = quiver(k);
        let w = fit(&q, &w);
        let f = product_of_generators(&q, &w).unwrap();
        let g = product_of_generators(&q, &rearranged(&w, seed)).unwrap();
        let dual = rearranged(&w, seed.wrapping_add(1));
        let (ca, cb) = (LaurentPoly::constant(Coeff::from(a)), LaurentPoly::constant(Coeff::from(b)));
        let combo = f.scale_poly(&ca).add(&g.scale_poly(&cb));
        let lhs = pairing(&q, &combo, &dual).unwrap();
        let rhs = pairing(&q, &f, &dual).unwrap().mul(&ca).add(&pairing(&q, &g, &dual).unwrap().mul(&cb));
        prop_assert_eq!(lhs, rhs);
        // shifting one mode leaves the degree mismatched
        let mut off = dual.clone();
        off[0].1 += 1;
        prop_assert!(pairing(&q, &f, &off).unwrap().is_zero());
    }

    #[test]
    fn two_point_routes_agree_and_ignore_the_split(
        k in 0usize..6, a in 0usize..12, b in 0usize..12, modes in prop::collection::vec(-1i32..=1, 1..4),
        seed in any::<u64>(),
    ) {
        let q = quiver(k);
        let roots = &q.roots.positive_roots;
        let (v, w) = (&roots[a % roots.len()], &roots[b % roots.len()]);
        prop_assume!(v.height() + w.height() <= 4);
        let f = element_of_degree(&q, v, w, &modes, seed);
        let s1 = random_split(v, &v.add(w), seed);
        let s2 = random_split(v, &v.add(w), seed ^ 0x5555);
        let t1 = two_point(&q, &f, v, w, &s1).unwrap();
        let t2 = two_point(&q, &f, v, w, &s2).unwrap();
        prop_assert!(t1.value.equals(&t2.value));
        prop_assert!(t1.value.equals(&two_point_direct(&q, &f, v, w, &s1).unwrap().value));
        for d in t1.value.denominator() {
            prop_assert!(d.left() == VarId::X && d.right() == VarId::Y && [0, 4, -4].contains(&d.shift()), "{}", d);
        }
        prop_assert!(pole_order_check(&q, &t1, false).is_ok());
        let ar = q.ar_quiver();
        let (iv, iw) = (q.roots.index_of(v).unwrap(), q.roots.index_of(w).unwrap());
        if ar.less(iv, iw) {
            prop_assert!(pole_order_check(&q, &t1, true).is_ok());
        }
    }

    #[test]
    fn spec_is_homogeneous(k in 0usize..6, w in word(4)) {
        let q = quiver(k);
        let f = elem(&q, &w);
        let s = spec_map(&q, &f, VarId::X).unwrap().normalize();
        let v = f.degree.to_root();
        let deg = f.numerator.terms()[0].0.total_degree() - v.dot(&v);
        for (m, _) in s.numerator().terms() {
            prop_assert_eq!(m.exponent(VarId::X) as i64, deg);
        }
        prop_assert!(s.denominator().is_empty());
    }
}

fn legs() -> impl Strategy<Value = Vec<Leg>> {
    prop::collection::vec((1i64..=3, -3i64..=3), 0..=4)
        .prop_map(|v| v.into_iter().map(|(dx, dy)| Leg::new(dx, dy).unwrap()).collect())
        .prop_filter("size at most (6, 6)", |l: &Vec<Leg>| {
            let (x, y) = size(l);
            x <= 6 && y.abs() <= 6
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn convexify_properties(p in legs()) {
        let c = convexify(&p);
        prop_assert_eq!(c.size(), size(&p));
        prop_assert_eq!(&convexify(&c.legs), &c);
        prop_assert!(is_convex(&c.legs));
        prop_assert!(lies_below(&c.legs, &p).unwrap());
        let area = area_between(&c.legs, &p).unwrap();
        prop_assert!(area >= Rational64::from_integer(0));
        prop_assert!((area * 2).is_integer());
        prop_assert_eq!(area == Rational64::from_integer(0), is_convex(&p));
    }

    #[test]
    fn enumeration_is_complete(p in legs()) {
        let s = size(&p);
        let found = enumerate_convex_above(s, &p).unwrap();
        prop_assert_eq!(&enumerate_with_depth(s, &p, 2).unwrap(), &found);
        prop_assert_eq!(&enumerate_with_depth(s, &p, 6).unwrap(), &found);
        for c in &found {
            prop_assert_eq!(c.size(), s);
            prop_assert!(is_convex(&c.legs));
        }
    }
}
