use adeshuffle::quiver::{
    claim_ineq_max, generic_indecomposable, hom_ext_dims, random_rep, restrict, Quiver, QuiverOrientation,
};
use adeshuffle::roots::{build_root_system, claim1_check, claim2_check, DynkinType};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quivers(types: &[&str]) -> Vec<Quiver> {
    types
        .iter()
        .flat_map(|t| QuiverOrientation::all(t.parse::<DynkinType>().unwrap()))
        .map(Quiver::new)
        .collect()
}

#[test]
fn euler_form_is_hom_minus_ext() {
    for q in quivers(&["A2", "A3", "D4"]) {
        let reps: Vec<_> = q
            .roots
            .positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| generic_indecomposable(&q.orientation, r, k as u64).unwrap())
            .collect();
        for (a, v) in reps.iter().enumerate() {
            for (b, w) in reps.iter().enumerate() {
                let (hom, ext) = hom_ext_dims(v, w).unwrap();
                let e = q.euler_form(&q.roots.positive_roots[a], &q.roots.positive_roots[b]);
                assert_eq!(hom as i64 - ext as i64, e);
                assert!(hom == 0 || ext == 0, "both Hom and Ext nonzero");
                if a == b {
                    assert_eq!((hom, ext), (1, 0));
                }
            }
        }
    }
}

#[test]
fn claim_inequality_all_root_pairs() {
    for q in quivers(&["A2", "A3", "A4", "D4"]) {
        for v in &q.roots.positive_roots {
            for w in &q.roots.positive_roots {
                let bound = (-q.euler_form(w, v)).max(0);
                assert!(claim_ineq_max(&q.orientation, v, w) <= bound, "{v} {w}");
            }
        }
    }
}

#[test]
fn ext_does_not_grow_under_restriction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in quivers(&["A3"]) {
        for _ in 0..10 {
            let dv: Vec<usize> = (0..3).map(|_| rng.random_range(0..=2)).collect();
            let dw: Vec<usize> = (0..3).map(|_| rng.random_range(0..=2)).collect();
            let v = random_rep(&q.orientation, &dv, 3, &mut rng);
            let w = random_rep(&q.orientation, &dw, 3, &mut rng);
            let full = hom_ext_dims(&w, &v).unwrap().1;
            for mask in 0..8u32 {
                let keep: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
                let part = hom_ext_dims(&restrict(&w, &keep), &restrict(&v, &keep)).unwrap().1;
                assert!(part <= full);
            }
        }
    }
}

#[test]
fn minimal_pairs_have_euler_values() {
    for q in quivers(&["A2", "A3", "A4", "A5", "D4", "D5", "E6"]) {
        let ar = q.ar_quiver();
        for p in ar.minimal_pairs_any_refinement(&q.roots) {
            assert_eq!(q.euler_form(&p.alpha, &p.beta), -1);
            assert_eq!(q.euler_form(&p.beta, &p.alpha), 0);
        }
    }
}

#[test]
fn claims_hold_on_every_refinement() {
    for q in quivers(&["A2", "A3", "D4"]) {
        let ar = q.ar_quiver();
        let rs = build_root_system(q.orientation.dynkin);
        for order in ar.all_refinements(100_000).unwrap() {
            for p in ar.minimal_pairs(&rs, &order).unwrap() {
                assert!(claim1_check(&rs, &order, &p.alpha, &p.beta).unwrap());
                assert!(claim2_check(&rs, &order, &p.alpha, &p.beta).unwrap());
            }
        }
    }
}
