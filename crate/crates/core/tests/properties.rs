use std::sync::OnceLock;

use proptest::prelude::*;

use klreg_core::ideals;
use klreg_core::oracle::{self, Moves, DEFAULT_BUDGET};
use klreg_core::perm::Permutation;
use klreg_core::pipes::{d_ne, delta};
use klreg_core::skew::compress;
use klreg_core::zip;

fn pairs(n: usize) -> &'static [(Permutation, Permutation)] {
    static CACHE: OnceLock<Vec<Vec<(Permutation, Permutation)>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=6).map(oracle::all_pairs).collect())[n]
}

fn pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (3usize..=6).prop_flat_map(|n| (0..pairs(n).len()).prop_map(move |k| pairs(n)[k].clone()))
}

fn perm() -> impl Strategy<Value = Permutation> {
    (1usize..=9)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn earliest_subword((v, w) in pair()) {
        prop_assert_eq!(d_ne(&v, &w).unwrap(), oracle::brute_earliest_subword(&v, &w, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn zip_invariants((v, w) in pair()) {
        let z = zip::zip(&v, &w).unwrap();
        let (_, maps) = compress(&v).unwrap();
        prop_assert_eq!(z.d_zip.len(), w.length());
        prop_assert!(z.d_zip.pluses.is_subset(&z.d_zip_k.pluses));
        prop_assert_eq!(delta(&v, &maps.pull(&z.d_zip.pluses).unwrap()).unwrap(), w.clone());
        prop_assert_eq!(delta(&v, &maps.pull(&z.d_zip_k.pluses).unwrap()).unwrap(), w.clone());
        prop_assert_eq!(z.degree, zip::groth_degree_recursive(&v, &w).unwrap());
        prop_assert!(z.regularity >= 0 && z.a_invariant <= 0);
        prop_assert_eq!(z.regularity as usize, z.room_sums.iter().sum::<usize>());
    }

    #[test]
    fn closure_pipes_have_product_w((v, w) in pair()) {
        let (_, maps) = compress(&v).unwrap();
        let c = oracle::closure(&v, &w, DEFAULT_BUDGET, Moves::Full).unwrap();
        for d in &c.diagrams {
            prop_assert_eq!(delta(&v, &maps.pull(d).unwrap()).unwrap(), w.clone());
        }
    }

    #[test]
    fn text_forms(u in perm()) {
        prop_assert_eq!(u.to_string().parse::<Permutation>().unwrap(), u.clone());
        let json = serde_json::to_string(&u).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), u.clone());
        prop_assert_eq!(Permutation::from_lehmer_code(&u.lehmer_code()).unwrap(), u.clone());
        prop_assert_eq!(u.rothe_diagram().len(), u.length());
    }
}

#[test]
fn kl_generators_are_homogeneous_and_multilinear() {
    for (v, w) in pairs(5) {
        for g in ideals::kl_generators(v, w).unwrap() {
            assert!(g.is_homogeneous() && g.is_multilinear(), "{v} {w} {g}");
        }
    }
}

#[test]
fn sweep_is_deterministic() {
    let a = oracle::random_pairs(7, 50, 3);
    assert_eq!(a, oracle::random_pairs(7, 50, 3));
    let c1 = oracle::closure(&a[0].0, &a[0].1, DEFAULT_BUDGET, Moves::Full).unwrap();
    let c2 = oracle::closure(&a[0].0, &a[0].1, DEFAULT_BUDGET, Moves::Full).unwrap();
    assert_eq!(c1, c2);
}
