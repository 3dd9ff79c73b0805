mod common;

use klreg_core::ideals::{self, Support};
use klreg_core::ladder::{self, examples, Ladder, LadderSpec};
use klreg_core::oracle::{self, Moves, DEFAULT_BUDGET};
use klreg_core::zip;

fn all() -> Vec<Ladder> {
    let mut v = vec![examples::small(), examples::large()];
    v.extend(common::downsized());
    v
}

#[test]
fn pairs_are_321_avoiding_and_comparable() {
    for l in all() {
        let (v, w) = ladder::perm_of(&l).unwrap();
        assert!(v.is_321_avoiding() && w.is_321_avoiding());
        assert!(w.bruhat_leq(&v).unwrap());
        assert_eq!(v.n(), l.n());
    }
}

#[test]
fn path_model_matches_zip() {
    for l in all() {
        let r = ladder::analyze(&l).unwrap();
        assert_eq!(r.regularity, r.zip.regularity, "{:?}", l.lambda);
        assert_eq!(r.a_invariant, r.zip.a_invariant);
        assert_eq!(r.regularity as usize, r.zip.room_sums.iter().sum::<usize>());
        assert_eq!(
            ladder::diagram_of_paths(&l, &r.p_zip).pluses,
            r.zip.d_zip.pluses
        );
    }
}

#[test]
fn droops_replay_the_zip() {
    for l in all() {
        let r = ladder::analyze(&l).unwrap();
        let mut p = r.p_bot.clone();
        for &b in &r.zip.moves {
            p = ladder::droop(&l, &r.boundary, &p, b).unwrap();
        }
        assert_eq!(p, r.p_zip);
    }
}

#[test]
fn envelope_is_the_shortest_solution() {
    for l in common::downsized() {
        let v = klreg_core::perm::Permutation::from_lehmer_code(&ladder::s_v(&l)).unwrap();
        let cons = ladder::rank_constraints(&l, &v);
        let brute = oracle::brute_minimal_w(l.n(), &cons).unwrap();
        assert_eq!(ladder::perm_of(&l).unwrap().1, brute);
    }
}

#[test]
fn nilp_blanks_are_excited_diagrams() {
    let l = &common::downsized()[2];
    let (v, w) = ladder::perm_of(l).unwrap();
    let excited = oracle::closure(&v, &w, DEFAULT_BUDGET, Moves::ExcitedOnly).unwrap();
    let fams = oracle::enumerate_nilp(l, DEFAULT_BUDGET).unwrap();
    let blanks: std::collections::BTreeSet<_> = fams.iter().map(|f| f.blanks(l)).collect();
    assert_eq!(blanks, excited.diagrams);
}

#[test]
fn large_families_all_have_twenty_blanks() {
    let l = examples::large();
    let fams = oracle::enumerate_nilp(&l, DEFAULT_BUDGET).unwrap();
    assert!(!fams.is_empty());
    assert!(fams.iter().all(|f| f.blanks(&l).len() == 20));
}

#[test]
fn every_family_round_trips() {
    let l = &common::downsized()[2];
    let bp = ladder::boundary_points(l).unwrap();
    for f in oracle::enumerate_nilp(l, DEFAULT_BUDGET).unwrap() {
        let d = ladder::diagram_of_paths(l, &f);
        assert_eq!(ladder::paths_of_diagram(l, &bp, &d).unwrap(), f);
    }
}

#[test]
fn ladder_ideal_is_the_kl_ideal() {
    for l in [examples::small()].into_iter().chain(common::downsized()) {
        let (v, w) = ladder::perm_of(&l).unwrap();
        let kl = ideals::kl_generators(&v, &w).unwrap();
        let inside = ideals::ladder_generators_with(&l, Support::Inside).unwrap();
        assert!(inside.is_subset(&kl));
        assert!(ideals::same_ideal(&kl, &inside).unwrap());
        assert!(kl.iter().all(|g| g.is_homogeneous() && g.is_multilinear()));
    }
}

#[test]
fn lemma_chains() {
    for l in all() {
        let (v, w) = ladder::perm_of(&l).unwrap();
        let z = zip::zip(&v, &w).unwrap();
        for (c, chain) in z.components.iter().zip(&z.chains) {
            assert_eq!(&zip::max_diag(c), chain);
        }
    }
}

#[test]
fn json_round_trip() {
    let text = r#"{"lambda":[5,5,5,5,2,2],"mu":[2,1],"marked":[{"point":[4,0],"r":3},{"point":[4,2],"r":2},{"point":[6,3],"r":2}]}"#;
    let spec: LadderSpec = serde_json::from_str(text).unwrap();
    let l = Ladder::try_from(spec).unwrap();
    assert_eq!(l, examples::small());
    let back: LadderSpec =
        serde_json::from_str(&serde_json::to_string(&l.spec()).unwrap()).unwrap();
    assert_eq!(Ladder::try_from(back).unwrap(), l);
}

#[test]
fn minimality_report_on_the_large_ladder() {
    // Every variable is used, but consecutive marks do not have strictly
    // increasing offsets.
    let rep = examples::large().validate_minimal();
    assert!(rep.every_variable_used());
    assert!(!rep.passes());
    assert!(examples::small().validate_minimal().passes());
}

#[test]
fn rejects_marks_off_the_border() {
    use klreg_core::ladder::Mark;
    assert!(Ladder::new(vec![3, 3, 2], vec![1], vec![Mark::new(3, 0, 2)]).is_err());
}
