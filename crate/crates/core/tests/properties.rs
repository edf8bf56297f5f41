use proptest::prelude::*;

use sring::duality::dual_sring;
use sring::modarith::{divisors, gcd, subgroup};
use sring::oracle::{enumerate_srings, find_isomorphism, intersect, is_isomorphism, OracleLimits};
use sring::section::{all_sections, f_unit, ProjectiveLattice, Section};
use sring::similarity::similarities;
use sring::sring::{closure, tensor};
use sring::verify::{equivalent_closed_form, f_unit_closed_form};
use sring::{ResidueSet, SRing};

fn seeds(max_n: u32) -> impl Strategy<Value = (u32, Vec<Vec<u32>>)> {
    (2..=max_n).prop_flat_map(|n| {
        let set = prop::collection::vec(0..n, 1..4);
        (Just(n), prop::collection::vec(set, 0..3))
    })
}

fn closure_of(n: u32, seeds: &[Vec<u32>]) -> SRing {
    let sets: Vec<ResidueSet> = seeds
        .iter()
        .map(|s| ResidueSet::from_iter(n, s.iter().copied()))
        .collect();
    closure(n, &sets)
}

fn section_pair(n: u32) -> impl Strategy<Value = (Section, Section)> {
    let all = all_sections(n);
    (prop::sample::select(all.clone()), prop::sample::select(all))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_an_idempotent_sring((n, s) in seeds(40)) {
        let a = closure_of(n, &s);
        prop_assert!(a.check_axioms().is_ok());
        prop_assert_eq!(closure(n, a.classes()), a.clone());
        for seed in &s {
            let set = ResidueSet::from_iter(n, seed.iter().copied());
            prop_assert!(a.is_union_of_classes(&set));
        }
    }

    #[test]
    fn closure_is_minimal((n, s) in seeds(12)) {
        let a = closure_of(n, &s);
        let sets: Vec<ResidueSet> =
            s.iter().map(|x| ResidueSet::from_iter(n, x.iter().copied())).collect();
        for b in enumerate_srings(n, &OracleLimits::default()).unwrap() {
            if sets.iter().all(|x| b.is_union_of_classes(x)) {
                // every S-ring containing the seeds contains the closure
                prop_assert!(a.classes().iter().all(|x| b.is_union_of_classes(x)));
            }
        }
    }

    #[test]
    fn dual_is_an_involution((n, s) in seeds(30)) {
        let a = closure_of(n, &s);
        let d = dual_sring(&a).unwrap();
        prop_assert_eq!(d.rank(), a.rank());
        prop_assert_eq!(dual_sring(&d).unwrap(), a);
    }

    #[test]
    fn restriction_composes((n, s) in seeds(36)) {
        let a = closure_of(n, &s);
        let secs = a.sections();
        for outer in &secs {
            let r = a.restriction(outer).unwrap();
            for inner in secs.iter().filter(|t| t.is_subsection_of(outer)) {
                let local = Section::new(outer.order(), inner.l() / outer.l(), inner.u() / outer.l()).unwrap();
                prop_assert_eq!(r.restriction(&local).unwrap(), a.restriction(inner).unwrap());
            }
        }
    }

    #[test]
    fn intersection_is_common_coarsening((n, s) in seeds(24), t in prop::collection::vec(prop::collection::vec(0u32..24, 1..3), 0..3)) {
        let a = closure_of(n, &s);
        let b = closure_of(n, &t);
        let c = intersect(&a, &b).unwrap();
        for x in c.classes() {
            prop_assert!(a.is_union_of_classes(x) && b.is_union_of_classes(x));
        }
    }

    #[test]
    fn similarities_form_a_group((n, s) in seeds(20)) {
        let a = closure_of(n, &s);
        let sims = similarities(&a, &a);
        for x in &sims {
            prop_assert!(sims.contains(&x.inverse()));
            for y in &sims {
                prop_assert!(sims.contains(&x.then(y)));
            }
        }
    }

    #[test]
    fn found_isomorphisms_recheck((n, s) in seeds(14)) {
        let a = closure_of(n, &s);
        let limits = OracleLimits::default();
        for sim in similarities(&a, &a) {
            if let Some(f) = find_isomorphism(&a, &a, &sim, &limits).unwrap() {
                prop_assert!(is_isomorphism(&a, &a, &sim, &f));
            }
        }
    }

    #[test]
    fn f_unit_matches_closed_form(
        (s, t) in (1u32..=72).prop_flat_map(section_pair)
    ) {
        let lattice = ProjectiveLattice::new(s.n());
        prop_assert_eq!(lattice.equivalent(&s, &t), equivalent_closed_form(&s, &t));
        if lattice.equivalent(&s, &t) {
            let c = f_unit(&s, &t).unwrap();
            prop_assert_eq!(c, f_unit_closed_form(&s, &t));
            prop_assert!(s.order() == 1 || gcd(c, s.order()) == 1);
        }
    }

    #[test]
    fn transport_preserves_order(
        (s, t) in (1u32..=60).prop_flat_map(section_pair)
    ) {
        let lattice = ProjectiveLattice::new(s.n());
        if lattice.equivalent(&s, &t) {
            for sub in all_sections(s.n()).into_iter().filter(|x| x.is_subsection_of(&s)) {
                let moved = s.transport_subsection(&sub, &t);
                prop_assert!(moved.is_subsection_of(&t));
                prop_assert_eq!(moved.order(), sub.order());
            }
        }
    }

    #[test]
    fn json_round_trip((n, s) in seeds(40)) {
        let a = closure_of(n, &s);
        let text = serde_json::to_string(&a).unwrap();
        let back: SRing = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn tensor_of_coprime_factors_validates() {
    let limits = OracleLimits::default();
    for (p, q) in [(2, 3), (3, 4), (2, 5), (4, 5)] {
        for a in enumerate_srings(p, &limits).unwrap() {
            for b in enumerate_srings(q, &limits).unwrap() {
                let t = tensor(&a, &b).unwrap();
                assert!(t.check_axioms().is_ok());
                assert_eq!(t.rank(), a.rank() * b.rank());
            }
        }
    }
}

#[test]
fn a_groups_are_exactly_the_subgroups_made_of_classes() {
    for n in [12u32, 18, 30] {
        let a = closure_of(n, &[vec![1, n - 1]]);
        let expected: Vec<u32> = divisors(n)
            .into_iter()
            .filter(|&d| a.is_union_of_classes(&subgroup(n, d).unwrap()))
            .collect();
        assert_eq!(a.a_subgroups(), expected);
    }
}
