use std::sync::Arc;

use proptest::prelude::*;
use uidim_core::{GroundSet, SetFamily, Subset};

fn family_from_masks(m: usize, masks: &[u64]) -> SetFamily {
    let g = Arc::new(GroundSet::indexed(m));
    SetFamily::new(g, masks.iter().map(|&x| Subset::from_mask(m, x)).collect()).unwrap()
}

fn arb_family() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1usize..=8).prop_flat_map(|m| (Just(m), prop::collection::vec(0u64..(1 << m), 0..12)))
}

/// Smallest d found by trying d = 1, 2, ... directly against the definition.
fn linear_search_min_d(f: &SetFamily) -> u32 {
    (1..).find(|&d| f.is_d_bounded(d)).unwrap()
}

proptest! {
    #[test]
    fn restriction_to_ground_is_identity((m, masks) in arb_family()) {
        let f = family_from_masks(m, &masks);
        prop_assert_eq!(f.restrict(&Subset::full(m)), f);
    }

    #[test]
    fn restriction_composes((m, masks) in arb_family(), a in any::<u64>(), b in any::<u64>()) {
        let f = family_from_masks(m, &masks);
        let (h1, h2) = (Subset::from_mask(m, a), Subset::from_mask(m, b));
        prop_assert_eq!(f.restrict(&h1).restrict(&h2), f.restrict(&h1.intersection(&h2)));
    }

    #[test]
    fn boundedness_is_monotone_in_d((m, masks) in arb_family(), d in 1u32..6) {
        let f = family_from_masks(m, &masks);
        if f.is_d_bounded(d) {
            prop_assert!(f.is_d_bounded(d + 1));
        }
    }

    #[test]
    fn closed_form_min_d_matches_search((m, masks) in arb_family()) {
        let f = family_from_masks(m, &masks);
        let report = f.min_boundedness();
        prop_assert_eq!(report.min_d, linear_search_min_d(&f));
        if report.min_d > 1 {
            prop_assert!(!f.is_d_bounded(report.min_d - 1));
            let j = report.violating_j.unwrap();
            prop_assert!(f.count_of_size(j) as u64 > (j as u64 + 1).pow(report.min_d - 2));
        }
    }

    #[test]
    fn profile_matches_recount((m, masks) in arb_family()) {
        let f = family_from_masks(m, &masks);
        let total: usize = f.profile().values().sum();
        prop_assert_eq!(total, f.len());
        for (&j, &c) in f.profile() {
            prop_assert_eq!(f.sets().iter().filter(|s| s.len() == j).count(), c);
        }
        prop_assert!(f.sets().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn subtract_is_restrict_to_complement((m, masks) in arb_family(), a in any::<u64>()) {
        let f = family_from_masks(m, &masks);
        let h = Subset::from_mask(m, a);
        prop_assert_eq!(f.subtract(&h), f.restrict(&Subset::full(m).difference(&h)));
    }
}

/// Every restriction of a chain is 1-bounded; checked over all `2^12`
/// restrictions of random maximal chains on 12 elements.
#[test]
fn chains_have_one_bounded_restrictions() {
    let m = 12;
    for rotation in 0..6 {
        let order: Vec<usize> = (0..m).map(|i| (i * 5 + rotation) % m).collect();
        let sets: Vec<Subset> = (0..=m).map(|k| Subset::from_indices(m, order[..k].iter().copied())).collect();
        let f = SetFamily::new(Arc::new(GroundSet::indexed(m)), sets).unwrap();
        assert!(f.is_chain());
        for h in 0..1u64 << m {
            assert!(f.restrict(&Subset::from_mask(m, h)).is_d_bounded(1));
        }
    }
}
