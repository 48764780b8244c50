use std::sync::Arc;

use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use uidim_core::dimension::{
    ui_dimension_exact, ui_dimension_unpruned, vc_dimension_exact, vc_upper_from_ui, ExactLimits,
};
use uidim_core::generate::{random_chain, random_family};
use uidim_core::{scenarios, GroundSet, SetFamily, Subset};

fn lim() -> ExactLimits {
    ExactLimits::default()
}

fn family_from_masks(m: usize, masks: &[u64]) -> SetFamily {
    let g = Arc::new(GroundSet::indexed(m));
    SetFamily::new(g, masks.iter().map(|&x| Subset::from_mask(m, x)).collect()).unwrap()
}

fn arb_family() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1usize..=9).prop_flat_map(|m| (Just(m), prop::collection::vec(0u64..(1 << m), 0..14)))
}

/// Reference definition: maximum over all `h'` of the smallest d for which
/// `H ∩ h'` is d-bounded, found by linear search on d.
fn ui_dimension_reference(f: &SetFamily) -> u32 {
    let m = f.ground_size();
    (0..1u64 << m)
        .map(|h| {
            let r = f.restrict(&Subset::from_mask(m, h));
            (1..).find(|&d| r.is_d_bounded(d)).unwrap()
        })
        .max()
        .unwrap()
}

/// Reference VC dimension: largest shattered subset over all `2^m` candidates.
fn vc_dimension_reference(f: &SetFamily) -> u32 {
    let m = f.ground_size();
    (0..1u64 << m)
        .filter(|&h| f.restrict(&Subset::from_mask(m, h)).len() == 1 << h.count_ones())
        .map(|h| h.count_ones())
        .max()
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn exact_matches_reference((m, masks) in arb_family()) {
        let f = family_from_masks(m, &masks);
        let ui = ui_dimension_exact(&f, &lim()).unwrap();
        prop_assert_eq!(ui.dim, ui_dimension_reference(&f));
        prop_assert_eq!(f.restrict(&ui.witness).min_boundedness().min_d, ui.dim);
        let vc = vc_dimension_exact(&f, &lim()).unwrap();
        prop_assert_eq!(vc.dim, vc_dimension_reference(&f));
        prop_assert_eq!(vc.witness.len() as u32, vc.dim);
        if !f.is_empty() {
            prop_assert_eq!(f.restrict(&vc.witness).len(), 1usize << vc.dim);
        }
    }

    #[test]
    fn pruning_does_not_change_result((m, masks) in arb_family()) {
        let f = family_from_masks(m, &masks);
        prop_assert_eq!(ui_dimension_exact(&f, &lim()).unwrap(), ui_dimension_unpruned(&f, &lim()).unwrap());
    }

    #[test]
    fn chain_iff_dimension_at_most_one((m, masks) in arb_family()) {
        let f = family_from_masks(m, &masks);
        prop_assert_eq!(f.is_chain(), ui_dimension_exact(&f, &lim()).unwrap().dim <= 1);
    }

    #[test]
    fn restriction_never_increases_dimension((m, masks) in arb_family(), h in any::<u64>()) {
        let f = family_from_masks(m, &masks);
        let r = f.restrict(&Subset::from_mask(m, h));
        prop_assert!(ui_dimension_exact(&r, &lim()).unwrap().dim <= ui_dimension_exact(&f, &lim()).unwrap().dim);
    }

    #[test]
    fn vc_is_bounded_by_ui((m, masks) in arb_family()) {
        let f = family_from_masks(m, &masks);
        let ui = ui_dimension_exact(&f, &lim()).unwrap().dim;
        prop_assert!(vc_dimension_exact(&f, &lim()).unwrap().dim <= vc_upper_from_ui(ui));
        prop_assert!(ui >= f.min_boundedness().min_d);
    }
}

#[test]
fn chain_equivalence_on_larger_grounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for m in [12usize, 14, 16] {
        let g = Arc::new(GroundSet::indexed(m));
        for _ in 0..20 {
            let chain = SetFamily::new(g.clone(), random_chain(&mut rng, m, 6)).unwrap();
            assert!(chain.is_chain());
            assert_eq!(ui_dimension_exact(&chain, &lim()).unwrap().dim, 1);
            let f = random_family(&mut rng, &g, 5);
            assert_eq!(f.is_chain(), ui_dimension_exact(&f, &lim()).unwrap().dim <= 1);
        }
    }
}

#[test]
fn half_lines_separate_ui_from_vc() {
    let mut last = 0;
    for n in [2usize, 4, 8, 16] {
        let f = scenarios::diagonal_half_lines(n);
        let ui = ui_dimension_exact(&f, &lim()).unwrap().dim;
        let vc = vc_dimension_exact(&f, &lim()).unwrap().dim;
        assert!(vc <= 1);
        assert_eq!(ui, 1 + (n as f64).log2().ceil() as u32);
        assert!(ui > last);
        last = ui;
    }
}
