use antisym_core::bounds::ec_lower;
use antisym_core::exact::to_f64;
use antisym_core::oracle::{max_purity, max_reduced_operator_norm, max_separable_overlap, ppt_direct_check, OptimizerConfig};
use antisym_core::repspace::{haar_unitary, Dimension, IsotypicStates, YoungSymbol};
use antisym_core::zeta::{ef_lower_bound, zeta_full, ZetaSource};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn isotypic_states_are_local_unitary_invariant() {
    for d in [3usize, 4] {
        let iso = IsotypicStates::new(d).unwrap();
        let states: Vec<_> = iso
            .present()
            .into_iter()
            .map(|y| iso.embed(&iso.state(y)).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        for _ in 0..20 {
            let g = haar_unitary(d, &mut rng);
            for rho in &states {
                let moved = rho.conjugate_local(&g).unwrap();
                assert!(moved.max_abs_diff(rho) < 1e-9, "d={d}");
            }
        }
    }
}

#[test]
fn oracles_stay_below_relaxations() {
    let cfg = OptimizerConfig::default().with_restarts(40);
    for d in 3..=6 {
        let relax = to_f64(&zeta_full(1, Dimension::Finite(d)).unwrap());
        let purity = max_purity(1, d, &cfg).unwrap().value;
        assert!(purity <= relax + 1e-6, "d={d}: {purity} > {relax}");
        assert!(-purity.log2() >= ec_lower() - 1e-4);
    }
    let relax = to_f64(&zeta_full(2, Dimension::Finite(3)).unwrap());
    let purity = max_purity(2, 3, &cfg).unwrap().value;
    assert!(purity <= relax + 1e-5);
    assert!(-purity.log2() >= 2.0 * ec_lower() - 1e-4);
}

#[test]
fn separable_overlap_below_square_root_of_purity() {
    let cfg = OptimizerConfig::default().with_restarts(40);
    let purity = max_purity(2, 3, &cfg).unwrap().value;
    let overlap = max_separable_overlap(2, 3, &cfg).unwrap().value;
    let opnorm = max_reduced_operator_norm(2, 3, &cfg).unwrap().value;
    assert!(overlap <= purity.sqrt() + 1e-5);
    assert!(opnorm <= purity.sqrt() + 1e-5);
}

#[test]
fn oracle_runs_are_reproducible() {
    let cfg = OptimizerConfig::default().with_restarts(12).with_seed(99);
    assert_eq!(max_purity(2, 4, &cfg).unwrap(), max_purity(2, 4, &cfg).unwrap());
    assert_eq!(max_separable_overlap(2, 3, &cfg).unwrap(), max_separable_overlap(2, 3, &cfg).unwrap());
    let other = max_purity(2, 4, &cfg.with_seed(100)).unwrap();
    assert_eq!(other.point_shape, (16, 16));
}

#[test]
fn simplified_source_bits() {
    let ef = ef_lower_bound(4, ZetaSource::Simplified).unwrap();
    assert!(ef.per_copy_bits >= ec_lower() - 1e-12);
}

fn probability(raw: &[u32]) -> Vec<f64> {
    let total: u32 = raw.iter().sum();
    raw.iter().map(|&x| x as f64 / total as f64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ppt_sign_equivalence_single_copy(raw in prop::collection::vec(0u32..50, 3), d in 4usize..=6) {
        prop_assume!(raw.iter().sum::<u32>() > 0);
        let check = ppt_direct_check(d, &probability(&raw), 1).unwrap();
        prop_assert_eq!(check.direct_ppt, check.lp_ppt);
    }

    #[test]
    fn ppt_sign_equivalence_two_copies(raw in prop::collection::vec(0u32..50, 9), d in 3usize..=5) {
        prop_assume!(raw.iter().sum::<u32>() > 0);
        let check = ppt_direct_check(d, &probability(&raw), 2).unwrap();
        prop_assert_eq!(check.direct_ppt, check.lp_ppt);
    }
}

#[test]
fn isotypic_symbol_order_is_fixed() {
    assert_eq!(YoungSymbol::ALL, [YoungSymbol::Y1111, YoungSymbol::Y22, YoungSymbol::Y211]);
}
