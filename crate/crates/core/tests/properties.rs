mod common;

macro_rules! property {
    ($name:ident, $check:path) => {
        #[test]
        fn $name() {
            if let Err(e) = $check() {
                panic!("{e}");
            }
        }
    };
}

property!(exchange_axiom_matches_brute_force, common::prop_exchange_axiom);
property!(dual_is_an_involution, common::prop_dual_involution);
property!(deletion_dualizes_to_contraction, common::prop_delete_contract_duality);
property!(levelness_is_minor_monotone, common::prop_minor_monotone_levelness);
property!(facets_match_brute_force_hull, common::prop_facets_match_hull);
property!(series_connection_vertex_isomorphism, common::prop_series_vertex_isomorphism);
property!(series_connection_levelness_is_max, common::prop_series_max_rule);
property!(k_sequences_are_valid, common::prop_k_sequences);

use matroid_theta::constructions::decompose;
use matroid_theta::enumeration::{all_classes, excluded_minors_present};

#[test]
fn decomposition_recomposes_exactly() {
    for n in 0..=6 {
        for m in all_classes(n).unwrap() {
            assert_eq!(decompose(&m).recompose().unwrap(), m, "{:?}", m.basis_lists());
        }
    }
}

#[test]
fn three_connected_without_excluded_minors_is_uniform() {
    let mut checked = 0;
    for n in 0..=7 {
        for m in all_classes(n).unwrap() {
            if m.is_three_connected() && excluded_minors_present(&m).is_empty() {
                assert!(m.is_uniform(), "{:?}", m.basis_lists());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
