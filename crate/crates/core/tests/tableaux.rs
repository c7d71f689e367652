use std::collections::BTreeSet;

use num_bigint::BigUint;
use pipedegen::degeneration::theta_map;
use pipedegen::mcop::{lattice_points, weyl_dim, Weight};
use pipedegen::pipedream::PartitionTables;
use pipedegen::tableaux::{
    enumerate_semistandard, enumerate_semistandard_direct, is_oc_semistandard,
    tableau_chain_bijection, tableau_from_chain, tableau_point, theta_point,
};
use pipedegen::{GtPoset, OcPartition};

fn small_weights() -> Vec<Weight> {
    (1..=3).flat_map(|s| Weight::all_of_size(4, s)).collect()
}

#[test]
fn counts_and_round_trips_at_n4() {
    let p = GtPoset::new(4).unwrap();
    let weights = small_weights();
    for oc in OcPartition::all(&p) {
        let t = PartitionTables::new(&p, &oc);
        for w in &weights {
            let tabs = enumerate_semistandard(&p, &oc, w);
            assert_eq!(BigUint::from(tabs.len()), weyl_dim(w), "{oc:?} {w}");
            assert_eq!(tabs, enumerate_semistandard_direct(&t, w), "{oc:?} {w}");
            for y in &tabs {
                assert!(is_oc_semistandard(y, &t));
                let chain = tableau_chain_bijection(&p, &t, y)
                    .unwrap()
                    .expect("nested chain");
                assert_eq!(&tableau_from_chain(&p, &oc, &chain), y);
            }
        }
    }
}

#[test]
fn tableau_points_match_polytope_images() {
    let p = GtPoset::new(4).unwrap();
    for oc in OcPartition::all(&p).into_iter().step_by(7) {
        let t = PartitionTables::new(&p, &oc);
        let theta = theta_map(&p, &oc, &t);
        for w in [
            Weight::new(vec![1, 1, 0]),
            Weight::new(vec![1, 0, 1]),
            Weight::new(vec![0, 2, 0]),
        ] {
            let a: BTreeSet<_> = enumerate_semistandard(&p, &oc, &w)
                .iter()
                .map(|y| tableau_point(y, 4))
                .collect();
            let b: BTreeSet<_> = lattice_points(&p, &oc, &w)
                .iter()
                .map(|x| theta_point(&p, &theta, x))
                .collect();
            assert_eq!(a, b, "{oc:?} {w}");
        }
    }
}
