//! Property tests over randomly generated clouds.

use proptest::prelude::*;

use phrigid::circumsphere::circumsphere_residual;
use phrigid::filtration::{build_filtered_complex, preorder_signature, FiltrationKind};
use phrigid::geometry::{
    circumradius_squared, min_enclosing_radius, min_enclosing_sphere, PointCloud, SimplexKey,
};
use phrigid::persistence::compute_barcodes;

fn cloud_strategy(n: usize, d: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::collection::vec(-10.0..10.0f64, d), n)
        .prop_filter_map("distinct points", |points| PointCloud::new(points).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_values_never_exceed_cofaces(cloud in cloud_strategy(5, 2)) {
        for kind in [FiltrationKind::VietorisRips, FiltrationKind::Cech] {
            let complex = build_filtered_complex(&cloud, kind, 2, usize::MAX).unwrap();
            for (simplex, value) in complex.entries() {
                for facet in simplex.facets() {
                    let fv = complex.value(&facet).unwrap();
                    prop_assert!(fv <= *value);
                }
            }
        }
    }

    #[test]
    fn vr_and_cech_pair_values_agree(cloud in cloud_strategy(6, 3)) {
        let vr = build_filtered_complex(&cloud, FiltrationKind::VietorisRips, 0, usize::MAX)
            .unwrap();
        let cech = build_filtered_complex(&cloud, FiltrationKind::Cech, 0, usize::MAX).unwrap();
        for (simplex, value) in vr.entries() {
            if simplex.len() == 2 {
                let cv = cech.value(simplex).unwrap();
                prop_assert!((cv - value).abs() <= 1e-12 * (1.0 + value.abs()));
            }
        }
    }

    #[test]
    fn barcodes_survive_tie_shuffles(cloud in cloud_strategy(5, 2), seed in 0u64..1000) {
        let complex =
            build_filtered_complex(&cloud, FiltrationKind::VietorisRips, 2, usize::MAX).unwrap();
        let base = compute_barcodes(&complex, 2);
        let shuffled = compute_barcodes(&complex.shuffled_within_ties(seed), 2);
        prop_assert_eq!(base, shuffled);
    }

    #[test]
    fn residual_is_antisymmetric(p in cloud_strategy(4, 2), q in cloud_strategy(4, 2)) {
        for simplex in [
            SimplexKey::new(vec![0, 1]).unwrap(),
            SimplexKey::new(vec![0, 2, 3]).unwrap(),
        ] {
            let ab = circumsphere_residual(&p, &q, &simplex).unwrap();
            let ba = circumsphere_residual(&q, &p, &simplex).unwrap();
            let scale = ab.abs().max(1.0);
            prop_assert!((ab + ba).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn enclosing_radius_is_sandwiched(cloud in cloud_strategy(6, 2)) {
        let simplex = SimplexKey::new(vec![0, 1, 2, 3, 4, 5]).unwrap();
        let enc = min_enclosing_sphere(&cloud, &simplex).unwrap();
        // At least half the largest pairwise distance.
        let mut half_max = 0.0f64;
        for (i, j) in simplex.pairs() {
            half_max = half_max.max(cloud.distance(i, j).unwrap() / 2.0);
        }
        prop_assert!(enc.sphere.radius >= half_max * (1.0 - 1e-9));
        // At most the circumradius of the (affinely independent) support.
        if let Ok(r2) = circumradius_squared(&cloud, &enc.support) {
            prop_assert!(enc.sphere.radius <= r2.sqrt() * (1.0 + 1e-9));
        }
        // Restriction to the support preserves the radius.
        let restricted = min_enclosing_radius(&cloud, &enc.support).unwrap();
        prop_assert!((restricted - enc.sphere.radius).abs() <= 1e-9 * (1.0 + enc.sphere.radius));
    }

    #[test]
    fn signature_partition_is_total(cloud in cloud_strategy(5, 2)) {
        let complex =
            build_filtered_complex(&cloud, FiltrationKind::Cech, 2, usize::MAX).unwrap();
        let sig = preorder_signature(&complex, 1e-9);
        let total: usize = sig.groups.iter().map(|g| g.simplices.len()).sum();
        prop_assert_eq!(total, complex.len());
        for w in sig.groups.windows(2) {
            prop_assert!(w[0].value < w[1].value);
        }
    }
}
