//! Cross-module invariants on the public API.

use std::f64::consts::PI;

use proptest::prelude::*;

use fraclat_core::continuum::{riesz_kernel_periodic, KernelSpec};
use fraclat_core::lattice1d::{element_infinite_closed, element_periodic_bloch, element_periodic_images};
use fraclat_core::lattice_nd::{element_periodic_nd, normalized_frequency_2d};
use fraclat_core::record::{Cell, OutputRecord};
use fraclat_core::{FractionalOrder, LatticeSpec, OffsetVector};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn periodic_routes_agree(alpha in 0.1f64..3.9, n in 2usize..64, p in -70i64..70) {
        let o = FractionalOrder::new(alpha).unwrap();
        let a = element_periodic_bloch(&o, n, p).unwrap();
        let b = element_periodic_images(&o, n, p.rem_euclid(n as i64), 1e-12).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "{} {}", a, b);
        let mirrored = element_periodic_bloch(&o, n, n as i64 - p).unwrap();
        prop_assert!((a - mirrored).abs() < 1e-12);
    }

    #[test]
    fn off_diagonal_sign(alpha in 0.05f64..1.99, p in 1u64..500) {
        // below α = 2 every coupling is attractive
        prop_assert!(element_infinite_closed(&FractionalOrder::new(alpha).unwrap(), p) < 0.0);
    }

    #[test]
    fn torus_reduces_to_chain(alpha in 0.2f64..3.0, n in 2usize..24, p in 0i64..24) {
        let o = FractionalOrder::new(alpha).unwrap();
        let lat = LatticeSpec::periodic(vec![n, 1 + n]).unwrap();
        // a 2D sum over the second axis with zero offset is not the chain value,
        // but a 1D torus is
        let chain = LatticeSpec::periodic(vec![n]).unwrap();
        let a = element_periodic_nd(&o, &chain, &OffsetVector::new(vec![p])).unwrap();
        let b = element_periodic_bloch(&o, n, p).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
        let v = element_periodic_nd(&o, &lat, &OffsetVector::new(vec![p, 0])).unwrap();
        prop_assert!(v.is_finite());
    }

    #[test]
    fn frequency_monotone_along_axis(alpha in 0.1f64..4.0, a in 0.0f64..PI, b in 0.0f64..PI) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(normalized_frequency_2d(alpha, lo, 0.0) <= normalized_frequency_2d(alpha, hi, 0.0));
    }

    #[test]
    fn kernel_period_translation(alpha in 0.1f64..1.9, x in 0.05f64..0.95, k in -5i32..5) {
        let s = KernelSpec::periodic(alpha, 1.0).unwrap();
        let a = riesz_kernel_periodic(&s, x).unwrap();
        let b = riesz_kernel_periodic(&s, x + k as f64).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a);
    }

    #[test]
    fn record_payload_survives_both_formats(vals in proptest::collection::vec(-1e300f64..1e300, 1..30)) {
        let mut r = OutputRecord::new("prop", &["i", "v", "tag"]);
        for (i, v) in vals.iter().enumerate() {
            r.push_row(vec![Cell::Int(i as i64), Cell::Real(*v), Cell::Text("x,y".into())]).unwrap();
        }
        prop_assert!(OutputRecord::from_csv(&r.to_csv()).unwrap().payload_eq(&r));
        prop_assert!(OutputRecord::from_json(&r.to_json()).unwrap().payload_eq(&r));
    }
}
