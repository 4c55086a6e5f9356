//! Property tests for the kernel smoother: an independent brute-force
//! oracle, convex-combination bounds, exact translation invariance on
//! integer geometry, bandwidth minimality, and monotonicity in `n_min`.

use proptest::prelude::*;

use mobiprev_core::{Point, Rect, SurveyCluster};
use mobiprev_prevalence::{
    adaptive_bandwidth, estimate_surface, KernelConfig, PrevalenceField,
};

fn cluster_strategy(
    coord: std::ops::Range<f64>,
    tested: std::ops::Range<u64>,
) -> impl Strategy<Value = SurveyCluster> {
    (coord.clone(), coord, tested, 0.0..=1.0f64).prop_map(|(x, y, n, frac)| {
        let positives = ((n as f64) * frac).floor() as u64;
        SurveyCluster::new(Point::new(x, y), n, positives.min(n)).unwrap()
    })
}

fn integer_cluster_strategy() -> impl Strategy<Value = SurveyCluster> {
    (0i32..50, 0i32..50, 1u64..2000, 0.0..=1.0f64).prop_map(|(x, y, n, frac)| {
        let positives = ((n as f64) * frac).floor() as u64;
        SurveyCluster::new(Point::new(x as f64, y as f64), n, positives.min(n)).unwrap()
    })
}

/// Naive reference smoother written independently of the library: full
/// scan over every (cell, cluster) pair with the cutoff expressed as
/// d/h ≤ 3 and the weight spelled out from the kernel definition.
fn oracle_sample(
    clusters: &[SurveyCluster],
    h: &[f64],
    px: f64,
    py: f64,
) -> (f64, f64, Option<f64>) {
    let mut tested = 0.0;
    let mut positive = 0.0;
    for (i, c) in clusters.iter().enumerate() {
        let dx = px - c.location.x;
        let dy = py - c.location.y;
        let d = (dx * dx + dy * dy).sqrt();
        let u = d / h[i];
        if u <= 3.0 {
            let w = (1.0 / (h[i] * h[i])) * (-u * u / 2.0).exp() / (2.0 * std::f64::consts::PI);
            tested += w * c.n_tested as f64;
            positive += w * c.n_positive as f64;
        }
    }
    let prevalence = if tested >= 1e-12 {
        Some(positive / tested)
    } else {
        None
    };
    (tested, positive, prevalence)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn field_matches_oracle(field: &PrevalenceField, clusters: &[SurveyCluster], h: &[f64]) {
    for cell in field.cells() {
        let (tested, positive, prevalence) =
            oracle_sample(clusters, h, cell.center.x, cell.center.y);
        assert!(
            rel_close(cell.sample.weighted_tested, tested, 1e-12),
            "tested mass diverged at ({}, {}): {} vs {}",
            cell.center.x,
            cell.center.y,
            cell.sample.weighted_tested,
            tested
        );
        assert!(rel_close(cell.sample.weighted_positive, positive, 1e-12));
        match (cell.sample.prevalence, prevalence) {
            (Some(a), Some(b)) => assert!(rel_close(a, b, 1e-12)),
            (None, None) => {}
            (a, b) => panic!("defined flags diverged: {a:?} vs {b:?}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn surface_matches_brute_force_oracle(
        clusters in prop::collection::vec(cluster_strategy(0.0..100.0, 1..1500), 1..20),
        n_min in 1u64..1000,
        step in 4.0..10.0f64,
        width in 10.0..100.0f64,
        height in 10.0..100.0f64,
    ) {
        let cfg = KernelConfig { n_min, grid_step_km: step };
        let bw = adaptive_bandwidth(&clusters, &cfg).unwrap();
        let bbox = Rect { min: Point::new(0.0, 0.0), max: Point::new(width, height) };
        let field = estimate_surface(&clusters, &bw, &cfg, bbox).unwrap();
        prop_assert!(field.nx() <= 25 && field.ny() <= 25);
        field_matches_oracle(&field, &clusters, &bw.h);
    }

    #[test]
    fn defined_cells_stay_inside_the_cluster_prevalence_range(
        clusters in prop::collection::vec(cluster_strategy(0.0..80.0, 1..2000), 2..10),
        n_min in 50u64..800,
    ) {
        let cfg = KernelConfig { n_min, grid_step_km: 5.0 };
        let bw = adaptive_bandwidth(&clusters, &cfg).unwrap();
        let bbox = Rect { min: Point::new(0.0, 0.0), max: Point::new(80.0, 80.0) };
        let field = estimate_surface(&clusters, &bw, &cfg, bbox).unwrap();
        let prevs: Vec<f64> = clusters.iter().filter_map(|c| c.prevalence()).collect();
        let lo = prevs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = prevs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for cell in field.cells() {
            if let Some(p) = cell.sample.prevalence {
                prop_assert!(p >= lo - 1e-9 && p <= hi + 1e-9,
                    "cell at ({}, {}) estimated {} outside [{}, {}]",
                    cell.center.x, cell.center.y, p, lo, hi);
                prop_assert!((0.0..=1.0).contains(&p));
            }
        }
    }

    #[test]
    fn integer_translation_shifts_the_surface_bitwise(
        clusters in prop::collection::vec(integer_cluster_strategy(), 1..12),
        n_min in 1u64..1500,
        shift_x in -1000i32..1000,
        shift_y in -1000i32..1000,
        step in prop::sample::select(vec![1.0f64, 2.5, 5.0]),
    ) {
        let cfg = KernelConfig { n_min, grid_step_km: step };
        let bbox = Rect { min: Point::new(0.0, 0.0), max: Point::new(50.0, 50.0) };
        let bw = adaptive_bandwidth(&clusters, &cfg).unwrap();
        let field = estimate_surface(&clusters, &bw, &cfg, bbox).unwrap();

        let (dx, dy) = (shift_x as f64, shift_y as f64);
        let shifted: Vec<SurveyCluster> = clusters.iter().map(|c| {
            SurveyCluster::new(
                Point::new(c.location.x + dx, c.location.y + dy),
                c.n_tested,
                c.n_positive,
            ).unwrap()
        }).collect();
        let shifted_bbox = Rect {
            min: Point::new(bbox.min.x + dx, bbox.min.y + dy),
            max: Point::new(bbox.max.x + dx, bbox.max.y + dy),
        };
        let shifted_bw = adaptive_bandwidth(&shifted, &cfg).unwrap();
        prop_assert_eq!(&bw, &shifted_bw);
        let shifted_field = estimate_surface(&shifted, &shifted_bw, &cfg, shifted_bbox).unwrap();

        prop_assert_eq!(field.cells().len(), shifted_field.cells().len());
        for (a, b) in field.cells().iter().zip(shifted_field.cells()) {
            prop_assert_eq!(a.center.x + dx, b.center.x);
            prop_assert_eq!(a.center.y + dy, b.center.y);
            prop_assert_eq!(
                a.sample.weighted_tested.to_bits(),
                b.sample.weighted_tested.to_bits()
            );
            prop_assert_eq!(
                a.sample.weighted_positive.to_bits(),
                b.sample.weighted_positive.to_bits()
            );
            prop_assert_eq!(
                a.sample.prevalence.map(f64::to_bits),
                b.sample.prevalence.map(f64::to_bits)
            );
        }
    }

    #[test]
    fn bandwidths_cover_n_min_and_are_minimal(
        clusters in prop::collection::vec(cluster_strategy(0.0..60.0, 1..1200), 1..15),
        n_min in 1u64..2000,
        step in 1.0..8.0f64,
    ) {
        let cfg = KernelConfig { n_min, grid_step_km: step };
        let bw = adaptive_bandwidth(&clusters, &cfg).unwrap();
        let total: u64 = clusters.iter().map(|c| c.n_tested).sum();
        prop_assert_eq!(bw.degenerate, total < n_min);
        for &h in &bw.h {
            prop_assert!(h >= step);
        }
        if !bw.degenerate {
            for (i, ci) in clusters.iter().enumerate() {
                let h = bw.h[i];
                let enclosed: u64 = clusters.iter()
                    .filter(|c| ci.location.dist(c.location) <= h)
                    .map(|c| c.n_tested)
                    .sum();
                prop_assert!(enclosed >= n_min,
                    "cluster {i}: {enclosed} tested within h = {h}, needed {n_min}");
                // Wherever the floor was not binding, the radius is tight:
                // shrinking it below the crossing distance loses coverage.
                if h > step {
                    let strictly_inside: u64 = clusters.iter()
                        .filter(|c| ci.location.dist(c.location) < h)
                        .map(|c| c.n_tested)
                        .sum();
                    prop_assert!(strictly_inside < n_min,
                        "cluster {i}: radius {h} is not minimal");
                }
            }
        }
    }

    #[test]
    fn bandwidths_grow_monotonically_with_n_min(
        clusters in prop::collection::vec(cluster_strategy(0.0..60.0, 1..1200), 1..15),
        a in 1u64..2000,
        b in 1u64..2000,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let small = adaptive_bandwidth(&clusters, &KernelConfig { n_min: lo, grid_step_km: 5.0 }).unwrap();
        let large = adaptive_bandwidth(&clusters, &KernelConfig { n_min: hi, grid_step_km: 5.0 }).unwrap();
        for (x, y) in small.h.iter().zip(&large.h) {
            prop_assert!(x <= y, "n_min {lo} gave h {x}, n_min {hi} gave smaller h {y}");
        }
    }
}
