//! Property tests: exact integer slot partitions, movement geometry
//! against exhaustive oracles, bit-exact translation and dyadic-scaling
//! behavior, percentile monotonicity, and mean normalization.

mod common;

use approx::relative_eq;
use chrono::{Days, NaiveDate};
use mobiprev_core::{AntennaId, AntennaRecord, DeptId, Point};
use mobiprev_features::{
    activity_tallies, connectivity_tallies, normalize_by_mean, percentile_type7, spatial_metrics,
    ColumnMeta, Family, FeatureMatrix, INNER, ORIGINATING, OVERALL, SLOTS_PER_DAY_TYPE,
    TERMINATING, WHOLE_DAY_SLOT,
};
use ndarray::Array2;
use proptest::prelude::*;

fn hour_start(day: u64, hour: u32) -> chrono::NaiveDateTime {
    NaiveDate::from_ymd_opt(2011, 12, 1)
        .unwrap()
        .checked_add_days(Days::new(day))
        .unwrap()
        .and_hms_opt(hour, 0, 0)
        .unwrap()
}

// ---------------------------------------------------------------------
// Slot partitions: the 24 hourly cells, the 3 eight-hour cells and the
// whole-day cell of each day type are three tallies of the same events,
// so their sums agree exactly in integers, and the two whole-day cells
// add up to the whole-window total.
// ---------------------------------------------------------------------

fn check_partition(cells: &[u64], window_total: u64) -> Result<(), TestCaseError> {
    let mut across_days = 0u64;
    for block in [0, SLOTS_PER_DAY_TYPE] {
        let day = cells[block + WHOLE_DAY_SLOT];
        let hourly: u64 = (0..24).map(|k| cells[block + k]).sum();
        let eight_hour: u64 = (24..27).map(|k| cells[block + k]).sum();
        prop_assert_eq!(hourly, day);
        prop_assert_eq!(eight_hour, day);
        across_days += day;
    }
    prop_assert_eq!(across_days, window_total);
    Ok(())
}

proptest! {
    #[test]
    fn connectivity_slots_partition_exactly(
        raw in prop::collection::vec(
            (0u64..150, 0u32..24, 1u32..=6, 1u32..=6, 0u64..50, 0u64..5000),
            0..80,
        )
    ) {
        let h = common::grid_world(3, 2, 10.0);
        let records: Vec<AntennaRecord> = raw
            .iter()
            .map(|&(day, hour, o, d, n, dur)| AntennaRecord {
                hour_start: hour_start(day, hour),
                origin: AntennaId(o),
                dest: AntennaId(d),
                n_calls: n,
                total_duration_s: dur,
            })
            .collect();
        let t = connectivity_tallies(&records, &h);
        prop_assert_eq!(t.skipped_records, 0);
        for i in 0..t.depts.len() {
            let wc = t.window_calls[i];
            let wd = t.window_durations[i];
            prop_assert_eq!(wc[OVERALL], wc[INNER] + wc[ORIGINATING] + wc[TERMINATING]);
            prop_assert_eq!(wd[OVERALL], wd[INNER] + wd[ORIGINATING] + wd[TERMINATING]);
            check_partition(&t.slot_calls[i], wc[OVERALL])?;
            check_partition(&t.slot_durations[i], wd[OVERALL])?;
        }
    }

    #[test]
    fn activity_slots_partition_exactly(
        raw in prop::collection::vec((1u64..=8, 0u64..150, 0u32..24), 0..80)
    ) {
        let h = common::grid_world(3, 2, 10.0);
        // Users 1..=6 live in departments 1..=6; users 7 and 8 are unhomed.
        let homes = common::homes_of(&(1..=6u64).map(|u| (u, u as u32)).collect::<Vec<_>>());
        let records: Vec<_> = raw
            .iter()
            .map(|&(u, day, hour)| {
                let mut r = common::traj(u, "2011-12-01T00:00:00", 1);
                r.at = hour_start(day, hour);
                r
            })
            .collect();
        let t = activity_tallies(&records, &homes, &h);
        let homed = raw.iter().filter(|&&(u, _, _)| u <= 6).count() as u64;
        prop_assert_eq!(t.skipped_records + homed, raw.len() as u64);
        prop_assert_eq!(t.overall.iter().sum::<u64>(), homed);
        for i in 0..t.depts.len() {
            check_partition(&t.slot_events[i], t.overall[i])?;
        }
    }
}

// ---------------------------------------------------------------------
// Geometry oracles. Coordinates are integer-valued, so every orientation
// test below is exact and the reference hull is found by brute force: a
// point is a strict hull vertex iff no triangle or segment of the other
// points contains it.
// ---------------------------------------------------------------------

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_closed_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

fn in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    if orient(a, b, c) == 0.0 {
        return false; // degenerate; the segment test covers the line case
    }
    let d1 = orient(a, b, p);
    let d2 = orient(b, c, p);
    let d3 = orient(c, a, p);
    (d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0) || (d1 <= 0.0 && d2 <= 0.0 && d3 <= 0.0)
}

fn oracle_hull(points: &[Point]) -> (f64, f64) {
    let mut d: Vec<Point> = points.to_vec();
    d.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    d.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    let mut vertices: Vec<Point> = d
        .iter()
        .copied()
        .filter(|&p| {
            let others: Vec<Point> =
                d.iter().copied().filter(|q| q.x != p.x || q.y != p.y).collect();
            let in_segment = others
                .iter()
                .enumerate()
                .any(|(i, &a)| others[i + 1..].iter().any(|&b| on_closed_segment(p, a, b)));
            let in_triangle = (0..others.len()).any(|i| {
                (i + 1..others.len()).any(|j| {
                    (j + 1..others.len())
                        .any(|k| in_closed_triangle(p, others[i], others[j], others[k]))
                })
            });
            !in_segment && !in_triangle
        })
        .collect();
    match vertices.len() {
        0 | 1 => (0.0, 0.0),
        2 => (0.0, 2.0 * vertices[0].dist(vertices[1])),
        n => {
            let cx = vertices.iter().map(|p| p.x).sum::<f64>() / n as f64;
            let cy = vertices.iter().map(|p| p.y).sum::<f64>() / n as f64;
            vertices.sort_by(|a, b| {
                (a.y - cy).atan2(a.x - cx).total_cmp(&(b.y - cy).atan2(b.x - cx))
            });
            let mut twice_area = 0.0;
            let mut perimeter = 0.0;
            for (i, &a) in vertices.iter().enumerate() {
                let b = vertices[(i + 1) % n];
                twice_area += a.x * b.y - a.y * b.x;
                perimeter += a.dist(b);
            }
            (twice_area.abs() / 2.0, perimeter)
        }
    }
}

/// Radius of gyration through the E‖p‖² − ‖Ep‖² identity, in raw
/// coordinates — a different decomposition from the production centroid
/// loop.
fn oracle_gyration(points: &[Point]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.x).sum::<f64>() / n;
    let my = points.iter().map(|p| p.y).sum::<f64>() / n;
    let ms = points.iter().map(|p| p.x * p.x + p.y * p.y).sum::<f64>() / n;
    (ms - mx * mx - my * my).max(0.0).sqrt()
}

fn oracle_diameter(points: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            best = best.max(points[i].dist2(points[j]));
        }
    }
    best.sqrt()
}

fn int_points(range: std::ops::RangeInclusive<i32>, max_len: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((range.clone(), range), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x as f64, y as f64)).collect())
}

proptest! {
    #[test]
    fn metrics_match_the_exhaustive_oracle(points in int_points(-20..=20, 12)) {
        let m = spatial_metrics(&points);
        if points.len() < 2 {
            prop_assert_eq!(m.as_array(), [0.0; 4]);
            return Ok(());
        }
        let (area, perimeter) = oracle_hull(&points);
        let close = |a: f64, b: f64| relative_eq!(a, b, epsilon = 1e-9, max_relative = 1e-9);
        prop_assert!(close(m.hull_area, area), "area {} vs oracle {}", m.hull_area, area);
        prop_assert!(
            close(m.hull_perimeter, perimeter),
            "perimeter {} vs oracle {}", m.hull_perimeter, perimeter
        );
        let g = oracle_gyration(&points);
        prop_assert!(close(m.gyration, g), "gyration {} vs oracle {}", m.gyration, g);
        let d = oracle_diameter(&points);
        prop_assert!(close(m.diameter, d), "diameter {} vs oracle {}", m.diameter, d);
    }

    #[test]
    fn integer_translation_leaves_metrics_bit_identical(
        points in int_points(-1000..=1000, 12),
        dx in -100_000i32..=100_000,
        dy in -100_000i32..=100_000,
    ) {
        let shifted: Vec<Point> = points
            .iter()
            .map(|p| Point::new(p.x + dx as f64, p.y + dy as f64))
            .collect();
        let a = spatial_metrics(&points).as_array();
        let b = spatial_metrics(&shifted).as_array();
        for (x, y) in a.iter().zip(b.iter()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn dyadic_scaling_scales_metrics_bit_exactly(points in int_points(-1000..=1000, 12)) {
        let base = spatial_metrics(&points);
        for lambda in [0.5f64, 2.0, 4.0] {
            let scaled: Vec<Point> = points
                .iter()
                .map(|p| Point::new(lambda * p.x, lambda * p.y))
                .collect();
            let m = spatial_metrics(&scaled);
            prop_assert_eq!(m.gyration.to_bits(), (lambda * base.gyration).to_bits());
            prop_assert_eq!(m.hull_perimeter.to_bits(), (lambda * base.hull_perimeter).to_bits());
            prop_assert_eq!(m.diameter.to_bits(), (lambda * base.diameter).to_bits());
            prop_assert_eq!(m.hull_area.to_bits(), (lambda * lambda * base.hull_area).to_bits());
        }
    }

    // -----------------------------------------------------------------
    // Percentile and normalization.
    // -----------------------------------------------------------------

    #[test]
    fn adding_a_user_above_the_percentile_never_lowers_it(
        mut values in prop::collection::vec(0.0f64..1e6, 1..40),
        bump in 1e-9f64..1e6,
    ) {
        values.sort_by(f64::total_cmp);
        let before = percentile_type7(&values, 0.95);
        values.push(before + bump);
        values.sort_by(f64::total_cmp);
        let after = percentile_type7(&values, 0.95);
        prop_assert!(after >= before, "percentile fell from {before} to {after}");
    }

    #[test]
    fn mean_normalized_columns_have_unit_mean(
        columns in prop::collection::vec(prop::collection::vec(-100.0f64..100.0, 5), 1..6)
    ) {
        let n_rows = 5;
        let depts: Vec<DeptId> = (1..=n_rows as u32).map(DeptId).collect();
        // One all-zero column up front keeps the zero-mean branch honest.
        let mut data = Array2::zeros((n_rows, columns.len() + 1));
        let mut meta = vec![ColumnMeta::new("zeros", Family::Activity, None, "raw", false)];
        for (j, col) in columns.iter().enumerate() {
            meta.push(ColumnMeta::new(format!("f{j}"), Family::Activity, None, "raw", false));
            for (i, &v) in col.iter().enumerate() {
                data[(i, j + 1)] = v;
            }
        }
        let m = FeatureMatrix::new(depts, meta, data).unwrap();
        let normalized = normalize_by_mean(&m).unwrap();
        for (j, c) in normalized.meta().iter().enumerate() {
            let before: f64 = (0..n_rows).map(|i| m.data()[(i, j)]).sum::<f64>() / n_rows as f64;
            let after: f64 =
                (0..n_rows).map(|i| normalized.data()[(i, j)]).sum::<f64>() / n_rows as f64;
            if c.zero_mean {
                prop_assert_eq!(before, 0.0);
                prop_assert_eq!(c.mean, Some(0.0));
                for i in 0..n_rows {
                    prop_assert_eq!(normalized.data()[(i, j)], m.data()[(i, j)]);
                }
            } else {
                prop_assert!((after - 1.0).abs() <= 1e-12, "column {} mean {}", c.name, after);
                prop_assert_eq!(c.mean, Some(before));
            }
        }
    }
}
