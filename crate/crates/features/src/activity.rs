//! Activity features from trajectory records: undirected, duration-free
//! phone events counted against each user's home department.
//!
//! 57 columns: 2 day types × 28 time slots plus one overall column, each
//! a cumulative event count divided by the number of users homed in the
//! department. Location of the event is irrelevant — only when the user
//! was active and where they live.

use std::collections::BTreeMap;

use chrono::Timelike;
use mobiprev_core::{DayType, DeptId, SpatialHierarchy, TrajectoryRecord};
use mobiprev_flows::HomeAssignment;
use ndarray::Array2;

use crate::error::FeaturesError;
use crate::matrix::{ColumnMeta, Family, FeatureMatrix};
use crate::slots::{slot_label, slot_offsets, SLOTS_PER_DAY_TYPE};

pub const SLOT_CELLS: usize = 2 * SLOTS_PER_DAY_TYPE;

/// Exact integer event counts per home department. `overall` is tallied
/// independently of the slot cells (one increment per event), so the slot
/// partition can be checked against it.
#[derive(Clone, Debug)]
pub struct ActivityTallies {
    pub depts: Vec<DeptId>,
    pub slot_events: Vec<[u64; SLOT_CELLS]>,
    pub overall: Vec<u64>,
    /// Records by users without an inferred home.
    pub skipped_records: u64,
}

/// Counts every record by a homed user; the event lands in the hourly,
/// eight-hour and whole-day cells of its day type plus the overall tally.
pub fn activity_tallies(
    records: &[TrajectoryRecord],
    homes: &HomeAssignment,
    hierarchy: &SpatialHierarchy,
) -> ActivityTallies {
    let depts: Vec<DeptId> = hierarchy.departments().keys().copied().collect();
    let index: BTreeMap<DeptId, usize> = depts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut t = ActivityTallies {
        slot_events: vec![[0; SLOT_CELLS]; depts.len()],
        overall: vec![0; depts.len()],
        depts,
        skipped_records: 0,
    };
    for r in records {
        let i = match homes.home_of(r.user).and_then(|d| index.get(&d)) {
            Some(&i) => i,
            None => {
                t.skipped_records += 1;
                continue;
            }
        };
        let base = match DayType::of(r.at.date()) {
            DayType::Weekday => 0,
            DayType::Weekend => SLOTS_PER_DAY_TYPE,
        };
        let (hourly, eight_hour, day) = slot_offsets(r.at.time().hour());
        t.slot_events[i][base + hourly] += 1;
        t.slot_events[i][base + eight_hour] += 1;
        t.slot_events[i][base + day] += 1;
        t.overall[i] += 1;
    }
    t
}

/// Builds the 57-column activity block: 56 day-type × slot counts and one
/// overall count, each per resident. Departments with no homed users read
/// 0 everywhere.
pub fn activity_features(
    records: &[TrajectoryRecord],
    homes: &HomeAssignment,
    hierarchy: &SpatialHierarchy,
) -> Result<FeatureMatrix, FeaturesError> {
    let t = activity_tallies(records, homes, hierarchy);
    let counts = homes.counts_by_department();
    let users: Vec<f64> = t
        .depts
        .iter()
        .map(|d| counts.get(d).copied().unwrap_or(0) as f64)
        .collect();
    let n = t.depts.len();

    // The 2×28 + overall composition is one reading of the published
    // 57-column total; every column carries reconstructed = true.
    let mut meta = Vec::with_capacity(SLOT_CELLS + 1);
    let mut data = Array2::zeros((n, SLOT_CELLS + 1));
    for (block, day) in DayType::ALL.iter().enumerate() {
        for s in 0..SLOTS_PER_DAY_TYPE {
            let c = block * SLOTS_PER_DAY_TYPE + s;
            let slot = format!("{} {}", day.label(), slot_label(s));
            meta.push(ColumnMeta {
                name: format!("activity {slot}"),
                family: Family::Activity,
                slot: Some(slot),
                normalization: "per resident (home-based user count)".into(),
                reconstructed: true,
                mean: None,
                zero_mean: false,
            });
            for i in 0..n {
                if users[i] > 0.0 {
                    data[(i, c)] = t.slot_events[i][c] as f64 / users[i];
                }
            }
        }
    }
    meta.push(ColumnMeta {
        name: "activity overall".into(),
        family: Family::Activity,
        slot: None,
        normalization: "per resident (home-based user count)".into(),
        reconstructed: true,
        mean: None,
        zero_mean: false,
    });
    for i in 0..n {
        if users[i] > 0.0 {
            data[(i, SLOT_CELLS)] = t.overall[i] as f64 / users[i];
        }
    }
    FeatureMatrix::new(t.depts.clone(), meta, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{grid_world, homes_of, traj};
    use approx::assert_relative_eq;

    // 2011-12-06 is a Tuesday, 2011-12-03 a Saturday.

    #[test]
    fn single_weekday_night_event_fills_its_three_slots_and_overall() {
        let h = grid_world(2, 1, 10.0);
        let homes = homes_of(&[(1, 1), (2, 2)]);
        let records = vec![traj(1, "2011-12-06T02:30:00", 2)];
        let m = activity_features(&records, &homes, &h).unwrap();
        let v = |name: &str, dept: u32| m.value(DeptId(dept), name).unwrap();
        // The event happened in department 2 but user 1 lives in department 1.
        assert_relative_eq!(v("activity weekday 02-03h", 1), 1.0);
        assert_relative_eq!(v("activity weekday 00-08h", 1), 1.0);
        assert_relative_eq!(v("activity weekday day", 1), 1.0);
        assert_relative_eq!(v("activity overall", 1), 1.0);
        assert_relative_eq!(v("activity weekday 03-04h", 1), 0.0);
        assert_relative_eq!(v("activity weekend day", 1), 0.0);
        assert_relative_eq!(v("activity overall", 2), 0.0);
    }

    #[test]
    fn block_has_57_columns() {
        let h = grid_world(2, 1, 10.0);
        let homes = homes_of(&[(1, 1)]);
        let m = activity_features(&[], &homes, &h).unwrap();
        assert_eq!(m.n_cols(), 57);
        assert_eq!(m.family_count(Family::Activity), 57);
    }

    #[test]
    fn uniform_activity_and_equal_populations_give_equal_rows() {
        let h = grid_world(3, 1, 10.0);
        let homes = homes_of(&[(1, 1), (2, 2), (3, 3)]);
        let records: Vec<_> = (1..=3)
            .flat_map(|u| {
                vec![
                    traj(u, "2011-12-06T09:00:00", u),
                    traj(u, "2011-12-03T23:15:00", u),
                ]
            })
            .collect();
        let m = activity_features(&records, &homes, &h).unwrap();
        for c in m.meta() {
            let first = m.value(DeptId(1), &c.name).unwrap();
            for dept in 2..=3 {
                assert_eq!(m.value(DeptId(dept), &c.name).unwrap(), first);
            }
        }
        assert_relative_eq!(m.value(DeptId(1), "activity overall").unwrap(), 2.0);
    }

    #[test]
    fn events_by_unhomed_users_are_skipped() {
        let h = grid_world(2, 1, 10.0);
        let homes = homes_of(&[(1, 1)]);
        let records = vec![
            traj(1, "2011-12-06T09:00:00", 1),
            traj(99, "2011-12-06T09:00:00", 1),
        ];
        let t = activity_tallies(&records, &homes, &h);
        assert_eq!(t.skipped_records, 1);
        assert_eq!(t.overall, vec![1, 0]);
    }

    #[test]
    fn counts_divide_by_resident_users() {
        let h = grid_world(1, 1, 10.0);
        let homes = homes_of(&[(1, 1), (2, 1)]);
        let records = vec![
            traj(1, "2011-12-06T09:00:00", 1),
            traj(2, "2011-12-06T21:00:00", 1),
            traj(2, "2011-12-06T21:30:00", 1),
        ];
        let m = activity_features(&records, &homes, &h).unwrap();
        let v = |name: &str| m.value(DeptId(1), name).unwrap();
        assert_relative_eq!(v("activity overall"), 1.5);
        assert_relative_eq!(v("activity weekday 09-10h"), 0.5);
        assert_relative_eq!(v("activity weekday 21-22h"), 1.0);
        assert_relative_eq!(v("activity weekday 16-24h"), 1.0);
    }
}
