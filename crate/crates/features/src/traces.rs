//! Per-user location traces at sub-prefecture centroid resolution, plus
//! the time-based subsets the spatial features are computed over.

use std::collections::BTreeMap;

use chrono::{NaiveDateTime, Timelike};
use mobiprev_core::{is_night_hour, DayType, DeptId, Point, SpatialHierarchy, TrajectoryRecord, UserId};
use mobiprev_flows::HomeAssignment;

/// One user's time-ordered visit points.
#[derive(Clone, Debug, PartialEq)]
pub struct UserTrace {
    pub user: UserId,
    pub home: DeptId,
    /// Sorted by timestamp; coordinates are sub-prefecture centroids.
    pub points: Vec<(NaiveDateTime, Point)>,
}

/// Time-based point subsets. Night is the 01:00–05:00 window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subset {
    All,
    Night,
    Weekday,
    Weekend,
    WeekdayNight,
    WeekendNight,
}

impl Subset {
    pub const ALL_SUBSETS: [Subset; 6] = [
        Subset::All,
        Subset::Night,
        Subset::Weekday,
        Subset::Weekend,
        Subset::WeekdayNight,
        Subset::WeekendNight,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Subset::All => "all",
            Subset::Night => "night",
            Subset::Weekday => "weekday",
            Subset::Weekend => "weekend",
            Subset::WeekdayNight => "weekday night",
            Subset::WeekendNight => "weekend night",
        }
    }

    pub fn admits(self, t: NaiveDateTime) -> bool {
        let night = is_night_hour(t.time().hour());
        let day = DayType::of(t.date());
        match self {
            Subset::All => true,
            Subset::Night => night,
            Subset::Weekday => day == DayType::Weekday,
            Subset::Weekend => day == DayType::Weekend,
            Subset::WeekdayNight => day == DayType::Weekday && night,
            Subset::WeekendNight => day == DayType::Weekend && night,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuiltTraces {
    /// Ascending by user id.
    pub traces: Vec<UserTrace>,
    /// Records dropped for an unknown sub-prefecture or an unhomed user.
    pub skipped_records: u64,
}

/// Groups trajectory records into per-user traces. Points inherit the
/// record order for equal timestamps; otherwise they are time-sorted.
pub fn build_traces(
    records: &[TrajectoryRecord],
    homes: &HomeAssignment,
    hierarchy: &SpatialHierarchy,
) -> BuiltTraces {
    let mut per_user: BTreeMap<UserId, Vec<(NaiveDateTime, Point)>> = BTreeMap::new();
    let mut skipped = 0u64;
    for r in records {
        let (Some(p), Some(_)) = (hierarchy.subpref_centroid(r.subpref), homes.home_of(r.user))
        else {
            skipped += 1;
            continue;
        };
        per_user.entry(r.user).or_default().push((r.at, p));
    }
    let traces = per_user
        .into_iter()
        .map(|(user, mut points)| {
            points.sort_by_key(|(t, _)| *t);
            UserTrace {
                user,
                home: homes.home_of(user).expect("filtered to homed users"),
                points,
            }
        })
        .collect();
    BuiltTraces {
        traces,
        skipped_records: skipped,
    }
}

/// The coordinates of a trace's points admitted by `subset`.
pub fn subset_points(trace: &UserTrace, subset: Subset) -> Vec<Point> {
    trace
        .points
        .iter()
        .filter(|(t, _)| subset.admits(*t))
        .map(|&(_, p)| p)
        .collect()
}

/// Sum of consecutive-point distances over the full trace.
pub fn total_distance(trace: &UserTrace) -> f64 {
    trace
        .points
        .windows(2)
        .map(|w| w[0].1.dist(w[1].1))
        .sum()
}
