//! Connectivity features from antenna-to-antenna call aggregates.
//!
//! Each department gets 120 columns: 60 call-count features (four
//! whole-window aggregates — inner, originating, terminating, overall —
//! plus the overall traffic split into 2 day types × 28 time slots) and
//! the mirrored 60 average-call-duration features. Counts are cumulative
//! sums over the observation window divided by the department's rescaled
//! population; durations are mean seconds per call.

use std::collections::BTreeMap;

use mobiprev_core::{AntennaRecord, DayType, DeptId, PopulationTable, SpatialHierarchy};
use ndarray::Array2;

use crate::error::FeaturesError;
use crate::matrix::{ColumnMeta, Family, FeatureMatrix};
use crate::slots::{slot_label, slot_offsets, SLOTS_PER_DAY_TYPE};

pub const INNER: usize = 0;
pub const ORIGINATING: usize = 1;
pub const TERMINATING: usize = 2;
pub const OVERALL: usize = 3;
pub const WINDOW_AGGREGATES: [&str; 4] = ["inner", "originating", "terminating", "overall"];

/// Number of day-type × slot cells tracked per department (2 × 28).
pub const SLOT_CELLS: usize = 2 * SLOTS_PER_DAY_TYPE;

/// Exact integer call/duration sums per department, before any
/// normalization. Slot cells track overall traffic only; the whole-window
/// arrays keep the inner/originating/terminating/overall split.
///
/// Invariant: `overall = inner + originating + terminating` for every
/// department, and within each day-type block the 24 hourly cells, the 3
/// eight-hour cells and the whole-day cell are three partitions of the
/// same calls.
#[derive(Clone, Debug)]
pub struct ConnectivityTallies {
    pub depts: Vec<DeptId>,
    pub window_calls: Vec<[u64; 4]>,
    pub window_durations: Vec<[u64; 4]>,
    pub slot_calls: Vec<[u64; SLOT_CELLS]>,
    pub slot_durations: Vec<[u64; SLOT_CELLS]>,
    /// Records whose origin or destination antenna is not in the hierarchy.
    pub skipped_records: u64,
}

impl ConnectivityTallies {
    fn new(depts: Vec<DeptId>) -> Self {
        let n = depts.len();
        ConnectivityTallies {
            depts,
            window_calls: vec![[0; 4]; n],
            window_durations: vec![[0; 4]; n],
            slot_calls: vec![[0; SLOT_CELLS]; n],
            slot_durations: vec![[0; SLOT_CELLS]; n],
            skipped_records: 0,
        }
    }
}

fn slot_cells_of(record: &AntennaRecord) -> [usize; 3] {
    let base = match DayType::of(record.hour_start.date()) {
        DayType::Weekday => 0,
        DayType::Weekend => SLOTS_PER_DAY_TYPE,
    };
    use chrono::Timelike;
    let (hourly, eight_hour, day) = slot_offsets(record.hour_start.time().hour());
    [base + hourly, base + eight_hour, base + day]
}

/// Accumulates raw integer tallies. A record with both antennas in the
/// same department counts as inner traffic there; a cross-department
/// record counts as originating at the origin and terminating at the
/// destination. Overall traffic (and every slot cell) is credited to each
/// involved department once.
pub fn connectivity_tallies(
    records: &[AntennaRecord],
    hierarchy: &SpatialHierarchy,
) -> ConnectivityTallies {
    let depts: Vec<DeptId> = hierarchy.departments().keys().copied().collect();
    let index: BTreeMap<DeptId, usize> = depts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut t = ConnectivityTallies::new(depts);
    for r in records {
        let (a, b) = match (
            hierarchy.dept_of_antenna(r.origin),
            hierarchy.dept_of_antenna(r.dest),
        ) {
            (Some(a), Some(b)) => (index[&a], index[&b]),
            _ => {
                t.skipped_records += 1;
                continue;
            }
        };
        let cells = slot_cells_of(r);
        let mut credit_overall = |i: usize| {
            t.window_calls[i][OVERALL] += r.n_calls;
            t.window_durations[i][OVERALL] += r.total_duration_s;
            for &c in &cells {
                t.slot_calls[i][c] += r.n_calls;
                t.slot_durations[i][c] += r.total_duration_s;
            }
        };
        if a == b {
            credit_overall(a);
            t.window_calls[a][INNER] += r.n_calls;
            t.window_durations[a][INNER] += r.total_duration_s;
        } else {
            credit_overall(a);
            credit_overall(b);
            t.window_calls[a][ORIGINATING] += r.n_calls;
            t.window_durations[a][ORIGINATING] += r.total_duration_s;
            t.window_calls[b][TERMINATING] += r.n_calls;
            t.window_durations[b][TERMINATING] += r.total_duration_s;
        }
    }
    t
}

/// Mean seconds per call where any calls exist; empty cells are filled
/// with the column mean over departments that do have calls (0 when no
/// department has any).
fn duration_column(cells: impl Iterator<Item = (u64, u64)> + Clone) -> Vec<f64> {
    let (mut sum, mut defined) = (0.0, 0u64);
    for (calls, dur) in cells.clone() {
        if calls > 0 {
            sum += dur as f64 / calls as f64;
            defined += 1;
        }
    }
    let fill = if defined > 0 { sum / defined as f64 } else { 0.0 };
    cells
        .map(|(calls, dur)| {
            if calls > 0 {
                dur as f64 / calls as f64
            } else {
                fill
            }
        })
        .collect()
}

/// Builds the 120-column connectivity block: 60 per-capita call counts
/// followed by 60 average durations, each ordered as the four
/// whole-window aggregates, then the 28 weekday slots, then the 28
/// weekend slots.
pub fn connectivity_features(
    records: &[AntennaRecord],
    hierarchy: &SpatialHierarchy,
    pops: &PopulationTable,
) -> Result<FeatureMatrix, FeaturesError> {
    let t = connectivity_tallies(records, hierarchy);
    let pop: Vec<f64> = t
        .depts
        .iter()
        .map(|&d| {
            pops.rescaled(d).ok_or_else(|| {
                FeaturesError::Input(format!("department {d} has no population entry"))
            })
        })
        .collect::<Result<_, _>>()?;
    let n = t.depts.len();

    let mut meta: Vec<ColumnMeta> = Vec::with_capacity(120);
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(120);

    // The 2×28 slot decomposition of "overall by day type and time slot"
    // is one reading of the published feature list; its columns carry
    // reconstructed = true so downstream consumers can tell them apart
    // from the four aggregates stated outright.
    for (prefix, per_capita) in [("calls", true), ("duration", false)] {
        for (k, agg) in WINDOW_AGGREGATES.iter().enumerate() {
            meta.push(ColumnMeta {
                name: format!("{prefix} {agg}"),
                family: Family::Connectivity,
                slot: None,
                normalization: if per_capita {
                    "per capita (rescaled population)".into()
                } else {
                    "mean seconds per call".into()
                },
                reconstructed: false,
                mean: None,
                zero_mean: false,
            });
            columns.push(if per_capita {
                (0..n)
                    .map(|i| t.window_calls[i][k] as f64 / pop[i])
                    .collect()
            } else {
                duration_column((0..n).map(|i| (t.window_calls[i][k], t.window_durations[i][k])))
            });
        }
        for (block, day) in DayType::ALL.iter().enumerate() {
            for s in 0..SLOTS_PER_DAY_TYPE {
                let c = block * SLOTS_PER_DAY_TYPE + s;
                let slot = format!("{} {}", day.label(), slot_label(s));
                meta.push(ColumnMeta {
                    name: format!("{prefix} {slot}"),
                    family: Family::Connectivity,
                    slot: Some(slot),
                    normalization: if per_capita {
                        "per capita (rescaled population)".into()
                    } else {
                        "mean seconds per call".into()
                    },
                    reconstructed: true,
                    mean: None,
                    zero_mean: false,
                });
                columns.push(if per_capita {
                    (0..n).map(|i| t.slot_calls[i][c] as f64 / pop[i]).collect()
                } else {
                    duration_column((0..n).map(|i| (t.slot_calls[i][c], t.slot_durations[i][c])))
                });
            }
        }
    }

    let mut data = Array2::zeros((n, columns.len()));
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            data[(i, j)] = v;
        }
    }
    FeatureMatrix::new(t.depts.clone(), meta, data)
}
