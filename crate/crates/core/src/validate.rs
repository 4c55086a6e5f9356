//! Dataset validation against a hierarchy and observation window.
//!
//! Validation is total: every record is classified, nothing panics, and the
//! caller decides whether violations abort the run or the offending records
//! are dropped.

use crate::hierarchy::SpatialHierarchy;
use crate::records::{AntennaRecord, TrajectoryRecord};
use crate::time::Window;

const MAX_EXAMPLES: usize = 10;

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub total: usize,
    pub unknown_antennas: usize,
    pub unknown_subprefs: usize,
    pub out_of_window: usize,
    /// Records with at least one violation.
    pub affected: usize,
    /// Human-readable samples of the first violations seen.
    pub examples: Vec<String>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.affected == 0
    }

    fn note(&mut self, example: String) {
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(example);
        }
    }
}

fn check_antenna(
    r: &AntennaRecord,
    idx: usize,
    hierarchy: &SpatialHierarchy,
    window: &Window,
    report: &mut ValidationReport,
) -> bool {
    let mut ok = true;
    if hierarchy.dept_of_antenna(r.origin).is_none() {
        report.unknown_antennas += 1;
        report.note(format!("record {idx}: unknown origin antenna {}", r.origin));
        ok = false;
    }
    if hierarchy.dept_of_antenna(r.dest).is_none() {
        report.unknown_antennas += 1;
        report.note(format!("record {idx}: unknown dest antenna {}", r.dest));
        ok = false;
    }
    if !window.contains(r.hour_start) {
        report.out_of_window += 1;
        report.note(format!(
            "record {idx}: hour {} outside observation window",
            r.hour_start
        ));
        ok = false;
    }
    ok
}

fn check_trajectory(
    r: &TrajectoryRecord,
    idx: usize,
    hierarchy: &SpatialHierarchy,
    window: &Window,
    report: &mut ValidationReport,
) -> bool {
    let mut ok = true;
    if hierarchy.dept_of_subpref(r.subpref).is_none() {
        report.unknown_subprefs += 1;
        report.note(format!(
            "record {idx}: unknown sub-prefecture {}",
            r.subpref
        ));
        ok = false;
    }
    if !window.contains(r.at) {
        report.out_of_window += 1;
        report.note(format!(
            "record {idx}: timestamp {} outside observation window",
            r.at
        ));
        ok = false;
    }
    ok
}

pub fn validate_antenna_records(
    records: &[AntennaRecord],
    hierarchy: &SpatialHierarchy,
    window: &Window,
) -> ValidationReport {
    let mut report = ValidationReport {
        total: records.len(),
        ..Default::default()
    };
    for (idx, r) in records.iter().enumerate() {
        if !check_antenna(r, idx, hierarchy, window, &mut report) {
            report.affected += 1;
        }
    }
    report
}

pub fn validate_trajectory_records(
    records: &[TrajectoryRecord],
    hierarchy: &SpatialHierarchy,
    window: &Window,
) -> ValidationReport {
    let mut report = ValidationReport {
        total: records.len(),
        ..Default::default()
    };
    for (idx, r) in records.iter().enumerate() {
        if !check_trajectory(r, idx, hierarchy, window, &mut report) {
            report.affected += 1;
        }
    }
    report
}

/// Drop-invalid mode: returns the clean records plus the report describing
/// what was removed.
pub fn filter_antenna_records(
    records: Vec<AntennaRecord>,
    hierarchy: &SpatialHierarchy,
    window: &Window,
) -> (Vec<AntennaRecord>, ValidationReport) {
    let mut report = ValidationReport {
        total: records.len(),
        ..Default::default()
    };
    let mut kept = Vec::with_capacity(records.len());
    for (idx, r) in records.into_iter().enumerate() {
        if check_antenna(&r, idx, hierarchy, window, &mut report) {
            kept.push(r);
        } else {
            report.affected += 1;
        }
    }
    (kept, report)
}

pub fn filter_trajectory_records(
    records: Vec<TrajectoryRecord>,
    hierarchy: &SpatialHierarchy,
    window: &Window,
) -> (Vec<TrajectoryRecord>, ValidationReport) {
    let mut report = ValidationReport {
        total: records.len(),
        ..Default::default()
    };
    let mut kept = Vec::with_capacity(records.len());
    for (idx, r) in records.into_iter().enumerate() {
        if check_trajectory(&r, idx, hierarchy, window, &mut report) {
            kept.push(r);
        } else {
            report.affected += 1;
        }
    }
    (kept, report)
}
