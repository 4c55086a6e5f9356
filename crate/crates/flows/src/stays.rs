//! Movement detection: a movement is a maximal run of consecutive records in
//! one department other than the user's home. Run duration is the time from
//! the run's first to its last record — a lower bound on the true stay.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use chrono::NaiveDateTime;
use mobiprev_core::{
    format_timestamp, parse_timestamp, DeptId, SpatialHierarchy, TrajectoryRecord, UserId,
};

use crate::error::FlowsError;
use crate::home::HomeAssignment;
use crate::matrix::{BuiltFlow, FlowKind, FlowMatrix};

/// One maximal away-from-home run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stay {
    pub user: UserId,
    /// Destination department; never the user's home.
    pub department: DeptId,
    pub start: NaiveDateTime,
    pub end: NaiveDateTime,
}

impl Stay {
    /// Fractional days between the run's first and last record.
    pub fn duration_days(&self) -> f64 {
        (self.end - self.start).num_seconds() as f64 / 86_400.0
    }
}

/// Detected stays plus the number of records that had to be excluded
/// (unknown sub-prefecture, or user absent from the home assignment).
#[derive(Clone, Debug)]
pub struct StayDetection {
    pub stays: Vec<Stay>,
    pub skipped_records: u64,
}

/// Finds every maximal run of consecutive records outside the user's home
/// department. Records are ordered by (time, department) per user; output is
/// ordered by user, then chronologically.
pub fn detect_stays(
    records: &[TrajectoryRecord],
    homes: &HomeAssignment,
    hierarchy: &SpatialHierarchy,
) -> StayDetection {
    let mut per_user: BTreeMap<UserId, Vec<(NaiveDateTime, DeptId)>> = BTreeMap::new();
    let mut skipped = 0u64;
    for r in records {
        match hierarchy.dept_of_subpref(r.subpref) {
            Some(d) if homes.home_of(r.user).is_some() => {
                per_user.entry(r.user).or_default().push((r.at, d));
            }
            _ => skipped += 1,
        }
    }
    let mut stays = Vec::new();
    for (user, mut seq) in per_user {
        seq.sort_unstable_by_key(|&(t, d)| (t, d));
        let home = homes.home_of(user).expect("filtered above");
        let mut run: Option<(DeptId, NaiveDateTime, NaiveDateTime)> = None;
        for (t, d) in seq {
            match run {
                Some((dept, start, _)) if dept == d => run = Some((dept, start, t)),
                other => {
                    if let Some((dept, start, end)) = other {
                        if dept != home {
                            stays.push(Stay {
                                user,
                                department: dept,
                                start,
                                end,
                            });
                        }
                    }
                    run = Some((d, t, t));
                }
            }
        }
        if let Some((dept, start, end)) = run {
            if dept != home {
                stays.push(Stay {
                    user,
                    department: dept,
                    start,
                    end,
                });
            }
        }
    }
    StayDetection {
        stays,
        skipped_records: skipped,
    }
}

/// Tallies stays into a mobility matrix: each stay adds one unit to
/// (home, destination). With `min_stay_days` set, only stays strictly longer
/// than the threshold count.
pub fn mobility_from_stays(
    stays: &[Stay],
    homes: &HomeAssignment,
    depts: &[DeptId],
    min_stay_days: Option<f64>,
) -> BuiltFlow {
    let mut matrix = FlowMatrix::zeros(FlowKind::Mobility, depts);
    matrix.min_stay_days = min_stay_days;
    let mut skipped = 0u64;
    for stay in stays {
        if let Some(k) = min_stay_days {
            if !(stay.duration_days() > k) {
                continue;
            }
        }
        match homes.home_of(stay.user) {
            Some(home) => {
                if !matrix.add(home, stay.department, 1.0) {
                    skipped += 1;
                }
            }
            None => skipped += 1,
        }
    }
    BuiltFlow {
        matrix,
        skipped_records: skipped,
    }
}

/// Detects stays and tallies them in one step.
pub fn mobility_flow(
    records: &[TrajectoryRecord],
    homes: &HomeAssignment,
    hierarchy: &SpatialHierarchy,
    min_stay_days: Option<f64>,
) -> BuiltFlow {
    let detection = detect_stays(records, homes, hierarchy);
    let mut built = mobility_from_stays(&detection.stays, homes, &hierarchy.dept_ids(), min_stay_days);
    built.skipped_records += detection.skipped_records;
    built
}

/// TSV with header `user	department	start	end`.
pub fn write_stays_tsv<W: Write>(stays: &[Stay], mut w: W) -> Result<(), FlowsError> {
    writeln!(w, "user\tdepartment\tstart\tend")?;
    for s in stays {
        writeln!(
            w,
            "{}\t{}\t{}\t{}",
            s.user,
            s.department,
            format_timestamp(s.start),
            format_timestamp(s.end)
        )?;
    }
    Ok(())
}

/// Parses the output of [`write_stays_tsv`].
pub fn read_stays_tsv<R: BufRead>(r: R) -> Result<Vec<Stay>, FlowsError> {
    let mut out = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        if idx == 0 {
            if line != "user\tdepartment\tstart\tend" {
                return Err(FlowsError::Parse {
                    line: 1,
                    message: "expected header 'user\\tdepartment\\tstart\\tend'".into(),
                });
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(FlowsError::Parse {
                line: lineno,
                message: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let parse_err = |message: String| FlowsError::Parse {
            line: lineno,
            message,
        };
        let user = fields[0]
            .parse::<UserId>()
            .map_err(|e| parse_err(format!("bad user id: {e}")))?;
        let department = fields[1]
            .parse::<DeptId>()
            .map_err(|e| parse_err(format!("bad department id: {e}")))?;
        let start = parse_timestamp(fields[2]).map_err(parse_err)?;
        let end = parse_timestamp(fields[3]).map_err(parse_err)?;
        if end < start {
            return Err(parse_err(format!("stay ends before it starts: {line}")));
        }
        out.push(Stay {
            user,
            department,
            start,
            end,
        });
    }
    Ok(out)
}
