//! Department-by-department flow matrices and the aggregations that fill
//! them. Entries are non-negative event intensities; rows are origins and
//! columns destinations, both in canonical (ascending department id) order.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use chrono::{NaiveDateTime, Timelike};
use mobiprev_core::{AntennaRecord, DayType, DeptId, PopulationTable, SpatialHierarchy};
use ndarray::Array2;

use crate::error::FlowsError;

/// What the matrix counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowKind {
    Communication,
    Mobility,
}

impl FlowKind {
    pub fn label(self) -> &'static str {
        match self {
            FlowKind::Communication => "communication",
            FlowKind::Mobility => "mobility",
        }
    }
}

impl std::fmt::Display for FlowKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Restricts an aggregation to an hour-of-day window and/or a day type.
///
/// The hour window is half-open `[start, end)` over bucket start hours and
/// may wrap past midnight (`(22, 2)` admits 22, 23, 0, 1). Hours must be
/// `< 24`; `start == end` admits nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimeFilter {
    pub hours: Option<(u32, u32)>,
    pub day_type: Option<DayType>,
}

impl TimeFilter {
    /// The night window: buckets starting in [01:00, 05:00).
    pub fn night() -> Self {
        TimeFilter {
            hours: Some((
                mobiprev_core::NIGHT_START_HOUR,
                mobiprev_core::NIGHT_END_HOUR,
            )),
            day_type: None,
        }
    }

    pub fn day_type(day_type: DayType) -> Self {
        TimeFilter {
            hours: None,
            day_type: Some(day_type),
        }
    }

    /// Whether the hourly bucket starting at `t` passes the filter.
    pub fn admits(&self, t: NaiveDateTime) -> bool {
        if let Some((start, end)) = self.hours {
            debug_assert!(start < 24 && end < 24);
            let h = t.hour();
            let inside = if start < end {
                h >= start && h < end
            } else if start > end {
                h >= start || h < end
            } else {
                false
            };
            if !inside {
                return false;
            }
        }
        if let Some(dt) = self.day_type {
            if DayType::of(t.date()) != dt {
                return false;
            }
        }
        true
    }
}

/// Square matrix of flow intensities over a fixed department set.
#[derive(Clone, Debug)]
pub struct FlowMatrix {
    kind: FlowKind,
    depts: Vec<DeptId>,
    index: BTreeMap<DeptId, usize>,
    data: Array2<f64>,
    /// Filter the source records were restricted to, if any.
    pub time_filter: Option<TimeFilter>,
    /// Minimum stay duration (days, strict) applied, mobility only.
    pub min_stay_days: Option<f64>,
}

impl FlowMatrix {
    /// Zero matrix over the given departments (sorted into canonical order).
    pub fn zeros(kind: FlowKind, depts: &[DeptId]) -> Self {
        let mut depts = depts.to_vec();
        depts.sort_unstable();
        depts.dedup();
        let index = depts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let n = depts.len();
        FlowMatrix {
            kind,
            depts,
            index,
            data: Array2::zeros((n, n)),
            time_filter: None,
            min_stay_days: None,
        }
    }

    pub fn kind(&self) -> FlowKind {
        self.kind
    }

    pub fn n_departments(&self) -> usize {
        self.depts.len()
    }

    /// Departments in row/column order.
    pub fn departments(&self) -> &[DeptId] {
        &self.depts
    }

    pub fn index_of(&self, dept: DeptId) -> Option<usize> {
        self.index.get(&dept).copied()
    }

    pub fn get(&self, origin: DeptId, dest: DeptId) -> Option<f64> {
        let i = self.index_of(origin)?;
        let j = self.index_of(dest)?;
        Some(self.data[[i, j]])
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[[i, j]]
    }

    pub fn data(&self) -> &Array2<f64> {
        &self.data
    }

    /// Builds a matrix from explicit (origin, dest, amount) contributions,
    /// validating that departments are known and amounts are finite and
    /// non-negative. Repeated pairs accumulate.
    pub fn from_entries(
        kind: FlowKind,
        depts: &[DeptId],
        entries: &[(DeptId, DeptId, f64)],
    ) -> Result<Self, FlowsError> {
        let mut m = FlowMatrix::zeros(kind, depts);
        for &(a, b, v) in entries {
            if !v.is_finite() || v < 0.0 {
                return Err(FlowsError::Matrix(format!(
                    "entry ({a}, {b}) = {v} is not a finite non-negative flow"
                )));
            }
            if !m.add(a, b, v) {
                return Err(FlowsError::Matrix(format!(
                    "entry ({a}, {b}) references an unknown department"
                )));
            }
        }
        Ok(m)
    }

    pub(crate) fn add(&mut self, origin: DeptId, dest: DeptId, amount: f64) -> bool {
        match (self.index_of(origin), self.index_of(dest)) {
            (Some(i), Some(j)) => {
                self.data[[i, j]] += amount;
                true
            }
            _ => false,
        }
    }

    /// Sum of all entries.
    pub fn total(&self) -> f64 {
        self.data.sum()
    }

    /// Max |m(a,b) - m(b,a)| over all pairs.
    pub fn asymmetry(&self) -> f64 {
        let n = self.depts.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.data[[i, j]] - self.data[[j, i]]).abs());
            }
        }
        worst
    }

    /// TSV with a header row and leading column of department ids.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<(), FlowsError> {
        let mut header = String::from("dept");
        for d in &self.depts {
            header.push('\t');
            header.push_str(&d.to_string());
        }
        writeln!(w, "{header}")?;
        for (i, d) in self.depts.iter().enumerate() {
            let mut row = d.to_string();
            for j in 0..self.depts.len() {
                row.push('\t');
                row.push_str(&self.data[[i, j]].to_string());
            }
            writeln!(w, "{row}")?;
        }
        Ok(())
    }

    /// Parses the output of [`write_tsv`](Self::write_tsv). Row order must
    /// match the header; entries must be finite and non-negative.
    pub fn read_tsv<R: BufRead>(r: R, kind: FlowKind) -> Result<Self, FlowsError> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| FlowsError::Parse {
                line: 1,
                message: "empty flow matrix file".into(),
            })
            .and_then(|(i, l)| l.map(|l| (i, l)).map_err(FlowsError::from))?;
        let mut fields = header.split('\t');
        if fields.next() != Some("dept") {
            return Err(FlowsError::Parse {
                line: 1,
                message: "expected header starting with 'dept'".into(),
            });
        }
        let depts: Vec<DeptId> = fields
            .map(|f| {
                f.parse::<u32>().map(DeptId).map_err(|e| FlowsError::Parse {
                    line: 1,
                    message: format!("bad department id {f:?}: {e}"),
                })
            })
            .collect::<Result<_, _>>()?;
        let mut m = FlowMatrix::zeros(kind, &depts);
        if m.depts != depts {
            return Err(FlowsError::Parse {
                line: 1,
                message: "header departments not in ascending unique order".into(),
            });
        }
        let mut rows_seen = 0usize;
        for (idx, line) in lines {
            let line = line?;
            let lineno = idx + 1;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let id: u32 = fields
                .next()
                .unwrap()
                .parse()
                .map_err(|e| FlowsError::Parse {
                    line: lineno,
                    message: format!("bad row id: {e}"),
                })?;
            if rows_seen >= depts.len() || depts[rows_seen] != DeptId(id) {
                return Err(FlowsError::Parse {
                    line: lineno,
                    message: format!("row id {id} does not match header order"),
                });
            }
            let mut cols = 0usize;
            for f in fields {
                let v: f64 = f.parse().map_err(|e| FlowsError::Parse {
                    line: lineno,
                    message: format!("bad entry {f:?}: {e}"),
                })?;
                if !v.is_finite() || v < 0.0 {
                    return Err(FlowsError::Parse {
                        line: lineno,
                        message: format!("entry {v} is not a finite non-negative number"),
                    });
                }
                if cols >= depts.len() {
                    return Err(FlowsError::Parse {
                        line: lineno,
                        message: "too many columns".into(),
                    });
                }
                m.data[[rows_seen, cols]] = v;
                cols += 1;
            }
            if cols != depts.len() {
                return Err(FlowsError::Parse {
                    line: lineno,
                    message: format!("expected {} columns, found {cols}", depts.len()),
                });
            }
            rows_seen += 1;
        }
        if rows_seen != depts.len() {
            return Err(FlowsError::Parse {
                line: rows_seen + 1,
                message: format!("expected {} rows, found {rows_seen}", depts.len()),
            });
        }
        Ok(m)
    }
}

/// A freshly aggregated matrix plus the count of source records that could
/// not be resolved against the hierarchy and were excluded.
#[derive(Clone, Debug)]
pub struct BuiltFlow {
    pub matrix: FlowMatrix,
    pub skipped_records: u64,
}

/// Sums call counts into a department-level communication matrix. Entry
/// (a, b) is the number of calls originating in a and terminating in b whose
/// hourly bucket passes `filter`. No normalization is applied here.
pub fn comm_flow(
    records: &[AntennaRecord],
    hierarchy: &SpatialHierarchy,
    filter: Option<TimeFilter>,
) -> BuiltFlow {
    let mut matrix = FlowMatrix::zeros(FlowKind::Communication, &hierarchy.dept_ids());
    matrix.time_filter = filter;
    let mut skipped = 0u64;
    for r in records {
        if let Some(f) = &filter {
            if !f.admits(r.hour_start) {
                continue;
            }
        }
        match (
            hierarchy.dept_of_antenna(r.origin),
            hierarchy.dept_of_antenna(r.dest),
        ) {
            (Some(a), Some(b)) => {
                matrix.add(a, b, r.n_calls as f64);
            }
            _ => skipped += 1,
        }
    }
    BuiltFlow {
        matrix,
        skipped_records: skipped,
    }
}

/// Divides each row by its origin's divisor, turning counts into events per
/// person. Rows that are entirely zero tolerate a missing or zero divisor;
/// any other row requires a positive finite one.
pub fn normalize_flows(
    m: &FlowMatrix,
    divisors: &BTreeMap<DeptId, f64>,
) -> Result<FlowMatrix, FlowsError> {
    let mut out = m.clone();
    let n = m.depts.len();
    for (i, &dept) in m.depts.iter().enumerate() {
        let div = divisors.get(&dept).copied();
        let row_zero = (0..n).all(|j| m.data[[i, j]] == 0.0);
        match div {
            Some(d) if d > 0.0 && d.is_finite() => {
                for j in 0..n {
                    out.data[[i, j]] = m.data[[i, j]] / d;
                }
            }
            _ if row_zero => {}
            other => {
                return Err(FlowsError::Normalize(format!(
                    "department {dept} has outgoing flow but divisor {other:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// Population divisors for communication flows: the rescaled population of
/// every department in the table.
pub fn population_divisors(pops: &PopulationTable) -> BTreeMap<DeptId, f64> {
    pops.departments()
        .map(|d| (d, pops.rescaled(d).expect("department listed by table")))
        .collect()
}

/// Divisors from per-department user counts (mobility normalization).
pub fn count_divisors(counts: &BTreeMap<DeptId, u64>) -> BTreeMap<DeptId, f64> {
    counts.iter().map(|(&d, &c)| (d, c as f64)).collect()
}

/// Symmetric pair intensity: out(a, b) = m(a, b) + m(b, a), diagonal zeroed.
pub fn pair_strength(m: &FlowMatrix) -> FlowMatrix {
    let mut out = m.clone();
    let n = m.depts.len();
    for i in 0..n {
        for j in 0..n {
            out.data[[i, j]] = if i == j {
                0.0
            } else {
                m.data[[i, j]] + m.data[[j, i]]
            };
        }
    }
    out
}
