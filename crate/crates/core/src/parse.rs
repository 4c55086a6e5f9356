//! Streaming TSV ingestion with per-line error reporting.
//!
//! Malformed lines are collected, not fatal one by one; the whole parse
//! fails once the count exceeds the caller's tolerance (zero by default).
//! Rows with `n_calls = 0` carry no information for any downstream
//! computation and are dropped with a counter rather than treated as errors.

use std::io::BufRead;

use crate::error::CoreError;
use crate::records::{AntennaRecord, TrajectoryRecord};
use crate::survey::SurveyCluster;

#[derive(Clone, Debug)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct IngestStats {
    /// Non-empty lines seen.
    pub lines: usize,
    pub parsed: usize,
    pub dropped_zero_calls: usize,
    pub errors: Vec<LineError>,
}

fn run_parser<R, T, F>(
    reader: R,
    tolerance: usize,
    mut parse: F,
) -> Result<(Vec<T>, IngestStats), CoreError>
where
    R: BufRead,
    F: FnMut(&str) -> Result<Option<T>, String>,
{
    let mut out = Vec::new();
    let mut stats = IngestStats::default();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        stats.lines += 1;
        match parse(&line) {
            Ok(Some(record)) => {
                out.push(record);
                stats.parsed += 1;
            }
            Ok(None) => stats.dropped_zero_calls += 1,
            Err(message) => stats.errors.push(LineError {
                line: idx + 1,
                message,
            }),
        }
    }
    if stats.errors.len() > tolerance {
        let first = &stats.errors[0];
        return Err(CoreError::TooManyParseErrors {
            count: stats.errors.len(),
            tolerance,
            line: first.line,
            message: first.message.clone(),
        });
    }
    Ok((out, stats))
}

pub fn parse_antenna_records_tolerant<R: BufRead>(
    reader: R,
    tolerance: usize,
) -> Result<(Vec<AntennaRecord>, IngestStats), CoreError> {
    run_parser(reader, tolerance, |line| {
        AntennaRecord::parse_line(line).map(|r| if r.n_calls == 0 { None } else { Some(r) })
    })
}

pub fn parse_antenna_records<R: BufRead>(
    reader: R,
) -> Result<(Vec<AntennaRecord>, IngestStats), CoreError> {
    parse_antenna_records_tolerant(reader, 0)
}

pub fn parse_trajectory_records_tolerant<R: BufRead>(
    reader: R,
    tolerance: usize,
) -> Result<(Vec<TrajectoryRecord>, IngestStats), CoreError> {
    run_parser(reader, tolerance, |line| {
        TrajectoryRecord::parse_line(line).map(Some)
    })
}

pub fn parse_trajectory_records<R: BufRead>(
    reader: R,
) -> Result<(Vec<TrajectoryRecord>, IngestStats), CoreError> {
    parse_trajectory_records_tolerant(reader, 0)
}

pub fn parse_survey_clusters<R: BufRead>(reader: R) -> Result<Vec<SurveyCluster>, CoreError> {
    let (clusters, _) = run_parser(reader, 0, |line| SurveyCluster::parse_line(line).map(Some))?;
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn empty_stream_yields_empty_dataset() {
        let (records, stats) = parse_antenna_records(Cursor::new("")).unwrap();
        assert!(records.is_empty());
        assert_eq!(stats.lines, 0);
    }

    #[test]
    fn malformed_line_is_fatal_at_zero_tolerance() {
        let data = "2011-12-01T00\t17\t23\t5\t600\n2011-12-01T00\t17\t23\t-1\t600\n";
        let err = parse_antenna_records(Cursor::new(data)).unwrap_err();
        match err {
            CoreError::TooManyParseErrors { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn tolerance_collects_errors() {
        let data = "2011-12-01T00\t17\t23\t5\t600\nnot a record\n";
        let (records, stats) = parse_antenna_records_tolerant(Cursor::new(data), 1).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(stats.errors.len(), 1);
        assert_eq!(stats.errors[0].line, 2);
    }

    #[test]
    fn zero_call_rows_are_dropped_and_counted() {
        let data = "2011-12-01T00\t17\t23\t0\t0\n2011-12-01T01\t17\t23\t2\t60\n";
        let (records, stats) = parse_antenna_records(Cursor::new(data)).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(stats.dropped_zero_calls, 1);
        assert_eq!(records[0].n_calls, 2);
    }

    #[test]
    fn duplicate_trajectory_lines_both_parse() {
        let data = "42\t2011-12-01T08:30:00\t7\n42\t2011-12-01T08:30:00\t7\n";
        let (records, _) = parse_trajectory_records(Cursor::new(data)).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0], records[1]);
    }

    #[test]
    fn out_of_order_trajectories_parse() {
        let data = "42\t2011-12-02T08:30:00\t7\n42\t2011-12-01T08:30:00\t7\n";
        let (records, _) = parse_trajectory_records(Cursor::new(data)).unwrap();
        assert_eq!(records.len(), 2);
        assert!(records[0].at > records[1].at);
    }
}
