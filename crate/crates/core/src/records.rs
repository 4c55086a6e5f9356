//! The two record kinds in the raw datasets.
//!
//! Hourly antenna-to-antenna aggregates:
//! `hour_start \t origin \t dest \t n_calls \t total_duration_s`
//!
//! Per-event subscriber trajectories:
//! `user_id \t timestamp \t subpref_id`
//!
//! `to_line` emits the canonical form; `parse_line(to_line(r)) == r` for any
//! valid record, and `to_line(parse_line(s)) == s` for canonically formatted
//! input.

use chrono::NaiveDateTime;

use crate::ids::{AntennaId, SubprefId, UserId};
use crate::time::{format_hour, format_timestamp, parse_hour, parse_timestamp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AntennaRecord {
    pub hour_start: NaiveDateTime,
    pub origin: AntennaId,
    pub dest: AntennaId,
    pub n_calls: u64,
    /// Summed call duration in seconds. Zero is legal even with calls
    /// present (sub-second calls truncate to zero).
    pub total_duration_s: u64,
}

impl AntennaRecord {
    pub fn parse_line(line: &str) -> Result<Self, String> {
        let mut fields = line.split('\t');
        let mut next = |name: &str| {
            fields
                .next()
                .ok_or_else(|| format!("missing field {name}"))
        };
        let hour_start = parse_hour(next("hour_start")?)?;
        let origin = next("origin")?
            .parse::<AntennaId>()
            .map_err(|_| "bad origin antenna id".to_string())?;
        let dest = next("dest")?
            .parse::<AntennaId>()
            .map_err(|_| "bad dest antenna id".to_string())?;
        let n_calls = next("n_calls")?
            .parse::<u64>()
            .map_err(|_| "bad n_calls".to_string())?;
        let total_duration_s = next("total_duration")?
            .parse::<u64>()
            .map_err(|_| "bad total_duration".to_string())?;
        if fields.next().is_some() {
            return Err("trailing fields".to_string());
        }
        Ok(AntennaRecord {
            hour_start,
            origin,
            dest,
            n_calls,
            total_duration_s,
        })
    }

    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            format_hour(self.hour_start),
            self.origin,
            self.dest,
            self.n_calls,
            self.total_duration_s
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrajectoryRecord {
    pub user: UserId,
    pub at: NaiveDateTime,
    pub subpref: SubprefId,
}

impl TrajectoryRecord {
    pub fn parse_line(line: &str) -> Result<Self, String> {
        let mut fields = line.split('\t');
        let mut next = |name: &str| {
            fields
                .next()
                .ok_or_else(|| format!("missing field {name}"))
        };
        let user = next("user_id")?
            .parse::<UserId>()
            .map_err(|_| "bad user id".to_string())?;
        let at = parse_timestamp(next("timestamp")?)?;
        let subpref = next("subpref_id")?
            .parse::<SubprefId>()
            .map_err(|_| "bad subpref id".to_string())?;
        if fields.next().is_some() {
            return Err("trailing fields".to_string());
        }
        Ok(TrajectoryRecord { user, at, subpref })
    }

    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}",
            self.user,
            format_timestamp(self.at),
            self.subpref
        )
    }
}
