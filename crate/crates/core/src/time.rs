//! Observation window, day typing and the timestamp formats used by the
//! TSV datasets. Hourly records carry the hour bucket start as
//! `2011-12-01T00`; trajectory records carry full timestamps and tolerate
//! minute- or hour-resolution inputs.

use chrono::{Datelike, Duration, NaiveDate, NaiveDateTime, Timelike, Weekday};

use crate::error::CoreError;

/// Night window, half-open hours of day: records at 01:00..04:59 are night,
/// a record in the 00:00 hour bucket is not.
pub const NIGHT_START_HOUR: u32 = 1;
pub const NIGHT_END_HOUR: u32 = 5;

pub fn is_night_hour(hour: u32) -> bool {
    (NIGHT_START_HOUR..NIGHT_END_HOUR).contains(&hour)
}

/// Half-open observation window `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub start: NaiveDateTime,
    pub end: NaiveDateTime,
}

impl Window {
    pub fn new(start: NaiveDateTime, end: NaiveDateTime) -> Result<Self, CoreError> {
        if start >= end {
            return Err(CoreError::Window(format!(
                "start {start} is not before end {end}"
            )));
        }
        Ok(Window { start, end })
    }

    /// The five-month default: 2011-12-01 through 2012-04-28, i.e. the end
    /// bound is the first excluded instant 2012-04-29T00:00:00.
    pub fn default_observation() -> Self {
        let start = NaiveDate::from_ymd_opt(2011, 12, 1)
            .unwrap()
            .and_hms_opt(0, 0, 0)
            .unwrap();
        let end = NaiveDate::from_ymd_opt(2012, 4, 29)
            .unwrap()
            .and_hms_opt(0, 0, 0)
            .unwrap();
        Window { start, end }
    }

    pub fn contains(&self, t: NaiveDateTime) -> bool {
        t >= self.start && t < self.end
    }

    pub fn n_hours(&self) -> i64 {
        (self.end - self.start).num_hours()
    }

    /// Hour bucket starts covering the window, chronological.
    pub fn hours(&self) -> impl Iterator<Item = NaiveDateTime> {
        let start = self.start;
        let n = self.n_hours();
        (0..n).map(move |i| start + Duration::hours(i))
    }

    pub fn duration_days(&self) -> f64 {
        (self.end - self.start).num_seconds() as f64 / 86_400.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DayType {
    Weekday,
    Weekend,
}

impl DayType {
    pub fn of(date: NaiveDate) -> Self {
        match date.weekday() {
            Weekday::Sat | Weekday::Sun => DayType::Weekend,
            _ => DayType::Weekday,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DayType::Weekday => "weekday",
            DayType::Weekend => "weekend",
        }
    }

    pub const ALL: [DayType; 2] = [DayType::Weekday, DayType::Weekend];
}

/// Parses `2011-12-01T00`, the start of an hourly aggregation bucket.
pub fn parse_hour(s: &str) -> Result<NaiveDateTime, String> {
    let (date_part, hour_part) = s
        .split_once('T')
        .ok_or_else(|| format!("expected <date>T<hour>, got {s:?}"))?;
    let date = NaiveDate::parse_from_str(date_part, "%Y-%m-%d")
        .map_err(|e| format!("bad date {date_part:?}: {e}"))?;
    let hour: u32 = hour_part
        .parse()
        .map_err(|_| format!("bad hour {hour_part:?}"))?;
    date.and_hms_opt(hour, 0, 0)
        .ok_or_else(|| format!("hour {hour} out of range"))
}

pub fn format_hour(t: NaiveDateTime) -> String {
    format!("{}T{:02}", t.date().format("%Y-%m-%d"), t.hour())
}

/// Parses trajectory timestamps. Full second resolution is canonical;
/// minute- and hour-resolution inputs are accepted with the missing fields
/// taken as zero.
pub fn parse_timestamp(s: &str) -> Result<NaiveDateTime, String> {
    if let Ok(t) = NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S") {
        return Ok(t);
    }
    if let Ok(t) = NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M") {
        return Ok(t);
    }
    parse_hour(s).map_err(|_| format!("unrecognised timestamp {s:?}"))
}

pub fn format_timestamp(t: NaiveDateTime) -> String {
    t.format("%Y-%m-%dT%H:%M:%S").to_string()
}
