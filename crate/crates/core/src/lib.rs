//! Domain model for call-detail-record analytics: spatial hierarchy,
//! record formats, survey clusters and dataset validation.
//!
//! Everything downstream (flow extraction, prevalence surfaces, feature
//! matrices) consumes the types defined here. Parsing is line oriented and
//! never panics on malformed input; validation is total and classifies every
//! record instead of rejecting whole files.

pub mod error;
pub mod geom;
pub mod hierarchy;
pub mod ids;
pub mod parse;
pub mod population;
pub mod records;
pub mod survey;
pub mod time;
pub mod validate;

pub use error::CoreError;
pub use geom::{point_in_polygon, Point, Rect};
pub use hierarchy::{AntennaInfo, DepartmentInfo, SpatialHierarchy};
pub use ids::{AntennaId, DeptId, RegionId, SubprefId, UserId};
pub use parse::{
    parse_antenna_records, parse_antenna_records_tolerant, parse_survey_clusters,
    parse_trajectory_records, parse_trajectory_records_tolerant, IngestStats, LineError,
};
pub use population::PopulationTable;
pub use records::{AntennaRecord, TrajectoryRecord};
pub use survey::{HivEstimate, Quality, SurveyCluster};
pub use time::{
    format_hour, format_timestamp, is_night_hour, parse_hour, parse_timestamp, DayType, Window,
    NIGHT_END_HOUR, NIGHT_START_HOUR,
};
pub use validate::{
    filter_antenna_records, filter_trajectory_records, validate_antenna_records,
    validate_trajectory_records, ValidationReport,
};
