//! Serosurvey clusters and the department-level estimates derived from
//! them. Cluster TSV: `x \t y \t n_tested \t n_positive`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geom::Point;
use crate::ids::DeptId;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurveyCluster {
    pub location: Point,
    pub n_tested: u64,
    pub n_positive: u64,
}

impl SurveyCluster {
    pub fn new(location: Point, n_tested: u64, n_positive: u64) -> Result<Self, String> {
        if n_positive > n_tested {
            return Err(format!(
                "n_positive {n_positive} exceeds n_tested {n_tested}"
            ));
        }
        Ok(SurveyCluster {
            location,
            n_tested,
            n_positive,
        })
    }

    /// Share of positives among tested; `None` for an empty cluster.
    pub fn prevalence(&self) -> Option<f64> {
        if self.n_tested == 0 {
            None
        } else {
            Some(self.n_positive as f64 / self.n_tested as f64)
        }
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let mut fields = line.split('\t');
        let mut next = |name: &str| {
            fields
                .next()
                .ok_or_else(|| format!("missing field {name}"))
        };
        let x: f64 = next("x")?.parse().map_err(|_| "bad x".to_string())?;
        let y: f64 = next("y")?.parse().map_err(|_| "bad y".to_string())?;
        let n_tested: u64 = next("n_tested")?
            .parse()
            .map_err(|_| "bad n_tested".to_string())?;
        let n_positive: u64 = next("n_positive")?
            .parse()
            .map_err(|_| "bad n_positive".to_string())?;
        if fields.next().is_some() {
            return Err("trailing fields".to_string());
        }
        if !(x.is_finite() && y.is_finite()) {
            return Err("non-finite coordinates".to_string());
        }
        SurveyCluster::new(Point::new(x, y), n_tested, n_positive)
    }

    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.location.x, self.location.y, self.n_tested, self.n_positive
        )
    }
}

/// Estimate reliability, graded from the amount of survey data inside the
/// department.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quality {
    Good,
    Moderate,
    Uncertain,
}

impl Quality {
    pub fn label(self) -> &'static str {
        match self {
            Quality::Good => "good",
            Quality::Moderate => "moderate",
            Quality::Uncertain => "uncertain",
        }
    }
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Quality {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "good" => Ok(Quality::Good),
            "moderate" => Ok(Quality::Moderate),
            "uncertain" => Ok(Quality::Uncertain),
            other => Err(format!("unknown quality grade {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HivEstimate {
    pub department: DeptId,
    /// Prevalence as a fraction in [0, 1].
    pub prevalence: f64,
    pub quality: Quality,
}
