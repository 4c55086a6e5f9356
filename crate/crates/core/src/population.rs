//! Census-derived department populations, rescaled so the national total
//! matches the observed subscriber count. Communication features are
//! normalized by the rescaled values.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::ids::DeptId;

#[derive(Clone, Debug)]
pub struct PopulationTable {
    dept_pop: BTreeMap<DeptId, f64>,
    user_scale: f64,
    total: f64,
}

#[derive(Serialize, Deserialize)]
struct PopulationFile {
    dept_pop: BTreeMap<u32, f64>,
    user_scale: f64,
}

impl PopulationTable {
    pub fn new(dept_pop: BTreeMap<DeptId, f64>, user_scale: f64) -> Result<Self, CoreError> {
        if dept_pop.is_empty() {
            return Err(CoreError::Population("no departments".into()));
        }
        for (&d, &p) in &dept_pop {
            if !(p.is_finite() && p > 0.0) {
                return Err(CoreError::Population(format!(
                    "department {d} population {p} is not positive and finite"
                )));
            }
        }
        if !(user_scale.is_finite() && user_scale > 0.0) {
            return Err(CoreError::Population(format!(
                "user scale {user_scale} is not positive and finite"
            )));
        }
        let total = dept_pop.values().sum();
        Ok(PopulationTable {
            dept_pop,
            user_scale,
            total,
        })
    }

    pub fn raw(&self, dept: DeptId) -> Option<f64> {
        self.dept_pop.get(&dept).copied()
    }

    /// Population rescaled so the sum over departments equals `user_scale`.
    pub fn rescaled(&self, dept: DeptId) -> Option<f64> {
        self.raw(dept).map(|p| p / self.total * self.user_scale)
    }

    pub fn user_scale(&self) -> f64 {
        self.user_scale
    }

    pub fn departments(&self) -> impl Iterator<Item = DeptId> + '_ {
        self.dept_pop.keys().copied()
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, CoreError> {
        let file: PopulationFile = serde_json::from_reader(reader)?;
        PopulationTable::new(
            file.dept_pop
                .into_iter()
                .map(|(d, p)| (DeptId(d), p))
                .collect(),
            file.user_scale,
        )
    }

    pub fn to_writer<W: Write>(&self, writer: W) -> Result<(), CoreError> {
        let file = PopulationFile {
            dept_pop: self.dept_pop.iter().map(|(d, &p)| (d.0, p)).collect(),
            user_scale: self.user_scale,
        };
        serde_json::to_writer_pretty(writer, &file)?;
        Ok(())
    }
}
