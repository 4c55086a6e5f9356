//! Synthetic country layout.
//!
//! Departments tile a near-square grid of `CELL_KM` x `CELL_KM` cells.
//! Sub-prefectures split each department cell into horizontal strips and
//! antennas scatter uniformly inside their strip. Region assignment is
//! round-robin over at most ten regions; regions exist only so the
//! hierarchy is complete, nothing downstream aggregates by them.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use mobiprev_core::hierarchy::{AntennaInfo, DepartmentInfo};
use mobiprev_core::{
    AntennaId, DeptId, Point, PopulationTable, RegionId, SpatialHierarchy, SubprefId,
};

use crate::error::SynthError;
use crate::rng::{purpose, stream};

pub const CELL_KM: f64 = 60.0;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WorldSpec {
    pub n_departments: u32,
    pub n_subprefs: u32,
    pub n_antennas: u32,
    /// Per-department census population, ascending department id order.
    /// `None` means 10,000 per department.
    #[serde(default)]
    pub populations: Option<Vec<f64>>,
    /// Subscriber total the populations are rescaled to; defaults to the
    /// raw population sum (identity rescale).
    #[serde(default)]
    pub user_scale: Option<f64>,
    pub seed: u64,
}

impl WorldSpec {
    /// Eight departments, three sub-prefectures each, two antennas per
    /// sub-prefecture. Small enough that a full pipeline run stays fast.
    pub fn small(seed: u64) -> Self {
        WorldSpec {
            n_departments: 8,
            n_subprefs: 24,
            n_antennas: 48,
            populations: Some(vec![2_000.0; 8]),
            user_scale: None,
            seed,
        }
    }

    /// Country-sized layout: 50 departments, 255 sub-prefectures, 1250
    /// antennas.
    pub fn full(seed: u64) -> Self {
        WorldSpec {
            n_departments: 50,
            n_subprefs: 255,
            n_antennas: 1250,
            populations: Some(
                (0..50)
                    .map(|d| 10_000.0 * (1.0 + (d % 6) as f64))
                    .collect(),
            ),
            user_scale: None,
            seed,
        }
    }

    fn validate(&self) -> Result<(), SynthError> {
        if self.n_departments == 0 {
            return Err(SynthError::BadSpec("need at least one department".into()));
        }
        if self.n_subprefs < self.n_departments {
            return Err(SynthError::BadSpec(format!(
                "{} sub-prefectures cannot cover {} departments",
                self.n_subprefs, self.n_departments
            )));
        }
        if self.n_antennas < self.n_subprefs {
            return Err(SynthError::BadSpec(format!(
                "{} antennas cannot cover {} sub-prefectures",
                self.n_antennas, self.n_subprefs
            )));
        }
        if let Some(p) = &self.populations {
            if p.len() != self.n_departments as usize {
                return Err(SynthError::BadSpec(format!(
                    "{} populations for {} departments",
                    p.len(),
                    self.n_departments
                )));
            }
            if p.iter().any(|&v| !(v.is_finite() && v > 0.0)) {
                return Err(SynthError::BadSpec("populations must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Splits `total` into `parts` counts differing by at most one, larger
/// counts first.
fn spread(total: u32, parts: u32) -> Vec<u32> {
    let base = total / parts;
    let extra = total % parts;
    (0..parts)
        .map(|i| base + u32::from(i < extra))
        .collect()
}

pub fn generate_world(spec: &WorldSpec) -> Result<(SpatialHierarchy, PopulationTable), SynthError> {
    spec.validate()?;
    let d = spec.n_departments;
    let nx = (d as f64).sqrt().ceil() as u32;
    let ny = d.div_ceil(nx);
    debug_assert!(nx * ny >= d);

    let n_regions = d.min(10);
    let mut departments = BTreeMap::new();
    for idx in 0..d {
        let col = idx % nx;
        let row = idx / nx;
        let x0 = col as f64 * CELL_KM;
        let y0 = row as f64 * CELL_KM;
        departments.insert(
            DeptId(idx + 1),
            DepartmentInfo {
                region: RegionId(idx % n_regions + 1),
                centroid: Point::new(x0 + CELL_KM / 2.0, y0 + CELL_KM / 2.0),
                polygon: vec![
                    Point::new(x0, y0),
                    Point::new(x0 + CELL_KM, y0),
                    Point::new(x0 + CELL_KM, y0 + CELL_KM),
                    Point::new(x0, y0 + CELL_KM),
                ],
            },
        );
        let _ = ny;
    }

    // Sub-prefecture strips, department-major id order.
    let sp_counts = spread(spec.n_subprefs, d);
    let mut subprefs = BTreeMap::new();
    let mut strips: BTreeMap<SubprefId, (f64, f64, f64, f64)> = BTreeMap::new();
    let mut next_sp = 1u32;
    for idx in 0..d {
        let dept = DeptId(idx + 1);
        let info = &departments[&dept];
        let x0 = info.polygon[0].x;
        let y0 = info.polygon[0].y;
        let c = sp_counts[idx as usize];
        for k in 0..c {
            let id = SubprefId(next_sp);
            next_sp += 1;
            subprefs.insert(id, dept);
            let h = CELL_KM / c as f64;
            strips.insert(id, (x0, y0 + k as f64 * h, CELL_KM, h));
        }
    }

    let ant_counts = spread(spec.n_antennas, spec.n_subprefs);
    let mut antennas = BTreeMap::new();
    let mut next_ant = 1u32;
    for (i, (&sp, &(sx, sy, sw, sh))) in strips.iter().enumerate() {
        for _ in 0..ant_counts[i] {
            let id = AntennaId(next_ant);
            next_ant += 1;
            let mut rng = stream(spec.seed, &[purpose::WORLD, u64::from(id.0)]);
            let x = sx + rng.gen::<f64>() * sw;
            let y = sy + rng.gen::<f64>() * sh;
            antennas.insert(
                id,
                AntennaInfo {
                    location: Point::new(x, y),
                    subpref: sp,
                },
            );
        }
    }

    let regions = (1..=n_regions).map(RegionId).collect();
    let hierarchy = SpatialHierarchy::new(antennas, subprefs, departments, regions)?;

    let pops: Vec<f64> = spec
        .populations
        .clone()
        .unwrap_or_else(|| vec![10_000.0; d as usize]);
    let total: f64 = pops.iter().sum();
    let table = PopulationTable::new(
        pops.iter()
            .enumerate()
            .map(|(i, &p)| (DeptId(i as u32 + 1), p))
            .collect(),
        spec.user_scale.unwrap_or(total),
    )?;
    Ok((hierarchy, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_world_has_declared_shape() {
        let (h, pops) = generate_world(&WorldSpec::small(1)).unwrap();
        assert_eq!(h.departments().len(), 8);
        assert_eq!(h.subprefs().len(), 24);
        assert_eq!(h.antennas().len(), 48);
        assert_eq!(h.regions().len(), 8);
        assert_eq!(pops.raw(DeptId(1)), Some(2_000.0));
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = WorldSpec::small(42);
        let (h1, _) = generate_world(&spec).unwrap();
        let (h2, _) = generate_world(&spec).unwrap();
        let mut b1 = Vec::new();
        let mut b2 = Vec::new();
        h1.to_writer(&mut b1).unwrap();
        h2.to_writer(&mut b2).unwrap();
        assert_eq!(b1, b2);
        let (h3, _) = generate_world(&WorldSpec::small(43)).unwrap();
        let mut b3 = Vec::new();
        h3.to_writer(&mut b3).unwrap();
        assert_ne!(b1, b3);
    }

    #[test]
    fn single_department_world() {
        let spec = WorldSpec {
            n_departments: 1,
            n_subprefs: 1,
            n_antennas: 1,
            populations: None,
            user_scale: None,
            seed: 5,
        };
        let (h, pops) = generate_world(&spec).unwrap();
        assert_eq!(h.departments().len(), 1);
        assert_eq!(pops.raw(DeptId(1)), Some(10_000.0));
    }

    #[test]
    fn antennas_fewer_than_subprefs_is_an_error() {
        let spec = WorldSpec {
            n_departments: 2,
            n_subprefs: 4,
            n_antennas: 3,
            populations: None,
            user_scale: None,
            seed: 5,
        };
        assert!(generate_world(&spec).is_err());
    }

    #[test]
    fn antennas_sit_inside_their_department_cell() {
        let (h, _) = generate_world(&WorldSpec::small(9)).unwrap();
        for (id, info) in h.antennas() {
            let dept = h.dept_of_antenna(*id).unwrap();
            let poly = &h.department(dept).unwrap().polygon;
            assert!(
                mobiprev_core::point_in_polygon(info.location, poly),
                "antenna {id} strayed out of department {dept}"
            );
        }
    }

    #[test]
    fn every_department_gets_a_subpref() {
        let (h, _) = generate_world(&WorldSpec::full(3)).unwrap();
        for &dept in h.departments().keys() {
            assert!(
                h.subprefs().values().any(|&d| d == dept),
                "department {dept} has no sub-prefecture"
            );
        }
    }
}
