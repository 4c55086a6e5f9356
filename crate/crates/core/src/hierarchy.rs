//! The antenna / sub-prefecture / department / region containment chain.
//!
//! Loaded from JSON and validated for referential closure: every antenna's
//! sub-prefecture exists, every sub-prefecture's department exists, every
//! department's region is declared. Lookups never panic afterwards.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::geom::{point_in_polygon, Point, Rect};
use crate::ids::{AntennaId, DeptId, RegionId, SubprefId};

#[derive(Clone, Debug)]
pub struct AntennaInfo {
    pub location: Point,
    pub subpref: SubprefId,
}

#[derive(Clone, Debug)]
pub struct DepartmentInfo {
    pub region: RegionId,
    pub centroid: Point,
    /// Boundary ring without the closing repeat of the first vertex.
    pub polygon: Vec<Point>,
}

#[derive(Clone, Debug)]
pub struct SpatialHierarchy {
    antennas: BTreeMap<AntennaId, AntennaInfo>,
    subprefs: BTreeMap<SubprefId, DeptId>,
    departments: BTreeMap<DeptId, DepartmentInfo>,
    regions: Vec<RegionId>,
    /// Mean antenna location per sub-prefecture; department centroid for
    /// sub-prefectures without antennas.
    subpref_centroids: BTreeMap<SubprefId, Point>,
}

#[derive(Serialize, Deserialize)]
struct AntennaEntry {
    x_km: f64,
    y_km: f64,
    subpref: u32,
}

#[derive(Serialize, Deserialize)]
struct SubprefEntry {
    department: u32,
}

#[derive(Serialize, Deserialize)]
struct DepartmentEntry {
    region: u32,
    centroid: [f64; 2],
    polygon: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct HierarchyFile {
    antennas: BTreeMap<u32, AntennaEntry>,
    subprefs: BTreeMap<u32, SubprefEntry>,
    departments: BTreeMap<u32, DepartmentEntry>,
    regions: Vec<u32>,
}

impl SpatialHierarchy {
    pub fn new(
        antennas: BTreeMap<AntennaId, AntennaInfo>,
        subprefs: BTreeMap<SubprefId, DeptId>,
        departments: BTreeMap<DeptId, DepartmentInfo>,
        regions: Vec<RegionId>,
    ) -> Result<Self, CoreError> {
        if departments.is_empty() {
            return Err(CoreError::Hierarchy("no departments".into()));
        }
        let region_set: std::collections::BTreeSet<RegionId> = regions.iter().copied().collect();
        if region_set.len() != regions.len() {
            return Err(CoreError::Hierarchy("duplicate region ids".into()));
        }
        for (id, info) in &antennas {
            if !subprefs.contains_key(&info.subpref) {
                return Err(CoreError::Hierarchy(format!(
                    "antenna {id} references unknown sub-prefecture {}",
                    info.subpref
                )));
            }
        }
        for (id, dept) in &subprefs {
            if !departments.contains_key(dept) {
                return Err(CoreError::Hierarchy(format!(
                    "sub-prefecture {id} references unknown department {dept}"
                )));
            }
        }
        for (id, info) in &departments {
            if !region_set.contains(&info.region) {
                return Err(CoreError::Hierarchy(format!(
                    "department {id} references unknown region {}",
                    info.region
                )));
            }
            if info.polygon.len() < 3 {
                return Err(CoreError::Hierarchy(format!(
                    "department {id} polygon has fewer than 3 vertices"
                )));
            }
        }

        let mut sums: BTreeMap<SubprefId, (f64, f64, usize)> = BTreeMap::new();
        for info in antennas.values() {
            let e = sums.entry(info.subpref).or_insert((0.0, 0.0, 0));
            e.0 += info.location.x;
            e.1 += info.location.y;
            e.2 += 1;
        }
        let mut subpref_centroids = BTreeMap::new();
        for (&sp, &dept) in &subprefs {
            let centroid = match sums.get(&sp) {
                Some(&(sx, sy, n)) => Point::new(sx / n as f64, sy / n as f64),
                None => departments[&dept].centroid,
            };
            subpref_centroids.insert(sp, centroid);
        }

        Ok(SpatialHierarchy {
            antennas,
            subprefs,
            departments,
            regions,
            subpref_centroids,
        })
    }

    pub fn antennas(&self) -> &BTreeMap<AntennaId, AntennaInfo> {
        &self.antennas
    }

    pub fn subprefs(&self) -> &BTreeMap<SubprefId, DeptId> {
        &self.subprefs
    }

    pub fn departments(&self) -> &BTreeMap<DeptId, DepartmentInfo> {
        &self.departments
    }

    pub fn regions(&self) -> &[RegionId] {
        &self.regions
    }

    pub fn dept_of_antenna(&self, id: AntennaId) -> Option<DeptId> {
        let info = self.antennas.get(&id)?;
        self.subprefs.get(&info.subpref).copied()
    }

    pub fn dept_of_subpref(&self, id: SubprefId) -> Option<DeptId> {
        self.subprefs.get(&id).copied()
    }

    pub fn subpref_centroid(&self, id: SubprefId) -> Option<Point> {
        self.subpref_centroids.get(&id).copied()
    }

    /// Department ids in ascending order; the canonical row/column order of
    /// every matrix in the pipeline.
    pub fn dept_ids(&self) -> Vec<DeptId> {
        self.departments.keys().copied().collect()
    }

    pub fn dept_index(&self) -> BTreeMap<DeptId, usize> {
        self.departments
            .keys()
            .enumerate()
            .map(|(i, &d)| (d, i))
            .collect()
    }

    pub fn department(&self, id: DeptId) -> Option<&DepartmentInfo> {
        self.departments.get(&id)
    }

    pub fn dept_of_point(&self, p: Point) -> Option<DeptId> {
        self.departments
            .iter()
            .find(|(_, info)| point_in_polygon(p, &info.polygon))
            .map(|(&id, _)| id)
    }

    pub fn bounding_box(&self) -> Rect {
        Rect::from_points(
            self.departments
                .values()
                .flat_map(|d| d.polygon.iter().copied()),
        )
        .expect("departments are non-empty and polygons have vertices")
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, CoreError> {
        let file: HierarchyFile = serde_json::from_reader(reader)?;
        let antennas = file
            .antennas
            .into_iter()
            .map(|(id, e)| {
                (
                    AntennaId(id),
                    AntennaInfo {
                        location: Point::new(e.x_km, e.y_km),
                        subpref: SubprefId(e.subpref),
                    },
                )
            })
            .collect();
        let subprefs = file
            .subprefs
            .into_iter()
            .map(|(id, e)| (SubprefId(id), DeptId(e.department)))
            .collect();
        let departments = file
            .departments
            .into_iter()
            .map(|(id, e)| {
                (
                    DeptId(id),
                    DepartmentInfo {
                        region: RegionId(e.region),
                        centroid: Point::new(e.centroid[0], e.centroid[1]),
                        polygon: e.polygon.iter().map(|&[x, y]| Point::new(x, y)).collect(),
                    },
                )
            })
            .collect();
        let regions = file.regions.into_iter().map(RegionId).collect();
        SpatialHierarchy::new(antennas, subprefs, departments, regions)
    }

    pub fn to_writer<W: Write>(&self, writer: W) -> Result<(), CoreError> {
        let file = HierarchyFile {
            antennas: self
                .antennas
                .iter()
                .map(|(id, info)| {
                    (
                        id.0,
                        AntennaEntry {
                            x_km: info.location.x,
                            y_km: info.location.y,
                            subpref: info.subpref.0,
                        },
                    )
                })
                .collect(),
            subprefs: self
                .subprefs
                .iter()
                .map(|(id, dept)| (id.0, SubprefEntry { department: dept.0 }))
                .collect(),
            departments: self
                .departments
                .iter()
                .map(|(id, info)| {
                    (
                        id.0,
                        DepartmentEntry {
                            region: info.region.0,
                            centroid: [info.centroid.x, info.centroid.y],
                            polygon: info.polygon.iter().map(|p| [p.x, p.y]).collect(),
                        },
                    )
                })
                .collect(),
            regions: self.regions.iter().map(|r| r.0).collect(),
        };
        serde_json::to_writer_pretty(writer, &file)?;
        Ok(())
    }
}
