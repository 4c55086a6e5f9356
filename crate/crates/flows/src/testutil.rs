//! Shared unit-test fixture: a row of square departments, one antenna and
//! one sub-prefecture each, ids 1..=n.

use std::collections::BTreeMap;

use mobiprev_core::{
    AntennaId, AntennaInfo, DepartmentInfo, DeptId, Point, RegionId, SpatialHierarchy, SubprefId,
};

pub fn line_world(n: u32) -> SpatialHierarchy {
    let mut antennas = BTreeMap::new();
    let mut subprefs = BTreeMap::new();
    let mut departments = BTreeMap::new();
    for k in 1..=n {
        let x = k as f64 * 10.0;
        antennas.insert(
            AntennaId(k),
            AntennaInfo {
                location: Point { x, y: 0.0 },
                subpref: SubprefId(k),
            },
        );
        subprefs.insert(SubprefId(k), DeptId(k));
        departments.insert(
            DeptId(k),
            DepartmentInfo {
                region: RegionId(1),
                centroid: Point { x, y: 0.0 },
                polygon: vec![
                    Point { x: x - 5.0, y: -5.0 },
                    Point { x: x + 5.0, y: -5.0 },
                    Point { x: x + 5.0, y: 5.0 },
                    Point { x: x - 5.0, y: 5.0 },
                ],
            },
        );
    }
    SpatialHierarchy::new(antennas, subprefs, departments, vec![RegionId(1)]).unwrap()
}
