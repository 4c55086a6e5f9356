//! Fixtures shared by the integration tests: a grid of square departments
//! (one antenna and one sub-prefecture each, ids row-major 1..=nx·ny) and
//! terse record constructors.

use std::collections::BTreeMap;

use mobiprev_core::{
    parse_timestamp, AntennaId, AntennaInfo, DepartmentInfo, DeptId, Point, RegionId,
    SpatialHierarchy, SubprefId, TrajectoryRecord, UserId,
};
use mobiprev_flows::HomeAssignment;

pub fn grid_world(nx: u32, ny: u32, cell_km: f64) -> SpatialHierarchy {
    let mut antennas = BTreeMap::new();
    let mut subprefs = BTreeMap::new();
    let mut departments = BTreeMap::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let k = iy * nx + ix + 1;
            let x0 = ix as f64 * cell_km;
            let y0 = iy as f64 * cell_km;
            let centroid = Point::new(x0 + cell_km / 2.0, y0 + cell_km / 2.0);
            antennas.insert(
                AntennaId(k),
                AntennaInfo {
                    location: centroid,
                    subpref: SubprefId(k),
                },
            );
            subprefs.insert(SubprefId(k), DeptId(k));
            departments.insert(
                DeptId(k),
                DepartmentInfo {
                    region: RegionId(1),
                    centroid,
                    polygon: vec![
                        Point::new(x0, y0),
                        Point::new(x0 + cell_km, y0),
                        Point::new(x0 + cell_km, y0 + cell_km),
                        Point::new(x0, y0 + cell_km),
                    ],
                },
            );
        }
    }
    SpatialHierarchy::new(antennas, subprefs, departments, vec![RegionId(1)]).unwrap()
}

#[allow(dead_code)]
pub fn homes_of(pairs: &[(u64, u32)]) -> HomeAssignment {
    HomeAssignment::from_homes(pairs.iter().map(|&(u, d)| (UserId(u), DeptId(d))).collect())
}

#[allow(dead_code)]
pub fn traj(user: u64, ts: &str, subpref: u32) -> TrajectoryRecord {
    TrajectoryRecord {
        user: UserId(user),
        at: parse_timestamp(ts).unwrap(),
        subpref: SubprefId(subpref),
    }
}
