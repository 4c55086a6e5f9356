//! Department choropleth export.

use std::collections::BTreeMap;

use mobiprev_core::{DeptId, HivEstimate, SpatialHierarchy};
use serde_json::json;

use crate::error::PrevalenceError;

/// GeoJSON FeatureCollection with one Polygon feature per department,
/// carrying its prevalence estimate and quality grade. Rings are closed
/// (first vertex repeated last) as GeoJSON requires; coordinates are
/// planar kilometers. Departments without an estimate get null properties
/// rather than being dropped, so the map stays complete.
pub fn export_choropleth(
    hierarchy: &SpatialHierarchy,
    estimates: &[HivEstimate],
) -> Result<String, PrevalenceError> {
    let by_dept: BTreeMap<DeptId, &HivEstimate> =
        estimates.iter().map(|e| (e.department, e)).collect();
    let mut features = Vec::new();
    for (&dept, info) in hierarchy.departments() {
        let mut ring: Vec<Vec<f64>> = info.polygon.iter().map(|p| vec![p.x, p.y]).collect();
        if let Some(first) = ring.first().cloned() {
            ring.push(first);
        }
        let est = by_dept.get(&dept);
        features.push(json!({
            "type": "Feature",
            "geometry": {"type": "Polygon", "coordinates": [ring]},
            "properties": {
                "department": dept.0,
                "prevalence": est.map(|e| e.prevalence),
                "quality": est.map(|e| e.quality.label()),
            },
        }));
    }
    let doc = json!({"type": "FeatureCollection", "features": features});
    Ok(serde_json::to_string_pretty(&doc)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::grid_world;
    use mobiprev_core::Quality;

    #[test]
    fn every_department_becomes_a_closed_polygon_feature() {
        let h = grid_world(2, 1, 10.0);
        let estimates = vec![HivEstimate {
            department: DeptId(1),
            prevalence: 0.057,
            quality: Quality::Good,
        }];
        let geo = export_choropleth(&h, &estimates).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&geo).unwrap();
        assert_eq!(doc["type"], "FeatureCollection");
        let feats = doc["features"].as_array().unwrap();
        assert_eq!(feats.len(), 2);

        let first = &feats[0];
        assert_eq!(first["geometry"]["type"], "Polygon");
        let ring = first["geometry"]["coordinates"][0].as_array().unwrap();
        assert_eq!(ring.len(), 5);
        assert_eq!(ring[0], ring[4]);
        assert_eq!(first["properties"]["department"], 1);
        assert_eq!(first["properties"]["prevalence"], 0.057);
        assert_eq!(first["properties"]["quality"], "good");

        // No estimate for department 2: present, but with null properties.
        let second = &feats[1];
        assert_eq!(second["properties"]["department"], 2);
        assert!(second["properties"]["prevalence"].is_null());
        assert!(second["properties"]["quality"].is_null());
    }
}
