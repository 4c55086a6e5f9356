//! Strong-tie graph exports. Hubs (departments incident to a strong edge)
//! become nodes labeled with their prevalence estimate; edges carry the
//! flow relative to the largest strong flow.

use std::collections::{BTreeMap, BTreeSet};

use mobiprev_core::{DeptId, HivEstimate, SpatialHierarchy};
use serde_json::json;

use crate::error::FlowsError;
use crate::ties::TieSet;

/// Percent label with one decimal: 0.051 becomes "5.1".
pub fn prevalence_label(fraction: f64) -> String {
    format!("{:.1}", fraction * 100.0)
}

fn hub_nodes(ties: &TieSet) -> BTreeSet<DeptId> {
    let mut nodes = BTreeSet::new();
    for e in ties.strong_edges() {
        nodes.insert(e.a);
        nodes.insert(e.b);
    }
    nodes
}

fn estimate_index(estimates: &[HivEstimate]) -> BTreeMap<DeptId, &HivEstimate> {
    estimates.iter().map(|e| (e.department, e)).collect()
}

/// Undirected DOT graph. Node positions are planar kilometer coordinates
/// (`pos` pinned), labels are formatted prevalence where an estimate exists.
pub fn export_dot(
    ties: &TieSet,
    hierarchy: &SpatialHierarchy,
    estimates: &[HivEstimate],
) -> String {
    let by_dept = estimate_index(estimates);
    let mut out = String::from("graph strong_ties {\n");
    for d in hub_nodes(ties) {
        let label = by_dept
            .get(&d)
            .map(|e| prevalence_label(e.prevalence))
            .unwrap_or_else(|| d.to_string());
        match hierarchy.department(d) {
            Some(info) => out.push_str(&format!(
                "  d{d} [label=\"{label}\", pos=\"{},{}!\"];\n",
                info.centroid.x, info.centroid.y
            )),
            None => out.push_str(&format!("  d{d} [label=\"{label}\"];\n")),
        }
    }
    for e in ties.strong_edges() {
        out.push_str(&format!(
            "  d{} -- d{} [weight={}];\n",
            e.a, e.b, e.relative
        ));
    }
    out.push_str("}\n");
    out
}

/// GeoJSON FeatureCollection of hub Points and strong-edge LineStrings, in
/// planar kilometer coordinates. Pretty-printed with sorted keys.
pub fn export_geojson(
    ties: &TieSet,
    hierarchy: &SpatialHierarchy,
    estimates: &[HivEstimate],
) -> Result<String, FlowsError> {
    let by_dept = estimate_index(estimates);
    let mut features = Vec::new();
    for d in hub_nodes(ties) {
        let centroid = hierarchy
            .department(d)
            .map(|info| vec![info.centroid.x, info.centroid.y]);
        let est = by_dept.get(&d);
        features.push(json!({
            "type": "Feature",
            "geometry": match centroid {
                Some(c) => json!({"type": "Point", "coordinates": c}),
                None => serde_json::Value::Null,
            },
            "properties": {
                "role": "hub",
                "department": d.0,
                "label": est.map(|e| prevalence_label(e.prevalence)),
                "prevalence": est.map(|e| e.prevalence),
                "quality": est.map(|e| e.quality.label()),
            },
        }));
    }
    for e in ties.strong_edges() {
        let ends: Option<Vec<Vec<f64>>> = hierarchy.department(e.a).and_then(|a| {
            hierarchy.department(e.b).map(|b| {
                vec![
                    vec![a.centroid.x, a.centroid.y],
                    vec![b.centroid.x, b.centroid.y],
                ]
            })
        });
        features.push(json!({
            "type": "Feature",
            "geometry": match ends {
                Some(c) => json!({"type": "LineString", "coordinates": c}),
                None => serde_json::Value::Null,
            },
            "properties": {
                "role": "tie",
                "a": e.a.0,
                "b": e.b.0,
                "flow": e.flow,
                "relative": e.relative,
            },
        }));
    }
    let doc = json!({"type": "FeatureCollection", "features": features});
    Ok(serde_json::to_string_pretty(&doc)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pair_strength, FlowKind, FlowMatrix};
    use crate::testutil::line_world;
    use crate::ties::strong_ties;
    use mobiprev_core::Quality;

    fn focal_tie_set() -> TieSet {
        let json = r#"{"ties": {"1": [
            {"peer": 2, "flow": 2.0, "strength": 0.5, "strong": false},
            {"peer": 3, "flow": 4.0, "strength": 1.0, "strong": true},
            {"peer": 4, "flow": 6.0, "strength": 1.5, "strong": true}
        ]}}"#;
        TieSet::from_reader(json.as_bytes()).unwrap()
    }

    #[test]
    fn label_formats_percent_with_one_decimal() {
        assert_eq!(prevalence_label(0.051), "5.1");
        assert_eq!(prevalence_label(0.006), "0.6");
        assert_eq!(prevalence_label(0.0567), "5.7");
    }

    #[test]
    fn empty_tie_set_exports_valid_empty_documents() {
        let h = line_world(2);
        let m = FlowMatrix::zeros(FlowKind::Communication, &h.dept_ids());
        let ties = strong_ties(&pair_strength(&m)).unwrap();
        let dot = export_dot(&ties, &h, &[]);
        assert_eq!(dot, "graph strong_ties {\n}\n");
        let geo = export_geojson(&ties, &h, &[]).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&geo).unwrap();
        assert_eq!(doc["type"], "FeatureCollection");
        assert_eq!(doc["features"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn focal_example_exports_two_weighted_edges() {
        let h = line_world(4);
        let ties = focal_tie_set();
        let dot = export_dot(&ties, &h, &[]);
        let edge_lines: Vec<&str> = dot.lines().filter(|l| l.contains("--")).collect();
        assert_eq!(edge_lines.len(), 2);
        assert!(edge_lines[0].contains(&format!("weight={}", 4.0 / 6.0)));
        assert!(edge_lines[1].contains("weight=1"));
        let geo = export_geojson(&ties, &h, &[]).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&geo).unwrap();
        let feats = doc["features"].as_array().unwrap();
        // Three hubs + two edges.
        assert_eq!(feats.len(), 5);
        let relatives: Vec<f64> = feats
            .iter()
            .filter(|f| f["properties"]["role"] == "tie")
            .map(|f| f["properties"]["relative"].as_f64().unwrap())
            .collect();
        assert_eq!(relatives, vec![4.0 / 6.0, 1.0]);
    }

    #[test]
    fn hub_nodes_carry_prevalence_labels() {
        let h = line_world(4);
        let ties = focal_tie_set();
        let estimates = vec![HivEstimate {
            department: DeptId(1),
            prevalence: 0.051,
            quality: Quality::Good,
        }];
        let dot = export_dot(&ties, &h, &estimates);
        assert!(dot.contains("d1 [label=\"5.1\""));
        // Departments without an estimate fall back to their id.
        assert!(dot.contains("d3 [label=\"3\""));
        let geo = export_geojson(&ties, &h, &estimates).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&geo).unwrap();
        let hub1 = doc["features"]
            .as_array()
            .unwrap()
            .iter()
            .find(|f| f["properties"]["department"] == 1)
            .unwrap();
        assert_eq!(hub1["properties"]["label"], "5.1");
        assert_eq!(hub1["properties"]["quality"], "good");
        assert_eq!(hub1["geometry"]["type"], "Point");
    }
}
