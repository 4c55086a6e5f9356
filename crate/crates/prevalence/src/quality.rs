//! Survey-volume grades: how much testing happened inside each department.

use std::collections::BTreeMap;

use mobiprev_core::{DeptId, Quality, SpatialHierarchy, SurveyCluster};

use crate::config::QualityThresholds;
use crate::error::PrevalenceError;

/// Grade every department by the tested persons surveyed inside its
/// polygon: `good` at or above `thresholds.good`, `moderate` at or above
/// `thresholds.moderate`, `uncertain` below that. Clusters outside every
/// polygon count toward no department.
pub fn quality_indicator(
    clusters: &[SurveyCluster],
    hierarchy: &SpatialHierarchy,
    thresholds: &QualityThresholds,
) -> Result<BTreeMap<DeptId, Quality>, PrevalenceError> {
    thresholds.validate()?;
    let mut tested: BTreeMap<DeptId, u64> =
        hierarchy.dept_ids().into_iter().map(|d| (d, 0)).collect();
    for c in clusters {
        if let Some(dept) = hierarchy.dept_of_point(c.location) {
            *tested.entry(dept).or_insert(0) += c.n_tested;
        }
    }
    Ok(tested
        .into_iter()
        .map(|(dept, n)| {
            let grade = if n >= thresholds.good {
                Quality::Good
            } else if n >= thresholds.moderate {
                Quality::Moderate
            } else {
                Quality::Uncertain
            };
            (dept, grade)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::grid_world;
    use mobiprev_core::Point;

    fn cluster_in(h: &SpatialHierarchy, dept: DeptId, n_tested: u64) -> SurveyCluster {
        let c = h.department(dept).unwrap().centroid;
        SurveyCluster::new(c, n_tested, 0).unwrap()
    }

    #[test]
    fn grades_follow_tested_volume_with_inclusive_thresholds() {
        let h = grid_world(5, 1, 10.0);
        let volumes = [200u64, 199, 50, 49, 0];
        let mut clusters = Vec::new();
        for (i, &n) in volumes.iter().enumerate() {
            if n > 0 {
                clusters.push(cluster_in(&h, DeptId(i as u32 + 1), n));
            }
        }
        let grades = quality_indicator(&clusters, &h, &QualityThresholds::default()).unwrap();
        assert_eq!(grades[&DeptId(1)], Quality::Good);
        assert_eq!(grades[&DeptId(2)], Quality::Moderate);
        assert_eq!(grades[&DeptId(3)], Quality::Moderate);
        assert_eq!(grades[&DeptId(4)], Quality::Uncertain);
        assert_eq!(grades[&DeptId(5)], Quality::Uncertain);
        assert_eq!(grades.len(), 5);
    }

    #[test]
    fn volumes_accumulate_across_clusters() {
        let h = grid_world(1, 1, 10.0);
        let clusters = [
            SurveyCluster::new(Point::new(2.0, 2.0), 30, 0).unwrap(),
            SurveyCluster::new(Point::new(8.0, 8.0), 25, 0).unwrap(),
        ];
        let grades = quality_indicator(&clusters, &h, &QualityThresholds::default()).unwrap();
        assert_eq!(grades[&DeptId(1)], Quality::Moderate);
    }

    #[test]
    fn clusters_outside_every_polygon_are_ignored() {
        let h = grid_world(2, 1, 10.0);
        let clusters = [SurveyCluster::new(Point::new(-50.0, -50.0), 10_000, 0).unwrap()];
        let grades = quality_indicator(&clusters, &h, &QualityThresholds::default()).unwrap();
        assert!(grades.values().all(|&q| q == Quality::Uncertain));
        assert_eq!(grades.len(), 2);
    }

    #[test]
    fn custom_thresholds_apply() {
        let h = grid_world(1, 1, 10.0);
        let clusters = [cluster_in(&h, DeptId(1), 60)];
        let generous = QualityThresholds { good: 50, moderate: 10 };
        let grades = quality_indicator(&clusters, &h, &generous).unwrap();
        assert_eq!(grades[&DeptId(1)], Quality::Good);
    }

    #[test]
    fn inverted_thresholds_are_rejected() {
        let h = grid_world(1, 1, 10.0);
        assert!(quality_indicator(&[], &h, &QualityThresholds { good: 10, moderate: 20 }).is_err());
    }

    #[test]
    fn concentrated_survey_grades_a_minority_of_departments() {
        // Fifty departments, survey volume concentrated in fifteen: eight
        // at good volume, seven at moderate, the remaining thirty-five
        // below the moderate cutoff.
        let h = grid_world(10, 5, 60.0);
        let mut clusters = Vec::new();
        for k in 1..=50u32 {
            let n = if k <= 8 {
                250
            } else if k <= 15 {
                60
            } else {
                30
            };
            clusters.push(cluster_in(&h, DeptId(k), n));
        }
        let grades = quality_indicator(&clusters, &h, &QualityThresholds::default()).unwrap();
        let usable = grades
            .values()
            .filter(|&&q| q != Quality::Uncertain)
            .count();
        assert_eq!(usable, 15);
        assert_eq!(grades.values().filter(|&&q| q == Quality::Good).count(), 8);
        assert_eq!(
            grades.values().filter(|&&q| q == Quality::Moderate).count(),
            7
        );
    }
}
