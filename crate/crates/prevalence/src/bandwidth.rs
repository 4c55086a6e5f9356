//! Per-cluster adaptive bandwidths: each cluster's radius of smoothing is
//! the smallest circle around it that encloses `n_min` surveyed persons.

use mobiprev_core::SurveyCluster;

use crate::config::KernelConfig;
use crate::error::PrevalenceError;

/// Bandwidths parallel to the cluster slice they were computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct Bandwidths {
    /// Smoothing radius per cluster, km, never below the grid step.
    pub h: Vec<f64>,
    /// True when the whole survey holds fewer than `n_min` tested persons
    /// and every bandwidth fell back to the maximum pairwise distance.
    pub degenerate: bool,
}

pub(crate) fn validate_clusters(clusters: &[SurveyCluster]) -> Result<(), PrevalenceError> {
    for (i, c) in clusters.iter().enumerate() {
        if !(c.location.x.is_finite() && c.location.y.is_finite()) {
            return Err(PrevalenceError::BadCluster(format!(
                "cluster {i} has non-finite coordinates"
            )));
        }
        if c.n_positive > c.n_tested {
            return Err(PrevalenceError::BadCluster(format!(
                "cluster {i} has more positives than tested"
            )));
        }
    }
    Ok(())
}

/// Smallest radius around each cluster whose enclosed clusters (self
/// included) sum to at least `cfg.n_min` tested persons, floored at the
/// grid step. When the whole survey falls short of `n_min`, every
/// bandwidth becomes the maximum pairwise distance and the result is
/// flagged degenerate.
pub fn adaptive_bandwidth(
    clusters: &[SurveyCluster],
    cfg: &KernelConfig,
) -> Result<Bandwidths, PrevalenceError> {
    cfg.validate()?;
    if clusters.is_empty() {
        return Err(PrevalenceError::NoClusters);
    }
    validate_clusters(clusters)?;

    let total: u64 = clusters.iter().map(|c| c.n_tested).sum();
    if total < cfg.n_min {
        let mut dmax = 0.0f64;
        for i in 0..clusters.len() {
            for j in (i + 1)..clusters.len() {
                dmax = dmax.max(clusters[i].location.dist(clusters[j].location));
            }
        }
        let h = dmax.max(cfg.grid_step_km);
        return Ok(Bandwidths {
            h: vec![h; clusters.len()],
            degenerate: true,
        });
    }

    let mut h = Vec::with_capacity(clusters.len());
    for ci in clusters {
        let mut by_distance: Vec<(f64, u64)> = clusters
            .iter()
            .map(|c| (ci.location.dist(c.location), c.n_tested))
            .collect();
        by_distance.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut enclosed = 0u64;
        let mut radius = 0.0;
        for (d, n) in by_distance {
            enclosed += n;
            radius = d;
            if enclosed >= cfg.n_min {
                break;
            }
        }
        h.push(radius.max(cfg.grid_step_km));
    }
    Ok(Bandwidths { h, degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mobiprev_core::Point;

    fn cluster(x: f64, y: f64, n_tested: u64) -> SurveyCluster {
        SurveyCluster::new(Point::new(x, y), n_tested, 0).unwrap()
    }

    #[test]
    fn self_sufficient_cluster_floors_at_grid_step() {
        let bw = adaptive_bandwidth(&[cluster(3.0, 7.0, 500)], &KernelConfig::default()).unwrap();
        assert_eq!(bw.h, vec![5.0]);
        assert!(!bw.degenerate);
    }

    #[test]
    fn split_pair_reaches_across_the_gap() {
        let cs = [cluster(0.0, 0.0, 250), cluster(10.0, 0.0, 250)];
        let bw = adaptive_bandwidth(&cs, &KernelConfig::default()).unwrap();
        assert_eq!(bw.h, vec![10.0, 10.0]);
        assert!(!bw.degenerate);
    }

    #[test]
    fn co_located_clusters_floor() {
        let cs = [
            cluster(2.0, 2.0, 200),
            cluster(2.0, 2.0, 200),
            cluster(2.0, 2.0, 200),
        ];
        let bw = adaptive_bandwidth(&cs, &KernelConfig::default()).unwrap();
        assert_eq!(bw.h, vec![5.0, 5.0, 5.0]);
        assert!(!bw.degenerate);
    }

    #[test]
    fn radius_stops_at_the_crossing_cluster() {
        // From the left cluster: 300 at d=0, 450 at d=4, 510 at d=9.
        let cs = [
            cluster(0.0, 0.0, 300),
            cluster(4.0, 0.0, 150),
            cluster(9.0, 0.0, 60),
        ];
        let bw = adaptive_bandwidth(&cs, &KernelConfig::default()).unwrap();
        assert_eq!(bw.h, vec![9.0, 5.0, 9.0]);
    }

    #[test]
    fn sparse_survey_falls_back_to_max_pairwise_distance() {
        let cs = [
            cluster(0.0, 0.0, 10),
            cluster(30.0, 0.0, 10),
            cluster(0.0, 40.0, 10),
        ];
        let bw = adaptive_bandwidth(&cs, &KernelConfig::default()).unwrap();
        // 3-4-5 triangle: the far pair is 50 km apart.
        assert_eq!(bw.h, vec![50.0, 50.0, 50.0]);
        assert!(bw.degenerate);
    }

    #[test]
    fn lone_sparse_cluster_floors_and_flags() {
        let bw = adaptive_bandwidth(&[cluster(0.0, 0.0, 9)], &KernelConfig::default()).unwrap();
        assert_eq!(bw.h, vec![5.0]);
        assert!(bw.degenerate);
    }

    #[test]
    fn empty_cluster_list_is_rejected() {
        assert!(matches!(
            adaptive_bandwidth(&[], &KernelConfig::default()),
            Err(PrevalenceError::NoClusters)
        ));
    }

    #[test]
    fn non_finite_coordinates_are_rejected() {
        let bad = [cluster(f64::NAN, 0.0, 600)];
        assert!(matches!(
            adaptive_bandwidth(&bad, &KernelConfig::default()),
            Err(PrevalenceError::BadCluster(_))
        ));
    }

    #[test]
    fn raising_n_min_never_shrinks_a_bandwidth() {
        let cs = [
            cluster(0.0, 0.0, 300),
            cluster(4.0, 0.0, 150),
            cluster(9.0, 0.0, 60),
        ];
        let lo = adaptive_bandwidth(
            &cs,
            &KernelConfig {
                n_min: 100,
                grid_step_km: 5.0,
            },
        )
        .unwrap();
        let hi = adaptive_bandwidth(
            &cs,
            &KernelConfig {
                n_min: 500,
                grid_step_km: 5.0,
            },
        )
        .unwrap();
        assert_eq!(lo.h, vec![5.0, 5.0, 5.0]);
        for (a, b) in lo.h.iter().zip(&hi.h) {
            assert!(a <= b);
        }
    }
}
