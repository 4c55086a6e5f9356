//! Serosurvey cluster simulation: clusters scatter uniformly inside each
//! department and positives are binomial draws from the planted prevalence.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use mobiprev_core::{point_in_polygon, Point, SpatialHierarchy, SurveyCluster};

use crate::error::SynthError;
use crate::plan::BehaviorPlan;
use crate::rng::{purpose, stream};
use crate::truth::PlantedTruth;

pub fn generate_clusters(
    hierarchy: &SpatialHierarchy,
    truth: &PlantedTruth,
    plan: &BehaviorPlan,
    seed: u64,
) -> Result<Vec<SurveyCluster>, SynthError> {
    let mut clusters = Vec::new();
    for (&dept, info) in hierarchy.departments() {
        let prev = truth.prevalence_of(dept).ok_or_else(|| {
            SynthError::BadTruth(format!("no planted prevalence for department {dept}"))
        })?;
        let bbox = mobiprev_core::Rect::from_points(info.polygon.iter().copied())
            .expect("polygons have vertices");
        for k in 0..plan.clusters_per_department {
            let mut rng = stream(seed, &[purpose::CLUSTER, u64::from(dept.0), u64::from(k)]);
            // Rejection-sample a point inside the polygon; cells are convex
            // so this terminates immediately in practice.
            let mut location = Point::new(bbox.min.x, bbox.min.y);
            for _ in 0..1000 {
                let p = Point::new(
                    bbox.min.x + rng.gen::<f64>() * bbox.width(),
                    bbox.min.y + rng.gen::<f64>() * bbox.height(),
                );
                if point_in_polygon(p, &info.polygon) {
                    location = p;
                    break;
                }
            }
            let n_positive = Binomial::new(plan.cluster_tested, prev)
                .map_err(|e| SynthError::BadTruth(format!("binomial draw: {e}")))?
                .sample(&mut rng);
            clusters.push(
                SurveyCluster::new(location, plan.cluster_tested, n_positive)
                    .expect("binomial draw cannot exceed trials"),
            );
        }
    }
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::BehaviorPlan;
    use crate::truth::{plant_prevalence, PlantConfig};
    use crate::world::{generate_world, WorldSpec};
    use mobiprev_core::Window;

    #[test]
    fn clusters_land_in_their_department_with_plausible_positives() {
        let (h, pops) = generate_world(&WorldSpec::small(1)).unwrap();
        let plan = BehaviorPlan::small(8);
        let cfg = PlantConfig {
            links: vec![],
            intercept: 0.04,
            noise_sd: 0.0,
        };
        let truth = plant_prevalence(
            &h.dept_ids(),
            &plan,
            &pops,
            &Window::default_observation(),
            &cfg,
            1,
        )
        .unwrap();
        let clusters = generate_clusters(&h, &truth, &plan, 1).unwrap();
        assert_eq!(clusters.len(), 8 * 4);
        let mut total_pos = 0u64;
        let mut total_tested = 0u64;
        for c in &clusters {
            assert!(h.dept_of_point(c.location).is_some());
            total_pos += c.n_positive;
            total_tested += c.n_tested;
        }
        let overall = total_pos as f64 / total_tested as f64;
        assert!((overall - 0.04).abs() < 0.01, "overall prevalence {overall}");
    }

    #[test]
    fn cluster_generation_is_deterministic() {
        let (h, pops) = generate_world(&WorldSpec::small(1)).unwrap();
        let plan = BehaviorPlan::small(8);
        let cfg = PlantConfig {
            links: vec![],
            intercept: 0.02,
            noise_sd: 0.0,
        };
        let truth = plant_prevalence(
            &h.dept_ids(),
            &plan,
            &pops,
            &Window::default_observation(),
            &cfg,
            1,
        )
        .unwrap();
        let a = generate_clusters(&h, &truth, &plan, 5).unwrap();
        let b = generate_clusters(&h, &truth, &plan, 5).unwrap();
        assert_eq!(a, b);
    }
}
