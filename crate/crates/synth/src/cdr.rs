//! Hourly call aggregate simulation.
//!
//! For every hour and ordered department pair the call count is Poisson
//! with mean `rate(hour) * population(origin)`, split between the home
//! department and the others proportionally to destination population.
//! One aggregate row per (hour, pair) is emitted, attributed to a randomly
//! chosen antenna on each side; total duration sums independent log-normal
//! per-call durations.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Distribution, LogNormal, Poisson};

use mobiprev_core::{AntennaId, AntennaRecord, DeptId, PopulationTable, SpatialHierarchy, Window};
use mobiprev_core::time::is_night_hour;
use chrono::Timelike;

use crate::error::SynthError;
use crate::plan::BehaviorPlan;
use crate::rng::{purpose, stream};

fn poisson_draw<R: Rng>(rng: &mut R, lambda: f64) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(lambda).expect("lambda is positive and finite");
    dist.sample(rng) as u64
}

pub(crate) fn antennas_by_dept(hierarchy: &SpatialHierarchy) -> BTreeMap<DeptId, Vec<AntennaId>> {
    let mut map: BTreeMap<DeptId, Vec<AntennaId>> = BTreeMap::new();
    for (&id, _) in hierarchy.antennas() {
        let dept = hierarchy
            .dept_of_antenna(id)
            .expect("hierarchy closure guarantees resolution");
        map.entry(dept).or_default().push(id);
    }
    map
}

pub fn generate_cdr(
    hierarchy: &SpatialHierarchy,
    pops: &PopulationTable,
    plan: &BehaviorPlan,
    window: &Window,
    seed: u64,
) -> Result<Vec<AntennaRecord>, SynthError> {
    let depts = hierarchy.dept_ids();
    plan.validate(depts.len() as u32)?;
    let antennas = antennas_by_dept(hierarchy);
    for &d in &depts {
        if !antennas.contains_key(&d) {
            return Err(SynthError::BadSpec(format!(
                "department {d} has no antennas"
            )));
        }
    }
    let pop: Vec<f64> = depts
        .iter()
        .map(|&d| pops.raw(d).ok_or_else(|| {
            SynthError::BadSpec(format!("department {d} missing from population table"))
        }))
        .collect::<Result<_, _>>()?;
    let total_pop: f64 = pop.iter().sum();

    let duration = LogNormal::new(
        plan.call_duration_median_s.ln(),
        plan.call_duration_log_sigma,
    )
    .map_err(|e| SynthError::BadPlan(format!("call duration distribution: {e}")))?;

    let mut records = Vec::new();
    for (hour_idx, hour_start) in window.hours().enumerate() {
        let night = is_night_hour(hour_start.hour());
        for (ai, &a) in depts.iter().enumerate() {
            let rate = if night {
                plan.cdr_night_rate[ai]
            } else {
                plan.cdr_day_rate[ai]
            };
            let lambda_total = rate * pop[ai];
            if lambda_total <= 0.0 {
                continue;
            }
            let mut rng = stream(seed, &[purpose::CDR, u64::from(a.0), hour_idx as u64]);
            let other_pop = total_pop - pop[ai];
            for (bi, &b) in depts.iter().enumerate() {
                let lambda = if bi == ai {
                    lambda_total * (1.0 - plan.cdr_cross_fraction)
                } else if other_pop > 0.0 {
                    lambda_total * plan.cdr_cross_fraction * pop[bi] / other_pop
                } else {
                    0.0
                };
                let n_calls = poisson_draw(&mut rng, lambda);
                if n_calls == 0 {
                    continue;
                }
                let origin_list = &antennas[&a];
                let dest_list = &antennas[&b];
                let origin = origin_list[rng.gen_range(0..origin_list.len())];
                let dest = dest_list[rng.gen_range(0..dest_list.len())];
                let total: f64 = (0..n_calls).map(|_| duration.sample(&mut rng)).sum();
                records.push(AntennaRecord {
                    hour_start,
                    origin,
                    dest,
                    n_calls,
                    total_duration_s: total.round() as u64,
                });
            }
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{generate_world, WorldSpec};
    use chrono::NaiveDate;

    fn week_window() -> Window {
        let start = NaiveDate::from_ymd_opt(2011, 12, 1)
            .unwrap()
            .and_hms_opt(0, 0, 0)
            .unwrap();
        let end = NaiveDate::from_ymd_opt(2011, 12, 8)
            .unwrap()
            .and_hms_opt(0, 0, 0)
            .unwrap();
        Window::new(start, end).unwrap()
    }

    #[test]
    fn zero_rates_generate_nothing() {
        let (h, pops) = generate_world(&WorldSpec::small(1)).unwrap();
        let mut plan = BehaviorPlan::small(8);
        plan.cdr_night_rate = vec![0.0; 8];
        plan.cdr_day_rate = vec![0.0; 8];
        let records = generate_cdr(&h, &pops, &plan, &week_window(), 1).unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn generation_is_deterministic() {
        let (h, pops) = generate_world(&WorldSpec::small(1)).unwrap();
        let plan = BehaviorPlan::small(8);
        let a = generate_cdr(&h, &pops, &plan, &week_window(), 7).unwrap();
        let b = generate_cdr(&h, &pops, &plan, &week_window(), 7).unwrap();
        assert_eq!(a, b);
        let c = generate_cdr(&h, &pops, &plan, &week_window(), 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn expected_volume_tracks_rate_times_population() {
        // One department, pop 10,000, constant rate: the realized total is a
        // Poisson sum whose relative deviation from rate*pop*hours should be
        // well under 5 percent.
        let spec = WorldSpec {
            n_departments: 1,
            n_subprefs: 1,
            n_antennas: 2,
            populations: Some(vec![10_000.0]),
            user_scale: None,
            seed: 3,
        };
        let (h, pops) = generate_world(&spec).unwrap();
        let plan = BehaviorPlan {
            users_per_department: vec![10],
            cdr_night_rate: vec![0.03],
            cdr_day_rate: vec![0.03],
            cdr_cross_fraction: 0.0,
            traj_night_rate: vec![0.0],
            traj_day_rate: vec![0.0],
            trip_rate: vec![vec![0.0]],
            ..BehaviorPlan::small(1)
        };
        let window = week_window();
        let records = generate_cdr(&h, &pops, &plan, &window, 11).unwrap();
        let total: u64 = records.iter().map(|r| r.n_calls).sum();
        let expected = 0.03 * 10_000.0 * window.n_hours() as f64;
        let rel = (total as f64 - expected).abs() / expected;
        assert!(rel < 0.05, "total {total} vs expected {expected}: rel {rel}");
    }

    #[test]
    fn hot_night_department_dominates_night_flow() {
        // One department with 10x the night call rate: over 100 seeds its
        // normalized night volume must be the maximum in at least 99.
        let (h, pops) = generate_world(&WorldSpec::small(2)).unwrap();
        let mut plan = BehaviorPlan::small(8);
        plan.cdr_night_rate = vec![0.004; 8];
        plan.cdr_night_rate[3] = 0.04;
        let window = week_window();
        let mut wins = 0;
        for seed in 0..100u64 {
            let records = generate_cdr(&h, &pops, &plan, &window, seed).unwrap();
            let mut night_calls = vec![0u64; 8];
            for r in &records {
                if is_night_hour(r.hour_start.hour()) {
                    let dept = h.dept_of_antenna(r.origin).unwrap();
                    night_calls[(dept.0 - 1) as usize] += r.n_calls;
                }
            }
            // Uniform populations, so normalized flow ranks like raw counts.
            let best = night_calls
                .iter()
                .enumerate()
                .max_by_key(|&(_, c)| *c)
                .unwrap()
                .0;
            if best == 3 {
                wins += 1;
            }
        }
        assert!(wins >= 99, "hot department won only {wins}/100 runs");
    }
}
