//! Per-subscriber trajectory simulation with planted trips.
//!
//! Each subscriber lives in a home sub-prefecture and emits events at the
//! plan's night/day rates. Trips are drawn from the migration propensity
//! matrix, never overlap and keep a two-hour buffer, and are bracketed by
//! anchor records (one at the destination just after departure and before
//! return, one at home on each side) so every planted trip is recoverable
//! as exactly one maximal away-run whose measured duration differs from the
//! planted one by at most the anchor offset.

use std::collections::BTreeMap;

use chrono::{Duration, NaiveDateTime, Timelike};
use rand::Rng;
use rand_distr::{Distribution, LogNormal, Poisson};

use mobiprev_core::time::is_night_hour;
use mobiprev_core::{DeptId, SpatialHierarchy, SubprefId, TrajectoryRecord, UserId, Window};

use crate::error::SynthError;
use crate::plan::BehaviorPlan;
use crate::rng::{purpose, stream};

/// Anchor records sit this many seconds inside / outside each trip.
const ANCHOR_S: i64 = 60;
/// Minimum idle time between two planted trips.
const TRIP_GAP_S: i64 = 2 * 3600;

#[derive(Clone, Debug, PartialEq)]
pub struct PlannedTrip {
    pub user: UserId,
    pub home: DeptId,
    pub dest: DeptId,
    pub dest_subpref: SubprefId,
    pub start: NaiveDateTime,
    pub end: NaiveDateTime,
}

impl PlannedTrip {
    pub fn duration_days(&self) -> f64 {
        (self.end - self.start).num_seconds() as f64 / 86_400.0
    }
}

fn poisson_draw<R: Rng>(rng: &mut R, lambda: f64) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    Poisson::new(lambda)
        .expect("lambda is positive and finite")
        .sample(rng) as u64
}

pub fn generate_trajectories(
    hierarchy: &SpatialHierarchy,
    plan: &BehaviorPlan,
    window: &Window,
    seed: u64,
) -> Result<(Vec<TrajectoryRecord>, Vec<PlannedTrip>), SynthError> {
    let depts = hierarchy.dept_ids();
    plan.validate(depts.len() as u32)?;

    let mut subprefs_of: BTreeMap<DeptId, Vec<SubprefId>> = BTreeMap::new();
    for (&sp, &dept) in hierarchy.subprefs() {
        subprefs_of.entry(dept).or_default().push(sp);
    }
    for &d in &depts {
        if !subprefs_of.contains_key(&d) {
            return Err(SynthError::BadSpec(format!(
                "department {d} has no sub-prefectures"
            )));
        }
    }

    // Same-department wander candidates per sub-prefecture.
    let mut nearby: BTreeMap<SubprefId, Vec<SubprefId>> = BTreeMap::new();
    for (&dept, list) in &subprefs_of {
        for &sp in list {
            let here = hierarchy.subpref_centroid(sp).unwrap();
            let candidates: Vec<SubprefId> = subprefs_of[&dept]
                .iter()
                .copied()
                .filter(|&other| {
                    other != sp
                        && hierarchy.subpref_centroid(other).unwrap().dist(here)
                            <= plan.mobility_radius_km
                })
                .collect();
            nearby.insert(sp, candidates);
        }
    }

    let stay = LogNormal::new(plan.stay_median_days.ln(), plan.stay_log_sigma)
        .map_err(|e| SynthError::BadPlan(format!("stay duration distribution: {e}")))?;
    let window_s = (window.end - window.start).num_seconds();
    let max_stay_days = (window_s as f64 / 86_400.0 * 0.3).min(30.0);

    let mut records = Vec::new();
    let mut trips_out = Vec::new();
    let mut uid = 0u64;
    for (di, &home) in depts.iter().enumerate() {
        let home_subprefs = &subprefs_of[&home];
        for k in 0..plan.users_per_department[di] {
            uid += 1;
            let user = UserId(uid);
            let home_sp = home_subprefs[k as usize % home_subprefs.len()];
            let mut rng = stream(seed, &[purpose::USER, uid]);

            // Draw candidate trips in a fixed destination order.
            let mut candidates: Vec<(i64, i64, DeptId, SubprefId)> = Vec::new();
            for (dj, &dest) in depts.iter().enumerate() {
                if dest == home {
                    continue;
                }
                let n = poisson_draw(&mut rng, plan.trip_rate[di][dj]);
                for _ in 0..n {
                    let days = stay
                        .sample(&mut rng)
                        .clamp(0.05, max_stay_days);
                    let dur_s = (days * 86_400.0).round() as i64;
                    let latest = window_s - dur_s - 2 * TRIP_GAP_S;
                    if latest <= 0 {
                        continue;
                    }
                    let start_s = TRIP_GAP_S + rng.gen_range(0..latest);
                    let dest_list = &subprefs_of[&dest];
                    let sp = dest_list[rng.gen_range(0..dest_list.len())];
                    candidates.push((start_s, start_s + dur_s, dest, sp));
                }
            }
            candidates.sort_by_key(|&(start, end, dest, sp)| (start, end, dest, sp));
            let mut kept: Vec<(i64, i64, DeptId, SubprefId)> = Vec::new();
            for c in candidates {
                if kept
                    .last()
                    .map_or(true, |&(_, prev_end, _, _)| c.0 >= prev_end + TRIP_GAP_S)
                {
                    kept.push(c);
                }
            }

            let locate = |t_s: i64| -> SubprefId {
                for &(start, end, _, sp) in &kept {
                    if t_s >= start && t_s < end {
                        return sp;
                    }
                }
                home_sp
            };

            let mut user_records: Vec<(i64, SubprefId)> = Vec::new();
            for &(start, end, dest, sp) in &kept {
                trips_out.push(PlannedTrip {
                    user,
                    home,
                    dest,
                    dest_subpref: sp,
                    start: window.start + Duration::seconds(start),
                    end: window.start + Duration::seconds(end),
                });
                if start - ANCHOR_S >= 0 {
                    user_records.push((start - ANCHOR_S, home_sp));
                }
                user_records.push((start + ANCHOR_S, sp));
                user_records.push((end - ANCHOR_S, sp));
                user_records.push((end + ANCHOR_S, home_sp));
            }

            for (hour_idx, hour_start) in window.hours().enumerate() {
                let rate = if is_night_hour(hour_start.hour()) {
                    plan.traj_night_rate[di]
                } else {
                    plan.traj_day_rate[di]
                };
                let n = poisson_draw(&mut rng, rate);
                if n == 0 {
                    continue;
                }
                let mut offsets: Vec<i64> =
                    (0..n).map(|_| rng.gen_range(0..3600i64)).collect();
                offsets.sort_unstable();
                for off in offsets {
                    let t_s = hour_idx as i64 * 3600 + off;
                    let sp = locate(t_s);
                    let sp = if sp == home_sp
                        && plan.wander_fraction > 0.0
                        && rng.gen::<f64>() < plan.wander_fraction
                    {
                        let options = &nearby[&home_sp];
                        if options.is_empty() {
                            home_sp
                        } else {
                            options[rng.gen_range(0..options.len())]
                        }
                    } else {
                        sp
                    };
                    user_records.push((t_s, sp));
                }
            }

            user_records.sort_by_key(|&(t, sp)| (t, sp));
            records.extend(user_records.into_iter().map(|(t, sp)| TrajectoryRecord {
                user,
                at: window.start + Duration::seconds(t),
                subpref: sp,
            }));
        }
    }
    Ok((records, trips_out))
}
