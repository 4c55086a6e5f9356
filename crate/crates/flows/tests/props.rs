//! Property tests: tie classification is scale-free and permutation
//! consistent, strength splits exactly at the mean, and time-filtered
//! aggregation conserves flow across partitions of the window.

use mobiprev_core::{parse_hour, AntennaId, AntennaRecord, DayType, DeptId, SubprefId, UserId};
use mobiprev_flows::{
    candidate_mean, comm_flow, detect_stays, infer_home, mobility_flow, pair_strength,
    strong_ties, tie_strengths, FlowKind, FlowMatrix, TimeFilter,
};
use mobiprev_synth::{generate_world, WorldSpec};
use proptest::prelude::*;

fn positive_flow() -> impl Strategy<Value = f64> {
    prop_oneof![
        1e-3..1e9f64,
        (1u64..1_000_000).prop_map(|v| v as f64),
    ]
}

proptest! {
    /// s(i) >= 1 exactly when the flow is at or above the candidate mean.
    #[test]
    fn strength_dichotomy(candidates in prop::collection::vec(positive_flow(), 1..32)) {
        let mean = candidate_mean(&candidates).unwrap();
        let strengths = tie_strengths(&candidates);
        for (&c, &s) in candidates.iter().zip(&strengths) {
            prop_assert_eq!(s >= 1.0, c >= mean, "flow {} strength {} mean {}", c, s, mean);
        }
    }

    /// Equal candidates sit exactly on the boundary: all strong, unit strength.
    #[test]
    fn equal_candidates_are_unit_strength(
        v in prop_oneof![1e-6..1e9f64, (1u64..1_000_000_000).prop_map(|v| v as f64)],
        n in 1usize..32,
    ) {
        let strengths = tie_strengths(&vec![v; n]);
        prop_assert!(strengths.iter().all(|&s| s == 1.0), "{:?}", strengths);
    }

    /// Scaling all of a department's candidates by a power of two (exact in
    /// floating point) leaves every strength bit-identical.
    #[test]
    fn classification_is_scale_free(
        candidates in prop::collection::vec((1u64..1_000_000).prop_map(|v| v as f64), 1..32),
        k in -20i32..=20,
    ) {
        let lambda = (2.0f64).powi(k);
        let scaled: Vec<f64> = candidates.iter().map(|&c| c * lambda).collect();
        let s0 = tie_strengths(&candidates);
        let s1 = tie_strengths(&scaled);
        prop_assert_eq!(s0, s1);
    }
}

/// Builds a symmetric integer-valued pair matrix over departments 1..=n from
/// upper-triangle entries.
fn symmetric_matrix(n: u32, upper: &[u32]) -> FlowMatrix {
    let depts: Vec<DeptId> = (1..=n).map(DeptId).collect();
    let mut entries = Vec::new();
    let mut it = upper.iter();
    for a in 1..=n {
        for b in (a + 1)..=n {
            let v = f64::from(*it.next().expect("enough entries"));
            entries.push((DeptId(a), DeptId(b), v));
            entries.push((DeptId(b), DeptId(a), v));
        }
    }
    FlowMatrix::from_entries(FlowKind::Communication, &depts, &entries).unwrap()
}

proptest! {
    /// Relabeling departments permutes tie sets consistently: same flows,
    /// same classification, strengths equal to within rounding.
    #[test]
    fn relabeling_permutes_ties(
        upper in prop::collection::vec(0u32..1000, 21),
        seed in 0u64..1000,
    ) {
        let n = 7u32;
        let m = symmetric_matrix(n, &upper);

        // A deterministic permutation of 1..=n driven by the seed.
        let mut perm: Vec<u32> = (1..=n).collect();
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let map = |d: DeptId| DeptId(perm[(d.0 - 1) as usize]);

        let depts: Vec<DeptId> = (1..=n).map(DeptId).collect();
        let mut entries = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                let v = m.get(DeptId(a), DeptId(b)).unwrap();
                if v > 0.0 {
                    entries.push((map(DeptId(a)), map(DeptId(b)), v));
                }
            }
        }
        let permuted = FlowMatrix::from_entries(FlowKind::Communication, &depts, &entries).unwrap();

        let base = strong_ties(&m).unwrap();
        let moved = strong_ties(&permuted).unwrap();
        prop_assert_eq!(base.max_strong_flow(), moved.max_strong_flow());
        for a in 1..=n {
            let mut expect: Vec<(DeptId, f64, bool)> = base
                .ties_of(DeptId(a))
                .iter()
                .map(|t| (map(t.peer), t.flow, t.strong))
                .collect();
            expect.sort_by_key(|&(peer, _, _)| peer);
            let got: Vec<(DeptId, f64, bool)> = moved
                .ties_of(map(DeptId(a)))
                .iter()
                .map(|t| (t.peer, t.flow, t.strong))
                .collect();
            prop_assert_eq!(&expect, &got);
            // Strengths agree to rounding; integer flows keep any true
            // boundary case exact, so classification already matched above.
            let mut es: Vec<(DeptId, f64)> = base
                .ties_of(DeptId(a))
                .iter()
                .map(|t| (map(t.peer), t.strength))
                .collect();
            es.sort_by_key(|&(peer, _)| peer);
            for ((_, s0), t1) in es.iter().zip(moved.ties_of(map(DeptId(a)))) {
                prop_assert!((s0 - t1.strength).abs() <= 1e-12 * s0.abs().max(1.0));
            }
        }
    }
}

fn world_8() -> mobiprev_core::SpatialHierarchy {
    let (hierarchy, _) = generate_world(&WorldSpec::small(11)).unwrap();
    hierarchy
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Disjoint hour windows that cover the day, and the two day types,
    /// partition total communication flow exactly.
    #[test]
    fn filters_partition_flow(
        raw in prop::collection::vec(
            (1u32..=28, 0u32..24, 1u32..=48, 1u32..=48, 1u64..100),
            1..120,
        ),
    ) {
        let hierarchy = world_8();
        let records: Vec<AntennaRecord> = raw
            .iter()
            .map(|&(day, hour, origin, dest, n_calls)| AntennaRecord {
                hour_start: parse_hour(&format!("2011-12-{day:02}T{hour:02}")).unwrap(),
                origin: AntennaId(origin),
                dest: AntennaId(dest),
                n_calls,
                total_duration_s: n_calls * 30,
            })
            .collect();

        let full = comm_flow(&records, &hierarchy, None).matrix;

        let windows = [(0u32, 8u32), (8, 16), (16, 0)];
        let mut parts = Vec::new();
        for (start, end) in windows {
            let f = TimeFilter { hours: Some((start, end)), day_type: None };
            parts.push(comm_flow(&records, &hierarchy, Some(f)).matrix);
        }
        for i in 0..full.n_departments() {
            for j in 0..full.n_departments() {
                let sum: f64 = parts.iter().map(|p| p.at(i, j)).sum();
                prop_assert_eq!(sum, full.at(i, j));
            }
        }

        let weekday = comm_flow(&records, &hierarchy, Some(TimeFilter::day_type(DayType::Weekday))).matrix;
        let weekend = comm_flow(&records, &hierarchy, Some(TimeFilter::day_type(DayType::Weekend))).matrix;
        for i in 0..full.n_departments() {
            for j in 0..full.n_departments() {
                prop_assert_eq!(weekday.at(i, j) + weekend.at(i, j), full.at(i, j));
            }
        }
    }

    /// Detected stays are never in the user's home department, are properly
    /// ordered, and tally one-for-one into the unthresholded mobility matrix.
    #[test]
    fn stays_are_consistent_with_mobility(
        raw in prop::collection::vec(
            (1u64..=6, 1u32..=28, 0u32..24, 1u32..=24),
            1..120,
        ),
    ) {
        let hierarchy = world_8();
        let records: Vec<mobiprev_core::TrajectoryRecord> = raw
            .iter()
            .map(|&(user, day, hour, subpref)| mobiprev_core::TrajectoryRecord {
                user: UserId(user),
                at: parse_hour(&format!("2011-12-{day:02}T{hour:02}")).unwrap(),
                subpref: SubprefId(subpref),
            })
            .collect();
        let homes = infer_home(&records, &hierarchy);
        let det = detect_stays(&records, &homes, &hierarchy);
        for s in &det.stays {
            prop_assert!(s.end >= s.start);
            prop_assert_ne!(Some(s.department), homes.home_of(s.user));
        }
        let built = mobility_flow(&records, &homes, &hierarchy, None);
        prop_assert_eq!(built.matrix.total(), det.stays.len() as f64);
        for (i, _) in hierarchy.dept_ids().iter().enumerate() {
            prop_assert_eq!(built.matrix.at(i, i), 0.0);
        }
    }

    /// Pair intensities are symmetric with a zero diagonal for any input.
    #[test]
    fn pair_strength_is_always_symmetric(
        upper in prop::collection::vec(0u32..1000, 36),
        lower in prop::collection::vec(0u32..1000, 36),
    ) {
        let depts: Vec<DeptId> = (1..=6).map(DeptId).collect();
        let mut entries = Vec::new();
        let mut iu = upper.iter();
        let mut il = lower.iter();
        for a in 1..=6u32 {
            for b in 1..=6u32 {
                if a == b { continue; }
                let v = if a < b { *iu.next().unwrap() } else { *il.next().unwrap() };
                entries.push((DeptId(a), DeptId(b), f64::from(v)));
            }
        }
        let m = FlowMatrix::from_entries(FlowKind::Communication, &depts, &entries).unwrap();
        let s = pair_strength(&m);
        prop_assert_eq!(s.asymmetry(), 0.0);
        for i in 0..6 {
            prop_assert_eq!(s.at(i, i), 0.0);
        }
    }
}
