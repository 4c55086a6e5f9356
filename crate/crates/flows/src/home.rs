//! Home-department inference: each user is assigned the department whose
//! sub-prefectures account for the most of their trajectory records.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use mobiprev_core::{DeptId, SpatialHierarchy, TrajectoryRecord, UserId};

use crate::error::FlowsError;

/// Inferred home department per user, with tie-breaks recorded.
#[derive(Clone, Debug, Default)]
pub struct HomeAssignment {
    homes: BTreeMap<UserId, DeptId>,
    /// Users whose top record count was shared; holds the full tied set
    /// (ascending). The assigned home is the smallest of these.
    ties: BTreeMap<UserId, Vec<DeptId>>,
    skipped_records: u64,
}

impl HomeAssignment {
    /// Wraps an already-known user → home map, with no ties and nothing
    /// skipped. Inference from records goes through [`infer_home`].
    pub fn from_homes(homes: BTreeMap<UserId, DeptId>) -> Self {
        HomeAssignment {
            homes,
            ties: BTreeMap::new(),
            skipped_records: 0,
        }
    }

    pub fn home_of(&self, user: UserId) -> Option<DeptId> {
        self.homes.get(&user).copied()
    }

    pub fn homes(&self) -> &BTreeMap<UserId, DeptId> {
        &self.homes
    }

    pub fn len(&self) -> usize {
        self.homes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homes.is_empty()
    }

    /// The tied departments recorded for a user, if inference was ambiguous.
    pub fn tie_break_of(&self, user: UserId) -> Option<&[DeptId]> {
        self.ties.get(&user).map(Vec::as_slice)
    }

    pub fn tie_breaks(&self) -> &BTreeMap<UserId, Vec<DeptId>> {
        &self.ties
    }

    /// Records that referenced an unknown sub-prefecture and were excluded.
    pub fn skipped_records(&self) -> u64 {
        self.skipped_records
    }

    /// Number of users homed in each department.
    pub fn counts_by_department(&self) -> BTreeMap<DeptId, u64> {
        let mut counts = BTreeMap::new();
        for &d in self.homes.values() {
            *counts.entry(d).or_insert(0u64) += 1;
        }
        counts
    }

    /// TSV with header `user	home	tied_with`; the third column holds the
    /// comma-joined tied set for ambiguous users, empty otherwise.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<(), FlowsError> {
        writeln!(w, "user\thome\ttied_with")?;
        for (&user, &home) in &self.homes {
            let tied = match self.ties.get(&user) {
                Some(list) => list
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                None => String::new(),
            };
            writeln!(w, "{user}\t{home}\t{tied}")?;
        }
        Ok(())
    }

    /// Parses the output of [`write_tsv`](Self::write_tsv). The skipped
    /// counter is not persisted and reads back as zero.
    pub fn read_tsv<R: BufRead>(r: R) -> Result<Self, FlowsError> {
        let mut out = HomeAssignment::default();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            if idx == 0 {
                if line != "user\thome\ttied_with" {
                    return Err(FlowsError::Parse {
                        line: 1,
                        message: "expected header 'user\\thome\\ttied_with'".into(),
                    });
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(FlowsError::Parse {
                    line: lineno,
                    message: format!("expected 3 fields, found {}", fields.len()),
                });
            }
            let user: UserId = fields[0].parse().map_err(|e| FlowsError::Parse {
                line: lineno,
                message: format!("bad user id: {e}"),
            })?;
            let home: DeptId = fields[1].parse().map_err(|e| FlowsError::Parse {
                line: lineno,
                message: format!("bad department id: {e}"),
            })?;
            out.homes.insert(user, home);
            if !fields[2].is_empty() {
                let tied: Vec<DeptId> = fields[2]
                    .split(',')
                    .map(|f| {
                        f.parse::<DeptId>().map_err(|e| FlowsError::Parse {
                            line: lineno,
                            message: format!("bad tied department id: {e}"),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                out.ties.insert(user, tied);
            }
        }
        Ok(out)
    }
}

/// Assigns every user with at least one resolvable record a home department:
/// the one with the largest record count, ties broken by smallest id and
/// recorded. Records whose sub-prefecture is unknown are excluded and counted.
pub fn infer_home(records: &[TrajectoryRecord], hierarchy: &SpatialHierarchy) -> HomeAssignment {
    let mut counts: BTreeMap<UserId, BTreeMap<DeptId, u64>> = BTreeMap::new();
    let mut skipped = 0u64;
    for r in records {
        match hierarchy.dept_of_subpref(r.subpref) {
            Some(d) => *counts.entry(r.user).or_default().entry(d).or_insert(0) += 1,
            None => skipped += 1,
        }
    }
    let mut out = HomeAssignment {
        skipped_records: skipped,
        ..HomeAssignment::default()
    };
    for (user, by_dept) in counts {
        let best = by_dept.values().copied().max().expect("non-empty");
        // Ascending key order makes the first maximum the smallest id.
        let tied: Vec<DeptId> = by_dept
            .iter()
            .filter(|&(_, &c)| c == best)
            .map(|(&d, _)| d)
            .collect();
        out.homes.insert(user, tied[0]);
        if tied.len() > 1 {
            out.ties.insert(user, tied);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::line_world;
    use chrono::NaiveDate;
    use mobiprev_core::SubprefId;

    fn rec(user: u64, day: u32, h: u32, subpref: u32) -> TrajectoryRecord {
        TrajectoryRecord {
            user: UserId(user),
            at: NaiveDate::from_ymd_opt(2011, 12, day)
                .unwrap()
                .and_hms_opt(h, 0, 0)
                .unwrap(),
            subpref: SubprefId(subpref),
        }
    }

    #[test]
    fn majority_wins() {
        let h = line_world(2);
        let homes = infer_home(&[rec(1, 1, 8, 1), rec(1, 1, 9, 1), rec(1, 1, 10, 2)], &h);
        assert_eq!(homes.home_of(UserId(1)), Some(DeptId(1)));
        assert!(homes.tie_break_of(UserId(1)).is_none());
    }

    #[test]
    fn tie_goes_to_smallest_id_and_is_recorded() {
        let h = line_world(3);
        let homes = infer_home(&[rec(1, 1, 8, 3), rec(1, 1, 9, 2)], &h);
        assert_eq!(homes.home_of(UserId(1)), Some(DeptId(2)));
        assert_eq!(
            homes.tie_break_of(UserId(1)),
            Some(&[DeptId(2), DeptId(3)][..])
        );
    }

    #[test]
    fn userless_records_and_recordless_users() {
        let h = line_world(2);
        let homes = infer_home(&[rec(7, 1, 8, 1)], &h);
        assert_eq!(homes.home_of(UserId(8)), None);
        assert_eq!(homes.len(), 1);
    }

    #[test]
    fn unknown_subpref_is_skipped_and_counted() {
        let h = line_world(2);
        let homes = infer_home(&[rec(1, 1, 8, 99), rec(1, 1, 9, 2)], &h);
        assert_eq!(homes.skipped_records(), 1);
        assert_eq!(homes.home_of(UserId(1)), Some(DeptId(2)));
    }

    #[test]
    fn counts_by_department_totals_users() {
        let h = line_world(2);
        let homes = infer_home(
            &[rec(1, 1, 8, 1), rec(2, 1, 8, 1), rec(3, 1, 8, 2)],
            &h,
        );
        let counts = homes.counts_by_department();
        assert_eq!(counts[&DeptId(1)], 2);
        assert_eq!(counts[&DeptId(2)], 1);
    }

    #[test]
    fn tsv_round_trip() {
        let h = line_world(3);
        let homes = infer_home(
            &[rec(1, 1, 8, 3), rec(1, 1, 9, 2), rec(2, 1, 8, 1)],
            &h,
        );
        let mut buf = Vec::new();
        homes.write_tsv(&mut buf).unwrap();
        let back = HomeAssignment::read_tsv(buf.as_slice()).unwrap();
        assert_eq!(back.homes(), homes.homes());
        assert_eq!(back.tie_breaks(), homes.tie_breaks());
        let mut buf2 = Vec::new();
        back.write_tsv(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }
}
