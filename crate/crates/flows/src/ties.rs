//! Per-department tie strength: each nonzero link is scored against the
//! arithmetic mean of that department's nonzero links. Links at or above the
//! mean are strong, the rest weak. Exported edge weights are relative to the
//! single largest strong flow in the whole tie set.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use mobiprev_core::DeptId;
use serde::{Deserialize, Serialize};

use crate::error::FlowsError;
use crate::matrix::FlowMatrix;

/// One scored link from a department's point of view.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tie {
    pub peer: DeptId,
    /// Symmetric pair intensity c(i).
    pub flow: f64,
    /// c(i) divided by the mean over this department's nonzero links.
    pub strength: f64,
    /// strength >= 1, equivalently flow >= mean.
    pub strong: bool,
}

/// An undirected strong link, classified strong from at least one endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrongEdge {
    pub a: DeptId,
    pub b: DeptId,
    pub flow: f64,
    /// flow divided by the largest strong flow anywhere in the tie set.
    pub relative: f64,
}

/// Every department's scored links.
#[derive(Clone, Debug, Default)]
pub struct TieSet {
    ties: BTreeMap<DeptId, Vec<Tie>>,
    max_strong_flow: Option<f64>,
}

/// Sum with Neumaier compensation; keeps the mean faithful for long rows.
fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        comp += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
    }
    sum + comp
}

/// Arithmetic mean of a candidate-flow list; `None` when empty.
///
/// Two-pass: the first estimate is refined by the compensated mean of the
/// residuals. Equal candidates then yield their exact common value, so the
/// boundary case "every link equals the mean" classifies strong at exactly
/// unit strength instead of drifting by an ulp.
pub fn candidate_mean(candidates: &[f64]) -> Option<f64> {
    if candidates.is_empty() {
        return None;
    }
    let n = candidates.len() as f64;
    let first = compensated_sum(candidates.iter().copied()) / n;
    let residual = compensated_sum(candidates.iter().map(|&c| c - first)) / n;
    Some(first + residual)
}

/// Strength score for each candidate flow: the flow divided by the mean of
/// all candidates. A score of at least 1 marks a strong tie.
pub fn tie_strengths(candidates: &[f64]) -> Vec<f64> {
    match candidate_mean(candidates) {
        Some(mean) => candidates.iter().map(|&c| c / mean).collect(),
        None => Vec::new(),
    }
}

impl TieSet {
    pub fn departments(&self) -> impl Iterator<Item = DeptId> + '_ {
        self.ties.keys().copied()
    }

    pub fn n_departments(&self) -> usize {
        self.ties.len()
    }

    /// Scored links of one department, ascending by peer id. Empty for a
    /// department with no nonzero links (or an unknown id).
    pub fn ties_of(&self, dept: DeptId) -> &[Tie] {
        self.ties.get(&dept).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Largest flow among strong ties; `None` when nothing is strong.
    pub fn max_strong_flow(&self) -> Option<f64> {
        self.max_strong_flow
    }

    /// A flow expressed relative to the largest strong flow.
    pub fn relative_strength(&self, flow: f64) -> Option<f64> {
        self.max_strong_flow.map(|m| flow / m)
    }

    /// Undirected strong edges, deduplicated (a < b), ascending.
    pub fn strong_edges(&self) -> Vec<StrongEdge> {
        let mut edges: BTreeMap<(DeptId, DeptId), f64> = BTreeMap::new();
        for (&dept, ties) in &self.ties {
            for tie in ties {
                if tie.strong {
                    let key = if dept < tie.peer {
                        (dept, tie.peer)
                    } else {
                        (tie.peer, dept)
                    };
                    edges.insert(key, tie.flow);
                }
            }
        }
        edges
            .into_iter()
            .map(|((a, b), flow)| StrongEdge {
                a,
                b,
                flow,
                relative: self
                    .relative_strength(flow)
                    .expect("strong edge implies a strong maximum"),
            })
            .collect()
    }

    /// Pretty JSON, keyed by department id.
    pub fn to_writer<W: Write>(&self, writer: W) -> Result<(), FlowsError> {
        let file = TieSetFile {
            ties: self
                .ties
                .iter()
                .map(|(&d, ties)| {
                    (
                        d.0,
                        ties.iter()
                            .map(|t| TieEntry {
                                peer: t.peer.0,
                                flow: t.flow,
                                strength: t.strength,
                                strong: t.strong,
                            })
                            .collect(),
                    )
                })
                .collect(),
        };
        serde_json::to_writer_pretty(writer, &file)?;
        Ok(())
    }

    /// Parses the output of [`to_writer`](Self::to_writer); the strong
    /// maximum is recomputed.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self, FlowsError> {
        let file: TieSetFile = serde_json::from_reader(reader)?;
        let mut ties: BTreeMap<DeptId, Vec<Tie>> = BTreeMap::new();
        let mut max_strong_flow: Option<f64> = None;
        for (d, entries) in file.ties {
            let list: Vec<Tie> = entries
                .into_iter()
                .map(|e| Tie {
                    peer: DeptId(e.peer),
                    flow: e.flow,
                    strength: e.strength,
                    strong: e.strong,
                })
                .collect();
            for t in &list {
                if !t.flow.is_finite() || t.flow < 0.0 || !t.strength.is_finite() {
                    return Err(FlowsError::Matrix(format!(
                        "tie set entry for department {d} has invalid numbers"
                    )));
                }
                if t.strong {
                    max_strong_flow = Some(max_strong_flow.map_or(t.flow, |m| m.max(t.flow)));
                }
            }
            ties.insert(DeptId(d), list);
        }
        Ok(TieSet {
            ties,
            max_strong_flow,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TieEntry {
    peer: u32,
    flow: f64,
    strength: f64,
    strong: bool,
}

#[derive(Serialize, Deserialize)]
struct TieSetFile {
    ties: BTreeMap<u32, Vec<TieEntry>>,
}

/// Scores every department's nonzero off-diagonal links in a symmetric pair
/// intensity matrix. Strong means at or above that department's mean link.
pub fn strong_ties(m: &FlowMatrix) -> Result<TieSet, FlowsError> {
    let n = m.n_departments();
    let depts = m.departments();
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let v = m.at(i, j);
            if !v.is_finite() || v < 0.0 {
                return Err(FlowsError::Matrix(format!(
                    "entry ({}, {}) = {v} is not a finite non-negative flow",
                    depts[i], depts[j]
                )));
            }
            scale = scale.max(v.abs());
        }
    }
    if m.asymmetry() > 1e-9 * scale.max(1.0) {
        return Err(FlowsError::Matrix(
            "pair intensity matrix is not symmetric".into(),
        ));
    }
    let mut out = TieSet::default();
    for (i, &dept) in depts.iter().enumerate() {
        let candidates: Vec<(DeptId, f64)> = (0..n)
            .filter(|&j| j != i && m.at(i, j) > 0.0)
            .map(|j| (depts[j], m.at(i, j)))
            .collect();
        let values: Vec<f64> = candidates.iter().map(|&(_, c)| c).collect();
        let strengths = tie_strengths(&values);
        let list: Vec<Tie> = candidates
            .iter()
            .zip(&strengths)
            .map(|(&(peer, flow), &strength)| {
                let strong = strength >= 1.0;
                if strong {
                    out.max_strong_flow =
                        Some(out.max_strong_flow.map_or(flow, |m| m.max(flow)));
                }
                Tie {
                    peer,
                    flow,
                    strength,
                    strong,
                }
            })
            .collect();
        out.ties.insert(dept, list);
    }
    Ok(out)
}
