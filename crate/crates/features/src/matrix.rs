//! Department × feature matrix with per-column metadata.

use std::collections::BTreeSet;
use std::io::{BufRead, Read, Write};

use mobiprev_core::DeptId;
use ndarray::{Array2, Axis};
use serde::{Deserialize, Serialize};

use crate::error::FeaturesError;

/// Feature family a column belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Connectivity,
    Spatial,
    Migration,
    Activity,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Connectivity => "connectivity",
            Family::Spatial => "spatial",
            Family::Migration => "migration",
            Family::Activity => "activity",
        }
    }

    pub const ALL: [Family; 4] = [
        Family::Connectivity,
        Family::Spatial,
        Family::Migration,
        Family::Activity,
    ];
}

/// Everything recorded about one column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnMeta {
    pub name: String,
    pub family: Family,
    /// Time-slot or subset descriptor (e.g. `weekday 09-10h`, `night`);
    /// `None` for whole-window columns.
    pub slot: Option<String>,
    /// How the raw per-department value was produced.
    pub normalization: String,
    /// True when the column's composition is a reconstruction of a stated
    /// family total rather than an individually documented quantity.
    pub reconstructed: bool,
    /// Column mean divided out by [`normalize_by_mean`]; `None` until then.
    pub mean: Option<f64>,
    /// True when mean scaling was skipped because the column mean was zero.
    pub zero_mean: bool,
}

impl ColumnMeta {
    pub fn new(
        name: impl Into<String>,
        family: Family,
        slot: Option<String>,
        normalization: impl Into<String>,
        reconstructed: bool,
    ) -> Self {
        ColumnMeta {
            name: name.into(),
            family,
            slot,
            normalization: normalization.into(),
            reconstructed,
            mean: None,
            zero_mean: false,
        }
    }
}

/// Rows are departments in ascending id order; columns are named features.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    depts: Vec<DeptId>,
    meta: Vec<ColumnMeta>,
    data: Array2<f64>,
}

impl FeatureMatrix {
    pub fn new(
        depts: Vec<DeptId>,
        meta: Vec<ColumnMeta>,
        data: Array2<f64>,
    ) -> Result<Self, FeaturesError> {
        if depts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FeaturesError::Matrix(
                "departments must be ascending and unique".into(),
            ));
        }
        if data.nrows() != depts.len() || data.ncols() != meta.len() {
            return Err(FeaturesError::Matrix(format!(
                "data is {}x{} but {} departments and {} columns were declared",
                data.nrows(),
                data.ncols(),
                depts.len(),
                meta.len()
            )));
        }
        let mut names = BTreeSet::new();
        for m in &meta {
            if !names.insert(m.name.as_str()) {
                return Err(FeaturesError::Matrix(format!(
                    "duplicate column name {:?}",
                    m.name
                )));
            }
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(FeaturesError::Matrix(format!("non-finite value {bad}")));
        }
        Ok(FeatureMatrix { depts, meta, data })
    }

    pub fn departments(&self) -> &[DeptId] {
        &self.depts
    }

    pub fn meta(&self) -> &[ColumnMeta] {
        &self.meta
    }

    pub fn data(&self) -> &Array2<f64> {
        &self.data
    }

    pub fn n_rows(&self) -> usize {
        self.depts.len()
    }

    pub fn n_cols(&self) -> usize {
        self.meta.len()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.meta.iter().position(|m| m.name == name)
    }

    pub fn row_index(&self, dept: DeptId) -> Option<usize> {
        self.depts.binary_search(&dept).ok()
    }

    pub fn value(&self, dept: DeptId, column: &str) -> Option<f64> {
        let r = self.row_index(dept)?;
        let c = self.column_index(column)?;
        Some(self.data[[r, c]])
    }

    pub fn family_count(&self, family: Family) -> usize {
        self.meta.iter().filter(|m| m.family == family).count()
    }

    /// Concatenates column blocks over an identical department list.
    pub fn hstack(parts: Vec<FeatureMatrix>) -> Result<FeatureMatrix, FeaturesError> {
        let mut it = parts.into_iter();
        let first = it
            .next()
            .ok_or_else(|| FeaturesError::Matrix("nothing to stack".into()))?;
        let mut depts = first.depts;
        let mut meta = first.meta;
        let mut blocks = vec![first.data];
        for part in it {
            if part.depts != depts {
                return Err(FeaturesError::Matrix(
                    "column blocks disagree on departments".into(),
                ));
            }
            meta.extend(part.meta);
            blocks.push(part.data);
        }
        let views: Vec<_> = blocks.iter().map(Array2::view).collect();
        let data = ndarray::concatenate(Axis(1), &views)
            .map_err(|e| FeaturesError::Matrix(format!("stack failed: {e}")))?;
        depts.shrink_to_fit();
        FeatureMatrix::new(depts, meta, data)
    }

    /// TSV: header `department` + column names; one row per department.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<(), FeaturesError> {
        write!(w, "department")?;
        for m in &self.meta {
            write!(w, "\t{}", m.name)?;
        }
        writeln!(w)?;
        for (r, &dept) in self.depts.iter().enumerate() {
            write!(w, "{}", dept.0)?;
            for c in 0..self.meta.len() {
                write!(w, "\t{}", self.data[[r, c]])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Reads a TSV written by [`write_tsv`], pairing it with the column
    /// metadata from the JSON sidecar. Header names must match the
    /// metadata exactly, in order.
    pub fn read_tsv<R: BufRead>(r: R, meta: Vec<ColumnMeta>) -> Result<Self, FeaturesError> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| FeaturesError::Parse {
                line: 1,
                message: "empty file".into(),
            })
            .and_then(|(i, l)| l.map(|l| (i, l)).map_err(FeaturesError::Io))?;
        let mut fields = header.split('\t');
        if fields.next() != Some("department") {
            return Err(FeaturesError::Parse {
                line: 1,
                message: "header must start with 'department'".into(),
            });
        }
        let names: Vec<&str> = fields.collect();
        if names.len() != meta.len() || names.iter().zip(&meta).any(|(n, m)| *n != m.name) {
            return Err(FeaturesError::Parse {
                line: 1,
                message: "header does not match column metadata".into(),
            });
        }

        let mut depts = Vec::new();
        let mut values = Vec::new();
        for (idx, line) in lines {
            let line = line?;
            let lineno = idx + 1;
            let mut fields = line.split('\t');
            let dept: u32 = fields
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| FeaturesError::Parse {
                    line: lineno,
                    message: "bad department id".into(),
                })?;
            depts.push(DeptId(dept));
            let mut n = 0;
            for field in fields {
                let v: f64 = field.parse().map_err(|_| FeaturesError::Parse {
                    line: lineno,
                    message: format!("bad value {field:?}"),
                })?;
                values.push(v);
                n += 1;
            }
            if n != meta.len() {
                return Err(FeaturesError::Parse {
                    line: lineno,
                    message: format!("{} values for {} columns", n, meta.len()),
                });
            }
        }
        let data = Array2::from_shape_vec((depts.len(), meta.len()), values)
            .map_err(|e| FeaturesError::Matrix(e.to_string()))?;
        FeatureMatrix::new(depts, meta, data)
    }

    /// JSON sidecar with one entry per column.
    pub fn write_meta<W: Write>(&self, w: W) -> Result<(), FeaturesError> {
        serde_json::to_writer_pretty(w, &self.meta)?;
        Ok(())
    }
}

pub fn read_meta<R: Read>(r: R) -> Result<Vec<ColumnMeta>, FeaturesError> {
    Ok(serde_json::from_reader(r)?)
}

/// Divides every column by its mean across departments and records the
/// mean in the column metadata. Zero-mean columns (all-zero, since raw
/// features are non-negative) are left unscaled and flagged.
pub fn normalize_by_mean(m: &FeatureMatrix) -> Result<FeatureMatrix, FeaturesError> {
    if m.meta.iter().any(|c| c.mean.is_some()) {
        return Err(FeaturesError::Matrix(
            "matrix is already mean-normalized".into(),
        ));
    }
    let mut data = m.data.clone();
    let mut meta = m.meta.clone();
    for (c, col_meta) in meta.iter_mut().enumerate() {
        let mut column = data.column_mut(c);
        let mean = column.iter().sum::<f64>() / column.len() as f64;
        if mean == 0.0 {
            col_meta.zero_mean = true;
            col_meta.mean = Some(0.0);
        } else {
            column.mapv_inplace(|v| v / mean);
            col_meta.mean = Some(mean);
        }
    }
    FeatureMatrix::new(m.depts.clone(), meta, data)
}

/// Family cardinalities of the fully assembled matrix.
pub const FAMILY_CARDINALITIES: [(Family, usize); 4] = [
    (Family::Connectivity, 120),
    (Family::Spatial, 25),
    (Family::Migration, 22),
    (Family::Activity, 57),
];

/// Total columns in the assembled matrix.
pub const TOTAL_FEATURES: usize = 224;

/// Checks the assembled matrix has exactly the expected per-family column
/// counts (120 + 25 + 22 + 57 = 224).
pub fn validate_cardinality(m: &FeatureMatrix) -> Result<(), FeaturesError> {
    for (family, expected) in FAMILY_CARDINALITIES {
        let got = m.family_count(family);
        if got != expected {
            return Err(FeaturesError::Matrix(format!(
                "{} columns in family {}, expected {}",
                got,
                family.label(),
                expected
            )));
        }
    }
    if m.n_cols() != TOTAL_FEATURES {
        return Err(FeaturesError::Matrix(format!(
            "{} columns total, expected {}",
            m.n_cols(),
            TOTAL_FEATURES
        )));
    }
    Ok(())
}
