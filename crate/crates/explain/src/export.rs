use std::io::Write;

use serde::Serialize;

use crate::curve::{classify_ranges, ContributionCurve, SignRange};
use crate::error::ExplainError;

/// One row per (curve, probe): feature name, probe value, Monte-Carlo mean
/// and standard deviation, and the sign class.  Floats use Rust's shortest
/// round-trip formatting, so re-parsing reproduces them bit for bit.
pub fn write_curves_tsv<W: Write>(
    curves: &[ContributionCurve],
    mut w: W,
) -> Result<(), ExplainError> {
    writeln!(w, "feature\tprobe\tmean\tstd\tsign")?;
    for curve in curves {
        for i in 0..curve.probes.len() {
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}",
                curve.feature,
                curve.probes[i],
                curve.means[i],
                curve.stds[i],
                curve.signs[i].label()
            )?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub feature: String,
    pub column: usize,
    pub constant_feature: bool,
    pub ranges: Vec<SignRange>,
}

/// JSON digest of each curve: its sign structure as contiguous probe
/// ranges, plus the degenerate-range flag.
pub fn write_summary_json<W: Write>(
    curves: &[ContributionCurve],
    mut w: W,
) -> Result<(), ExplainError> {
    let summaries: Vec<CurveSummary> = curves
        .iter()
        .map(|c| CurveSummary {
            feature: c.feature.clone(),
            column: c.column,
            constant_feature: c.constant_feature,
            ranges: classify_ranges(c),
        })
        .collect();
    serde_json::to_writer_pretty(&mut w, &summaries)?;
    w.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::SignClass;

    fn sample_curve() -> ContributionCurve {
        ContributionCurve {
            feature: "activity overall".into(),
            column: 4,
            probes: vec![0.25, 0.5, 0.75],
            means: vec![-0.125, 0.0078125, 124.42512500000001],
            stds: vec![0.0625, 0.5, 3.0],
            signs: vec![SignClass::Negative, SignClass::Indeterminate, SignClass::Positive],
            constant_feature: false,
        }
    }

    #[test]
    fn tsv_rows_parse_back_to_identical_floats() {
        let curve = sample_curve();
        let mut buf = Vec::new();
        write_curves_tsv(std::slice::from_ref(&curve), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + curve.probes.len());
        assert_eq!(lines[0], "feature\tprobe\tmean\tstd\tsign");
        for (i, line) in lines[1..].iter().enumerate() {
            let fields: Vec<&str> = line.split('\t').collect();
            assert_eq!(fields.len(), 5);
            assert_eq!(fields[0], "activity overall");
            assert_eq!(fields[1].parse::<f64>().unwrap().to_bits(), curve.probes[i].to_bits());
            assert_eq!(fields[2].parse::<f64>().unwrap().to_bits(), curve.means[i].to_bits());
            assert_eq!(fields[3].parse::<f64>().unwrap().to_bits(), curve.stds[i].to_bits());
            assert_eq!(fields[4], curve.signs[i].label());
        }
    }

    #[test]
    fn summary_json_carries_ranges_and_flags() {
        let curve = sample_curve();
        let mut buf = Vec::new();
        write_summary_json(std::slice::from_ref(&curve), &mut buf).unwrap();
        let parsed: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let entry = &parsed[0];
        assert_eq!(entry["feature"], "activity overall");
        assert_eq!(entry["column"], 4);
        assert_eq!(entry["constant_feature"], false);
        assert_eq!(entry["ranges"].as_array().unwrap().len(), 3);
        assert_eq!(entry["ranges"][0]["class"], "negative");
    }
}
