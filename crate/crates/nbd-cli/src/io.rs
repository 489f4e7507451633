//! Design-file and CSV plumbing: parsing with row/column diagnostics,
//! deterministic emission, and atomic file writes.
//!
//! All numbers are formatted with Rust's shortest round-trip `Display`, so
//! identical inputs always yield byte-identical files and design CSVs
//! survive a write/read round trip exactly.

use std::fs;
use std::io::Read as _;
use std::path::Path;

use nbd::benchmark::{BenchmarkRecord, DigitErrorRow, SummaryRow};
use nbd::samplers::SamplerKind;
use nbd::Design;

use crate::CliError;

/// Reads a design from `path`, or standard input when `path` is `None` or
/// `-`.
pub fn read_design(path: Option<&Path>) -> Result<Design, CliError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| CliError::Data(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Data(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    parse_design(&text)
}

/// Parses headerless CSV into a design. Diagnostics use 1-based row and
/// column numbers; blank lines are skipped.
pub fn parse_design(text: &str) -> Result<Design, CliError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (j, token) in line.split(',').enumerate() {
            let token = token.trim();
            let value: f64 = token.parse().map_err(|_| {
                CliError::Data(format!(
                    "row {}, column {}: invalid number '{token}'",
                    i + 1,
                    j + 1
                ))
            })?;
            if !(0.0..1.0).contains(&value) {
                return Err(CliError::Data(format!(
                    "row {}, column {}: value {value} is outside [0, 1)",
                    i + 1,
                    j + 1
                )));
            }
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::Data(format!(
                    "row {} has {} values, expected {}",
                    i + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Data("empty design".into()));
    }
    Design::from_rows(&rows).map_err(|e| CliError::Data(e.to_string()))
}

pub fn design_csv(design: &Design) -> String {
    let mut out = String::new();
    for row in design.rows() {
        let line: Vec<String> = row.iter().map(f64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn records_csv(records: &[BenchmarkRecord]) -> String {
    let mut out = String::from("sampler,n_points,n_dims,replicate,metric,value\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.sampler, r.n_points, r.n_dims, r.replicate, r.metric, r.value
        ));
    }
    out
}

pub fn summaries_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("metric,sampler,n_points,mean,median,q25,q75,min,max\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.metric, r.sampler, r.n_points, r.mean, r.median, r.q25, r.q75, r.min, r.max
        ));
    }
    out
}

pub fn digit_errors_csv(rows: &[(SamplerKind, usize, DigitErrorRow)]) -> String {
    let mut out = String::from("sampler,replicate,dimension,digit,deviation\n");
    for (sampler, replicate, row) in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sampler, replicate, row.dimension, row.digit, row.deviation
        ));
    }
    out
}

/// Writes via a sibling temp file and rename, so a failed run never leaves
/// a partial file at `path`. Creates missing parent directories.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| {
                CliError::Data(format!("cannot create {}: {e}", parent.display()))
            })?;
        }
    }
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!("{name}.tmp"));
    fs::write(&tmp, contents)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::Data(format!("cannot rename {}: {e}", tmp.display()))
    })
}

/// Formats with `digits` significant digits, trailing zeros stripped,
/// plain decimal notation.
pub fn format_sig(value: f64, digits: u32) -> String {
    if value == 0.0 || !value.is_finite() {
        return value.to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let mut s = format!("{value:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips_design_csv() {
        let design = Design::from_rows(&[vec![0.25, 0.75], vec![0.5, 0.125]]).unwrap();
        let parsed = parse_design(&design_csv(&design)).unwrap();
        assert_eq!(parsed.values(), design.values());
    }

    #[test]
    fn parse_names_bad_cell() {
        let err = parse_design("0.1,0.2\n0.3,oops\n").unwrap_err();
        assert!(err.to_string().contains("row 2, column 2"), "{err}");
    }

    #[test]
    fn parse_rejects_out_of_range_and_ragged() {
        let err = parse_design("0.1,1.5\n").unwrap_err();
        assert!(err.to_string().contains("outside [0, 1)"), "{err}");
        let err = parse_design("0.1,0.2\n0.3\n").unwrap_err();
        assert!(err.to_string().contains("row 2 has 1 values"), "{err}");
    }

    #[test]
    fn parse_rejects_empty_input() {
        let err = parse_design("\n\n").unwrap_err();
        assert_eq!(err.to_string(), "empty design");
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.069282835912, 6), "0.0692828");
        assert_eq!(format_sig(0.008142039609, 6), "0.00814204");
        assert_eq!(format_sig(0.25, 6), "0.25");
        assert_eq!(format_sig(2.5, 6), "2.5");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(1.0 / 12.0, 6), "0.0833333");
    }
}
