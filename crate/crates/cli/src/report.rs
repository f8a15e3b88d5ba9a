//! Theoretical-vs-measured rotation error report.

use thiserror::Error;

/// Quoted hands-on accuracy band for the stock arm, percent.
pub const QUOTED_HANDS_ON_ERROR_PCT: (f64, f64) = (5.0, 7.0);

/// Quoted final error rate for the stock arm, percent.
pub const QUOTED_FINAL_ERROR_PCT: f64 = 3.0;

/// One comparison row; `rel_error_pct = 100·|measured − theoretical|/theoretical`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub name: String,
    pub theoretical_deg: f64,
    pub measured_deg: f64,
    pub rel_error_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
    pub mean_error_pct: f64,
    pub max_error_pct: f64,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("row {row} ({name}): theoretical angle must be positive (got {value})")]
    NonPositiveTheoretical {
        row: usize,
        name: String,
        value: f64,
    },
    #[error("no comparison rows given")]
    Empty,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Relative rotation errors with their mean and maximum.
pub fn error_report(pairs: &[(String, f64, f64)]) -> Result<ErrorReport, ReportError> {
    if pairs.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut rows = Vec::with_capacity(pairs.len());
    for (i, (name, theoretical, measured)) in pairs.iter().enumerate() {
        if !(theoretical.is_finite() && *theoretical > 0.0) {
            return Err(ReportError::NonPositiveTheoretical {
                row: i,
                name: name.clone(),
                value: *theoretical,
            });
        }
        rows.push(ErrorRow {
            name: name.clone(),
            theoretical_deg: *theoretical,
            measured_deg: *measured,
            rel_error_pct: 100.0 * (measured - theoretical).abs() / theoretical,
        });
    }
    let mean_error_pct = rows.iter().map(|r| r.rel_error_pct).sum::<f64>() / rows.len() as f64;
    let max_error_pct = rows
        .iter()
        .map(|r| r.rel_error_pct)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ErrorReport {
        rows,
        mean_error_pct,
        max_error_pct,
    })
}

/// Parse a `name,theoretical_deg,measured_deg` CSV; a non-numeric first line
/// is treated as a header, `#` lines and blank lines are skipped.
pub fn parse_pairs_csv(text: &str) -> Result<Vec<(String, f64, f64)>, ReportError> {
    let mut pairs = Vec::new();
    let mut saw_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(ReportError::Parse {
                line: idx + 1,
                message: format!("expected 3 comma-separated fields, found {}", fields.len()),
            });
        }
        let numbers: Result<Vec<f64>, _> = fields[1..].iter().map(|f| f.parse::<f64>()).collect();
        match numbers {
            Ok(values) => {
                pairs.push((fields[0].to_string(), values[0], values[1]));
                saw_data = true;
            }
            Err(e) => {
                if !saw_data && pairs.is_empty() && idx == 0 {
                    continue; // header row
                }
                return Err(ReportError::Parse {
                    line: idx + 1,
                    message: format!("bad number: {e}"),
                });
            }
        }
    }
    Ok(pairs)
}
