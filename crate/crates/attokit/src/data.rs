//! Experimental delay-data ingestion and model comparison.
//!
//! Input is delimited text (comma or tab), UTF-8, `#` comments, with a
//! header row naming the columns. Recognized columns: exactly one abscissa
//! out of `field_au` | `intensity_au` | `intensity_wcm2`, a required
//! `delay_as`, and optional `err_lo_as`, `err_hi_as`, `label`. Published
//! delay datasets are not bundled here — figure point clouds are not
//! tabulated anywhere citable — so the repository ships clearly labeled
//! synthetic fixtures instead and users import real datasets through this
//! schema.

use serde::Serialize;
use std::path::Path;

use crate::barrier::AtomSpec;
use crate::error::Error;
use crate::ttime::{self, ReferenceShift, TimeModel};
use crate::units;

/// Where a data point sits on the field axis, in au.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Abscissa {
    /// Field strength in au.
    Field(f64),
    /// Peak intensity in au.
    Intensity(f64),
}

impl Abscissa {
    /// The raw coordinate value, whatever its kind.
    pub fn value(&self) -> f64 {
        match *self {
            Abscissa::Field(v) | Abscissa::Intensity(v) => v,
        }
    }
}

/// One measured delay with (possibly asymmetric) error bars.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentPoint {
    pub abscissa: Abscissa,
    /// Measured delay in attoseconds.
    pub delay_as: f64,
    /// Lower error bar in attoseconds, >= 0.
    pub err_lo_as: f64,
    /// Upper error bar in attoseconds, >= 0.
    pub err_hi_as: f64,
    /// Free-text provenance tag.
    pub source_label: String,
}

/// A malformed input row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowIssue {
    /// 1-based line number in the source text.
    pub line: u64,
    pub message: String,
}

/// Why a dataset could not be loaded.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("input has no header row")]
    MissingHeader,
    #[error("missing required column `{0}`")]
    MissingColumn(&'static str),
    #[error("need exactly one abscissa column (field_au | intensity_au | intensity_wcm2), found {0:?}")]
    AmbiguousAbscissa(Vec<String>),
    #[error("unrecognized column `{0}` (recognized: field_au, intensity_au, intensity_wcm2, delay_as, err_lo_as, err_hi_as, label)")]
    UnknownColumn(String),
    #[error("{} malformed row(s): {}", .0.len(), format_issues(.0))]
    Rows(Vec<RowIssue>),
}

fn format_issues(issues: &[RowIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("line {}: {}", i.line, i.message))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum AbscissaKind {
    FieldAu,
    IntensityAu,
    IntensityWcm2,
}

/// Load a delimited dataset from disk.
pub fn load_experiment(path: impl AsRef<Path>) -> Result<Vec<ExperimentPoint>, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_experiment(&text)
}

/// Parse a delimited dataset from text. Loading is order-preserving and
/// reports every offending row at once.
pub fn parse_experiment(text: &str) -> Result<Vec<ExperimentPoint>, LoadError> {
    let header_line = text
        .lines()
        .find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .ok_or(LoadError::MissingHeader)?;
    let delimiter = if header_line.contains('\t') { b'\t' } else { b',' };

    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader.headers().map_err(|_| LoadError::MissingHeader)?.clone();
    let mut abscissa_col: Option<(usize, AbscissaKind)> = None;
    let mut abscissa_names = Vec::new();
    let mut delay_col = None;
    let mut err_lo_col = None;
    let mut err_hi_col = None;
    let mut label_col = None;
    for (idx, name) in headers.iter().enumerate() {
        let kind = match name {
            "field_au" => Some(AbscissaKind::FieldAu),
            "intensity_au" => Some(AbscissaKind::IntensityAu),
            "intensity_wcm2" => Some(AbscissaKind::IntensityWcm2),
            "delay_as" => {
                delay_col = Some(idx);
                None
            }
            "err_lo_as" => {
                err_lo_col = Some(idx);
                None
            }
            "err_hi_as" => {
                err_hi_col = Some(idx);
                None
            }
            "label" => {
                label_col = Some(idx);
                None
            }
            other => return Err(LoadError::UnknownColumn(other.to_string())),
        };
        if let Some(kind) = kind {
            abscissa_names.push(name.to_string());
            abscissa_col = Some((idx, kind));
        }
    }
    if abscissa_names.len() != 1 {
        return Err(LoadError::AmbiguousAbscissa(abscissa_names));
    }
    let (abscissa_idx, abscissa_kind) = abscissa_col.expect("checked above");
    let delay_idx = delay_col.ok_or(LoadError::MissingColumn("delay_as"))?;

    let mut points = Vec::new();
    let mut issues = Vec::new();
    for result in reader.records() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, csv::Position::line);
                issues.push(RowIssue {
                    line,
                    message: format!("unreadable row: {e}"),
                });
                continue;
            }
        };
        let line = record.position().map_or(0, csv::Position::line);
        let mut bad = |message: String| issues.push(RowIssue { line, message });

        let field = |idx: usize| record.get(idx).unwrap_or("");
        let parse = |idx: usize, name: &str| -> Result<f64, String> {
            let raw = field(idx);
            raw.parse::<f64>()
                .map_err(|_| format!("column `{name}`: cannot parse `{raw}` as a number"))
        };

        let raw_abscissa = match parse(abscissa_idx, &headers[abscissa_idx]) {
            Ok(v) => v,
            Err(m) => {
                bad(m);
                continue;
            }
        };
        let delay_as = match parse(delay_idx, "delay_as") {
            Ok(v) if v.is_finite() => v,
            Ok(v) => {
                bad(format!("column `delay_as`: {v} is not finite"));
                continue;
            }
            Err(m) => {
                bad(m);
                continue;
            }
        };
        let err_bar = |col: Option<usize>, name: &str| -> Result<f64, String> {
            match col {
                None => Ok(0.0),
                Some(idx) if field(idx).is_empty() => Ok(0.0),
                Some(idx) => {
                    let v = parse(idx, name)?;
                    if v < 0.0 {
                        Err(format!("column `{name}`: error bar {v} is negative"))
                    } else {
                        Ok(v)
                    }
                }
            }
        };
        let err_lo_as = err_bar(err_lo_col, "err_lo_as");
        let err_hi_as = err_bar(err_hi_col, "err_hi_as");
        let (err_lo_as, err_hi_as) = match (err_lo_as, err_hi_as) {
            (Ok(lo), Ok(hi)) => (lo, hi),
            (lo, hi) => {
                if let Err(m) = lo {
                    bad(m);
                }
                if let Err(m) = hi {
                    bad(m);
                }
                continue;
            }
        };

        let abscissa = match abscissa_kind {
            AbscissaKind::FieldAu => Abscissa::Field(raw_abscissa),
            AbscissaKind::IntensityAu => Abscissa::Intensity(raw_abscissa),
            AbscissaKind::IntensityWcm2 => match units::intensity_wcm2_to_au(raw_abscissa) {
                Ok(v) => Abscissa::Intensity(v),
                Err(e) => {
                    bad(format!("column `intensity_wcm2`: {e}"));
                    continue;
                }
            },
        };
        if abscissa.value() <= 0.0 || !abscissa.value().is_finite() {
            bad(format!(
                "abscissa {} must be finite and > 0",
                abscissa.value()
            ));
            continue;
        }

        points.push(ExperimentPoint {
            abscissa,
            delay_as,
            err_lo_as,
            err_hi_as,
            source_label: label_col.map(field).unwrap_or("").to_string(),
        });
    }

    if issues.is_empty() {
        Ok(points)
    } else {
        Err(LoadError::Rows(issues))
    }
}

/// Goodness-of-fit of a model curve against a point set.
///
/// Residuals are model − data in attoseconds. χ² weights each residual by
/// the symmetrized error bar σ = (err_lo + err_hi)/2 and skips zero-σ
/// points; the rms keeps them. Serialized field order is the JSON contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    /// sqrt(mean residual²) in attoseconds.
    pub rms_as: f64,
    /// Error-weighted Σ (residual/σ)², dimensionless.
    pub chi2: f64,
    /// Number of points entering the residuals.
    pub n_points: usize,
    /// Mean reference time added to the model, in attoseconds (0 without a
    /// shift).
    pub shift_applied_as: f64,
    /// Per-point residuals in attoseconds, in input order.
    pub per_point_residuals: Vec<f64>,
    /// Points dropped because the model is undefined there (F outside
    /// (0, F_a]).
    pub n_excluded: usize,
    /// Raw abscissa values of the dropped points, in au.
    pub excluded_abscissae_au: Vec<f64>,
}

impl FitReport {
    /// Stable-key-order JSON rendering of the report.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Why a comparison produced no report.
#[derive(Debug, thiserror::Error)]
pub enum CompareError {
    #[error("no experimental points supplied")]
    Empty,
    #[error("invalid ellipticity {0} (need 0 <= epsilon <= 1)")]
    Ellipticity(f64),
    #[error("all {0} point(s) lie outside the model domain (0, F_a]")]
    AllExcluded(usize),
}

/// Compare `model` (optionally re-referenced by `shift`) against measured
/// delays. Intensity-tagged abscissae convert to field strength with the
/// given ellipticity. Points where the model is undefined are excluded and
/// reported, not fatal.
pub fn compare(
    points: &[ExperimentPoint],
    atom: &AtomSpec,
    model: TimeModel,
    shift: Option<ReferenceShift>,
    ellipticity: f64,
) -> Result<FitReport, CompareError> {
    if points.is_empty() {
        return Err(CompareError::Empty);
    }
    if !(0.0..=1.0).contains(&ellipticity) {
        return Err(CompareError::Ellipticity(ellipticity));
    }

    let mut residuals = Vec::new();
    let mut sigmas = Vec::new();
    let mut shifts_as = Vec::new();
    let mut excluded = Vec::new();
    for point in points {
        let value = match evaluate_model(point, atom, model, shift, ellipticity) {
            Ok(v) => v,
            Err(_) => {
                excluded.push(point.abscissa.value());
                continue;
            }
        };
        residuals.push(value.model_as - point.delay_as);
        sigmas.push((point.err_lo_as + point.err_hi_as) / 2.0);
        shifts_as.push(value.shift_as);
    }
    if residuals.is_empty() {
        return Err(CompareError::AllExcluded(excluded.len()));
    }

    let n = residuals.len();
    let rms_as = (residuals.iter().map(|r| r * r).sum::<f64>() / n as f64).sqrt();
    let chi2 = residuals
        .iter()
        .zip(&sigmas)
        .filter(|(_, &s)| s > 0.0)
        .map(|(r, s)| (r / s) * (r / s))
        .sum();

    Ok(FitReport {
        rms_as,
        chi2,
        n_points: n,
        shift_applied_as: shifts_as.iter().sum::<f64>() / n as f64,
        per_point_residuals: residuals,
        n_excluded: excluded.len(),
        excluded_abscissae_au: excluded,
    })
}

struct ModelValue {
    model_as: f64,
    shift_as: f64,
}

fn evaluate_model(
    point: &ExperimentPoint,
    atom: &AtomSpec,
    model: TimeModel,
    shift: Option<ReferenceShift>,
    ellipticity: f64,
) -> Result<ModelValue, Error> {
    let f = match point.abscissa {
        Abscissa::Field(f) => f,
        Abscissa::Intensity(i) => units::intensity_to_field(i, ellipticity)?,
    };
    let base = ttime::model_time(atom, f, model)?;
    let t0 = match shift {
        None => 0.0,
        Some(reference) => ttime::reference_time(atom, f, reference)?,
    };
    Ok(ModelValue {
        model_as: units::au_to_attoseconds(base + t0),
        shift_as: units::au_to_attoseconds(t0),
    })
}
