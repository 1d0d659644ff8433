//! Config-file loading and flag/file/default resolution.
//!
//! The config file is flat `key=value` text with `#` comments; keys are the
//! long flag names without the leading dashes (e.g. `atom=he-kullie`,
//! `field-grid=0.04:0.12:0.01`). Command-line flags always win.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use attokit::barrier::AtomSpec;
use attokit::ttime::{DEFAULT_REGIME_BAND, KASE_ELLIPTICITY, KASE_OMEGA0};
use attokit::units;

use crate::{AppError, AtomKind, CommonArgs, FormatKind};

pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, AppError> {
        let mut values = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| {
                AppError::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(AppError::Config(format!(
                        "config {} line {}: expected key=value, got `{line}`",
                        path.display(),
                        idx + 1
                    )));
                };
                values.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(FileConfig { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, AppError> {
        self.get(key)
            .map(|raw| {
                raw.parse::<f64>().map_err(|_| {
                    AppError::Config(format!("config key `{key}`: `{raw}` is not a number"))
                })
            })
            .transpose()
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, AppError> {
        self.get(key)
            .map(|raw| {
                raw.parse::<usize>().map_err(|_| {
                    AppError::Config(format!("config key `{key}`: `{raw}` is not an integer"))
                })
            })
            .transpose()
    }

    pub fn value_enum<T: ValueEnum>(&self, key: &str) -> Result<Option<T>, AppError> {
        self.get(key)
            .map(|raw| {
                T::from_str(raw, true).map_err(|_| {
                    AppError::Config(format!("config key `{key}`: unknown value `{raw}`"))
                })
            })
            .transpose()
    }
}

/// Common options after merging flags, file, and defaults.
pub struct Resolved {
    pub atom: AtomSpec,
    pub omega0: f64,
    pub ellipticity: f64,
    pub format: FormatKind,
    pub output: Option<PathBuf>,
}

pub fn resolve_common(common: &CommonArgs) -> Result<(Resolved, FileConfig), AppError> {
    let file = FileConfig::load(common.config.as_deref())?;

    let atom_kind = match common.atom {
        Some(kind) => kind,
        None => file.value_enum::<AtomKind>("atom")?.unwrap_or(AtomKind::HeClementi),
    };
    let ip = common.ip.map(Ok).or_else(|| file.f64("ip").transpose()).transpose()?;
    let zeff = common.zeff.map(Ok).or_else(|| file.f64("zeff").transpose()).transpose()?;
    let atom = match atom_kind {
        AtomKind::HeClementi | AtomKind::HeKullie => {
            if ip.is_some() || zeff.is_some() {
                return Err(AppError::Config(
                    "--ip/--zeff require --atom custom".to_string(),
                ));
            }
            if atom_kind == AtomKind::HeClementi {
                AtomSpec::helium_clementi()
            } else {
                AtomSpec::helium_kullie()
            }
        }
        AtomKind::Custom => {
            let (Some(ip), Some(zeff)) = (ip, zeff) else {
                return Err(AppError::Config(
                    "--atom custom needs both --ip and --zeff".to_string(),
                ));
            };
            AtomSpec::new("custom", ip, zeff)
                .map_err(|e| AppError::Config(format!("invalid atom: {e}")))?
        }
    };

    let omega0 = match common.omega0 {
        Some(v) => v,
        None => file.f64("omega0")?.unwrap_or(KASE_OMEGA0),
    };
    let ellipticity = match common.ellipticity {
        Some(v) => v,
        None => file.f64("ellipticity")?.unwrap_or(KASE_ELLIPTICITY),
    };
    if !omega0.is_finite() || omega0 <= 0.0 {
        return Err(AppError::Config(format!("omega0 = {omega0} must be > 0")));
    }
    if !(0.0..=1.0).contains(&ellipticity) {
        return Err(AppError::Config(format!(
            "ellipticity = {ellipticity} must lie in [0, 1]"
        )));
    }

    let format = match common.format {
        Some(v) => v,
        None => file.value_enum::<FormatKind>("format")?.unwrap_or(FormatKind::Csv),
    };
    let output = common
        .output
        .clone()
        .or_else(|| file.get("output").map(PathBuf::from));

    Ok((
        Resolved {
            atom,
            omega0,
            ellipticity,
            format,
            output,
        },
        file,
    ))
}

pub fn resolve_band(flag: Option<f64>, file: &FileConfig) -> Result<f64, AppError> {
    let band = match flag {
        Some(v) => v,
        None => file.f64("band")?.unwrap_or(DEFAULT_REGIME_BAND),
    };
    if !(0.0..1.0).contains(&band) {
        return Err(AppError::Config(format!("band = {band} must lie in [0, 1)")));
    }
    Ok(band)
}

/// The abscissa grid of a scan, tagged by what the values mean.
pub enum Grid {
    /// Field strengths in au.
    Field(Vec<f64>),
    /// Peak intensities in au.
    Intensity(Vec<f64>),
}

impl Grid {
    /// (field, intensity) pairs in grid order; intensity grids convert
    /// through F = sqrt(I/(1+eps²)), field grids through I = F²(1+eps²).
    /// Grid values are validated positive, so the conversions cannot fail.
    pub fn points(&self, ellipticity: f64) -> Vec<(f64, f64)> {
        match self {
            Grid::Field(fields) => fields
                .iter()
                .map(|&f| (f, f * f * (1.0 + ellipticity * ellipticity)))
                .collect(),
            Grid::Intensity(intensities) => intensities
                .iter()
                .map(|&i| {
                    let f = units::intensity_to_field(i, ellipticity)
                        .expect("positive intensity and validated ellipticity");
                    (f, i)
                })
                .collect(),
        }
    }
}

pub const DEFAULT_FIELD_GRID: &str = "0.04:0.12:0.01";

pub fn resolve_grid(
    field_flag: Option<&str>,
    intensity_flag: Option<&str>,
    file: &FileConfig,
) -> Result<Grid, AppError> {
    let field_spec = field_flag
        .map(str::to_string)
        .or_else(|| file.get("field-grid").map(str::to_string));
    let intensity_spec = intensity_flag
        .map(str::to_string)
        .or_else(|| file.get("intensity-grid").map(str::to_string));
    match (field_spec, intensity_spec) {
        (Some(_), Some(_)) => Err(AppError::Config(
            "exactly one of --field-grid and --intensity-grid may be given".to_string(),
        )),
        (Some(spec), None) => Ok(Grid::Field(parse_grid(&spec)?)),
        (None, Some(spec)) => Ok(Grid::Intensity(parse_grid(&spec)?)),
        (None, None) => Ok(Grid::Field(parse_grid(DEFAULT_FIELD_GRID)?)),
    }
}

/// Parse `lo:hi:step`, a comma list, or a single value into a strictly
/// increasing grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, AppError> {
    let bad = |msg: String| AppError::Config(format!("grid `{spec}`: {msg}"));
    let values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(bad("expected lo:hi:step".to_string()));
        };
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("`{s}` is not a number")))
        };
        let (lo, hi, step) = (parse(lo)?, parse(hi)?, parse(step)?);
        if !step.is_finite() || step <= 0.0 {
            return Err(bad(format!("step {step} must be > 0")));
        }
        if hi < lo {
            return Err(bad(format!("hi {hi} is below lo {lo}")));
        }
        let count = ((hi - lo) / step + 1e-9).floor() as usize;
        (0..=count).map(|i| lo + step * i as f64).collect()
    } else {
        spec.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(format!("`{s}` is not a number")))
            })
            .collect::<Result<Vec<f64>, AppError>>()?
    };
    if values.is_empty() {
        return Err(bad("grid is empty".to_string()));
    }
    if values.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(bad("grid values must be finite and > 0".to_string()));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad("grid must be strictly increasing".to_string()));
    }
    Ok(values)
}

pub fn parse_multipliers(
    flag: Option<&str>,
    file: &FileConfig,
) -> Result<Vec<f64>, AppError> {
    let spec = flag
        .map(str::to_string)
        .or_else(|| file.get("multipliers").map(str::to_string));
    match spec {
        None => Ok(attokit::photonics::TABLE1_DEFAULT_MULTIPLIERS.to_vec()),
        Some(spec) => {
            let values: Vec<f64> = spec
                .split(',')
                .map(|s| {
                    s.trim().parse::<f64>().map_err(|_| {
                        AppError::Config(format!("multiplier `{s}` is not a number"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if values.is_empty() || values.iter().any(|&x| !x.is_finite() || x <= 0.0) {
                return Err(AppError::Config(
                    "multipliers must be a nonempty list of positive numbers".to_string(),
                ));
            }
            Ok(values)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_forms() {
        let grid = parse_grid("0.04:0.12:0.01").unwrap();
        assert_eq!(grid.len(), 9);
        assert!((grid[0] - 0.04).abs() < 1e-15);
        assert!((grid[8] - 0.12).abs() < 1e-12);

        assert_eq!(parse_grid("0.13").unwrap(), vec![0.13]);
        assert_eq!(parse_grid("0.04, 0.05").unwrap(), vec![0.04, 0.05]);

        assert!(parse_grid("0.12:0.04:0.01").is_err());
        assert!(parse_grid("0.04:0.12:0").is_err());
        assert!(parse_grid("0.05,0.04").is_err());
        assert!(parse_grid("a:b:c").is_err());
    }

    #[test]
    fn file_config_parses_key_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# comment\natom=he-kullie\nband = 0.2\n").unwrap();
        let file = FileConfig::load(Some(&path)).unwrap();
        assert_eq!(file.get("atom"), Some("he-kullie"));
        assert_eq!(file.f64("band").unwrap(), Some(0.2));

        std::fs::write(&path, "not a pair\n").unwrap();
        assert!(FileConfig::load(Some(&path)).is_err());
    }
}
