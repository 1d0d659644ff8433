//! Subcommand implementations. Every command assembles its full output as
//! a string and emits it in one shot, so identical configs produce
//! byte-identical results.

use serde::Serialize;

use attokit::barrier::{self, BarrierGeometry};
use attokit::data;
use attokit::photonics::{self, CellDiff, PhotonStats, DEFAULT_ETA, TABLE1_TOLERANCE};
use attokit::ttime::{self, LaserSpec, ReferenceShift, TimeModel};
use attokit::units;

use crate::config::{self, Resolved};
use crate::render::{emit, fmt6, fmt_trim};
use crate::{
    AppError, BarrierArgs, Cli, Command, CompareArgs, FormatKind, ModelKind, RegimesArgs, ScanArgs,
    ShiftKind, Table1Args,
};

pub fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Scan(args) => cmd_scan(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Barrier(args) => cmd_barrier(args),
        Command::Regimes(args) => cmd_regimes(args),
        Command::Compare(args) => cmd_compare(args),
    }
}

fn laser_at(resolved: &Resolved, f: f64) -> Result<LaserSpec, AppError> {
    LaserSpec::new(resolved.omega0, f, resolved.ellipticity)
        .map_err(|e| AppError::Config(e.to_string()))
}

#[derive(Serialize)]
struct ScanRecord {
    f_au: f64,
    intensity_au: f64,
    intensity_wcm2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_i_as: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_d_as: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_sym_as: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_num_as: Option<f64>,
    gamma_k: f64,
    regime: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_scan(args: ScanArgs) -> Result<(), AppError> {
    let (resolved, file) = config::resolve_common(&args.common)?;
    let band = config::resolve_band(args.band, &file)?;
    let series_order = match args.series_order {
        Some(n) => Some(n),
        None => file.usize("series-order")?,
    };
    if series_order == Some(0) {
        return Err(AppError::Config("series-order must be >= 1".to_string()));
    }
    let grid = config::resolve_grid(
        args.field_grid.as_deref(),
        args.intensity_grid.as_deref(),
        &file,
    )?;

    let mut records = Vec::new();
    for (f, intensity_au) in grid.points(resolved.ellipticity) {
        let laser = laser_at(&resolved, f)?;
        let intensity_wcm2 = units::intensity_au_to_wcm2(intensity_au)
            .map_err(|e| AppError::Config(e.to_string()))?;
        // gamma and regime are defined beyond F_a; only the times fail there
        let keldysh = ttime::keldysh(&resolved.atom, &laser)
            .map_err(|e| AppError::Config(e.to_string()))?;
        let regime = ttime::classify_regime(&resolved.atom, &laser, band)
            .map_err(|e| AppError::Config(e.to_string()))?;
        let record = match ttime::evaluate(&resolved.atom, &laser, band) {
            Ok(r) => {
                let tau_num_as = match series_order {
                    None => r.tau_num_as,
                    Some(n) => {
                        let series = ttime::t_num_series(&resolved.atom, f, n)
                            .map_err(|e| AppError::Config(e.to_string()))?;
                        units::au_to_attoseconds(series.value)
                    }
                };
                ScanRecord {
                    f_au: f,
                    intensity_au,
                    intensity_wcm2,
                    tau_i_as: Some(r.tau_i_as),
                    tau_d_as: Some(r.tau_d_as),
                    tau_sym_as: Some(r.tau_sym_as),
                    tau_num_as: Some(tau_num_as),
                    gamma_k: keldysh.gamma,
                    regime: regime.to_string(),
                    error: None,
                }
            }
            Err(e) => {
                eprintln!("warning: F = {} au skipped: {e}", fmt_trim(f));
                ScanRecord {
                    f_au: f,
                    intensity_au,
                    intensity_wcm2,
                    tau_i_as: None,
                    tau_d_as: None,
                    tau_sym_as: None,
                    tau_num_as: None,
                    gamma_k: keldysh.gamma,
                    regime: regime.to_string(),
                    error: Some(e.to_string()),
                }
            }
        };
        records.push(record);
    }

    let content = match resolved.format {
        FormatKind::Csv => {
            let mut out = String::from(
                "f_au,intensity_au,intensity_wcm2,tau_i_as,tau_d_as,tau_sym_as,tau_num_as,gamma_k,regime\n",
            );
            let cell = |v: Option<f64>| v.map(fmt6).unwrap_or_default();
            for r in &records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    fmt6(r.f_au),
                    fmt6(r.intensity_au),
                    fmt6(r.intensity_wcm2),
                    cell(r.tau_i_as),
                    cell(r.tau_d_as),
                    cell(r.tau_sym_as),
                    cell(r.tau_num_as),
                    fmt6(r.gamma_k),
                    r.regime,
                ));
            }
            out
        }
        FormatKind::Json => to_json(&records)?,
    };
    emit(resolved.output.as_deref(), &content)
}

#[derive(Serialize)]
struct RegimeRecord {
    f_au: f64,
    intensity_au: f64,
    gamma_k: f64,
    tau_k_au: f64,
    tau_k_as: f64,
    regime: String,
}

fn cmd_regimes(args: RegimesArgs) -> Result<(), AppError> {
    let (resolved, file) = config::resolve_common(&args.common)?;
    let band = config::resolve_band(args.band, &file)?;
    let grid = config::resolve_grid(
        args.field_grid.as_deref(),
        args.intensity_grid.as_deref(),
        &file,
    )?;

    let mut records = Vec::new();
    for (f, intensity_au) in grid.points(resolved.ellipticity) {
        let laser = laser_at(&resolved, f)?;
        let keldysh = ttime::keldysh(&resolved.atom, &laser)
            .map_err(|e| AppError::Config(e.to_string()))?;
        let regime = ttime::classify_regime(&resolved.atom, &laser, band)
            .map_err(|e| AppError::Config(e.to_string()))?;
        records.push(RegimeRecord {
            f_au: f,
            intensity_au,
            gamma_k: keldysh.gamma,
            tau_k_au: keldysh.tau_k,
            tau_k_as: units::au_to_attoseconds(keldysh.tau_k),
            regime: regime.to_string(),
        });
    }

    let content = match resolved.format {
        FormatKind::Csv => {
            let mut out = String::from("f_au,intensity_au,gamma_k,tau_k_au,tau_k_as,regime\n");
            for r in &records {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt6(r.f_au),
                    fmt6(r.intensity_au),
                    fmt6(r.gamma_k),
                    fmt6(r.tau_k_au),
                    fmt6(r.tau_k_as),
                    r.regime,
                ));
            }
            out
        }
        FormatKind::Json => to_json(&records)?,
    };
    emit(resolved.output.as_deref(), &content)
}

#[derive(Serialize)]
struct Table1Output {
    rows: Vec<PhotonStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    golden_diff: Option<Vec<CellDiff>>,
}

fn cmd_table1(args: Table1Args) -> Result<(), AppError> {
    let (resolved, file) = config::resolve_common(&args.common)?;
    let multipliers = config::parse_multipliers(args.multipliers.as_deref(), &file)?;
    let eta = match args.eta {
        Some(v) => v,
        None => file.f64("eta")?.unwrap_or(DEFAULT_ETA),
    };
    if !eta.is_finite() || eta <= 0.0 {
        return Err(AppError::Config(format!("eta = {eta} must be > 0")));
    }
    let golden = args.golden || file.get("golden") == Some("true");

    let template = laser_at(&resolved, 0.0)?;
    let rows = photonics::table1(&resolved.atom, &template, &multipliers, eta)
        .map_err(|e| AppError::Config(e.to_string()))?;
    let diff = golden.then(|| photonics::table1_reference_diff(&multipliers, &rows));

    let content = match resolved.format {
        FormatKind::Csv => {
            let mut out = String::from("quantity");
            for x in &multipliers {
                out.push(',');
                out.push_str(&fmt_trim(*x));
            }
            out.push('\n');
            type Getter = fn(&PhotonStats) -> f64;
            let quantities: [(&str, Getter); 6] = [
                ("intensity_au", |r| r.intensity_au),
                ("field_au", |r| r.f),
                ("m_l", |r| r.m_l),
                ("n_ph_mean", |r| r.n_ph_mean),
                ("p_compton_over_ke_pct", |r| r.ratio_compton_pct),
                ("p_wavepacket_over_ke_pct", |r| r.ratio_wavepacket_pct),
            ];
            for (name, getter) in quantities {
                out.push_str(name);
                for row in &rows {
                    out.push(',');
                    out.push_str(&fmt6(getter(row)));
                }
                out.push('\n');
            }
            if let Some(diff) = &diff {
                out.push_str(&format!(
                    "\n# computed vs published reference, tolerance {:.0}% (flagged cell expected to mismatch)\n",
                    100.0 * TABLE1_TOLERANCE
                ));
                out.push_str("quantity,x,computed,reference,rel_diff,status\n");
                for d in diff {
                    let status = if d.ok {
                        "ok"
                    } else if d.flagged {
                        "flagged-mismatch"
                    } else {
                        "mismatch"
                    };
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        d.quantity,
                        fmt_trim(d.x),
                        fmt6(d.computed),
                        fmt6(d.reference),
                        fmt6(d.rel_diff),
                        status,
                    ));
                }
            }
            out
        }
        FormatKind::Json => to_json(&Table1Output {
            rows,
            golden_diff: diff,
        })?,
    };
    emit(resolved.output.as_deref(), &content)
}

#[derive(Serialize)]
struct ProfilePoint {
    x_au: f64,
    potential_au: f64,
    effective_potential_au: f64,
}

#[derive(Serialize)]
struct BarrierOutput {
    #[serde(flatten)]
    geometry: BarrierGeometry,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<Vec<ProfilePoint>>,
}

fn cmd_barrier(args: BarrierArgs) -> Result<(), AppError> {
    let (resolved, file) = config::resolve_common(&args.common)?;
    let f = match args.field {
        Some(v) => v,
        None => file
            .f64("field")?
            .ok_or_else(|| AppError::Config("barrier needs --field F".to_string()))?,
    };
    let geometry = barrier::barrier_geometry(&resolved.atom, f)
        .map_err(|e| AppError::Config(e.to_string()))?;

    let profile = match args.profile.map(Ok).or_else(|| file.usize("profile").transpose()) {
        None => None,
        Some(n) => {
            let n = n?;
            if n < 2 {
                return Err(AppError::Config(format!(
                    "profile needs at least 2 samples, got {n}"
                )));
            }
            let lo = 0.5 * geometry.x_entry;
            let hi = 1.5 * geometry.x_exit;
            let points = (0..n)
                .map(|i| {
                    let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                    Ok(ProfilePoint {
                        x_au: x,
                        potential_au: barrier::potential(&resolved.atom, x)
                            .map_err(|e| AppError::Config(e.to_string()))?,
                        effective_potential_au: barrier::effective_potential(&resolved.atom, f, x)
                            .map_err(|e| AppError::Config(e.to_string()))?,
                    })
                })
                .collect::<Result<Vec<_>, AppError>>()?;
            Some(points)
        }
    };

    let content = match resolved.format {
        FormatKind::Csv => {
            let mut out = String::new();
            match &profile {
                None => {
                    out.push_str(
                        "f_au,x_entry,x_exit,x_classical,x_max,d_b,h_b,delta_z,f_a\n",
                    );
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        fmt6(geometry.f),
                        fmt6(geometry.x_entry),
                        fmt6(geometry.x_exit),
                        fmt6(geometry.x_classical),
                        fmt6(geometry.x_max),
                        fmt6(geometry.d_b),
                        fmt6(geometry.h_b),
                        fmt6(geometry.delta_z),
                        fmt6(geometry.f_a),
                    ));
                }
                Some(points) => {
                    // record as comments, then the sampled curves
                    out.push_str(&format!("# f_au={}\n", fmt6(geometry.f)));
                    out.push_str(&format!("# x_entry={}\n", fmt6(geometry.x_entry)));
                    out.push_str(&format!("# x_exit={}\n", fmt6(geometry.x_exit)));
                    out.push_str(&format!("# x_classical={}\n", fmt6(geometry.x_classical)));
                    out.push_str(&format!("# x_max={}\n", fmt6(geometry.x_max)));
                    out.push_str(&format!("# d_b={}\n", fmt6(geometry.d_b)));
                    out.push_str(&format!("# h_b={}\n", fmt6(geometry.h_b)));
                    out.push_str(&format!("# delta_z={}\n", fmt6(geometry.delta_z)));
                    out.push_str(&format!("# f_a={}\n", fmt6(geometry.f_a)));
                    out.push_str("x_au,potential_au,effective_potential_au\n");
                    for p in points {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            fmt6(p.x_au),
                            fmt6(p.potential_au),
                            fmt6(p.effective_potential_au),
                        ));
                    }
                }
            }
            out
        }
        FormatKind::Json => to_json(&BarrierOutput { geometry, profile })?,
    };
    emit(resolved.output.as_deref(), &content)
}

fn cmd_compare(args: CompareArgs) -> Result<(), AppError> {
    let (resolved, file) = config::resolve_common(&args.common)?;
    let model = match args.model {
        Some(m) => m,
        None => file
            .value_enum::<ModelKind>("model")?
            .unwrap_or(ModelKind::Taud),
    };
    let model = match model {
        ModelKind::Taud => TimeModel::TauD,
        ModelKind::Taunum => TimeModel::TauNum,
        ModelKind::Tausym => TimeModel::TauSym,
    };
    let shift = match args.shift {
        Some(s) => s,
        None => file
            .value_enum::<ShiftKind>("shift")?
            .unwrap_or(ShiftKind::None),
    };
    let shift = match shift {
        ShiftKind::None => None,
        ShiftKind::HalfInverseIp => Some(ReferenceShift::HalfInverseIp),
        ShiftKind::TauI => Some(ReferenceShift::TauI),
    };

    let points =
        data::load_experiment(&args.data).map_err(|e| AppError::Data(e.to_string()))?;
    let report = data::compare(
        &points,
        &resolved.atom,
        model,
        shift,
        resolved.ellipticity,
    )
    .map_err(|e| match e {
        data::CompareError::Ellipticity(_) => AppError::Config(e.to_string()),
        other => AppError::Data(other.to_string()),
    })?;
    if report.n_excluded > 0 {
        eprintln!(
            "warning: {} point(s) outside the model domain were excluded (abscissae: {})",
            report.n_excluded,
            report
                .excluded_abscissae_au
                .iter()
                .map(|v| fmt_trim(*v))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }

    let mut content = report.to_json();
    content.push('\n');
    emit(resolved.output.as_deref(), &content)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, AppError> {
    let mut out = serde_json::to_string_pretty(value)
        .map_err(|e| AppError::Data(format!("serialization failed: {e}")))?;
    out.push('\n');
    Ok(out)
}
