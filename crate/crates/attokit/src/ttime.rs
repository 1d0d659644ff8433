//! The tunneling-time family and Keldysh regime classification.
//!
//! From the time-energy uncertainty relation the symmetric tunneling time
//! splits into the pre-barrier and barrier-crossing parts,
//!
//! ```text
//! τ_sym = τ_i + τ_d = 1/(2(I_p + δ_z)) + 1/(2(I_p − δ_z)),
//! ```
//!
//! and subtracting the barrier-free limit τ_d(F_a) = 1/(2 I_p) gives the
//! F_a-referenced delay τ_num = (δ_z/I_p)/(2(I_p − δ_z)), which also has a
//! geometric-series form (1/(2 I_p)) Σ_{k≥1} (δ_z/I_p)^k. τ_num is what a
//! grid simulation reports when the reference term is dropped (the
//! parametric time); adding a reference time t_0 — either 1/(2 I_p) or
//! τ_i — restores the absolute delay, exactly recovering τ_d when
//! t_0 = 1/(2 I_p).
//!
//! The Keldysh parameter γ_K = sqrt(2 I_p) ω_0/F = τ_K ω_0 separates
//! multiphoton ionization (γ_K > 1) from tunneling (γ_K < 1, F < F_a). The
//! delay model itself is field-driven and frequency-independent, so regime
//! classification and time computation are deliberately decoupled.

use serde::Serialize;
use std::fmt;

use crate::barrier::{self, AtomSpec};
use crate::error::Error;
use crate::units;

/// KASE central circular frequency, au (λ = 736 nm).
pub const KASE_OMEGA0: f64 = 0.0619;

/// KASE ellipticity parameter.
pub const KASE_ELLIPTICITY: f64 = 0.87;

/// Half-width of the γ_K ~ 1 intermediate band. The band is known to be
/// narrow but has no published width; 0.1 is a testable, non-physical
/// default.
pub const DEFAULT_REGIME_BAND: f64 = 0.1;

/// Default truncation order for [`t_num_series`].
pub const DEFAULT_SERIES_ORDER: usize = 200;

/// Laser pulse parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaserSpec {
    /// Central circular frequency in au.
    pub omega0: f64,
    /// Peak electric field strength in au.
    pub f: f64,
    /// Ellipticity, dimensionless.
    pub epsilon: f64,
}

impl LaserSpec {
    /// Build a validated pulse; ω_0 > 0, F ≥ 0, 0 ≤ ε ≤ 1.
    pub fn new(omega0: f64, f: f64, epsilon: f64) -> Result<Self, Error> {
        if !omega0.is_finite() || omega0 <= 0.0 {
            return Err(Error::domain("central frequency", omega0, "omega0 > 0"));
        }
        if f < 0.0 || !f.is_finite() {
            return Err(Error::domain("field strength", f, "F >= 0"));
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::domain("ellipticity", epsilon, "0 <= epsilon <= 1"));
        }
        Ok(LaserSpec { omega0, f, epsilon })
    }

    /// The KASE pulse (ω_0 = 0.0619 au, ε = 0.87) at peak field `f`.
    pub fn kase(f: f64) -> Result<Self, Error> {
        LaserSpec::new(KASE_OMEGA0, f, KASE_ELLIPTICITY)
    }
}

/// Ionization regime by Keldysh parameter and field strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// γ_K < 1 − band and F ≤ F_a.
    Tunneling,
    /// γ_K within the band around 1.
    Intermediate,
    /// γ_K > 1 + band.
    Multiphoton,
    /// F > F_a: the barrier is gone.
    AboveThreshold,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Tunneling => "tunneling",
            Regime::Intermediate => "intermediate",
            Regime::Multiphoton => "multiphoton",
            Regime::AboveThreshold => "above-threshold",
        };
        f.write_str(s)
    }
}

/// Keldysh time and parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Keldysh {
    /// γ_K = τ_K ω_0, dimensionless.
    pub gamma: f64,
    /// τ_K = sqrt(2 I_p)/F in au.
    pub tau_k: f64,
}

/// Keldysh time τ_K = sqrt(2 I_p)/F and parameter γ_K = τ_K ω_0.
pub fn keldysh(atom: &AtomSpec, laser: &LaserSpec) -> Result<Keldysh, Error> {
    if laser.f <= 0.0 {
        return Err(Error::domain(
            "field strength",
            laser.f,
            "F > 0 (gamma_K diverges at zero field)",
        ));
    }
    let tau_k = (2.0 * atom.ip).sqrt() / laser.f;
    Ok(Keldysh {
        gamma: tau_k * laser.omega0,
        tau_k,
    })
}

/// Classify the ionization regime; `band` is the half-width of the
/// intermediate window around γ_K = 1.
pub fn classify_regime(atom: &AtomSpec, laser: &LaserSpec, band: f64) -> Result<Regime, Error> {
    if !(0.0..1.0).contains(&band) {
        return Err(Error::domain("regime band", band, "0 <= band < 1"));
    }
    let k = keldysh(atom, laser)?;
    if laser.f > barrier::atomic_field_strength(atom) {
        return Ok(Regime::AboveThreshold);
    }
    Ok(if k.gamma < 1.0 - band {
        Regime::Tunneling
    } else if k.gamma > 1.0 + band {
        Regime::Multiphoton
    } else {
        Regime::Intermediate
    })
}

/// The symmetric tunneling time and its two parts, in au.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricTimes {
    /// Time to reach the entrance point, 1/(2(I_p + δ_z)).
    pub tau_i: f64,
    /// Barrier-crossing delay, 1/(2(I_p − δ_z)).
    pub tau_d: f64,
    /// Total, τ_i + τ_d.
    pub tau_sym: f64,
}

fn check_time_field(atom: &AtomSpec, f: f64) -> Result<f64, Error> {
    if f < 0.0 {
        return Err(Error::domain("field strength", f, "F >= 0"));
    }
    if f == 0.0 {
        // the barrier is infinitely wide; the delay diverges
        return Err(Error::InfiniteDelay);
    }
    barrier::delta_z(atom, f)
}

/// Symmetric (total) tunneling time for 0 < F ≤ F_a.
///
/// At F = F_a both parts equal 1/(2 I_p) and the total is the ionization
/// time 1/I_p.
pub fn t_sym(atom: &AtomSpec, f: f64) -> Result<SymmetricTimes, Error> {
    let dz = check_time_field(atom, f)?;
    let tau_i = 1.0 / (2.0 * (atom.ip + dz));
    let tau_d = 1.0 / (2.0 * (atom.ip - dz));
    Ok(SymmetricTimes {
        tau_i,
        tau_d,
        tau_sym: tau_i + tau_d,
    })
}

/// F_a-referenced delay τ_num = (δ_z/I_p)/(2(I_p − δ_z)) in closed form.
///
/// Equals τ_d − 1/(2 I_p) and vanishes at F = F_a. This is also the
/// parametric time: the delay a grid simulation reports when the reference
/// term 1/(2 I_p) is ignored.
pub fn t_num_closed(atom: &AtomSpec, f: f64) -> Result<f64, Error> {
    let dz = check_time_field(atom, f)?;
    Ok((dz / atom.ip) / (2.0 * (atom.ip - dz)))
}

/// Partial geometric-series sum for τ_num.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSum {
    /// Partial sum (1/(2 I_p)) Σ_{k=1..} (δ_z/I_p)^k, in au.
    pub value: f64,
    /// The individual terms that were accumulated, in au.
    pub terms: Vec<f64>,
}

/// Geometric-series form of τ_num truncated at `k_max` terms.
///
/// Converges monotonically from below to [`t_num_closed`] since
/// 0 ≤ δ_z/I_p < 1 on (0, F_a]. Accumulation stops early once a term
/// falls below 1e-16 of the partial sum.
pub fn t_num_series(atom: &AtomSpec, f: f64, k_max: usize) -> Result<SeriesSum, Error> {
    if k_max < 1 {
        return Err(Error::domain("series order", k_max as f64, "k_max >= 1"));
    }
    let dz = check_time_field(atom, f)?;
    let ratio = dz / atom.ip;
    let prefactor = 1.0 / (2.0 * atom.ip);
    let mut terms = Vec::new();
    let mut value = 0.0;
    let mut power = 1.0;
    for _ in 1..=k_max {
        power *= ratio;
        let term = prefactor * power;
        terms.push(term);
        value += term;
        if term <= 1e-16 * value {
            break;
        }
    }
    Ok(SeriesSum { value, terms })
}

/// Reference time t_0 restoring an absolute delay from an F_a-referenced one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceShift {
    /// t_0 = 1/(2 I_p), the ionization time at F_a; τ_num + t_0 = τ_d exactly.
    HalfInverseIp,
    /// t_0 = τ_i = 1/(2(I_p + δ_z)), the time to reach the entrance point.
    TauI,
}

impl fmt::Display for ReferenceShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceShift::HalfInverseIp => "half-inverse-ip",
            ReferenceShift::TauI => "tau-i",
        })
    }
}

/// The reference time t_0 itself, in au.
pub fn reference_time(atom: &AtomSpec, f: f64, reference: ReferenceShift) -> Result<f64, Error> {
    match reference {
        ReferenceShift::HalfInverseIp => {
            check_time_field(atom, f)?;
            Ok(1.0 / (2.0 * atom.ip))
        }
        ReferenceShift::TauI => Ok(t_sym(atom, f)?.tau_i),
    }
}

/// Add the reference time t_0 to an F_a-referenced delay.
///
/// With [`ReferenceShift::HalfInverseIp`] and `tau_num_value` = τ_num(F)
/// the result is τ_d(F) exactly.
pub fn reference_shift(
    tau_num_value: f64,
    atom: &AtomSpec,
    f: f64,
    reference: ReferenceShift,
) -> Result<f64, Error> {
    Ok(tau_num_value + reference_time(atom, f, reference)?)
}

/// The full time family at one field strength, in au with attosecond mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TTimeResult {
    /// Field this record was evaluated at, au.
    pub f: f64,
    pub tau_sym: f64,
    pub tau_i: f64,
    pub tau_d: f64,
    pub tau_num: f64,
    pub tau_k: f64,
    pub gamma_k: f64,
    pub regime: Regime,
    pub tau_sym_as: f64,
    pub tau_i_as: f64,
    pub tau_d_as: f64,
    pub tau_num_as: f64,
    pub tau_k_as: f64,
}

/// Evaluate every time quantity at the laser's peak field.
pub fn evaluate(atom: &AtomSpec, laser: &LaserSpec, band: f64) -> Result<TTimeResult, Error> {
    let k = keldysh(atom, laser)?;
    let regime = classify_regime(atom, laser, band)?;
    let sym = t_sym(atom, laser.f)?;
    let tau_num = sym.tau_d - 1.0 / (2.0 * atom.ip);
    Ok(TTimeResult {
        f: laser.f,
        tau_sym: sym.tau_sym,
        tau_i: sym.tau_i,
        tau_d: sym.tau_d,
        tau_num,
        tau_k: k.tau_k,
        gamma_k: k.gamma,
        regime,
        tau_sym_as: units::au_to_attoseconds(sym.tau_sym),
        tau_i_as: units::au_to_attoseconds(sym.tau_i),
        tau_d_as: units::au_to_attoseconds(sym.tau_d),
        tau_num_as: units::au_to_attoseconds(tau_num),
        tau_k_as: units::au_to_attoseconds(k.tau_k),
    })
}

/// Which time quantity a scan or comparison tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeModel {
    TauD,
    TauNum,
    TauSym,
}

impl fmt::Display for TimeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeModel::TauD => "taud",
            TimeModel::TauNum => "taunum",
            TimeModel::TauSym => "tausym",
        })
    }
}

/// The selected model time at one field strength, in au.
pub fn model_time(atom: &AtomSpec, f: f64, model: TimeModel) -> Result<f64, Error> {
    let sym = t_sym(atom, f)?;
    Ok(match model {
        TimeModel::TauD => sym.tau_d,
        TimeModel::TauNum => sym.tau_d - 1.0 / (2.0 * atom.ip),
        TimeModel::TauSym => sym.tau_sym,
    })
}

/// One scan row; out-of-range fields yield an error entry instead of
/// aborting the scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    /// Field in au.
    pub f: f64,
    /// Peak intensity F²(1 + ε²) in au.
    pub intensity_au: f64,
    pub entry: Result<ScanEntry, Error>,
}

/// The computed quantities of a valid scan row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanEntry {
    pub time_au: f64,
    pub time_as: f64,
    pub gamma_k: f64,
    pub regime: Regime,
}

/// Evaluate `model` over a field grid; rows come back in grid order and
/// invalid fields are flagged per row. Regime cells use
/// [`DEFAULT_REGIME_BAND`].
pub fn scan(atom: &AtomSpec, laser: &LaserSpec, fields: &[f64], model: TimeModel) -> Vec<ScanRow> {
    fields
        .iter()
        .map(|&f| {
            let intensity_au = f * f * (1.0 + laser.epsilon * laser.epsilon);
            let entry = (|| {
                let per_point = LaserSpec {
                    omega0: laser.omega0,
                    f,
                    epsilon: laser.epsilon,
                };
                let time_au = model_time(atom, f, model)?;
                let k = keldysh(atom, &per_point)?;
                let regime = classify_regime(atom, &per_point, DEFAULT_REGIME_BAND)?;
                Ok(ScanEntry {
                    time_au,
                    time_as: units::au_to_attoseconds(time_au),
                    gamma_k: k.gamma,
                    regime,
                })
            })();
            ScanRow {
                f,
                intensity_au,
                entry,
            }
        })
        .collect()
}
