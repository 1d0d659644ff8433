//! Tunneling-barrier geometry for a bound electron in a static peak field.
//!
//! The bound level sits at −I_p in the one-dimensional length-gauge
//! effective potential V_eff(x) = −Z_eff/x − F·x. Its roots at −I_p are the
//! inner and outer points x_e,± = (I_p ± δ_z)/(2F) with
//! δ_z = sqrt(I_p² − 4 Z_eff F); the barrier peaks at x_m = sqrt(Z_eff/F)
//! with height h_B = I_p − 2 sqrt(Z_eff F) above the bound level. All of it
//! degenerates to a single point when F reaches the atomic field strength
//! F_a = I_p²/(4 Z_eff), where the barrier is gone.

use serde::Serialize;

use crate::error::Error;

/// Ionization potential of He (1s), in au.
pub const HE_IONIZATION_POTENTIAL: f64 = 0.90357;

/// Effective nuclear charge of He after Clementi.
pub const Z_EFF_CLEMENTI: f64 = 1.6875;

/// Effective nuclear charge of He after Kullie.
pub const Z_EFF_KULLIE: f64 = 1.375;

/// The bound system: ionization potential and effective nuclear charge.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSpec {
    /// Ionization potential in au.
    pub ip: f64,
    /// Effective nuclear charge, dimensionless.
    pub z_eff: f64,
    /// Free-text name.
    pub label: String,
}

impl AtomSpec {
    /// Build a validated atom; `ip` and `z_eff` must be strictly positive.
    pub fn new(label: impl Into<String>, ip: f64, z_eff: f64) -> Result<Self, Error> {
        if !ip.is_finite() || ip <= 0.0 {
            return Err(Error::domain("ionization potential", ip, "ip > 0"));
        }
        if !z_eff.is_finite() || z_eff <= 0.0 {
            return Err(Error::domain("effective nuclear charge", z_eff, "z_eff > 0"));
        }
        Ok(AtomSpec {
            ip,
            z_eff,
            label: label.into(),
        })
    }

    /// He with the Clementi effective charge (F_a ≈ 0.12 au).
    pub fn helium_clementi() -> Self {
        AtomSpec {
            ip: HE_IONIZATION_POTENTIAL,
            z_eff: Z_EFF_CLEMENTI,
            label: "He (Clementi)".to_owned(),
        }
    }

    /// He with the Kullie effective charge (F_a ≈ 0.14 au).
    pub fn helium_kullie() -> Self {
        AtomSpec {
            ip: HE_IONIZATION_POTENTIAL,
            z_eff: Z_EFF_KULLIE,
            label: "He (Kullie)".to_owned(),
        }
    }
}

/// All barrier quantities at a given (atom, field) pair, in au.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierGeometry {
    /// Discriminant δ_z = sqrt(I_p² − 4 Z_eff F).
    pub delta_z: f64,
    /// Inner point x_e,− where V_eff crosses −I_p.
    pub x_entry: f64,
    /// Outer (exit) point x_e,+.
    pub x_exit: f64,
    /// Barrier width x_e,+ − x_e,− = δ_z/F.
    pub d_b: f64,
    /// Classical exit point I_p/F.
    pub x_classical: f64,
    /// Barrier-peak position x_m = sqrt(Z_eff/F).
    pub x_max: f64,
    /// Barrier height above the bound level, I_p − 2 sqrt(Z_eff F).
    pub h_b: f64,
    /// Atomic field strength I_p²/(4 Z_eff).
    pub f_a: f64,
    /// Field this geometry was evaluated at.
    pub f: f64,
}

/// Real/imaginary branch of the discriminant, chosen explicitly by callers
/// that want to look past F_a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaZBranch {
    /// F ≤ F_a: δ_z itself.
    Real(f64),
    /// F > F_a: the magnitude |δ_z| = sqrt(4 Z_eff F − I_p²) of the
    /// imaginary discriminant.
    AboveThreshold(f64),
}

/// Field at which the barrier vanishes, F_a = I_p²/(4 Z_eff).
pub fn atomic_field_strength(atom: &AtomSpec) -> f64 {
    atom.ip * atom.ip / (4.0 * atom.z_eff)
}

/// Discriminant δ_z = sqrt(I_p² − 4 Z_eff F) for 0 ≤ F ≤ F_a.
///
/// δ_z(0) = I_p and δ_z(F_a) = 0; above F_a the error carries the
/// imaginary magnitude (see [`delta_z_branch`] for the opt-in branch).
pub fn delta_z(atom: &AtomSpec, f: f64) -> Result<f64, Error> {
    if f < 0.0 {
        return Err(Error::domain("field strength", f, "F >= 0"));
    }
    match delta_z_branch(atom, f) {
        DeltaZBranch::Real(d) => Ok(d),
        DeltaZBranch::AboveThreshold(d_im) => Err(Error::AboveThreshold {
            field: f,
            atomic_field: atomic_field_strength(atom),
            delta_imaginary: d_im,
        }),
    }
}

/// Both branches of the discriminant; F ≥ F_a yields the imaginary magnitude.
///
/// Discriminants within a few ulp of zero snap to the degenerate barrier:
/// F_a is itself a computed value, and without the snap sqrt would turn the
/// ~1e-16 rounding residue at F = F_a into a spurious δ_z ~ 1e-8 (or a
/// spurious above-threshold rejection).
pub fn delta_z_branch(atom: &AtomSpec, f: f64) -> DeltaZBranch {
    let disc = atom.ip * atom.ip - 4.0 * atom.z_eff * f;
    let rounding_floor = 4.0 * f64::EPSILON * atom.ip * atom.ip;
    if disc.abs() <= rounding_floor {
        DeltaZBranch::Real(0.0)
    } else if disc > 0.0 {
        DeltaZBranch::Real(disc.sqrt())
    } else {
        DeltaZBranch::AboveThreshold((-disc).sqrt())
    }
}

/// Full barrier geometry for 0 < F ≤ F_a.
pub fn barrier_geometry(atom: &AtomSpec, f: f64) -> Result<BarrierGeometry, Error> {
    if f <= 0.0 {
        return Err(Error::domain(
            "field strength",
            f,
            "F > 0 (the barrier is infinite at zero field)",
        ));
    }
    let dz = delta_z(atom, f)?;
    Ok(BarrierGeometry {
        delta_z: dz,
        x_entry: (atom.ip - dz) / (2.0 * f),
        x_exit: (atom.ip + dz) / (2.0 * f),
        d_b: dz / f,
        x_classical: atom.ip / f,
        x_max: (atom.z_eff / f).sqrt(),
        // true value is >= 0 on (0, F_a]; clamp the sub-ulp residue at F_a
        h_b: (atom.ip - 2.0 * (atom.z_eff * f).sqrt()).max(0.0),
        f_a: atomic_field_strength(atom),
        f,
    })
}

/// Bare Coulomb potential −Z_eff/x.
pub fn potential(atom: &AtomSpec, x: f64) -> Result<f64, Error> {
    if x == 0.0 {
        return Err(Error::Singularity);
    }
    Ok(-atom.z_eff / x)
}

/// Length-gauge effective potential −Z_eff/x − F·x for x > 0.
pub fn effective_potential(atom: &AtomSpec, f: f64, x: f64) -> Result<f64, Error> {
    if x <= 0.0 {
        return Err(Error::domain("position", x, "x > 0"));
    }
    Ok(-atom.z_eff / x - f * x)
}
