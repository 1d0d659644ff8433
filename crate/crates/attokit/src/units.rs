//! Atomic-unit constants and conversions to laboratory units.
//!
//! Everything downstream computes in atomic units (ħ = m_e = e = 1);
//! attoseconds and W/cm² appear only at the I/O boundary. The
//! intensity–field relation carries the ellipticity factor,
//! I = F²(1 + ε²), which is the only relation consistent with the
//! published (I_n, F) pairs of the reference intensity table.

use crate::error::Error;

/// Speed of light in atomic units.
pub const SPEED_OF_LIGHT_AU: f64 = 137.036;

/// Attoseconds per atomic time unit.
pub const AU_TIME_IN_ATTOSECONDS: f64 = 24.18884;

/// W/cm² per atomic intensity unit.
pub const AU_INTENSITY_IN_W_CM2: f64 = 3.50945e16;

/// Fundamental constants in atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConstants {
    /// Speed of light (dimensionless in au).
    pub c: f64,
    /// Fine-structure constant, always the derived value 1/c.
    pub alpha: f64,
    /// Attoseconds per atomic time unit.
    pub au_time_in_attoseconds: f64,
    /// W/cm² per atomic intensity unit.
    pub au_intensity_in_w_cm2: f64,
}

/// The standard constant set used throughout the crate.
pub const ATOMIC: PhysConstants = PhysConstants {
    c: SPEED_OF_LIGHT_AU,
    alpha: 1.0 / SPEED_OF_LIGHT_AU,
    au_time_in_attoseconds: AU_TIME_IN_ATTOSECONDS,
    au_intensity_in_w_cm2: AU_INTENSITY_IN_W_CM2,
};

fn check_ellipticity(epsilon: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::domain("ellipticity", epsilon, "0 <= epsilon <= 1"));
    }
    Ok(())
}

/// Peak intensity of an elliptically polarized field, I = F²(1 + ε²), in au.
pub fn field_to_intensity(field: f64, epsilon: f64) -> Result<f64, Error> {
    if field < 0.0 {
        return Err(Error::domain("field strength", field, "F >= 0"));
    }
    check_ellipticity(epsilon)?;
    Ok(field * field * (1.0 + epsilon * epsilon))
}

/// Inverse of [`field_to_intensity`]: F = sqrt(I / (1 + ε²)), in au.
pub fn intensity_to_field(intensity: f64, epsilon: f64) -> Result<f64, Error> {
    if intensity < 0.0 {
        return Err(Error::domain("intensity", intensity, "I >= 0"));
    }
    check_ellipticity(epsilon)?;
    Ok((intensity / (1.0 + epsilon * epsilon)).sqrt())
}

/// Time in atomic units to attoseconds.
pub fn au_to_attoseconds(t: f64) -> f64 {
    t * AU_TIME_IN_ATTOSECONDS
}

/// Time in attoseconds to atomic units.
pub fn attoseconds_to_au(t: f64) -> f64 {
    t / AU_TIME_IN_ATTOSECONDS
}

/// Intensity in atomic units to W/cm².
pub fn intensity_au_to_wcm2(intensity: f64) -> Result<f64, Error> {
    if intensity < 0.0 {
        return Err(Error::domain("intensity", intensity, "I >= 0"));
    }
    Ok(intensity * AU_INTENSITY_IN_W_CM2)
}

/// Intensity in W/cm² to atomic units.
pub fn intensity_wcm2_to_au(intensity: f64) -> Result<f64, Error> {
    if intensity < 0.0 {
        return Err(Error::domain("intensity", intensity, "I >= 0"));
    }
    Ok(intensity / AU_INTENSITY_IN_W_CM2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    #[allow(clippy::assertions_on_constants)] // constants sanity check
    fn alpha_is_derived_from_c() {
        // alpha is stored as 1/c, never independently.
        assert!((ATOMIC.alpha * ATOMIC.c - 1.0).abs() < 1e-15);
        assert!(ATOMIC.c > 0.0 && ATOMIC.alpha > 0.0);
        assert!(ATOMIC.au_time_in_attoseconds > 0.0);
        assert!(ATOMIC.au_intensity_in_w_cm2 > 0.0);
    }

    #[test]
    fn field_to_intensity_examples() {
        assert_relative_eq!(
            field_to_intensity(0.040, 0.87).unwrap(),
            0.00281104,
            max_relative = 1e-12
        );
        assert_eq!(field_to_intensity(0.0, 0.87).unwrap(), 0.0);
        assert_relative_eq!(
            field_to_intensity(0.11, 0.87).unwrap(),
            0.02125849,
            max_relative = 1e-12
        );
        // published table rounds to 3 significant figures
        assert!((field_to_intensity(0.040, 0.87).unwrap() - 0.00285).abs() / 0.00285 < 0.015);
        assert!((field_to_intensity(0.11, 0.87).unwrap() - 0.0214).abs() / 0.0214 < 0.01);
    }

    #[test]
    fn intensity_to_field_examples() {
        assert_relative_eq!(
            intensity_to_field(0.00285, 0.87).unwrap(),
            0.04027623893338834,
            max_relative = 1e-12
        );
        assert_eq!(intensity_to_field(0.0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(
            intensity_to_field(0.0214, 0.87).unwrap(),
            0.11036550764897403,
            max_relative = 1e-12
        );
    }

    #[test]
    fn attosecond_conversion_examples() {
        assert_relative_eq!(au_to_attoseconds(1.0), 24.18884, max_relative = 1e-15);
        assert_relative_eq!(au_to_attoseconds(0.55336), 13.385136502, max_relative = 1e-9);
        assert_relative_eq!(au_to_attoseconds(3.0427), 73.599383468, max_relative = 1e-9);
    }

    #[test]
    fn wcm2_conversion_examples() {
        assert_relative_eq!(
            intensity_au_to_wcm2(0.00285).unwrap(),
            1.00019325e14,
            max_relative = 1e-9
        );
        assert_eq!(intensity_au_to_wcm2(0.0).unwrap(), 0.0);
        assert_relative_eq!(
            intensity_au_to_wcm2(0.0214).unwrap(),
            7.510223e14,
            max_relative = 1e-6
        );
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            field_to_intensity(-0.1, 0.5),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            field_to_intensity(0.1, 1.5),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            field_to_intensity(0.1, -0.1),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            intensity_to_field(-1e-9, 0.5),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            intensity_au_to_wcm2(-1.0),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            intensity_wcm2_to_au(-1.0),
            Err(Error::Domain { .. })
        ));
    }
}
