//! Error type shared by the model modules.

/// Errors raised by the physics operations.
///
/// `AboveThreshold` carries the magnitude of the now-imaginary discriminant
/// so callers that want the F ≥ F_a branch can opt into it explicitly.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside the physical domain of the operation.
    #[error("{quantity} = {value} is out of domain ({requirement})")]
    Domain {
        quantity: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// F > F_a: the barrier has vanished and δ_z = sqrt(I_p² − 4 Z_eff F)
    /// is imaginary. Carries |δ_z| = sqrt(4 Z_eff F − I_p²).
    #[error(
        "field {field} au exceeds the atomic field strength {atomic_field} au \
         (above-threshold regime, |delta_z| = {delta_imaginary} au)"
    )]
    AboveThreshold {
        field: f64,
        atomic_field: f64,
        delta_imaginary: f64,
    },

    /// F = 0: the barrier is infinitely wide and the tunneling delay diverges.
    #[error("tunneling delay diverges at zero field")]
    InfiniteDelay,

    /// The Coulomb potential was evaluated at the nucleus.
    #[error("potential is singular at x = 0")]
    Singularity,
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::Domain {
            quantity,
            value,
            requirement,
        }
    }
}
