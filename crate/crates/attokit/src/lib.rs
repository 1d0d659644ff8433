//! Desk-scale modeling toolkit for tunneling time in attosecond
//! strong-field ionization.
//!
//! The crate computes, all in atomic units with attosecond mirrors at the
//! boundary:
//!
//! - [`units`] — atomic-unit constants and lab-unit conversions, including
//!   the elliptic intensity–field relation I = F²(1 + ε²);
//! - [`barrier`] — the one-dimensional tunneling-barrier geometry
//!   (entry/exit points, width, height, atomic field strength);
//! - [`ttime`] — Keldysh parameter and regime, the symmetric tunneling
//!   time and its parts, the F_a-referenced delay τ_num with closed-form
//!   and geometric-series routes, and reference-point shifts;
//! - [`photonics`] — laser-wave-packet momentum and mass quantities
//!   (effective mass, photon counts, Compton vs. collective transfer,
//!   ponderomotive energy) and the published-table generator;
//! - [`data`] — ingestion of measured delay datasets and residual/χ²
//!   comparison against the model curves.
//!
//! Everything is pure and `Send + Sync`; results depend only on the
//! arguments.

pub mod barrier;
pub mod data;
pub mod error;
pub mod photonics;
pub mod ttime;
pub mod units;

pub use barrier::{AtomSpec, BarrierGeometry};
pub use data::{ExperimentPoint, FitReport};
pub use error::Error;
pub use photonics::PhotonStats;
pub use ttime::{LaserSpec, ReferenceShift, Regime, TTimeResult, TimeModel};
