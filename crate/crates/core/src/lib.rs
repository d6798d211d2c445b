//! Bright and dark collective photon states in multimode interference.
//!
//! The crate builds multimode Fock and coherent states, classifies them by how
//! strongly they couple through the field operator `E = Σ_m e^{iφ_m} a_m`,
//! counts the dark configurations, and simulates the classical mode-locked
//! pulse train whose light/no-light ratio those counts explain.
//!
//! ```
//! use pulsestream::{classify_fock, single_photon_state, Label, ModePhases};
//!
//! let phases = ModePhases::locked(4, std::f64::consts::FRAC_PI_2).unwrap();
//! let state = single_photon_state(&phases).unwrap();
//! let c = classify_fock(&state, &ModePhases::zeros(4), 1e-10).unwrap();
//! assert_eq!(c.label, Label::Dark);
//! ```

pub mod basis;
pub mod cavity;
pub mod classify;
pub mod dark;
pub mod error;
pub mod fock;
pub mod format;
pub mod pulse;
pub mod states;

pub use basis::{build_basis, from_collective, to_collective, BasisKind, CollectiveBasis};
pub use cavity::{CavityDesign, RatioReport};
pub use classify::{
    classify_coherent, classify_fock, scan_phase, Classification, Family, Label, ScanPoint, DEFAULT_TOL,
};
pub use dark::{
    bright_to_dark_ratio, census, count_pi_phase_dark, enumerate_sign_states, locked_dark_phases, DarkCensus,
};
pub use error::{Error, Result};
pub use fock::{annihilate, apply_field, create, inner_product, ModePhases, Occupation, StateVector};
pub use pulse::{
    amplitude_closed, amplitude_direct, intensity_series, pulse_metrics, unlocked_intensity, IntensitySeries,
    LaserField, PulseMetrics,
};
pub use states::{
    coherent_bright_dark_expansion, coherent_state, single_photon_state, two_mode_bright, two_mode_dark,
    Branch, CoherentSpec,
};
