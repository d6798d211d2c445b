//! Dark / bright / intermediate classification through the field operator.
//!
//! The brightness `β` of a state is `‖E|ψ⟩‖ / ‖ψ‖` with `E = Σ_m e^{iφ_m} a_m`.
//! Since `E†E ≤ M Σ_m a_m†a_m`, the bound `β ≤ √(M⟨N⟩)` holds for every
//! state and is attained by the bright family (all photons in the collective
//! mode aligned with the detector). That bound is `β_max`. For one photon it
//! is `√M`, and for the two-mode `N`-photon bright state it is `√(2N)`.
//!
//! Coherent states are eigenstates of every `a_m`, so their brightness is
//! computed analytically per unit amplitude, `|Σ_m e^{i(θ_m+φ_m)}|/√M`.
//!
//! Nothing here looks at a collective basis: labels are basis-free.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{ModePhases, StateVector};
use crate::states::{single_photon_state, CoherentSpec};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Label {
    Dark,
    Bright,
    Intermediate,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Dark => "Dark",
            Label::Bright => "Bright",
            Label::Intermediate => "Intermediate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub beta: f64,
    pub beta_max: f64,
    pub label: Label,
    pub tol: f64,
}

impl Classification {
    fn from_beta(beta: f64, beta_max: f64, tol: f64) -> Self {
        let label = if beta < tol * beta_max {
            Label::Dark
        } else if beta > (1.0 - tol) * beta_max {
            Label::Bright
        } else {
            Label::Intermediate
        };
        Self {
            beta,
            beta_max,
            label,
            tol,
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "tolerance must lie in (0, 0.5), got {tol}"
        )))
    }
}

pub fn classify_fock(state: &StateVector, detection: &ModePhases, tol: f64) -> Result<Classification> {
    check_tol(tol)?;
    let norm = state.norm();
    if norm == 0.0 {
        return Err(Error::Degenerate("zero-norm state".into()));
    }
    let mean_photons = state.mean_photon_number();
    if mean_photons == 0.0 {
        return Err(Error::Vacuum);
    }
    let beta = state.apply_field(detection)?.norm() / norm;
    let beta_max = (state.modes() as f64 * mean_photons).sqrt();
    Ok(Classification::from_beta(beta, beta_max, tol))
}

/// Brightness of the coherent family per unit amplitude.
pub fn coherent_beta(phases: &ModePhases, detection: &ModePhases) -> Result<f64> {
    if phases.modes() != detection.modes() {
        return Err(Error::DimensionMismatch {
            expected: phases.modes(),
            found: detection.modes(),
        });
    }
    let sum: Complex64 = (0..phases.modes())
        .map(|m| phases.phasor(m) * detection.phasor(m))
        .sum();
    Ok(sum.norm() / (phases.modes() as f64).sqrt())
}

pub fn classify_coherent(spec: &CoherentSpec, detection: &ModePhases, tol: f64) -> Result<Classification> {
    check_tol(tol)?;
    spec.validate()?;
    if spec.alpha.norm() == 0.0 {
        return Err(Error::Vacuum);
    }
    let beta = coherent_beta(&spec.phases, detection)?;
    Ok(Classification::from_beta(beta, (spec.modes() as f64).sqrt(), tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SinglePhoton,
    Coherent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanPoint {
    pub phi: f64,
    pub classification: Classification,
}

/// Classifies the locked family `Φ_k = 2πk/grid_points`, `k = 0..grid_points`,
/// at zero detection phases. Mode phases are reduced in integer arithmetic, so
/// when `M` divides `grid_points` the dark phases `2πK/M` are hit exactly.
pub fn scan_phase(modes: usize, family: Family, grid_points: usize, tol: f64) -> Result<Vec<ScanPoint>> {
    check_tol(tol)?;
    if modes < 2 {
        return Err(Error::Degenerate(format!(
            "phase scan needs at least 2 modes, got {modes}"
        )));
    }
    if grid_points < 2 * modes {
        return Err(Error::InvalidInput(format!(
            "grid of {grid_points} points cannot resolve {modes} modes (need at least {})",
            2 * modes
        )));
    }
    let detection = ModePhases::zeros(modes);
    (0..grid_points)
        .map(|k| {
            let phases = ModePhases::locked_fraction(modes, k as i64, grid_points as u64)?;
            let classification = match family {
                Family::SinglePhoton => classify_fock(&single_photon_state(&phases)?, &detection, tol)?,
                Family::Coherent => {
                    let spec = CoherentSpec::new(Complex64::new(1.0, 0.0), phases);
                    classify_coherent(&spec, &detection, tol)?
                }
            };
            Ok(ScanPoint {
                phi: std::f64::consts::TAU * k as f64 / grid_points as f64,
                classification,
            })
        })
        .collect()
}
