//! Plane-mirror cavity estimate: mode count from gain bandwidth and free
//! spectral range, and the bright-to-dark ratio set against the measured
//! light/no-light duty ratio. All quantities are SI.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dark::bright_to_dark_ratio;
use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Figures quoted for the 780 nm Ti:Sapphire example, reported alongside our
/// own arithmetic.
pub const QUOTED_MODE_COUNT: f64 = 4e4;
pub const QUOTED_RATIO: f64 = 2.5e-5;
pub const QUOTED_GAIN_BANDWIDTH: f64 = 6e13;

pub const NANOMETRE: f64 = 1e-9;
pub const MILLIMETRE: f64 = 1e-3;
pub const NANOSECOND: f64 = 1e-9;
pub const MILLISECOND: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityDesign {
    /// Center wavelength, m.
    pub lambda0: f64,
    /// Gain bandwidth in wavelength, m.
    pub dlambda_g: f64,
    /// Cavity length, m.
    pub length: f64,
    pub n_index: f64,
    /// Pulse duration, s.
    pub pulse_duration: f64,
    /// Pulse repetition period, s.
    pub rep_period: f64,
}

impl CavityDesign {
    /// Converts from the units lab specs are quoted in (nm, mm, ns, ms).
    pub fn from_lab_units(
        lambda0_nm: f64,
        dlambda_nm: f64,
        length_mm: f64,
        n_index: f64,
        pulse_ns: f64,
        rep_ms: f64,
    ) -> Self {
        Self {
            lambda0: lambda0_nm * NANOMETRE,
            dlambda_g: dlambda_nm * NANOMETRE,
            length: length_mm * MILLIMETRE,
            n_index,
            pulse_duration: pulse_ns * NANOSECOND,
            rep_period: rep_ms * MILLISECOND,
        }
    }

    /// 780 nm center, 30 nm gain band, 250 mm cavity, 45 ns pulses at 1 kHz.
    pub fn ti_sapphire_example() -> Self {
        Self::from_lab_units(780.0, 30.0, 250.0, 1.0, 45.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("lambda0", self.lambda0),
            ("dlambda_g", self.dlambda_g),
            ("length", self.length),
            ("pulse_duration", self.pulse_duration),
            ("rep_period", self.rep_period),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Configuration(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if !(self.n_index >= 1.0 && self.n_index.is_finite()) {
            return Err(Error::Configuration(format!(
                "refractive index must be at least 1, got {}",
                self.n_index
            )));
        }
        if self.dlambda_g >= self.lambda0 {
            return Err(Error::Configuration(
                "gain bandwidth must be narrower than the center wavelength".into(),
            ));
        }
        Ok(())
    }

    /// `Δω = πc/(nL)`, rad/s.
    pub fn free_spectral_range(&self) -> f64 {
        PI * SPEED_OF_LIGHT / (self.n_index * self.length)
    }

    /// `Δω_g = 2πcΔλ_g/λ₀²`, rad/s.
    pub fn gain_bandwidth(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT * self.dlambda_g / (self.lambda0 * self.lambda0)
    }

    /// `⌊Δω_g/Δω⌋`.
    pub fn mode_count(&self) -> Result<u64> {
        self.validate()?;
        let m = (self.gain_bandwidth() / self.free_spectral_range()).floor();
        if m < 2.0 {
            return Err(Error::Configuration(format!(
                "only {m} modes fit in the gain band; mode locking needs at least 2"
            )));
        }
        Ok(m as u64)
    }

    pub fn ratio_report(&self) -> Result<RatioReport> {
        self.validate()?;
        if self.pulse_duration >= self.rep_period {
            return Err(Error::Configuration(
                "pulse duration must be shorter than the repetition period".into(),
            ));
        }
        let modes = self.mode_count()?;
        let theory_ratio = bright_to_dark_ratio(modes)?;
        let measured_ratio = self.pulse_duration / self.rep_period;
        Ok(RatioReport {
            delta_omega: self.free_spectral_range(),
            delta_omega_g: self.gain_bandwidth(),
            mode_count: modes,
            theory_ratio,
            measured_ratio,
            orders_match: (theory_ratio / measured_ratio).log10().abs() < 1.0,
            quoted_m: QUOTED_MODE_COUNT,
            quoted_ratio: QUOTED_RATIO,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioReport {
    pub delta_omega: f64,
    pub delta_omega_g: f64,
    #[serde(rename = "M")]
    pub mode_count: u64,
    pub theory_ratio: f64,
    pub measured_ratio: f64,
    pub orders_match: bool,
    #[serde(rename = "quoted_M")]
    pub quoted_m: f64,
    pub quoted_ratio: f64,
}

pub fn free_spectral_range(design: &CavityDesign) -> f64 {
    design.free_spectral_range()
}

pub fn gain_bandwidth(design: &CavityDesign) -> f64 {
    design.gain_bandwidth()
}

pub fn mode_count(design: &CavityDesign) -> Result<u64> {
    design.mode_count()
}

pub fn ratio_report(design: &CavityDesign) -> Result<RatioReport> {
    design.ratio_report()
}
