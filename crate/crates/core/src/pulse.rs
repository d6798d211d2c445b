//! Classical mode-locked field.
//!
//! The locked amplitude is `A(t′) = Σ_{m=−n..n} E₀ e^{imΔωt′}` with `n = n_side`,
//! i.e. `M_tot = 2n + 1` modes. In closed form
//! `A(t′) = E₀ sin[(M+1)Δωt′/2] / sin[Δωt′/2]` with `M = 2n`. The shifted time
//! is `t′ = t + φ/Δω` for lab time `t`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::sig;

/// Below this `|sin(Δωt′/2)|` the closed form switches to its limit.
pub const SINGULARITY_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaserField {
    pub n_side: u32,
    pub e0: f64,
    pub delta_omega: f64,
    pub phi: f64,
    /// Carrier frequency; factored out of `A(t)` and never used in intensities.
    pub omega0: f64,
}

impl LaserField {
    pub fn new(n_side: u32, e0: f64, delta_omega: f64, phi: f64) -> Result<Self> {
        let field = Self {
            n_side,
            e0,
            delta_omega,
            phi,
            omega0: 0.0,
        };
        field.validate()?;
        Ok(field)
    }

    pub fn with_carrier(mut self, omega0: f64) -> Self {
        self.omega0 = omega0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_side < 1 {
            return Err(Error::InvalidInput("n_side must be at least 1".into()));
        }
        if !(self.delta_omega > 0.0 && self.delta_omega.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "delta_omega must be positive and finite, got {}",
                self.delta_omega
            )));
        }
        if !(self.e0.is_finite() && self.phi.is_finite()) {
            return Err(Error::InvalidInput("E0 and phi must be finite".into()));
        }
        Ok(())
    }

    /// `M = 2·n_side`, the exponent count in the closed form.
    pub fn m(&self) -> u32 {
        2 * self.n_side
    }

    /// Number of interfering modes, `M + 1`.
    pub fn m_tot(&self) -> u32 {
        2 * self.n_side + 1
    }

    /// Round-trip time `τ = 2π/Δω`.
    pub fn period(&self) -> f64 {
        TAU / self.delta_omega
    }

    pub fn t_prime(&self, t: f64) -> f64 {
        t + self.phi / self.delta_omega
    }

    pub fn peak_intensity(&self) -> f64 {
        let m = self.m_tot() as f64;
        self.e0 * self.e0 * m * m
    }

    pub fn mean_intensity(&self) -> f64 {
        self.e0 * self.e0 * self.m_tot() as f64
    }
}

/// Closed-form locked amplitude. The half-angle is reduced modulo π first so
/// that points near later pulse peaks keep full relative precision.
pub fn amplitude_closed(field: &LaserField, t_prime: f64) -> f64 {
    let half = field.delta_omega * t_prime / 2.0;
    let x = half - (half / PI).round() * PI;
    let m_tot = field.m_tot() as f64;
    let den = x.sin();
    if den.abs() < SINGULARITY_GUARD {
        // sin((M+1)x)/sin(x) → M+1; the sign flip (−1)^{Mn} vanishes for even M
        return field.e0 * m_tot;
    }
    field.e0 * (m_tot * x).sin() / den
}

/// Direct mode sum `Σ_m E₀ e^{imΔωt′}`.
pub fn amplitude_direct(field: &LaserField, t_prime: f64) -> Complex64 {
    let n = field.n_side as i64;
    let w = field.delta_omega * t_prime;
    (-n..=n)
        .map(|m| Complex64::from_polar(field.e0, m as f64 * w))
        .sum()
}

pub fn intensity(field: &LaserField, t_prime: f64) -> f64 {
    let a = amplitude_closed(field, t_prime);
    a * a
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntensitySeries {
    pub n_side: u32,
    pub m_tot: u32,
    pub e0: f64,
    pub delta_omega: f64,
    pub phi: f64,
    pub samples_per_period: usize,
    pub periods: usize,
    /// Set when the grid is too coarse to resolve the main lobe.
    pub resolution_warning: Option<String>,
    /// `(t′, I)` pairs on a uniform grid starting at lab time `t = 0`.
    pub points: Vec<(f64, f64)>,
}

impl IntensitySeries {
    pub fn dt(&self) -> f64 {
        TAU / self.delta_omega / self.samples_per_period as f64
    }

    pub fn period(&self) -> f64 {
        TAU / self.delta_omega
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# n_side={} m_tot={} delta_omega={} phi={} e0={} samples_per_period={} periods={}\n",
            self.n_side,
            self.m_tot,
            sig(self.delta_omega),
            sig(self.phi),
            sig(self.e0),
            self.samples_per_period,
            self.periods
        ));
        out.push_str("t_prime,intensity\n");
        for (t, i) in &self.points {
            out.push_str(&format!("{},{}\n", sig(*t), sig(*i)));
        }
        out
    }
}

fn resolution_warning(field: &LaserField, samples_per_period: usize) -> Option<String> {
    let needed = 4 * field.m_tot() as usize;
    (samples_per_period < needed).then(|| {
        format!(
            "{samples_per_period} samples per period under-resolve the main lobe (need at least {needed})"
        )
    })
}

fn sample_grid(
    field: &LaserField,
    samples_per_period: usize,
    periods: usize,
    eval: impl Fn(f64) -> f64,
) -> Result<IntensitySeries> {
    field.validate()?;
    if samples_per_period == 0 || periods == 0 {
        return Err(Error::InvalidInput(
            "series needs at least one sample and one period".into(),
        ));
    }
    let dt = field.period() / samples_per_period as f64;
    let t0 = field.t_prime(0.0);
    let points = (0..samples_per_period * periods)
        .map(|k| {
            let t = t0 + k as f64 * dt;
            (t, eval(t))
        })
        .collect();
    Ok(IntensitySeries {
        n_side: field.n_side,
        m_tot: field.m_tot(),
        e0: field.e0,
        delta_omega: field.delta_omega,
        phi: field.phi,
        samples_per_period,
        periods,
        resolution_warning: resolution_warning(field, samples_per_period),
        points,
    })
}

/// Locked intensity `A(t′)²` sampled uniformly.
pub fn intensity_series(
    field: &LaserField,
    samples_per_period: usize,
    periods: usize,
) -> Result<IntensitySeries> {
    sample_grid(field, samples_per_period, periods, |t| intensity(field, t))
}

/// Mode phases uniform in `[0, 2π)`, drawn once per mode from a seeded stream.
pub fn random_mode_phases(field: &LaserField, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..field.m_tot()).map(|_| rng.gen_range(0.0..TAU)).collect()
}

/// Intensity with independent random mode phases (no locking).
pub fn unlocked_intensity(
    field: &LaserField,
    seed: u64,
    samples_per_period: usize,
    periods: usize,
) -> Result<IntensitySeries> {
    let phases = random_mode_phases(field, seed);
    let n = field.n_side as i64;
    sample_grid(field, samples_per_period, periods, |t| {
        let w = field.delta_omega * t;
        let a: Complex64 = (-n..=n)
            .zip(&phases)
            .map(|(m, &p)| Complex64::from_polar(field.e0, m as f64 * w + p))
            .sum();
        a.norm_sqr()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseMetrics {
    pub fwhm: f64,
    pub period: f64,
    pub duty_ratio: f64,
    pub peak: f64,
}

/// FWHM of the main lobe from linearly interpolated half-maximum crossings.
/// The first period is treated as periodic so a lobe straddling the grid edge
/// is measured whole.
pub fn pulse_metrics(series: &IntensitySeries) -> Result<PulseMetrics> {
    let n = series.samples_per_period;
    if series.points.len() < n || n < 3 {
        return Err(Error::Resolution("series must cover one full period".into()));
    }
    let values: Vec<f64> = series.points[..n].iter().map(|p| p.1).collect();
    let (peak_idx, &peak) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty period");
    let half = peak / 2.0;
    let at = |i: isize| values[i.rem_euclid(n as isize) as usize];

    // walk outwards to the first samples at or below half maximum
    let mut right = 1isize;
    while at(peak_idx as isize + right) > half {
        right += 1;
        if right as usize >= n / 2 {
            return Err(Error::Resolution(
                "no half-maximum crossing after the peak".into(),
            ));
        }
    }
    let mut left = 1isize;
    while at(peak_idx as isize - left) > half {
        left += 1;
        if left as usize >= n / 2 {
            return Err(Error::Resolution(
                "no half-maximum crossing before the peak".into(),
            ));
        }
    }
    if right == 1 && left == 1 {
        return Err(Error::Resolution(
            "main lobe narrower than the sample spacing".into(),
        ));
    }

    let p = peak_idx as isize;
    let frac = |inside: f64, outside: f64| (inside - half) / (inside - outside);
    let r_in = at(p + right - 1);
    let r_out = at(p + right);
    let l_in = at(p - left + 1);
    let l_out = at(p - left);
    let width_samples = (right - 1) as f64 + frac(r_in, r_out) + (left - 1) as f64 + frac(l_in, l_out);

    let period = series.period();
    let fwhm = width_samples * series.dt();
    Ok(PulseMetrics {
        fwhm,
        period,
        duty_ratio: fwhm / period,
        peak,
    })
}
