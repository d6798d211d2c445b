//! Constructors for the multi-slit and two-mode states.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{ModePhases, StateVector};

/// Default Poisson tail tolerance for coherent-state truncation.
pub const DEFAULT_CUTOFF_PROB: f64 = 1e-12;
/// Default ceiling on the photon cutoff a coherent truncation may pick.
pub const DEFAULT_PHOTON_CAP: u32 = 64;
/// Largest Fock expansion `coherent_state` will materialize.
pub const MAX_COHERENT_TERMS: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Bright,
    Dark,
}

/// `(1/√M) Σ_m e^{−iθ_m} |m⟩`.
pub fn single_photon_state(phases: &ModePhases) -> Result<StateVector> {
    let modes = phases.modes();
    if modes < 2 {
        return Err(Error::Degenerate(format!(
            "single-photon interference needs at least 2 modes, got {modes}"
        )));
    }
    let amp = 1.0 / (modes as f64).sqrt();
    StateVector::from_terms(
        modes,
        1,
        (0..modes).map(|m| {
            let mut occ = vec![0; modes];
            occ[m] = 1;
            (occ, phases.phasor(m).conj() * amp)
        }),
    )
}

/// Multimode coherent state `⊗_m |e^{iθ_m} α⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSpec {
    pub alpha: Complex64,
    pub phases: ModePhases,
    pub cutoff_prob: f64,
    pub photon_cap: u32,
}

impl CoherentSpec {
    pub fn new(alpha: Complex64, phases: ModePhases) -> Self {
        Self {
            alpha,
            phases,
            cutoff_prob: DEFAULT_CUTOFF_PROB,
            photon_cap: DEFAULT_PHOTON_CAP,
        }
    }

    pub fn with_cutoff_prob(mut self, p: f64) -> Self {
        self.cutoff_prob = p;
        self
    }

    pub fn with_photon_cap(mut self, cap: u32) -> Self {
        self.photon_cap = cap;
        self
    }

    pub fn modes(&self) -> usize {
        self.phases.modes()
    }

    /// Per-mode coherent amplitudes `e^{iθ_m} α`.
    pub fn mode_amplitudes(&self) -> Vec<Complex64> {
        (0..self.modes())
            .map(|m| self.phases.phasor(m) * self.alpha)
            .collect()
    }

    /// Mean total photon number `M|α|²`.
    pub fn mean_photons(&self) -> f64 {
        self.modes() as f64 * self.alpha.norm_sqr()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(Error::InvalidInput("coherent amplitude must be finite".into()));
        }
        if !(self.cutoff_prob > 0.0 && self.cutoff_prob < 1.0) {
            return Err(Error::InvalidInput(format!(
                "cutoff_prob must lie in (0, 1), got {}",
                self.cutoff_prob
            )));
        }
        Ok(())
    }

    /// Smallest total-photon cutoff whose Poisson tail is below `cutoff_prob`.
    pub fn required_cutoff(&self) -> u32 {
        poisson_cutoff(self.mean_photons(), self.cutoff_prob)
    }
}

/// `Σ_{n>cutoff} e^{−λ} λⁿ/n!`, summed directly so small tails keep their
/// relative precision.
pub fn poisson_tail(mean: f64, cutoff: u32) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let mut ln_term = -mean;
    for n in 1..=cutoff + 1 {
        ln_term += mean.ln() - (n as f64).ln();
    }
    let mut term = ln_term.exp();
    let mut tail = 0.0;
    let mut n = cutoff + 1;
    loop {
        tail += term;
        n += 1;
        term *= mean / n as f64;
        // terms decrease geometrically once n > mean
        if (n as f64) > mean && term < tail * 1e-17 {
            break;
        }
    }
    tail
}

pub fn poisson_cutoff(mean: f64, cutoff_prob: f64) -> u32 {
    let mut n = 0;
    while poisson_tail(mean, n) >= cutoff_prob {
        n += 1;
    }
    n
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Fock expansion of the coherent state up to the Poisson-tail cutoff.
pub fn coherent_state(spec: &CoherentSpec) -> Result<StateVector> {
    spec.validate()?;
    let modes = spec.modes();
    let cutoff = spec.required_cutoff();
    if cutoff > spec.photon_cap {
        return Err(Error::Cutoff {
            required: cutoff,
            cap: spec.photon_cap,
        });
    }
    let n_terms = binomial(cutoff as u64 + modes as u64, modes as u64);
    if n_terms > MAX_COHERENT_TERMS {
        return Err(Error::Resource {
            modes,
            limit: MAX_COHERENT_TERMS as usize,
        });
    }

    let betas = spec.mode_amplitudes();
    // per-mode single-mode amplitudes β^n/√(n!) for n = 0..=cutoff
    let ladders: Vec<Vec<Complex64>> = betas
        .iter()
        .map(|&b| {
            let mut v = Vec::with_capacity(cutoff as usize + 1);
            let mut a = Complex64::new(1.0, 0.0);
            v.push(a);
            for n in 1..=cutoff {
                a = a * b / (n as f64).sqrt();
                v.push(a);
            }
            v
        })
        .collect();
    let envelope = (-spec.mean_photons() / 2.0).exp();

    let mut terms = Vec::with_capacity(n_terms as usize);
    let mut occ = vec![0u32; modes];
    fill_tuples(&mut occ, 0, cutoff, &mut |o| {
        let amp = o
            .iter()
            .enumerate()
            .fold(Complex64::new(envelope, 0.0), |acc, (m, &n)| {
                acc * ladders[m][n as usize]
            });
        terms.push((o.to_vec(), amp));
    });
    StateVector::from_terms(modes, cutoff, terms)
}

fn fill_tuples(occ: &mut [u32], pos: usize, remaining: u32, visit: &mut impl FnMut(&[u32])) {
    if pos == occ.len() {
        visit(occ);
        return;
    }
    for n in 0..=remaining {
        occ[pos] = n;
        fill_tuples(occ, pos + 1, remaining - n, visit);
    }
    occ[pos] = 0;
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `√(N!/2^N) / √(n!(N−n)!)`, evaluated in log space.
fn two_mode_weight(total: u32, n: u32) -> f64 {
    (0.5 * (ln_factorial(total)
        - ln_factorial(n)
        - ln_factorial(total - n)
        - total as f64 * std::f64::consts::LN_2))
        .exp()
}

fn two_mode_state(total: u32, phi_tilde: f64, branch: Branch) -> Result<StateVector> {
    if !phi_tilde.is_finite() {
        return Err(Error::InvalidInput("phase parameter must be finite".into()));
    }
    let global = match branch {
        Branch::Bright => Complex64::from_polar(1.0, -(total as f64) * phi_tilde),
        Branch::Dark => Complex64::new(1.0, 0.0),
    };
    StateVector::from_terms(
        2,
        total,
        (0..=total).map(|n| {
            let sign = match branch {
                Branch::Dark if n % 2 == 1 => -1.0,
                _ => 1.0,
            };
            let amp = global * Complex64::from_polar(sign * two_mode_weight(total, n), n as f64 * phi_tilde);
            (vec![n, total - n], amp)
        }),
    )
}

/// `N`-photon two-mode bright state
/// `e^{−iNΦ̃} √(N!/2^N) Σ_n e^{inΦ̃}/√(n!(N−n)!) |n, N−n⟩`.
pub fn two_mode_bright(total: u32, phi_tilde: f64) -> Result<StateVector> {
    two_mode_state(total, phi_tilde, Branch::Bright)
}

/// `N`-photon two-mode dark state
/// `√(N!/2^N) Σ_n (−1)^n e^{inΦ̃}/√(n!(N−n)!) |n, N−n⟩`.
pub fn two_mode_dark(total: u32, phi_tilde: f64) -> Result<StateVector> {
    two_mode_state(total, phi_tilde, Branch::Dark)
}

/// Detection phases that are matched to the two-mode states at `Φ̃`.
pub fn matched_phases(phi_tilde: f64) -> Result<ModePhases> {
    ModePhases::new(vec![0.0, phi_tilde])
}

/// Coefficients of `|α, ±α⟩` on the two-mode bright (`+`) or dark (`−`)
/// number states at `Φ̃ = 0`, for `N = 0..=n_max`.
///
/// Bright: `e^{−|α|²} √(2^N) α^N / √(N!)`. Dark: the same with `α → −α`,
/// i.e. an extra `(−1)^N`, which is what projecting `|α, −α⟩` onto the
/// alternating-sign states actually produces.
pub fn coherent_bright_dark_expansion(
    alpha: Complex64,
    n_max: u32,
    branch: Branch,
) -> Result<Vec<Complex64>> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::InvalidInput("coherent amplitude must be finite".into()));
    }
    let step = match branch {
        Branch::Bright => alpha,
        Branch::Dark => -alpha,
    } * std::f64::consts::SQRT_2;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut c = Complex64::new((-alpha.norm_sqr()).exp(), 0.0);
    out.push(c);
    for n in 1..=n_max {
        c = c * step / (n as f64).sqrt();
        out.push(c);
    }
    Ok(out)
}

/// Probability weight of the expansion beyond `n_max`.
pub fn expansion_tail(alpha: Complex64, n_max: u32) -> f64 {
    poisson_tail(2.0 * alpha.norm_sqr(), n_max)
}
