//! Truncated multimode Fock space.
//!
//! States are sparse maps from occupation tuples to complex amplitudes. Every
//! operation returns a new value and prunes amplitudes whose magnitude falls
//! below the state's prune threshold, so zero terms never linger in the map.
//!
//! Mode indices are zero-based throughout: mode `0` is the reference mode.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes with magnitude below this are dropped after every operation.
pub const DEFAULT_PRUNE: f64 = 1e-15;

/// Photon numbers per mode, e.g. `[1, 0, 0, 0]` for one photon in the first mode.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occupation(Vec<u32>);

impl Occupation {
    pub fn new(occ: Vec<u32>) -> Result<Self> {
        if occ.is_empty() {
            return Err(Error::Degenerate(
                "occupation tuple needs at least one mode".into(),
            ));
        }
        Ok(Self(occ))
    }

    /// Single photon in `mode`, vacuum elsewhere.
    pub fn single(modes: usize, mode: usize) -> Result<Self> {
        if mode >= modes {
            return Err(Error::ModeOutOfRange { mode, modes });
        }
        let mut occ = vec![0; modes];
        occ[mode] = 1;
        Ok(Self(occ))
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "⟩")
    }
}

/// Per-mode phases `θ_m`, stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModePhases {
    theta: Vec<f64>,
}

fn reduce(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl ModePhases {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::Degenerate(
                "phase assignment needs at least one mode".into(),
            ));
        }
        if let Some(bad) = theta.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite phase {bad}")));
        }
        Ok(Self {
            theta: theta.into_iter().map(reduce).collect(),
        })
    }

    pub fn zeros(modes: usize) -> Self {
        Self {
            theta: vec![0.0; modes.max(1)],
        }
    }

    /// Locked linear phases `θ_m = m·Φ` with the first mode as reference.
    pub fn locked(modes: usize, phi: f64) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Degenerate(
                "phase assignment needs at least one mode".into(),
            ));
        }
        Self::new((0..modes).map(|m| m as f64 * phi).collect())
    }

    /// Locked phases at `Φ = 2π·numer/denom`, reduced in integer arithmetic so
    /// that exact dark phases carry no accumulated rounding.
    pub fn locked_fraction(modes: usize, numer: i64, denom: u64) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Degenerate(
                "phase assignment needs at least one mode".into(),
            ));
        }
        if denom == 0 {
            return Err(Error::InvalidInput("phase fraction with zero denominator".into()));
        }
        let d = denom as i128;
        let theta = (0..modes)
            .map(|m| {
                let k = (m as i128 * numer as i128).rem_euclid(d);
                TAU * (k as f64) / (denom as f64)
            })
            .collect();
        Ok(Self { theta })
    }

    /// Phases `0` for `+1` and `π` for `-1`.
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        Self::new(
            signs
                .iter()
                .map(|&s| if s < 0 { std::f64::consts::PI } else { 0.0 })
                .collect(),
        )
    }

    pub fn modes(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn phasor(&self, mode: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.theta[mode])
    }
}

/// Pure state in a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    modes: usize,
    cutoff: u32,
    prune: f64,
    terms: BTreeMap<Occupation, Complex64>,
}

impl StateVector {
    /// The zero vector.
    pub fn zero(modes: usize, cutoff: u32) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Degenerate("state needs at least one mode".into()));
        }
        Ok(Self {
            modes,
            cutoff,
            prune: DEFAULT_PRUNE,
            terms: BTreeMap::new(),
        })
    }

    pub fn vacuum(modes: usize, cutoff: u32) -> Result<Self> {
        Self::basis(&vec![0; modes], cutoff)
    }

    pub fn basis(occ: &[u32], cutoff: u32) -> Result<Self> {
        Self::from_terms(occ.len(), cutoff, [(occ.to_vec(), Complex64::new(1.0, 0.0))])
    }

    /// Builds a state from `(occupation, amplitude)` pairs. Repeated tuples
    /// accumulate.
    pub fn from_terms<I>(modes: usize, cutoff: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex64)>,
    {
        let mut state = Self::zero(modes, cutoff)?;
        for (occ, amp) in terms {
            if occ.len() != modes {
                return Err(Error::DimensionMismatch {
                    expected: modes,
                    found: occ.len(),
                });
            }
            let occ = Occupation::new(occ)?;
            if occ.total() > cutoff {
                return Err(Error::Cutoff {
                    required: occ.total(),
                    cap: cutoff,
                });
            }
            if !(amp.re.is_finite() && amp.im.is_finite()) {
                return Err(Error::InvalidInput("non-finite amplitude".into()));
            }
            *state.terms.entry(occ).or_default() += amp;
        }
        state.prune_small();
        Ok(state)
    }

    pub fn with_prune(mut self, threshold: f64) -> Self {
        self.prune = threshold;
        self.prune_small();
        self
    }

    fn prune_small(&mut self) {
        let threshold = self.prune;
        self.terms.retain(|_, a| a.norm() >= threshold);
    }

    fn empty_like(&self) -> Self {
        Self {
            modes: self.modes,
            cutoff: self.cutoff,
            prune: self.prune,
            terms: BTreeMap::new(),
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Number of stored (non-pruned) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, occ: &[u32]) -> Complex64 {
        Occupation::new(occ.to_vec())
            .ok()
            .and_then(|o| self.terms.get(&o).copied())
            .unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Degenerate("cannot normalize the zero vector".into()));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(k, a)| (k.clone(), a * factor)).collect();
        out.prune_small();
        out
    }

    /// `self + factor·other`.
    pub fn add_scaled(&self, factor: Complex64, other: &Self) -> Result<Self> {
        self.check_modes(other.modes)?;
        let mut out = self.clone();
        out.cutoff = self.cutoff.max(other.cutoff);
        for (k, a) in &other.terms {
            *out.terms.entry(k.clone()).or_default() += factor * a;
        }
        out.prune_small();
        Ok(out)
    }

    /// `Some(N)` when every term carries exactly `N` photons.
    pub fn photon_number(&self) -> Option<u32> {
        let mut totals = self.terms.keys().map(Occupation::total);
        let first = totals.next()?;
        totals.all(|t| t == first).then_some(first)
    }

    /// `⟨ψ|N̂|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn mean_photon_number(&self) -> f64 {
        let norm = self.norm_sqr();
        if norm == 0.0 {
            return 0.0;
        }
        self.terms
            .iter()
            .map(|(k, a)| k.total() as f64 * a.norm_sqr())
            .sum::<f64>()
            / norm
    }

    /// Photon-number distribution of one mode, traced over the others.
    pub fn marginal(&self, mode: usize) -> Result<Vec<f64>> {
        self.check_mode(mode)?;
        let mut dist = vec![0.0; self.cutoff as usize + 1];
        for (k, a) in &self.terms {
            dist[k.0[mode] as usize] += a.norm_sqr();
        }
        Ok(dist)
    }

    /// Tensor product `self ⊗ other`; modes of `other` follow those of `self`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self {
            modes: self.modes + other.modes,
            cutoff: self.cutoff + other.cutoff,
            prune: self.prune.min(other.prune),
            terms: BTreeMap::new(),
        };
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                let mut occ = ka.0.clone();
                occ.extend_from_slice(&kb.0);
                out.terms.insert(Occupation(occ), a * b);
            }
        }
        out.prune_small();
        out
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes {
            Err(Error::ModeOutOfRange {
                mode,
                modes: self.modes,
            })
        } else {
            Ok(())
        }
    }

    fn check_modes(&self, modes: usize) -> Result<()> {
        if modes != self.modes {
            Err(Error::DimensionMismatch {
                expected: self.modes,
                found: modes,
            })
        } else {
            Ok(())
        }
    }

    /// Bosonic lowering operator on `mode`: `|…n…⟩ → √n |…n−1…⟩`.
    pub fn annihilate(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let mut out = self.empty_like();
        for (k, a) in &self.terms {
            let n = k.0[mode];
            if n == 0 {
                continue;
            }
            let mut occ = k.0.clone();
            occ[mode] -= 1;
            *out.terms.entry(Occupation(occ)).or_default() += a * (n as f64).sqrt();
        }
        out.prune_small();
        Ok(out)
    }

    /// Bosonic raising operator on `mode`. Terms that would exceed the photon
    /// cutoff are truncated away.
    pub fn create(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let mut out = self.empty_like();
        for (k, a) in &self.terms {
            if k.total() >= self.cutoff {
                continue;
            }
            let n = k.0[mode];
            let mut occ = k.0.clone();
            occ[mode] += 1;
            *out.terms.entry(Occupation(occ)).or_default() += a * ((n + 1) as f64).sqrt();
        }
        out.prune_small();
        Ok(out)
    }

    /// Field operator `E = Σ_m e^{iθ_m} a_m` applied to the state.
    pub fn apply_field(&self, phases: &ModePhases) -> Result<Self> {
        self.check_modes(phases.modes())?;
        let mut out = self.empty_like();
        for (k, a) in &self.terms {
            for (mode, &n) in k.0.iter().enumerate() {
                if n == 0 {
                    continue;
                }
                let mut occ = k.0.clone();
                occ[mode] -= 1;
                *out.terms.entry(Occupation(occ)).or_default() += a * phases.phasor(mode) * (n as f64).sqrt();
            }
        }
        out.prune_small();
        Ok(out)
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_modes(other.modes)?;
        // walk the smaller map
        let (small, large, conj_small) = if self.terms.len() <= other.terms.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = Complex64::default();
        for (k, a) in &small.terms {
            if let Some(b) = large.terms.get(k) {
                acc += if conj_small { a.conj() * b } else { b.conj() * a };
            }
        }
        Ok(acc)
    }
}

pub fn annihilate(state: &StateVector, mode: usize) -> Result<StateVector> {
    state.annihilate(mode)
}

pub fn create(state: &StateVector, mode: usize) -> Result<StateVector> {
    state.create(mode)
}

pub fn apply_field(state: &StateVector, phases: &ModePhases) -> Result<StateVector> {
    state.apply_field(phases)
}

pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.inner(b)
}
