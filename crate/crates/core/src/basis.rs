//! Change of basis between mode operators `a_m` and collective operators
//! `c_j = Σ_m O[j][m] a_m`.
//!
//! Row 0 is always the symmetric (bright-supporting) mode with uniform entries
//! `1/√M`. Two constructions are provided: Sylvester–Hadamard for power-of-two
//! mode counts and the unitary DFT for any mode count.
//!
//! Collective single-photon kets are `|j′⟩ = c_j†|0⟩` dressed with reference
//! phases, `|j′⟩ = Σ_m e^{−iρ_m} conj(O[j][m]) |m⟩`, so the coefficient of a
//! state on `|j′⟩` is `Σ_m O[j][m] e^{iρ_m} ψ_m`. For the real Hadamard matrix
//! the conjugate is a no-op.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{ModePhases, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Hadamard,
    Dft,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveBasis {
    modes: usize,
    kind: BasisKind,
    matrix: Vec<Vec<Complex64>>,
}

impl CollectiveBasis {
    pub fn new(modes: usize, kind: BasisKind) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Degenerate(
                "collective basis needs at least one mode".into(),
            ));
        }
        let scale = 1.0 / (modes as f64).sqrt();
        let matrix = match kind {
            BasisKind::Hadamard => {
                if !modes.is_power_of_two() {
                    return Err(Error::UnsupportedBasis { modes });
                }
                // Sylvester order: H[j][m] = (-1)^{popcount(j & m)}
                (0..modes)
                    .map(|j| {
                        (0..modes)
                            .map(|m| {
                                let sign = if (j & m).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                                Complex64::new(sign * scale, 0.0)
                            })
                            .collect()
                    })
                    .collect()
            }
            BasisKind::Dft => (0..modes)
                .map(|j| {
                    (0..modes)
                        .map(|m| {
                            // reduce j·m mod M before scaling so row entries are exact roots
                            let k = (j * m) % modes;
                            Complex64::from_polar(scale, TAU * k as f64 / modes as f64)
                        })
                        .collect()
                })
                .collect(),
        };
        Ok(Self { modes, kind, matrix })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row][col]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.matrix
    }

    /// `O·v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v.len())?;
        Ok(self
            .matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(o, x)| o * x).sum())
            .collect())
    }

    /// `O†·v`.
    pub fn apply_adjoint(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v.len())?;
        Ok((0..self.modes)
            .map(|m| (0..self.modes).map(|j| self.matrix[j][m].conj() * v[j]).sum())
            .collect())
    }

    /// Largest entry of `|O·O† − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.modes {
            for k in 0..self.modes {
                let dot: Complex64 = (0..self.modes)
                    .map(|m| self.matrix[i][m] * self.matrix[k][m].conj())
                    .sum();
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.modes {
            Err(Error::DimensionMismatch {
                expected: self.modes,
                found: len,
            })
        } else {
            Ok(())
        }
    }

    /// Coefficients of a single-photon state on the collective kets `|j′⟩`.
    pub fn to_collective(&self, state: &StateVector, reference: &ModePhases) -> Result<Vec<Complex64>> {
        self.check_len(state.modes())?;
        self.check_len(reference.modes())?;
        let mut amps = vec![Complex64::default(); self.modes];
        for (occ, a) in state.terms() {
            let photons = occ.total();
            if photons != 1 {
                return Err(Error::Sector { photons });
            }
            let mode = occ.as_slice().iter().position(|&n| n == 1).unwrap_or_default();
            amps[mode] = a * reference.phasor(mode);
        }
        self.apply(&amps)
    }

    /// Inverse of [`to_collective`](Self::to_collective).
    pub fn from_collective(&self, coefficients: &[Complex64], reference: &ModePhases) -> Result<StateVector> {
        self.check_len(reference.modes())?;
        let amps = self.apply_adjoint(coefficients)?;
        StateVector::from_terms(
            self.modes,
            1,
            amps.into_iter().enumerate().map(|(m, a)| {
                let mut occ = vec![0; self.modes];
                occ[m] = 1;
                (occ, a * reference.phasor(m).conj())
            }),
        )
    }
}

pub fn build_basis(modes: usize, kind: BasisKind) -> Result<CollectiveBasis> {
    CollectiveBasis::new(modes, kind)
}

pub fn to_collective(
    state: &StateVector,
    basis: &CollectiveBasis,
    reference: &ModePhases,
) -> Result<Vec<Complex64>> {
    basis.to_collective(state, reference)
}

pub fn from_collective(
    coefficients: &[Complex64],
    basis: &CollectiveBasis,
    reference: &ModePhases,
) -> Result<StateVector> {
    basis.from_collective(coefficients, reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn assert_matrix(basis: &CollectiveBasis, expected: &[&[f64]], scale: f64) {
        for (j, row) in expected.iter().enumerate() {
            for (m, &v) in row.iter().enumerate() {
                let e = basis.entry(j, m);
                assert!(
                    (e - Complex64::new(v * scale, 0.0)).norm() < 1e-15,
                    "O[{j}][{m}] = {e}"
                );
            }
        }
    }

    #[test]
    fn hadamard_two() {
        let b = CollectiveBasis::new(2, BasisKind::Hadamard).unwrap();
        assert_matrix(&b, &[&[1.0, 1.0], &[1.0, -1.0]], FRAC_1_SQRT_2);
    }

    #[test]
    fn hadamard_four_rows() {
        let b = CollectiveBasis::new(4, BasisKind::Hadamard).unwrap();
        assert_matrix(
            &b,
            &[
                &[1.0, 1.0, 1.0, 1.0],
                &[1.0, -1.0, 1.0, -1.0],
                &[1.0, 1.0, -1.0, -1.0],
                &[1.0, -1.0, -1.0, 1.0],
            ],
            0.5,
        );
    }

    #[test]
    fn dft_two_equals_hadamard_two() {
        let d = CollectiveBasis::new(2, BasisKind::Dft).unwrap();
        let h = CollectiveBasis::new(2, BasisKind::Hadamard).unwrap();
        for j in 0..2 {
            for m in 0..2 {
                assert!((d.entry(j, m) - h.entry(j, m)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn hadamard_rejects_non_power_of_two() {
        let err = CollectiveBasis::new(6, BasisKind::Hadamard).unwrap_err();
        assert_eq!(err, Error::UnsupportedBasis { modes: 6 });
        assert!(err.to_string().contains("DFT"));
        assert!(CollectiveBasis::new(6, BasisKind::Dft).is_ok());
    }

    #[test]
    fn single_mode_basis_is_trivial() {
        let b = CollectiveBasis::new(1, BasisKind::Hadamard).unwrap();
        assert_eq!(b.entry(0, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn multi_photon_input_is_rejected() {
        let b = CollectiveBasis::new(2, BasisKind::Dft).unwrap();
        let s = StateVector::basis(&[1, 1], 2).unwrap();
        assert_eq!(
            b.to_collective(&s, &ModePhases::zeros(2)).unwrap_err(),
            Error::Sector { photons: 2 }
        );
    }

    #[test]
    fn reference_phases_enter_coefficients() {
        let b = CollectiveBasis::new(2, BasisKind::Hadamard).unwrap();
        // |ψ⟩ = e^{-iρ_1}|0,1⟩ rotated back by the reference gives a real vector
        let rho = 0.7;
        let s = StateVector::from_terms(2, 1, [(vec![0, 1], Complex64::from_polar(1.0, -rho))]).unwrap();
        let reference = ModePhases::new(vec![0.0, rho]).unwrap();
        let c = b.to_collective(&s, &reference).unwrap();
        assert!((c[0] - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((c[1] - Complex64::new(-FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let back = b.from_collective(&c, &reference).unwrap();
        assert!((back.inner(&s).unwrap().norm() - 1.0).abs() < 1e-12);
    }
}
