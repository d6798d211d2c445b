//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1` to see them.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use pulsestream::basis::{BasisKind, CollectiveBasis};
use pulsestream::cavity::CavityDesign;
use pulsestream::classify::{classify_coherent, classify_fock, scan_phase, Family, Label, DEFAULT_TOL};
use pulsestream::dark::{bright_to_dark_ratio, count_pi_phase_dark, enumerate_sign_states};
use pulsestream::fock::ModePhases;
use pulsestream::pulse::{
    amplitude_closed, amplitude_direct, intensity_series, pulse_metrics, unlocked_intensity, LaserField,
};
use pulsestream::states::{
    coherent_bright_dark_expansion, coherent_state, matched_phases, single_photon_state, two_mode_bright,
    two_mode_dark, Branch, CoherentSpec,
};

fn verdict(id: u32, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("AC{id} PASS  {name}");
    } else {
        println!("AC{id} FAIL  {name}");
        for f in failures {
            println!("      - {f}");
        }
    }
    assert!(failures.is_empty(), "AC{id} failed: {failures:?}");
}

#[test]
fn ac1_closed_form_equals_direct_sum() {
    const GRID: usize = 10_000;
    const REL_TOL: f64 = 1e-10;
    let start = Instant::now();
    let mut failures = Vec::new();
    for n_side in [1, 5, 50] {
        let field = LaserField::new(n_side, 1.0, 1.0, 0.0).unwrap();
        let bound = REL_TOL * field.e0 * field.m_tot() as f64;
        let worst = (0..GRID)
            .map(|k| {
                let t = field.period() * k as f64 / GRID as f64;
                (amplitude_closed(&field, t) - amplitude_direct(&field, t).re).abs()
            })
            .fold(0.0, f64::max);
        if worst > bound {
            failures.push(format!("n_side={n_side}: max error {worst:e} > {bound:e}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("runtime {elapsed:?} >= 1 s"));
    }
    verdict(
        1,
        "closed form matches direct mode sum (n_side 1, 5, 50; 1e4 points)",
        &failures,
    );
}

#[test]
fn ac2_dark_phase_law() {
    let mut failures = Vec::new();
    for modes in 2..=8 {
        for family in [Family::SinglePhoton, Family::Coherent] {
            let grid = 4 * modes;
            let scan = scan_phase(modes, family, grid, DEFAULT_TOL).unwrap();
            let dark: Vec<f64> = scan
                .iter()
                .filter(|p| p.classification.label == Label::Dark)
                .map(|p| p.phi)
                .collect();
            let bright = scan
                .iter()
                .filter(|p| p.classification.label == Label::Bright)
                .count();
            if dark.len() != modes - 1 || bright != 1 {
                failures.push(format!(
                    "M={modes} {family:?}: {} dark, {bright} bright",
                    dark.len()
                ));
            }
            let expected: Vec<f64> = (1..modes).map(|k| TAU * k as f64 / modes as f64).collect();
            let matches = dark.len() == expected.len()
                && dark.iter().zip(&expected).all(|(a, b)| (a - b).abs() < 1e-15);
            if !matches {
                failures.push(format!("M={modes} {family:?}: dark phases {dark:?}"));
            }
            if modes == 4 && dark != [PI / 2.0, PI, 3.0 * PI / 2.0] {
                failures.push(format!(
                    "M=4 {family:?}: dark set {dark:?} is not {{π/2, π, 3π/2}}"
                ));
            }
        }
    }
    verdict(
        2,
        "M−1 dark and 1 bright phase per period, M = 2..8, both families",
        &failures,
    );
}

#[test]
fn ac3_sqrt_m_coupling() {
    let mut failures = Vec::new();
    for modes in [2usize, 4, 8, 16] {
        let det = ModePhases::zeros(modes);
        let phases = ModePhases::zeros(modes);
        let fock = classify_fock(&single_photon_state(&phases).unwrap(), &det, DEFAULT_TOL).unwrap();
        let coh = classify_coherent(
            &CoherentSpec::new(Complex64::new(1.0, 0.0), phases),
            &det,
            DEFAULT_TOL,
        )
        .unwrap();
        let root = (modes as f64).sqrt();
        for (family, c) in [("single-photon", fock), ("coherent", coh)] {
            if (c.beta - root).abs() > 1e-12 || c.label != Label::Bright {
                failures.push(format!("M={modes} {family}: beta {} label {}", c.beta, c.label));
            }
        }
    }
    verdict(3, "bright coupling equals √M (M = 2, 4, 8, 16)", &failures);
}

#[test]
fn ac4_dark_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let expected = [1u64, 3, 10, 35, 126, 462, 1716, 6435];
    for (i, want) in expected.iter().enumerate() {
        let modes = 2 * (i + 1);
        let analytic = count_pi_phase_dark(modes).unwrap();
        let listed = enumerate_sign_states(modes).unwrap().len() as u64;
        if analytic != BigUint::from(*want) || listed != *want {
            failures.push(format!(
                "M={modes}: analytic {analytic}, enumerated {listed}, expected {want}"
            ));
        }
    }
    for modes in (1..=15).step_by(2) {
        let listed = enumerate_sign_states(modes).unwrap().len();
        if listed != 0 {
            failures.push(format!("odd M={modes}: enumerated {listed}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:?} >= 10 s"));
    }
    verdict(
        4,
        "closed-form dark count equals enumeration (even M ≤ 16, odd M ≤ 15 empty)",
        &failures,
    );
}

#[test]
fn ac5_two_mode_number_states() {
    let mut failures = Vec::new();
    for total in 0..=6u32 {
        let b = two_mode_bright(total, 0.0).unwrap();
        let d = two_mode_dark(total, 0.0).unwrap();
        if (b.norm() - 1.0).abs() > 1e-12 || (d.norm() - 1.0).abs() > 1e-12 {
            failures.push(format!("N={total}: norms {} {}", b.norm(), d.norm()));
        }
        let overlap = d.inner(&b).unwrap().norm();
        if total > 0 && overlap > 1e-12 {
            failures.push(format!("N={total}: ⟨dark|bright⟩ = {overlap:e}"));
        }
        if total > 0 {
            for phi in [0.0, 0.9] {
                let residual = two_mode_dark(total, phi)
                    .unwrap()
                    .apply_field(&matched_phases(phi).unwrap())
                    .unwrap()
                    .norm();
                if residual > 1e-12 {
                    failures.push(format!("N={total} Φ̃={phi}: ‖E|dark⟩‖ = {residual:e}"));
                }
            }
        }
    }
    for alpha in [Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8)] {
        let bright = coherent_bright_dark_expansion(alpha, 6, Branch::Bright).unwrap();
        let dark = coherent_bright_dark_expansion(alpha, 6, Branch::Dark).unwrap();
        let aligned = coherent_state(&CoherentSpec::new(alpha, ModePhases::zeros(2))).unwrap();
        let opposed = coherent_state(&CoherentSpec::new(alpha, ModePhases::locked(2, PI).unwrap())).unwrap();
        for total in 0..=6u32 {
            let closed = (-alpha.norm_sqr()).exp() * 2f64.powi(total as i32).sqrt() * alpha.powu(total)
                / (1..=total).map(f64::from).product::<f64>().sqrt();
            let pb = two_mode_bright(total, 0.0).unwrap().inner(&aligned).unwrap();
            let pd = two_mode_dark(total, 0.0).unwrap().inner(&opposed).unwrap();
            if (pb - closed).norm() > 1e-10 || (bright[total as usize] - pb).norm() > 1e-10 {
                failures.push(format!("α={alpha} N={total}: bright projection {pb} vs {closed}"));
            }
            // |α,−α⟩ projects with an extra (−1)^N; magnitudes follow the closed form
            if (dark[total as usize] - pd).norm() > 1e-10 || (pd.norm() - closed.norm()).abs() > 1e-10 {
                failures.push(format!(
                    "α={alpha} N={total}: dark projection {pd} vs {}",
                    dark[total as usize]
                ));
            }
        }
    }
    verdict(
        5,
        "two-mode bright/dark states: norms, orthogonality, annihilation, coherent expansion",
        &failures,
    );
}

#[test]
fn ac6_collective_basis() {
    let mut failures = Vec::new();
    for modes in 1..=64usize {
        let mut kinds = vec![BasisKind::Dft];
        if modes.is_power_of_two() {
            kinds.push(BasisKind::Hadamard);
        }
        for kind in kinds {
            let defect = CollectiveBasis::new(modes, kind).unwrap().unitarity_defect();
            if defect > 1e-12 {
                failures.push(format!("M={modes} {kind:?}: ‖OO† − I‖ = {defect:e}"));
            }
        }
    }
    let basis = CollectiveBasis::new(4, BasisKind::Hadamard).unwrap();
    for k in 0..64 {
        let phi = TAU * k as f64 / 64.0;
        let s = single_photon_state(&ModePhases::locked(4, -phi).unwrap()).unwrap();
        let c = basis.to_collective(&s, &ModePhases::zeros(4)).unwrap();
        let (ch, sh, cf, sf) = ((phi / 2.0).cos(), (phi / 2.0).sin(), phi.cos(), phi.sin());
        let want = [(ch * cf).abs(), (sh * cf).abs(), (ch * sf).abs(), (sh * sf).abs()];
        for j in 0..4 {
            if (c[j].norm() - want[j]).abs() > 1e-10 {
                failures.push(format!("Φ={phi}: |c{}| = {} vs {}", j + 1, c[j].norm(), want[j]));
            }
        }
    }
    verdict(
        6,
        "collective basis unitary (M ≤ 64) and four-mode coefficient magnitudes",
        &failures,
    );
}

#[test]
fn ac7_cavity_reproduction() {
    let mut failures = Vec::new();
    let report = CavityDesign::from_lab_units(780.0, 30.0, 250.0, 1.0, 45.0, 1.0)
        .ratio_report()
        .unwrap();
    if report.measured_ratio != 4.5e-5 {
        failures.push(format!("measured ratio {:e}", report.measured_ratio));
    }
    if !(10_000..100_000).contains(&report.mode_count) {
        failures.push(format!("mode count {}", report.mode_count));
    }
    if !(1e-5..1e-4).contains(&report.theory_ratio) {
        failures.push(format!("theory ratio {:e}", report.theory_ratio));
    }
    if !report.orders_match {
        failures.push("orders do not match".into());
    }
    println!(
        "      M = {}, theory 1/(M−1) = {:.4e}, measured = {:.4e}",
        report.mode_count, report.theory_ratio, report.measured_ratio
    );
    verdict(
        7,
        "cavity estimate: same order of magnitude as the light/no-light ratio",
        &failures,
    );
}

#[test]
fn ac8_duty_ratio_and_unlocked_phases() {
    let mut failures = Vec::new();
    let mut previous = f64::INFINITY;
    for n_side in [8u32, 16, 32, 64] {
        let field = LaserField::new(n_side, 1.0, 1.0, 0.0).unwrap();
        let m_tot = field.m_tot() as f64;
        let samples = 16 * field.m_tot() as usize;
        let metrics = pulse_metrics(&intensity_series(&field, samples, 1).unwrap()).unwrap();
        let duty = metrics.duty_ratio;
        if !(0.5 / m_tot..=2.0 / m_tot).contains(&duty) {
            failures.push(format!(
                "n_side={n_side}: duty ratio {duty} outside [{}, {}]",
                0.5 / m_tot,
                2.0 / m_tot
            ));
        }
        if duty >= previous {
            failures.push(format!(
                "n_side={n_side}: duty ratio {duty} did not decrease from {previous}"
            ));
        }
        previous = duty;

        let locked_peak = field.peak_intensity();
        for seed in 0..10u64 {
            let series = unlocked_intensity(&field, seed, 8 * field.m_tot() as usize, 100).unwrap();
            let mean = series.points.iter().map(|p| p.1).sum::<f64>() / series.points.len() as f64;
            let peak = series.points.iter().map(|p| p.1).fold(0.0, f64::max);
            if (mean / (field.e0 * field.e0 * m_tot) - 1.0).abs() > 0.05 {
                failures.push(format!("n_side={n_side} seed={seed}: mean {mean} vs {m_tot}"));
            }
            if peak >= 0.5 * locked_peak {
                failures.push(format!(
                    "n_side={n_side} seed={seed}: unlocked peak {peak} vs locked {locked_peak}"
                ));
            }
        }
    }
    verdict(
        8,
        "duty ratio within [0.5, 2]/M_tot and shrinking; unlocked mean M_tot, peak < 50%",
        &failures,
    );
}

#[test]
fn ac9_cavity_ratio_is_bright_to_dark_ratio() {
    let design = CavityDesign::ti_sapphire_example();
    let report = design.ratio_report().unwrap();
    let direct = bright_to_dark_ratio(design.mode_count().unwrap()).unwrap();
    let mut failures = Vec::new();
    if report.theory_ratio.to_bits() != direct.to_bits() {
        failures.push(format!("{:e} != {:e}", report.theory_ratio, direct));
    }
    verdict(9, "cavity theory ratio is bit-identical to 1/(M−1)", &failures);
}
