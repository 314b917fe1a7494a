//! Acceptance suite. Each test prints one `PASS` or `FAIL` line straight to
//! stderr (bypassing the test harness capture) and then asserts the outcome.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wro::analysis::{geometric_mean, geometric_mean_quadrature};
use wro::classify::{classify, point_spectrum_candidates, residual_index, Component, Index, SetName};
use wro::cli::{parse_job, verify};
use wro::ergodic::{ap_membership, group_rotation_radius, polynomial_radius_cases, Verdict};
use wro::oracle::{
    build_truncation, check_smoothing_identity, default_concentration, scaled_norm,
    singular_sequence_residual, BLOCH_CONSTANT_CLAIM,
};
use wro::poly::Polynomial;
use wro::weights::{Rotation, RotationAngle, SpaceSpec, Weight};

fn report(id: u32, title: &str, pass: bool, detail: &str, elapsed: Duration) {
    let line = format!(
        "{} criterion {id}: {title} ({detail}; {:.2} s)\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

/// Random polynomial weight of degree 1..=6 given by its roots, none within
/// `gap` of the unit circle. Returns the weight, the roots and the leading
/// coefficient.
fn random_weight(rng: &mut ChaCha8Rng, gap: f64) -> (Weight, Vec<Complex64>, Complex64) {
    let degree = rng.gen_range(1..=6);
    let roots: Vec<Complex64> = (0..degree)
        .map(|_| loop {
            let m: f64 = rng.gen_range(0.05..3.0);
            if (m - 1.0).abs() >= gap {
                break Complex64::from_polar(m, rng.gen_range(0.0..std::f64::consts::TAU));
            }
        })
        .collect();
    let lead = Complex64::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..6.28));
    let w = Weight::from_polynomial(Polynomial::from_roots(lead, &roots)).unwrap();
    (w, roots, lead)
}

fn golden() -> Rotation {
    RotationAngle::golden().into()
}

const BERGMAN: SpaceSpec = SpaceSpec::Bergman { p: 2.0 };

#[test]
fn criterion_01_jensen_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (w, roots, lead) = random_weight(&mut rng, 1e-3);
        let jensen: f64 = lead.norm() * roots.iter().map(|z| z.norm().max(1.0)).product::<f64>();
        let quad = geometric_mean_quadrature(&w, 1.0).unwrap();
        worst = worst.max(((quad - jensen) / jensen).abs());
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-10 && elapsed < Duration::from_secs(5);
    report(1, "Jensen agreement", pass, &format!("max relative difference {worst:.2e}"), elapsed);
    assert!(pass);
}

#[test]
fn criterion_02_three_way_radius() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (w, roots, lead) = random_weight(&mut rng, 1e-3);
        let g = geometric_mean(&w, 1.0).unwrap();
        let r = group_rotation_radius(&w, &golden()).unwrap();
        let moduli: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
        let c = lead.norm() * polynomial_radius_cases(&moduli).unwrap();
        worst = worst.max(((g - r) / g).abs()).max(((g - c) / g).abs());
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-8 && elapsed < Duration::from_secs(30);
    report(2, "three-way radius agreement", pass, &format!("max relative difference {worst:.2e}"), elapsed);
    assert!(pass);
}

#[test]
fn criterion_03_root_of_unity_radius() {
    let start = Instant::now();
    let w = Weight::from_real(&[-2.0, 1.0]).unwrap();
    let alpha = RotationAngle::root_of_unity(1, 3).unwrap();
    let r = group_rotation_radius(&w, &alpha.into()).unwrap();
    // independent grid maximum of |w(t) w(at) w(a^2 t)|^{1/3}
    let a = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let two = Complex64::new(2.0, 0.0);
    let grid = (0..100_000)
        .map(|j| {
            let t = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 100_000.0);
            ((t - two) * (a * t - two) * (a * a * t - two)).norm().cbrt()
        })
        .fold(0.0, f64::max);
    let closed = 9f64.cbrt();
    let elapsed = start.elapsed();
    let pass = (r - closed).abs() < 1e-6 && (grid - closed).abs() < 1e-6 && elapsed < Duration::from_secs(1);
    report(
        3,
        "root-of-unity radius",
        pass,
        &format!("radius {r:.12}, grid oracle {grid:.12}, 9^(1/3) = {closed:.12}"),
        elapsed,
    );
    assert!(pass);
}

fn job_for(coeffs: &str, space: &str) -> wro::cli::JobDocument {
    let v: serde_json::Value = serde_json::from_str(&format!(
        r#"{{"weight":{{"type":"poly","coeffs":{coeffs}}},"rotation":{{"kind":"named","name":"golden"}},"space":{space}}}"#
    ))
    .unwrap();
    parse_job(&v).unwrap()
}

#[test]
fn criterion_04_bergman_trichotomy() {
    let start = Instant::now();
    let cases = [
        ("[[-2,0],[1,0]]", "Thm 7.3(1)", vec![Component::Circle(2.0)], vec![Component::Circle(2.0)]),
        (
            "[[1,0],[-2.5,0],[1,0]]",
            "Thm 7.3(2)",
            vec![Component::ClosedDisc(2.0)],
            vec![Component::Circle(2.0)],
        ),
        ("[[-1,0],[1,0]]", "Thm 7.3(3)", vec![Component::ClosedDisc(1.0)], vec![Component::ClosedDisc(1.0)]),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (k, (coeffs, cite, sigma, ap)) in cases.iter().enumerate() {
        let job = job_for(coeffs, r#"{"variant":"bergman","p":2}"#);
        let r = classify(&job.inputs.space, &job.inputs.weight, &job.inputs.rotation).unwrap();
        let ok_sets = r.get(SetName::Sigma).components.components() == *sigma
            && r.get(SetName::SigmaAp).components.components() == *ap
            && r.get(SetName::Sigma).citation == *cite;
        let idx = residual_index(&job.inputs.space, &job.inputs.weight, &job.inputs.rotation);
        let ok_index = if k == 1 { matches!(idx, Ok(Index::Finite(-1))) } else { idx.is_err() };
        let ledger = verify(&job).unwrap();
        let check = |name: &str| ledger.check(name).map(|c| c.passed);
        let on = check("pseudospectrum_trend_on_spectrum") == Some(true);
        let off = check("pseudospectrum_off_spectrum") == Some(true);
        let rank = k != 1 || check("rank") == Some(true);
        if !(ok_sets && ok_index && on && off && rank) {
            pass = false;
        }
        let trend_detail = ledger
            .check("pseudospectrum_trend_on_spectrum")
            .map(|c| c.detail.clone())
            .unwrap_or_default();
        notes.push(format!(
            "case {}: sets {ok_sets}, index {ok_index}, trend {on} [{trend_detail}], off-spectrum {off}, rank {rank}",
            k + 1
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    report(4, "Bergman trichotomy end to end", pass, &notes.join("; "), elapsed);
    assert!(pass, "{notes:?}");
}

#[test]
fn criterion_05_smoothing_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spaces = [SpaceSpec::HardyBanach, BERGMAN, SpaceSpec::EllOneA];
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let order = rng.gen_range(8..=64);
        let degree = rng.gen_range(0..=4);
        let mut c: Vec<Complex64> = (0..=degree)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        // keep ||T|| <= 1 so powers up to T^15 stay on the scale of the tolerance
        let total: f64 = c.iter().map(|z| z.norm()).sum();
        for z in &mut c {
            *z /= total;
        }
        let w = Weight::polynomial(c).unwrap();
        let t = build_truncation(&spaces[i % 3], &w, &RotationAngle::golden(), order).unwrap();
        for eps in [0.1, 0.5, 0.9] {
            for n in [1, 3, 7] {
                worst = worst.max(check_smoothing_identity(&t.entries, eps, n).unwrap());
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-10 && elapsed < Duration::from_secs(10);
    report(5, "smoothing identity", pass, &format!("max deviation {worst:.2e}"), elapsed);
    assert!(pass);
}

#[test]
fn criterion_06_norm_asymptotics() {
    let start = Instant::now();
    let bloch = scaled_norm(&SpaceSpec::Bloch, 10_000).unwrap();
    let bloch_rel = ((bloch.scaled - BLOCH_CONSTANT_CLAIM) / BLOCH_CONSTANT_CLAIM).abs();
    let lo = scaled_norm(&BERGMAN, 3_000).unwrap();
    let hi = scaled_norm(&BERGMAN, 10_000).unwrap();
    let drift = (hi.scaled / lo.scaled - 1.0).abs();
    let elapsed = start.elapsed();
    let bloch_ok = bloch_rel < 0.01;
    let bergman_ok = drift < 0.02;
    let pass = bloch_ok && bergman_ok && elapsed < Duration::from_secs(60);
    report(
        6,
        "Bloch and Bergman norm asymptotics",
        pass,
        &format!(
            "Bloch: m||q_m|| = {:.6} at m = 10^4 vs 4/e = {BLOCH_CONSTANT_CLAIM:.6}, relative {bloch_rel:.3e} [{}], ||q_m|| = {:.9} vs 2/e = {:.9}; Bergman: drift {drift:.3e} [{}]",
            bloch.scaled,
            if bloch_ok { "ok" } else { "fails" },
            bloch.norm,
            2.0 / std::f64::consts::E,
            if bergman_ok { "ok" } else { "fails" },
        ),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn criterion_07_orbit_test_matches_classifier() {
    let start = Instant::now();
    let w = Weight::from_real(&[1.0, -2.5, 1.0]).unwrap();
    let alpha = RotationAngle::golden();
    let verdict = |l: f64| ap_membership(&w, &alpha, Complex64::new(l, 0.0), 200, 4096).unwrap().verdict;
    let inside = verdict(2.0);
    let outside: Vec<Verdict> = [1.2, 1.5, 2.5].iter().map(|&l| verdict(l)).collect();
    let r = classify(&BERGMAN, &w, &golden()).unwrap();
    let ap_ok = r.get(SetName::SigmaAp).components.components() == vec![Component::Circle(2.0)];
    let elapsed = start.elapsed();
    let pass = inside == Verdict::CertifiedIn
        && outside.iter().all(|v| *v == Verdict::CertifiedOut)
        && ap_ok
        && elapsed < Duration::from_secs(30);
    report(
        7,
        "orbit test vs classifier",
        pass,
        &format!("lambda = 2: {inside:?}; 1.2, 1.5, 2.5: {outside:?}; sigma_ap = circle(2): {ap_ok}"),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn criterion_08_point_spectrum_candidates() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let alpha = RotationAngle::golden();
    let mut mismatches = 0;
    for _ in 0..100 {
        let degree = rng.gen_range(0..=6);
        let c: Vec<Complex64> = (0..=degree)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let w = Weight::polynomial(c.clone()).unwrap();
        let n = rng.gen_range(4..=48);
        let t = build_truncation(&BERGMAN, &w, &alpha, n).unwrap();
        if t.diagonal() != point_spectrum_candidates(&w, &alpha, n).unwrap() {
            mismatches += 1;
        }
        let mut c0 = c;
        c0[0] = Complex64::new(0.0, 0.0);
        c0.push(Complex64::new(1.0, 0.0));
        let z = Weight::polynomial(c0).unwrap();
        if !point_spectrum_candidates(&z, &alpha, n).unwrap().is_empty() {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && elapsed < Duration::from_secs(5);
    report(8, "point spectrum candidate law", pass, &format!("{mismatches} mismatches"), elapsed);
    assert!(pass);
}

#[test]
fn criterion_09_residual_decay() {
    let start = Instant::now();
    let w = Weight::from_real(&[-1.0, 1.0]).unwrap();
    let residuals: Vec<f64> = [4, 16, 64]
        .iter()
        .map(|&m| {
            singular_sequence_residual(&BERGMAN, &w, &golden(), Complex64::new(1.0, 0.0), m, default_concentration(m))
                .unwrap()
                .residual
        })
        .collect();
    let elapsed = start.elapsed();
    let pass = residuals.windows(2).all(|p| p[1] < p[0]) && elapsed < Duration::from_secs(120);
    report(9, "residual decay", pass, &format!("residuals {residuals:.4?} at m = 4, 16, 64"), elapsed);
    assert!(pass);
}

fn run_wro(args: &[&str], threads: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wro"))
        .args(args)
        .env("WRO_THREADS", threads)
        .output()
        .expect("wro runs")
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("wro-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/jobs/bergman_case2.json");
    let job = job.to_str().unwrap();
    let mut outputs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    let mut codes = Vec::new();
    for (run, threads) in ["1", "8", "1", "8"].iter().enumerate() {
        let p = |name: &str| dir.join(format!("{run}-{name}")).to_str().unwrap().to_string();
        let (report, grid, svg) = (p("report.json"), p("grid.csv"), p("plot.svg"));
        codes.push(run_wro(&["classify", "-i", job, "-o", &report], threads).status.code());
        codes.push(run_wro(&["scan", "-i", job, "-o", &grid], threads).status.code());
        codes.push(run_wro(&["plot", "-i", &report, "-o", &svg, "--grid", &grid], threads).status.code());
        outputs.push((std::fs::read(&report).unwrap(), std::fs::read(&svg).unwrap()));
    }
    let _ = std::fs::remove_dir_all(&dir);
    let identical = outputs.windows(2).all(|w| w[0] == w[1]);
    let ok_codes = codes.iter().all(|c| *c == Some(0));
    let elapsed = start.elapsed();
    let pass = identical && ok_codes;
    report(
        10,
        "determinism across runs and WRO_THREADS",
        pass,
        &format!("4 runs (threads 1, 8, 1, 8) byte-identical: {identical}; exit codes {codes:?}"),
        elapsed,
    );
    assert!(pass);
}
