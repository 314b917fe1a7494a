//! Batch front end behind the `wro` binary: job documents in, reports,
//! verification ledgers, CSV grids and SVG plots out.
//!
//! Exit codes: 0 success, 1 input or precondition error, 2 numerical failure
//! (including failed verification checks), 3 a report with an unknown set.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::factorization_summary;
use crate::classify::{
    classify_job, point_spectrum_candidates, CircularSet, Component, SetName, SpectrumReport,
    Status,
};
use crate::ergodic::group_rotation_radius;
use crate::error::{Result, WroError};
use crate::oracle::{
    adapted_radii, bloch_norm, bloch_norm_closed_form, build_truncation,
    check_smoothing_identity, monomial_norms, pseudospectrum_scan, resolvent_gaps,
    scaled_norm, singular_sequence_residual, truncation_rank, NormTag, PseudospectrumGrid,
    BLOCH_CONSTANT_CLAIM,
};
use crate::weights::{
    cis_turns, parse_job_inputs, parse_weight_rotation, JobInputs, RotationAngle, SpaceSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wro", version, about = "Spectra of weighted rotation operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the spectra of a job and write the report JSON.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Classify, then cross-check numerically; writes a pass/fail ledger.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Resolvent-gap scan of a finite section; writes re,im,gap CSV.
    Scan {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Render a report JSON or a grid CSV as SVG.
    Plot {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Grid CSV to overlay on a report.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// Print the spectral radius of wU on C(T) for the job's rotation.
    Radius {
        #[arg(short, long)]
        input: PathBuf,
    },
}

/// Numerical parameters of a job document (the optional `params` key).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobParams {
    /// Truncation orders for the resolvent-gap trend.
    pub n_ladder: Vec<usize>,
    /// Points per circle in the trend checks.
    pub trend_points: usize,
    pub rank_order: usize,
    pub residual_m: Vec<usize>,
    pub scan_order: usize,
    pub scan_angles: usize,
    pub asymptotic_m: u64,
    pub smoothing_eps: f64,
    pub smoothing_n: usize,
}

impl Default for JobParams {
    fn default() -> Self {
        JobParams {
            n_ladder: vec![64, 128, 256],
            trend_points: 8,
            rank_order: 64,
            residual_m: vec![4, 16, 64],
            scan_order: 128,
            scan_angles: 64,
            asymptotic_m: 10_000,
            smoothing_eps: 0.5,
            smoothing_n: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobDocument {
    pub inputs: JobInputs,
    pub params: JobParams,
}

pub fn parse_job(doc: &Value) -> Result<JobDocument> {
    let inputs = parse_job_inputs(doc)?;
    let params = match doc.get("params") {
        Some(p) => serde_json::from_value(p.clone())
            .map_err(|e| WroError::Parse(format!("params: {e}")))?,
        None => JobParams::default(),
    };
    if params.n_ladder.len() < 2 || params.trend_points == 0 || params.scan_angles == 0 {
        return Err(WroError::Precondition(
            "params need at least two truncation orders and nonempty grids".into(),
        ));
    }
    Ok(JobDocument { inputs, params })
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| WroError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| WroError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| WroError::Parse(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)
        .map_err(|e| WroError::Numerical(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Run one command; errors are reported on stderr and mapped to exit codes.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Classify { input, output } => cmd_classify(&input, &output),
        Command::Verify { input, output } => cmd_verify(&input, &output),
        Command::Scan { input, output } => cmd_scan(&input, &output),
        Command::Plot {
            input,
            output,
            grid,
        } => cmd_plot(&input, &output, grid.as_deref()),
        Command::Radius { input } => cmd_radius(&input).map(|r| {
            println!("{r}");
            EXIT_OK
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn report_exit_code(report: &SpectrumReport) -> i32 {
    if report.has_unknown() {
        EXIT_PARTIAL
    } else {
        EXIT_OK
    }
}

pub fn cmd_classify(input: &Path, output: &Path) -> Result<i32> {
    let job = parse_job(&read_json(input)?)?;
    let report = classify_job(&job.inputs)?;
    write_text(output, &pretty(&report)?)?;
    Ok(report_exit_code(&report))
}

pub fn cmd_verify(input: &Path, output: &Path) -> Result<i32> {
    let job = parse_job(&read_json(input)?)?;
    let ledger = verify(&job)?;
    write_text(output, &pretty(&ledger)?)?;
    Ok(if ledger.passed { EXIT_OK } else { EXIT_NUMERICAL })
}

pub fn cmd_scan(input: &Path, output: &Path) -> Result<i32> {
    let job = parse_job(&read_json(input)?)?;
    let grid = scan(&job)?;
    let mut buf = Vec::new();
    grid.write_csv(&mut buf)?;
    fs::write(output, buf).map_err(|source| WroError::Io {
        path: output.display().to_string(),
        source,
    })?;
    Ok(EXIT_OK)
}

pub fn cmd_plot(input: &Path, output: &Path, grid: Option<&Path>) -> Result<i32> {
    let text = read_text(input)?;
    let (report, mut layer) = match serde_json::from_str::<SpectrumReport>(&text) {
        Ok(r) => (Some(r), None),
        Err(json_err) => {
            if text.trim_start().starts_with('{') {
                return Err(WroError::Parse(format!("report JSON: {json_err}")));
            }
            (
                None,
                Some(PseudospectrumGrid::read_csv(text.as_bytes(), NormTag::Euclidean)?),
            )
        }
    };
    if let Some(g) = grid {
        layer = Some(PseudospectrumGrid::read_csv(
            read_text(g)?.as_bytes(),
            NormTag::Euclidean,
        )?);
    }
    write_text(output, &render_svg(report.as_ref(), layer.as_ref())?)?;
    Ok(EXIT_OK)
}

pub fn cmd_radius(input: &Path) -> Result<f64> {
    let (w, rotation) = parse_weight_rotation(&read_json(input)?)?;
    group_rotation_radius(&w, &rotation)
}

fn single_angle(job: &JobDocument) -> Result<RotationAngle> {
    job.inputs.rotation.single().copied().ok_or_else(|| {
        WroError::Precondition("numerical checks need a single rotation angle".into())
    })
}

/// Resolvent-gap scan on circles adapted to the predicted radii.
pub fn scan(job: &JobDocument) -> Result<PseudospectrumGrid> {
    let alpha = single_angle(job)?;
    let report = classify_job(&job.inputs)?;
    let t = build_truncation(&job.inputs.space, &job.inputs.weight, &alpha, job.params.scan_order)?;
    pseudospectrum_scan(&t, &adapted_radii(&report.predicted_radii()), job.params.scan_angles)
}

/// One verification check with its measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: Value,
    pub expected: Value,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, measured: Value, expected: Value, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            measured,
            expected,
            detail: detail.into(),
        }
    }

    fn errored(name: &str, e: WroError) -> Self {
        Check::new(name, false, Value::Null, Value::Null, format!("error: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationLedger {
    pub inputs_echo: Value,
    pub report: SpectrumReport,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationLedger {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Points at angles (j + 1/2)/count turns on the circle of radius r.
pub fn circle_points(r: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|j| cis_turns((j as f64 + 0.5) / count as f64) * r)
        .collect()
}

/// Classify, then run every numerical check that applies to the space. A
/// failing check does not stop the others.
pub fn verify(job: &JobDocument) -> Result<VerificationLedger> {
    let report = classify_job(&job.inputs)?;
    let space = job.inputs.space;
    let mut checks = Vec::new();
    match space {
        SpaceSpec::Bloch => checks.extend(bloch_checks(job)),
        SpaceSpec::Bergman { p } if p != 2.0 => checks.push(bergman_scaling_check(job, p)),
        _ => {
            monomial_norms(&space, 1)?;
            let alpha = single_angle(job)?;
            checks.extend(matrix_checks(job, &report, &alpha));
            if let SpaceSpec::Bergman { p } = space {
                checks.push(bergman_scaling_check(job, p));
            }
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationLedger {
        inputs_echo: job.inputs.echo(),
        report,
        checks,
        passed,
    })
}

fn matrix_checks(job: &JobDocument, report: &SpectrumReport, alpha: &RotationAngle) -> Vec<Check> {
    let inputs = &job.inputs;
    let p = &job.params;
    let mut out = Vec::new();

    out.push(
        (|| -> Result<Check> {
            let n = p.rank_order;
            let t = build_truncation(&inputs.space, &inputs.weight, alpha, n)?;
            let cands = point_spectrum_candidates(&inputs.weight, alpha, n)?;
            let ok = if cands.is_empty() {
                t.diagonal().iter().all(|z| *z == Complex64::new(0.0, 0.0))
            } else {
                t.diagonal() == cands
            };
            Ok(Check::new(
                "diagonal_law",
                ok,
                json!({ "order": n }),
                json!("diagonal equals alpha^k w(0) exactly"),
                "",
            ))
        })()
        .unwrap_or_else(|e| Check::errored("diagonal_law", e)),
    );

    if let Some(sigma) = report.exact(SetName::Sigma) {
        let radii = sigma.boundary_radii();
        if !radii.is_empty() {
            out.push(trend_checks(job, alpha, sigma, &radii));
            out.push(off_spectrum_check(job, alpha, sigma, &radii));
        }
    }

    if let Some(poly) = inputs.weight.as_polynomial() {
        let fact = factorization_summary(&inputs.weight);
        if let Ok(f) = fact.as_ref().map(|f| f.zeros_on_circle.is_empty().then_some(f)) {
            if let Some(f) = f {
                let n = p.rank_order;
                let expected = n - f.zeros_in_disc.iter().map(|z| z.1).sum::<usize>();
                out.push(
                    build_truncation(&inputs.space, &inputs.weight, alpha, n)
                        .and_then(|t| truncation_rank(&t))
                        .map(|r| {
                            Check::new(
                                "rank",
                                r == expected,
                                json!(r),
                                json!(expected),
                                format!("order {n}, degree {}", poly.degree()),
                            )
                        })
                        .unwrap_or_else(|e| Check::errored("rank", e)),
                );
            }
        }
        if let Some(ap) = report.exact(SetName::SigmaAp) {
            let r = ap.max_radius();
            if r > 0.0 {
                out.push(residual_check(job, Complex64::new(r, 0.0)));
            }
        }
    }

    out.push(
        (|| -> Result<Check> {
            let t = build_truncation(&inputs.space, &inputs.weight, alpha, 16)?;
            let dev = check_smoothing_identity(&t.entries, p.smoothing_eps, p.smoothing_n)?;
            let row_sum = t
                .entries
                .row_iter()
                .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
                .fold(1.0, f64::max);
            let tol = 1e-10 * row_sum.powi(2 * p.smoothing_n as i32 + 1);
            Ok(Check::new(
                "smoothing_identity",
                dev < tol,
                json!(dev),
                json!({ "below": tol }),
                format!("eps {}, n {}, order 16", p.smoothing_eps, p.smoothing_n),
            ))
        })()
        .unwrap_or_else(|e| Check::errored("smoothing_identity", e)),
    );
    out
}

fn gap_table(job: &JobDocument, alpha: &RotationAngle, points: &[Complex64]) -> Result<Vec<Vec<f64>>> {
    job.params
        .n_ladder
        .iter()
        .map(|&n| {
            let t = build_truncation(&job.inputs.space, &job.inputs.weight, alpha, n)?;
            Ok(resolvent_gaps(&t, points))
        })
        .collect()
}

/// On each boundary circle of sigma the gap must strictly decrease along the
/// truncation ladder.
fn trend_checks(job: &JobDocument, alpha: &RotationAngle, _sigma: &CircularSet, radii: &[f64]) -> Check {
    let name = "pseudospectrum_trend_on_spectrum";
    let points: Vec<Complex64> = radii
        .iter()
        .flat_map(|&r| circle_points(r, job.params.trend_points))
        .collect();
    match gap_table(job, alpha, &points) {
        Err(e) => Check::errored(name, e),
        Ok(table) => {
            let mut failures = 0;
            for j in 0..points.len() {
                if !table.windows(2).all(|w| w[1][j] < w[0][j]) {
                    failures += 1;
                }
            }
            Check::new(
                name,
                failures == 0,
                json!({ "orders": job.params.n_ladder, "points": points.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(), "gaps": table }),
                json!("strictly decreasing at every point"),
                format!("{failures} of {} points not strictly decreasing", points.len()),
            )
        }
    }
}

/// At 25% relative distance off each boundary circle (where that lies
/// outside sigma) the gap at the largest order keeps at least half its value
/// at the smallest.
fn off_spectrum_check(job: &JobDocument, alpha: &RotationAngle, sigma: &CircularSet, radii: &[f64]) -> Check {
    let name = "pseudospectrum_off_spectrum";
    let mut off: Vec<f64> = radii
        .iter()
        .flat_map(|&r| [0.75 * r, 1.25 * r])
        .filter(|&r| !sigma.contains_radius(r))
        .collect();
    off.sort_by(f64::total_cmp);
    off.dedup();
    let points: Vec<Complex64> = off
        .iter()
        .flat_map(|&r| circle_points(r, job.params.trend_points))
        .collect();
    match gap_table(job, alpha, &points) {
        Err(e) => Check::errored(name, e),
        Ok(table) => {
            let first = &table[0];
            let last = &table[table.len() - 1];
            let failures = (0..points.len()).filter(|&j| last[j] < 0.5 * first[j]).count();
            Check::new(
                name,
                failures == 0,
                json!({ "orders": job.params.n_ladder, "radii": off, "gaps": table }),
                json!("gap at the largest order >= half the gap at the smallest"),
                format!("{failures} of {} points lost more than half their gap", points.len()),
            )
        }
    }
}

fn residual_check(job: &JobDocument, lambda: Complex64) -> Check {
    let name = "residual_decay";
    let res: Result<Vec<f64>> = job
        .params
        .residual_m
        .iter()
        .map(|&m| {
            singular_sequence_residual(
                &job.inputs.space,
                &job.inputs.weight,
                &job.inputs.rotation,
                lambda,
                m,
                crate::oracle::default_concentration(m),
            )
            .map(|r| r.residual)
        })
        .collect();
    match res {
        Err(e) => Check::errored(name, e),
        Ok(v) => Check::new(
            name,
            v.windows(2).all(|w| w[1] < w[0]),
            json!({ "lambda": [lambda.re, lambda.im], "m": job.params.residual_m, "residuals": v }),
            json!("strictly decreasing in m"),
            "",
        ),
    }
}

fn bloch_checks(job: &JobDocument) -> Vec<Check> {
    let m = job.params.asymptotic_m;
    let numeric = bloch_norm(m);
    let closed = bloch_norm_closed_form(m);
    let rel = ((numeric - closed) / closed).abs();
    let scaled = m as f64 * numeric;
    let claim_rel = ((scaled - BLOCH_CONSTANT_CLAIM) / BLOCH_CONSTANT_CLAIM).abs();
    vec![
        Check::new(
            "bloch_norm_closed_form",
            rel < 1e-9,
            json!(numeric),
            json!(closed),
            format!("m = {m}; sup of (1-r^2)|q_m'| at r = (m-1)/(m+1); relative difference {rel:.3e}"),
        ),
        Check::new(
            "bloch_constant_4_over_e",
            claim_rel < 0.01,
            json!(scaled),
            json!(BLOCH_CONSTANT_CLAIM),
            format!(
                "m ||q_m|| at m = {m}; relative difference {claim_rel:.3e}; ||q_m|| itself tends to 2/e"
            ),
        ),
    ]
}

fn bergman_scaling_check(job: &JobDocument, p: f64) -> Check {
    let name = "bergman_scaling";
    let hi = job.params.asymptotic_m;
    let lo = (hi as f64 * 0.3).round().max(1.0) as u64;
    let space = SpaceSpec::Bergman { p };
    match (scaled_norm(&space, lo), scaled_norm(&space, hi)) {
        (Ok(a), Ok(b)) => {
            let drift = (b.scaled / a.scaled - 1.0).abs();
            Check::new(
                name,
                drift < 0.02,
                json!({ "m": [lo, hi], "scaled": [a.scaled, b.scaled], "drift": drift }),
                json!({ "drift_below": 0.02 }),
                "m^{3/2} ||q_m||_p^p along the ladder",
            )
        }
        (Err(e), _) | (_, Err(e)) => Check::errored(name, e),
    }
}

const CANVAS: f64 = 480.0;
const PLOT_RADIUS: f64 = 200.0;

fn fmt(x: f64) -> String {
    format!("{x:.3}")
}

/// SVG drawing of the predicted sets (sigma filled, residual parts dashed)
/// and, if given, resolvent gaps as a heat layer. Output depends only on the
/// inputs.
pub fn render_svg(report: Option<&SpectrumReport>, grid: Option<&PseudospectrumGrid>) -> Result<String> {
    if report.is_none() && grid.is_none() {
        return Err(WroError::Precondition("nothing to plot".into()));
    }
    let mut extent: f64 = 0.0;
    if let Some(r) = report {
        for e in r.sets.values() {
            extent = extent.max(e.components.max_radius());
        }
    }
    if let Some(g) = grid {
        for s in &g.samples {
            extent = extent.max(s.re.hypot(s.im));
        }
    }
    if !(extent > 0.0) {
        extent = 1.0;
    }
    let scale = PLOT_RADIUS / extent;
    let c = CANVAS / 2.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#,
        w = CANVAS
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<line x1="0" y1="{c}" x2="{w}" y2="{c}" stroke="#cccccc"/><line x1="{c}" y1="0" x2="{c}" y2="{w}" stroke="#cccccc"/>"##,
        c = fmt(c),
        w = fmt(CANVAS)
    );

    if let Some(g) = grid {
        let logs: Vec<f64> = g.samples.iter().map(|s| s.gap.max(1e-300).log10()).collect();
        let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let _ = writeln!(svg, r#"<g id="gap-layer">"#);
        for (s, l) in g.samples.iter().zip(&logs) {
            let t = if hi > lo { (l - lo) / (hi - lo) } else { 0.5 };
            let _ = writeln!(
                svg,
                r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#,
                fmt(c + s.re * scale),
                fmt(c - s.im * scale),
                heat(t)
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    if let Some(r) = report {
        let sigma = r.get(SetName::Sigma);
        let _ = writeln!(svg, r#"<g id="sigma">"#);
        let (parts, tentative) = match &sigma.status {
            Status::Bounds { upper, .. } => (upper.components(), true),
            _ => (sigma.components.components(), false),
        };
        for comp in parts {
            draw_component(&mut svg, comp, c, scale, tentative);
        }
        let _ = writeln!(svg, "</g>");
        let _ = writeln!(svg, r#"<g id="sigma_r">"#);
        for comp in r.get(SetName::SigmaR).components.components() {
            let _ = writeln!(
                svg,
                r##"<circle cx="{c}" cy="{c}" r="{}" fill="none" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
                fmt(comp.outer_radius() * scale),
                c = fmt(c)
            );
            if comp.inner_radius() > 0.0 {
                let _ = writeln!(
                    svg,
                    r##"<circle cx="{c}" cy="{c}" r="{}" fill="none" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
                    fmt(comp.inner_radius() * scale),
                    c = fmt(c)
                );
            }
        }
        let _ = writeln!(svg, "</g>");
        let mut y = 16.0;
        for (name, e) in &r.sets {
            let status = match e.status {
                Status::Exact => "exact",
                Status::Bounds { .. } => "bounds",
                Status::Unknown => "unknown",
            };
            let comps: Vec<String> = e.components.components().iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                svg,
                r#"<text x="6" y="{}" font-family="monospace" font-size="10">{}: {} ({})</text>"#,
                fmt(y),
                name.as_str(),
                xml_escape(&comps.join(" u ")),
                status
            );
            y += 12.0;
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn draw_component(svg: &mut String, comp: Component, cx: f64, scale: f64, tentative: bool) {
    let dash = if tentative { r#" stroke-dasharray="2 3""# } else { "" };
    let c = fmt(cx);
    match comp {
        Component::Origin => {
            let _ = writeln!(svg, r##"<circle cx="{c}" cy="{c}" r="3" fill="#1f4e79"/>"##);
        }
        Component::Circle(r) => {
            let _ = writeln!(
                svg,
                r##"<circle cx="{c}" cy="{c}" r="{}" fill="none" stroke="#1f4e79" stroke-width="2"{dash}/>"##,
                fmt(r * scale)
            );
        }
        Component::OpenDisc(r) | Component::ClosedDisc(r) => {
            let stroke = if matches!(comp, Component::OpenDisc(_)) {
                r#" stroke-dasharray="6 4""#
            } else {
                dash
            };
            let _ = writeln!(
                svg,
                r##"<circle cx="{c}" cy="{c}" r="{}" fill="#1f4e79" fill-opacity="0.25" stroke="#1f4e79" stroke-width="2"{stroke}/>"##,
                fmt(r * scale)
            );
        }
        Component::ClosedAnnulus(a, b)
        | Component::OpenAnnulus(a, b)
        | Component::AnnulusInnerClosed(a, b)
        | Component::AnnulusOuterClosed(a, b) => {
            let (ra, rb) = (a * scale, b * scale);
            let _ = writeln!(
                svg,
                r##"<path d="M {} {c} A {rb} {rb} 0 1 0 {} {c} A {rb} {rb} 0 1 0 {} {c} Z M {} {c} A {ra} {ra} 0 1 1 {} {c} A {ra} {ra} 0 1 1 {} {c} Z" fill="#1f4e79" fill-opacity="0.25" fill-rule="evenodd" stroke="#1f4e79" stroke-width="2"{dash}/>"##,
                fmt(cx - rb),
                fmt(cx + rb),
                fmt(cx - rb),
                fmt(cx - ra),
                fmt(cx + ra),
                fmt(cx - ra),
                rb = fmt(rb),
                ra = fmt(ra)
            );
        }
    }
}

/// Blue (small gap) to yellow (large gap).
fn heat(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(48.0, 253.0), lerp(18.0, 231.0), lerp(130.0, 37.0))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
