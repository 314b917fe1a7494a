//! Numerical cross-checks that do not share code paths with the classifier:
//! finite sections of T on normalized monomial bases, resolvent-gap scans,
//! explicit approximate eigenvectors, and norm asymptotics of the peaking
//! functions ((1 + z)/2)^m.

use std::io::{Read, Write};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, SetName};
use crate::ergodic::{ap_membership, Verdict};
use crate::error::{Result, WroError};
use crate::parallel::pool;
use crate::weights::{cis_turns, taylor_coefficients, Rotation, RotationAngle, SpaceSpec, Weight};

/// Largest truncation order handled with dense linear algebra.
pub const MAX_DENSE_ORDER: usize = 4096;
/// Relative radii of the pseudospectrum circles around each predicted radius.
pub const RADIAL_FACTORS: [f64; 5] = [0.5, 0.75, 1.0, 1.25, 1.5];
/// The constant claimed for the limit of m times the Bloch norm of q_m.
pub const BLOCH_CONSTANT_CLAIM: f64 = 4.0 / std::f64::consts::E;
pub const MAX_ASYMPTOTIC_M: u64 = 100_000;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormTag {
    Euclidean,
    Sum,
}

/// Norms of the monomials z^k, k < count, in the coefficient model of a
/// space, and the sequence norm that model uses.
pub fn monomial_norms(space: &SpaceSpec, count: usize) -> Result<(Vec<f64>, NormTag)> {
    use std::f64::consts::PI;
    let norms = match *space {
        SpaceSpec::HardyBanach | SpaceSpec::Hinf => (vec![1.0; count], NormTag::Euclidean),
        SpaceSpec::Bergman { p } if p == 2.0 => (
            (0..count).map(|k| (PI / (k as f64 + 1.0)).sqrt()).collect(),
            NormTag::Euclidean,
        ),
        SpaceSpec::Dirichlet { p } if p == 2.0 => (
            (0..count)
                .map(|k| if k == 0 { 1.0 } else { (PI * k as f64).sqrt() })
                .collect(),
            NormTag::Euclidean,
        ),
        SpaceSpec::EllOneA => (vec![1.0; count], NormTag::Sum),
        _ => {
            return Err(WroError::Unsupported(format!(
                "no monomial-diagonal coefficient model for {}",
                space.name()
            )))
        }
    };
    Ok(norms)
}

/// Finite section of T = wU on the first N normalized monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationMatrix {
    pub entries: DMatrix<Complex64>,
    pub space: SpaceSpec,
    pub norm: NormTag,
}

impl TruncationMatrix {
    pub fn order(&self) -> usize {
        self.entries.nrows()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.entries.diagonal().iter().copied().collect()
    }
}

/// M[n][k] = alpha^k w_{n-k} nu_n / nu_k for k <= n < N.
pub fn build_truncation(
    space: &SpaceSpec,
    w: &Weight,
    alpha: &RotationAngle,
    order: usize,
) -> Result<TruncationMatrix> {
    if order == 0 || order > MAX_DENSE_ORDER {
        return Err(WroError::Precondition(format!(
            "truncation order must lie in 1..={MAX_DENSE_ORDER}"
        )));
    }
    let (nu, norm) = monomial_norms(space, order)?;
    let c = taylor_coefficients(w, order)?;
    let mut m = DMatrix::from_element(order, order, ZERO);
    for k in 0..order {
        let a = alpha.power(k as i64);
        for n in k..order {
            let ratio = nu[n] / nu[k];
            debug_assert!(match space {
                SpaceSpec::Bergman { .. } => ratio <= 1.0,
                SpaceSpec::Dirichlet { .. } => ratio >= 1.0,
                _ => true,
            });
            m[(n, k)] = a * c[n - k] * ratio;
        }
    }
    Ok(TruncationMatrix {
        entries: m,
        space: *space,
        norm,
    })
}

/// 1 / ||(lambda - T_N)^{-1}|| in the model norm; 0 when singular.
pub fn resolvent_gap(t: &TruncationMatrix, lambda: Complex64) -> f64 {
    let n = t.order();
    let mut a = -t.entries.clone();
    for i in 0..n {
        a[(i, i)] += lambda;
    }
    match t.norm {
        NormTag::Euclidean => a.singular_values().min(),
        NormTag::Sum => {
            if (0..n).any(|i| a[(i, i)] == ZERO) {
                return 0.0;
            }
            // lower triangular: forward substitution column by column
            let mut worst: f64 = 0.0;
            let mut x = vec![ZERO; n];
            for j in 0..n {
                x[j] = Complex64::new(1.0, 0.0) / a[(j, j)];
                let mut col = x[j].norm();
                for i in j + 1..n {
                    let mut s = ZERO;
                    for k in j..i {
                        s += a[(i, k)] * x[k];
                    }
                    x[i] = -s / a[(i, i)];
                    col += x[i].norm();
                }
                worst = worst.max(col);
            }
            if worst.is_finite() {
                1.0 / worst
            } else {
                0.0
            }
        }
    }
}

/// Resolvent gaps at the given points, computed in parallel, in input order.
pub fn resolvent_gaps(t: &TruncationMatrix, points: &[Complex64]) -> Vec<f64> {
    pool().install(|| points.par_iter().map(|&l| resolvent_gap(t, l)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapSample {
    pub re: f64,
    pub im: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudospectrumGrid {
    pub norm: NormTag,
    pub samples: Vec<GapSample>,
}

impl PseudospectrumGrid {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for s in &self.samples {
            w.serialize(s).map_err(csv_error)?;
        }
        w.flush().map_err(|e| WroError::Numerical(e.to_string()))
    }

    /// Reads `re,im,gap` rows; the norm is not part of the file.
    pub fn read_csv<R: Read>(input: R, norm: NormTag) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let samples = r
            .deserialize()
            .collect::<std::result::Result<Vec<GapSample>, _>>()
            .map_err(|e| WroError::Parse(format!("grid CSV: {e}")))?;
        if samples.is_empty() {
            return Err(WroError::Parse("grid CSV has no rows".into()));
        }
        Ok(PseudospectrumGrid { norm, samples })
    }
}

fn csv_error(e: csv::Error) -> WroError {
    WroError::Numerical(format!("CSV output: {e}"))
}

/// Radii {0.5, 0.75, 1, 1.25, 1.5} times each positive predicted radius.
pub fn adapted_radii(predicted: &[f64]) -> Vec<f64> {
    let base: Vec<f64> = predicted.iter().copied().filter(|r| *r > 0.0).collect();
    let base = if base.is_empty() { vec![1.0] } else { base };
    let mut out: Vec<f64> = base
        .iter()
        .flat_map(|r| RADIAL_FACTORS.iter().map(move |f| f * r))
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    out
}

/// Resolvent gap on `angles` equally spaced points of each circle.
pub fn pseudospectrum_scan(
    t: &TruncationMatrix,
    radii: &[f64],
    angles: usize,
) -> Result<PseudospectrumGrid> {
    if radii.is_empty() || angles == 0 {
        return Err(WroError::Precondition("pseudospectrum grid is empty".into()));
    }
    let points: Vec<Complex64> = radii
        .iter()
        .flat_map(|&r| (0..angles).map(move |j| cis_turns(j as f64 / angles as f64) * r))
        .collect();
    let gaps = resolvent_gaps(t, &points);
    Ok(PseudospectrumGrid {
        norm: t.norm,
        samples: points
            .iter()
            .zip(gaps)
            .map(|(l, gap)| GapSample {
                re: l.re,
                im: l.im,
                gap,
            })
            .collect(),
    })
}

/// S_n(T, eps) = sum_{j=0}^{2n} (1 - eps)^{|j-n|} T^j.
pub fn smoothing_operator(t: &DMatrix<Complex64>, eps: f64, n: usize) -> DMatrix<Complex64> {
    let mut s = DMatrix::from_element(t.nrows(), t.ncols(), ZERO);
    let mut p = DMatrix::identity(t.nrows(), t.ncols());
    for j in 0..=2 * n {
        s += &p * Complex64::new((1.0 - eps).powi((j as i64 - n as i64).unsigned_abs() as i32), 0.0);
        p = t * p;
    }
    s
}

/// Maximal entrywise deviation between (I - T) S_n(T, eps) and its
/// expansion
/// (1-eps)^n I + eps sum_{j=1}^n (1-eps)^{n-j} T^j
///   - eps sum_{j=1}^n (1-eps)^{j-1} T^{n+j} - (1-eps)^n T^{2n+1}.
pub fn check_smoothing_identity(t: &DMatrix<Complex64>, eps: f64, n: usize) -> Result<f64> {
    smoothing_deviation(t, eps, n, |j| j - 1, n)
}

/// The same comparison with the exponents `j` and `n + 1` in the last two
/// terms. That variant is not an identity; it is kept so tests can show it.
pub fn smoothing_deviation_shifted_exponents(
    t: &DMatrix<Complex64>,
    eps: f64,
    n: usize,
) -> Result<f64> {
    smoothing_deviation(t, eps, n, |j| j, n + 1)
}

fn smoothing_deviation(
    t: &DMatrix<Complex64>,
    eps: f64,
    n: usize,
    tail_exp: impl Fn(usize) -> usize,
    last_exp: usize,
) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(WroError::Precondition("eps must lie in (0, 1)".into()));
    }
    if t.nrows() != t.ncols() {
        return Err(WroError::Precondition("matrix must be square".into()));
    }
    let dim = t.nrows();
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let lhs = (&id - t) * smoothing_operator(t, eps, n);
    let mut pows = vec![id.clone()];
    for j in 1..=2 * n + 1 {
        pows.push(t * &pows[j - 1]);
    }
    let q = 1.0 - eps;
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut rhs = &id * c(q.powi(n as i32));
    for j in 1..=n {
        rhs += &pows[j] * c(eps * q.powi((n - j) as i32));
        rhs -= &pows[n + j] * c(eps * q.powi(tail_exp(j) as i32));
    }
    rhs -= &pows[2 * n + 1] * c(q.powi(last_exp as i32));
    Ok((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Default concentration exponent for the peaking polynomial at smoothing
/// length m.
pub fn default_concentration(m: usize) -> usize {
    16 * m * m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub m: usize,
    pub n: usize,
    pub witness_turns: f64,
    pub residual: f64,
}

fn coefficient_norm(c: &[Complex64], nu: &[f64], tag: NormTag) -> f64 {
    match tag {
        NormTag::Euclidean => c
            .iter()
            .zip(nu)
            .map(|(x, v)| x.norm_sqr() * v * v)
            .sum::<f64>()
            .sqrt(),
        NormTag::Sum => c.iter().zip(nu).map(|(x, v)| x.norm() * v).sum(),
    }
}

/// Coefficients of ((z + k)/2)^n, computed through log-binomials.
fn peaking_coefficients(k: Complex64, n: usize) -> Vec<Complex64> {
    let mut log_binom = 0.0;
    let ln2n = n as f64 * std::f64::consts::LN_2;
    let arg = k.arg();
    (0..=n)
        .map(|j| {
            if j > 0 {
                log_binom += ((n - j + 1) as f64 / j as f64).ln();
            }
            // z^j carries k^{n-j}; |k| = 1
            Complex64::from_polar((log_binom - ln2n).exp(), arg * (n - j) as f64)
        })
        .collect()
}

/// ||T G - lambda G|| / ||G|| for the explicit approximate eigenvector
/// G = S_m(T/lambda, 1/sqrt(m)) U^{-m} Q_n / w'_m(k), where
/// Q_n = ((z + k)/2)^n / ||.||, w' = w / lambda, and k is the base point
/// returned by the orbit test. All arithmetic is exact polynomial arithmetic
/// on Taylor coefficients; nothing is truncated.
pub fn singular_sequence_residual(
    space: &SpaceSpec,
    w: &Weight,
    rotation: &Rotation,
    lambda: Complex64,
    m: usize,
    n: usize,
) -> Result<ResidualRecord> {
    let alpha = *rotation.single().ok_or_else(|| {
        WroError::InvalidRotation("the residual construction needs a single angle".into())
    })?;
    let poly = w.as_polynomial().ok_or_else(|| {
        WroError::Precondition("the residual construction needs a polynomial weight".into())
    })?;
    if m == 0 || n == 0 {
        return Err(WroError::Precondition("m and n must be positive".into()));
    }
    monomial_norms(space, 1)?;
    let report = classify(space, w, rotation)?;
    let ap = &report.get(SetName::SigmaAp).components;
    if !ap.contains(lambda) {
        return Err(WroError::Precondition(format!(
            "lambda = {lambda} is outside the predicted approximate point spectrum"
        )));
    }
    let verdict = ap_membership(w, &alpha, lambda, m.max(8), 4096)?;
    if verdict.verdict != Verdict::CertifiedIn {
        return Err(WroError::WitnessUnavailable(format!(
            "orbit test for |lambda| = {} is {:?}",
            lambda.norm(),
            verdict.verdict
        )));
    }
    let kt = verdict
        .witness_turns
        .ok_or_else(|| WroError::WitnessUnavailable("no base point recorded".into()))?;
    let k = cis_turns(kt);

    let wc: Vec<Complex64> = poly.coeffs().iter().map(|c| c / lambda).collect();
    let d = poly.degree();
    let len = n + 1 + (2 * m + 1) * d;
    let (nu, tag) = monomial_norms(space, len)?;
    let pows: Vec<Complex64> = (0..len as i64).map(|i| alpha.power(i)).collect();

    // w'_m(k) = prod_{i<m} w'(alpha^i k)
    let wm: Complex64 = (0..m as i64)
        .map(|i| poly.eval(cis_turns(alpha.orbit_turns(kt, i))) / lambda)
        .product();
    if wm == ZERO {
        return Err(WroError::Precondition("w'_m(k) vanishes".into()));
    }

    let mut f = peaking_coefficients(k, n);
    let qn = coefficient_norm(&f, &nu, tag);
    for (i, c) in f.iter_mut().enumerate() {
        // U^{-m}: z^i -> alpha^{-m i} z^i
        *c = *c * alpha.power(-(m as i64) * i as i64) / (qn * wm);
    }

    // T' x = w' * (x o alpha)
    let apply = |x: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![ZERO; x.len() + d];
        for (i, xi) in x.iter().enumerate() {
            let u = xi * pows[i];
            if u == ZERO {
                continue;
            }
            for (j, c) in wc.iter().enumerate() {
                out[i + j] += u * c;
            }
        }
        out
    };

    let eps = 1.0 / (m as f64).sqrt();
    let mut g = vec![ZERO; len];
    let mut cur = f;
    for j in 0..=2 * m {
        let weight = (1.0 - eps).powi((j as i64 - m as i64).unsigned_abs() as i32);
        for (gi, ci) in g.iter_mut().zip(&cur) {
            *gi += ci * weight;
        }
        if j < 2 * m {
            cur = apply(&cur);
        }
    }
    let tg = apply(&g);
    let diff: Vec<Complex64> = tg
        .iter()
        .enumerate()
        .map(|(i, t)| t - g.get(i).copied().unwrap_or(ZERO))
        .collect();
    let (nu_long, _) = monomial_norms(space, diff.len())?;
    let residual =
        lambda.norm() * coefficient_norm(&diff, &nu_long, tag) / coefficient_norm(&g, &nu, tag);
    if !residual.is_finite() {
        return Err(WroError::Numerical("non-finite residual".into()));
    }
    Ok(ResidualRecord {
        m,
        n,
        witness_turns: kt,
        residual,
    })
}

/// Numerical rank: singular values above N * eps * sigma_max count.
pub fn truncation_rank(t: &TruncationMatrix) -> Result<usize> {
    let sv = t.entries.singular_values();
    let n = t.order() as f64;
    let max = sv.max();
    if max == 0.0 {
        return Ok(0);
    }
    let thr = n * f64::EPSILON * max;
    if let Some(&v) = sv.iter().find(|&&v| v > thr && v < 10.0 * thr) {
        return Err(WroError::RankIndeterminate {
            value: v,
            threshold: thr,
        });
    }
    Ok(sv.iter().filter(|&&v| v > thr).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledNorm {
    pub m: u64,
    /// ||q_m|| (Bloch) or ||q_m||_p^p (Bergman).
    pub norm: f64,
    /// m ||q_m|| (Bloch) or m^{3/2} ||q_m||_p^p (Bergman).
    pub scaled: f64,
}

/// 10, 30, 100, 300, ... below m_max, then m_max itself.
pub fn geometric_ladder(m_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 10;
    while decade < m_max {
        out.push(decade);
        if 3 * decade < m_max {
            out.push(3 * decade);
        }
        decade *= 10;
    }
    out.push(m_max);
    out
}

/// Scaled norms of q_m = ((1 + z)/2)^m along [`geometric_ladder`].
pub fn norm_asymptotics(space: &SpaceSpec, m_max: u64) -> Result<Vec<ScaledNorm>> {
    if m_max == 0 || m_max > MAX_ASYMPTOTIC_M {
        return Err(WroError::Precondition(format!(
            "m_max must lie in 1..={MAX_ASYMPTOTIC_M}"
        )));
    }
    geometric_ladder(m_max)
        .into_iter()
        .map(|m| scaled_norm(space, m))
        .collect()
}

pub fn scaled_norm(space: &SpaceSpec, m: u64) -> Result<ScaledNorm> {
    let mf = m as f64;
    match *space {
        SpaceSpec::Bloch => {
            let norm = bloch_norm(m);
            Ok(ScaledNorm {
                m,
                norm,
                scaled: mf * norm,
            })
        }
        SpaceSpec::Bergman { p } => {
            let norm = bergman_norm_pow(m, p)?;
            Ok(ScaledNorm {
                m,
                norm,
                scaled: mf.powf(1.5) * norm,
            })
        }
        _ => Err(WroError::Unsupported(format!(
            "norm asymptotics are implemented for Bergman and Bloch, not {}",
            space.name()
        ))),
    }
}

/// ln((1 - r^2) |q_m'(r e^{i theta})|).
fn bloch_log_density(m: u64, r: f64, theta: f64) -> f64 {
    let mf = m as f64;
    let mod_sq = (1.0 + r * r + 2.0 * r * theta.cos()) / 4.0;
    (1.0 - r * r).ln() + (mf / 2.0).ln() + (mf - 1.0) / 2.0 * mod_sq.ln()
}

/// ||q_m||_Bloch = |q_m(0)| + sup (1 - |z|^2) |q_m'(z)|, the supremum taken on
/// a 512 x 512 polar grid and polished by golden-section searches.
pub fn bloch_norm(m: u64) -> f64 {
    const GRID: usize = 512;
    let rs: Vec<f64> = (0..GRID).map(|i| i as f64 / GRID as f64).collect();
    let ths: Vec<f64> = (0..GRID)
        .map(|j| std::f64::consts::TAU * j as f64 / GRID as f64 - std::f64::consts::PI)
        .collect();
    let (mut bi, mut bj, mut best) = (0, 0, f64::NEG_INFINITY);
    for (i, &r) in rs.iter().enumerate() {
        for (j, &t) in ths.iter().enumerate() {
            let v = bloch_log_density(m, r, t);
            if v > best {
                (bi, bj, best) = (i, j, v);
            }
        }
    }
    let mut r = rs[bi];
    let mut t = ths[bj];
    let hr = 1.0 / GRID as f64;
    let ht = std::f64::consts::TAU / GRID as f64;
    for _ in 0..4 {
        let (r_new, v1) = golden_section(|x| bloch_log_density(m, x, t), (r - hr).max(0.0), (r + hr).min(1.0));
        r = r_new;
        let (t_new, v2) = golden_section(|x| bloch_log_density(m, r, x), t - ht, t + ht);
        t = t_new;
        best = best.max(v1).max(v2);
    }
    0.5f64.powi(m.min(2000) as i32) + best.exp()
}

/// The maximum of (1 - r^2) q_m'(r) at r = (m - 1)/(m + 1), plus q_m(0).
pub fn bloch_norm_closed_form(m: u64) -> f64 {
    let mf = m as f64;
    let r = (mf - 1.0) / (mf + 1.0);
    0.5f64.powi(m.min(2000) as i32)
        + (mf / 2.0) * ((1.0 + r) / 2.0).powf(mf - 1.0) * (1.0 - r * r)
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// ||q_m||_{A^p}^p = int_D |(1 + z)/2|^{mp} dA by Gauss-Legendre panels in
/// s = 1 - r graded geometrically from the peak scale 1/(mp), and the
/// trapezoid rule in theta, doubled until the relative change drops below
/// 1e-10.
pub fn bergman_norm_pow(m: u64, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(WroError::Precondition("p must lie in [1, inf)".into()));
    }
    let a = m as f64 * p;
    let integrate = |nodes: usize, thetas: usize| -> f64 {
        let gl = GaussLegendre::new(NonZeroUsize::new(nodes).expect("positive"));
        let h = (1.0 / a).min(0.5);
        let mut edges = vec![0.0];
        let mut e = h;
        while e < 1.0 {
            edges.push(e);
            e *= 2.0;
        }
        edges.push(1.0);
        let dt = std::f64::consts::TAU / thetas as f64;
        edges
            .windows(2)
            .map(|pair| {
                gl.integrate(pair[0], pair[1], |s| {
                    let r = 1.0 - s;
                    let ring: f64 = (0..thetas)
                        .map(|j| {
                            let t = -std::f64::consts::PI + (j as f64 + 0.5) * dt;
                            let mod_sq = (1.0 + r * r + 2.0 * r * t.cos()) / 4.0;
                            (a / 2.0 * mod_sq.ln()).exp()
                        })
                        .sum();
                    ring * dt * r
                })
            })
            .sum()
    };
    let mut nodes = 16;
    let mut thetas = 64.max((8.0 * a.sqrt()) as usize).next_power_of_two();
    let mut prev = integrate(nodes, thetas);
    for _ in 0..8 {
        nodes *= 2;
        thetas *= 2;
        let cur = integrate(nodes, thetas);
        let rel = ((cur - prev) / cur).abs();
        if rel < 1e-10 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(WroError::QuadratureNonConvergence {
        grid: thetas,
        rel_diff: f64::NAN,
    })
}

/// ||q_m||_{A^2}^2 = pi C(2m+1, m) / ((m+1) 4^m).
pub fn bergman2_norm_sq_closed_form(m: u64) -> f64 {
    let mf = m as f64;
    let ln_binom: f64 = (1..=m).map(|i| ((mf + 1.0 + i as f64) / i as f64).ln()).sum();
    std::f64::consts::PI * (ln_binom - (mf + 1.0).ln() - mf * 4f64.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::point_spectrum_candidates;
    use approx::assert_relative_eq;

    fn poly(c: &[f64]) -> Weight {
        Weight::from_real(c).unwrap()
    }

    const HARDY: SpaceSpec = SpaceSpec::HardyBanach;
    const BERGMAN: SpaceSpec = SpaceSpec::Bergman { p: 2.0 };

    #[test]
    fn identity_weight_is_diagonal() {
        let a = RotationAngle::golden();
        let t = build_truncation(&HARDY, &poly(&[1.0]), &a, 5).unwrap();
        for k in 0..5 {
            assert_eq!(t.entries[(k, k)], a.power(k as i64));
        }
        assert_eq!(t.entries.iter().filter(|z| **z != ZERO).count(), 5);
    }

    #[test]
    fn shift_weight_subdiagonal() {
        let a = RotationAngle::golden();
        let t = build_truncation(&HARDY, &poly(&[0.0, 1.0]), &a, 3).unwrap();
        assert_eq!(t.entries[(1, 0)], a.power(0));
        assert_eq!(t.entries[(2, 1)], a.power(1));
        assert_eq!(t.entries.iter().filter(|z| **z != ZERO).count(), 2);
        let b = build_truncation(&BERGMAN, &poly(&[0.0, 1.0]), &a, 3).unwrap();
        for k in 0..2 {
            let expect = a.power(k as i64) * ((k as f64 + 1.0) / (k as f64 + 2.0)).sqrt();
            assert_relative_eq!((b.entries[(k + 1, k)] - expect).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn diagonal_matches_candidates() {
        let a = RotationAngle::golden();
        let w = poly(&[0.3, -1.2, 0.5]);
        let t = build_truncation(&BERGMAN, &w, &a, 40).unwrap();
        assert_eq!(t.diagonal(), point_spectrum_candidates(&w, &a, 40).unwrap());
    }

    #[test]
    fn bloch_not_in_matrix_model() {
        let e = build_truncation(&SpaceSpec::Bloch, &poly(&[1.0]), &RotationAngle::golden(), 4);
        assert!(matches!(e, Err(WroError::Unsupported(_))));
    }

    #[test]
    fn gaps_of_simple_truncations() {
        let a = RotationAngle::golden();
        let t = build_truncation(&HARDY, &poly(&[1.0]), &a, 12).unwrap();
        let l = Complex64::new(0.5, 0.0);
        let expect = (0..12).map(|k| (l - a.power(k)).norm()).fold(f64::INFINITY, f64::min);
        assert_relative_eq!(resolvent_gap(&t, l), expect, max_relative = 1e-12);
        let s = build_truncation(&HARDY, &poly(&[0.0, 1.0]), &a, 12).unwrap();
        assert!(resolvent_gap(&s, ZERO) < 1e-14);
    }

    #[test]
    fn sum_norm_gap_of_diagonal() {
        let a = RotationAngle::golden();
        let t = build_truncation(&SpaceSpec::EllOneA, &poly(&[2.0]), &a, 6).unwrap();
        let l = Complex64::new(0.5, 0.0);
        let expect = (0..6).map(|k| (l - a.power(k) * 2.0).norm()).fold(f64::INFINITY, f64::min);
        assert_relative_eq!(resolvent_gap(&t, l), expect, max_relative = 1e-12);
        let z = build_truncation(&SpaceSpec::EllOneA, &poly(&[0.0, 1.0]), &a, 6).unwrap();
        assert_eq!(resolvent_gap(&z, ZERO), 0.0);
    }

    #[test]
    fn gap_shrinks_on_spectrum_circle() {
        let a = RotationAngle::golden();
        let w = poly(&[-2.0, 1.0]);
        let l = Complex64::new(2.0, 0.0);
        let g64 = resolvent_gap(&build_truncation(&BERGMAN, &w, &a, 64).unwrap(), l);
        let g256 = resolvent_gap(&build_truncation(&BERGMAN, &w, &a, 256).unwrap(), l);
        assert!(g256 < g64, "{g256} !< {g64}");
    }

    #[test]
    fn csv_round_trip() {
        let a = RotationAngle::golden();
        let t = build_truncation(&HARDY, &poly(&[-2.0, 1.0]), &a, 16).unwrap();
        let grid = pseudospectrum_scan(&t, &adapted_radii(&[2.0]), 4).unwrap();
        assert_eq!(grid.samples.len(), 20);
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"re,im,gap\n"));
        let back = PseudospectrumGrid::read_csv(&buf[..], NormTag::Euclidean).unwrap();
        assert_eq!(back, grid);
        assert!(PseudospectrumGrid::read_csv(&b"re,im,gap\n"[..], NormTag::Euclidean).is_err());
    }

    #[test]
    fn smoothing_identity_holds() {
        let a = RotationAngle::golden();
        let t = build_truncation(&HARDY, &poly(&[-2.0, 1.0]), &a, 10).unwrap();
        // entries of T^7 reach 3^7, so compare relative to that scale
        let dev = check_smoothing_identity(&t.entries, 0.5, 3).unwrap();
        assert!(dev < 1e-10 * 3f64.powi(7), "{dev}");
        assert!(check_smoothing_identity(&t.entries, 1.0, 3).is_err());
    }

    #[test]
    fn shifted_exponents_are_not_an_identity() {
        let t = DMatrix::from_fn(3, 3, |i, j| Complex64::new(0.1 * (i + 2 * j) as f64, 0.05));
        assert!(check_smoothing_identity(&t, 0.3, 1).unwrap() < 1e-14);
        assert!(smoothing_deviation_shifted_exponents(&t, 0.3, 1).unwrap() > 1e-3);
    }

    #[test]
    fn ranks() {
        let a = RotationAngle::golden();
        let z = build_truncation(&HARDY, &poly(&[0.0, 1.0]), &a, 32).unwrap();
        assert_eq!(truncation_rank(&z).unwrap(), 31);
        let w = poly(&[1.0, -2.5, 1.0]);
        assert_eq!(truncation_rank(&build_truncation(&BERGMAN, &w, &a, 64).unwrap()).unwrap(), 63);
        let w = poly(&[0.0, 0.0, -2.0, 1.0]);
        assert_eq!(truncation_rank(&build_truncation(&BERGMAN, &w, &a, 64).unwrap()).unwrap(), 62);
    }

    #[test]
    fn bloch_norm_small_m() {
        assert_relative_eq!(bloch_norm(1), 1.0, max_relative = 1e-12);
        assert_relative_eq!(bloch_norm_closed_form(1), 1.0, max_relative = 1e-15);
        for m in [2, 10, 100, 10_000] {
            assert_relative_eq!(bloch_norm(m), bloch_norm_closed_form(m), max_relative = 1e-9);
        }
    }

    #[test]
    fn bergman_quadrature_matches_closed_form() {
        for m in [1, 7, 100, 3000] {
            let q = bergman_norm_pow(m, 2.0).unwrap();
            assert_relative_eq!(q, bergman2_norm_sq_closed_form(m), max_relative = 1e-9);
        }
        // m = 0: the area of the disc
        assert_relative_eq!(bergman2_norm_sq_closed_form(0), std::f64::consts::PI);
    }

    #[test]
    fn residual_guard_and_decay() {
        let g: Rotation = RotationAngle::golden().into();
        let e = singular_sequence_residual(&BERGMAN, &poly(&[-2.0, 1.0]), &g, Complex64::new(1.0, 0.0), 4, 64);
        assert!(matches!(e, Err(WroError::Precondition(_))));
        let w = poly(&[1.0]);
        let r4 = singular_sequence_residual(&BERGMAN, &w, &g, Complex64::new(1.0, 0.0), 4, 256).unwrap();
        let r16 = singular_sequence_residual(&BERGMAN, &w, &g, Complex64::new(1.0, 0.0), 16, 4096).unwrap();
        assert!(r16.residual < r4.residual && r16.residual < 1.0, "{r4:?} {r16:?}");
    }

    #[test]
    fn ladder() {
        assert_eq!(geometric_ladder(10_000), vec![10, 30, 100, 300, 1000, 3000, 10_000]);
        assert_eq!(geometric_ladder(5), vec![5]);
    }
}
