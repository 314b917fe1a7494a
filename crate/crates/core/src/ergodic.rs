//! Orbit computations for the rotation z -> alpha z: weight cocycles, the
//! approximate-point-spectrum orbit test, spectral radii over the closed
//! subgroup generated by a rotation, and the root-modulus radius formula for
//! polynomial weights.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{geometric_mean, TOL_ZERO};
use crate::error::{Result, WroError};
use crate::parallel::pool;
use crate::poly::Polynomial;
use crate::weights::{cis_turns, Rotation, RotationAngle, Weight, WeightRepr};

pub const MAX_HORIZON: usize = 1_000_000;
/// Per-step slack of the orbit test; the total slack is `n_max * AP_SLACK`.
pub const AP_SLACK: f64 = 1e-3;
/// Grid for the coset maximization at roots of unity.
pub const COSET_GRID: usize = 1 << 14;

/// ln|w_n| along one orbit, in both time directions.
///
/// `forward_logs[n - 1] = ln|w_n(k)|` with `w_n(k) = prod_{j<n} w(alpha^j k)`
/// and `backward_logs[n - 1] = ln|w_n(alpha^{-n} k)|`. An exact zero of w on
/// the orbit shows up as `-inf` and stays there.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitProduct {
    /// Base point k = exp(2 pi i base_turns).
    pub base_turns: f64,
    pub n_max: usize,
    pub forward_logs: Vec<f64>,
    pub backward_logs: Vec<f64>,
}

impl OrbitProduct {
    pub fn base_point(&self) -> Complex64 {
        cis_turns(self.base_turns)
    }

    pub fn forward_mods(&self) -> Vec<f64> {
        self.forward_logs.iter().map(|l| l.exp()).collect()
    }

    pub fn backward_mods(&self) -> Vec<f64> {
        self.backward_logs.iter().map(|l| l.exp()).collect()
    }
}

fn check_horizon(n_max: usize) -> Result<()> {
    if n_max == 0 || n_max > MAX_HORIZON {
        return Err(WroError::Precondition(format!(
            "horizon must lie in 1..={MAX_HORIZON}"
        )));
    }
    Ok(())
}

fn log_abs_on_orbit(w: &Weight, alpha: &RotationAngle, base_turns: f64, j: i64) -> f64 {
    w.eval_on_circle(alpha.orbit_turns(base_turns, j)).norm().ln()
}

fn partial_sums(terms: impl Iterator<Item = f64>) -> Vec<f64> {
    terms
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Forward and backward orbit products from the base point
/// exp(2 pi i base_turns).
pub fn orbit_products(
    w: &Weight,
    alpha: &RotationAngle,
    base_turns: f64,
    n_max: usize,
) -> Result<OrbitProduct> {
    check_horizon(n_max)?;
    if w.dim() != 1 {
        return Err(WroError::Unsupported(
            "orbit products are implemented for weights on the circle".into(),
        ));
    }
    let forward_logs = partial_sums((0..n_max as i64).map(|j| log_abs_on_orbit(w, alpha, base_turns, j)));
    let backward_logs =
        partial_sums((1..=n_max as i64).map(|i| log_abs_on_orbit(w, alpha, base_turns, -i)));
    Ok(OrbitProduct {
        base_turns,
        n_max,
        forward_logs,
        backward_logs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedIn,
    CertifiedOut,
    Inconclusive,
}

/// Outcome of the orbit test for one |lambda|.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    /// Base point (in turns) that satisfies both inequalities, when one does.
    pub witness_turns: Option<f64>,
    /// Best log-slack over the grid: for each base point the smaller of
    /// `min_n (ln|w_n(k)| - n ln|lambda|)` and
    /// `min_n (n ln|lambda| - ln|w_n(alpha^{-n} k)|)`, maximized over k.
    /// Nonnegative slack beyond `-tol` certifies membership.
    pub margin: f64,
    pub tolerance: f64,
}

impl MembershipVerdict {
    pub fn witness(&self) -> Option<Complex64> {
        self.witness_turns.map(cis_turns)
    }
}

/// Slack of one base point: the worst of the two orbit inequalities.
fn point_slack(w: &Weight, alpha: &RotationAngle, base: f64, n_max: usize, ln_lam: f64) -> f64 {
    let mut slack = f64::INFINITY;
    let mut f = 0.0;
    let mut b = 0.0;
    for n in 1..=n_max as i64 {
        f += log_abs_on_orbit(w, alpha, base, n - 1);
        b += log_abs_on_orbit(w, alpha, base, -n);
        let nl = n as f64 * ln_lam;
        slack = slack.min(f - nl).min(nl - b);
        if slack == f64::NEG_INFINITY {
            break;
        }
    }
    slack
}

/// Best slack over a uniform grid of base points, with the first grid index
/// attaining it.
fn scan(w: &Weight, alpha: &RotationAngle, ln_lam: f64, n_max: usize, g: usize) -> (f64, usize) {
    let slacks: Vec<f64> = pool().install(|| {
        (0..g)
            .into_par_iter()
            .map(|j| point_slack(w, alpha, j as f64 / g as f64, n_max, ln_lam))
            .collect()
    });
    slacks
        .iter()
        .enumerate()
        .fold((f64::NEG_INFINITY, 0), |best, (j, &s)| {
            if s > best.0 {
                (s, j)
            } else {
                best
            }
        })
}

/// Orbit test for lambda in the approximate point spectrum.
///
/// A base point k certifies membership when, up to the horizon,
/// `|w_n(k)| >= |lambda|^n` and `|w_n(alpha^{-n} k)| <= |lambda|^n` both hold
/// within a log-slack of `n_max * AP_SLACK`. The scan runs on a grid of
/// `grid_size` base points and again on twice as many; if the two disagree
/// the verdict is inconclusive. Only |lambda| enters the computation.
pub fn ap_membership(
    w: &Weight,
    alpha: &RotationAngle,
    lambda: Complex64,
    n_max: usize,
    grid_size: usize,
) -> Result<MembershipVerdict> {
    check_horizon(n_max)?;
    alpha.require_nonperiodic()?;
    if lambda.norm() == 0.0 || !lambda.norm().is_finite() {
        return Err(WroError::Precondition("lambda must be nonzero and finite".into()));
    }
    if grid_size == 0 {
        return Err(WroError::Precondition("grid must be nonempty".into()));
    }
    if w.dim() != 1 {
        return Err(WroError::Unsupported(
            "the orbit test is implemented for weights on the circle".into(),
        ));
    }
    let tol = n_max as f64 * AP_SLACK;
    let ln_lam = lambda.norm().ln();
    let (m1, j1) = scan(w, alpha, ln_lam, n_max, grid_size);
    let (m2, j2) = scan(w, alpha, ln_lam, n_max, 2 * grid_size);
    let in1 = m1 >= -tol;
    let in2 = m2 >= -tol;
    let (verdict, witness_turns) = match (in1, in2) {
        (true, true) => (Verdict::CertifiedIn, Some(j1 as f64 / grid_size as f64)),
        (false, false) => (Verdict::CertifiedOut, None),
        (false, true) => (Verdict::Inconclusive, Some(j2 as f64 / (2 * grid_size) as f64)),
        (true, false) => (Verdict::Inconclusive, Some(j1 as f64 / grid_size as f64)),
    };
    Ok(MembershipVerdict {
        verdict,
        witness_turns,
        margin: m1,
        tolerance: tol,
    })
}

/// Golden-section maximization of a unimodal function on [a, b].
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Spectral radius of wU for a periodic rotation of order q:
/// `max_t (prod_{j<q} |w(alpha^j t)|)^{1/q}`.
fn coset_radius(w: &Weight, alpha: &RotationAngle, q: u64) -> f64 {
    // the coset product has period 1/q in t
    let period = 1.0 / q as f64;
    let mean_log = |t: f64| -> f64 {
        (0..q as i64)
            .map(|j| w.eval_on_circle(alpha.orbit_turns(t, j)).norm().ln())
            .sum::<f64>()
            / q as f64
    };
    let h = period / COSET_GRID as f64;
    let vals: Vec<f64> = pool().install(|| {
        (0..COSET_GRID)
            .into_par_iter()
            .map(|i| mean_log(i as f64 * h))
            .collect()
    });
    let (best_i, best) = vals
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let centre = best_i as f64 * h;
    let (_, polished) = golden_max(mean_log, centre - h, centre + h, 80);
    best.max(polished).exp()
}

/// Geometric mean of |w| over the torus T^n by an inner Jensen formula in z_1
/// and a trapezoid rule in the remaining variables.
pub fn torus_geometric_mean(w: &Weight, dim: usize) -> Result<f64> {
    let WeightRepr::Multivariate(p) = w.repr() else {
        return geometric_mean(w, 1.0);
    };
    if dim < p.dim() {
        return Err(WroError::Precondition(
            "weight has more variables than the torus".into(),
        ));
    }
    let p_dim = p.dim();
    if p_dim == 1 {
        return geometric_mean(&Weight::from_polynomial(p.in_first_variable(&[]))?, 1.0);
    }
    let outer = p_dim - 1;
    let inner_log = |rest: &[Complex64]| -> Result<f64> {
        let q = p.in_first_variable(rest);
        if q.is_zero() {
            return Ok(f64::NEG_INFINITY);
        }
        let mut s = q.leading().norm().ln();
        for r in q.roots()? {
            s += r.multiplicity as f64 * r.value.norm().max(1.0).ln();
        }
        Ok(s)
    };
    let mean_on_grid = |m: usize| -> Result<f64> {
        let total = m.pow(outer as u32);
        let logs: Vec<Result<f64>> = pool().install(|| {
            (0..total)
                .into_par_iter()
                .map(|mut idx| {
                    // offset by half a cell so grid points avoid special angles
                    let rest: Vec<Complex64> = (0..outer)
                        .map(|_| {
                            let i = idx % m;
                            idx /= m;
                            cis_turns((i as f64 + 0.5) / m as f64)
                        })
                        .collect();
                    inner_log(&rest)
                })
                .collect()
        });
        let mut s = 0.0;
        for l in logs {
            s += l?;
        }
        Ok((s / total as f64).exp())
    };
    let max_points: usize = 1 << 22;
    let mut m = 16;
    let mut prev = mean_on_grid(m)?;
    let mut last = f64::INFINITY;
    while (2 * m).pow(outer as u32) <= max_points {
        m *= 2;
        let cur = mean_on_grid(m)?;
        last = (cur - prev).abs() / cur.max(f64::MIN_POSITIVE);
        if last <= 1e-10 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(WroError::QuadratureNonConvergence {
        grid: m,
        rel_diff: last,
    })
}

/// Spectral radius of wU in the uniform norm over the closed subgroup
/// generated by the rotation.
///
/// For a non-periodic circle rotation the subgroup is the whole circle and the
/// radius is the geometric mean of |w|. For a root of unity of order q it is
/// the largest geometric mean over a coset of the cyclic subgroup. For
/// polydisc rotations only a trivial relation lattice (the orbit is dense in
/// the torus) is supported.
pub fn group_rotation_radius(w: &Weight, rotation: &Rotation) -> Result<f64> {
    match rotation {
        Rotation::Single(alpha) => {
            if w.dim() != 1 {
                return Err(WroError::Precondition(
                    "a circle rotation needs a one-variable weight".into(),
                ));
            }
            match (alpha, alpha.is_periodic()) {
                (RotationAngle::RootOfUnity { q, .. }, _) => Ok(coset_radius(w, alpha, *q)),
                (_, Some(false)) => geometric_mean(w, 1.0),
                _ => Err(WroError::PeriodicityUnknown),
            }
        }
        Rotation::Vector(v) => {
            if v.dim() == 1 && v.relations.is_empty() {
                return group_rotation_radius(w, &Rotation::Single(v.angles[0]));
            }
            if !v.is_free() {
                return Err(WroError::Unsupported(
                    "polydisc rotations with a nontrivial relation lattice".into(),
                ));
            }
            if w.dim() > v.dim() {
                return Err(WroError::Precondition(
                    "weight has more variables than the rotation".into(),
                ));
            }
            torus_geometric_mean(w, v.dim())
        }
    }
}

/// Radius from root moduli: `prod max(1, |c_k|)`.
///
/// Cases: all roots outside the disc give `prod |c_k|`, all inside give 1,
/// and a mix gives the product over the outside ones. Roots on the circle
/// (within `TOL_ZERO`) make the weight non-invertible and are rejected.
pub fn polynomial_radius_cases(root_moduli: &[f64]) -> Result<f64> {
    if let Some(m) = root_moduli.iter().find(|m| (**m - 1.0).abs() <= TOL_ZERO) {
        return Err(WroError::Precondition(format!(
            "weight not invertible: root of modulus {m} on the unit circle"
        )));
    }
    Ok(root_moduli.iter().map(|m| m.max(1.0)).product())
}

/// Spectral radius for a polynomial weight: |lead| times the root-modulus
/// formula.
pub fn polynomial_radius(p: &Polynomial) -> Result<f64> {
    let mut moduli = Vec::new();
    for r in p.roots()? {
        moduli.extend(std::iter::repeat(r.value.norm()).take(r.multiplicity));
    }
    Ok(p.leading().norm() * polynomial_radius_cases(&moduli)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{MultiPolynomial, NamedIrrational, RotationVector};

    fn poly(c: &[f64]) -> Weight {
        Weight::from_real(c).unwrap()
    }

    fn golden() -> RotationAngle {
        RotationAngle::golden()
    }

    #[test]
    fn trivial_orbits() {
        let o = orbit_products(&poly(&[1.0]), &golden(), 0.0, 5).unwrap();
        assert!(o.forward_mods().iter().all(|&m| m == 1.0));
        assert!(o.backward_mods().iter().all(|&m| m == 1.0));
        let o = orbit_products(&poly(&[0.0, 1.0]), &golden(), 0.0, 3).unwrap();
        assert!(o.forward_mods().iter().all(|&m| (m - 1.0).abs() < 1e-15));
    }

    #[test]
    fn birkhoff_average_near_log_two() {
        let o = orbit_products(&poly(&[-2.0, 1.0]), &golden(), 0.0, 100).unwrap();
        assert!((o.forward_logs[99] / 100.0 - 2f64.ln()).abs() < 0.1);
    }

    #[test]
    fn exact_zero_propagates() {
        // z - 1 vanishes at the base point 1
        let o = orbit_products(&poly(&[-1.0, 1.0]), &golden(), 0.0, 4).unwrap();
        assert!(o.forward_logs.iter().all(|l| *l == f64::NEG_INFINITY));
        assert!(o.backward_logs.iter().all(|l| l.is_finite()));
    }

    #[test]
    fn membership_for_constant_weight() {
        let one = poly(&[1.0]);
        let v = ap_membership(&one, &golden(), Complex64::new(1.0, 0.0), 50, 64).unwrap();
        assert_eq!(v.verdict, Verdict::CertifiedIn);
        let v = ap_membership(&one, &golden(), Complex64::new(0.5, 0.0), 50, 64).unwrap();
        assert_eq!(v.verdict, Verdict::CertifiedOut);
        let rou = RotationAngle::root_of_unity(1, 3).unwrap();
        assert!(ap_membership(&one, &rou, Complex64::new(1.0, 0.0), 50, 64).is_err());
    }

    #[test]
    fn root_of_unity_radius() {
        let r = group_rotation_radius(
            &poly(&[-2.0, 1.0]),
            &RotationAngle::root_of_unity(1, 3).unwrap().into(),
        )
        .unwrap();
        assert!((r - 9f64.cbrt()).abs() < 1e-9);
    }

    #[test]
    fn nonperiodic_radius_is_mean() {
        let r = group_rotation_radius(&poly(&[-2.0, 1.0]), &golden().into()).unwrap();
        assert!((r - 2.0).abs() < 1e-14);
        let raw = RotationAngle::radians(1.0, false).unwrap();
        assert!(group_rotation_radius(&poly(&[-2.0, 1.0]), &raw.into()).is_err());
    }

    #[test]
    fn torus_radius() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let p = MultiPolynomial::new(2, vec![(vec![1, 0], c(1.0)), (vec![0, 0], c(-2.0))]).unwrap();
        let w = Weight::multivariate(p, []).unwrap();
        let rot = Rotation::Vector(
            RotationVector::new(vec![golden(), RotationAngle::Named(NamedIrrational::Sqrt2)], vec![])
                .unwrap(),
        );
        assert!((group_rotation_radius(&w, &rot).unwrap() - 2.0).abs() < 1e-12);
        // z1 - z2 / 2: the inner root z2/2 always lies inside, mean is 1
        let p = MultiPolynomial::new(2, vec![(vec![1, 0], c(1.0)), (vec![0, 1], c(-0.5))]).unwrap();
        let w = Weight::multivariate(p, []).unwrap();
        assert!((group_rotation_radius(&w, &rot).unwrap() - 1.0).abs() < 1e-12);
        let locked = Rotation::Vector(
            RotationVector::new(vec![golden(), golden()], vec![vec![1, -1]]).unwrap(),
        );
        assert!(matches!(group_rotation_radius(&w, &locked), Err(WroError::Unsupported(_))));
    }

    #[test]
    fn radius_cases() {
        assert_eq!(polynomial_radius_cases(&[2.0, 3.0]).unwrap(), 6.0);
        assert_eq!(polynomial_radius_cases(&[0.5, 0.3]).unwrap(), 1.0);
        assert_eq!(polynomial_radius_cases(&[2.0, 0.5]).unwrap(), 2.0);
        assert!(polynomial_radius_cases(&[1.0 + 1e-12]).is_err());
    }
}
