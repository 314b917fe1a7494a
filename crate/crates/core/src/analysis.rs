//! Function-theoretic primitives: boundary geometric means, zero location,
//! invertibility profiles and canonical-factorization summaries.
//!
//! # Tolerances
//!
//! A zero z is "on the circle" when `||z| - 1| <= TOL_ZERO`. The geometric
//! mean is continuous in the zero locations (Jensen: each zero contributes
//! `ln max(1, |z|)`, a 1-Lipschitz function of `|z|`), so misplacing a zero
//! across the band moves a reported radius by a relative amount of order
//! `TOL_ZERO` at most.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WroError};
use crate::poly::{Polynomial, Root};
use crate::weights::{cis_turns, Weight, WeightRepr};

/// Band half-width for classifying a zero as unimodular.
pub const TOL_ZERO: f64 = 1e-9;
/// Sampled weights are invertible on the circle when every sample exceeds this.
pub const TOL_INV: f64 = 1e-8;
/// Relative agreement required between successive trapezoid refinements.
pub const QUAD_REL_TOL: f64 = 1e-10;
pub const QUAD_MIN_GRID: usize = 64;
pub const QUAD_MAX_GRID: usize = 1 << 22;

/// Three-valued answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularPart {
    Absent,
    Present,
    Unknown,
}

/// Invertibility of w in A(U), in C(T) (via its boundary values) and in
/// H^inf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertibilityProfile {
    pub in_disc_algebra: Tri,
    pub in_continuous_boundary: Tri,
    pub in_h_inf: Tri,
}

/// Zeros, outer value and singular-factor information of w = B S w_e.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationSummary {
    pub zeros_in_disc: Vec<(Complex64, usize)>,
    pub zeros_on_circle: Vec<(Complex64, usize)>,
    pub blaschke_finite: bool,
    /// |w_e(0)|, the boundary geometric mean of |w|.
    pub outer_value_mod: f64,
    pub singular_part_present: SingularPart,
}

impl FactorizationSummary {
    /// Total multiplicity of the zeros in the open disc.
    pub fn blaschke_degree(&self) -> usize {
        self.zeros_in_disc.iter().map(|z| z.1).sum()
    }
}

/// Where a root sits relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placement {
    Inside,
    OnCircle,
    Outside,
    Ambiguous,
}

fn placement(r: &Root) -> Placement {
    let d = (r.value.norm() - 1.0).abs();
    if (d - TOL_ZERO).abs() <= r.error {
        Placement::Ambiguous
    } else if d <= TOL_ZERO {
        Placement::OnCircle
    } else if r.value.norm() < 1.0 {
        Placement::Inside
    } else {
        Placement::Outside
    }
}

fn analytic_numerator(w: &Weight) -> Result<&Polynomial> {
    w.numerator().ok_or_else(|| {
        WroError::Unsupported(
            "closed-form zero data needs a polynomial or rational weight".into(),
        )
    })
}

/// Jensen closed form: the geometric mean of |p| over |z| = r equals
/// `|lead| * prod max(r, |z_k|)`.
fn jensen_mean(p: &Polynomial, r: f64) -> Result<f64> {
    let mut g = p.leading().norm();
    for root in p.roots()? {
        g *= root.value.norm().max(r).powi(root.multiplicity as i32);
    }
    Ok(g)
}

/// exp of the mean of ln|w| over the circle of radius r.
///
/// Polynomial and rational weights use the Jensen closed form, so boundary
/// zeros are handled exactly. Taylor weights use the closed form of their
/// finite part (the declared tail is not resolved here). Sampled weights go
/// through [`geometric_mean_quadrature`].
pub fn geometric_mean(w: &Weight, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(WroError::Precondition("radius must lie in (0, 1]".into()));
    }
    match w.repr() {
        WeightRepr::Polynomial(p) => jensen_mean(p, r),
        WeightRepr::Rational { num, den } => {
            Ok(jensen_mean(num, r)? / jensen_mean(den, r)?)
        }
        WeightRepr::Taylor { coeffs, .. } => {
            let p = Polynomial::new(coeffs.clone());
            if p.is_zero() {
                return Err(WroError::Precondition(
                    "finite Taylor part is identically zero".into(),
                ));
            }
            jensen_mean(&p, r)
        }
        WeightRepr::BoundarySamples { values } => {
            if values.iter().all(|v| v.norm() == 0.0) {
                return Err(WroError::AllSamplesZero);
            }
            geometric_mean_quadrature(w, r)
        }
        WeightRepr::Multivariate(_) => Err(WroError::Unsupported(
            "use the torus mean for multivariate weights".into(),
        )),
    }
}

/// Trapezoid rule for the mean of ln|w(r e^{i theta})| with grid doubling from
/// [`QUAD_MIN_GRID`] until two successive values of the geometric mean agree
/// within [`QUAD_REL_TOL`] relative.
pub fn geometric_mean_quadrature(w: &Weight, r: f64) -> Result<f64> {
    let sampled = matches!(w.repr(), WeightRepr::BoundarySamples { .. });
    if sampled && r != 1.0 {
        return Err(WroError::Precondition(
            "sampled weights only have boundary values".into(),
        ));
    }
    let value_at = |t: f64| -> Result<Complex64> {
        if r == 1.0 {
            Ok(w.eval_on_circle(t))
        } else {
            w.eval(cis_turns(t) * r)
        }
    };
    let mut g = QUAD_MIN_GRID;
    // running sum of ln|w| over the current grid; doubling adds the midpoints
    let mut sum = 0.0;
    for k in 0..g {
        sum += value_at(k as f64 / g as f64)?.norm().ln();
    }
    let mut prev = (sum / g as f64).exp();
    let mut last_diff = f64::INFINITY;
    while g < QUAD_MAX_GRID {
        let mut add = 0.0;
        for k in 0..g {
            add += value_at((2 * k + 1) as f64 / (2 * g) as f64)?.norm().ln();
        }
        sum += add;
        g *= 2;
        let cur = (sum / g as f64).exp();
        if !cur.is_finite() || cur == 0.0 {
            return Err(WroError::QuadratureNonConvergence {
                grid: g,
                rel_diff: f64::INFINITY,
            });
        }
        last_diff = (cur - prev).abs() / cur;
        if last_diff <= QUAD_REL_TOL {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(WroError::QuadratureNonConvergence {
        grid: g,
        rel_diff: last_diff,
    })
}

/// Zeros with |z| <= r + TOL_ZERO, with multiplicity.
pub fn find_zeros(w: &Weight, r: f64) -> Result<Vec<(Complex64, usize)>> {
    let p = w.numerator().ok_or_else(|| {
        WroError::Unsupported(
            "count_only: zeros of Taylor or sampled weights can only be counted (see winding_number)"
                .into(),
        )
    })?;
    Ok(p.roots()?
        .into_iter()
        .filter(|z| z.value.norm() <= r + TOL_ZERO)
        .map(|z| (z.value, z.multiplicity))
        .collect())
}

/// Winding number of w around 0 along the unit circle, from boundary values.
/// For w analytic in the disc and zero-free on the circle this counts its
/// zeros in the disc.
pub fn winding_number(w: &Weight) -> Result<i64> {
    let g = match w.repr() {
        WeightRepr::BoundarySamples { values } => values.len() * 4,
        _ => 4096,
    };
    let vals: Vec<Complex64> = (0..g).map(|k| w.eval_on_circle(k as f64 / g as f64)).collect();
    if vals.iter().any(|v| v.norm() <= TOL_INV) {
        return Err(WroError::Precondition(
            "weight vanishes on the circle; winding number undefined".into(),
        ));
    }
    let mut total = 0.0;
    for k in 0..g {
        let step = (vals[(k + 1) % g] / vals[k]).arg();
        if step.abs() > 2.0 {
            return Err(WroError::Numerical(
                "boundary curve too coarsely sampled for a winding count".into(),
            ));
        }
        total += step;
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

/// Invertibility of w in A(U), C(T) and H^inf.
pub fn invertibility_profile(w: &Weight) -> InvertibilityProfile {
    let unknown = InvertibilityProfile {
        in_disc_algebra: Tri::Unknown,
        in_continuous_boundary: Tri::Unknown,
        in_h_inf: Tri::Unknown,
    };
    match w.repr() {
        WeightRepr::Polynomial(_) | WeightRepr::Rational { .. } => {
            let Ok(roots) = analytic_numerator(w).and_then(|p| p.roots()) else {
                return unknown;
            };
            let places: Vec<Placement> = roots.iter().map(placement).collect();
            if places.contains(&Placement::Ambiguous) {
                return unknown;
            }
            let on = places.contains(&Placement::OnCircle);
            let inside = places.contains(&Placement::Inside);
            let alg = Tri::from_bool(!on && !inside);
            InvertibilityProfile {
                in_disc_algebra: alg,
                in_continuous_boundary: Tri::from_bool(!on),
                in_h_inf: alg,
            }
        }
        WeightRepr::BoundarySamples { values } => {
            let min = values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
            InvertibilityProfile {
                in_continuous_boundary: Tri::from_bool(min > TOL_INV),
                ..unknown
            }
        }
        _ => unknown,
    }
}

/// Zero data and outer value of a polynomial or rational weight.
pub fn factorization_summary(w: &Weight) -> Result<FactorizationSummary> {
    let p = analytic_numerator(w)?;
    let mut zeros_in_disc = Vec::new();
    let mut zeros_on_circle = Vec::new();
    for r in p.roots()? {
        match placement(&r) {
            Placement::Inside => zeros_in_disc.push((r.value, r.multiplicity)),
            Placement::OnCircle => zeros_on_circle.push((r.value, r.multiplicity)),
            Placement::Outside => {}
            Placement::Ambiguous => {
                return Err(WroError::AmbiguousBoundaryZero {
                    modulus: r.value.norm(),
                })
            }
        }
    }
    Ok(FactorizationSummary {
        zeros_in_disc,
        zeros_on_circle,
        blaschke_finite: true,
        outer_value_mod: geometric_mean(w, 1.0)?,
        singular_part_present: SingularPart::Absent,
    })
}
