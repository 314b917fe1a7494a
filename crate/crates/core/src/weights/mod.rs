//! Weights, rotations and target spaces: the input data model every other
//! module consumes.

mod rotation;
mod schema;
mod space;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::analysis::TOL_ZERO;
use crate::error::{Result, WroError};
use crate::poly::Polynomial;

pub use rotation::{NamedIrrational, Rotation, RotationAngle, RotationVector};
pub(crate) use rotation::cis_turns;
pub use schema::{parse_job_inputs, parse_weight, parse_weight_rotation, JobInputs, WeightDoc};
pub use space::SpaceSpec;

/// Smallest accepted boundary-sample grid.
pub const MIN_SAMPLE_GRID: usize = 64;

/// Declared function-space memberships of a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RegularityTag {
    #[serde(rename = "disc_algebra")]
    DiscAlgebra,
    #[serde(rename = "H_inf")]
    HInf,
    #[serde(rename = "multiplier_Bloch")]
    MultiplierBloch,
    #[serde(rename = "multiplier_Dirichlet")]
    MultiplierDirichlet,
    #[serde(rename = "ell1A")]
    Ell1A,
    #[serde(rename = "Lambda_class")]
    LambdaClass,
}

impl RegularityTag {
    pub const ALL: [RegularityTag; 6] = [
        RegularityTag::DiscAlgebra,
        RegularityTag::HInf,
        RegularityTag::MultiplierBloch,
        RegularityTag::MultiplierDirichlet,
        RegularityTag::Ell1A,
        RegularityTag::LambdaClass,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegularityTag::DiscAlgebra => "disc_algebra",
            RegularityTag::HInf => "H_inf",
            RegularityTag::MultiplierBloch => "multiplier_Bloch",
            RegularityTag::MultiplierDirichlet => "multiplier_Dirichlet",
            RegularityTag::Ell1A => "ell1A",
            RegularityTag::LambdaClass => "Lambda_class",
        }
    }

    /// Tags that only make sense for functions of one variable.
    fn one_variable_only(self) -> bool {
        matches!(
            self,
            RegularityTag::MultiplierBloch
                | RegularityTag::MultiplierDirichlet
                | RegularityTag::Ell1A
                | RegularityTag::LambdaClass
        )
    }
}

/// Close a tag set under the inclusions
/// Lambda (within A(U)) ⊂ l^1_A ⊂ A(U) ⊂ H^inf and M(B), M(D_p) ⊂ H^inf.
fn close_tags(tags: &mut BTreeSet<RegularityTag>) {
    use RegularityTag::*;
    if tags.contains(&LambdaClass) {
        tags.insert(Ell1A);
    }
    if tags.contains(&Ell1A) {
        tags.insert(DiscAlgebra);
    }
    if tags.contains(&DiscAlgebra)
        || tags.contains(&MultiplierBloch)
        || tags.contains(&MultiplierDirichlet)
    {
        tags.insert(HInf);
    }
}

/// Polynomial in several variables, stored as (exponent vector, coefficient)
/// terms.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPolynomial {
    dim: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl MultiPolynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<u32>, Complex64)>) -> Result<Self> {
        if dim == 0 {
            return Err(WroError::InvalidWeight("dimension must be positive".into()));
        }
        if terms.iter().any(|(e, _)| e.len() != dim) {
            return Err(WroError::InvalidWeight(format!(
                "every exponent vector must have {dim} entries"
            )));
        }
        let terms: Vec<_> = terms
            .into_iter()
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .collect();
        if terms.is_empty() {
            return Err(WroError::InvalidWeight("weight is identically zero".into()));
        }
        Ok(MultiPolynomial { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Vec<u32>, Complex64)] {
        &self.terms
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(z)
                    .fold(*c, |acc, (&k, &zi)| acc * zi.powu(k))
            })
            .sum()
    }

    /// The one-variable polynomial z_1 -> w(z_1, rest).
    pub fn in_first_variable(&self, rest: &[Complex64]) -> Polynomial {
        let deg = self.terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (e, c) in &self.terms {
            let v = e[1..]
                .iter()
                .zip(rest)
                .fold(*c, |acc, (&k, &zi)| acc * zi.powu(k));
            coeffs[e[0] as usize] += v;
        }
        Polynomial::new(coeffs)
    }

    /// Degree in each variable.
    pub fn partial_degrees(&self) -> Vec<u32> {
        (0..self.dim)
            .map(|i| self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0))
            .collect()
    }
}

/// How the multiplier is represented.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRepr {
    Polynomial(Polynomial),
    /// Denominator normalized to constant term 1, with every zero strictly
    /// outside the closed unit disc.
    Rational { num: Polynomial, den: Polynomial },
    /// Finitely many Taylor coefficients and a bound on the sum of the moduli
    /// of the omitted ones.
    Taylor { coeffs: Vec<Complex64>, tail_bound: f64 },
    /// Values on the uniform grid exp(2 pi i k / G), G a power of two >= 64.
    BoundarySamples { values: Vec<Complex64> },
    /// Polynomial in several variables (polydisc weights).
    Multivariate(MultiPolynomial),
}

/// The multiplier w of T = wU with its declared regularity.
#[derive(Debug, Clone)]
pub struct Weight {
    repr: WeightRepr,
    tags: BTreeSet<RegularityTag>,
    // Fourier coefficients of sampled weights, computed once.
    spectrum: Option<Arc<Vec<Complex64>>>,
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.tags == other.tags
    }
}

impl Weight {
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::from_polynomial(Polynomial::new(coeffs))
    }

    pub fn from_polynomial(p: Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(WroError::InvalidWeight("weight is identically zero".into()));
        }
        check_finite(p.coeffs())?;
        Ok(Weight {
            repr: WeightRepr::Polynomial(p),
            tags: RegularityTag::ALL.into_iter().collect(),
            spectrum: None,
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::from_polynomial(Polynomial::from_real(coeffs))
    }

    /// num / den. The denominator is checked to have no zero in the closed
    /// disc (with margin [`TOL_ZERO`]) and rescaled to constant term 1.
    pub fn rational(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.is_zero() {
            return Err(WroError::InvalidWeight("weight is identically zero".into()));
        }
        if den.is_zero() {
            return Err(WroError::InvalidWeight("zero denominator".into()));
        }
        check_finite(num.coeffs())?;
        check_finite(den.coeffs())?;
        for r in den.roots()? {
            if r.value.norm() <= 1.0 + TOL_ZERO {
                return Err(WroError::PoleInsideDisc {
                    re: r.value.re,
                    im: r.value.im,
                });
            }
        }
        let d0 = den.coeff(0);
        let num = Polynomial::new(num.coeffs().iter().map(|c| c / d0).collect());
        let den = Polynomial::new(den.coeffs().iter().map(|c| c / d0).collect());
        // a constant denominator is just a polynomial
        if den.degree() == 0 {
            return Self::from_polynomial(num);
        }
        Ok(Weight {
            repr: WeightRepr::Rational { num, den },
            tags: RegularityTag::ALL.into_iter().collect(),
            spectrum: None,
        })
    }

    pub fn taylor(
        coeffs: Vec<Complex64>,
        tail_bound: f64,
        tags: impl IntoIterator<Item = RegularityTag>,
    ) -> Result<Self> {
        if !(tail_bound >= 0.0 && tail_bound.is_finite()) {
            return Err(WroError::InvalidWeight(
                "Taylor tail bound must be finite and nonnegative".into(),
            ));
        }
        check_finite(&coeffs)?;
        if coeffs.iter().all(|c| c.norm() == 0.0) && tail_bound == 0.0 {
            return Err(WroError::InvalidWeight("weight is identically zero".into()));
        }
        if tail_bound == 0.0 {
            // no tail: the data is an exact polynomial
            return Self::from_polynomial(Polynomial::new(coeffs));
        }
        let mut tags: BTreeSet<_> = tags.into_iter().collect();
        close_tags(&mut tags);
        Ok(Weight {
            repr: WeightRepr::Taylor { coeffs, tail_bound },
            tags,
            spectrum: None,
        })
    }

    pub fn boundary_samples(
        values: Vec<Complex64>,
        tags: impl IntoIterator<Item = RegularityTag>,
    ) -> Result<Self> {
        let g = values.len();
        if g < MIN_SAMPLE_GRID || !g.is_power_of_two() {
            return Err(WroError::InvalidWeight(format!(
                "boundary grid size must be a power of two >= {MIN_SAMPLE_GRID}, got {g}"
            )));
        }
        check_finite(&values)?;
        let mut tags: BTreeSet<_> = tags.into_iter().collect();
        close_tags(&mut tags);
        let mut buf = values.clone();
        FftPlanner::new().plan_fft_forward(g).process(&mut buf);
        let scale = 1.0 / g as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        Ok(Weight {
            repr: WeightRepr::BoundarySamples { values },
            tags,
            spectrum: Some(Arc::new(buf)),
        })
    }

    pub fn multivariate(
        p: MultiPolynomial,
        tags: impl IntoIterator<Item = RegularityTag>,
    ) -> Result<Self> {
        check_finite(&p.terms.iter().map(|t| t.1).collect::<Vec<_>>())?;
        let mut tags: BTreeSet<_> = tags.into_iter().collect();
        if let Some(t) = tags.iter().find(|t| t.one_variable_only()) {
            return Err(WroError::InvalidWeight(format!(
                "tag `{}` is inconsistent with a weight in {} variables",
                t.as_str(),
                p.dim
            )));
        }
        // polynomials belong to the polydisc algebra
        tags.insert(RegularityTag::DiscAlgebra);
        close_tags(&mut tags);
        Ok(Weight {
            repr: WeightRepr::Multivariate(p),
            tags,
            spectrum: None,
        })
    }

    pub fn repr(&self) -> &WeightRepr {
        &self.repr
    }

    pub fn tags(&self) -> &BTreeSet<RegularityTag> {
        &self.tags
    }

    pub fn has_tag(&self, t: RegularityTag) -> bool {
        self.tags.contains(&t)
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        match &self.repr {
            WeightRepr::Multivariate(p) => p.dim(),
            _ => 1,
        }
    }

    /// Polynomial or rational: closed-form analysis is available.
    pub fn is_rational(&self) -> bool {
        matches!(
            self.repr,
            WeightRepr::Polynomial(_) | WeightRepr::Rational { .. }
        )
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match &self.repr {
            WeightRepr::Polynomial(p) => Some(p),
            _ => None,
        }
    }

    /// Numerator for rational-type weights (the polynomial itself for
    /// polynomials).
    pub fn numerator(&self) -> Option<&Polynomial> {
        match &self.repr {
            WeightRepr::Polynomial(p) => Some(p),
            WeightRepr::Rational { num, .. } => Some(num),
            _ => None,
        }
    }

    /// Evaluate at a point of the closed disc. Taylor weights are evaluated by
    /// their finite part. Sampled weights can only be evaluated on the circle.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match &self.repr {
            WeightRepr::Polynomial(p) => Ok(p.eval(z)),
            WeightRepr::Rational { num, den } => Ok(num.eval(z) / den.eval(z)),
            WeightRepr::Taylor { coeffs, .. } => Ok(coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)),
            WeightRepr::BoundarySamples { .. } => {
                if (z.norm() - 1.0).abs() > 1e-12 {
                    return Err(WroError::Precondition(
                        "sampled weights can only be evaluated on the unit circle".into(),
                    ));
                }
                let t = z.arg() / (2.0 * std::f64::consts::PI);
                Ok(self.eval_samples(t))
            }
            WeightRepr::Multivariate(_) => Err(WroError::Precondition(
                "multivariate weight needs a point of the polydisc".into(),
            )),
        }
    }

    /// Evaluate at exp(2 pi i t). Works for every one-variable representation;
    /// sampled weights use trigonometric interpolation (exact at grid nodes up
    /// to rounding).
    pub fn eval_on_circle(&self, t: f64) -> Complex64 {
        match &self.repr {
            WeightRepr::BoundarySamples { values } => {
                let g = values.len();
                let x = (t - t.floor()) * g as f64;
                if x == x.floor() {
                    return values[(x as usize) % g];
                }
                self.eval_samples(t)
            }
            WeightRepr::Multivariate(p) => {
                let mut z = vec![Complex64::new(1.0, 0.0); p.dim()];
                z[0] = cis_turns(t);
                p.eval(&z)
            }
            _ => self
                .eval(cis_turns(t))
                .expect("analytic representations evaluate on the circle"),
        }
    }

    fn eval_samples(&self, t: f64) -> Complex64 {
        let spec = self.spectrum.as_ref().expect("sampled weight has a spectrum");
        let g = spec.len();
        let half = g / 2;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in spec.iter().enumerate() {
            // symmetric frequency range; split the Nyquist term
            if j == half {
                let f = half as f64;
                acc += c * 0.5 * (cis_turns(f * t) + cis_turns(-f * t));
                continue;
            }
            let f = if j < half { j as f64 } else { j as f64 - g as f64 };
            acc += c * cis_turns(f * t);
        }
        acc
    }

    /// Evaluate a (possibly multivariate) weight at a point of the polytorus /
    /// polydisc given in full coordinates.
    pub fn eval_multi(&self, z: &[Complex64]) -> Result<Complex64> {
        match &self.repr {
            WeightRepr::Multivariate(p) => Ok(p.eval(z)),
            _ => {
                if z.is_empty() {
                    return Err(WroError::Precondition("empty point".into()));
                }
                // a one-variable weight viewed as a function of z_1
                self.eval(z[0])
            }
        }
    }

    /// Sum of coefficient moduli plus the tail bound: an upper bound for the
    /// sup norm on the closed disc. Samples use the largest modulus.
    pub fn sup_bound(&self) -> f64 {
        match &self.repr {
            WeightRepr::Polynomial(p) => p.coeffs().iter().map(|c| c.norm()).sum(),
            WeightRepr::Rational { .. } => {
                // sample the circle finely; a rational weight is smooth there
                (0..4096)
                    .map(|k| self.eval_on_circle(k as f64 / 4096.0).norm())
                    .fold(0.0, f64::max)
                    * (1.0 + 1e-6)
            }
            WeightRepr::Taylor { coeffs, tail_bound } => {
                coeffs.iter().map(|c| c.norm()).sum::<f64>() + tail_bound
            }
            WeightRepr::BoundarySamples { values } => {
                values.iter().map(|c| c.norm()).fold(0.0, f64::max)
            }
            WeightRepr::Multivariate(p) => p.terms().iter().map(|t| t.1.norm()).sum(),
        }
    }
}

fn check_finite(c: &[Complex64]) -> Result<()> {
    if c.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(WroError::InvalidWeight("non-finite coefficient".into()))
    }
}

/// First `count` Taylor coefficients at the origin.
pub fn taylor_coefficients(w: &Weight, count: usize) -> Result<Vec<Complex64>> {
    if count == 0 {
        return Err(WroError::Precondition("count must be positive".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    match w.repr() {
        WeightRepr::Polynomial(p) => Ok((0..count).map(|k| p.coeff(k)).collect()),
        WeightRepr::Rational { num, den } => {
            // power-series division; den(0) = 1 by normalization
            let mut out = vec![zero; count];
            for n in 0..count {
                let mut c = num.coeff(n);
                for j in 1..=den.degree().min(n) {
                    c -= den.coeff(j) * out[n - j];
                }
                out[n] = c;
            }
            Ok(out)
        }
        WeightRepr::Taylor { coeffs, .. } => Ok((0..count)
            .map(|k| coeffs.get(k).copied().unwrap_or(zero))
            .collect()),
        WeightRepr::BoundarySamples { .. } => Err(WroError::Unsupported(
            "boundary samples carry no analytic continuation data".into(),
        )),
        WeightRepr::Multivariate(_) => Err(WroError::Unsupported(
            "Taylor coefficients of a multivariate weight".into(),
        )),
    }
}

/// Values w(r exp(2 pi i k / G)) for k = 0..G-1.
pub fn boundary_samples(w: &Weight, grid_size: usize, r: f64) -> Result<Vec<Complex64>> {
    if grid_size == 0 {
        return Err(WroError::Precondition("grid size must be positive".into()));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(WroError::Precondition("radius must lie in (0, 1]".into()));
    }
    if r < 1.0 && matches!(w.repr(), WeightRepr::BoundarySamples { .. }) {
        return Err(WroError::Precondition(
            "cannot sample inside the disc from boundary values".into(),
        ));
    }
    (0..grid_size)
        .map(|k| {
            let t = k as f64 / grid_size as f64;
            if r == 1.0 {
                Ok(w.eval_on_circle(t))
            } else {
                w.eval(cis_turns(t) * r)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn taylor_of_polynomial_pads() {
        let w = Weight::from_real(&[-2.0, 1.0]).unwrap();
        assert_eq!(
            taylor_coefficients(&w, 3).unwrap(),
            vec![c(-2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn taylor_of_geometric_series() {
        // 1 / (1 - z/3)
        let w = Weight::rational(
            Polynomial::from_real(&[1.0]),
            Polynomial::from_real(&[1.0, -1.0 / 3.0]),
        )
        .unwrap();
        let t = taylor_coefficients(&w, 3).unwrap();
        assert!(close(&t, &[c(1.0, 0.0), c(1.0 / 3.0, 0.0), c(1.0 / 9.0, 0.0)], 1e-16));
    }

    #[test]
    fn taylor_of_product() {
        let w = Weight::from_polynomial(
            Polynomial::from_real(&[-2.0, 1.0]).mul(&Polynomial::from_real(&[-0.5, 1.0])),
        )
        .unwrap();
        assert_eq!(
            taylor_coefficients(&w, 4).unwrap(),
            vec![c(1.0, 0.0), c(-2.5, 0.0), c(1.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn rational_normalizes_denominator() {
        // 1/(z - 3) = (-1/3) / (1 - z/3)
        let w = Weight::rational(Polynomial::from_real(&[1.0]), Polynomial::from_real(&[-3.0, 1.0]))
            .unwrap();
        match w.repr() {
            WeightRepr::Rational { num, den } => {
                assert_eq!(den.coeff(0), c(1.0, 0.0));
                assert!((num.coeff(0) - c(-1.0 / 3.0, 0.0)).norm() < 1e-16);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rational_rejects_pole_in_disc() {
        let e = Weight::rational(Polynomial::from_real(&[1.0]), Polynomial::from_real(&[-0.5, 1.0]))
            .unwrap_err();
        assert!(matches!(e, WroError::PoleInsideDisc { .. }));
        let e = Weight::rational(Polynomial::from_real(&[1.0]), Polynomial::from_real(&[-1.0, 1.0]))
            .unwrap_err();
        assert!(matches!(e, WroError::PoleInsideDisc { .. }));
    }

    #[test]
    fn samples_on_circle() {
        let z = Weight::from_real(&[0.0, 1.0]).unwrap();
        assert_eq!(
            boundary_samples(&z, 4, 1.0).unwrap(),
            vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        );
        let three = Weight::from_real(&[3.0]).unwrap();
        assert_eq!(boundary_samples(&three, 2, 1.0).unwrap(), vec![c(3.0, 0.0); 2]);
        let w = Weight::from_real(&[-2.0, 1.0]).unwrap();
        assert_eq!(
            boundary_samples(&w, 2, 1.0).unwrap(),
            vec![c(-1.0, 0.0), c(-3.0, 0.0)]
        );
    }

    #[test]
    fn sampled_weight_restrictions() {
        let vals = boundary_samples(&Weight::from_real(&[-2.0, 1.0]).unwrap(), 64, 1.0).unwrap();
        let s = Weight::boundary_samples(vals, []).unwrap();
        assert!(boundary_samples(&s, 8, 0.5).is_err());
        assert!(taylor_coefficients(&s, 3).is_err());
        // interpolation reproduces the analytic weight off the grid
        let v = s.eval_on_circle(0.123);
        let exact = cis_turns(0.123) - c(2.0, 0.0);
        assert!((v - exact).norm() < 1e-12);
        assert!(Weight::boundary_samples(vec![c(1.0, 0.0); 48], []).is_err());
    }

    #[test]
    fn polynomial_carries_every_tag() {
        let w = Weight::from_real(&[1.0, 1.0]).unwrap();
        for t in RegularityTag::ALL {
            assert!(w.has_tag(t));
        }
    }

    #[test]
    fn tag_closure_and_consistency() {
        let w = Weight::taylor(vec![c(1.0, 0.0)], 0.1, [RegularityTag::LambdaClass]).unwrap();
        assert!(w.has_tag(RegularityTag::Ell1A));
        assert!(w.has_tag(RegularityTag::DiscAlgebra));
        assert!(w.has_tag(RegularityTag::HInf));
        let p = MultiPolynomial::new(2, vec![(vec![1, 0], c(1.0, 0.0))]).unwrap();
        assert!(Weight::multivariate(p, [RegularityTag::MultiplierBloch]).is_err());
        assert!(Weight::taylor(vec![c(1.0, 0.0)], -1.0, []).is_err());
    }

    #[test]
    fn multivariate_slices() {
        // z1 z2 - 2
        let p = MultiPolynomial::new(
            2,
            vec![(vec![1, 1], c(1.0, 0.0)), (vec![0, 0], c(-2.0, 0.0))],
        )
        .unwrap();
        let q = p.in_first_variable(&[c(0.0, 1.0)]);
        assert_eq!(q.coeffs(), &[c(-2.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(p.eval(&[c(2.0, 0.0), c(1.0, 0.0)]), c(0.0, 0.0));
    }
}
