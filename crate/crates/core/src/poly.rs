//! Dense univariate polynomials with complex coefficients and companion-matrix
//! root finding.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, WroError};

/// Roots closer than this (after polishing) are treated as one multiple root.
pub const ROOT_CLUSTER_TOL: f64 = 1e-7;

/// Coefficients in ascending order: `coeffs[k]` multiplies `z^k`.
///
/// Trailing zero coefficients are trimmed on construction, so `degree()` is
/// exact. The zero polynomial is stored as an empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

/// A root together with its multiplicity and a rough accuracy estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// Estimated absolute error of `value`: the last Newton correction for
    /// simple roots, the cluster spread for multiple roots, zero for exact
    /// roots at the origin.
    pub error: f64,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `lead * prod (z - r)` over the given roots.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut p = Polynomial::constant(lead);
        for &r in roots {
            p = p.mul(&Polynomial::new(vec![-r, Complex64::new(1.0, 0.0)]));
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::new(Vec::new());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Number of leading zero coefficients, i.e. the order of vanishing at 0.
    pub fn order_at_zero(&self) -> usize {
        self.coeffs
            .iter()
            .take_while(|c| **c == Complex64::new(0.0, 0.0))
            .count()
    }

    /// All roots with multiplicity.
    ///
    /// Exact zeros at the origin are split off first. The remaining roots are
    /// eigenvalues of the companion matrix, each polished by one Newton step,
    /// then clustered within [`ROOT_CLUSTER_TOL`].
    pub fn roots(&self) -> Result<Vec<Root>> {
        if self.is_zero() {
            return Err(WroError::InvalidWeight(
                "the zero polynomial has no isolated roots".into(),
            ));
        }
        let mut out = Vec::new();
        let k0 = self.order_at_zero();
        if k0 > 0 {
            out.push(Root {
                value: Complex64::new(0.0, 0.0),
                multiplicity: k0,
                error: 0.0,
            });
        }
        let reduced = Polynomial::new(self.coeffs[k0..].to_vec());
        let d = reduced.degree();
        if d == 0 {
            return Ok(out);
        }

        let eigen = companion_eigenvalues(&reduced)?;
        let mut polished: Vec<(Complex64, f64)> = eigen
            .into_iter()
            .map(|z| {
                let (p, dp) = reduced.eval_with_derivative(z);
                if dp.norm() > 0.0 && (p / dp).is_finite() {
                    let step = p / dp;
                    (z - step, step.norm())
                } else {
                    (z, 0.0)
                }
            })
            .collect();

        // deterministic order before clustering
        polished.sort_by(|a, b| {
            a.0.re
                .total_cmp(&b.0.re)
                .then(a.0.im.total_cmp(&b.0.im))
        });

        let mut clusters: Vec<Vec<(Complex64, f64)>> = Vec::new();
        for item in polished {
            match clusters
                .iter_mut()
                .find(|c| c.iter().any(|(z, _)| (*z - item.0).norm() < ROOT_CLUSTER_TOL))
            {
                Some(c) => c.push(item),
                None => clusters.push(vec![item]),
            }
        }
        for c in clusters {
            let m = c.len();
            let centre = c.iter().map(|(z, _)| *z).sum::<Complex64>() / m as f64;
            let error = if m == 1 {
                c[0].1
            } else {
                c.iter().map(|(z, _)| (*z - centre).norm()).fold(0.0, f64::max)
            };
            out.push(Root {
                value: centre,
                multiplicity: m,
                error: error.max(f64::EPSILON * centre.norm().max(1.0)),
            });
        }
        Ok(out)
    }
}

fn companion_eigenvalues(p: &Polynomial) -> Result<Vec<Complex64>> {
    let d = p.degree();
    let lead = p.leading();
    if d == 1 {
        return Ok(vec![-p.coeff(0) / lead]);
    }
    let mut c = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        c[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        c[(i, d - 1)] = -p.coeff(i) / lead;
    }
    let schur = nalgebra::Schur::try_new(c, f64::EPSILON, 10_000)
        .ok_or_else(|| WroError::RootFinding("companion Schur iteration did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| WroError::RootFinding("companion eigenvalues unavailable".into()))?;
    Ok(ev.iter().copied().collect())
}
