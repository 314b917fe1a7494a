use serde::{Deserialize, Serialize};

use crate::error::{Result, WroError};

/// The Banach space of analytic functions the operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SpaceSpec {
    DiscAlgebra,
    Hinf,
    HardyBanach,
    Bergman { p: f64 },
    Bloch,
    Dirichlet { p: f64 },
    #[serde(rename = "smooth_cna")]
    SmoothCnA { order: u32 },
    #[serde(rename = "sobolev_wna")]
    SobolevWnA { order: u32 },
    #[serde(rename = "ell1a")]
    EllOneA,
    AnnulusHardy { inner_radius: f64, p: f64 },
    PolydiscAlgebra { dim: u32 },
    PolydiscBergman { dim: u32, p: f64 },
}

impl SpaceSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(WroError::InvalidSpace(m.to_string()));
        match *self {
            SpaceSpec::Bergman { p } | SpaceSpec::Dirichlet { p } if !(p >= 1.0 && p.is_finite()) => {
                bad("p must be a finite number >= 1")
            }
            SpaceSpec::SmoothCnA { order } | SpaceSpec::SobolevWnA { order } if order < 1 => {
                bad("smoothness order must be >= 1")
            }
            SpaceSpec::AnnulusHardy { inner_radius, p } => {
                if !(inner_radius > 0.0 && inner_radius < 1.0) {
                    bad("annulus inner radius must lie strictly between 0 and 1")
                } else if !(p >= 1.0) {
                    bad("p must be >= 1")
                } else {
                    Ok(())
                }
            }
            SpaceSpec::PolydiscAlgebra { dim } if dim < 2 => bad("polydisc dimension must be >= 2"),
            SpaceSpec::PolydiscBergman { dim, p } => {
                if dim < 2 {
                    bad("polydisc dimension must be >= 2")
                } else if !(p >= 1.0 && p.is_finite()) {
                    bad("p must be a finite number >= 1")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Number of complex variables.
    pub fn dim(&self) -> usize {
        match *self {
            SpaceSpec::PolydiscAlgebra { dim } | SpaceSpec::PolydiscBergman { dim, .. } => {
                dim as usize
            }
            _ => 1,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            SpaceSpec::DiscAlgebra => "A(U)".into(),
            SpaceSpec::Hinf => "H^inf(U)".into(),
            SpaceSpec::HardyBanach => "Hardy-Banach space".into(),
            SpaceSpec::Bergman { p } => format!("Bergman A^{p}(U)"),
            SpaceSpec::Bloch => "Bloch space".into(),
            SpaceSpec::Dirichlet { p } => format!("Dirichlet D_{p}"),
            SpaceSpec::SmoothCnA { order } => format!("C^{order}_A(U)"),
            SpaceSpec::SobolevWnA { order } => format!("W^{order}_A(U)"),
            SpaceSpec::EllOneA => "l^1_A".into(),
            SpaceSpec::AnnulusHardy { inner_radius, p } => {
                format!("H^{p} of the annulus {inner_radius} < |z| < 1")
            }
            SpaceSpec::PolydiscAlgebra { dim } => format!("A(U^{dim})"),
            SpaceSpec::PolydiscBergman { dim, p } => format!("Bergman A^{p}(U^{dim})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_variants() {
        let s: SpaceSpec = serde_json::from_str(r#"{"variant":"bergman","p":2}"#).unwrap();
        assert_eq!(s, SpaceSpec::Bergman { p: 2.0 });
        let s: SpaceSpec = serde_json::from_str(r#"{"variant":"ell1a"}"#).unwrap();
        assert_eq!(s, SpaceSpec::EllOneA);
        let s: SpaceSpec =
            serde_json::from_str(r#"{"variant":"annulus_hardy","inner_radius":0.5,"p":2}"#).unwrap();
        assert!(s.validate().is_ok());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SpaceSpec::Bergman { p: 0.5 }.validate().is_err());
        assert!(SpaceSpec::AnnulusHardy { inner_radius: 1.0, p: 2.0 }.validate().is_err());
        assert!(SpaceSpec::PolydiscAlgebra { dim: 1 }.validate().is_err());
        assert!(SpaceSpec::SmoothCnA { order: 0 }.validate().is_err());
    }
}
