//! JSON input documents for weights, rotations and whole jobs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    MultiPolynomial, NamedIrrational, RegularityTag, Rotation, RotationAngle, RotationVector,
    SpaceSpec, Weight, WeightRepr,
};
use crate::error::{Result, WroError};
use crate::poly::Polynomial;

/// One monomial of a multivariate weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub coeff: Complex64,
}

/// Serialized form of a [`Weight`]. Complex numbers are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightDoc {
    Poly {
        coeffs: Vec<Complex64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<RegularityTag>,
    },
    Rational {
        num: Vec<Complex64>,
        den: Vec<Complex64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<RegularityTag>,
    },
    Taylor {
        coeffs: Vec<Complex64>,
        tail_bound: f64,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<RegularityTag>,
    },
    Samples {
        values: Vec<Complex64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<RegularityTag>,
    },
    Polyn {
        dim: usize,
        terms: Vec<TermDoc>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<RegularityTag>,
    },
}

impl WeightDoc {
    pub fn into_weight(self) -> Result<Weight> {
        match self {
            // Polynomials and rational functions are multipliers of every
            // supported space, so declared tags are redundant for them.
            WeightDoc::Poly { coeffs, .. } => Weight::polynomial(coeffs),
            WeightDoc::Rational { num, den, .. } => {
                Weight::rational(Polynomial::new(num), Polynomial::new(den))
            }
            WeightDoc::Taylor {
                coeffs,
                tail_bound,
                tags,
            } => Weight::taylor(coeffs, tail_bound, tags),
            WeightDoc::Samples { values, tags } => Weight::boundary_samples(values, tags),
            WeightDoc::Polyn { dim, terms, tags } => Weight::multivariate(
                MultiPolynomial::new(dim, terms.into_iter().map(|t| (t.exp, t.coeff)).collect())?,
                tags,
            ),
        }
    }

    pub fn from_weight(w: &Weight) -> Self {
        let tags = || w.tags().iter().copied().collect::<Vec<_>>();
        match w.repr() {
            WeightRepr::Polynomial(p) => WeightDoc::Poly {
                coeffs: p.coeffs().to_vec(),
                tags: Vec::new(),
            },
            WeightRepr::Rational { num, den } => WeightDoc::Rational {
                num: num.coeffs().to_vec(),
                den: den.coeffs().to_vec(),
                tags: Vec::new(),
            },
            WeightRepr::Taylor { coeffs, tail_bound } => WeightDoc::Taylor {
                coeffs: coeffs.clone(),
                tail_bound: *tail_bound,
                tags: tags(),
            },
            WeightRepr::BoundarySamples { values } => WeightDoc::Samples {
                values: values.clone(),
                tags: tags(),
            },
            WeightRepr::Multivariate(p) => WeightDoc::Polyn {
                dim: p.dim(),
                terms: p
                    .terms()
                    .iter()
                    .map(|(e, c)| TermDoc {
                        exp: e.clone(),
                        coeff: *c,
                    })
                    .collect(),
                tags: tags(),
            },
        }
    }
}

/// Serialized form of a rotation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RotationDoc {
    Named {
        name: NamedIrrational,
    },
    Rational {
        p: u64,
        q: u64,
    },
    Radians {
        value: f64,
        #[serde(default)]
        assumed_nonperiodic: bool,
    },
    Vector {
        angles: Vec<RotationDoc>,
        #[serde(default)]
        relations: Vec<Vec<i64>>,
    },
}

impl RotationDoc {
    fn angle(self) -> Result<RotationAngle> {
        match self {
            RotationDoc::Named { name } => Ok(RotationAngle::Named(name)),
            RotationDoc::Rational { p, q } => RotationAngle::root_of_unity(p, q),
            RotationDoc::Radians {
                value,
                assumed_nonperiodic,
            } => RotationAngle::radians(value, assumed_nonperiodic),
            RotationDoc::Vector { .. } => Err(WroError::InvalidRotation(
                "nested rotation vectors are not allowed".into(),
            )),
        }
    }

    pub fn into_rotation(self) -> Result<Rotation> {
        match self {
            RotationDoc::Vector { angles, relations } => {
                let angles = angles
                    .into_iter()
                    .map(RotationDoc::angle)
                    .collect::<Result<Vec<_>>>()?;
                Ok(Rotation::Vector(RotationVector::new(angles, relations)?))
            }
            other => Ok(Rotation::Single(other.angle()?)),
        }
    }

    pub fn from_angle(a: &RotationAngle) -> Self {
        match *a {
            RotationAngle::RootOfUnity { p, q } => RotationDoc::Rational { p, q },
            RotationAngle::Named(name) => RotationDoc::Named { name },
            RotationAngle::Radians {
                value,
                assumed_nonperiodic,
            } => RotationDoc::Radians {
                value,
                assumed_nonperiodic,
            },
        }
    }

    pub fn from_rotation(r: &Rotation) -> Self {
        match r {
            Rotation::Single(a) => Self::from_angle(a),
            Rotation::Vector(v) => RotationDoc::Vector {
                angles: v.angles.iter().map(Self::from_angle).collect(),
                relations: v.relations.clone(),
            },
        }
    }
}

/// The mathematical part of a job document.
#[derive(Debug, Clone, PartialEq)]
pub struct JobInputs {
    pub weight: Weight,
    pub rotation: Rotation,
    pub space: SpaceSpec,
}

#[derive(Deserialize)]
struct RawInputs {
    weight: WeightDoc,
    rotation: RotationDoc,
    space: SpaceSpec,
}

fn parse_error(e: serde_json::Error) -> WroError {
    WroError::Parse(e.to_string())
}

/// Parse a weight document such as `{"type":"poly","coeffs":[[-2,0],[1,0]]}`.
pub fn parse_weight(doc: &str) -> Result<Weight> {
    serde_json::from_str::<WeightDoc>(doc)
        .map_err(parse_error)?
        .into_weight()
}

/// Parse the `weight`, `rotation` and `space` keys of a job document; other
/// keys are ignored here.
pub fn parse_job_inputs(doc: &serde_json::Value) -> Result<JobInputs> {
    let raw: RawInputs = serde_json::from_value(doc.clone()).map_err(parse_error)?;
    raw.space.validate()?;
    Ok(JobInputs {
        weight: raw.weight.into_weight()?,
        rotation: raw.rotation.into_rotation()?,
        space: raw.space,
    })
}

#[derive(Deserialize)]
struct RawWeightRotation {
    weight: WeightDoc,
    rotation: RotationDoc,
}

/// Parse only the `weight` and `rotation` keys; used where no space is needed.
pub fn parse_weight_rotation(doc: &serde_json::Value) -> Result<(Weight, Rotation)> {
    let raw: RawWeightRotation = serde_json::from_value(doc.clone()).map_err(parse_error)?;
    Ok((raw.weight.into_weight()?, raw.rotation.into_rotation()?))
}

impl JobInputs {
    /// Canonical JSON echo of the validated inputs.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "weight": WeightDoc::from_weight(&self.weight),
            "rotation": RotationDoc::from_rotation(&self.rotation),
            "space": self.space,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_examples() {
        let w = parse_weight(r#"{"type":"poly","coeffs":[[-2,0],[1,0]]}"#).unwrap();
        assert_eq!(w.as_polynomial().unwrap(), &Polynomial::from_real(&[-2.0, 1.0]));
        let w = parse_weight(r#"{"type":"rational","num":[[1,0]],"den":[[-3,0],[1,0]]}"#).unwrap();
        assert!(matches!(w.repr(), WeightRepr::Rational { .. }));
        let e = parse_weight(r#"{"type":"rational","num":[[1,0]],"den":[[-0.5,0],[1,0]]}"#)
            .unwrap_err();
        assert!(matches!(e, WroError::PoleInsideDisc { .. }));
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        assert!(matches!(parse_weight("{"), Err(WroError::Parse(_))));
        assert!(matches!(
            parse_weight(r#"{"type":"poly","coeffs":[[1]]}"#),
            Err(WroError::Parse(_))
        ));
        assert!(matches!(
            parse_weight(r#"{"type":"cubic","coeffs":[]}"#),
            Err(WroError::Parse(_))
        ));
    }

    #[test]
    fn inconsistent_tags_rejected() {
        let doc = r#"{"type":"polyn","dim":2,"terms":[{"exp":[1,0],"coeff":[1,0]}],"tags":["ell1A"]}"#;
        assert!(matches!(parse_weight(doc), Err(WroError::InvalidWeight(_))));
    }

    #[test]
    fn job_document() {
        let v: serde_json::Value = serde_json::from_str(
            r#"{"weight":{"type":"poly","coeffs":[[-2,0],[1,0]]},
                "rotation":{"kind":"rational","p":2,"q":6},
                "space":{"variant":"bergman","p":2},
                "n_ladder":[64,128]}"#,
        )
        .unwrap();
        let job = parse_job_inputs(&v).unwrap();
        assert_eq!(
            job.rotation,
            Rotation::Single(RotationAngle::RootOfUnity { p: 1, q: 3 })
        );
        assert_eq!(job.space, SpaceSpec::Bergman { p: 2.0 });
        let echo = job.echo();
        assert_eq!(echo["rotation"]["q"], 3);
    }

    #[test]
    fn vector_rotation() {
        let d: RotationDoc = serde_json::from_str(
            r#"{"kind":"vector","angles":[{"kind":"named","name":"golden"},{"kind":"named","name":"sqrt2"}]}"#,
        )
        .unwrap();
        let r = d.into_rotation().unwrap();
        assert_eq!(r.dim(), 2);
    }
}
