use std::f64::consts::{E, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WroError};

/// Irrational rotation numbers with closed-form definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedIrrational {
    /// Fractional part of the golden ratio, (sqrt 5 - 1) / 2.
    Golden,
    /// sqrt 2 - 1.
    Sqrt2,
    /// e - 2.
    EFrac,
}

impl NamedIrrational {
    pub fn turns(self) -> f64 {
        match self {
            NamedIrrational::Golden => (5f64.sqrt() - 1.0) / 2.0,
            NamedIrrational::Sqrt2 => SQRT_2 - 1.0,
            NamedIrrational::EFrac => E - 2.0,
        }
    }
}

/// A rotation z -> alpha z of the circle, alpha = exp(2 pi i t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationAngle {
    /// alpha = exp(2 pi i p / q) with 0 <= p < q and gcd(p, q) = 1.
    RootOfUnity { p: u64, q: u64 },
    Named(NamedIrrational),
    /// A raw angle in radians. Floating point cannot certify irrationality, so
    /// the caller must state whether the rotation is to be treated as
    /// non-periodic.
    Radians { value: f64, assumed_nonperiodic: bool },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// exp(2 pi i t), exact at multiples of a quarter turn.
pub(crate) fn cis_turns(t: f64) -> Complex64 {
    let t = t - t.floor();
    let quarter = t * 4.0;
    if quarter == quarter.floor() {
        return match quarter as u32 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

impl RotationAngle {
    /// Root of unity exp(2 pi i p/q), reduced to lowest terms.
    pub fn root_of_unity(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(WroError::InvalidRotation("q must be positive".into()));
        }
        let p = p % q;
        let g = gcd(p, q).max(1);
        Ok(RotationAngle::RootOfUnity { p: p / g, q: q / g })
    }

    pub fn golden() -> Self {
        RotationAngle::Named(NamedIrrational::Golden)
    }

    pub fn radians(value: f64, assumed_nonperiodic: bool) -> Result<Self> {
        if !value.is_finite() {
            return Err(WroError::InvalidRotation("angle must be finite".into()));
        }
        Ok(RotationAngle::Radians {
            value,
            assumed_nonperiodic,
        })
    }

    /// Rotation number in turns, reduced to [0, 1).
    pub fn turns(&self) -> f64 {
        let t = match *self {
            RotationAngle::RootOfUnity { p, q } => p as f64 / q as f64,
            RotationAngle::Named(n) => n.turns(),
            RotationAngle::Radians { value, .. } => value / (2.0 * PI),
        };
        t - t.floor()
    }

    /// `Some(true)` for roots of unity, `Some(false)` when non-periodicity is
    /// known or asserted, `None` for raw radians without the assertion.
    pub fn is_periodic(&self) -> Option<bool> {
        match *self {
            RotationAngle::RootOfUnity { .. } => Some(true),
            RotationAngle::Named(_) => Some(false),
            RotationAngle::Radians {
                assumed_nonperiodic,
                ..
            } => {
                if assumed_nonperiodic {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// Errors unless the rotation is known (or asserted) to be non-periodic.
    pub fn require_nonperiodic(&self) -> Result<()> {
        match (*self, self.is_periodic()) {
            (RotationAngle::RootOfUnity { p, q }, _) => Err(WroError::RootOfUnity { p, q }),
            (_, Some(false)) => Ok(()),
            _ => Err(WroError::PeriodicityUnknown),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.power(1)
    }

    /// alpha^k. Every caller that needs alpha^k goes through this function so
    /// independently computed quantities agree bit for bit.
    pub fn power(&self, k: i64) -> Complex64 {
        match *self {
            RotationAngle::RootOfUnity { p, q } => {
                let r = (k.rem_euclid(q as i64) as u64 * p) % q;
                cis_turns(r as f64 / q as f64)
            }
            _ => {
                let t = self.turns() * k as f64;
                cis_turns(t - t.floor())
            }
        }
    }

    /// The point alpha^k * base expressed in turns, for base given in turns.
    pub fn orbit_turns(&self, base_turns: f64, k: i64) -> f64 {
        let t = match *self {
            RotationAngle::RootOfUnity { p, q } => {
                let r = (k.rem_euclid(q as i64) as u64 * p) % q;
                base_turns + r as f64 / q as f64
            }
            _ => base_turns + self.turns() * k as f64,
        };
        t - t.floor()
    }
}

/// Rotation of the polydisc, z_i -> alpha_i z_i, together with a set of
/// generators for the integer relation lattice {m : prod alpha_i^{m_i} = 1}.
///
/// An empty lattice asserts that only the trivial relation holds; for raw
/// radians that assertion is the caller's responsibility.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationVector {
    pub angles: Vec<RotationAngle>,
    pub relations: Vec<Vec<i64>>,
}

impl RotationVector {
    pub fn new(angles: Vec<RotationAngle>, relations: Vec<Vec<i64>>) -> Result<Self> {
        if angles.is_empty() {
            return Err(WroError::InvalidRotation("empty rotation vector".into()));
        }
        if relations.iter().any(|r| r.len() != angles.len()) {
            return Err(WroError::InvalidRotation(
                "relation vectors must have one entry per angle".into(),
            ));
        }
        if relations.iter().any(|r| r.iter().all(|&m| m == 0)) {
            return Err(WroError::InvalidRotation("zero relation vector".into()));
        }
        Ok(RotationVector { angles, relations })
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    /// True when the lattice is declared trivial and no component is periodic
    /// (a root-of-unity component always contributes a relation).
    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
            && self.angles.iter().all(|a| a.is_periodic() == Some(false))
    }
}

/// Either a circle rotation or a polydisc rotation.
#[derive(Debug, Clone, PartialEq)]
pub enum Rotation {
    Single(RotationAngle),
    Vector(RotationVector),
}

impl Rotation {
    pub fn single(&self) -> Option<&RotationAngle> {
        match self {
            Rotation::Single(a) => Some(a),
            Rotation::Vector(v) if v.dim() == 1 && v.relations.is_empty() => v.angles.first(),
            Rotation::Vector(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Rotation::Single(_) => 1,
            Rotation::Vector(v) => v.dim(),
        }
    }
}

impl From<RotationAngle> for Rotation {
    fn from(a: RotationAngle) -> Self {
        Rotation::Single(a)
    }
}
