//! Rotation-invariant planar sets.
//!
//! A set that is invariant under every rotation about 0 is determined by the
//! set of moduli of its points, a subset of [0, inf). [`CircularSet`] stores
//! that subset as a finite union of disjoint intervals, so it cannot express a
//! set that is not rotation invariant.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Radii closer than this (relative) are identified.
pub const MERGE_REL_TOL: f64 = 1e-9;

/// One connected piece of a circular set, named by its shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    /// {0}
    Origin,
    /// |z| = r
    Circle(f64),
    /// |z| < r
    OpenDisc(f64),
    /// |z| <= r
    ClosedDisc(f64),
    /// a <= |z| <= b
    ClosedAnnulus(f64, f64),
    /// a < |z| < b
    OpenAnnulus(f64, f64),
    /// a <= |z| < b
    AnnulusInnerClosed(f64, f64),
    /// a < |z| <= b
    AnnulusOuterClosed(f64, f64),
}

impl Component {
    fn interval(self) -> Option<Interval> {
        let iv = |lo, hi, lo_c, hi_c| Interval { lo, hi, lo_c, hi_c };
        let i = match self {
            Component::Origin => iv(0.0, 0.0, true, true),
            Component::Circle(r) => iv(r, r, true, true),
            Component::OpenDisc(r) => iv(0.0, r, true, false),
            Component::ClosedDisc(r) => iv(0.0, r, true, true),
            Component::ClosedAnnulus(a, b) => iv(a, b, true, true),
            Component::OpenAnnulus(a, b) => iv(a, b, false, false),
            Component::AnnulusInnerClosed(a, b) => iv(a, b, true, false),
            Component::AnnulusOuterClosed(a, b) => iv(a, b, false, true),
        };
        i.is_valid().then_some(i)
    }

    /// Largest modulus in the closure.
    pub fn outer_radius(self) -> f64 {
        match self {
            Component::Origin => 0.0,
            Component::Circle(r) | Component::OpenDisc(r) | Component::ClosedDisc(r) => r,
            Component::ClosedAnnulus(_, b)
            | Component::OpenAnnulus(_, b)
            | Component::AnnulusInnerClosed(_, b)
            | Component::AnnulusOuterClosed(_, b) => b,
        }
    }

    /// Smallest modulus in the closure.
    pub fn inner_radius(self) -> f64 {
        match self {
            Component::Origin
            | Component::OpenDisc(_)
            | Component::ClosedDisc(_) => 0.0,
            Component::Circle(r) => r,
            Component::ClosedAnnulus(a, _)
            | Component::OpenAnnulus(a, _)
            | Component::AnnulusInnerClosed(a, _)
            | Component::AnnulusOuterClosed(a, _) => a,
        }
    }

    pub fn to_set(self) -> CircularSet {
        CircularSet::from_components(&[self])
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Component::Origin => write!(f, "{{0}}"),
            Component::Circle(r) => write!(f, "|z| = {r}"),
            Component::OpenDisc(r) => write!(f, "|z| < {r}"),
            Component::ClosedDisc(r) => write!(f, "|z| <= {r}"),
            Component::ClosedAnnulus(a, b) => write!(f, "{a} <= |z| <= {b}"),
            Component::OpenAnnulus(a, b) => write!(f, "{a} < |z| < {b}"),
            Component::AnnulusInnerClosed(a, b) => write!(f, "{a} <= |z| < {b}"),
            Component::AnnulusOuterClosed(a, b) => write!(f, "{a} < |z| <= {b}"),
        }
    }
}

/// A radial interval with open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Interval {
    lo: f64,
    hi: f64,
    lo_c: bool,
    hi_c: bool,
}

impl Interval {
    fn is_valid(&self) -> bool {
        self.lo >= 0.0
            && self.lo.is_finite()
            && !self.hi.is_nan()
            && (self.lo < self.hi || (self.lo == self.hi && self.lo_c && self.hi_c))
    }

    fn component(&self) -> Component {
        if self.lo == self.hi {
            return if self.lo == 0.0 {
                Component::Origin
            } else {
                Component::Circle(self.lo)
            };
        }
        match (self.lo == 0.0 && self.lo_c, self.lo_c, self.hi_c) {
            (true, _, true) => Component::ClosedDisc(self.hi),
            (true, _, false) => Component::OpenDisc(self.hi),
            (false, true, true) => Component::ClosedAnnulus(self.lo, self.hi),
            (false, false, false) => Component::OpenAnnulus(self.lo, self.hi),
            (false, true, false) => Component::AnnulusInnerClosed(self.lo, self.hi),
            (false, false, true) => Component::AnnulusOuterClosed(self.lo, self.hi),
        }
    }

    fn contains(&self, r: f64) -> bool {
        (r > self.lo || (r == self.lo && self.lo_c)) && (r < self.hi || (r == self.hi && self.hi_c))
    }

    /// self minus other: at most two pieces.
    fn minus(&self, j: &Interval) -> [Interval; 2] {
        let left = Interval {
            lo: self.lo,
            lo_c: self.lo_c,
            hi: self.hi.min(j.lo),
            hi_c: match j.lo.partial_cmp(&self.hi) {
                Some(Ordering::Less) => !j.lo_c,
                Some(Ordering::Equal) => self.hi_c && !j.lo_c,
                _ => self.hi_c,
            },
        };
        let right = Interval {
            lo: self.lo.max(j.hi),
            lo_c: match j.hi.partial_cmp(&self.lo) {
                Some(Ordering::Greater) => !j.hi_c,
                Some(Ordering::Equal) => self.lo_c && !j.hi_c,
                _ => self.lo_c,
            },
            hi: self.hi,
            hi_c: self.hi_c,
        };
        [left, right]
    }
}

fn near(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= MERGE_REL_TOL * a.abs().max(b.abs())
}

/// A rotation-invariant subset of the plane.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<Component>", try_from = "Vec<Component>")]
pub struct CircularSet {
    // sorted, pairwise disjoint, non-adjacent
    parts: Vec<Interval>,
}

impl From<CircularSet> for Vec<Component> {
    fn from(s: CircularSet) -> Self {
        s.components()
    }
}

impl TryFrom<Vec<Component>> for CircularSet {
    type Error = String;

    fn try_from(v: Vec<Component>) -> Result<Self, String> {
        for c in &v {
            let bad = match *c {
                Component::Origin => false,
                Component::Circle(r) | Component::OpenDisc(r) | Component::ClosedDisc(r) => {
                    !(r >= 0.0 && r.is_finite())
                }
                Component::ClosedAnnulus(a, b)
                | Component::OpenAnnulus(a, b)
                | Component::AnnulusInnerClosed(a, b)
                | Component::AnnulusOuterClosed(a, b) => {
                    !(a >= 0.0 && a <= b && b.is_finite())
                }
            };
            if bad {
                return Err(format!("invalid component {c:?}"));
            }
        }
        Ok(CircularSet::from_components(&v))
    }
}

impl CircularSet {
    pub fn empty() -> Self {
        CircularSet { parts: Vec::new() }
    }

    pub fn origin() -> Self {
        Component::Origin.to_set()
    }

    pub fn circle(r: f64) -> Self {
        Component::Circle(r).to_set()
    }

    pub fn open_disc(r: f64) -> Self {
        Component::OpenDisc(r).to_set()
    }

    pub fn closed_disc(r: f64) -> Self {
        Component::ClosedDisc(r).to_set()
    }

    pub fn closed_annulus(a: f64, b: f64) -> Self {
        Component::ClosedAnnulus(a, b).to_set()
    }

    pub fn open_annulus(a: f64, b: f64) -> Self {
        Component::OpenAnnulus(a, b).to_set()
    }

    pub fn from_components(cs: &[Component]) -> Self {
        normalize(cs.iter().filter_map(|c| c.interval()).collect())
    }

    pub fn components(&self) -> Vec<Component> {
        self.parts.iter().map(Interval::component).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest modulus in the closure; 0 for the empty set.
    pub fn max_radius(&self) -> f64 {
        self.parts.last().map_or(0.0, |p| p.hi)
    }

    /// Every radius at which the set has a boundary circle, ascending.
    pub fn boundary_radii(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for p in &self.parts {
            for r in [p.lo, p.hi] {
                if r > 0.0 && !out.iter().any(|&x| near(x, r)) {
                    out.push(r);
                }
            }
        }
        out
    }

    pub fn contains_radius(&self, r: f64) -> bool {
        self.parts.iter().any(|p| p.contains(r))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.contains_radius(z.norm())
    }

    pub fn union(&self, other: &CircularSet) -> CircularSet {
        let (a, b) = snap_pair(self, other);
        normalize(a.into_iter().chain(b).collect())
    }

    pub fn difference(&self, other: &CircularSet) -> CircularSet {
        let (a, b) = snap_pair(self, other);
        let mut pieces = a;
        for j in &b {
            pieces = pieces
                .iter()
                .flat_map(|i| i.minus(j))
                .filter(Interval::is_valid)
                .collect();
        }
        normalize(pieces)
    }

    pub fn intersection(&self, other: &CircularSet) -> CircularSet {
        self.difference(&self.difference(other))
    }

    pub fn is_subset_of(&self, other: &CircularSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Equality up to the radius merging tolerance.
    pub fn same_as(&self, other: &CircularSet) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Bounded connected components of the complement, as separate sets.
    pub fn bounded_gaps(&self) -> Vec<CircularSet> {
        if self.is_empty() {
            return Vec::new();
        }
        let hull = CircularSet::closed_disc(self.max_radius());
        let rest = hull.difference(self);
        rest.parts
            .iter()
            .map(|p| CircularSet { parts: vec![*p] })
            .collect()
    }
}

impl fmt::Display for CircularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self.components().iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// Snap the endpoints of both operands to shared representatives so that
/// radii within the merging tolerance compare equal.
fn snap_pair(a: &CircularSet, b: &CircularSet) -> (Vec<Interval>, Vec<Interval>) {
    let mut ends: Vec<f64> = a
        .parts
        .iter()
        .chain(&b.parts)
        .flat_map(|p| [p.lo, p.hi])
        .collect();
    ends.sort_by(f64::total_cmp);
    let mut reps: Vec<f64> = Vec::new();
    for e in ends {
        if !reps.last().is_some_and(|&r| near(r, e)) {
            reps.push(e);
        }
    }
    let snap = |x: f64| -> f64 {
        reps.iter().copied().find(|&r| near(r, x)).unwrap_or(x)
    };
    let conv = |s: &CircularSet| -> Vec<Interval> {
        s.parts
            .iter()
            .map(|p| Interval {
                lo: snap(p.lo),
                hi: snap(p.hi),
                ..*p
            })
            .filter(Interval::is_valid)
            .collect()
    };
    (conv(a), conv(b))
}

/// Sort, snap near radii together and merge overlapping or touching pieces.
fn normalize(mut v: Vec<Interval>) -> CircularSet {
    let snapped = snap_pair(&CircularSet { parts: v.clone() }, &CircularSet::empty()).0;
    v = snapped;
    v.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(b.lo_c.cmp(&a.lo_c)));
    let mut out: Vec<Interval> = Vec::new();
    for i in v {
        if let Some(cur) = out.last_mut() {
            let touches = i.lo < cur.hi || (i.lo == cur.hi && (cur.hi_c || i.lo_c));
            if touches {
                match i.hi.total_cmp(&cur.hi) {
                    Ordering::Greater => {
                        cur.hi = i.hi;
                        cur.hi_c = i.hi_c;
                    }
                    Ordering::Equal => cur.hi_c |= i.hi_c,
                    Ordering::Less => {}
                }
                continue;
            }
        }
        out.push(i);
    }
    CircularSet { parts: out }
}
