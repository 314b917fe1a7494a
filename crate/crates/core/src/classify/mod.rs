//! The decision engine: from a space, a weight and a rotation to a
//! [`SpectrumReport`] with a certainty status for every spectral set.
//!
//! For a non-periodic rotation of the circle the only invariant probability
//! measure is normalized Lebesgue measure, so every "min over invariant
//! measures of exp of the integral of ln|w|" collapses to the boundary
//! geometric mean of |w|. All one-variable radii below rely on that.

pub mod circular;
pub mod polydisc;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{factorization_summary, geometric_mean, invertibility_profile, Tri, TOL_ZERO};
use crate::error::{Result, WroError};
use crate::ergodic::torus_geometric_mean;
use crate::weights::{
    taylor_coefficients, JobInputs, RegularityTag, Rotation, RotationAngle, SpaceSpec, Weight,
    WeightRepr,
};

pub use circular::{CircularSet, Component};

/// The spectral sets a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SetName {
    #[serde(rename = "sigma")]
    Sigma,
    #[serde(rename = "sigma_ap")]
    SigmaAp,
    #[serde(rename = "sigma_r")]
    SigmaR,
    #[serde(rename = "sigma_1")]
    Sigma1,
    #[serde(rename = "sigma_2")]
    Sigma2,
    #[serde(rename = "sigma_3")]
    Sigma3,
    #[serde(rename = "sigma_4")]
    Sigma4,
    #[serde(rename = "sigma_5")]
    Sigma5,
}

impl SetName {
    pub const ALL: [SetName; 8] = [
        SetName::Sigma,
        SetName::SigmaAp,
        SetName::SigmaR,
        SetName::Sigma1,
        SetName::Sigma2,
        SetName::Sigma3,
        SetName::Sigma4,
        SetName::Sigma5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SetName::Sigma => "sigma",
            SetName::SigmaAp => "sigma_ap",
            SetName::SigmaR => "sigma_r",
            SetName::Sigma1 => "sigma_1",
            SetName::Sigma2 => "sigma_2",
            SetName::Sigma3 => "sigma_3",
            SetName::Sigma4 => "sigma_4",
            SetName::Sigma5 => "sigma_5",
        }
    }
}

/// How much is known about a set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    /// lower is contained in the set, the set is contained in upper.
    Bounds {
        lower: CircularSet,
        upper: CircularSet,
    },
    Unknown,
}

/// One spectral set. For `Bounds` the components are the upper bound; for
/// `Unknown` they are empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetEntry {
    pub components: CircularSet,
    pub status: Status,
    pub citation: String,
}

impl SetEntry {
    pub fn exact(set: CircularSet, citation: impl Into<String>) -> Self {
        SetEntry {
            components: set,
            status: Status::Exact,
            citation: citation.into(),
        }
    }

    pub fn bounds(lower: CircularSet, upper: CircularSet, citation: impl Into<String>) -> Self {
        if lower.same_as(&upper) {
            return Self::exact(upper, citation);
        }
        SetEntry {
            components: upper.clone(),
            status: Status::Bounds { lower, upper },
            citation: citation.into(),
        }
    }

    pub fn unknown(citation: impl Into<String>) -> Self {
        SetEntry {
            components: CircularSet::empty(),
            status: Status::Unknown,
            citation: citation.into(),
        }
    }

    pub fn exact_set(&self) -> Option<&CircularSet> {
        matches!(self.status, Status::Exact).then_some(&self.components)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexFlag {
    #[serde(rename = "-inf")]
    NegInfinity,
    #[serde(rename = "unknown")]
    Unknown,
}

/// Fredholm index on a component off the semi-Fredholm spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Index {
    Finite(i64),
    Flag(IndexFlag),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub component: Component,
    pub index: Index,
    pub citation: String,
}

/// An aspect of the answer that rests on an open problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenFlag {
    pub problem: String,
    pub aspect: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub sets: BTreeMap<SetName, SetEntry>,
    pub index_map: Vec<IndexEntry>,
    pub open_flags: Vec<OpenFlag>,
    pub citations: Vec<String>,
    pub inputs_echo: serde_json::Value,
}

impl SpectrumReport {
    pub fn get(&self, name: SetName) -> &SetEntry {
        &self.sets[&name]
    }

    /// The set, when its status is exact.
    pub fn exact(&self, name: SetName) -> Option<&CircularSet> {
        self.get(name).exact_set()
    }

    pub fn has_unknown(&self) -> bool {
        self.sets.values().any(|e| e.status == Status::Unknown)
    }

    /// Boundary radii of every reported set (exact sets and both bounds),
    /// ascending and deduplicated.
    pub fn predicted_radii(&self) -> Vec<f64> {
        let mut all = CircularSet::empty();
        for e in self.sets.values() {
            all = all.union(&CircularSet::from_components(
                &e.components
                    .boundary_radii()
                    .into_iter()
                    .map(Component::Circle)
                    .collect::<Vec<_>>(),
            ));
            if let Status::Bounds { lower, .. } = &e.status {
                all = all.union(&CircularSet::from_components(
                    &lower
                        .boundary_radii()
                        .into_iter()
                        .map(Component::Circle)
                        .collect::<Vec<_>>(),
                ));
            }
        }
        all.boundary_radii()
    }

    /// Violations of the structural relations between exact sets:
    /// `sigma_ap` and `sigma_r` partition `sigma`, the chain
    /// `sigma_1 <= sigma_2 <= sigma_3 <= sigma_4 <= sigma_5 <= sigma`,
    /// `sigma_1 <= sigma_ap`, and nonzero index only off `sigma_1`.
    pub fn consistency_violations(&self) -> Vec<String> {
        use SetName::*;
        let mut out = Vec::new();
        let e = |n| self.exact(n);
        if let (Some(s), Some(ap), Some(r)) = (e(Sigma), e(SigmaAp), e(SigmaR)) {
            if !ap.union(r).same_as(s) {
                out.push("sigma_ap u sigma_r != sigma".to_string());
            }
            if !ap.intersection(r).is_empty() {
                out.push("sigma_ap and sigma_r intersect".to_string());
            }
        }
        let chain = [Sigma1, Sigma2, Sigma3, Sigma4, Sigma5, Sigma];
        for w in chain.windows(2) {
            if let (Some(a), Some(b)) = (e(w[0]), e(w[1])) {
                if !a.is_subset_of(b) {
                    out.push(format!("{} not contained in {}", w[0].as_str(), w[1].as_str()));
                }
            }
        }
        if let (Some(a), Some(b)) = (e(Sigma1), e(SigmaAp)) {
            if !a.is_subset_of(b) {
                out.push("sigma_1 not contained in sigma_ap".to_string());
            }
        }
        for (name, entry) in &self.sets {
            if let Status::Bounds { lower, upper } = &entry.status {
                if !lower.is_subset_of(upper) {
                    out.push(format!("{}: lower bound exceeds upper bound", name.as_str()));
                }
            }
        }
        if let Some(s1) = e(Sigma1) {
            for ie in &self.index_map {
                if ie.index != Index::Finite(0) && !ie.component.to_set().intersection(s1).is_empty()
                {
                    out.push(format!("index reported on {} which meets sigma_1", ie.component));
                }
            }
        }
        out
    }
}

/// The three mutually exclusive invertibility cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvertibilityCase {
    /// Invertible in the algebra of the domain.
    Invertible,
    /// Invertible on the boundary, not in the algebra: residual disc.
    BoundaryInvertible,
    /// Not invertible on the boundary.
    NotBoundaryInvertible,
}

/// Case of a polynomial or rational one-variable weight.
pub fn invertibility_case(w: &Weight) -> Result<InvertibilityCase> {
    // surfaces ambiguous boundary zeros as errors
    factorization_summary(w)?;
    let p = invertibility_profile(w);
    Ok(match (p.in_disc_algebra, p.in_continuous_boundary) {
        (Tri::Yes, _) => InvertibilityCase::Invertible,
        (_, Tri::Yes) => InvertibilityCase::BoundaryInvertible,
        (_, Tri::No) => InvertibilityCase::NotBoundaryInvertible,
        _ => {
            return Err(WroError::Numerical(
                "invertibility profile undecided for a rational weight".into(),
            ))
        }
    })
}

/// Theorem identifiers for the three cases of one space.
struct Cites {
    case: [String; 3],
    index: String,
}

fn cites(space: &SpaceSpec) -> Cites {
    let each = |f: &dyn Fn(&str) -> String| [f("1"), f("2"), f("3")];
    let (case, index) = match space {
        SpaceSpec::Bergman { .. } => (each(&|k| format!("Thm 7.3({k})")), "Thm 7.3(2), Cor 6.6(4)"),
        SpaceSpec::Bloch => (each(&|k| format!("Thm 7.8({k})")), "Thm 7.8(2), Cor 6.6(4)"),
        SpaceSpec::Dirichlet { .. } => {
            (each(&|k| format!("Thm 7.10({k})")), "Thm 7.10(2), Cor 6.6(4)")
        }
        SpaceSpec::Hinf => (
            [
                "Cor 6.6(1), Cor 6.6(5)".to_string(),
                "Cor 6.6(3), Cor 6.6(4), Cor 6.6(5)".to_string(),
                "Cor 6.6(2), Cor 6.6(5)".to_string(),
            ],
            "Cor 6.6(4)",
        ),
        SpaceSpec::HardyBanach => (
            [
                "Cor 7.2, Cor 6.6(1)".to_string(),
                "Cor 7.2, Cor 6.6(3), Cor 6.6(4)".to_string(),
                "Cor 7.2, Cor 6.6(2)".to_string(),
            ],
            "Cor 7.2, Cor 6.6(4)",
        ),
        SpaceSpec::DiscAlgebra => (
            [
                "Thm 6.1(4)(I)".to_string(),
                "Thm 6.1(4)(III), Example 6.3(a)".to_string(),
                "Thm 6.1(4)(II)".to_string(),
            ],
            "Example 6.3(a)",
        ),
        SpaceSpec::SmoothCnA { .. } => (
            [
                "Thm 7.12, Thm 6.1(4)(I)".to_string(),
                "Thm 7.12, Thm 6.1(4)(III), Example 6.3(a)".to_string(),
                "Thm 7.12, Thm 6.1(4)(II)".to_string(),
            ],
            "Thm 7.12, Example 6.3(a)",
        ),
        SpaceSpec::SobolevWnA { .. } => (
            [
                "Thm 7.13, Cor 6.6(1)".to_string(),
                "Thm 7.13, Cor 6.6(3), Cor 6.6(4)".to_string(),
                "Thm 7.13, Cor 6.6(2)".to_string(),
            ],
            "Thm 7.13, Cor 6.6(4)",
        ),
        _ => unreachable!("trichotomy spaces only"),
    };
    Cites {
        case,
        index: index.to_string(),
    }
}

const SIGMA2_NOTE: &str = "sigma_1 <= sigma_2 <= sigma_ap";
const SIGMA5_NOTE: &str = "sigma_5 = sigma_1 plus bounded components of its complement inside sigma";

/// sigma_1 together with every bounded component of its complement that lies
/// inside sigma (a component of the semi-Fredholm domain either lies in the
/// spectrum or meets the resolvent set).
fn browder_set(sigma1: &CircularSet, sigma: &CircularSet) -> CircularSet {
    sigma1
        .bounded_gaps()
        .into_iter()
        .filter(|g| g.is_subset_of(sigma))
        .fold(sigma1.clone(), |acc, g| acc.union(&g))
}

#[derive(Default)]
struct Draft {
    sets: BTreeMap<SetName, SetEntry>,
    index_map: Vec<IndexEntry>,
    open_flags: Vec<OpenFlag>,
    citations: Vec<String>,
}

impl Draft {
    fn set(&mut self, name: SetName, entry: SetEntry) {
        if !self.citations.contains(&entry.citation) {
            self.citations.push(entry.citation.clone());
        }
        self.sets.insert(name, entry);
    }

    fn exact(&mut self, name: SetName, set: CircularSet, cite: &str) {
        self.set(name, SetEntry::exact(set, cite));
    }

    fn flag(&mut self, problem: &str, aspect: &str) {
        self.open_flags.push(OpenFlag {
            problem: problem.to_string(),
            aspect: aspect.to_string(),
        });
    }

    fn finish(self, echo: serde_json::Value) -> SpectrumReport {
        debug_assert_eq!(self.sets.len(), SetName::ALL.len());
        SpectrumReport {
            sets: self.sets,
            index_map: self.index_map,
            open_flags: self.open_flags,
            citations: self.citations,
            inputs_echo: echo,
        }
    }
}

/// The circle / residual disc / full disc pattern shared by every
/// one-variable space and (with `sigma3_is_sigma`) by the polydisc.
fn trichotomy(
    case: InvertibilityCase,
    radius: f64,
    sigma3_is_sigma: bool,
    index: Index,
    cite: &str,
    index_cite: &str,
) -> Draft {
    use SetName::*;
    let mut d = Draft::default();
    let with = |note: &str| format!("{cite}; {note}");
    match case {
        InvertibilityCase::Invertible => {
            let c = CircularSet::circle(radius);
            for n in [Sigma, SigmaAp, Sigma1, Sigma2, Sigma3, Sigma4, Sigma5] {
                d.exact(n, c.clone(), cite);
            }
            d.exact(SigmaR, CircularSet::empty(), cite);
        }
        InvertibilityCase::BoundaryInvertible => {
            let circle = CircularSet::circle(radius);
            let disc = CircularSet::closed_disc(radius);
            d.exact(SigmaAp, circle.clone(), cite);
            d.exact(Sigma1, circle.clone(), cite);
            d.exact(Sigma2, circle.clone(), &with(SIGMA2_NOTE));
            d.exact(
                Sigma3,
                if sigma3_is_sigma { disc.clone() } else { circle.clone() },
                cite,
            );
            d.exact(Sigma4, disc.clone(), cite);
            d.exact(Sigma, disc.clone(), cite);
            d.exact(SigmaR, CircularSet::open_disc(radius), cite);
            d.exact(Sigma5, browder_set(&circle, &disc), &with(SIGMA5_NOTE));
            d.index_map.push(IndexEntry {
                component: Component::OpenDisc(radius),
                index,
                citation: index_cite.to_string(),
            });
            if !d.citations.iter().any(|c| c == index_cite) {
                d.citations.push(index_cite.to_string());
            }
        }
        InvertibilityCase::NotBoundaryInvertible => {
            let disc = CircularSet::closed_disc(radius);
            for n in [Sigma, SigmaAp, Sigma1, Sigma2, Sigma3, Sigma4, Sigma5] {
                d.exact(n, disc.clone(), cite);
            }
            d.exact(SigmaR, CircularSet::empty(), cite);
        }
    }
    d
}

fn require_tags(w: &Weight, space: &SpaceSpec, tags: &[RegularityTag]) -> Result<()> {
    for &t in tags {
        if !w.has_tag(t) {
            return Err(WroError::MissingTag {
                tag: t.as_str(),
                space: space.name(),
            });
        }
    }
    Ok(())
}

/// Every set bounded above by the disc of radius sup|w|; used when the
/// closed-form zero data of a rational weight is not available.
fn bounds_only(w: &Weight, cite: &str) -> Draft {
    let upper = CircularSet::closed_disc(w.sup_bound());
    let mut d = Draft::default();
    for n in SetName::ALL {
        d.set(
            n,
            SetEntry::bounds(CircularSet::empty(), upper.clone(), cite),
        );
    }
    d.flag(
        "Remark 7.1",
        "radii of weights given by truncated Taylor data or boundary samples are not resolved; sets are bounded by the disc of radius sup|w|",
    );
    d
}

fn single_angle(rotation: &Rotation) -> Result<RotationAngle> {
    rotation.single().copied().ok_or_else(|| {
        WroError::InvalidRotation(
            "a space of functions of one variable needs a single rotation angle".into(),
        )
    })
}

/// Classify the spectra of T = wU on `space`.
pub fn classify(space: &SpaceSpec, w: &Weight, rotation: &Rotation) -> Result<SpectrumReport> {
    space.validate()?;
    let echo = JobInputs {
        weight: w.clone(),
        rotation: rotation.clone(),
        space: *space,
    }
    .echo();
    let draft = match *space {
        SpaceSpec::PolydiscAlgebra { dim } | SpaceSpec::PolydiscBergman { dim, .. } => {
            classify_polydisc(space, dim as usize, w, rotation)?
        }
        _ => {
            let alpha = single_angle(rotation)?;
            alpha.require_nonperiodic()?;
            if w.dim() != 1 {
                return Err(WroError::Precondition(
                    "a space of functions of one variable needs a one-variable weight".into(),
                ));
            }
            classify_one_variable(space, w)?
        }
    };
    Ok(draft.finish(echo))
}

/// [`classify`] on parsed job inputs.
pub fn classify_job(job: &JobInputs) -> Result<SpectrumReport> {
    classify(&job.space, &job.weight, &job.rotation)
}

fn classify_one_variable(space: &SpaceSpec, w: &Weight) -> Result<Draft> {
    use RegularityTag::*;
    match space {
        SpaceSpec::AnnulusHardy { inner_radius, .. } => return classify_annulus(w, *inner_radius),
        SpaceSpec::EllOneA => return classify_ell1(space, w),
        SpaceSpec::DiscAlgebra => require_tags(w, space, &[DiscAlgebra])?,
        SpaceSpec::Hinf | SpaceSpec::HardyBanach => require_tags(w, space, &[HInf])?,
        SpaceSpec::Bergman { .. } => require_tags(w, space, &[DiscAlgebra])?,
        SpaceSpec::Bloch => require_tags(w, space, &[DiscAlgebra, MultiplierBloch])?,
        SpaceSpec::Dirichlet { .. } => require_tags(w, space, &[DiscAlgebra, MultiplierDirichlet])?,
        SpaceSpec::SmoothCnA { .. } | SpaceSpec::SobolevWnA { .. } => {
            if !w.is_rational() {
                return Err(WroError::Unsupported(format!(
                    "membership of non-rational weights in {} cannot be declared",
                    space.name()
                )));
            }
        }
        SpaceSpec::PolydiscAlgebra { .. } | SpaceSpec::PolydiscBergman { .. } => {
            unreachable!("handled by the polydisc branch")
        }
    }
    let c = cites(space);
    if !w.is_rational() {
        return Ok(bounds_only(w, &c.case[0]));
    }
    let case = invertibility_case(w)?;
    let fact = factorization_summary(w)?;
    let (radius, cite) = match case {
        InvertibilityCase::Invertible => (w.eval(Complex64::new(0.0, 0.0))?.norm(), &c.case[0]),
        InvertibilityCase::BoundaryInvertible => (fact.outer_value_mod, &c.case[1]),
        InvertibilityCase::NotBoundaryInvertible => (fact.outer_value_mod, &c.case[2]),
    };
    let index = Index::Finite(-(fact.blaschke_degree() as i64));
    Ok(trichotomy(case, radius, false, index, cite, &c.index))
}

fn classify_ell1(space: &SpaceSpec, w: &Weight) -> Result<Draft> {
    use SetName::*;
    require_tags(w, space, &[RegularityTag::Ell1A])?;
    let cite = "Thm 7.17";
    if !w.is_rational() {
        let mut d = bounds_only(w, cite);
        if !w.has_tag(RegularityTag::LambdaClass) {
            d.flag(
                "Problem 7.2(b)",
                "spectral radius formula for weights outside the Lambda class",
            );
        }
        return Ok(d);
    }
    // For rational weights invertibility in l^1_A is the absence of zeros in
    // the closed disc (Wiener's lemma).
    let case = invertibility_case(w)?;
    let g = geometric_mean(w, 1.0)?;
    let mut d = Draft::default();
    if case == InvertibilityCase::Invertible {
        let c = CircularSet::circle(g);
        for n in [Sigma, SigmaAp, Sigma1, Sigma2, Sigma3, Sigma4, Sigma5] {
            d.exact(n, c.clone(), cite);
        }
        d.exact(SigmaR, CircularSet::empty(), cite);
        return Ok(d);
    }
    let circle = CircularSet::circle(g);
    let disc = CircularSet::closed_disc(g);
    d.exact(Sigma, disc.clone(), cite);
    for n in [SigmaAp, Sigma1, SigmaR] {
        d.set(n, SetEntry::unknown("Problem 7.2(a)"));
    }
    // boundary points of a disc without isolated points lie in sigma_1
    for n in [Sigma2, Sigma3, Sigma4] {
        d.set(n, SetEntry::bounds(circle.clone(), disc.clone(), cite));
    }
    d.exact(Sigma5, disc, &format!("{cite}; {SIGMA5_NOTE}"));
    d.flag(
        "Problem 7.2(a)",
        "approximate point spectrum (hence sigma_1 and sigma_r) for weights not invertible in l^1_A",
    );
    Ok(d)
}

fn classify_annulus(w: &Weight, inner: f64) -> Result<Draft> {
    use SetName::*;
    let num = w.numerator().ok_or_else(|| {
        WroError::Unsupported("annulus classification needs a polynomial or rational weight".into())
    })?;
    let cite1 = "Example 7.4(1)";
    let cite2 = "Example 7.4(2)";
    let mut on_outer = false;
    let mut on_inner = false;
    let mut in_annulus = 0usize;
    for r in num.roots()? {
        let m = r.value.norm();
        for edge in [1.0, inner] {
            let d = (m - edge).abs();
            if (d - TOL_ZERO).abs() <= r.error {
                return Err(WroError::AmbiguousBoundaryZero { modulus: m });
            }
        }
        if (m - 1.0).abs() <= TOL_ZERO {
            on_outer = true;
        } else if (m - inner).abs() <= TOL_ZERO {
            on_inner = true;
        } else if m > inner && m < 1.0 {
            in_annulus += r.multiplicity;
        }
    }
    // each boundary circle contributes the spectrum of the weighted rotation on
    // L^p of that circle: a circle, or a disc when w vanishes on it
    let part = |g: f64, vanishes: bool| {
        if vanishes {
            CircularSet::closed_disc(g)
        } else {
            CircularSet::circle(g)
        }
    };
    let g_out = geometric_mean(w, 1.0)?;
    let g_in = geometric_mean(w, inner)?;
    let sigma1 = part(g_out, on_outer).union(&part(g_in, on_inner));
    let (lo, hi) = (g_out.min(g_in), g_out.max(g_in));
    let sigma = if in_annulus > 0 || on_outer || on_inner {
        CircularSet::closed_disc(hi)
    } else {
        CircularSet::closed_annulus(lo, hi)
    };
    let sigma_r = sigma.difference(&sigma1);

    let mut d = Draft::default();
    d.exact(Sigma1, sigma1.clone(), cite1);
    d.exact(SigmaAp, sigma1.clone(), cite1);
    d.exact(Sigma2, sigma1.clone(), &format!("{cite1}; {SIGMA2_NOTE}"));
    d.exact(Sigma, sigma.clone(), cite2);
    d.exact(Sigma4, sigma.clone(), cite2);
    d.exact(Sigma5, sigma.clone(), &format!("{cite2}; sigma_4 <= sigma_5 <= sigma"));
    d.exact(SigmaR, sigma_r.clone(), cite2);

    // The disc component of sigma_r (around 0) is Fredholm with index
    // -(zeros in the annulus) because w stays away from 0 near both boundary
    // circles; annulus components are undecided.
    let mut sigma3_upper = sigma.clone();
    let mut annular_parts = false;
    for comp in sigma_r.components() {
        match comp {
            Component::OpenDisc(_) | Component::ClosedDisc(_) | Component::Origin => {
                sigma3_upper = sigma3_upper.difference(&comp.to_set());
                d.index_map.push(IndexEntry {
                    component: comp,
                    index: Index::Finite(-(in_annulus as i64)),
                    citation: cite2.to_string(),
                });
            }
            other => {
                annular_parts = true;
                d.index_map.push(IndexEntry {
                    component: other,
                    index: Index::Flag(IndexFlag::Unknown),
                    citation: "Problem 6.2".to_string(),
                });
            }
        }
    }
    d.set(Sigma3, SetEntry::bounds(sigma1, sigma3_upper, cite2));
    if annular_parts {
        d.flag(
            "Problem 6.2",
            "sigma_3 and the index on annular components of sigma_r",
        );
        if !d.citations.iter().any(|c| c == "Problem 6.2") {
            d.citations.push("Problem 6.2".to_string());
        }
    }
    Ok(d)
}

fn classify_polydisc(
    space: &SpaceSpec,
    dim: usize,
    w: &Weight,
    rotation: &Rotation,
) -> Result<Draft> {
    let Rotation::Vector(v) = rotation else {
        return Err(WroError::InvalidRotation(
            "a polydisc needs a rotation vector".into(),
        ));
    };
    if v.dim() != dim {
        return Err(WroError::InvalidRotation(format!(
            "rotation vector has {} angles for a polydisc of dimension {dim}",
            v.dim()
        )));
    }
    if v.angles.iter().any(|a| a.is_periodic().is_none()) {
        return Err(WroError::PeriodicityUnknown);
    }
    if let Some(RotationAngle::RootOfUnity { p, q }) = v
        .angles
        .iter()
        .find(|a| matches!(a, RotationAngle::RootOfUnity { .. }))
    {
        return Err(WroError::RootOfUnity { p: *p, q: *q });
    }
    if !v.is_free() {
        return Err(WroError::Unsupported(
            "polydisc rotations with a nontrivial relation lattice".into(),
        ));
    }
    let p = polydisc::lift(w, dim)?;
    let lifted = Weight::multivariate(p.clone(), [])?;
    let case = match polydisc::torus_invertible(&p)? {
        Tri::Yes => match polydisc::polydisc_invertible(&p)? {
            Tri::Yes => InvertibilityCase::Invertible,
            _ => InvertibilityCase::BoundaryInvertible,
        },
        _ => InvertibilityCase::NotBoundaryInvertible,
    };
    let radius = torus_geometric_mean(&lifted, dim)?;
    let k = match case {
        InvertibilityCase::Invertible => 0,
        InvertibilityCase::BoundaryInvertible => 1,
        InvertibilityCase::NotBoundaryInvertible => 2,
    };
    let cite = match space {
        SpaceSpec::PolydiscBergman { .. } => format!("Thm 7.5({})", k + 1),
        _ => ["Example 6.3, Thm 6.1(4)(I)", "Example 6.3(b), Thm 6.1(4)(III)", "Example 6.3, Thm 6.1(4)(II)"][k]
            .to_string(),
    };
    Ok(trichotomy(
        case,
        radius,
        true,
        Index::Flag(IndexFlag::NegInfinity),
        &cite,
        "Example 6.3(b)",
    ))
}

/// Eigenvalue candidates alpha^k w(0), k < count; empty when w(0) = 0.
pub fn point_spectrum_candidates(
    w: &Weight,
    alpha: &RotationAngle,
    count: usize,
) -> Result<Vec<Complex64>> {
    if matches!(w.repr(), WeightRepr::BoundarySamples { .. } | WeightRepr::Multivariate(_)) {
        return Err(WroError::Precondition(
            "point spectrum candidates need a weight analytic at 0 in one variable".into(),
        ));
    }
    let w0 = taylor_coefficients(w, 1)?[0];
    if w0 == Complex64::new(0.0, 0.0) {
        return Ok(Vec::new());
    }
    Ok((0..count as i64).map(|k| alpha.power(k) * w0).collect())
}

/// Index on the residual disc (the disc component of sigma \ sigma_1 around
/// the origin).
pub fn residual_index(space: &SpaceSpec, w: &Weight, rotation: &Rotation) -> Result<Index> {
    let report = classify(space, w, rotation)?;
    report
        .index_map
        .iter()
        .find(|e| matches!(e.component, Component::OpenDisc(_)))
        .map(|e| e.index)
        .ok_or_else(|| {
            WroError::Precondition("the operator has no residual disc for this weight".into())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::weights::{MultiPolynomial, NamedIrrational, RotationVector};

    fn poly(c: &[f64]) -> Weight {
        Weight::from_real(c).unwrap()
    }

    fn golden() -> Rotation {
        RotationAngle::golden().into()
    }

    fn comps(r: &SpectrumReport, n: SetName) -> Vec<Component> {
        r.get(n).components.components()
    }

    const BERGMAN: SpaceSpec = SpaceSpec::Bergman { p: 2.0 };

    #[test]
    fn bergman_case_one() {
        let r = classify(&BERGMAN, &poly(&[-2.0, 1.0]), &golden()).unwrap();
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::Circle(2.0)]);
        assert_eq!(comps(&r, SetName::Sigma1), vec![Component::Circle(2.0)]);
        assert_eq!(r.get(SetName::Sigma).status, Status::Exact);
        assert_eq!(r.get(SetName::Sigma).citation, "Thm 7.3(1)");
        assert!(r.consistency_violations().is_empty());
    }

    #[test]
    fn bergman_case_two() {
        let r = classify(&BERGMAN, &poly(&[1.0, -2.5, 1.0]), &golden()).unwrap();
        let circle = |n| comps(&r, n) == vec![Component::Circle(2.0)];
        assert!(circle(SetName::SigmaAp) && circle(SetName::Sigma1) && circle(SetName::Sigma3));
        assert_eq!(comps(&r, SetName::SigmaR), vec![Component::OpenDisc(2.0)]);
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::ClosedDisc(2.0)]);
        assert_eq!(comps(&r, SetName::Sigma4), vec![Component::ClosedDisc(2.0)]);
        assert_eq!(r.index_map[0].index, Index::Finite(-1));
        assert!(r.consistency_violations().is_empty());
    }

    #[test]
    fn bergman_case_three() {
        let r = classify(&BERGMAN, &poly(&[-1.0, 1.0]), &golden()).unwrap();
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::ClosedDisc(1.0)]);
        assert_eq!(comps(&r, SetName::Sigma1), vec![Component::ClosedDisc(1.0)]);
        assert!(r.index_map.is_empty());
    }

    #[test]
    fn root_of_unity_rejected() {
        let e = classify(
            &BERGMAN,
            &poly(&[-2.0, 1.0]),
            &RotationAngle::root_of_unity(1, 3).unwrap().into(),
        )
        .unwrap_err();
        assert!(matches!(e, WroError::RootOfUnity { .. }));
    }

    #[test]
    fn ell1_cases() {
        let r = classify(&SpaceSpec::EllOneA, &poly(&[-2.0, 1.0]), &golden()).unwrap();
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::Circle(2.0)]);
        assert!(!r.has_unknown());
        let r = classify(&SpaceSpec::EllOneA, &poly(&[-1.0, 1.0]), &golden()).unwrap();
        assert!(r.has_unknown());
        assert_eq!(r.get(SetName::SigmaAp).status, Status::Unknown);
        assert_eq!(r.open_flags[0].problem, "Problem 7.2(a)");
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::ClosedDisc(1.0)]);
        assert!(r.consistency_violations().is_empty());
    }

    #[test]
    fn ell1_needs_tag() {
        let w = Weight::taylor(vec![Complex64::new(-2.0, 0.0), Complex64::new(1.0, 0.0)], 0.1, [])
            .unwrap();
        assert!(matches!(
            classify(&SpaceSpec::EllOneA, &w, &golden()),
            Err(WroError::MissingTag { tag: "ell1A", .. })
        ));
    }

    #[test]
    fn annulus_merges_equal_circles() {
        let s = SpaceSpec::AnnulusHardy {
            inner_radius: 0.5,
            p: 2.0,
        };
        let r = classify(&s, &poly(&[-2.0, 1.0]), &golden()).unwrap();
        assert_eq!(comps(&r, SetName::Sigma1), vec![Component::Circle(2.0)]);
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::Circle(2.0)]);
        assert!(r.get(SetName::SigmaR).components.is_empty());
    }

    #[test]
    fn annulus_with_interior_zero() {
        // zero at 0.75 inside the annulus 0.5 < |z| < 1
        let s = SpaceSpec::AnnulusHardy {
            inner_radius: 0.5,
            p: 2.0,
        };
        let r = classify(&s, &poly(&[-0.75, 1.0]), &golden()).unwrap();
        // outer mean 1, inner mean 0.75
        assert_eq!(
            comps(&r, SetName::Sigma1),
            vec![Component::Circle(0.75), Component::Circle(1.0)]
        );
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::ClosedDisc(1.0)]);
        assert_eq!(
            comps(&r, SetName::SigmaR),
            vec![Component::OpenDisc(0.75), Component::OpenAnnulus(0.75, 1.0)]
        );
        assert_eq!(r.index_map[0].index, Index::Finite(-1));
        assert_eq!(r.index_map[1].index, Index::Flag(IndexFlag::Unknown));
        assert!(matches!(r.get(SetName::Sigma3).status, Status::Bounds { .. }));
        assert!(r.consistency_violations().is_empty());
    }

    #[test]
    fn annulus_without_zeros_is_an_annulus() {
        // w = z: means r on the circle of radius r
        let s = SpaceSpec::AnnulusHardy {
            inner_radius: 0.5,
            p: 2.0,
        };
        let r = classify(&s, &poly(&[0.0, 1.0]), &golden()).unwrap();
        assert_eq!(comps(&r, SetName::Sigma), vec![Component::ClosedAnnulus(0.5, 1.0)]);
        assert_eq!(comps(&r, SetName::SigmaR), vec![Component::OpenAnnulus(0.5, 1.0)]);
    }

    #[test]
    fn polydisc_residual_case() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let p = MultiPolynomial::new(2, vec![(vec![1, 0], c(1.0)), (vec![0, 0], c(-0.5))]).unwrap();
        let w = Weight::multivariate(p, []).unwrap();
        let rot = Rotation::Vector(
            RotationVector::new(
                vec![RotationAngle::golden(), RotationAngle::Named(NamedIrrational::Sqrt2)],
                vec![],
            )
            .unwrap(),
        );
        let s = SpaceSpec::PolydiscBergman { dim: 2, p: 2.0 };
        let r = classify(&s, &w, &rot).unwrap();
        assert_eq!(comps(&r, SetName::Sigma3), vec![Component::ClosedDisc(1.0)]);
        assert_eq!(comps(&r, SetName::Sigma1), vec![Component::Circle(1.0)]);
        assert_eq!(
            residual_index(&s, &w, &rot).unwrap(),
            Index::Flag(IndexFlag::NegInfinity)
        );
    }

    #[test]
    fn candidates() {
        let a = RotationAngle::golden();
        let v = point_spectrum_candidates(&poly(&[-2.0, 1.0]), &a, 3).unwrap();
        assert_eq!(v[0], Complex64::new(-2.0, 0.0));
        assert_eq!(v[1], a.power(1) * Complex64::new(-2.0, 0.0));
        assert!(point_spectrum_candidates(&poly(&[0.0, 1.0]), &a, 3).unwrap().is_empty());
        let v = point_spectrum_candidates(&poly(&[1.0]), &a, 2).unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), a.power(1)]);
    }

    #[test]
    fn hinf_indices() {
        let g = golden();
        assert_eq!(
            residual_index(&SpaceSpec::Hinf, &poly(&[1.0, -2.5, 1.0]), &g).unwrap(),
            Index::Finite(-1)
        );
        let w = Weight::from_polynomial(Polynomial::from_real(&[0.0, 0.0, -2.0, 1.0])).unwrap();
        assert_eq!(residual_index(&SpaceSpec::Hinf, &w, &g).unwrap(), Index::Finite(-2));
        assert!(residual_index(&SpaceSpec::Hinf, &poly(&[-2.0, 1.0]), &g).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let r = classify(&BERGMAN, &poly(&[1.0, -2.5, 1.0]), &golden()).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        let back: SpectrumReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["sets"]["sigma_r"]["components"][0]["open_disc"], 2.0);
        assert_eq!(v["index_map"][0]["index"], -1);
    }
}
