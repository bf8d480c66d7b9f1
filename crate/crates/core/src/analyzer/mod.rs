//! Decision procedures for a cover `X ∪ Y = K₀`: which sufficient criteria
//! settle the inclusion `K_X ∪ K_Y ⊆ K`, cross-checked against homology.
//!
//! Every criterion reads the obstruction complexes `St(σ, A)` of the cross
//! simplices `σ ∈ K \ P`. Conclusions about homotopy fibers cannot be checked
//! directly; each carries a homological shadow (ranks of the induced maps
//! over fields) which [`Verification`] tests whenever the hypothesis holds.

mod clique;
mod general;
mod metric;
mod sequences;
mod verify;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{
    enumerate_p_complement, obstruction, restriction, Complex, ComplexError, Cover,
    ObstructionStatus, PComplementItem, Simplex, VertexId, VertexSet,
};
use crate::homology::{Coefficients, Field, HomologyError};
use crate::metric::MetricCover;

pub use sequences::{
    check_cofiber_shift, mv_check, MvCheck, MvMismatch, MvRow, ShiftCheck, ShiftMismatch, ShiftPart,
};
pub use verify::{MapSummary, NamedProfile, Verification};

/// The sufficient conditions the analyzer knows, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Criterion {
    ContractibleObstructions,
    ConnectedObstructions,
    TorsionObstructions,
    AcyclicObstructions,
    SkeletalConnectivity,
    EdgeIntersection,
    ConstantObstruction,
    IntersectionObstruction,
    FullIntersectionJoin,
    SingletonIntersection,
    OneEntryPoint,
    CliqueStandardSimplices,
    CliqueConstantObstruction,
    CliqueConnectedIntersection,
    CliqueSmallSubsets,
    CliqueSingleton,
    CliqueEntryAdjacent,
    CliqueEntryCentral,
    CliqueEntrySimplex,
    TwoEntryPoints,
    RipsConstantNeighbourhood,
    RipsFullNeighbourhood,
    CommonNeighbour,
    CommonNeighbourNearby,
    CommonNeighbourSmallDiameter,
    CommonNeighbourSingleton,
    AngleCondition,
    AngleConditionFarApart,
    SimplexCondition,
    StrongSimplexCondition,
}

impl Criterion {
    pub const ALL: [Criterion; 30] = [
        Criterion::ContractibleObstructions,
        Criterion::ConnectedObstructions,
        Criterion::TorsionObstructions,
        Criterion::AcyclicObstructions,
        Criterion::SkeletalConnectivity,
        Criterion::EdgeIntersection,
        Criterion::ConstantObstruction,
        Criterion::IntersectionObstruction,
        Criterion::FullIntersectionJoin,
        Criterion::SingletonIntersection,
        Criterion::OneEntryPoint,
        Criterion::CliqueStandardSimplices,
        Criterion::CliqueConstantObstruction,
        Criterion::CliqueConnectedIntersection,
        Criterion::CliqueSmallSubsets,
        Criterion::CliqueSingleton,
        Criterion::CliqueEntryAdjacent,
        Criterion::CliqueEntryCentral,
        Criterion::CliqueEntrySimplex,
        Criterion::TwoEntryPoints,
        Criterion::RipsConstantNeighbourhood,
        Criterion::RipsFullNeighbourhood,
        Criterion::CommonNeighbour,
        Criterion::CommonNeighbourNearby,
        Criterion::CommonNeighbourSmallDiameter,
        Criterion::CommonNeighbourSingleton,
        Criterion::AngleCondition,
        Criterion::AngleConditionFarApart,
        Criterion::SimplexCondition,
        Criterion::StrongSimplexCondition,
    ];

    /// Stable kebab-case identifier.
    pub fn id(self) -> &'static str {
        match self {
            Criterion::ContractibleObstructions => "contractible-obstructions",
            Criterion::ConnectedObstructions => "connected-obstructions",
            Criterion::TorsionObstructions => "torsion-obstructions",
            Criterion::AcyclicObstructions => "acyclic-obstructions",
            Criterion::SkeletalConnectivity => "skeletal-connectivity",
            Criterion::EdgeIntersection => "edge-intersection",
            Criterion::ConstantObstruction => "constant-obstruction",
            Criterion::IntersectionObstruction => "intersection-obstruction",
            Criterion::FullIntersectionJoin => "full-intersection-join",
            Criterion::SingletonIntersection => "singleton-intersection",
            Criterion::OneEntryPoint => "one-entry-point",
            Criterion::CliqueStandardSimplices => "clique-standard-simplices",
            Criterion::CliqueConstantObstruction => "clique-constant-obstruction",
            Criterion::CliqueConnectedIntersection => "clique-connected-intersection",
            Criterion::CliqueSmallSubsets => "clique-small-subsets",
            Criterion::CliqueSingleton => "clique-singleton",
            Criterion::CliqueEntryAdjacent => "clique-entry-adjacent",
            Criterion::CliqueEntryCentral => "clique-entry-central",
            Criterion::CliqueEntrySimplex => "clique-entry-simplex",
            Criterion::TwoEntryPoints => "two-entry-points",
            Criterion::RipsConstantNeighbourhood => "rips-constant-neighbourhood",
            Criterion::RipsFullNeighbourhood => "rips-full-neighbourhood",
            Criterion::CommonNeighbour => "common-neighbour",
            Criterion::CommonNeighbourNearby => "common-neighbour-nearby",
            Criterion::CommonNeighbourSmallDiameter => "common-neighbour-small-diameter",
            Criterion::CommonNeighbourSingleton => "common-neighbour-singleton",
            Criterion::AngleCondition => "angle-condition",
            Criterion::AngleConditionFarApart => "angle-condition-far-apart",
            Criterion::SimplexCondition => "simplex-condition",
            Criterion::StrongSimplexCondition => "strong-simplex-condition",
        }
    }

    pub fn from_id(id: &str) -> Option<Criterion> {
        Criterion::ALL.into_iter().find(|c| c.id() == id)
    }

    /// One-line statement of the hypothesis.
    pub fn hypothesis_text(self) -> &'static str {
        match self {
            Criterion::ContractibleObstructions => "every St(σ,A), σ ∈ K\\P, is contractible",
            Criterion::ConnectedObstructions => "every St(σ,A), σ ∈ K\\P, is n-connected",
            Criterion::TorsionObstructions => {
                "every St(σ,A), σ ∈ K\\P, is connected with p-torsion reduced homology through n"
            }
            Criterion::AcyclicObstructions => "every St(σ,A), σ ∈ K\\P, is Z-acyclic",
            Criterion::SkeletalConnectivity => {
                "St(σ,A) is n-connected for σ in the (n+1)-skeleton of K\\P"
            }
            Criterion::EdgeIntersection => "the obstructions of the cross edges share a vertex",
            Criterion::ConstantObstruction => "St(σ,A) is one n-connected complex L for all σ",
            Criterion::IntersectionObstruction => "St(σ,A) = K_A for all σ, K_A n-connected",
            Criterion::FullIntersectionJoin => "A nonempty and σ ∪ A ∈ K for all σ",
            Criterion::SingletonIntersection => "A = {v} and σ ∪ {v} ∈ K for all σ",
            Criterion::OneEntryPoint => {
                "some v ∈ A extends every simplex meeting X\\A and Y\\A in at most n+2 points"
            }
            Criterion::CliqueStandardSimplices => {
                "K clique, edge obstructions are standard simplices, obstructions nonempty"
            }
            Criterion::CliqueConstantObstruction => {
                "K clique and all cross-edge obstructions equal one n-connected L"
            }
            Criterion::CliqueConnectedIntersection => {
                "K clique, K_A n-connected and τ ∪ {v} ∈ K for cross edges τ, v ∈ A"
            }
            Criterion::CliqueSmallSubsets => {
                "K clique, A nonempty and τ ∪ μ ∈ K for cross edges τ, μ ⊆ A, |μ| ≤ 2"
            }
            Criterion::CliqueSingleton => "K clique, A = {v} and τ ∪ {v} ∈ K for cross edges τ",
            Criterion::CliqueEntryAdjacent => {
                "K clique, v in every edge obstruction and adjacent to all their vertices"
            }
            Criterion::CliqueEntryCentral => {
                "K clique, v in every edge obstruction and central in each"
            }
            Criterion::CliqueEntrySimplex => {
                "K clique, v ∈ A extends every {x,y} and {x,y,a} simplex"
            }
            Criterion::TwoEntryPoints => "K clique with entry points a_X, a_Y ∈ A",
            Criterion::RipsConstantNeighbourhood => {
                "the common r-neighbourhood in A of cross pairs is one set L, VR_r(L) n-connected"
            }
            Criterion::RipsFullNeighbourhood => {
                "VR_r(A) n-connected and every point of A is r-close to every cross pair"
            }
            Criterion::CommonNeighbour => "some v ∈ A is r-close to both ends of every cross pair",
            Criterion::CommonNeighbourNearby => {
                "common neighbour v is r-close to every common neighbour of a cross pair"
            }
            Criterion::CommonNeighbourSmallDiameter => "common neighbour exists and diam(A) ≤ r",
            Criterion::CommonNeighbourSingleton => "common neighbour exists and A = {v}",
            Criterion::AngleCondition => "A nonempty and d(x,y) ≥ d(x,v), d(y,v) on cross triples",
            Criterion::AngleConditionFarApart => {
                "angle condition and d(x,y) ≥ diam(A) for cross pairs"
            }
            Criterion::SimplexCondition => "metric gluing with the simplex assumption",
            Criterion::StrongSimplexCondition => "metric gluing with the strong simplex assumption",
        }
    }

    /// Whether the criterion only looks at cross edges (and so is decided
    /// regardless of the dimension cap).
    pub fn is_edge_level(self) -> bool {
        use Criterion::*;
        matches!(
            self,
            EdgeIntersection
                | CliqueConstantObstruction
                | CliqueConnectedIntersection
                | CliqueSmallSubsets
                | CliqueSingleton
                | CliqueEntryAdjacent
                | CliqueEntryCentral
                | CliqueEntrySimplex
                | TwoEntryPoints
                | RipsConstantNeighbourhood
                | RipsFullNeighbourhood
                | CommonNeighbour
                | CommonNeighbourNearby
                | CommonNeighbourSmallDiameter
                | CommonNeighbourSingleton
                | AngleCondition
                | AngleConditionFarApart
                | SimplexCondition
                | StrongSimplexCondition
        )
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "kebab-case"))]
pub enum Hypothesis {
    Holds { witness: Option<String> },
    Fails { witness: String },
    NotApplicable { reason: String },
}

impl Hypothesis {
    pub fn holds(&self) -> bool {
        matches!(self, Hypothesis::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, Hypothesis::Fails { .. })
    }

    fn holds_with(w: impl Into<String>) -> Self {
        Hypothesis::Holds {
            witness: Some(w.into()),
        }
    }

    fn holds_plain() -> Self {
        Hypothesis::Holds { witness: None }
    }

    fn fails_with(w: impl Into<String>) -> Self {
        Hypothesis::Fails { witness: w.into() }
    }

    fn not_applicable(r: impl Into<String>) -> Self {
        Hypothesis::NotApplicable { reason: r.into() }
    }
}

/// What a criterion asserts about `K_X ∪ K_Y ⊆ K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum Conclusion {
    None,
    WeakEquivalence,
    /// Homotopy fibers are `n`-connected.
    ConnectedFibers {
        n: usize,
    },
    /// Isomorphism on homology with every coefficient field.
    HomologyIsomorphism,
    /// For every field of characteristic other than `p`: isomorphism through
    /// degree `through` (all degrees when `None`) and onto one degree above.
    ModPrimeIsomorphism {
        p: u64,
        through: Option<usize>,
    },
}

impl Conclusion {
    /// Homotopy-level statement.
    pub fn statement(&self) -> String {
        match self {
            Conclusion::None => "no conclusion".into(),
            Conclusion::WeakEquivalence => "K_X ∪ K_Y ⊆ K is a weak equivalence".into(),
            Conclusion::ConnectedFibers { n } => {
                format!("homotopy fibers of K_X ∪ K_Y ⊆ K are {n}-connected")
            }
            Conclusion::HomologyIsomorphism => "K_X ∪ K_Y ⊆ K is a homology isomorphism".into(),
            Conclusion::ModPrimeIsomorphism { p, through: None } => {
                format!("isomorphism on homology with coefficients of characteristic ≠ {p}")
            }
            Conclusion::ModPrimeIsomorphism {
                p,
                through: Some(n),
            } => format!("homotopy fibers connected with {p}-torsion homology through degree {n}"),
        }
    }

    /// The part of the statement that verification checks.
    pub fn shadow(&self) -> String {
        match self {
            Conclusion::None => "nothing to check".into(),
            Conclusion::WeakEquivalence | Conclusion::HomologyIsomorphism => {
                "H_d iso in every computed degree, every field".into()
            }
            Conclusion::ConnectedFibers { n } => {
                let mut s = format!("H_d iso for d ≤ {n}, onto for d = {}, every field", n + 1);
                if *n >= 1 {
                    s.push_str("; π_1 not machine-checked");
                }
                s
            }
            Conclusion::ModPrimeIsomorphism { p, through: None } => {
                format!("H_d iso in every computed degree over fields of characteristic ≠ {p}")
            }
            Conclusion::ModPrimeIsomorphism {
                p,
                through: Some(n),
            } => format!(
                "H_d iso for d ≤ {n}, onto for d = {}, over fields of characteristic ≠ {p}",
                n + 1
            ),
        }
    }

    /// Fibers at least `n`-connected, or a weak equivalence when unbounded.
    pub(crate) fn fibers(n: Option<usize>) -> Self {
        match n {
            None => Conclusion::WeakEquivalence,
            Some(n) => Conclusion::ConnectedFibers { n },
        }
    }
}

/// How much of `K \ P` a verdict is based on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "scope", content = "dimension", rename_all = "kebab-case")
)]
pub enum Scope {
    Complete,
    UpToDimension(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CriterionVerdict {
    pub criterion: Criterion,
    pub hypothesis: Hypothesis,
    /// `Conclusion::None` unless the hypothesis holds.
    pub conclusion: Conclusion,
    pub scope: Scope,
}

impl CriterionVerdict {
    fn new(
        criterion: Criterion,
        hypothesis: Hypothesis,
        conclusion: Conclusion,
        scope: Scope,
    ) -> Self {
        let conclusion = if hypothesis.holds() {
            conclusion
        } else {
            Conclusion::None
        };
        CriterionVerdict {
            criterion,
            hypothesis,
            conclusion,
            scope,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ObstructionRecord {
    pub simplex: Simplex,
    /// Vertex set of `St(σ, A)`.
    pub vertices: Vec<VertexId>,
    pub status: ObstructionStatus,
}

/// The cross simplices that were examined.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Census {
    pub dim_cap: usize,
    pub scope: Scope,
    /// `counts[d]`: number of cross simplices of dimension `d`.
    pub counts: Vec<usize>,
    pub obstructions: Vec<ObstructionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoverSummary {
    pub x: Vec<VertexId>,
    pub y: Vec<VertexId>,
    pub a: Vec<VertexId>,
    /// Point names indexed by vertex id, when known.
    pub labels: Option<Vec<String>>,
    /// Vietoris–Rips radius, when the complex came from distances.
    pub radius: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum DiscrepancyKind {
    /// A verdict's conclusion contradicts the computed homology.
    Soundness,
    /// A consequence the criterion guarantees did not hold.
    Invariant,
    /// The clique-complex formula for `St(σ, A)` disagreed with the definition.
    CliqueShortcut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Discrepancy {
    pub kind: DiscrepancyKind,
    pub criterion: Option<Criterion>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecompositionReport {
    pub cover: CoverSummary,
    pub census: Census,
    pub verdicts: Vec<CriterionVerdict>,
    pub verification: Option<Verification>,
    pub discrepancies: Vec<Discrepancy>,
}

impl DecompositionReport {
    pub fn verdict(&self, c: Criterion) -> Option<&CriterionVerdict> {
        self.verdicts.iter().find(|v| v.criterion == c)
    }

    pub fn is_sound(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Largest dimension of cross simplices examined, and largest homology
    /// degree verified.
    pub dim_cap: usize,
    pub coefficients: Vec<Coefficients>,
    pub verify: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            dim_cap: 4,
            coefficients: vec![Coefficients::RATIONALS, Coefficients::Integers],
            verify: true,
        }
    }
}

/// Vertex naming for witnesses.
pub(crate) struct Namer<'a> {
    labels: Option<&'a [String]>,
}

impl Namer<'_> {
    pub(crate) fn v(&self, v: VertexId) -> String {
        match self.labels.and_then(|l| l.get(v as usize)) {
            Some(s) => s.clone(),
            None => format!("{v}"),
        }
    }

    pub(crate) fn set<'b>(&self, vs: impl IntoIterator<Item = &'b VertexId>) -> String {
        let parts: Vec<String> = vs.into_iter().map(|&v| self.v(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub(crate) fn s(&self, s: &Simplex) -> String {
        self.set(s.vertices())
    }
}

/// Shared, read-only input to every criterion.
pub(crate) struct Context<'a> {
    pub k: &'a Complex,
    pub cover: &'a Cover,
    /// Largest dimension of examined cross simplices.
    pub dim: usize,
    /// No cross simplex exceeds `dim`.
    pub complete: bool,
    pub items: Vec<PComplementItem>,
    pub names: Namer<'a>,
}

impl Context<'_> {
    pub fn scope(&self) -> Scope {
        if self.complete {
            Scope::Complete
        } else {
            Scope::UpToDimension(self.dim)
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = &PComplementItem> {
        self.items.iter().filter(|i| i.simplex.dim() == 1)
    }

    /// Caps a connectivity bound by what the examined skeleton supports:
    /// obstructions up to dimension `dim` speak for `(dim − 1)`-connectivity.
    pub fn cap(&self, n: Option<usize>) -> Option<usize> {
        if self.complete {
            n
        } else {
            let bound = self.dim - 1;
            Some(n.map_or(bound, |n| n.min(bound)))
        }
    }
}

/// Connectivity of an obstruction that can be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Conn {
    /// Not certified even connected (possibly empty).
    Below,
    /// Nonempty and connected, by homology.
    Connected,
    /// Cone or collapse certificate.
    Contractible,
}

impl Conn {
    pub fn of(status: &ObstructionStatus) -> Conn {
        match status {
            ObstructionStatus::ConeCertified(_) | ObstructionStatus::CollapseCertified(_) => {
                Conn::Contractible
            }
            ObstructionStatus::HomologyOnly(Some(p))
                if p.minus_one == 0 && p.group(0).is_zero() =>
            {
                Conn::Connected
            }
            _ => Conn::Below,
        }
    }

    /// Largest certified `n` (`None` = every `n`); `Err` below 0.
    pub fn level(self) -> Result<Option<usize>, ()> {
        match self {
            Conn::Below => Err(()),
            Conn::Connected => Ok(Some(0)),
            Conn::Contractible => Ok(None),
        }
    }

    pub fn of_complex(l: &Complex) -> Result<Conn, HomologyError> {
        Ok(Conn::of(&ObstructionStatus::classify(l)?))
    }
}

/// Whether `K \ P` has a simplex of dimension `d + 1`.
fn has_cross_above(k: &Complex, cover: &Cover, d: usize) -> Result<bool, ComplexError> {
    match k {
        Complex::Flag(f) => {
            let outside: VertexSet = k.vertices().difference(cover.a()).copied().collect();
            // Any larger cross simplex has a cross face of dimension d + 1.
            Ok(f.cliques_within(&outside, d + 2)
                .into_iter()
                .any(|s| s.len() == d + 2 && cover.is_cross(&s)))
        }
        Complex::Explicit(_) => Ok(k
            .all_simplices()?
            .into_iter()
            .any(|s| s.dim() > d && cover.is_cross(&s))),
    }
}

/// Compares the clique formula `St(σ,A) = ⋂_{x∈σ} St({x},A)` and the
/// common-neighbour construction with the definition on every examined simplex.
fn check_clique_shortcut(
    ctx: &Context<'_>,
    out: &mut Vec<Discrepancy>,
) -> Result<(), HomologyError> {
    let Some(f) = ctx.k.as_flag() else {
        return Ok(());
    };
    let a = ctx.cover.a();
    let k_a = restriction(ctx.k, a);
    // Every complex below is a restriction of `k_a`, so they share its limit.
    let bound = k_a.enumeration_limit().unwrap_or(a.len());
    let known = |c: &Complex| -> Result<BTreeSet<Simplex>, ComplexError> {
        Ok(c.simplices_up_to(bound)?.into_iter().collect())
    };
    let k_a_simplices = known(&k_a)?;
    let mut vertex_obstructions = alloc::collections::BTreeMap::new();
    for item in &ctx.items {
        let mut shortcut: Option<BTreeSet<Simplex>> = None;
        for &x in item.simplex.vertices() {
            if let alloc::collections::btree_map::Entry::Vacant(e) = vertex_obstructions.entry(x) {
                e.insert(known(&obstruction(ctx.k, &Simplex::vertex(x), a)?)?);
            }
            let st = &vertex_obstructions[&x];
            shortcut = Some(match shortcut {
                None => st.clone(),
                Some(acc) => acc.intersection(st).cloned().collect(),
            });
        }
        let shortcut = shortcut.unwrap_or_default();
        let definition: BTreeSet<Simplex> = k_a_simplices
            .iter()
            .filter(|mu| f.is_clique(mu.union(&item.simplex).vertices()))
            .cloned()
            .collect();
        if shortcut != definition || known(&item.obstruction)? != definition {
            out.push(Discrepancy {
                kind: DiscrepancyKind::CliqueShortcut,
                criterion: None,
                detail: format!(
                    "St({},A): vertex-intersection formula and definition disagree",
                    ctx.names.s(&item.simplex)
                ),
            });
        }
    }
    Ok(())
}

fn summary(cover: &Cover, labels: Option<&[String]>, radius: Option<String>) -> CoverSummary {
    CoverSummary {
        x: cover.x().iter().copied().collect(),
        y: cover.y().iter().copied().collect(),
        a: cover.a().iter().copied().collect(),
        labels: labels.map(<[String]>::to_vec),
        radius,
    }
}

fn run(
    k: &Complex,
    cover: &Cover,
    options: &AnalysisOptions,
    labels: Option<&[String]>,
    mc: Option<&MetricCover>,
) -> Result<DecompositionReport, HomologyError> {
    if options.dim_cap < 1 {
        return Err(ComplexError::InvalidInput("dimension cap must be at least 1".into()).into());
    }
    if let Complex::Explicit(e) = k {
        if e.truncated_above().is_some() {
            return Err(ComplexError::InvalidInput(
                "cannot analyse a complex whose simplices are only partially known".into(),
            )
            .into());
        }
    }
    let dim = match k.enumeration_limit() {
        Some(limit) => options.dim_cap.min(limit),
        None => options.dim_cap,
    };
    if dim < 1 {
        return Err(ComplexError::EnumerationRefused {
            requested: 1,
            limit: dim,
        }
        .into());
    }
    // Validates the cover against K.
    Cover::new(k, cover.x().clone(), cover.y().clone())?;

    let items = enumerate_p_complement(k, cover, dim)?;
    let complete = !has_cross_above(k, cover, dim)?;
    let ctx = Context {
        k,
        cover,
        dim,
        complete,
        items,
        names: Namer { labels },
    };

    let mut discrepancies = Vec::new();
    check_clique_shortcut(&ctx, &mut discrepancies)?;

    let mut verdicts = general::evaluate(&ctx)?;
    verdicts.extend(clique::evaluate(&ctx, &mut discrepancies)?);
    match mc {
        Some(mc) => verdicts.extend(metric::evaluate(&ctx, mc, &mut discrepancies)?),
        None => verdicts.extend(metric::not_applicable()),
    }
    debug_assert!(verdicts.iter().map(|v| v.criterion).eq(Criterion::ALL));

    let verification = if options.verify {
        let v = verify::run(k, cover, options)?;
        discrepancies.extend(verify::audit(&verdicts, &v));
        Some(v)
    } else {
        None
    };

    let mut counts = vec![0usize; dim + 1];
    for item in &ctx.items {
        counts[item.simplex.dim()] += 1;
    }
    let census = Census {
        dim_cap: dim,
        scope: ctx.scope(),
        counts,
        obstructions: ctx
            .items
            .iter()
            .map(|i| ObstructionRecord {
                simplex: i.simplex.clone(),
                vertices: i.obstruction.vertices().into_iter().collect(),
                status: i.status.clone(),
            })
            .collect(),
    };
    let radius = mc.map(|m| format!("{}", crate::metric::Distance::Finite(m.r().clone())));
    Ok(DecompositionReport {
        cover: summary(cover, labels, radius),
        census,
        verdicts,
        verification,
        discrepancies,
    })
}

/// Evaluates every criterion for `cover` on `k` and, if requested, checks
/// conclusions against homology.
pub fn analyze(
    k: &Complex,
    cover: &Cover,
    options: &AnalysisOptions,
) -> Result<DecompositionReport, HomologyError> {
    run(k, cover, options, None, None)
}

/// As [`analyze`] on `VR_r(Z)`, adding the distance-based criteria.
pub fn analyze_metric(
    mc: &MetricCover,
    options: &AnalysisOptions,
) -> Result<DecompositionReport, HomologyError> {
    // One dimension of headroom so homology through `dim_cap` is computable.
    let k = mc.complex(options.dim_cap + 1);
    run(
        &k,
        &mc.cover(),
        options,
        Some(mc.space().labels()),
        Some(mc),
    )
}

/// Fields used for induced maps: the requested ones, or ℚ if none.
pub(crate) fn map_fields(coefficients: &[Coefficients]) -> Vec<Field> {
    let mut out: Vec<Field> = coefficients
        .iter()
        .filter_map(|c| match c {
            Coefficients::Field(f) => Some(*f),
            Coefficients::Integers => None,
        })
        .collect();
    out.sort();
    out.dedup();
    if out.is_empty() {
        out.push(Field::Rationals);
    }
    out
}
