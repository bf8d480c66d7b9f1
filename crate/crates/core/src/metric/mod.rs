//! Finite distance spaces, Vietoris–Rips complexes and metric gluings.
//!
//! Distances are exact extended rationals. A [`Tolerance`] may widen every
//! `≤` test by a fixed ε when inputs come from floating-point data.

mod assumptions;
mod distance;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Signed;

use crate::complex::{Complex, Cover, VertexId, VertexSet};

pub use assumptions::{
    check_assumption_i, check_assumption_ii, check_cross_diameter, check_simplex_assumption,
    check_strong_simplex_assumption, AssumptionIIFailure,
};
pub use distance::{parse_decimal, Distance, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the two spaces disagree on d({0}, {1})")]
    GluingMismatch(String, String),
}

/// A failed symmetry or reflexivity requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Asymmetric { i: VertexId, j: VertexId },
    NonzeroDiagonal { i: VertexId },
}

/// Finite labelled point set with a square matrix of distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSpace {
    labels: Vec<String>,
    d: Vec<Vec<Distance>>,
    tolerance: Tolerance,
}

impl DistanceSpace {
    /// Point `i` gets vertex id `i`. Symmetry and reflexivity are not
    /// enforced here; see [`validate`].
    pub fn new(labels: Vec<String>, d: Vec<Vec<Distance>>) -> Result<Self, MetricError> {
        let n = labels.len();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(MetricError::InvalidInput(format!(
                "distance matrix must be {n}×{n} to match the labels"
            )));
        }
        let mut seen = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(MetricError::InvalidInput(format!("duplicate label {l:?}")));
            }
        }
        if n > u32::MAX as usize {
            return Err(MetricError::InvalidInput("too many points".into()));
        }
        Ok(DistanceSpace {
            labels,
            d,
            tolerance: Tolerance::exact(),
        })
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tolerance
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as VertexId)
    }

    /// Resolves labels to ids.
    pub fn ids_of<'a, I: IntoIterator<Item = &'a str>>(
        &self,
        labels: I,
    ) -> Result<VertexSet, MetricError> {
        labels
            .into_iter()
            .map(|l| {
                self.index_of(l)
                    .ok_or_else(|| MetricError::InvalidInput(format!("unknown point {l:?}")))
            })
            .collect()
    }

    pub fn points(&self) -> VertexSet {
        (0..self.len() as VertexId).collect()
    }

    pub fn d(&self, a: VertexId, b: VertexId) -> &Distance {
        &self.d[a as usize][b as usize]
    }

    pub fn matrix(&self) -> &[Vec<Distance>] {
        &self.d
    }

    /// `d(a, b) ≤ r` under the space's tolerance.
    pub fn within(&self, a: VertexId, b: VertexId, r: &Distance) -> bool {
        self.tolerance.le(self.d(a, b), r)
    }

    /// The subspace on `points`, relabelled densely in increasing id order.
    pub fn subspace(&self, points: &VertexSet) -> DistanceSpace {
        let ids: Vec<_> = points.iter().copied().collect();
        DistanceSpace {
            labels: ids
                .iter()
                .map(|&i| self.labels[i as usize].clone())
                .collect(),
            d: ids
                .iter()
                .map(|&i| ids.iter().map(|&j| self.d(i, j).clone()).collect())
                .collect(),
            tolerance: self.tolerance.clone(),
        }
    }
}

/// Every symmetry and reflexivity violation, in index order.
pub fn validate(space: &DistanceSpace) -> Result<(), Vec<Violation>> {
    let n = space.len() as VertexId;
    let mut out = Vec::new();
    for i in 0..n {
        if !space.d(i, i).is_zero() {
            out.push(Violation::NonzeroDiagonal { i });
        }
        for j in i + 1..n {
            if space.d(i, j) != space.d(j, i) {
                out.push(Violation::Asymmetric { i, j });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// First triple `(x, y, z)` with `d(x, z) > d(x, y) + d(y, z)`.
pub fn is_pseudometric(space: &DistanceSpace) -> Result<(), (VertexId, VertexId, VertexId)> {
    let n = space.len() as VertexId;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let via = space.d(x, y) + space.d(y, z);
                if !space.tolerance.le(space.d(x, z), &via) {
                    return Err((x, y, z));
                }
            }
        }
    }
    Ok(())
}

/// Largest pairwise distance in `s`.
pub fn diam(space: &DistanceSpace, s: &VertexSet) -> Result<Distance, MetricError> {
    if s.is_empty() {
        return Err(MetricError::InvalidInput("diameter of an empty set".into()));
    }
    let mut best = Distance::zero();
    for &a in s {
        for &b in s.range(a..) {
            if space.d(a, b) > &best {
                best = space.d(a, b).clone();
            }
        }
    }
    Ok(best)
}

/// `VR_r`: the flag complex whose edges are the pairs at distance `≤ r`.
pub fn vietoris_rips(space: &DistanceSpace, r: &BigRational, dim_cap: usize) -> Complex {
    let r = Distance::Finite(r.clone());
    let n = space.len() as VertexId;
    let edges = (0..n).flat_map(|a| {
        let r = r.clone();
        (a + 1..n)
            .filter(move |&b| space.within(a, b, &r) && space.within(b, a, &r))
            .map(move |b| (a, b))
    });
    Complex::flag(0..n, edges.collect::<Vec<_>>(), dim_cap)
}

/// Result of [`glue`]: points of `X` first, then `Y \ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub space: DistanceSpace,
    pub x: VertexSet,
    pub y: VertexSet,
    pub warnings: Vec<String>,
}

/// Glues `dx` and `dy` along their common labels, which must be exactly `a`.
pub fn glue(dx: &DistanceSpace, dy: &DistanceSpace, a: &[String]) -> Result<Gluing, MetricError> {
    for l in a {
        if dx.index_of(l).is_none() || dy.index_of(l).is_none() {
            return Err(MetricError::InvalidInput(format!(
                "shared point {l:?} missing from one side"
            )));
        }
    }
    if let Some(l) = dx
        .labels()
        .iter()
        .find(|l| dy.index_of(l).is_some() && !a.contains(l))
    {
        return Err(MetricError::InvalidInput(format!(
            "point {l:?} occurs on both sides but is not shared"
        )));
    }
    for p in a {
        for q in a {
            let (px, qx) = (dx.index_of(p).unwrap(), dx.index_of(q).unwrap());
            let (py, qy) = (dy.index_of(p).unwrap(), dy.index_of(q).unwrap());
            if dx.d(px, qx) != dy.d(py, qy) {
                return Err(MetricError::GluingMismatch(p.clone(), q.clone()));
            }
        }
    }

    let mut labels: Vec<String> = dx.labels().to_vec();
    let y_only: Vec<&String> = dy.labels().iter().filter(|l| !a.contains(l)).collect();
    labels.extend(y_only.iter().map(|l| (*l).clone()));
    let nx = dx.len();
    let n = labels.len();
    // Position in `dy` of every glued point that lies in Y.
    let in_y = |i: usize| dy.index_of(&labels[i]);
    let a_pairs: Vec<(VertexId, VertexId)> = a
        .iter()
        .map(|l| (dx.index_of(l).unwrap(), dy.index_of(l).unwrap()))
        .collect();

    let mut d = alloc::vec![alloc::vec![Distance::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = if i < nx && j < nx {
                dx.d(i as VertexId, j as VertexId).clone()
            } else if let (Some(yi), Some(yj)) = (in_y(i), in_y(j)) {
                dy.d(yi, yj).clone()
            } else {
                // One point in X \ A, the other in Y \ A.
                let (xi, yj) = if i < nx {
                    (i as VertexId, in_y(j).unwrap())
                } else {
                    (j as VertexId, in_y(i).unwrap())
                };
                a_pairs
                    .iter()
                    .map(|&(ax, ay)| dx.d(xi, ax) + dy.d(ay, yj))
                    .min()
                    .unwrap_or(Distance::Infinite)
            };
        }
    }
    let mut warnings = Vec::new();
    if a.is_empty() && nx > 0 && !y_only.is_empty() {
        warnings.push("no shared points: every cross distance is infinite".into());
    }
    let x = (0..nx as VertexId).collect();
    let y = (0..n as VertexId)
        .filter(|&i| in_y(i as usize).is_some())
        .collect();
    Ok(Gluing {
        space: DistanceSpace::new(labels, d)?.with_tolerance(dx.tolerance.clone()),
        x,
        y,
        warnings,
    })
}

/// First pair `x ∈ X \ A`, `y ∈ Y \ A` whose distance is not realised
/// through `A`.
pub fn is_metric_gluing(
    space: &DistanceSpace,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<(), (VertexId, VertexId)> {
    let a: VertexSet = x.intersection(y).copied().collect();
    for &p in x.difference(&a) {
        for &q in y.difference(&a) {
            let through = a
                .iter()
                .map(|&v| space.d(p, v) + space.d(v, q))
                .min()
                .unwrap_or(Distance::Infinite);
            if !space.tolerance.eq(space.d(p, q), &through) {
                return Err((p, q));
            }
        }
    }
    Ok(())
}

/// A distance space with a cover `X ∪ Y = Z` and a radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricCover {
    space: DistanceSpace,
    x: VertexSet,
    y: VertexSet,
    a: VertexSet,
    r: BigRational,
}

impl MetricCover {
    pub fn new(
        space: DistanceSpace,
        x: VertexSet,
        y: VertexSet,
        r: BigRational,
    ) -> Result<Self, MetricError> {
        if r.is_negative() {
            return Err(MetricError::InvalidInput(
                "radius must be nonnegative".into(),
            ));
        }
        if let Some(v) = x.iter().chain(&y).find(|&&v| v as usize >= space.len()) {
            return Err(MetricError::InvalidInput(format!(
                "point id {v} out of range"
            )));
        }
        if let Some(v) = space
            .points()
            .into_iter()
            .find(|v| !x.contains(v) && !y.contains(v))
        {
            return Err(MetricError::InvalidInput(format!(
                "point {:?} lies in neither X nor Y",
                space.label(v)
            )));
        }
        let a = x.intersection(&y).copied().collect();
        Ok(MetricCover { space, x, y, a, r })
    }

    pub fn space(&self) -> &DistanceSpace {
        &self.space
    }

    pub fn x(&self) -> &VertexSet {
        &self.x
    }

    pub fn y(&self) -> &VertexSet {
        &self.y
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn radius(&self) -> Distance {
        Distance::Finite(self.r.clone())
    }

    pub fn x_only(&self) -> VertexSet {
        self.x.difference(&self.a).copied().collect()
    }

    pub fn y_only(&self) -> VertexSet {
        self.y.difference(&self.a).copied().collect()
    }

    pub fn cover(&self) -> Cover {
        Cover::unchecked(self.x.clone(), self.y.clone())
    }

    pub fn complex(&self, dim_cap: usize) -> Complex {
        vietoris_rips(&self.space, &self.r, dim_cap)
    }

    pub fn within_r(&self, a: VertexId, b: VertexId) -> bool {
        self.space.within(a, b, &self.radius())
    }

    /// Pairs `(x, y)`, `x ∈ X \ A`, `y ∈ Y \ A`, with `d(x, y) ≤ r`; these are
    /// the edges of `VR_r(Z) \ P`.
    pub fn cross_edges(&self) -> Vec<(VertexId, VertexId)> {
        let ys = self.y_only();
        self.x_only()
            .into_iter()
            .flat_map(|x| ys.iter().map(move |&y| (x, y)))
            .filter(|&(x, y)| self.within_r(x, y))
            .collect()
    }
}
