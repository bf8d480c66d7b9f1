//! Metric conditions on a cover under which `VR_r(X) ∪ VR_r(Y)` and
//! `VR_r(Z)` are compared. Every check reports the lexicographically first
//! witness of failure.

use alloc::vec::Vec;

use crate::complex::VertexId;

use super::{diam, Distance, MetricCover};

/// Smallest `v ∈ A` within `r` of both endpoints of every cross edge.
/// `None` when no such vertex exists, in particular when `A` is empty.
pub fn check_assumption_i(mc: &MetricCover) -> Option<VertexId> {
    let edges = mc.cross_edges();
    mc.a().iter().copied().find(|&v| {
        edges
            .iter()
            .all(|&(x, y)| mc.within_r(x, v) && mc.within_r(y, v))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssumptionIIFailure {
    EmptyIntersection,
    /// `d(x, y) < d(x, v)` or `d(x, y) < d(y, v)`.
    Witness {
        x: VertexId,
        y: VertexId,
        v: VertexId,
    },
}

/// Every cross pair is at least as far apart as either point is from any
/// point of `A`. Independent of the radius.
pub fn check_assumption_ii(mc: &MetricCover) -> Result<(), AssumptionIIFailure> {
    if mc.a().is_empty() {
        return Err(AssumptionIIFailure::EmptyIntersection);
    }
    let s = mc.space();
    let tol = s.tolerance();
    let ys = mc.y_only();
    for x in mc.x_only() {
        for &y in &ys {
            for &v in mc.a() {
                if !tol.le(s.d(x, v), s.d(x, y)) || !tol.le(s.d(y, v), s.d(x, y)) {
                    return Err(AssumptionIIFailure::Witness { x, y, v });
                }
            }
        }
    }
    Ok(())
}

/// First cross pair `(x, y)` with `d(x, y) < diam(A)`. Succeeds vacuously
/// when `A` is empty.
pub fn check_cross_diameter(mc: &MetricCover) -> Result<(), (VertexId, VertexId)> {
    let Ok(da) = diam(mc.space(), mc.a()) else {
        return Ok(());
    };
    let s = mc.space();
    let ys = mc.y_only();
    for x in mc.x_only() {
        for &y in &ys {
            if !s.tolerance().le(&da, s.d(x, y)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// Endpoints of cross edges, each once, in increasing order.
fn cross_endpoints(mc: &MetricCover) -> Vec<VertexId> {
    let mut out: Vec<_> = mc
        .cross_edges()
        .into_iter()
        .flat_map(|(x, y)| [x, y])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn check_simplex_like(
    mc: &MetricCover,
    ok: impl Fn(&Distance, &Distance, &Distance) -> bool,
) -> Result<(), (VertexId, VertexId, VertexId)> {
    let s = mc.space();
    for v in cross_endpoints(mc) {
        let near: Vec<_> = mc
            .a()
            .iter()
            .copied()
            .filter(|&a| mc.within_r(a, v))
            .collect();
        for (i, &a) in near.iter().enumerate() {
            for &b in &near[i + 1..] {
                if !ok(s.d(a, b), s.d(a, v), s.d(v, b)) {
                    return Err((v, a, b));
                }
            }
        }
    }
    Ok(())
}

/// For `v` an endpoint of a cross edge and `a, b ∈ A` within `r` of `v`,
/// requires `d(a, b) ≤ r`. Failure witness is `(v, a, b)`.
pub fn check_simplex_assumption(mc: &MetricCover) -> Result<(), (VertexId, VertexId, VertexId)> {
    let r = mc.radius();
    let tol = mc.space().tolerance().clone();
    check_simplex_like(mc, |ab, _, _| tol.le(ab, &r))
}

/// As [`check_simplex_assumption`] with the stronger conclusion
/// `2·d(a, b) ≤ d(a, v) + d(v, b)`.
pub fn check_strong_simplex_assumption(
    mc: &MetricCover,
) -> Result<(), (VertexId, VertexId, VertexId)> {
    let tol = mc.space().tolerance().clone();
    check_simplex_like(mc, |ab, av, vb| tol.le(&ab.double(), &(av + vb)))
}

#[cfg(test)]
mod tests {
    use super::super::DistanceSpace;
    use super::*;
    use crate::complex::VertexSet;
    use alloc::format;
    use num_rational::BigRational;

    fn cover(rows: &[&[i64]], x: &[u32], y: &[u32], r: i64) -> MetricCover {
        let n = rows.len();
        let s = DistanceSpace::new(
            (0..n).map(|i| format!("p{i}")).collect(),
            rows.iter()
                .map(|r| r.iter().map(|&v| Distance::from_integer(v)).collect())
                .collect(),
        )
        .unwrap();
        let set = |v: &[u32]| v.iter().copied().collect::<VertexSet>();
        MetricCover::new(s, set(x), set(y), BigRational::from_integer(r.into())).unwrap()
    }

    // Path x=0 – a=1 – y=2 on the line.
    fn line(r: i64) -> MetricCover {
        cover(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]], &[0, 1], &[1, 2], r)
    }

    #[test]
    fn assumption_i_on_a_line() {
        assert_eq!(check_assumption_i(&line(2)), Some(1));
        // No cross edges at r = 1, so any vertex of A works.
        assert_eq!(check_assumption_i(&line(1)), Some(1));
        let empty_a = cover(&[&[0, 1], &[1, 0]], &[0], &[1], 1);
        assert_eq!(check_assumption_i(&empty_a), None);
    }

    #[test]
    fn assumption_ii_on_a_line() {
        assert_eq!(check_assumption_ii(&line(0)), Ok(()));
        assert_eq!(check_cross_diameter(&line(0)), Ok(()));
        // x=0, a=1, y=2 with a far from both.
        let far = cover(&[&[0, 5, 1], &[5, 0, 5], &[1, 5, 0]], &[0, 1], &[1, 2], 1);
        assert_eq!(
            check_assumption_ii(&far),
            Err(AssumptionIIFailure::Witness { x: 0, y: 2, v: 1 })
        );
        let empty_a = cover(&[&[0, 1], &[1, 0]], &[0], &[1], 1);
        assert_eq!(
            check_assumption_ii(&empty_a),
            Err(AssumptionIIFailure::EmptyIntersection)
        );
    }

    #[test]
    fn cross_diameter_witness() {
        // A = {1, 2} at distance 3; cross pair (0, 3) at distance 2.
        let mc = cover(
            &[&[0, 1, 2, 2], &[1, 0, 3, 1], &[2, 3, 0, 1], &[2, 1, 1, 0]],
            &[0, 1, 2],
            &[1, 2, 3],
            2,
        );
        assert_eq!(check_cross_diameter(&mc), Err((0, 3)));
    }

    #[test]
    fn simplex_assumptions() {
        // Cross edge 0–3 at r = 2; A = {1, 2} both within 1 of each endpoint.
        let close = cover(
            &[&[0, 1, 1, 2], &[1, 0, 1, 1], &[1, 1, 0, 1], &[2, 1, 1, 0]],
            &[0, 1, 2],
            &[1, 2, 3],
            2,
        );
        assert_eq!(check_simplex_assumption(&close), Ok(()));
        assert_eq!(check_strong_simplex_assumption(&close), Ok(()));

        let wide = cover(
            &[&[0, 1, 1, 2], &[1, 0, 2, 1], &[1, 2, 0, 1], &[2, 1, 1, 0]],
            &[0, 1, 2],
            &[1, 2, 3],
            2,
        );
        assert_eq!(check_simplex_assumption(&wide), Ok(()));
        assert_eq!(check_strong_simplex_assumption(&wide), Err((0, 1, 2)));
    }
}
