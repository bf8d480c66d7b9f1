//! Criteria phrased in terms of distances, for `K = VR_r(Z)`.

use alloc::format;
use alloc::vec::Vec;

use crate::complex::{restriction, ObstructionStatus, PComplementItem, VertexId};
use crate::homology::HomologyError;
use crate::metric::{
    check_assumption_i, check_assumption_ii, check_cross_diameter, check_simplex_assumption,
    check_strong_simplex_assumption, diam, is_metric_gluing, is_pseudometric, AssumptionIIFailure,
    MetricCover,
};

use super::general::{describe, level_text};
use super::{
    Conclusion, Conn, Context, Criterion, CriterionVerdict, Discrepancy, DiscrepancyKind,
    Hypothesis, Scope,
};

const CRITERIA: [Criterion; 10] = [
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

pub(super) fn not_applicable() -> Vec<CriterionVerdict> {
    CRITERIA
        .iter()
        .map(|&c| {
            CriterionVerdict::new(
                c,
                Hypothesis::not_applicable("no distances given"),
                Conclusion::None,
                Scope::Complete,
            )
        })
        .collect()
}

fn verdict(c: Criterion, h: Hypothesis, conclusion: Conclusion) -> CriterionVerdict {
    CriterionVerdict::new(c, h, conclusion, Scope::Complete)
}

pub(super) fn evaluate(
    ctx: &Context<'_>,
    mc: &MetricCover,
    discrepancies: &mut Vec<Discrepancy>,
) -> Result<Vec<CriterionVerdict>, HomologyError> {
    let edges: Vec<&PComplementItem> = ctx.edges().collect();
    let n = &ctx.names;
    let mut out = Vec::with_capacity(CRITERIA.len());

    // Constant common neighbourhood.
    let c = Criterion::RipsConstantNeighbourhood;
    out.push(match edges.first() {
        None => verdict(
            c,
            Hypothesis::holds_with("no cross pair within r"),
            Conclusion::WeakEquivalence,
        ),
        Some(first) => {
            match edges
                .iter()
                .find(|e| !e.obstruction.same_simplices(&first.obstruction))
            {
                Some(e) => verdict(
                    c,
                    Hypothesis::fails_with(format!(
                        "neighbourhoods of {} and {} differ",
                        n.s(&first.simplex),
                        n.s(&e.simplex)
                    )),
                    Conclusion::None,
                ),
                None => match Conn::of(&first.status).level() {
                    Ok(l) => verdict(
                        c,
                        Hypothesis::holds_with(format!(
                            "L = {}, {}",
                            n.set(&first.obstruction.vertices()),
                            level_text(l)
                        )),
                        Conclusion::fibers(l),
                    ),
                    Err(()) => verdict(
                        c,
                        Hypothesis::fails_with(format!("VR_r(L) {}", describe(&first.status))),
                        Conclusion::None,
                    ),
                },
            }
        }
    });

    // Every point of A is a common neighbour.
    let c = Criterion::RipsFullNeighbourhood;
    let far = mc.cross_edges().into_iter().find_map(|(x, y)| {
        mc.a()
            .iter()
            .find(|&&v| !mc.within_r(x, v) || !mc.within_r(y, v))
            .map(|&v| (x, y, v))
    });
    out.push(match far {
        Some((x, y, v)) => verdict(
            c,
            Hypothesis::fails_with(format!(
                "{} is not within r of both {} and {}",
                n.v(v),
                n.v(x),
                n.v(y)
            )),
            Conclusion::None,
        ),
        None => {
            let status = ObstructionStatus::classify(&restriction(ctx.k, mc.a()))?;
            match Conn::of(&status).level() {
                Ok(l) => verdict(
                    c,
                    Hypothesis::holds_with(format!("VR_r(A) certified for {}", level_text(l))),
                    Conclusion::fibers(l),
                ),
                Err(()) => verdict(
                    c,
                    Hypothesis::fails_with(format!("VR_r(A) {}", describe(&status))),
                    Conclusion::None,
                ),
            }
        }
    });

    // Common neighbours of all cross pairs.
    let cross = mc.cross_edges();
    let common: Vec<VertexId> = mc
        .a()
        .iter()
        .copied()
        .filter(|&v| {
            cross
                .iter()
                .all(|&(x, y)| mc.within_r(x, v) && mc.within_r(y, v))
        })
        .collect();
    debug_assert_eq!(common.first().copied(), check_assumption_i(mc));
    let c = Criterion::CommonNeighbour;
    out.push(match common.first() {
        Some(&v) => {
            if let Some(e) = edges
                .iter()
                .find(|e| !e.obstruction.vertices().contains(&v))
            {
                discrepancies.push(Discrepancy {
                    kind: DiscrepancyKind::Invariant,
                    criterion: Some(c),
                    detail: format!("{} is missing from St({},A)", n.v(v), n.s(&e.simplex)),
                });
            }
            verdict(
                c,
                Hypothesis::holds_with(format!("v = {}", n.v(v))),
                Conclusion::ConnectedFibers { n: 0 },
            )
        }
        None => verdict(
            c,
            Hypothesis::fails_with(if mc.a().is_empty() {
                "A is empty"
            } else {
                "no point of A is within r of every cross pair"
            }),
            Conclusion::None,
        ),
    });

    let no_common = || Hypothesis::fails_with("no common neighbour");

    let c = Criterion::CommonNeighbourNearby;
    let nearby = common.iter().copied().find(|&v| {
        cross.iter().all(|&(x, y)| {
            mc.a()
                .iter()
                .all(|&w| !(mc.within_r(w, x) && mc.within_r(w, y)) || mc.within_r(w, v))
        })
    });
    out.push(match (common.is_empty(), nearby) {
        (true, _) => verdict(c, no_common(), Conclusion::None),
        (false, Some(v)) => verdict(
            c,
            Hypothesis::holds_with(format!("v = {}", n.v(v))),
            Conclusion::WeakEquivalence,
        ),
        (false, None) => verdict(
            c,
            Hypothesis::fails_with("every common neighbour misses some neighbour of a cross pair"),
            Conclusion::None,
        ),
    });

    let c = Criterion::CommonNeighbourSmallDiameter;
    out.push(if common.is_empty() {
        verdict(c, no_common(), Conclusion::None)
    } else {
        let d = diam(mc.space(), mc.a()).expect("A is nonempty");
        if mc.space().tolerance().le(&d, &mc.radius()) {
            verdict(
                c,
                Hypothesis::holds_with(format!("diam(A) = {d}")),
                Conclusion::WeakEquivalence,
            )
        } else {
            verdict(
                c,
                Hypothesis::fails_with(format!("diam(A) = {d} > r")),
                Conclusion::None,
            )
        }
    });

    let c = Criterion::CommonNeighbourSingleton;
    out.push(if common.is_empty() {
        verdict(c, no_common(), Conclusion::None)
    } else if mc.a().len() == 1 {
        verdict(c, Hypothesis::holds_plain(), Conclusion::WeakEquivalence)
    } else {
        verdict(
            c,
            Hypothesis::fails_with(format!("|A| = {}", mc.a().len())),
            Conclusion::None,
        )
    });

    // Angle condition; radius independent.
    let angle = check_assumption_ii(mc);
    let angle_h = match &angle {
        Ok(()) => Hypothesis::holds_plain(),
        Err(AssumptionIIFailure::EmptyIntersection) => Hypothesis::fails_with("A is empty"),
        Err(AssumptionIIFailure::Witness { x, y, v }) => Hypothesis::fails_with(format!(
            "d({},{}) is smaller than a distance to {}",
            n.v(*x),
            n.v(*y),
            n.v(*v)
        )),
    };
    out.push(verdict(
        Criterion::AngleCondition,
        angle_h.clone(),
        Conclusion::None,
    ));
    let c = Criterion::AngleConditionFarApart;
    out.push(match (angle_h.holds(), check_cross_diameter(mc)) {
        (false, _) => verdict(c, angle_h, Conclusion::None),
        (true, Ok(())) => verdict(c, Hypothesis::holds_plain(), Conclusion::WeakEquivalence),
        (true, Err((x, y))) => verdict(
            c,
            Hypothesis::fails_with(format!("d({},{}) < diam(A)", n.v(x), n.v(y))),
            Conclusion::None,
        ),
    });

    // Metric gluings.
    let gluing = match (
        is_pseudometric(mc.space()),
        is_metric_gluing(mc.space(), mc.x(), mc.y()),
    ) {
        (Err((x, y, z)), _) => Err(format!(
            "triangle inequality fails on {}, {}, {}",
            n.v(x),
            n.v(y),
            n.v(z)
        )),
        (Ok(()), Err((x, y))) => Err(format!(
            "d({},{}) is not realised through A",
            n.v(x),
            n.v(y)
        )),
        (Ok(()), Ok(())) => Ok(()),
    };

    let c = Criterion::SimplexCondition;
    out.push(match (&gluing, check_simplex_assumption(mc)) {
        (Err(w), _) => verdict(c, Hypothesis::fails_with(w.clone()), Conclusion::None),
        (Ok(()), Err((v, a, b))) => verdict(
            c,
            Hypothesis::fails_with(format!(
                "{} and {} are near {} but d({},{}) > r",
                n.v(a),
                n.v(b),
                n.v(v),
                n.v(a),
                n.v(b)
            )),
            Conclusion::None,
        ),
        (Ok(()), Ok(())) => {
            for e in &edges {
                if !e.status.is_certified_contractible() {
                    discrepancies.push(Discrepancy {
                        kind: DiscrepancyKind::Invariant,
                        criterion: Some(c),
                        detail: format!("St({},A) {}", n.s(&e.simplex), describe(&e.status)),
                    });
                }
            }
            verdict(
                c,
                Hypothesis::holds_plain(),
                Conclusion::ConnectedFibers { n: 0 },
            )
        }
    });

    let c = Criterion::StrongSimplexCondition;
    out.push(match (&gluing, check_strong_simplex_assumption(mc)) {
        (Err(w), _) => verdict(c, Hypothesis::fails_with(w.clone()), Conclusion::None),
        (Ok(()), Err((v, a, b))) => verdict(
            c,
            Hypothesis::fails_with(format!(
                "2·d({},{}) > d({},{}) + d({},{})",
                n.v(a),
                n.v(b),
                n.v(a),
                n.v(v),
                n.v(v),
                n.v(b)
            )),
            Conclusion::None,
        ),
        (Ok(()), Ok(())) => {
            let x_only = ctx.cover.x_only();
            let y_only = ctx.cover.y_only();
            for item in &ctx.items {
                let one_side = item
                    .simplex
                    .vertices()
                    .iter()
                    .filter(|v| x_only.contains(v))
                    .count()
                    == 1
                    || item
                        .simplex
                        .vertices()
                        .iter()
                        .filter(|v| y_only.contains(v))
                        .count()
                        == 1;
                if one_side
                    && (item.obstruction.is_empty() || !item.obstruction.is_standard_simplex())
                {
                    discrepancies.push(Discrepancy {
                        kind: DiscrepancyKind::Invariant,
                        criterion: Some(c),
                        detail: format!(
                            "St({},A) is not a nonempty standard simplex",
                            n.s(&item.simplex)
                        ),
                    });
                }
            }
            verdict(
                c,
                Hypothesis::holds_plain(),
                Conclusion::ConnectedFibers { n: 1 },
            )
        }
    });

    debug_assert!(out.iter().map(|v| v.criterion).eq(CRITERIA));
    Ok(out)
}
