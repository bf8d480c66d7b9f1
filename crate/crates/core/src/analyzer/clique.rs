//! Criteria for clique complexes. All but the first only read the cross
//! edges, because in a clique complex `St(σ, A)` is the intersection of the
//! obstructions of the edges of `σ`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{
    is_central, restriction, Complex, ComplexError, PComplementItem, Simplex, VertexId,
};
use crate::homology::HomologyError;

use super::general::{describe, entry_ok, level_text, skeletal_bound};
use super::{
    Conclusion, Conn, Context, Criterion, CriterionVerdict, Discrepancy, DiscrepancyKind,
    Hypothesis, ObstructionStatus, Scope,
};

const CRITERIA: [Criterion; 9] = [
    Criterion::CliqueStandardSimplices,
    Criterion::CliqueConstantObstruction,
    Criterion::CliqueConnectedIntersection,
    Criterion::CliqueSmallSubsets,
    Criterion::CliqueSingleton,
    Criterion::CliqueEntryAdjacent,
    Criterion::CliqueEntryCentral,
    Criterion::CliqueEntrySimplex,
    Criterion::TwoEntryPoints,
];

/// Whether `k` is the clique complex of its 1-skeleton.
pub(crate) fn is_clique_complex(k: &Complex) -> Result<bool, ComplexError> {
    match k {
        Complex::Flag(_) => Ok(true),
        Complex::Explicit(e) => {
            let Some(dim) = k.dimension() else {
                return Ok(true);
            };
            let edges: Vec<(VertexId, VertexId)> = k
                .simplices_of_dim(1)?
                .iter()
                .map(|s| (s.vertices()[0], s.vertices()[1]))
                .collect();
            let flag = Complex::flag(k.vertices(), edges, dim + 1);
            let cliques = flag.simplices_up_to(dim + 1)?;
            Ok(cliques.len() == e.simplices().len() && cliques.iter().all(|s| k.contains(s)))
        }
    }
}

pub(super) fn evaluate(
    ctx: &Context<'_>,
    discrepancies: &mut Vec<Discrepancy>,
) -> Result<Vec<CriterionVerdict>, HomologyError> {
    if !is_clique_complex(ctx.k)? {
        return Ok(CRITERIA
            .iter()
            .map(|&c| {
                CriterionVerdict::new(
                    c,
                    Hypothesis::not_applicable("K is not a clique complex"),
                    Conclusion::None,
                    Scope::Complete,
                )
            })
            .collect());
    }
    let edges: Vec<&PComplementItem> = ctx.edges().collect();
    Ok(alloc::vec![
        standard_simplices(ctx, &edges),
        constant(ctx, &edges),
        connected_intersection(ctx, &edges)?,
        small_subsets(ctx, &edges),
        singleton(ctx, &edges),
        entry_adjacent(ctx, &edges),
        entry_central(ctx, &edges),
        entry_simplex(ctx, &edges, discrepancies),
        two_entry_points(ctx, &edges, discrepancies),
    ])
}

fn edge_level(c: Criterion, h: Hypothesis, conclusion: Conclusion) -> CriterionVerdict {
    CriterionVerdict::new(c, h, conclusion, Scope::Complete)
}

fn standard_simplices(ctx: &Context<'_>, edges: &[&PComplementItem]) -> CriterionVerdict {
    let c = Criterion::CliqueStandardSimplices;
    if let Some(e) = edges.iter().find(|e| !e.obstruction.is_standard_simplex()) {
        return CriterionVerdict::new(
            c,
            Hypothesis::fails_with(format!(
                "St({},A) is not a standard simplex",
                ctx.names.s(&e.simplex)
            )),
            Conclusion::None,
            ctx.scope(),
        );
    }
    match skeletal_bound(ctx, None, |i| !i.obstruction.is_empty()) {
        Ok(n) => CriterionVerdict::new(
            c,
            Hypothesis::holds_with(format!("obstructions nonempty for {}", level_text(n))),
            Conclusion::fibers(n),
            ctx.scope(),
        ),
        Err(e) => CriterionVerdict::new(
            c,
            Hypothesis::fails_with(format!("St({},A) is empty", ctx.names.s(&e.simplex))),
            Conclusion::None,
            ctx.scope(),
        ),
    }
}

fn constant(ctx: &Context<'_>, edges: &[&PComplementItem]) -> CriterionVerdict {
    let c = Criterion::CliqueConstantObstruction;
    let Some(first) = edges.first() else {
        return edge_level(
            c,
            Hypothesis::holds_with("no cross edges"),
            Conclusion::WeakEquivalence,
        );
    };
    if let Some(e) = edges
        .iter()
        .find(|e| !e.obstruction.same_simplices(&first.obstruction))
    {
        return edge_level(
            c,
            Hypothesis::fails_with(format!(
                "St({},A) differs from St({},A)",
                ctx.names.s(&e.simplex),
                ctx.names.s(&first.simplex)
            )),
            Conclusion::None,
        );
    }
    match Conn::of(&first.status).level() {
        Ok(n) => edge_level(
            c,
            Hypothesis::holds_with(format!(
                "L on {}, {}",
                ctx.names.set(&first.obstruction.vertices()),
                level_text(n)
            )),
            Conclusion::fibers(n),
        ),
        Err(()) => edge_level(
            c,
            Hypothesis::fails_with(format!("L {}", describe(&first.status))),
            Conclusion::None,
        ),
    }
}

fn connected_intersection(
    ctx: &Context<'_>,
    edges: &[&PComplementItem],
) -> Result<CriterionVerdict, HomologyError> {
    let c = Criterion::CliqueConnectedIntersection;
    let a = ctx.cover.a();
    for e in edges {
        if let Some(&v) = a
            .iter()
            .find(|&&v| !ctx.k.contains(&e.simplex.with_vertex(v)))
        {
            return Ok(edge_level(
                c,
                Hypothesis::fails_with(format!(
                    "{} ∪ {{{}}} is not a simplex",
                    ctx.names.s(&e.simplex),
                    ctx.names.v(v)
                )),
                Conclusion::None,
            ));
        }
    }
    let k_a = restriction(ctx.k, a);
    let status = ObstructionStatus::classify(&k_a)?;
    Ok(match Conn::of(&status).level() {
        Ok(n) => edge_level(
            c,
            Hypothesis::holds_with(format!("K_A certified for {}", level_text(n))),
            Conclusion::fibers(n),
        ),
        Err(()) => edge_level(
            c,
            Hypothesis::fails_with(format!("K_A {}", describe(&status))),
            Conclusion::None,
        ),
    })
}

fn small_subsets(ctx: &Context<'_>, edges: &[&PComplementItem]) -> CriterionVerdict {
    let c = Criterion::CliqueSmallSubsets;
    let a: Vec<VertexId> = ctx.cover.a().iter().copied().collect();
    if a.is_empty() {
        return edge_level(c, Hypothesis::fails_with("A is empty"), Conclusion::None);
    }
    for e in edges {
        for (i, &u) in a.iter().enumerate() {
            for &w in &a[i..] {
                let s = e.simplex.with_vertex(u).with_vertex(w);
                if !ctx.k.contains(&s) {
                    return edge_level(
                        c,
                        Hypothesis::fails_with(format!("{} is not a simplex", ctx.names.s(&s))),
                        Conclusion::None,
                    );
                }
            }
        }
    }
    edge_level(c, Hypothesis::holds_plain(), Conclusion::WeakEquivalence)
}

fn singleton(ctx: &Context<'_>, edges: &[&PComplementItem]) -> CriterionVerdict {
    let c = Criterion::CliqueSingleton;
    let a = ctx.cover.a();
    if a.len() != 1 {
        return edge_level(
            c,
            Hypothesis::fails_with(format!("|A| = {}", a.len())),
            Conclusion::None,
        );
    }
    let v = *a.first().expect("one vertex");
    match edges
        .iter()
        .find(|e| !ctx.k.contains(&e.simplex.with_vertex(v)))
    {
        Some(e) => edge_level(
            c,
            Hypothesis::fails_with(format!(
                "{} ∪ {{{}}} is not a simplex",
                ctx.names.s(&e.simplex),
                ctx.names.v(v)
            )),
            Conclusion::None,
        ),
        None => edge_level(
            c,
            Hypothesis::holds_with(format!("A = {{{}}}", ctx.names.v(v))),
            Conclusion::WeakEquivalence,
        ),
    }
}

/// Vertices of `A` lying in every edge obstruction.
fn entry_candidates(ctx: &Context<'_>, edges: &[&PComplementItem]) -> BTreeSet<VertexId> {
    let mut out = ctx.cover.a().clone();
    for e in edges {
        let vs = e.obstruction.vertices();
        out.retain(|v| vs.contains(v));
    }
    out
}

fn first_entry(
    ctx: &Context<'_>,
    c: Criterion,
    edges: &[&PComplementItem],
    ok: impl Fn(VertexId) -> bool,
    what: &str,
) -> (CriterionVerdict, Option<VertexId>) {
    let candidates = entry_candidates(ctx, edges);
    if candidates.is_empty() {
        let w = if ctx.cover.a().is_empty() {
            "A is empty"
        } else {
            "edge obstructions have no common vertex"
        };
        return (
            edge_level(c, Hypothesis::fails_with(w), Conclusion::None),
            None,
        );
    }
    match candidates.iter().copied().find(|&v| ok(v)) {
        Some(v) => (
            edge_level(
                c,
                Hypothesis::holds_with(format!("entry point {}", ctx.names.v(v))),
                Conclusion::WeakEquivalence,
            ),
            Some(v),
        ),
        None => (
            edge_level(
                c,
                Hypothesis::fails_with(format!(
                    "no vertex of {} {what}",
                    ctx.names.set(&candidates)
                )),
                Conclusion::None,
            ),
            None,
        ),
    }
}

fn entry_adjacent(ctx: &Context<'_>, edges: &[&PComplementItem]) -> CriterionVerdict {
    let all: BTreeSet<VertexId> = edges
        .iter()
        .flat_map(|e| e.obstruction.vertices())
        .collect();
    first_entry(
        ctx,
        Criterion::CliqueEntryAdjacent,
        edges,
        |v| {
            all.iter()
                .all(|&w| w == v || ctx.k.contains(&Simplex::vertex(v).with_vertex(w)))
        },
        "is adjacent to every obstruction vertex",
    )
    .0
}

fn entry_central(ctx: &Context<'_>, edges: &[&PComplementItem]) -> CriterionVerdict {
    first_entry(
        ctx,
        Criterion::CliqueEntryCentral,
        edges,
        |v| edges.iter().all(|e| entry_ok(e, v)),
        "is central in every edge obstruction",
    )
    .0
}

fn entry_simplex(
    ctx: &Context<'_>,
    edges: &[&PComplementItem],
    discrepancies: &mut Vec<Discrepancy>,
) -> CriterionVerdict {
    let c = Criterion::CliqueEntrySimplex;
    // τ = {x, y} or {x, y, a} with a ∈ A; the latter are the vertices of St({x,y}, A).
    let extends = |v: VertexId| {
        edges.iter().all(|e| {
            ctx.k.contains(&e.simplex.with_vertex(v))
                && e.obstruction
                    .vertices()
                    .into_iter()
                    .all(|a| ctx.k.contains(&e.simplex.with_vertex(a).with_vertex(v)))
        })
    };
    let (verdict, v) = first_entry(ctx, c, edges, extends, "extends every {x,y} and {x,y,a}");
    if let Some(v) = v {
        for item in &ctx.items {
            let certified =
                matches!(&item.status, ObstructionStatus::ConeCertified(t) if t.contains(v));
            if !certified {
                discrepancies.push(Discrepancy {
                    kind: DiscrepancyKind::Invariant,
                    criterion: Some(c),
                    detail: format!(
                        "{} is not in the central simplex of St({},A)",
                        ctx.names.v(v),
                        ctx.names.s(&item.simplex)
                    ),
                });
            }
        }
    }
    verdict
}

fn two_entry_points(
    ctx: &Context<'_>,
    edges: &[&PComplementItem],
    discrepancies: &mut Vec<Discrepancy>,
) -> CriterionVerdict {
    let c = Criterion::TwoEntryPoints;
    let a = ctx.cover.a();
    if a.is_empty() {
        return edge_level(c, Hypothesis::fails_with("A is empty"), Conclusion::None);
    }
    // Each side's entry point must extend every edge from that side into A.
    let side_ok = |side: &BTreeSet<VertexId>, p: VertexId| {
        side.iter().all(|&x| {
            a.iter().all(|&b| {
                let e = Simplex::vertex(x).with_vertex(b);
                !ctx.k.contains(&e) || ctx.k.contains(&e.with_vertex(p))
            })
        })
    };
    let x_only = ctx.cover.x_only();
    let y_only = ctx.cover.y_only();
    let xs: Vec<VertexId> = a.iter().copied().filter(|&p| side_ok(&x_only, p)).collect();
    let ys: Vec<VertexId> = a.iter().copied().filter(|&p| side_ok(&y_only, p)).collect();
    let found = xs.iter().find_map(|&ax| {
        ys.iter().copied().find_map(|ay| {
            let pair = Simplex::vertex(ax).with_vertex(ay);
            edges
                .iter()
                .all(|e| ctx.k.contains(&e.simplex.union(&pair)))
                .then_some((ax, ay, pair))
        })
    });
    let Some((ax, ay, pair)) = found else {
        let w: String = if xs.is_empty() {
            "no vertex of A extends every edge from X\\A".into()
        } else if ys.is_empty() {
            "no vertex of A extends every edge from Y\\A".into()
        } else {
            "no admissible pair extends every cross edge".into()
        };
        return edge_level(c, Hypothesis::fails_with(w), Conclusion::None);
    };
    for item in &ctx.items {
        let central = item.obstruction.contains(&pair)
            && is_central(&item.obstruction, &pair).unwrap_or(false);
        if !central {
            discrepancies.push(Discrepancy {
                kind: DiscrepancyKind::Invariant,
                criterion: Some(c),
                detail: format!(
                    "{} is not central in St({},A)",
                    ctx.names.s(&pair),
                    ctx.names.s(&item.simplex)
                ),
            });
        }
    }
    edge_level(
        c,
        Hypothesis::holds_with(format!(
            "a_X = {}, a_Y = {}",
            ctx.names.v(ax),
            ctx.names.v(ay)
        )),
        Conclusion::WeakEquivalence,
    )
}
