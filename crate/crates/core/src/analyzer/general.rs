//! Criteria that apply to any simplicial complex.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{
    is_central, restriction, ObstructionStatus, PComplementItem, Simplex, VertexId,
};
use crate::homology::HomologyError;

use super::{Conclusion, Conn, Context, Criterion, CriterionVerdict, Hypothesis, Scope};

pub(super) fn evaluate(ctx: &Context<'_>) -> Result<Vec<CriterionVerdict>, HomologyError> {
    Ok(vec![
        contractible(ctx),
        connected(ctx),
        torsion(ctx),
        acyclic(ctx),
        skeletal(ctx),
        edge_intersection(ctx),
        constant(ctx),
        intersection(ctx)?,
        full_join(ctx),
        singleton(ctx),
        one_entry(ctx),
    ])
}

pub(crate) fn min_level(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

pub(crate) fn level_text(n: Option<usize>) -> String {
    match n {
        None => "every n".into(),
        Some(n) => format!("n = {n}"),
    }
}

pub(crate) fn describe(status: &ObstructionStatus) -> String {
    match status {
        ObstructionStatus::Empty => "is empty".into(),
        ObstructionStatus::ConeCertified(_) => "is a cone".into(),
        ObstructionStatus::CollapseCertified(_) => "collapses to a point".into(),
        ObstructionStatus::HomologyOnly(None) => {
            "has no certificate and uncomputable homology".into()
        }
        ObstructionStatus::HomologyOnly(Some(p)) => format!("has no certificate; {p}"),
    }
}

/// Largest `n` such that `ok` holds on every examined simplex of dimension
/// at most `n + 1`, combined with the connectivity `level` of the
/// obstructions and the examined range. `Err` carries the failing edge.
pub(crate) fn skeletal_bound<'a>(
    ctx: &'a Context<'_>,
    level: Option<usize>,
    mut ok: impl FnMut(&PComplementItem) -> bool,
) -> Result<Option<usize>, &'a PComplementItem> {
    let mut bad: Option<&PComplementItem> = None;
    for item in &ctx.items {
        if bad.is_some_and(|b| b.simplex.dim() <= item.simplex.dim()) {
            continue;
        }
        if !ok(item) {
            bad = Some(item);
        }
    }
    let from_bad = match bad {
        Some(b) if b.simplex.dim() == 1 => return Err(b),
        Some(b) => Some(b.simplex.dim() - 2),
        None => None,
    };
    Ok(ctx.cap(min_level(level, from_bad)))
}

fn verdict_from_bound(
    ctx: &Context<'_>,
    criterion: Criterion,
    bound: Result<Option<usize>, &PComplementItem>,
    fail: impl FnOnce(&PComplementItem) -> String,
    holds: impl FnOnce(Option<usize>) -> String,
) -> CriterionVerdict {
    match bound {
        Ok(n) => CriterionVerdict::new(
            criterion,
            Hypothesis::holds_with(holds(n)),
            Conclusion::fibers(n),
            ctx.scope(),
        ),
        Err(item) => CriterionVerdict::new(
            criterion,
            Hypothesis::fails_with(fail(item)),
            Conclusion::None,
            ctx.scope(),
        ),
    }
}

fn contractible(ctx: &Context<'_>) -> CriterionVerdict {
    let h = match ctx
        .items
        .iter()
        .find(|i| Conn::of(&i.status) != Conn::Contractible)
    {
        Some(i) => Hypothesis::fails_with(format!(
            "St({},A) {}",
            ctx.names.s(&i.simplex),
            describe(&i.status)
        )),
        None => Hypothesis::holds_with(format!("{} obstructions certified", ctx.items.len())),
    };
    CriterionVerdict::new(
        Criterion::ContractibleObstructions,
        h,
        Conclusion::fibers(ctx.cap(None)),
        ctx.scope(),
    )
}

fn connected(ctx: &Context<'_>) -> CriterionVerdict {
    let mut n = None;
    for i in &ctx.items {
        match Conn::of(&i.status).level() {
            Ok(l) => n = min_level(n, l),
            Err(()) => {
                return CriterionVerdict::new(
                    Criterion::ConnectedObstructions,
                    Hypothesis::fails_with(format!(
                        "St({},A) {}",
                        ctx.names.s(&i.simplex),
                        describe(&i.status)
                    )),
                    Conclusion::None,
                    ctx.scope(),
                )
            }
        }
    }
    let n = ctx.cap(n);
    CriterionVerdict::new(
        Criterion::ConnectedObstructions,
        Hypothesis::holds_with(format!("certified for {}", level_text(n))),
        Conclusion::fibers(n),
        ctx.scope(),
    )
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..)
        .take_while(|p| p * p <= q)
        .find(|p| q.is_multiple_of(*p))
        .unwrap_or(q)
}

fn torsion(ctx: &Context<'_>) -> CriterionVerdict {
    let c = Criterion::TorsionObstructions;
    let scope = ctx.scope();
    if !ctx.complete {
        return CriterionVerdict::new(
            c,
            Hypothesis::not_applicable("cross simplices above the dimension cap were not examined"),
            Conclusion::None,
            scope,
        );
    }
    let fail =
        |w: String| CriterionVerdict::new(c, Hypothesis::fails_with(w), Conclusion::None, scope);
    let mut primes = BTreeSet::new();
    for i in &ctx.items {
        let name = ctx.names.s(&i.simplex);
        match &i.status {
            ObstructionStatus::ConeCertified(_) | ObstructionStatus::CollapseCertified(_) => {}
            ObstructionStatus::Empty | ObstructionStatus::HomologyOnly(None) => {
                return fail(format!("St({name},A) {}", describe(&i.status)))
            }
            ObstructionStatus::HomologyOnly(Some(p)) => {
                if p.minus_one != 0 || !p.group(0).is_zero() {
                    return fail(format!("St({name},A) is disconnected"));
                }
                for (d, g) in p.groups.iter().enumerate() {
                    if g.rank != 0 {
                        return fail(format!("H~_{d}(St({name},A)) has a free summand"));
                    }
                    primes.extend(g.torsion.iter().map(|&q| smallest_prime_factor(q)));
                }
            }
        }
    }
    match primes.len() {
        0 => CriterionVerdict::new(
            c,
            Hypothesis::not_applicable("no obstruction has torsion; see acyclic-obstructions"),
            Conclusion::None,
            scope,
        ),
        1 => {
            let p = *primes.first().expect("one prime");
            CriterionVerdict::new(
                c,
                Hypothesis::holds_with(format!("all reduced homology is {p}-torsion")),
                Conclusion::ModPrimeIsomorphism { p, through: None },
                scope,
            )
        }
        _ => {
            let list: Vec<String> = primes.iter().map(|p| format!("{p}")).collect();
            fail(format!("torsion at several primes: {}", list.join(", ")))
        }
    }
}

fn acyclic(ctx: &Context<'_>) -> CriterionVerdict {
    let c = Criterion::AcyclicObstructions;
    if !ctx.complete {
        return CriterionVerdict::new(
            c,
            Hypothesis::not_applicable("cross simplices above the dimension cap were not examined"),
            Conclusion::None,
            ctx.scope(),
        );
    }
    let bad = ctx.items.iter().find(|i| match &i.status {
        ObstructionStatus::ConeCertified(_) | ObstructionStatus::CollapseCertified(_) => false,
        ObstructionStatus::HomologyOnly(Some(p)) => !p.is_trivial(),
        _ => true,
    });
    let h = match bad {
        Some(i) => Hypothesis::fails_with(format!(
            "St({},A) {}",
            ctx.names.s(&i.simplex),
            describe(&i.status)
        )),
        None => Hypothesis::holds_plain(),
    };
    CriterionVerdict::new(c, h, Conclusion::HomologyIsomorphism, ctx.scope())
}

fn skeletal(ctx: &Context<'_>) -> CriterionVerdict {
    // Homology certifies at most 0-connectivity, so n ≥ 1 needs certificates
    // on the whole (n+1)-skeleton.
    let bound = skeletal_bound(ctx, None, |i| {
        let conn = Conn::of(&i.status);
        conn == Conn::Contractible || (i.simplex.dim() == 1 && conn == Conn::Connected)
    });
    let scope = match bound {
        Ok(Some(n)) => Scope::UpToDimension(n + 1),
        _ => ctx.scope(),
    };
    let mut v = verdict_from_bound(
        ctx,
        Criterion::SkeletalConnectivity,
        bound,
        |i| format!("St({},A) {}", ctx.names.s(&i.simplex), describe(&i.status)),
        |n| {
            format!(
                "obstructions on the skeleton certified for {}",
                level_text(n)
            )
        },
    );
    v.scope = if ctx.complete && matches!(v.conclusion, Conclusion::WeakEquivalence) {
        Scope::Complete
    } else {
        scope
    };
    v
}

fn edge_intersection(ctx: &Context<'_>) -> CriterionVerdict {
    let mut common: Option<BTreeSet<VertexId>> = None;
    for e in ctx.edges() {
        let vs = e.obstruction.vertices();
        common = Some(match common {
            None => vs,
            Some(c) => c.intersection(&vs).copied().collect(),
        });
    }
    let h = match common {
        None => Hypothesis::holds_with("no cross edges"),
        Some(c) => match c.first() {
            Some(&v) => Hypothesis::holds_with(format!("common vertex {}", ctx.names.v(v))),
            None => Hypothesis::fails_with("edge obstructions have no common vertex"),
        },
    };
    CriterionVerdict::new(
        Criterion::EdgeIntersection,
        h,
        Conclusion::ConnectedFibers { n: 0 },
        Scope::Complete,
    )
}

fn no_cross_simplices(ctx: &Context<'_>, c: Criterion) -> CriterionVerdict {
    CriterionVerdict::new(
        c,
        Hypothesis::holds_with("no cross simplices"),
        Conclusion::WeakEquivalence,
        ctx.scope(),
    )
}

fn constant(ctx: &Context<'_>) -> CriterionVerdict {
    let c = Criterion::ConstantObstruction;
    let Some(first) = ctx.edges().next() else {
        return no_cross_simplices(ctx, c);
    };
    let l = &first.obstruction;
    let Ok(level) = Conn::of(&first.status).level() else {
        return CriterionVerdict::new(
            c,
            Hypothesis::fails_with(format!(
                "L = St({},A) {}",
                ctx.names.s(&first.simplex),
                describe(&first.status)
            )),
            Conclusion::None,
            ctx.scope(),
        );
    };
    let lv = ctx.names.set(&l.vertices());
    verdict_from_bound(
        ctx,
        c,
        skeletal_bound(ctx, level, |i| i.obstruction.same_simplices(l)),
        |i| format!("St({},A) differs from L on {lv}", ctx.names.s(&i.simplex)),
        |n| format!("L on {lv}, {}", level_text(n)),
    )
}

fn intersection(ctx: &Context<'_>) -> Result<CriterionVerdict, HomologyError> {
    let c = Criterion::IntersectionObstruction;
    if ctx.items.is_empty() {
        return Ok(no_cross_simplices(ctx, c));
    }
    let k_a = restriction(ctx.k, ctx.cover.a());
    let Ok(level) = Conn::of_complex(&k_a)?.level() else {
        return Ok(CriterionVerdict::new(
            c,
            Hypothesis::fails_with(format!(
                "K_A {}",
                describe(&ObstructionStatus::classify(&k_a)?)
            )),
            Conclusion::None,
            ctx.scope(),
        ));
    };
    Ok(verdict_from_bound(
        ctx,
        c,
        skeletal_bound(ctx, level, |i| i.obstruction.same_simplices(&k_a)),
        |i| format!("St({},A) is not K_A", ctx.names.s(&i.simplex)),
        |n| format!("K_A certified for {}", level_text(n)),
    ))
}

fn a_simplex(ctx: &Context<'_>) -> Option<Simplex> {
    Simplex::new(ctx.cover.a().iter().copied().collect()).ok()
}

fn full_join(ctx: &Context<'_>) -> CriterionVerdict {
    let c = Criterion::FullIntersectionJoin;
    let Some(a) = a_simplex(ctx) else {
        return CriterionVerdict::new(
            c,
            Hypothesis::fails_with("A is empty"),
            Conclusion::None,
            ctx.scope(),
        );
    };
    verdict_from_bound(
        ctx,
        c,
        skeletal_bound(ctx, None, |i| ctx.k.contains(&i.simplex.union(&a))),
        |i| format!("{} ∪ A is not a simplex", ctx.names.s(&i.simplex)),
        level_text,
    )
}

fn singleton(ctx: &Context<'_>) -> CriterionVerdict {
    let c = Criterion::SingletonIntersection;
    let a = ctx.cover.a();
    if a.len() != 1 {
        return CriterionVerdict::new(
            c,
            Hypothesis::fails_with(format!("|A| = {}", a.len())),
            Conclusion::None,
            ctx.scope(),
        );
    }
    let v = *a.first().expect("one vertex");
    verdict_from_bound(
        ctx,
        c,
        skeletal_bound(ctx, None, |i| ctx.k.contains(&i.simplex.with_vertex(v))),
        |i| {
            format!(
                "{} ∪ {{{}}} is not a simplex",
                ctx.names.s(&i.simplex),
                ctx.names.v(v)
            )
        },
        |n| format!("A = {{{}}}, {}", ctx.names.v(v), level_text(n)),
    )
}

/// `v` is a vertex of `St(σ, A)` and central in it.
pub(crate) fn entry_ok(item: &PComplementItem, v: VertexId) -> bool {
    let s = Simplex::vertex(v);
    item.obstruction.contains(&s) && is_central(&item.obstruction, &s).unwrap_or(false)
}

fn one_entry(ctx: &Context<'_>) -> CriterionVerdict {
    let c = Criterion::OneEntryPoint;
    let mut best: Option<(VertexId, Option<usize>)> = None;
    let mut first_failure: Option<(VertexId, &PComplementItem)> = None;
    for &v in ctx.cover.a() {
        match skeletal_bound(ctx, None, |i| entry_ok(i, v)) {
            Ok(n) => {
                let better = match best {
                    None => true,
                    Some((_, m)) => match (n, m) {
                        (None, Some(_)) => true,
                        (Some(n), Some(m)) => n > m,
                        _ => false,
                    },
                };
                if better {
                    best = Some((v, n));
                }
            }
            Err(item) => {
                first_failure.get_or_insert((v, item));
            }
        }
    }
    match best {
        Some((v, n)) => CriterionVerdict::new(
            c,
            Hypothesis::holds_with(format!("entry point {}, {}", ctx.names.v(v), level_text(n))),
            Conclusion::fibers(n),
            ctx.scope(),
        ),
        None => {
            let w = match first_failure {
                Some((v, i)) => format!(
                    "e.g. {} is not central in St({},A)",
                    ctx.names.v(v),
                    ctx.names.s(&i.simplex)
                ),
                None => "A is empty".into(),
            };
            CriterionVerdict::new(c, Hypothesis::fails_with(w), Conclusion::None, ctx.scope())
        }
    }
}
