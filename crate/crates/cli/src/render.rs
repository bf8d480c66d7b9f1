//! Plain-text renderings. JSON output is the serde form of the same values.

use std::fmt::Write;

use pushout_core::analyzer::{DecompositionReport, Hypothesis, Scope};
use pushout_core::complex::{ObstructionStatus, Simplex, VertexId};
use pushout_core::homology::{Coefficients, HomologyProfile};

pub struct Names<'a>(pub &'a [String]);

impl Names<'_> {
    pub fn v(&self, v: VertexId) -> &str {
        self.0.get(v as usize).map_or("?", String::as_str)
    }

    pub fn set(&self, vs: &[VertexId]) -> String {
        let parts: Vec<&str> = vs.iter().map(|&v| self.v(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn simplex(&self, s: &Simplex) -> String {
        self.set(s.vertices())
    }
}

pub fn status_word(h: &Hypothesis) -> &'static str {
    match h {
        Hypothesis::Holds { .. } => "HOLDS",
        Hypothesis::Fails { .. } => "FAILS",
        Hypothesis::NotApplicable { .. } => "N/A",
    }
}

fn scope_text(s: Scope) -> String {
    match s {
        Scope::Complete => "complete".into(),
        Scope::UpToDimension(d) => format!("verified up to dimension {d}"),
    }
}

fn status_text(s: &ObstructionStatus) -> String {
    match s {
        ObstructionStatus::Empty => "empty".into(),
        ObstructionStatus::ConeCertified(_) => "cone".into(),
        ObstructionStatus::CollapseCertified(c) => format!("collapsible ({} steps)", c.len()),
        ObstructionStatus::HomologyOnly(None) => "uncertified".into(),
        ObstructionStatus::HomologyOnly(Some(p)) => format!("uncertified, {p}"),
    }
}

/// Betti numbers over a field, groups over the integers.
pub fn betti_line(p: &HomologyProfile) -> String {
    let ranks: Vec<String> = match p.coefficients {
        Coefficients::Integers => p.groups.iter().map(|g| g.to_string()).collect(),
        Coefficients::Field(_) => p.ranks().iter().map(|r| r.to_string()).collect(),
    };
    format!("({})", ranks.join(", "))
}

pub fn report(r: &DecompositionReport) -> String {
    let fallback: Vec<String>;
    let labels = match &r.cover.labels {
        Some(l) => l.as_slice(),
        None => {
            let n = r
                .cover
                .x
                .iter()
                .chain(&r.cover.y)
                .max()
                .map_or(0, |&m| m as usize + 1);
            fallback = (0..n).map(|i| i.to_string()).collect();
            &fallback
        }
    };
    let n = Names(labels);
    let mut s = String::new();
    let c = &r.cover;
    let _ = writeln!(s, "cover");
    let _ = writeln!(s, "  X = {}", n.set(&c.x));
    let _ = writeln!(s, "  Y = {}", n.set(&c.y));
    let _ = writeln!(s, "  A = {}", n.set(&c.a));
    if let Some(radius) = &c.radius {
        let _ = writeln!(s, "  r = {radius}");
    }

    let census = &r.census;
    let counts: Vec<String> = census
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(d, k)| format!("dim {d}: {k}"))
        .collect();
    let _ = writeln!(
        s,
        "cross simplices ({}): {}",
        scope_text(census.scope),
        if counts.is_empty() {
            "none".into()
        } else {
            counts.join(", ")
        }
    );
    for o in &census.obstructions {
        let _ = writeln!(
            s,
            "  St({},A) on {}: {}",
            n.simplex(&o.simplex),
            n.set(&o.vertices),
            status_text(&o.status)
        );
    }

    let _ = writeln!(s, "verdicts");
    for v in &r.verdicts {
        let detail = match &v.hypothesis {
            Hypothesis::Holds { witness } => witness.clone().unwrap_or_default(),
            Hypothesis::Fails { witness } => witness.clone(),
            Hypothesis::NotApplicable { reason } => reason.clone(),
        };
        let _ = writeln!(
            s,
            "  {:<5} {:<32} {}",
            status_word(&v.hypothesis),
            v.criterion.id(),
            detail
        );
        if v.hypothesis.holds() {
            let _ = writeln!(
                s,
                "        ⇒ {} [{}]",
                v.conclusion.statement(),
                scope_text(v.scope)
            );
            let _ = writeln!(s, "        checked: {}", v.conclusion.shadow());
        }
    }

    if let Some(ver) = &r.verification {
        let _ = writeln!(s, "verification (degrees 0..={})", ver.max_degree);
        for p in &ver.profiles {
            let _ = writeln!(
                s,
                "  {:<4} {:<4} reduced {}",
                p.name,
                p.profile.coefficients.to_string(),
                betti_line(&p.profile)
            );
        }
        for m in &ver.maps {
            let kind = match (m.rank == m.source_dim, m.rank == m.target_dim) {
                (true, true) => "iso",
                (true, false) => "injective",
                (false, true) => "surjective",
                (false, false) => "neither",
            };
            let _ = writeln!(
                s,
                "  H_{}(U;{}) → H_{}(K;{}): {} → {}, rank {} ({kind})",
                m.degree, m.field, m.degree, m.field, m.source_dim, m.target_dim, m.rank
            );
        }
    }
    if r.discrepancies.is_empty() {
        let _ = writeln!(s, "discrepancies: none");
    } else {
        let _ = writeln!(s, "discrepancies");
        for d in &r.discrepancies {
            let who = d.criterion.map_or_else(String::new, |c| format!("{c}: "));
            let _ = writeln!(s, "  {:?} {who}{}", d.kind, d.detail);
        }
    }
    s
}
