use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Complex, ComplexError, ExplicitComplex, FlagComplex, Simplex, VertexSet};

fn min_truncation(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x),
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn require_simplex(k: &Complex, sigma: &Simplex) -> Result<(), ComplexError> {
    if k.contains(sigma) {
        Ok(())
    } else {
        Err(ComplexError::NotASimplex(sigma.clone()))
    }
}

/// `K_S`: the simplices of `k` contained in `s`.
pub fn restriction(k: &Complex, s: &VertexSet) -> Complex {
    match k {
        Complex::Flag(f) => Complex::Flag(f.restricted(s)),
        Complex::Explicit(e) => Complex::Explicit(ExplicitComplex::from_closed(
            e.simplices
                .iter()
                .filter(|x| x.is_within(s))
                .cloned()
                .collect(),
            e.truncated_above,
        )),
    }
}

/// `St(σ) = { μ ∈ K : σ ∪ μ ∈ K }`.
pub fn star(k: &Complex, sigma: &Simplex) -> Result<Complex, ComplexError> {
    require_simplex(k, sigma)?;
    Ok(match k {
        Complex::Flag(f) => {
            let mut keep = f.common_neighbors(sigma);
            keep.extend(sigma.vertices().iter().copied());
            Complex::Flag(f.restricted(&keep))
        }
        Complex::Explicit(e) => Complex::Explicit(ExplicitComplex::from_closed(
            e.simplices
                .iter()
                .filter(|mu| e.simplices.contains(&mu.union(sigma)))
                .cloned()
                .collect(),
            e.truncated_above.map(|c| c.saturating_sub(sigma.len())),
        )),
    })
}

/// Obstruction complex `St(σ, A) = { μ ⊆ A : μ ∪ σ ∈ K }`; may be empty.
pub fn obstruction(k: &Complex, sigma: &Simplex, a: &VertexSet) -> Result<Complex, ComplexError> {
    require_simplex(k, sigma)?;
    Ok(match k {
        Complex::Flag(f) => {
            let mut keep: VertexSet = f.common_neighbors(sigma).intersection(a).copied().collect();
            keep.extend(sigma.vertices().iter().copied().filter(|v| a.contains(v)));
            Complex::Flag(f.restricted(&keep))
        }
        Complex::Explicit(e) => Complex::Explicit(ExplicitComplex::from_closed(
            e.simplices
                .iter()
                .filter(|mu| mu.is_within(a) && e.simplices.contains(&mu.union(sigma)))
                .cloned()
                .collect(),
            e.truncated_above.map(|c| c.saturating_sub(sigma.len())),
        )),
    })
}

/// Whether `σ ∪ τ ∈ K` for every `σ ∈ K`.
pub fn is_central(k: &Complex, tau: &Simplex) -> Result<bool, ComplexError> {
    require_simplex(k, tau)?;
    match k {
        Complex::Flag(f) => {
            let common = f.common_neighbors(tau);
            Ok(f.adjacency
                .keys()
                .all(|v| tau.contains(*v) || common.contains(v)))
        }
        Complex::Explicit(e) => {
            if let Some(limit) = e.truncated_above {
                return Err(ComplexError::EnumerationRefused {
                    requested: limit + 1,
                    limit,
                });
            }
            Ok(e.simplices
                .iter()
                .all(|s| e.simplices.contains(&s.union(tau))))
        }
    }
}

/// `sk_n K`: simplices of dimension at most `n`.
pub fn skeleton(k: &Complex, n: usize) -> Result<Complex, ComplexError> {
    let simplices: BTreeSet<_> = k.simplices_up_to(n)?.into_iter().collect();
    Ok(Complex::Explicit(ExplicitComplex::from_closed(
        simplices, None,
    )))
}

/// `K ∗ L` for complexes on disjoint vertex sets.
pub fn join(k: &Complex, l: &Complex) -> Result<Complex, ComplexError> {
    let kv = k.vertices();
    let lv = l.vertices();
    if let Some(&shared) = kv.intersection(&lv).next() {
        return Err(ComplexError::JoinOverlap(shared));
    }
    if let (Complex::Flag(a), Complex::Flag(b)) = (k, l) {
        let mut adjacency: BTreeMap<_, VertexSet> = BTreeMap::new();
        for (&v, n) in &a.adjacency {
            let mut n = n.clone();
            n.extend(lv.iter().copied());
            adjacency.insert(v, n);
        }
        for (&v, n) in &b.adjacency {
            let mut n = n.clone();
            n.extend(kv.iter().copied());
            adjacency.insert(v, n);
        }
        return Ok(Complex::Flag(FlagComplex::new(
            adjacency,
            a.dim_cap + b.dim_cap + 1,
        )));
    }
    let (ek, el) = (k.materialize(), l.materialize());
    let mut out: BTreeSet<Simplex> = ek.simplices.iter().cloned().collect();
    out.extend(el.simplices.iter().cloned());
    for s in &ek.simplices {
        for t in &el.simplices {
            out.insert(s.union(t));
        }
    }
    let truncated = match (ek.truncated_above, el.truncated_above) {
        (None, None) => None,
        (a, b) => min_truncation(a, b),
    };
    Ok(Complex::Explicit(ExplicitComplex::from_closed(
        out, truncated,
    )))
}

/// `K ∪ L`. The union of two flag complexes is generally not flag and is
/// materialised up to the caps.
pub fn union(k: &Complex, l: &Complex) -> Complex {
    let (ek, el) = (k.materialize(), l.materialize());
    let mut out = ek.simplices.clone();
    out.extend(el.simplices.iter().cloned());
    Complex::Explicit(ExplicitComplex::from_closed(
        out,
        min_truncation(ek.truncated_above, el.truncated_above),
    ))
}

/// `K ∩ L`.
pub fn intersection(k: &Complex, l: &Complex) -> Complex {
    match (k, l) {
        (Complex::Flag(a), Complex::Flag(b)) => {
            let adjacency = a
                .adjacency
                .iter()
                .filter_map(|(v, n)| {
                    b.adjacency
                        .get(v)
                        .map(|m| (*v, n.intersection(m).copied().collect()))
                })
                .collect();
            Complex::Flag(FlagComplex::new(adjacency, a.dim_cap.min(b.dim_cap)))
        }
        (Complex::Explicit(e), other) | (other, Complex::Explicit(e)) => {
            let filtered: BTreeSet<_> = e
                .simplices
                .iter()
                .filter(|s| other.contains(s))
                .cloned()
                .collect();
            let trunc = match other {
                Complex::Explicit(o) => min_truncation(e.truncated_above, o.truncated_above),
                Complex::Flag(_) => e.truncated_above,
            };
            Complex::Explicit(ExplicitComplex::from_closed(filtered, trunc))
        }
    }
}

/// Checks `l ⊆ k` on every simplex `l` can enumerate.
pub fn is_subcomplex(l: &Complex, k: &Complex) -> Result<(), ComplexError> {
    let simplices: Vec<Simplex> = match l {
        Complex::Flag(f) if k.is_flag() => {
            // Flag inside flag is decided by the 1-skeleton.
            f.cliques_within(&f.vertex_set(), 2)
        }
        _ => l.materialize().simplices.into_iter().collect(),
    };
    match simplices.into_iter().find(|s| !k.contains(s)) {
        Some(s) => Err(ComplexError::NotASubcomplex(s)),
        None => Ok(()),
    }
}
