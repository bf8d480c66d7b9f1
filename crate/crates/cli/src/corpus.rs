//! Worked examples with known answers, run as a regression harness.

use pushout_core::analyzer::{analyze_metric, AnalysisOptions, Criterion, DecompositionReport};
use pushout_core::complex::{ObstructionStatus, Simplex};
use pushout_core::homology::{Coefficients, Field, HomologyError};
use pushout_core::metric::{Distance, DistanceSpace, MetricCover};

use crate::input::{parse_csv, CoverSpec};

/// Reduced Betti numbers of one piece (`K_X`, `K_Y`, `K_A`, `U` or `K`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiExpectation {
    pub piece: &'static str,
    pub coefficients: Coefficients,
    pub betti: Vec<usize>,
}

/// Properties of `H_d(U; F) → H_d(K; F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapExpectation {
    pub field: Field,
    pub degree: usize,
    pub injective: Option<bool>,
    pub surjective: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectations {
    pub betti: Vec<BettiExpectation>,
    pub holds: Vec<Criterion>,
    pub fails: Vec<Criterion>,
    pub maps: Vec<MapExpectation>,
    /// Cross simplices (by label) whose obstruction is empty.
    pub empty_obstructions: Vec<Vec<&'static str>>,
    /// Every obstruction has a cone certificate.
    pub all_cones: bool,
}

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub name: &'static str,
    pub summary: &'static str,
    pub space: DistanceSpace,
    pub cover: CoverSpec,
    pub radius: Distance,
    pub max_dim: usize,
    pub expect: Expectations,
}

impl CorpusCase {
    pub fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            dim_cap: self.max_dim,
            coefficients: vec![
                Coefficients::RATIONALS,
                Coefficients::Field(Field::Prime(2)),
                Coefficients::Integers,
            ],
            verify: true,
        }
    }

    pub fn metric_cover(&self) -> MetricCover {
        let (x, y) = self
            .cover
            .resolve(self.space.labels())
            .expect("corpus covers name known points");
        let r = self.radius.as_rational().expect("finite radius").clone();
        MetricCover::new(self.space.clone(), x, y, r).expect("corpus cover is valid")
    }
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub name: &'static str,
    pub failures: Vec<String>,
    pub report: Option<DecompositionReport>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn cover(x: &[&str], y: &[&str]) -> CoverSpec {
    CoverSpec {
        x: x.iter().map(|s| s.to_string()).collect(),
        y: y.iter().map(|s| s.to_string()).collect(),
    }
}

fn q(piece: &'static str, betti: &[usize]) -> BettiExpectation {
    BettiExpectation {
        piece,
        coefficients: Coefficients::RATIONALS,
        betti: betti.to_vec(),
    }
}

fn map(degree: usize, injective: Option<bool>, surjective: Option<bool>) -> MapExpectation {
    MapExpectation {
        field: Field::Rationals,
        degree,
        injective,
        surjective,
    }
}

fn isos(degrees: std::ops::RangeInclusive<usize>) -> Vec<MapExpectation> {
    degrees.map(|d| map(d, Some(true), Some(true))).collect()
}

fn case(
    name: &'static str,
    summary: &'static str,
    csv: &str,
    cover: CoverSpec,
    radius: i64,
    expect: Expectations,
) -> CorpusCase {
    CorpusCase {
        name,
        summary,
        space: parse_csv(csv).expect("embedded table parses"),
        cover,
        radius: Distance::from_integer(radius),
        max_dim: 4,
        expect,
    }
}

pub fn cases() -> Vec<CorpusCase> {
    vec![
        case(
            "square-4pt",
            "square with one diagonal longer than r; the cover is not a weak equivalence",
            include_str!("../corpus/square-4pt.csv"),
            cover(&["x", "a", "b"], &["a", "b", "y"]),
            1,
            Expectations {
                betti: vec![q("U", &[0, 1]), q("K", &[0, 0])],
                holds: vec![Criterion::EdgeIntersection],
                fails: vec![Criterion::ContractibleObstructions],
                maps: vec![
                    map(0, Some(true), Some(true)),
                    map(1, Some(false), Some(true)),
                ],
                ..Expectations::default()
            },
        ),
        case(
            "six-pt-entry",
            "one cross edge whose obstruction is a cone",
            include_str!("../corpus/six-pt-entry.csv"),
            cover(
                &["x", "a1", "a2", "a3", "a4"],
                &["a1", "a2", "a3", "a4", "y"],
            ),
            1,
            Expectations {
                holds: vec![Criterion::ContractibleObstructions],
                maps: isos(0..=3),
                all_cones: true,
                ..Expectations::default()
            },
        ),
        case(
            "seven-pt-independence",
            "two cross edges with different obstructions",
            include_str!("../corpus/seven-pt-independence.csv"),
            cover(
                &["x1", "x2", "a1", "a2", "a3", "a4"],
                &["a1", "a2", "a3", "a4", "y"],
            ),
            1,
            Expectations {
                holds: vec![Criterion::ContractibleObstructions],
                fails: vec![Criterion::RipsConstantNeighbourhood],
                maps: isos(0..=3),
                all_cones: true,
                ..Expectations::default()
            },
        ),
        case(
            "five-pt-gluing",
            "metric gluing where the strong simplex assumption fails",
            include_str!("../corpus/five-pt-gluing.csv"),
            cover(&["x1", "x2", "a1", "a2"], &["a1", "a2", "y"]),
            3,
            Expectations {
                betti: vec![q("K_X", &[0, 1]), q("K", &[0, 0])],
                holds: vec![Criterion::SimplexCondition],
                fails: vec![Criterion::StrongSimplexCondition],
                maps: vec![
                    map(0, Some(true), Some(true)),
                    map(1, Some(false), Some(true)),
                ],
                empty_obstructions: vec![vec!["x1", "x2", "y"]],
                ..Expectations::default()
            },
        ),
        case(
            "eight-pt-s3",
            "metric gluing of two contractible pieces whose union is a 3-sphere",
            include_str!("../corpus/eight-pt-s3.csv"),
            cover(
                &["x1", "x2", "a11", "a12", "a21", "a22"],
                &["a11", "a12", "a21", "a22", "y1", "y2"],
            ),
            8,
            Expectations {
                betti: vec![q("U", &[0, 0, 0, 0, 0]), q("K", &[0, 0, 0, 1, 0])],
                holds: vec![Criterion::StrongSimplexCondition],
                maps: vec![
                    map(0, Some(true), Some(true)),
                    map(1, Some(true), Some(true)),
                    map(3, None, Some(false)),
                ],
                ..Expectations::default()
            },
        ),
        case(
            "nine-pt-circle",
            "nine equally spaced points on a circle",
            include_str!("../corpus/nine-pt-circle.csv"),
            cover(
                &["z1", "z2", "z4", "z5", "z7", "z8"],
                &["z1", "z3", "z4", "z6", "z7", "z9"],
            ),
            3,
            Expectations {
                betti: vec![
                    q("K", &[0, 0, 2, 0, 0]),
                    BettiExpectation {
                        piece: "K",
                        coefficients: Coefficients::Field(Field::Prime(2)),
                        betti: vec![0, 0, 2, 0, 0],
                    },
                ],
                holds: vec![Criterion::ContractibleObstructions],
                maps: isos(0..=4),
                all_cones: true,
                ..Expectations::default()
            },
        ),
    ]
}

pub fn find(name: &str) -> Option<CorpusCase> {
    cases().into_iter().find(|c| c.name == name)
}

fn check(case: &CorpusCase, r: &DecompositionReport) -> Vec<String> {
    let mut out = Vec::new();
    let e = &case.expect;
    let names = case.space.labels();
    let Some(v) = &r.verification else {
        return vec!["no verification block".into()];
    };
    for b in &e.betti {
        match v.profile(b.piece, b.coefficients) {
            None => out.push(format!(
                "no profile for {} over {}",
                b.piece, b.coefficients
            )),
            Some(p) => {
                let got: Vec<usize> = (0..b.betti.len()).map(|d| p.rank(d)).collect();
                if got != b.betti || p.minus_one != 0 {
                    out.push(format!(
                        "homology mismatch: {} over {} has reduced Betti {:?}, expected {:?}",
                        b.piece, b.coefficients, got, b.betti
                    ));
                }
            }
        }
    }
    for &c in &e.holds {
        if !r.verdict(c).is_some_and(|v| v.hypothesis.holds()) {
            out.push(format!("{c} was expected to hold"));
        }
    }
    for &c in &e.fails {
        if !r.verdict(c).is_some_and(|v| v.hypothesis.fails()) {
            out.push(format!("{c} was expected to fail"));
        }
    }
    for m in &e.maps {
        let Some(got) = v.map(m.field, m.degree) else {
            out.push(format!("no map in degree {} over {}", m.degree, m.field));
            continue;
        };
        let inj = got.rank == got.source_dim;
        let surj = got.rank == got.target_dim;
        if m.injective.is_some_and(|x| x != inj) || m.surjective.is_some_and(|x| x != surj) {
            out.push(format!(
                "homology mismatch: H_{}(U) → H_{}(K) over {} has rank {} ({} → {})",
                m.degree, m.degree, m.field, got.rank, got.source_dim, got.target_dim
            ));
        }
    }
    for labels in &e.empty_obstructions {
        let ids: Vec<u32> = labels
            .iter()
            .filter_map(|l| names.iter().position(|n| n == l).map(|i| i as u32))
            .collect();
        let sigma = Simplex::new(ids).expect("nonempty");
        match r.census.obstructions.iter().find(|o| o.simplex == sigma) {
            Some(o) if o.status == ObstructionStatus::Empty => {}
            Some(_) => out.push(format!("St({},A) is not empty", labels.join(","))),
            None => out.push(format!("{} is not a cross simplex", labels.join(","))),
        }
    }
    if e.all_cones {
        for o in &r.census.obstructions {
            if !matches!(o.status, ObstructionStatus::ConeCertified(_)) {
                out.push(format!(
                    "obstruction of {:?} is not cone-certified",
                    o.simplex
                ));
            }
        }
    }
    for d in &r.discrepancies {
        out.push(format!("discrepancy: {}", d.detail));
    }
    out
}

pub fn run_case(case: &CorpusCase) -> CaseOutcome {
    let result: Result<DecompositionReport, HomologyError> =
        analyze_metric(&case.metric_cover(), &case.options());
    match result {
        Ok(report) => CaseOutcome {
            name: case.name,
            failures: check(case, &report),
            report: Some(report),
        },
        Err(e) => CaseOutcome {
            name: case.name,
            failures: vec![format!("analysis failed: {e}")],
            report: None,
        },
    }
}

pub fn run_all() -> Vec<CaseOutcome> {
    cases().iter().map(run_case).collect()
}
