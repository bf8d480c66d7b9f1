//! Input documents: distance matrices (JSON or lower-triangular CSV), facet
//! lists and covers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use pushout_core::complex::{Complex, Cover, VertexId, VertexSet};
use pushout_core::metric::{Distance, DistanceSpace};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

/// Either a finite metric-like space or an explicit complex.
#[derive(Debug, Clone)]
pub enum Input {
    Distances(DistanceSpace),
    Facets {
        complex: Complex,
        labels: Vec<String>,
    },
}

/// Parsed input plus whatever optional settings it carried.
#[derive(Debug, Clone)]
pub struct InputDocument {
    pub input: Input,
    pub cover: Option<CoverSpec>,
    pub radius: Option<Distance>,
}

impl Input {
    pub fn labels(&self) -> &[String] {
        match self {
            Input::Distances(s) => s.labels(),
            Input::Facets { labels, .. } => labels,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct CoverSpec {
    #[serde(rename = "X", deserialize_with = "labels")]
    pub x: Vec<String>,
    #[serde(rename = "Y", deserialize_with = "labels")]
    pub y: Vec<String>,
}

fn label_of(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(format!("expected a point label, found {other}")),
    }
}

fn labels<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    let raw = Vec::<Value>::deserialize(d)?;
    raw.iter()
        .map(label_of)
        .collect::<Result<_, _>>()
        .map_err(serde::de::Error::custom)
}

impl CoverSpec {
    /// Resolves labels against `names` (indexed by vertex id).
    pub fn resolve(&self, names: &[String]) -> Result<(VertexSet, VertexSet), InputError> {
        let index: BTreeMap<&str, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as VertexId))
            .collect();
        let ids = |side: &str, ls: &[String]| -> Result<VertexSet, InputError> {
            ls.iter()
                .map(|l| match index.get(l.as_str()) {
                    Some(&v) => Ok(v),
                    None => err(format!("cover {side} names unknown point {l:?}")),
                })
                .collect()
        };
        Ok((ids("X", &self.x)?, ids("Y", &self.y)?))
    }

    pub fn cover_for(&self, k: &Complex, names: &[String]) -> Result<Cover, InputError> {
        let (x, y) = self.resolve(names)?;
        Cover::new(k, x, y).map_err(|e| InputError(e.to_string()))
    }
}

pub fn parse_distance(v: &Value) -> Result<Distance, InputError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => "inf".into(),
        other => return err(format!("expected a distance, found {other}")),
    };
    text.parse::<Distance>()
        .map_err(|e| InputError(e.to_string()))
}

pub fn parse_cover(text: &str) -> Result<CoverSpec, InputError> {
    serde_json::from_str(text).map_err(|e| InputError(format!("cover: {e}")))
}

/// Lower-triangular CSV: a header row of labels (optionally after an empty
/// corner cell), then one row per point starting with its label and giving
/// the distances to every earlier point, with or without the diagonal.
pub fn parse_csv(text: &str) -> Result<DistanceSpace, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for r in reader.records() {
        let r = r.map_err(|e| InputError(format!("csv: {e}")))?;
        if r.iter().all(str::is_empty) {
            continue;
        }
        rows.push(r.iter().map(str::to_string).collect::<Vec<_>>());
    }
    let Some((header, body)) = rows.split_first() else {
        return err("csv: empty input");
    };
    let labels: Vec<String> = match header.first() {
        Some(c) if c.is_empty() => header[1..].to_vec(),
        _ => header.clone(),
    };
    let n = labels.len();
    if body.len() != n {
        return err(format!("csv: {n} labels but {} rows", body.len()));
    }
    let mut d = vec![vec![Distance::zero(); n]; n];
    for (i, row) in body.iter().enumerate() {
        let (name, cells) = row.split_first().expect("nonempty row");
        if *name != labels[i] {
            return err(format!(
                "csv: row {} is labelled {name:?}, expected {:?}",
                i + 1,
                labels[i]
            ));
        }
        let cells: Vec<&String> = cells.iter().filter(|c| !c.is_empty()).collect();
        if cells.len() != i && cells.len() != i + 1 {
            return err(format!(
                "csv: row {name:?} has {} entries, expected {i}",
                cells.len()
            ));
        }
        for (j, cell) in cells.iter().enumerate() {
            let v: Distance = cell
                .parse()
                .map_err(|e| InputError(format!("csv: row {name:?}: {e}")))?;
            if j == i {
                if !v.is_zero() {
                    return err(format!("csv: nonzero diagonal entry for {name:?}"));
                }
                continue;
            }
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    DistanceSpace::new(labels, d).map_err(|e| InputError(e.to_string()))
}

#[derive(Deserialize)]
struct JsonDoc {
    points: Option<Vec<Value>>,
    distances: Option<Vec<Vec<Value>>>,
    facets: Option<Vec<Vec<Value>>>,
    cover: Option<CoverSpec>,
    radius: Option<Value>,
}

/// Labels in id order: numeric when every label is an integer, else lexicographic.
fn intern(facets: &[Vec<String>]) -> Vec<String> {
    let mut all: Vec<String> = facets.iter().flatten().cloned().collect();
    all.sort();
    all.dedup();
    if all.iter().all(|s| s.parse::<i64>().is_ok()) {
        all.sort_by_key(|s| s.parse::<i64>().expect("checked"));
    }
    all
}

pub fn parse_json(text: &str) -> Result<InputDocument, InputError> {
    let doc: JsonDoc = serde_json::from_str(text).map_err(|e| InputError(format!("json: {e}")))?;
    let radius = doc.radius.as_ref().map(parse_distance).transpose()?;
    let input = match (doc.distances, doc.facets) {
        (Some(_), Some(_)) => return err("give either \"distances\" or \"facets\", not both"),
        (None, None) => return err("input needs \"distances\" or \"facets\""),
        (Some(rows), None) => {
            let n = rows.len();
            let labels = match doc.points {
                Some(p) => p
                    .iter()
                    .map(label_of)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(InputError)?,
                None => (0..n).map(|i| i.to_string()).collect(),
            };
            let d = rows
                .iter()
                .map(|r| r.iter().map(parse_distance).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let space = DistanceSpace::new(labels, d).map_err(|e| InputError(e.to_string()))?;
            if let Err(v) = pushout_core::metric::validate(&space) {
                return err(format!(
                    "distance matrix is not symmetric with zero diagonal: {v:?}"
                ));
            }
            Input::Distances(space)
        }
        (None, Some(facets)) => {
            let facets: Vec<Vec<String>> = facets
                .iter()
                .map(|f| f.iter().map(label_of).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()
                .map_err(InputError)?;
            let labels = intern(&facets);
            let index: BTreeMap<&str, VertexId> = labels
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_str(), i as VertexId))
                .collect();
            let ids: Vec<Vec<VertexId>> = facets
                .iter()
                .map(|f| f.iter().map(|l| index[l.as_str()]).collect())
                .collect();
            let complex = Complex::from_facets(ids).map_err(|e| InputError(e.to_string()))?;
            Input::Facets { complex, labels }
        }
    };
    Ok(InputDocument {
        input,
        cover: doc.cover,
        radius,
    })
}

pub fn read_input(path: &Path) -> Result<InputDocument, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        Ok(InputDocument {
            input: Input::Distances(parse_csv(&text)?),
            cover: None,
            radius: None,
        })
    } else {
        parse_json(&text)
    }
}

pub fn read_cover(path: &Path) -> Result<CoverSpec, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_cover(&text)
}
