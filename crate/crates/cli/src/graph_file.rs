//! Plain-text graph files.
//!
//! ```text
//! # triangle with a pendant edge
//! vertices 4
//! edge 1 0 1 1/3
//! edge 3 1 2 0.25
//! edge 5 2 0
//! edge 7 2 3
//! ```
//!
//! Edges are listed in processing order. The optional last field is a
//! weight literal, either a decimal (`-1.5e-2`) or a fraction (`2/7`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use ordtutte::graph::MAX_EDGE_ID;
use ordtutte::{EdgeId, EdgeOrdering, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub graph: Multigraph,
    pub ordering: EdgeOrdering,
    /// `None` where the file leaves the weight symbolic.
    pub lambdas: BTreeMap<EdgeId, Option<BigRational>>,
}

impl GraphFile {
    /// Every weight, or the first edge that has none.
    pub fn numeric_lambdas(&self) -> Result<BTreeMap<EdgeId, BigRational>, EdgeId> {
        self.lambdas
            .iter()
            .map(|(&id, l)| l.clone().map(|v| (id, v)).ok_or(id))
            .collect()
    }
}

/// Exact value of a decimal or fractional literal.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let bad = || format!("invalid number `{text}`");
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (sign, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (-1, &mantissa[1..]),
        Some(b'+') => (1, &mantissa[1..]),
        _ => (1, mantissa),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let all = format!("{int}{frac}");
    if all.is_empty() || !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(value * BigRational::from_integer(BigInt::from(sign)))
}

fn field<T: FromStr>(line: usize, what: &str, text: Option<&str>) -> Result<T, ParseError> {
    let text = text.ok_or_else(|| ParseError { line, message: format!("missing {what}") })?;
    text.parse().map_err(|_| ParseError {
        line,
        message: format!("bad {what} `{text}`"),
    })
}

impl FromStr for GraphFile {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut vertices: Option<usize> = None;
        let mut edges = Vec::new();
        let mut lambdas = BTreeMap::new();
        let mut seen = BTreeSet::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| ParseError { line, message };
            let mut words = content.split_whitespace();
            let keyword = words.next().unwrap_or_default();
            match (keyword, vertices) {
                ("vertices", None) => {
                    vertices = Some(field(line, "vertex count", words.next())?);
                }
                ("vertices", Some(_)) => return Err(err("duplicate `vertices` line".into())),
                (_, None) => return Err(err("expected `vertices <m>` first".into())),
                ("edge", Some(m)) => {
                    let id: EdgeId = field(line, "edge id", words.next())?;
                    let u: usize = field(line, "endpoint", words.next())?;
                    let v: usize = field(line, "endpoint", words.next())?;
                    let lambda = words.next().map(parse_rational).transpose().map_err(err)?;
                    if id == 0 || id > MAX_EDGE_ID {
                        return Err(err(format!("edge id {id} outside 1..={MAX_EDGE_ID}")));
                    }
                    if !seen.insert(id) {
                        return Err(err(format!("duplicate edge id {id}")));
                    }
                    if u >= m || v >= m {
                        return Err(err(format!("endpoint out of range for {m} vertices")));
                    }
                    edges.push((id, u, v));
                    lambdas.insert(id, lambda);
                }
                ("order", Some(_)) => {
                    return Err(err(
                        "`order` is not supported: edges are processed in the order listed".into(),
                    ))
                }
                (other, Some(_)) => return Err(err(format!("unknown directive `{other}`"))),
            }
            if words.next().is_some() {
                return Err(err("trailing fields".into()));
            }
        }
        let m = vertices.ok_or(ParseError {
            line: last_line.max(1),
            message: "missing `vertices <m>`".into(),
        })?;
        let ordering = EdgeOrdering::new(edges.iter().map(|e| e.0).collect()).map_err(|e| ParseError {
            line: last_line,
            message: e.to_string(),
        })?;
        let graph = Multigraph::new(m, edges).map_err(|e| ParseError {
            line: last_line,
            message: e.to_string(),
        })?;
        Ok(GraphFile { graph, ordering, lambdas })
    }
}

/// Inverse of parsing, for files built programmatically.
pub fn render(file: &GraphFile) -> String {
    let mut out = format!("vertices {}\n", file.graph.vertex_count());
    for &id in file.ordering.ids() {
        let e = file.graph.edge(id).expect("ordering covers the graph");
        out.push_str(&format!("edge {} {} {}", id, e.u, e.v));
        if let Some(Some(l)) = file.lambdas.get(&id) {
            if l.denom().is_one() {
                out.push_str(&format!(" {}", l.numer()));
            } else {
                out.push_str(&format!(" {}/{}", l.numer(), l.denom()));
            }
        }
        out.push('\n');
    }
    out
}
