use std::collections::{BTreeMap, BTreeSet};

use crate::complex::ComplexIndex;
use crate::error::{HcbError, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::simplex::Simplex;

/// One insertion of a simplex-wise filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub simplex: Simplex,
    pub time: Rational,
}

/// A simplex-wise filtration `∅ = K_0 ↪ K_1 ↪ ⋯ ↪ K_m`.
///
/// Step `i` (0-based) inserts the simplex with global id `i`, producing the
/// prefix complex `K_{i+1}`. Construction validates that faces precede
/// cofaces, that no simplex repeats and that timestamps never decrease.
#[derive(Clone, Debug)]
pub struct Filtration {
    steps: Vec<FiltrationStep>,
    complex: ComplexIndex,
}

impl Filtration {
    pub fn new(steps: Vec<FiltrationStep>) -> Result<Self> {
        for w in steps.windows(2) {
            if w[1].time < w[0].time {
                return Err(HcbError::Invalid(format!(
                    "timestamps decrease: {} after {}",
                    format_rational(&w[1].time),
                    format_rational(&w[0].time)
                )));
            }
        }
        let complex =
            ComplexIndex::from_simplices(steps.iter().map(|s| s.simplex.clone()).collect())?;
        Ok(Filtration { steps, complex })
    }

    /// Number of insertions `m`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, i: usize) -> &FiltrationStep {
        &self.steps[i]
    }

    pub fn steps(&self) -> &[FiltrationStep] {
        &self.steps
    }

    pub fn complex(&self) -> &ComplexIndex {
        &self.complex
    }

    pub fn max_dim(&self) -> usize {
        self.complex.max_dim()
    }

    /// Completion timestamps τ(i) of the prefixes K_i, for i in 1..=m.
    pub fn timestamps(&self) -> TimestampMap {
        TimestampMap {
            times: self.steps.iter().map(|s| s.time.clone()).collect(),
        }
    }

    /// Parses the line format `<timestamp> <v0> <v1> ... <vk>`.
    ///
    /// `#` starts a comment; blank lines are skipped. The global simplex id
    /// is the order of appearance. Timestamps accept decimals or `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        let mut prev_time: Option<Rational> = None;
        let mut complex = ComplexIndex::from_simplices(Vec::new())?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            let time = parse_rational(fields.next().expect("nonempty line"))
                .map_err(|e| HcbError::parse(line, e))?;
            let mut vertices = Vec::new();
            for f in fields {
                let v: u32 = f
                    .parse()
                    .map_err(|_| HcbError::parse(line, format!("bad vertex `{f}`")))?;
                vertices.push(v);
            }
            if vertices.is_empty() {
                return Err(HcbError::parse(line, "no vertices on line"));
            }
            if !vertices.windows(2).all(|w| w[0] < w[1]) {
                return Err(HcbError::parse(
                    line,
                    format!("vertices must be strictly ascending, got {vertices:?}"),
                ));
            }
            let simplex = Simplex::new(vertices).map_err(|e| HcbError::parse(line, e.to_string()))?;
            if let Some(prev) = &prev_time {
                if &time < prev {
                    return Err(HcbError::parse(
                        line,
                        format!(
                            "timestamp {} decreases below {}",
                            format_rational(&time),
                            format_rational(prev)
                        ),
                    ));
                }
            }
            complex
                .push(simplex.clone())
                .map_err(|e| HcbError::parse(line, e.to_string()))?;
            prev_time = Some(time.clone());
            steps.push(FiltrationStep { simplex, time });
        }
        Ok(Filtration { steps, complex })
    }

    /// Inverse of `parse` on valid filtrations.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format_rational(&s.time));
            for v in s.simplex.vertices() {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Completion timestamps of a filtration's prefixes, with a +∞ sentinel
/// beyond the last complex for unpaired deaths.
#[derive(Clone, Debug)]
pub struct TimestampMap {
    times: Vec<Rational>,
}

impl TimestampMap {
    pub fn m(&self) -> usize {
        self.times.len()
    }

    /// τ(i) for 1 ≤ i ≤ m: the timestamp at which K_i is completed.
    /// Returns `None` for i = m+1, the +∞ sentinel.
    pub fn at(&self, i: usize) -> Option<&Rational> {
        assert!(
            (1..=self.times.len() + 1).contains(&i),
            "timestamp index {i} out of range"
        );
        self.times.get(i - 1)
    }
}

/// Parses a vertex-function file with lines `<vertex> <value>`.
pub fn parse_vertex_values(text: &str) -> Result<BTreeMap<u32, Rational>> {
    let mut values = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let v: u32 = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|_| HcbError::parse(line, "bad vertex id"))?;
        let value = parse_rational(
            fields
                .next()
                .ok_or_else(|| HcbError::parse(line, "missing value"))?,
        )
        .map_err(|e| HcbError::parse(line, e))?;
        if fields.next().is_some() {
            return Err(HcbError::parse(line, "trailing fields"));
        }
        if values.insert(v, value).is_some() {
            return Err(HcbError::parse(line, format!("vertex {v} listed twice")));
        }
    }
    Ok(values)
}

/// Parses a complex file listing maximal simplices, one vertex list per line.
pub fn parse_complex(text: &str) -> Result<Vec<Simplex>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut vertices = Vec::new();
        for f in content.split_whitespace() {
            let v: u32 = f
                .parse()
                .map_err(|_| HcbError::parse(line, format!("bad vertex `{f}`")))?;
            vertices.push(v);
        }
        let s = Simplex::from_unsorted(vertices).map_err(|e| HcbError::parse(line, e.to_string()))?;
        out.push(s);
    }
    Ok(out)
}

/// Builds the lower-star filtration of a vertex function.
///
/// Every simplex receives the maximum of its vertices' values and simplices
/// are ordered by (value, dimension, lexicographic vertex order); the fixed
/// tie-break makes the simplex-wise expansion of the sublevel-set filtration
/// deterministic. Timestamps equal the simplex values, so simplices sharing
/// a sublevel value get consecutive indices with one timestamp; the
/// closed-open conversion later collapses the intervals that would vanish in
/// the limit of the expansion.
pub fn lower_star_filtration(
    maximal: &[Simplex],
    values: &BTreeMap<u32, Rational>,
) -> Result<Filtration> {
    let mut all: BTreeSet<Simplex> = BTreeSet::new();
    for s in maximal {
        for face in s.all_faces() {
            all.insert(face);
        }
    }
    let mut keyed: Vec<(Rational, usize, Simplex)> = Vec::with_capacity(all.len());
    for s in all {
        let mut value: Option<&Rational> = None;
        for v in s.vertices() {
            let fv = values
                .get(v)
                .ok_or(HcbError::MissingVertexValue(*v))?;
            value = Some(match value {
                None => fv,
                Some(cur) if fv > cur => fv,
                Some(cur) => cur,
            });
        }
        keyed.push((value.expect("nonempty simplex").clone(), s.dim(), s));
    }
    keyed.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then_with(|| a.2.vertices().cmp(b.2.vertices()))
    });
    Filtration::new(
        keyed
            .into_iter()
            .map(|(time, _, simplex)| FiltrationStep { simplex, time })
            .collect(),
    )
}
