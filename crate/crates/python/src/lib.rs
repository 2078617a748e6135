//! Python bindings: filtrations in, barcodes and verification reports out.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hcb_core::{
    bottleneck_distance, certify_barcode, compute_harmonic_barcode, compute_ordinary_barcode,
    format_rational, lower_star_filtration, parse_complex, parse_rational, parse_vertex_values,
    to_closed_open, Barcode, DeathKind, Diagram, SparseVector,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated simplex-wise filtration.
#[pyclass(module = "hcb_py")]
struct Filtration {
    inner: hcb_core::Filtration,
}

#[pymethods]
impl Filtration {
    /// Parse the text format: one `<timestamp> <v0> <v1> ...` per line.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Filtration {
            inner: hcb_core::Filtration::parse(text).map_err(value_err)?,
        })
    }

    /// Build a lower-star filtration from a complex of maximal simplices
    /// and a vertex-value file, both in their text formats.
    #[staticmethod]
    fn lower_star(complex_text: &str, values_text: &str) -> PyResult<Self> {
        let maximal = parse_complex(complex_text).map_err(value_err)?;
        let values = parse_vertex_values(values_text).map_err(value_err)?;
        Ok(Filtration {
            inner: lower_star_filtration(&maximal, &values).map_err(value_err)?,
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn max_dim(&self) -> usize {
        self.inner.max_dim()
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Filtration(m={}, max_dim={})",
            self.inner.len(),
            self.inner.max_dim()
        )
    }
}

/// One bar of a barcode: closed integer interval plus real timestamps and,
/// for harmonic barcodes, the representative chain as {simplex_id: "p/q"}.
#[pyclass(module = "hcb_py", from_py_object)]
#[derive(Clone)]
struct Bar {
    #[pyo3(get, set)]
    degree: usize,
    #[pyo3(get, set)]
    birth_index: usize,
    #[pyo3(get, set)]
    death_index: usize,
    #[pyo3(get, set)]
    birth_time: String,
    /// None encodes an infinite death.
    #[pyo3(get, set)]
    death_time: Option<String>,
    #[pyo3(get, set)]
    representative: BTreeMap<usize, String>,
}

#[pymethods]
impl Bar {
    #[getter]
    fn essential(&self) -> bool {
        self.death_time.is_none()
    }

    fn __repr__(&self) -> String {
        format!(
            "Bar(degree={}, interval=[{},{}])",
            self.degree, self.birth_index, self.death_index
        )
    }
}

fn bars_to_py(barcode: &Barcode, f: &hcb_core::Filtration) -> Vec<Bar> {
    let ts = f.timestamps();
    barcode
        .bars
        .iter()
        .map(|bar| Bar {
            degree: bar.degree,
            birth_index: bar.birth,
            death_index: bar.death,
            birth_time: format_rational(ts.at(bar.birth).expect("birth in range")),
            death_time: ts.at(bar.death + 1).map(format_rational),
            representative: bar
                .representative
                .iter()
                .map(|(i, c)| (i, format_rational(c)))
                .collect(),
        })
        .collect()
}

fn bars_from_py(bars: Vec<Bar>, m: usize) -> PyResult<Barcode> {
    let mut out = Vec::with_capacity(bars.len());
    for bar in bars {
        let entries: Result<Vec<_>, PyErr> = bar
            .representative
            .iter()
            .map(|(i, c)| Ok((*i, parse_rational(c).map_err(value_err)?)))
            .collect();
        out.push(hcb_core::Bar {
            degree: bar.degree,
            birth: bar.birth_index,
            death: bar.death_index,
            representative: SparseVector::from_entries(entries?),
            death_kind: if bar.death_index >= m {
                DeathKind::EndOfFiltration
            } else {
                DeathKind::Paired
            },
        });
    }
    Ok(Barcode::new(m, out))
}

/// Harmonic chain barcode with representatives.
#[pyfunction]
fn harmonic_barcode(f: &Filtration) -> PyResult<Vec<Bar>> {
    let barcode = compute_harmonic_barcode(&f.inner).map_err(value_err)?;
    Ok(bars_to_py(&barcode, &f.inner))
}

/// Ordinary persistence barcode (youngest pairing, no representatives).
#[pyfunction]
fn ordinary_barcode(f: &Filtration) -> PyResult<Vec<Bar>> {
    let bars = compute_ordinary_barcode(&f.inner).map_err(value_err)?;
    let ts = f.inner.timestamps();
    Ok(bars
        .iter()
        .map(|bar| Bar {
            degree: bar.degree,
            birth_index: bar.birth,
            death_index: bar.death,
            birth_time: format_rational(ts.at(bar.birth).expect("birth in range")),
            death_time: ts.at(bar.death + 1).map(format_rational),
            representative: BTreeMap::new(),
        })
        .collect())
}

/// Certify a barcode against the brute-force oracle. Returns a dict with
/// `pass` and a list of human-readable `failures`.
#[pyfunction]
fn certify<'py>(py: Python<'py>, f: &Filtration, bars: Vec<Bar>) -> PyResult<Bound<'py, PyDict>> {
    let barcode = bars_from_py(bars, f.inner.len())?;
    let report = certify_barcode(&f.inner, &barcode);
    let dict = PyDict::new(py);
    dict.set_item("pass", report.pass)?;
    dict.set_item("bars_checked", report.bars_checked)?;
    let failures: Vec<String> = report
        .failures
        .iter()
        .map(|fl| {
            format!(
                "{:?} degree {} bar [{},{}]: {}",
                fl.condition, fl.degree, fl.birth, fl.death, fl.detail
            )
        })
        .collect();
    dict.set_item("failures", failures)?;
    Ok(dict)
}

/// Closed-open intervals of the harmonic barcode, as (degree, birth, death)
/// with rationals rendered as strings and death None for +∞.
#[pyfunction]
fn closed_open_intervals(f: &Filtration) -> PyResult<Vec<(usize, String, Option<String>)>> {
    let barcode = compute_harmonic_barcode(&f.inner).map_err(value_err)?;
    let intervals = to_closed_open(&barcode, &f.inner.timestamps());
    Ok(intervals
        .iter()
        .map(|it| {
            (
                it.degree,
                format_rational(&it.birth),
                it.death.as_ref().map(format_rational),
            )
        })
        .collect())
}

/// Exact bottleneck distance between two diagrams given as lists of
/// (birth, death) rational strings, death None for +∞. Returns None for an
/// infinite distance (essential-class count mismatch).
#[pyfunction]
fn bottleneck(
    a: Vec<(String, Option<String>)>,
    b: Vec<(String, Option<String>)>,
) -> PyResult<Option<String>> {
    let build = |points: Vec<(String, Option<String>)>| -> PyResult<Diagram> {
        let mut diagram = Diagram::default();
        for (birth, death) in points {
            let birth = parse_rational(&birth).map_err(value_err)?;
            match death {
                Some(d) => diagram
                    .points
                    .push((birth, parse_rational(&d).map_err(value_err)?)),
                None => diagram.essential_births.push(birth),
            }
        }
        Ok(diagram)
    };
    let da = build(a)?;
    let db = build(b)?;
    Ok(bottleneck_distance(&da, &db).map(|d| format_rational(&d)))
}

/// Run the lower-star stability experiment for two vertex functions on one
/// complex; returns the report as a dict.
#[pyfunction]
fn stability<'py>(
    py: Python<'py>,
    complex_text: &str,
    f_values_text: &str,
    g_values_text: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let maximal = parse_complex(complex_text).map_err(value_err)?;
    let fv = parse_vertex_values(f_values_text).map_err(value_err)?;
    let gv = parse_vertex_values(g_values_text).map_err(value_err)?;
    let report =
        hcb_core::stability_experiment(&maximal, &fv, &gv).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("sup_diff", report.sup_diff)?;
    dict.set_item("max_distance", report.max_distance)?;
    dict.set_item("bound_holds", report.bound_holds)?;
    let per_degree: Vec<(usize, Option<String>, bool)> = report
        .per_degree
        .iter()
        .map(|d| (d.degree, d.distance.clone(), d.within_bound))
        .collect();
    dict.set_item("per_degree", per_degree)?;
    Ok(dict)
}

#[pymodule]
fn hcb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Filtration>()?;
    m.add_class::<Bar>()?;
    m.add_function(wrap_pyfunction!(harmonic_barcode, m)?)?;
    m.add_function(wrap_pyfunction!(ordinary_barcode, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(closed_open_intervals, m)?)?;
    m.add_function(wrap_pyfunction!(bottleneck, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    Ok(())
}
