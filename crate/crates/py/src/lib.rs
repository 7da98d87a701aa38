//! Python bindings: the `pydilate` extension module.
//!
//! `GroupSet` wraps the canonical finite set; `A + B` is the sumset,
//! `A - B` the difference set and `l * A` the dilate. Reports, traces and
//! search results are returned as plain dicts built from the same JSON the
//! command line writes.

use pyo3::exceptions::{PyAssertionError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyTuple};
use serde::Serialize;

use dilate_core::bounds::{self, CorpusEntry, Params};
use dilate_core::cli::{self, Ineq, SearchParams};
use dilate_core::rational::{format_rational, frac, parse_rational};
use dilate_core::setcore::{self, io};
use dilate_core::{lemmas, structure, Constants, Coord, Error, GroupSet};

fn err(e: Error) -> PyErr {
    if e.is_assertion() {
        PyAssertionError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn fraction<'py>(py: Python<'py>, r: &dilate_core::Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

fn big_int<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((digits,))
}

/// A finite subset of Z^d in canonical (sorted, deduplicated) form.
#[pyclass(name = "GroupSet", module = "pydilate", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGroupSet {
    inner: GroupSet,
}

impl From<GroupSet> for PyGroupSet {
    fn from(inner: GroupSet) -> Self {
        PyGroupSet { inner }
    }
}

fn point_of(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Coord>> {
    if let Ok(v) = obj.extract::<Coord>() {
        return Ok(vec![v]);
    }
    obj.extract::<Vec<Coord>>()
}

#[pymethods]
impl PyGroupSet {
    /// Builds a set from integers (dimension one) or coordinate sequences.
    #[new]
    #[pyo3(signature = (points, dim = None))]
    fn new(points: &Bound<'_, PyAny>, dim: Option<usize>) -> PyResult<Self> {
        let pts: Vec<Vec<Coord>> = points.try_iter()?.map(|p| point_of(&p?)).collect::<PyResult<_>>()?;
        let dim = match (dim, pts.first()) {
            (Some(d), _) => d,
            (None, Some(p)) => p.len(),
            (None, None) => 1,
        };
        GroupSet::from_points(dim, &pts).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_set(text).map(Into::into).map_err(err)
    }

    fn to_text(&self) -> String {
        io::format_set(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn points<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self.inner.iter().map(|p| PyTuple::new(py, p)).collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    /// Coordinates of a one-dimensional set.
    fn values(&self) -> PyResult<Vec<Coord>> {
        self.inner
            .values()
            .map(<[Coord]>::to_vec)
            .ok_or_else(|| PyValueError::new_err("values() needs a one-dimensional set"))
    }

    fn translate(&self, t: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.inner.translate(&point_of(t)?).map(Into::into).map_err(err)
    }

    fn union(&self, other: &Self) -> PyResult<Self> {
        self.inner.union(&other.inner).map(Into::into).map_err(err)
    }

    fn intersection(&self, other: &Self) -> PyResult<Self> {
        self.inner.intersection(&other.inner).map(Into::into).map_err(err)
    }

    /// Set difference, as opposed to `A - B`.
    fn minus(&self, other: &Self) -> PyResult<Self> {
        self.inner.minus(&other.inner).map(Into::into).map_err(err)
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.inner.is_subset(&other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, p: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains(&point_of(p)?))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        setcore::sumset(&self.inner, &other.inner).map(Into::into).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        setcore::difference_set(&self.inner, &other.inner).map(Into::into).map_err(err)
    }

    fn __rmul__(&self, l: Coord) -> PyResult<Self> {
        setcore::dilate(l, &self.inner).map(Into::into).map_err(err)
    }

    fn __repr__(&self) -> String {
        let shown: Vec<String> = self.inner.iter().take(8).map(|p| format!("{p:?}")).collect();
        let more = if self.inner.len() > 8 { ", ..." } else { "" };
        format!("GroupSet(dim={}, len={}, [{}{more}])", self.inner.dim(), self.inner.len(), shown.join(", "))
    }
}

#[pyfunction]
fn sumset(u: &PyGroupSet, v: &PyGroupSet) -> PyResult<PyGroupSet> {
    setcore::sumset(&u.inner, &v.inner).map(Into::into).map_err(err)
}

#[pyfunction]
fn difference_set(u: &PyGroupSet, v: &PyGroupSet) -> PyResult<PyGroupSet> {
    setcore::difference_set(&u.inner, &v.inner).map(Into::into).map_err(err)
}

#[pyfunction]
fn dilate(l: Coord, a: &PyGroupSet) -> PyResult<PyGroupSet> {
    setcore::dilate(l, &a.inner).map(Into::into).map_err(err)
}

/// `A + l·B`.
#[pyfunction]
fn dilate_sum(a: &PyGroupSet, l: Coord, b: &PyGroupSet) -> PyResult<PyGroupSet> {
    setcore::dilate_sum(&a.inner, l, &b.inner).map(Into::into).map_err(err)
}

#[pyfunction]
fn kfold(k: usize, a: &PyGroupSet) -> PyResult<PyGroupSet> {
    setcore::kfold(k, &a.inner).map(Into::into).map_err(err)
}

/// `|A+A|/|A|` as a `Fraction`.
#[pyfunction]
fn doubling<'py>(py: Python<'py>, a: &PyGroupSet) -> PyResult<Bound<'py, PyAny>> {
    if a.inner.is_empty() {
        return Err(PyValueError::new_err("doubling of the empty set"));
    }
    let aa = setcore::sumset(&a.inner, &a.inner).map_err(err)?;
    fraction(py, &frac(aa.len(), a.inner.len()))
}

#[pyfunction]
#[pyo3(signature = (a, order = 3))]
fn base_embed(a: &PyGroupSet, order: u32) -> PyResult<PyGroupSet> {
    setcore::base_embed(&a.inner, order).map(Into::into).map_err(err)
}

#[pyfunction]
fn tensor_power(a: &PyGroupSet, r: usize) -> PyResult<PyGroupSet> {
    structure::tensor_power(&a.inner, r).map(Into::into).map_err(err)
}

fn param_value(v: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(b) = v.extract::<bool>() {
        return Ok(b.to_string());
    }
    if v.is_instance_of::<PyList>() || v.is_instance_of::<PyTuple>() {
        let items = v.try_iter()?.map(|x| Ok(x?.str()?.to_string())).collect::<PyResult<Vec<_>>>()?;
        return Ok(items.join(";"));
    }
    Ok(v.str()?.to_string())
}

/// One family member, e.g. `generate("gap", steps=[1, 100], sizes=[4, 4])`.
#[pyfunction]
#[pyo3(signature = (family, **params))]
fn generate(family: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<PyGroupSet> {
    let mut pairs = Vec::new();
    if let Some(params) = params {
        for (k, v) in params.iter() {
            pairs.push(format!("{}={}", k.str()?, param_value(&v)?));
        }
    }
    let params = Params::from_pairs(pairs.iter().map(String::as_str)).map_err(err)?;
    bounds::generate(family, &params).map(Into::into).map_err(err)
}

/// `(family, params, set)` triples for a corpus spec such as `"structured"`.
#[pyfunction]
fn corpus(spec: &str) -> PyResult<Vec<(String, String, PyGroupSet)>> {
    let entries = bounds::corpus_from_spec(spec).map_err(err)?;
    Ok(entries.into_iter().map(|CorpusEntry { family, params, set }| (family, params, set.into())).collect())
}

fn one_or_many(obj: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
    if let Ok(s) = obj.extract::<String>() {
        return Ok(vec![s]);
    }
    obj.extract()
}

/// Runs `verify` and returns the sorted report dicts.
#[pyfunction]
#[pyo3(signature = (ineq, corpus = None, seed = 0, exact_limit = None))]
fn verify<'py>(
    py: Python<'py>,
    ineq: &Bound<'py, PyAny>,
    corpus: Option<&Bound<'py, PyAny>>,
    seed: u64,
    exact_limit: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let ineqs = one_or_many(ineq)?.iter().map(|s| Ineq::parse(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let specs = match corpus {
        Some(c) => one_or_many(c)?,
        None => vec!["default".to_string()],
    };
    let entries = cli::load_corpus(&specs).map_err(err)?;
    let mut constants = Constants { seed, ..Constants::default() };
    if let Some(l) = exact_limit {
        constants.exact_limit = l;
    }
    let reports = py
        .detach(|| cli::run_verify(&entries, &ineqs, &constants))
        .map_err(|f| if f.error.is_assertion() { PyAssertionError::new_err(f.to_string()) } else { PyValueError::new_err(f.to_string()) })?;
    to_py(py, &reports)
}

#[pyfunction]
fn exponent_emp(a: &PyGroupSet, l: Coord) -> PyResult<f64> {
    bounds::exponent_emp(&a.inner, l).map_err(err)
}

#[pyfunction]
fn fp_formula<'py>(py: Python<'py>, d: u64, t: u64) -> PyResult<Bound<'py, PyAny>> {
    big_int(py, bounds::fp_formula(d, t).to_string())
}

#[pyfunction]
fn simplex_counts<'py>(py: Python<'py>, d: u64, t: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &bounds::simplex_counts(d, t).map_err(err)?)
}

/// `(X, |X+V|/|X|, certified)` for the Plünnecke minimizer `X ⊆ U`.
#[pyfunction]
#[pyo3(signature = (u, v, exact_limit = 16))]
fn plunnecke_minimizer<'py>(
    py: Python<'py>,
    u: &PyGroupSet,
    v: &PyGroupSet,
    exact_limit: usize,
) -> PyResult<(PyGroupSet, Bound<'py, PyAny>, bool)> {
    let m = lemmas::plunnecke_minimizer(&u.inner, &v.inner, exact_limit).map_err(err)?;
    Ok((m.x.into(), fraction(py, &m.ratio)?, m.certified))
}

/// `[(shift, piece), ...]` covering `V` by translates of `U`.
#[pyfunction]
fn greedy_cover(u: &PyGroupSet, v: &PyGroupSet) -> PyResult<Vec<(Vec<Coord>, PyGroupSet)>> {
    let g = lemmas::greedy_cover(&u.inner, &v.inner, setcore::Sign::Plus).map_err(err)?;
    Ok(g.cover.shifts.into_iter().zip(g.cover.pieces.into_iter().map(Into::into)).collect())
}

/// The partition trace as a dict; `m` is `None` for `K^{1/20}`, otherwise
/// an int, `Fraction` or `"p/q"` string.
#[pyfunction]
#[pyo3(signature = (a, m = None, strict = false))]
fn partition<'py>(
    py: Python<'py>,
    a: &PyGroupSet,
    m: Option<&Bound<'py, PyAny>>,
    strict: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let m = m.map(|m| parse_rational(&m.str()?.to_string()).map_err(err)).transpose()?;
    let constants = Constants { strict, ..Constants::default() };
    let trace = py.detach(|| structure::theorem1_partition(&a.inner, m.as_ref(), &constants)).map_err(err)?;
    to_py(py, &trace)
}

#[pyfunction]
#[pyo3(signature = (lam, n, universe, budget = 10_000, seed = 0, cooling = 0.995))]
fn search<'py>(
    py: Python<'py>,
    lam: u32,
    n: usize,
    universe: usize,
    budget: u64,
    seed: u64,
    cooling: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let params = SearchParams { cooling, ..SearchParams::new(lam, n, universe, budget, seed) };
    let result = py.detach(|| cli::search(&params)).map_err(err)?;
    to_py(py, &result)
}

#[pymodule]
pub fn pydilate(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", cli::VERSION)?;
    m.add_class::<PyGroupSet>()?;
    m.add_function(wrap_pyfunction!(sumset, m)?)?;
    m.add_function(wrap_pyfunction!(difference_set, m)?)?;
    m.add_function(wrap_pyfunction!(dilate, m)?)?;
    m.add_function(wrap_pyfunction!(dilate_sum, m)?)?;
    m.add_function(wrap_pyfunction!(kfold, m)?)?;
    m.add_function(wrap_pyfunction!(doubling, m)?)?;
    m.add_function(wrap_pyfunction!(base_embed, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_power, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_emp, m)?)?;
    m.add_function(wrap_pyfunction!(fp_formula, m)?)?;
    m.add_function(wrap_pyfunction!(simplex_counts, m)?)?;
    m.add_function(wrap_pyfunction!(plunnecke_minimizer, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_cover, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
