//! Python bindings. Exact scalars cross the boundary as strings like "3/8",
//! which `fractions.Fraction` parses directly.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use easyq::category::{category_set, CategoryId, CategorySpec, GroupId};
use easyq::laws::{law_moments, LawId, LawKind};
use easyq::linalg::{format_scalar, parse_scalar, ExactMatrix};
use easyq::oracle::montecarlo::{mc_haar_moment, MCConfig, McGroup};
use easyq::partition::{ColorWord, Partition};
use easyq::tensor_map::{t_map, t_map_twisted, verify_functoriality};
use easyq::verify::{run_all, Level, Settings};
use easyq::weingarten::{
    asymptotic_char_moments, gram, weingarten, HaarIntegrator, MonomialSpec, SphereKind,
};

fn err(e: easyq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &ExactMatrix) -> Vec<Vec<String>> {
    m.to_string_rows()
}

fn category(name: &str) -> PyResult<CategorySpec> {
    if let Ok(id) = name.parse::<CategoryId>() {
        return Ok(CategorySpec::Named(id));
    }
    let group: GroupId = name.parse().map_err(err)?;
    Ok(CategorySpec::Named(group.category()))
}

/// A partition between an upper and a lower color word, e.g. `"oo|oo {u1,d2}{u2,d1}"`.
#[pyclass(name = "Partition", frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct PyPartition(Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        literal.parse().map(PyPartition).map_err(err)
    }

    #[getter]
    fn upper(&self) -> String {
        self.0.upper().to_string()
    }

    #[getter]
    fn lower(&self) -> String {
        self.0.lower().to_string()
    }

    fn blocks(&self) -> Vec<Vec<usize>> {
        self.0.blocks()
    }

    fn tensor(&self, other: &PyPartition) -> PyPartition {
        PyPartition(self.0.tensor(&other.0))
    }

    /// `self` on top of `bottom`; returns the composite and the number of closed loops.
    fn compose(&self, bottom: &PyPartition) -> PyResult<(PyPartition, usize)> {
        let (p, loops) = self.0.compose(&bottom.0).map_err(err)?;
        Ok((PyPartition(p), loops))
    }

    fn adjoint(&self) -> PyPartition {
        PyPartition(self.0.adjoint())
    }

    #[pyo3(signature = (n, twisted = false))]
    fn t_map(&self, n: usize, twisted: bool) -> PyResult<Vec<Vec<String>>> {
        let m = if twisted { t_map_twisted(&self.0, n) } else { t_map(&self.0, n) };
        m.map(|m| rows(&m)).map_err(err)
    }

    /// Whether the tensor, composition and adjoint identities hold against `other`.
    #[pyo3(signature = (other, n, twisted = false))]
    fn functorial_with(&self, other: &PyPartition, n: usize, twisted: bool) -> PyResult<bool> {
        verify_functoriality(&self.0, &other.0, n, twisted)
            .map(|r| r.passed())
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.to_string())
    }
}

/// Partitions of a category (or of a group's category) from `upper` to `lower`.
#[pyfunction]
#[pyo3(signature = (name, lower, upper = ""))]
fn partitions(name: &str, lower: &str, upper: &str) -> PyResult<Vec<PyPartition>> {
    let spec = category(name)?;
    let upper: ColorWord = upper.parse().map_err(err)?;
    let lower: ColorWord = lower.parse().map_err(err)?;
    let set = category_set(&spec, &upper, &lower).map_err(err)?;
    Ok(set.into_iter().map(PyPartition).collect())
}

/// Gram matrix on `word` at `n`, with its rank.
#[pyfunction]
fn gram_matrix(name: &str, word: &str, n: usize) -> PyResult<(Vec<Vec<String>>, usize)> {
    let g = gram(&category(name)?, &word.parse().map_err(err)?, n).map_err(err)?;
    Ok((rows(&g.matrix), g.rank))
}

#[pyfunction]
#[pyo3(signature = (name, word, n, pseudo = false))]
fn weingarten_matrix(name: &str, word: &str, n: usize, pseudo: bool) -> PyResult<Vec<Vec<String>>> {
    let g = gram(&category(name)?, &word.parse().map_err(err)?, n).map_err(err)?;
    weingarten(g, pseudo).map(|w| rows(&w.matrix)).map_err(err)
}

/// Exact Haar integral of a monomial such as `"u[1,1] u*[2,2]"`.
#[pyfunction]
#[pyo3(signature = (group, n, monomial, pseudo = false))]
fn moment(group: &str, n: usize, monomial: &str, pseudo: bool) -> PyResult<String> {
    let group: GroupId = group.parse().map_err(err)?;
    let m: MonomialSpec = monomial.parse().map_err(err)?;
    let mut integ = HaarIntegrator::new(group, n).with_pseudo(pseudo);
    integ.moment(&m).map(|v| format_scalar(&v)).map_err(err)
}

/// Moment of the truncated character at finite `n`.
#[pyfunction]
#[pyo3(signature = (group, n, s, word, pseudo = false))]
fn char_moment(group: &str, n: usize, s: usize, word: &str, pseudo: bool) -> PyResult<String> {
    let group: GroupId = group.parse().map_err(err)?;
    let mut integ = HaarIntegrator::new(group, n).with_pseudo(pseudo);
    integ
        .truncated_char_moment(s, &word.parse().map_err(err)?)
        .map(|v| format_scalar(&v))
        .map_err(err)
}

/// The `n → ∞` limit of the truncated character moment at parameter `t`.
#[pyfunction]
fn char_limit(name: &str, t: &str, word: &str) -> PyResult<String> {
    let t = parse_scalar(t).map_err(err)?;
    asymptotic_char_moments(&category(name)?, &t, &word.parse().map_err(err)?)
        .map(|v| format_scalar(&v))
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (law, kmax, t = "1"))]
fn law_moment_list(law: &str, kmax: usize, t: &str) -> PyResult<Vec<String>> {
    let kind: LawKind = law.parse().map_err(err)?;
    let law = LawId::new(kind, parse_scalar(t).map_err(err)?).map_err(err)?;
    law_moments(&law, kmax)
        .map(|v| v.iter().map(format_scalar).collect())
        .map_err(err)
}

#[pyfunction]
fn sphere_moment(kind: &str, n: usize, indices: Vec<usize>) -> PyResult<String> {
    let kind: SphereKind = kind.parse().map_err(err)?;
    easyq::weingarten::sphere_moment(kind, &indices, n)
        .map(|v| format_scalar(&v))
        .map_err(err)
}

/// Temperley-Lieb expression: the nonzero terms and the Markov trace.
#[pyfunction]
fn tl_evaluate(expr: &str, k: usize, delta: &str) -> PyResult<(Vec<(String, String)>, String)> {
    let delta = parse_scalar(delta).map_err(err)?;
    let x = easyq::tl::evaluate(expr, k, &delta).map_err(err)?;
    let terms = x
        .term_list()
        .into_iter()
        .map(|t| (t.diagram, t.coefficient))
        .collect();
    Ok((terms, format_scalar(&x.markov_trace())))
}

/// Monte Carlo estimate `(mean, stderr)` of a Haar moment over O, U, B or C.
#[pyfunction]
#[pyo3(signature = (group, n, monomial, samples = 100_000, seed = 0))]
fn mc_moment(group: &str, n: usize, monomial: &str, samples: u64, seed: u64) -> PyResult<(f64, f64)> {
    let group: McGroup = group.parse().map_err(err)?;
    let m: MonomialSpec = monomial.parse().map_err(err)?;
    let cfg = MCConfig::new(samples, seed).map_err(err)?;
    let e = mc_haar_moment(group, n, &m, &cfg).map_err(err)?;
    Ok((e.mean, e.stderr))
}

/// Runs the cross-check suite; returns `(name, passed, detail)` per check.
#[pyfunction]
#[pyo3(signature = (quick = true))]
fn verify(quick: bool) -> Vec<(String, bool, String)> {
    let level = if quick { Level::Quick } else { Level::Full };
    run_all(&Settings::new(level))
        .into_iter()
        .map(|o| (o.name.to_string(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn easyq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(gram_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(weingarten_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(moment, m)?)?;
    m.add_function(wrap_pyfunction!(char_moment, m)?)?;
    m.add_function(wrap_pyfunction!(char_limit, m)?)?;
    m.add_function(wrap_pyfunction!(law_moment_list, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_moment, m)?)?;
    m.add_function(wrap_pyfunction!(tl_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(mc_moment, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
