//! Python bindings for the hexpivot planner.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hexpivot_core::cli_io;
use hexpivot_core::configuration::is_canonical_path;
use hexpivot_core::explorer;
use hexpivot_core::move_model;
use hexpivot_core::planner;

fn model_of(name: &str) -> PyResult<hexpivot_core::ModelId> {
    match name {
        "monkey" => Ok(hexpivot_core::ModelId::HexMonkey),
        "restricted" => Ok(hexpivot_core::ModelId::HexRestricted),
        other => Err(PyValueError::new_err(format!("unknown model {other:?}; use \"monkey\" or \"restricted\""))),
    }
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// A connected set of occupied hexagonal cells in axial coordinates.
#[pyclass(name = "Configuration", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyConfiguration(hexpivot_core::Configuration);

#[pymethods]
impl PyConfiguration {
    #[new]
    fn new(cells: Vec<(i32, i32)>) -> PyResult<Self> {
        hexpivot_core::Configuration::from_cells(cells.into_iter().map(|(q, r)| hexpivot_core::Cell::new(q, r)))
            .map(PyConfiguration)
            .map_err(value_err)
    }

    /// Parses the `q r` per line text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        cli_io::parse_config(text).map(PyConfiguration).map_err(value_err)
    }

    #[staticmethod]
    fn random(n: usize, seed: u64) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be at least 1"));
        }
        Ok(PyConfiguration(cli_io::random_configuration(n, seed)))
    }

    fn cells(&self) -> Vec<(i32, i32)> {
        self.0.iter().map(|c| (c.q, c.r)).collect()
    }

    fn to_text(&self) -> String {
        cli_io::write_config(&self.0)
    }

    fn translate(&self, dq: i32, dr: i32) -> Self {
        PyConfiguration(self.0.translate(hexpivot_core::Cell::new(dq, dr)))
    }

    fn same_shape(&self, other: &PyConfiguration) -> bool {
        self.0.same_shape(&other.0)
    }

    fn is_canonical_path(&self) -> bool {
        is_canonical_path(&self.0)
    }

    #[pyo3(signature = (model = "monkey"))]
    fn legal_moves(&self, model: &str) -> PyResult<Vec<PyMove>> {
        Ok(move_model::legal_moves(&self.0, model_of(model)?).into_iter().map(PyMove).collect())
    }

    #[pyo3(signature = (mv, model = "monkey"))]
    fn apply(&self, mv: &PyMove, model: &str) -> PyResult<Self> {
        move_model::apply(&self.0, &mv.0, model_of(model)?).map(PyConfiguration).map_err(value_err)
    }

    fn render_svg(&self) -> String {
        cli_io::render_svg(&self.0, None)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Configuration({:?})", self.cells())
    }
}

/// One pivoting move.
#[pyclass(name = "Move", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyMove(hexpivot_core::Move);

#[pymethods]
impl PyMove {
    #[getter]
    fn mover(&self) -> (i32, i32) {
        (self.0.mover.q, self.0.mover.r)
    }

    #[getter]
    fn dest(&self) -> (i32, i32) {
        (self.0.dest.q, self.0.dest.r)
    }

    #[getter]
    fn rotation(&self) -> &'static str {
        self.0.rotation.as_str()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        if self.0.kind.is_monkey() {
            "monkey"
        } else {
            "restricted"
        }
    }

    fn inverse(&self) -> Self {
        PyMove(self.0.inverse())
    }

    fn __repr__(&self) -> String {
        format!("Move({})", self.0)
    }
}

/// A verified move sequence with phase labels.
#[pyclass(name = "Plan", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPlan(planner::MovePlan);

#[pymethods]
impl PyPlan {
    /// Parses the JSON-lines plan format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        cli_io::parse_plan(text).map(PyPlan).map_err(value_err)
    }

    fn moves(&self) -> Vec<PyMove> {
        self.0.moves().copied().map(PyMove).collect()
    }

    fn phases(&self) -> Vec<String> {
        self.0.steps.iter().map(|s| s.label()).collect()
    }

    fn reversed(&self) -> Self {
        PyPlan(self.0.reverse_inverted())
    }

    fn to_jsonl(&self) -> String {
        cli_io::write_plan(&self.0)
    }

    /// Replays the plan and returns the final configuration.
    #[pyo3(signature = (start, model = "monkey"))]
    fn verify(&self, start: &PyConfiguration, model: &str) -> PyResult<PyConfiguration> {
        move_model::verify_moves(&start.0, self.0.moves(), model_of(model)?)
            .map(PyConfiguration)
            .map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Plans a move sequence from `a` to a translate of `b` (monkey model).
#[pyfunction]
fn reconfigure(a: &PyConfiguration, b: &PyConfiguration) -> PyResult<PyPlan> {
    planner::reconfigure(&a.0, &b.0).map(PyPlan).map_err(runtime_err)
}

/// Plans a move sequence from `c` to a canonical vertical path.
#[pyfunction]
fn plan_to_canonical(c: &PyConfiguration) -> PyResult<(PyPlan, PyConfiguration)> {
    planner::plan_to_canonical(&c.0).map(|cp| (PyPlan(cp.plan), PyConfiguration(cp.end))).map_err(runtime_err)
}

/// All shapes of size `n` up to translation.
#[pyfunction]
fn enumerate(n: usize) -> PyResult<Vec<PyConfiguration>> {
    explorer::enumerate(n).map(|v| v.into_iter().map(PyConfiguration).collect()).map_err(value_err)
}

/// Node, edge and component counts of the reconfiguration graph.
#[pyfunction]
#[pyo3(signature = (n, model = "monkey"))]
fn explore(n: usize, model: &str) -> PyResult<(usize, usize, usize)> {
    let g = explorer::cached_graph(n, model_of(model)?).map_err(value_err)?;
    Ok((g.nodes.len(), g.edges().len(), explorer::components(&g).len()))
}

#[pymodule]
fn hexpivot(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyConfiguration>()?;
    m.add_class::<PyMove>()?;
    m.add_class::<PyPlan>()?;
    m.add_function(wrap_pyfunction!(reconfigure, m)?)?;
    m.add_function(wrap_pyfunction!(plan_to_canonical, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(explore, m)?)?;
    Ok(())
}
