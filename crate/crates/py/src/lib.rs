//! Python bindings: `teamgroup.Instance` plus solver entry points returning
//! plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use teamgroup::exact_oracle::brute_force_optimal as exact_optimal;
use teamgroup::instance::{parse_instance_unchecked, profit_to_f64};
use teamgroup::{
    enumerate_minimal_teams, lp_upper_bound, parse_instance, serialize_instance,
    solve as run_solve, validate_instance, Algorithm, Grouping, PricingError, PricingRule, Profit,
    SolveError,
};

create_exception!(teamgroup, InstanceError, PyValueError);
create_exception!(teamgroup, PricingMismatch, PyValueError);
create_exception!(teamgroup, ScaleGuardError, PyRuntimeError);

/// A validated problem instance.
#[pyclass(frozen, module = "teamgroup")]
struct Instance {
    inner: teamgroup::Instance,
}

#[pymethods]
impl Instance {
    /// Parses and validates the JSON instance format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_instance(text)
            .map(|inner| Instance { inner })
            .map_err(|e| InstanceError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| InstanceError::new_err(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        serialize_instance(&self.inner)
    }

    /// Instance with load limits replaced by individual copies.
    fn expand_load_limits(&self) -> Self {
        Instance {
            inner: teamgroup::expand_load_limits(&self.inner),
        }
    }

    #[getter]
    fn individuals(&self) -> Vec<String> {
        self.inner
            .individuals()
            .iter()
            .map(|u| u.id.clone())
            .collect()
    }

    #[getter]
    fn tasks(&self) -> Vec<String> {
        self.inner.tasks().iter().map(|t| t.id.clone()).collect()
    }

    #[getter]
    fn compatibility(&self) -> String {
        self.inner.compatibility().to_string()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(individuals={}, tasks={}, skills={}, compatibility={})",
            self.inner.num_individuals(),
            self.inner.num_tasks(),
            self.inner.num_skills(),
            self.inner.compatibility()
        )
    }
}

/// Diagnostics for a JSON document; empty when the instance is valid.
#[pyfunction]
fn validate(text: &str) -> PyResult<Vec<String>> {
    let inst = parse_instance_unchecked(text).map_err(|e| InstanceError::new_err(e.to_string()))?;
    Ok(validate_instance(&inst)
        .iter()
        .map(ToString::to_string)
        .collect())
}

fn pricing_rule(name: &str) -> PyResult<PricingRule> {
    match name {
        "exact" => Ok(PricingRule::Exact),
        "greedy" => Ok(PricingRule::Greedy),
        other => Err(PyValueError::new_err(format!(
            "pricing must be 'exact' or 'greedy', got {other:?}"
        ))),
    }
}

fn pricing_err(e: PricingError) -> PyErr {
    PricingMismatch::new_err(e.to_string())
}

fn profit_str(p: &Profit) -> String {
    if p.is_integer() {
        p.numer().to_string()
    } else {
        format!("{}/{}", p.numer(), p.denom())
    }
}

fn grouping_dict<'py>(
    py: Python<'py>,
    inst: &teamgroup::Instance,
    grouping: &Grouping,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("profit", profit_to_f64(&grouping.profit))?;
    d.set_item("profit_exact", profit_str(&grouping.profit))?;
    d.set_item("assignments", grouping.assignments(inst))?;
    Ok(d)
}

/// Runs one of `approx-tg`, `cand1`, `cand2`, `rand-round`, `exact`.
#[pyfunction]
#[pyo3(signature = (instance, algorithm = "approx-tg", pricing = "exact", seed = 0))]
fn solve<'py>(
    py: Python<'py>,
    instance: &Instance,
    algorithm: &str,
    pricing: &str,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let inst = &instance.inner;
    let rule = pricing_rule(pricing)?;
    let alg = match algorithm {
        "exact" => return brute_force_optimal(py, instance),
        "approx-tg" => Algorithm::ApproxTg,
        "cand1" => Algorithm::CandidateOne,
        "cand2" => Algorithm::CandidateTwo,
        "rand-round" => Algorithm::RandomizedRound { seed },
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown algorithm {other:?}"
            )));
        }
    };
    let report = py
        .detach(|| run_solve(inst, rule, alg))
        .map_err(|e| match e {
            SolveError::Pricing(e) => pricing_err(e),
            other => PyValueError::new_err(other.to_string()),
        })?;
    let d = grouping_dict(py, inst, &report.grouping)?;
    d.set_item("algorithm", algorithm)?;
    d.set_item("lp_bound", report.lp_bound)?;
    d.set_item("lp_bound_exact", report.lp_bound_exact)?;
    d.set_item("guarantee", report.guarantee)?;
    d.set_item("guarantee_expr", report.guarantee_expr)?;
    d.set_item("iterations", report.iterations)?;
    d.set_item("columns", report.catalog_size)?;
    d.set_item("candidate", report.candidate.map(|c| c.to_string()))?;
    d.set_item("delta_catalog", report.delta_catalog)?;
    d.set_item("delta_global", report.delta_global)?;
    d.set_item("m", report.m)?;
    d.set_item("mu", report.mu)?;
    Ok(d)
}

/// LP relaxation value by column generation.
#[pyfunction]
#[pyo3(signature = (instance, pricing = "exact"))]
fn lp_bound<'py>(
    py: Python<'py>,
    instance: &Instance,
    pricing: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let rule = pricing_rule(pricing)?;
    let bound = py
        .detach(|| lp_upper_bound(&instance.inner, rule))
        .map_err(pricing_err)?;
    let d = PyDict::new(py);
    d.set_item("lp_bound", bound.value)?;
    d.set_item("columns", bound.columns)?;
    d.set_item("iterations", bound.iterations)?;
    d.set_item("exact", bound.exact)?;
    Ok(d)
}

/// Optimal grouping by exhaustive search (small instances only).
#[pyfunction]
fn brute_force_optimal<'py>(py: Python<'py>, instance: &Instance) -> PyResult<Bound<'py, PyDict>> {
    let inst = &instance.inner;
    let grouping = py
        .detach(|| exact_optimal(inst))
        .map_err(|e| ScaleGuardError::new_err(e.to_string()))?;
    let d = grouping_dict(py, inst, &grouping)?;
    d.set_item("algorithm", "exact")?;
    Ok(d)
}

/// Minimal qualified teams of a task, as sorted id lists.
#[pyfunction]
fn minimal_teams(instance: &Instance, task: &str) -> PyResult<Vec<Vec<String>>> {
    let inst = &instance.inner;
    let t = inst
        .task_index(task)
        .ok_or_else(|| PyValueError::new_err(format!("unknown task {task:?}")))?;
    Ok(enumerate_minimal_teams(inst, t)
        .iter()
        .map(|team| team.ids(inst))
        .collect())
}

#[pymodule(name = "teamgroup")]
fn teamgroup_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(lp_bound, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_optimal, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_teams, m)?)?;
    m.add("InstanceError", py.get_type::<InstanceError>())?;
    m.add("PricingMismatch", py.get_type::<PricingMismatch>())?;
    m.add("ScaleGuardError", py.get_type::<ScaleGuardError>())?;
    Ok(())
}
