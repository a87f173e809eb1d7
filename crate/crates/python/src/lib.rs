//! Python bindings. Matrices cross the boundary as `Matrix` objects holding exact
//! entries; reports come back as plain dicts decoded from their JSON form.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use affgebra::affine;
use affgebra::classes::{ClassSpec as CoreSpec, Sampler};
use affgebra::transforms::{self, ClassIsomorphism, Conjugator};
use affgebra::verify::{self, CheckId, CheckReport, RunOptions};
use affgebra::wire::{self, MatrixJson};
use affgebra::{AlgebraError, Field};

pyo3::create_exception!(affgebra_py, AffgebraError, PyValueError);

fn err(e: AlgebraError) -> PyErr {
    AffgebraError::new_err(e.to_string())
}

fn field(tag: &str, p: Option<u64>) -> PyResult<Field> {
    Field::from_tag(tag, p).map_err(err)
}

fn conjugator(via: Option<&str>, spec: &CoreSpec) -> PyResult<Conjugator> {
    match via {
        None => Ok(Conjugator::default_for(spec)),
        Some("P") | Some("p") => Ok(Conjugator::P),
        Some("U") | Some("u") => Ok(Conjugator::U),
        Some(other) => Err(AffgebraError::new_err(format!("unknown conjugator `{other}`"))),
    }
}

fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn report<'py>(py: Python<'py>, r: &CheckReport) -> PyResult<Bound<'py, PyAny>> {
    loads(py, &r.to_json())
}

/// Exact square matrix over Q, Q(i), GF(p) or a surd field.
#[pyclass(module = "affgebra_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Matrix(affgebra::Matrix);

#[pymethods]
impl Matrix {
    /// Entries are strings (`"1/3"`, `"2-i"`, `"sqrt(2)"`) or ints.
    #[new]
    #[pyo3(signature = (rows, field = "Q", p = None))]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>, field: &str, p: Option<u64>) -> PyResult<Self> {
        let f = self::field(field, p)?;
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| f.parse_scalar(&x.str()?.to_cow()?).map_err(err))
                    .collect::<PyResult<Vec<_>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        affgebra::Matrix::from_rows(f, rows).map(Matrix).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        wire::matrix_from_json(text).map(Matrix).map_err(err)
    }

    fn to_json(&self) -> String {
        wire::matrix_to_json(&self.0)
    }

    #[staticmethod]
    #[pyo3(signature = (size, field = "Q", p = None))]
    fn identity(size: usize, field: &str, p: Option<u64>) -> PyResult<Self> {
        Ok(Matrix(affgebra::Matrix::identity(self::field(field, p)?, size)))
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    /// Rows of entry strings.
    fn entries(&self) -> Vec<Vec<String>> {
        MatrixJson::from(&self.0).entries
    }

    fn trace(&self) -> String {
        self.0.trace().to_string()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Matrix).map_err(err)
    }

    fn dagger(&self) -> Self {
        Matrix(self.0.dagger())
    }

    fn __matmul__(&self, other: &Matrix) -> PyResult<Self> {
        (&self.0 * &other.0).map(Matrix).map_err(err)
    }

    fn __add__(&self, other: &Matrix) -> PyResult<Self> {
        (&self.0 + &other.0).map(Matrix).map_err(err)
    }

    fn __sub__(&self, other: &Matrix) -> PyResult<Self> {
        (&self.0 - &other.0).map(Matrix).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({})", self.to_json())
    }
}

/// One of the matrix affgebras gna, sna, ona, una, suna or ga_c.
#[pyclass(module = "affgebra_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct ClassSpec(CoreSpec);

#[pymethods]
impl ClassSpec {
    /// `field` defaults to Q, or Qi for una and suna.
    #[new]
    #[pyo3(signature = (kind, n, field = None, p = None, c = None))]
    fn new(kind: &str, n: usize, field: Option<&str>, p: Option<u64>, c: Option<&str>) -> PyResult<Self> {
        let default = match kind.to_ascii_lowercase().as_str() {
            "una" | "suna" => "Qi",
            _ => "Q",
        };
        let f = self::field(field.unwrap_or(default), p)?;
        let kind = wire::parse_class_kind(kind, c, f).map_err(err)?;
        CoreSpec::new(kind, n, f).map(ClassSpec).map_err(err)
    }

    fn dimension(&self) -> PyResult<usize> {
        self.0.dimension().map_err(err)
    }

    fn contains(&self, m: &Matrix) -> PyResult<bool> {
        self.0.contains(&m.0).map_err(err)
    }

    /// Name of the first violated constraint, if any.
    fn violation(&self, m: &Matrix) -> PyResult<Option<String>> {
        self.0.violation(&m.0).map_err(err)
    }

    fn base_point(&self) -> PyResult<Matrix> {
        self.0.base_point().map(|e| Matrix(e.into_value())).map_err(err)
    }

    #[pyo3(signature = (seed = 0, count = 1))]
    fn sample(&self, seed: u64, count: u64) -> PyResult<Vec<Matrix>> {
        let sampler = Sampler::new(self.0.clone()).map_err(err)?;
        (0..count)
            .map(|i| sampler.sample(seed, i).map(|e| Matrix(e.into_value())).map_err(err))
            .collect()
    }

    /// Image of `m` in the block algebra.
    #[pyo3(signature = (m, via = None))]
    fn to_blocks(&self, m: &Matrix, via: Option<&str>) -> PyResult<Matrix> {
        let iso = ClassIsomorphism::new(&self.0, conjugator(via, &self.0)?).map_err(err)?;
        iso.to_blocks(&m.0).map(Matrix).map_err(err)
    }

    #[pyo3(signature = (y, via = None))]
    fn pull_back(&self, y: &Matrix, via: Option<&str>) -> PyResult<Matrix> {
        let iso = ClassIsomorphism::new(&self.0, conjugator(via, &self.0)?).map_err(err)?;
        iso.pull_back(&y.0).map(Matrix).map_err(err)
    }

    fn to_json(&self) -> String {
        wire::class_to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("ClassSpec({})", self.0)
    }
}

/// `P`, `Pinv` or `U` of size n+1.
#[pyfunction]
#[pyo3(signature = (which, n, field = "Q", p = None))]
fn emit_matrix(which: &str, n: usize, field: &str, p: Option<u64>) -> PyResult<Matrix> {
    let f = self::field(field, p)?;
    let m = match which {
        "P" => transforms::build_p(n, f),
        "Pinv" => transforms::build_p_inverse(n, f).map_err(err)?,
        "U" => transforms::build_u(n),
        other => return Err(AffgebraError::new_err(format!("unknown matrix `{other}`"))),
    };
    Ok(Matrix(m))
}

#[pyfunction]
fn heap(a: &Matrix, b: &Matrix, c: &Matrix) -> PyResult<Matrix> {
    affine::heap(&a.0, &b.0, &c.0).map(Matrix).map_err(err)
}

/// `alpha ▷_base b`.
#[pyfunction]
fn action(alpha: &str, base: &Matrix, b: &Matrix) -> PyResult<Matrix> {
    let alpha = base.0.field().parse_scalar(alpha).map_err(err)?;
    affine::action(&alpha, &base.0, &b.0).map(Matrix).map_err(err)
}

/// `kind` is `"commutator"` or `"zeta:<value>"`.
#[pyfunction]
#[pyo3(signature = (a, b, kind = "commutator"))]
fn bracket(a: &Matrix, b: &Matrix, kind: &str) -> PyResult<Matrix> {
    let kind = wire::parse_bracket(kind, a.0.field()).map_err(err)?;
    affine::bracket(&kind, &a.0, &b.0).map(Matrix).map_err(err)
}

/// Lie bracket of the retract at `o`.
#[pyfunction]
#[pyo3(signature = (o, a, b, kind = "commutator"))]
fn retract(o: &Matrix, a: &Matrix, b: &Matrix, kind: &str) -> PyResult<Matrix> {
    let kind = wire::parse_bracket(kind, o.0.field()).map_err(err)?;
    affine::lie_retract_bracket(&kind, &o.0, &a.0, &b.0).map(Matrix).map_err(err)
}

#[pyfunction]
fn checks() -> Vec<&'static str> {
    CheckId::ALL.iter().map(|c| c.name()).collect()
}

#[pyfunction]
#[pyo3(signature = (check, spec, kind = "commutator", seed = 0, trials = None, inject_fault = false))]
fn run_check<'py>(
    py: Python<'py>,
    check: &str,
    spec: &ClassSpec,
    kind: &str,
    seed: u64,
    trials: Option<usize>,
    inject_fault: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let check = CheckId::parse(check).map_err(err)?;
    let kind = wire::parse_bracket(kind, spec.0.field()).map_err(err)?;
    let opts = RunOptions { trials, inject_fault, ..RunOptions::default() };
    let r = py.detach(|| verify::run_check(check, &spec.0, &kind, seed, &opts)).map_err(err)?;
    report(py, &r)
}

/// Every applicable check on one class; returns a list of report dicts.
#[pyfunction]
#[pyo3(signature = (spec, kind = "commutator", seed = 0, trials = None))]
fn verify_all<'py>(
    py: Python<'py>,
    spec: &ClassSpec,
    kind: &str,
    seed: u64,
    trials: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let kind = wire::parse_bracket(kind, spec.0.field()).map_err(err)?;
    let opts = RunOptions { trials, ..RunOptions::default() };
    let specs = [spec.0.clone()];
    let reports = py
        .detach(|| verify::run_all(&specs, &[kind], &CheckId::ALL, seed, &opts))
        .map_err(err)?;
    reports.iter().map(|r| report(py, r)).collect()
}

#[pyfunction]
#[pyo3(signature = (spec, seed = 0, samples = 50, via = None))]
fn verify_theorem<'py>(
    py: Python<'py>,
    spec: &ClassSpec,
    seed: u64,
    samples: usize,
    via: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let via = conjugator(via, &spec.0)?;
    let r = py.detach(|| verify::verify_theorem(&spec.0, seed, samples, Some(via))).map_err(err)?;
    report(py, &r)
}

/// Re-evaluates the counterexample in a report (JSON string); true if it still fails.
#[pyfunction]
fn replay(report_json: &str) -> PyResult<bool> {
    let r = CheckReport::from_json(report_json).map_err(err)?;
    verify::replay_report(&r).map(|o| o.reproduced).map_err(err)
}

#[pymodule]
fn affgebra_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AffgebraError", m.py().get_type::<AffgebraError>())?;
    m.add_class::<Matrix>()?;
    m.add_class::<ClassSpec>()?;
    m.add_function(wrap_pyfunction!(emit_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(heap, m)?)?;
    m.add_function(wrap_pyfunction!(action, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(retract, m)?)?;
    m.add_function(wrap_pyfunction!(checks, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    Ok(())
}
