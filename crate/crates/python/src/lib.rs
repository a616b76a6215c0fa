//! Python bindings: `import springer_traces`.
//!
//! Partitions are passed as a list of ints or as text (`"2,2,1,1"`), series
//! as `"B"`, `"C"` or `"D"`, and component-group elements as text (`"z2*z4"`).

use num_bigint::BigInt;
use pyo3::{exceptions::PyValueError, prelude::*, types::PyDict};
use springer_core as core;
use springer_core::{ComponentElement, Series};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum PartitionArg {
    Parts(Vec<u32>),
    Text(String),
}

impl PartitionArg {
    fn parse(self) -> PyResult<core::Partition> {
        match self {
            PartitionArg::Parts(parts) => core::Partition::new(parts),
            PartitionArg::Text(text) => text.parse(),
        }
        .map_err(err)
    }
}

fn parse_series(text: &str) -> PyResult<Series> {
    text.parse().map_err(err)
}

fn element(text: &str) -> PyResult<ComponentElement> {
    text.parse().map_err(err)
}

/// `(partition, z, poly, very_even)`.
type TableRow = (Vec<u32>, String, PyPoly, bool);
/// `(coeff, child, child_z)`; `child` is `None` for null terms.
type Term = (PyPoly, Option<Vec<u32>>, String);

/// Exact polynomial with rational coefficients.
#[pyclass(
    name = "Poly",
    module = "springer_traces",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyPoly(core::Poly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPoly).map_err(err)
    }

    /// Coefficients as strings (`"3"`, `"-1/2"`), lowest degree first.
    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.0.coeff_strings()
    }

    /// Integer coefficients, lowest degree first, or `None` if some is not integral.
    fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.0.integer_coeffs()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    /// Value at an integer, as `(numerator, denominator)`.
    fn eval(&self, x: i64) -> (BigInt, BigInt) {
        let v = self.0.eval_integer(x);
        (v.numer().clone(), v.denom().clone())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// Memoized evaluator; reuse one instance across many queries.
#[pyclass(name = "Evaluator", module = "springer_traces", frozen)]
struct PyEvaluator(core::Evaluator);

#[pymethods]
impl PyEvaluator {
    #[new]
    fn new() -> Self {
        PyEvaluator(core::Evaluator::new())
    }

    #[pyo3(signature = (series, partition, z = "id"))]
    fn graded_trace(&self, series: &str, partition: PartitionArg, z: &str) -> PyResult<PyPoly> {
        let s = parse_series(series)?;
        self.0
            .graded_trace(&partition.parse()?, &element(z)?, s)
            .map(PyPoly)
            .map_err(err)
    }

    fn betti_numbers(&self, series: &str, partition: PartitionArg) -> PyResult<Vec<BigInt>> {
        self.0
            .betti_numbers(&partition.parse()?, parse_series(series)?)
            .map_err(err)
    }

    /// Rows `(partition, z, poly, very_even)` for every valid pair at rank `n`.
    fn full_table(&self, series: &str, n: usize) -> PyResult<Vec<TableRow>> {
        let rows = self.0.full_table(parse_series(series)?, n).map_err(err)?;
        Ok(rows
            .into_iter()
            .map(|r| {
                (
                    r.partition.parts().to_vec(),
                    r.z.to_string(),
                    PyPoly(r.poly),
                    r.very_even,
                )
            })
            .collect())
    }

    fn __len__(&self) -> usize {
        self.0.memo_len()
    }
}

/// `{"valid", "very_even", "reason"}` for a partition in a series.
#[pyfunction]
fn validate<'py>(
    py: Python<'py>,
    series: &str,
    partition: PartitionArg,
) -> PyResult<Bound<'py, PyDict>> {
    let report = partition.parse()?.validate(parse_series(series)?);
    let dict = PyDict::new(py);
    dict.set_item("valid", report.valid)?;
    dict.set_item("very_even", report.very_even)?;
    dict.set_item("reason", report.reason)?;
    Ok(dict)
}

/// Elements of `A(λ)` as text, identity first.
#[pyfunction]
fn component_group(series: &str, partition: PartitionArg) -> PyResult<Vec<String>> {
    let s = parse_series(series)?;
    let lambda = partition.parse()?;
    lambda.ensure_valid(s).map_err(err)?;
    Ok(core::enumerate_a(&lambda, s)
        .iter()
        .map(ToString::to_string)
        .collect())
}

#[pyfunction]
#[pyo3(signature = (series, partition, z = "id"))]
fn graded_trace(series: &str, partition: PartitionArg, z: &str) -> PyResult<PyPoly> {
    PyEvaluator::new().graded_trace(series, partition, z)
}

#[pyfunction]
fn betti_numbers(series: &str, partition: PartitionArg) -> PyResult<Vec<BigInt>> {
    PyEvaluator::new().betti_numbers(series, partition)
}

#[pyfunction]
fn full_table(py: Python<'_>, series: &str, n: usize) -> PyResult<Vec<TableRow>> {
    let evaluator = PyEvaluator::new();
    py.detach(|| evaluator.full_table(series, n))
}

/// One restriction step as `(coeff, child, child_z)` triples; `child` is
/// `None` for null terms.
#[pyfunction]
#[pyo3(signature = (series, partition, z = "id"))]
fn expand_restriction(series: &str, partition: PartitionArg, z: &str) -> PyResult<Vec<Term>> {
    let expansion =
        core::expand_restriction(&partition.parse()?, &element(z)?, parse_series(series)?)
            .map_err(err)?;
    Ok(expansion
        .terms
        .into_iter()
        .map(|t| {
            let child = t.child.as_partition().map(|p| p.parts().to_vec());
            (PyPoly(t.coeff), child, t.child_z.to_string())
        })
        .collect())
}

/// Counts `F`-stable (or `z̃∘F`-stable) flags over `F_q` and compares with
/// `Q_q(λ, z)`.
#[pyfunction]
#[pyo3(signature = (series, partition, z = "id", q = 3))]
fn verify<'py>(
    py: Python<'py>,
    series: &str,
    partition: PartitionArg,
    z: &str,
    q: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let (s, lambda, z) = (parse_series(series)?, partition.parse()?, element(z)?);
    let report = py.detach(|| core::verify(&lambda, &z, s, q)).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("count", report.count)?;
    dict.set_item("predicted", report.predicted)?;
    dict.set_item("matched", report.matched)?;
    dict.set_item("mirror_count", report.mirror_count)?;
    Ok(dict)
}

#[pymodule]
fn springer_traces(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyEvaluator>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(component_group, m)?)?;
    m.add_function(wrap_pyfunction!(graded_trace, m)?)?;
    m.add_function(wrap_pyfunction!(betti_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(full_table, m)?)?;
    m.add_function(wrap_pyfunction!(expand_restriction, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
