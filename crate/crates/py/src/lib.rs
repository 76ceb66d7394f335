//! Python bindings: Pauli operators, catalog codes, schedules and decoders.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use tsc::code::verify_code;
use tsc::decoder::{judge, sample_depolarizing, AnnealParams, DecoderContext, DecoderKind};
use tsc::experiment::run_trials;
use tsc::lattice::{load_lattice, save_lattice};
use tsc::measurement::{measurement_counts, synthesize_schedule};
use tsc::{BitVec, CodeInstance, Lattice, LatticeSpec};

fn err(e: tsc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Phase-free n-qubit Pauli operator.
#[pyclass(name = "PauliOp", module = "tsc_py", eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPauliOp {
    inner: tsc::PauliOp,
}

#[pymethods]
impl PyPauliOp {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPauliOp { inner: text.parse().map_err(err)? })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyPauliOp { inner: tsc::PauliOp::identity(n) }
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed))]
    fn depolarizing(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        Ok(PyPauliOp { inner: sample_depolarizing(n, p, seed).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn weight(&self) -> usize {
        self.inner.weight()
    }

    fn anticommutes(&self, other: &PyPauliOp) -> PyResult<bool> {
        self.inner.anticommutes(&other.inner).map_err(err)
    }

    fn __mul__(&self, other: &PyPauliOp) -> PyResult<PyPauliOp> {
        Ok(PyPauliOp { inner: self.inner.mul(&other.inner).map_err(err)? })
    }

    fn __getitem__(&self, q: usize) -> PyResult<char> {
        if q >= self.inner.n() {
            return Err(PyIndexError::new_err(q));
        }
        Ok(self.inner.get(q).to_char())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PauliOp('{}')", self.inner)
    }
}

/// Subsystem code built from a catalog lattice or a lattice file.
#[pyclass(name = "Code", module = "tsc_py")]
struct PyCode {
    inner: CodeInstance,
    lattice: Lattice,
}

impl PyCode {
    fn from_lattice(lattice: Lattice) -> PyResult<Self> {
        Ok(PyCode { inner: CodeInstance::build(&lattice).map_err(err)?, lattice })
    }

    fn from_spec(spec: LatticeSpec) -> PyResult<Self> {
        Self::from_lattice(Lattice::generate(spec).map_err(err)?)
    }

    fn ctx(&self) -> PyResult<DecoderContext<'_>> {
        DecoderContext::new(&self.inner).map_err(err)
    }
}

fn decoder_kind(name: &str) -> PyResult<DecoderKind> {
    name.parse().map_err(err)
}

#[pymethods]
impl PyCode {
    #[staticmethod]
    fn five_squares(n: usize) -> PyResult<Self> {
        Self::from_spec(LatticeSpec::FiveSquares { n })
    }

    #[staticmethod]
    fn honeycomb(lx: usize, ly: usize) -> PyResult<Self> {
        Self::from_spec(LatticeSpec::Honeycomb { lx, ly })
    }

    #[staticmethod]
    fn square_octagon(lx: usize, ly: usize) -> PyResult<Self> {
        Self::from_spec(LatticeSpec::SquareOctagon { lx, ly })
    }

    /// Parses the text of a lattice file.
    #[staticmethod]
    fn load(text: &str) -> PyResult<Self> {
        Self::from_lattice(load_lattice(text).map_err(err)?)
    }

    fn save(&self) -> String {
        save_lattice(&self.lattice)
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn num_stabilizers(&self) -> usize {
        self.inner.stabilizers().len()
    }

    fn stabilizer_roles(&self) -> Vec<String> {
        self.inner.stabilizers().iter().map(|c| c.role.to_string()).collect()
    }

    fn stabilizer(&self, s: usize) -> PyResult<PyPauliOp> {
        if s >= self.inner.stabilizers().len() {
            return Err(PyIndexError::new_err(s));
        }
        Ok(PyPauliOp { inner: self.inner.stabilizer_op(s) })
    }

    /// Bare logicals in the order X̄1, Z̄1, X̄2, Z̄2, ...
    fn logicals(&self) -> Vec<PyPauliOp> {
        self.inner.logical_ops().into_iter().map(|inner| PyPauliOp { inner }).collect()
    }

    fn gauge_generators(&self) -> Vec<PyPauliOp> {
        self.inner.gauge_generators().into_iter().map(|inner| PyPauliOp { inner }).collect()
    }

    fn syndrome(&self, e: &PyPauliOp) -> PyResult<Vec<bool>> {
        let s = self.inner.syndrome(&e.inner).map_err(err)?;
        Ok((0..s.len()).map(|i| s.get(i)).collect())
    }

    /// Returns (passed, report text).
    fn verify(&self) -> (bool, String) {
        let r = verify_code(&self.inner);
        (r.ok(), r.to_string())
    }

    fn measurement_counts(&self) -> PyResult<BTreeMap<String, usize>> {
        Ok(measurement_counts(&self.inner).map_err(err)?.into_iter().map(|(r, c)| (r.to_string(), c)).collect())
    }

    /// Link ids of the stabilizer's schedule, one list per level.
    fn schedule(&self, s: usize) -> PyResult<Vec<Vec<usize>>> {
        if s >= self.inner.stabilizers().len() {
            return Err(PyIndexError::new_err(s));
        }
        Ok(synthesize_schedule(&self.inner, s).map_err(err)?.levels)
    }

    /// Correction for a syndrome with the named decoder (simple, improved, anneal).
    #[pyo3(signature = (syndrome, decoder = "improved", seed = 0))]
    fn decode(&self, syndrome: Vec<bool>, decoder: &str, seed: u64) -> PyResult<PyPauliOp> {
        let ctx = self.ctx()?;
        let d = ctx.decode(decoder_kind(decoder)?, &BitVec::from_bools(&syndrome), seed, &AnnealParams::default()).map_err(err)?;
        Ok(PyPauliOp { inner: d.correction })
    }

    /// True when the correction leaves a trivial logical class.
    fn judge(&self, error: &PyPauliOp, correction: &PyPauliOp) -> PyResult<bool> {
        Ok(judge(&self.inner, &error.inner, &correction.inner).map_err(err)?.success)
    }

    /// Returns (trials, failures) for i.i.d. depolarizing noise.
    #[pyo3(signature = (p, trials, decoder = "improved", seed = 1))]
    fn run_trials(&self, py: Python<'_>, p: f64, trials: usize, decoder: &str, seed: u64) -> PyResult<(usize, usize)> {
        let kind = decoder_kind(decoder)?;
        let ctx = self.ctx()?;
        let st = py.detach(|| run_trials(&ctx, p, trials, kind, seed, &AnnealParams::default())).map_err(err)?;
        Ok((st.trials, st.failures))
    }

    fn __repr__(&self) -> String {
        let fam = self.inner.family().map_or("custom".to_string(), |f| f.to_string());
        format!("Code({fam}, qubits={}, k={})", self.inner.num_qubits(), self.inner.k())
    }
}

#[pymodule]
fn tsc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauliOp>()?;
    m.add_class::<PyCode>()?;
    Ok(())
}
