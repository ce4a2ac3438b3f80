//! Python bindings: model types, the main verification checks and the
//! JSON suite runner.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dressed_core::encoded::{self, Basis, EncodedBlock, GateSpec};
use dressed_core::{exchange, harness, leakage, nonseparable, sampling, su2};

fn py_err(e: dressed_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "DMVector", frozen, from_py_object)]
#[derive(Clone)]
struct PyDMVector(exchange::DMVector);

#[pymethods]
impl PyDMVector {
    #[new]
    fn new(d: [f64; 3]) -> PyResult<Self> {
        exchange::DMVector::new(d).map(Self).map_err(py_err)
    }

    #[getter]
    fn d(&self) -> [f64; 3] {
        self.0.d()
    }

    #[getter]
    fn d_abs(&self) -> f64 {
        self.0.d_abs()
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.0.epsilon()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma()
    }

    #[getter]
    fn axis(&self) -> Option<[f64; 3]> {
        self.0.axis()
    }

    /// Largest of the three exchange-dressing residuals for coupling `j`.
    #[pyo3(signature = (j = 1.0))]
    fn exchange_residual(&self, j: f64) -> f64 {
        exchange::verify_exchange_dressing(&exchange::ExchangePair::two_spin(j, self.0)).max()
    }

    fn __repr__(&self) -> String {
        let [x, y, z] = self.0.d();
        format!("DMVector([{x}, {y}, {z}])")
    }
}

#[pyclass(name = "LeakageModel", frozen)]
struct PyLeakageModel(leakage::LeakageModel);

#[pymethods]
impl PyLeakageModel {
    #[new]
    #[pyo3(signature = (n_levels, f, deltas, energies = (1.0, 2.0)))]
    fn new(n_levels: usize, f: f64, deltas: Vec<Complex64>, energies: (f64, f64)) -> PyResult<Self> {
        leakage::LeakageModel::new(n_levels, f, deltas, energies)
            .map(Self)
            .map_err(py_err)
    }

    #[getter]
    fn n_levels(&self) -> usize {
        self.0.n_levels()
    }

    #[getter]
    fn kappa_abs(&self) -> f64 {
        self.0.kappa_abs()
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.0.phi()
    }

    fn h1_dressing_residual(&self) -> f64 {
        leakage::verify_h1_dressing(&self.0)
    }

    fn identity_residual(&self, delta: f64) -> PyResult<f64> {
        let t = leakage::leakage_triple(&self.0).map_err(py_err)?;
        su2::dressing_identity_residual(&t, delta).map_err(py_err)
    }

    fn phase_gate_residual(&self) -> f64 {
        leakage::phase_gate_check(&self.0).residual
    }
}

#[pyclass(name = "RingModel", frozen)]
struct PyRingModel(nonseparable::RingModel);

#[pymethods]
impl PyRingModel {
    #[new]
    #[pyo3(signature = (n_qubits, delta, fy = 1.0))]
    fn new(n_qubits: usize, delta: f64, fy: f64) -> PyResult<Self> {
        nonseparable::RingModel::new(n_qubits, delta, fy).map(Self).map_err(py_err)
    }

    fn residual(&self, k: usize) -> PyResult<f64> {
        nonseparable::residual(&self.0, k).map_err(py_err)
    }

    fn residual_scaling(&self, k: usize, deltas: Vec<f64>) -> PyResult<Vec<f64>> {
        nonseparable::residual_scaling(&self.0, k, &deltas).map_err(py_err)
    }
}

/// Exchange pairs (1-based) usable as encoded gates.
#[pyfunction]
fn allowed_pairs(n_blocks: usize) -> Vec<(usize, usize)> {
    encoded::allowed_pairs(n_blocks)
}

/// Dressed-basis vs ideal-basis matrix-element gap of one exchange gate.
#[pyfunction]
#[pyo3(signature = (pair, theta, dm, probe_seed = 0))]
fn gate_equivalence(pair: (usize, usize), theta: f64, dm: PyDMVector, probe_seed: u64) -> PyResult<f64> {
    let g = GateSpec::new(pair, theta, Basis::Actual);
    encoded::verify_gate_equivalence(&g, &dm.0, probe_seed).map_err(py_err)
}

/// Residual of a seeded random circuit on `n_blocks` encoded qubits.
#[pyfunction]
#[pyo3(signature = (dm, depth, seed, n_blocks = 2))]
fn circuit_residual(dm: PyDMVector, depth: usize, seed: u64, n_blocks: usize) -> PyResult<f64> {
    let mut rng = sampling::stream_rng(seed, 0);
    let c = encoded::random_circuit(&mut rng, n_blocks, depth);
    Ok(encoded::simulate_circuit(&c, &dm.0).map_err(py_err)?.equivalence_residual)
}

/// `(angle, residual)` of the swap-angle scan.
#[pyfunction]
fn swap_angle() -> (f64, f64) {
    let s = encoded::find_swap_angle();
    (s.angle, s.residual)
}

#[pyfunction]
fn relocation_residual(theta: f64) -> PyResult<f64> {
    encoded::relocate_34_to_15(theta, encoded::find_swap_angle().angle).map_err(py_err)
}

/// `(overlap, singlet probability, degenerate)` for the prepared dressed
/// `|0_L⟩`.
#[pyfunction]
#[pyo3(signature = (dm, b_field = 0.5, j = 1.0))]
fn prepare_logical_zero(dm: PyDMVector, b_field: f64, j: f64) -> PyResult<(f64, f64, bool)> {
    let block = EncodedBlock::along_dm(1, &dm.0).map_err(py_err)?;
    let prep = encoded::prepare_logical_zero(&dm.0, j, b_field, &block).map_err(py_err)?;
    let p = encoded::singlet_measurement_probability(&prep.state, &dm.0, &block).map_err(py_err)?;
    Ok((prep.overlap, p, prep.degenerate))
}

/// Runs the verification suites for a JSON scenario and returns the JSON
/// report. Raises `ValueError` on an invalid scenario.
#[pyfunction]
#[pyo3(signature = (config_json = "{}"))]
fn run_suite(py: Python<'_>, config_json: &str) -> PyResult<String> {
    let cfg = harness::parse_config(config_json).map_err(py_err)?;
    let report = py.detach(|| harness::run_suite(&cfg));
    Ok(report.to_json())
}

#[pymodule]
fn dressed_qubits(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDMVector>()?;
    m.add_class::<PyLeakageModel>()?;
    m.add_class::<PyRingModel>()?;
    m.add_function(wrap_pyfunction!(allowed_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(gate_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(circuit_residual, m)?)?;
    m.add_function(wrap_pyfunction!(swap_angle, m)?)?;
    m.add_function(wrap_pyfunction!(relocation_residual, m)?)?;
    m.add_function(wrap_pyfunction!(prepare_logical_zero, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
