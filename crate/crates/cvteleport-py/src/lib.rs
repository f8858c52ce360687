//! Python bindings for the teleportation-fidelity library.
//!
//! Resource kinds are passed as strings (`"tmsv"`, `"psub"`, `"padd"`),
//! phase-space arguments as Python complex numbers.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cvteleport::{
    ChannelParams, FockOracleSpec, QuadratureSpec, ResourceKind, ResourceSpec, SweepQuantity,
    SweepSpec, SweepVariable, TwoModePhasePoint,
};

fn to_py_err(e: cvteleport::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn resource(kind: &str, lam: f64) -> PyResult<ResourceSpec> {
    let kind: ResourceKind = kind.parse().map_err(to_py_err)?;
    ResourceSpec::new(kind, lam).map_err(to_py_err)
}

fn channel(g: f64, r2: f64, tau: f64, nth: f64) -> PyResult<ChannelParams> {
    ChannelParams::new(g, r2, tau, nth).map_err(to_py_err)
}

/// Squeezing parameter lambda = tanh(r).
#[pyfunction]
fn lambda_from_r(r: f64) -> PyResult<f64> {
    Ok(cvteleport::lambda_from_r(r).map_err(to_py_err)?.lambda())
}

/// Closed-form EPR variance Delta(x1 - x2)^2.
#[pyfunction]
fn epr_variance(kind: &str, lam: f64) -> PyResult<f64> {
    Ok(cvteleport::epr_variance(&resource(kind, lam)?))
}

/// EPR variance from the truncated Fock-space series.
#[pyfunction]
#[pyo3(signature = (kind, lam, cutoff = 200))]
fn epr_variance_fock(kind: &str, lam: f64, cutoff: usize) -> PyResult<f64> {
    cvteleport::epr_variance_fock(&resource(kind, lam)?, &FockOracleSpec { cutoff })
        .map_err(to_py_err)
}

/// Squeezing at which the EPR variance crosses 1 (photon-added only).
#[pyfunction]
fn epr_crossover(kind: &str) -> PyResult<f64> {
    let kind: ResourceKind = kind.parse().map_err(to_py_err)?;
    cvteleport::epr_crossover(kind).map_err(to_py_err)
}

/// Normalized Fock amplitudes as `(coefficients, photon_offset)`.
#[pyfunction]
fn fock_amplitudes(kind: &str, lam: f64, cutoff: usize) -> PyResult<(Vec<f64>, usize)> {
    let amps = cvteleport::fock_amplitudes(&resource(kind, lam)?, cutoff).map_err(to_py_err)?;
    Ok((amps.coeffs().to_vec(), amps.offset()))
}

/// Closed-form teleportation fidelity for a coherent input.
#[pyfunction]
#[pyo3(signature = (kind, lam, g = 1.0, r2 = 0.0, tau = 0.0, nth = 0.0, alpha = Complex64::new(1.0, 0.0)))]
#[allow(clippy::too_many_arguments)]
fn fidelity(
    kind: &str,
    lam: f64,
    g: f64,
    r2: f64,
    tau: f64,
    nth: f64,
    alpha: Complex64,
) -> PyResult<f64> {
    let report =
        cvteleport::fidelity_closed_form(&resource(kind, lam)?, &channel(g, r2, tau, nth)?, alpha)
            .map_err(to_py_err)?;
    Ok(report.closed_form)
}

/// Fidelity with benchmark flags; `verify=True` adds the quadrature oracle.
#[pyfunction]
#[pyo3(signature = (kind, lam, g = 1.0, r2 = 0.0, tau = 0.0, nth = 0.0, alpha = Complex64::new(1.0, 0.0), verify = false))]
#[allow(clippy::too_many_arguments)]
fn fidelity_report(
    py: Python<'_>,
    kind: &str,
    lam: f64,
    g: f64,
    r2: f64,
    tau: f64,
    nth: f64,
    alpha: Complex64,
    verify: bool,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let spec = resource(kind, lam)?;
    let ch = channel(g, r2, tau, nth)?;
    let mut report = cvteleport::fidelity_closed_form(&spec, &ch, alpha).map_err(to_py_err)?;
    if verify {
        let quad = cvteleport::fidelity_quadrature(&spec, &ch, alpha, &QuadratureSpec::default())
            .map_err(to_py_err)?;
        report = report.with_oracle(quad.value);
    }
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("closed_form", report.closed_form)?;
    dict.set_item("oracle", report.oracle)?;
    dict.set_item("discrepancy", report.discrepancy)?;
    dict.set_item("beats_classical", report.beats_classical)?;
    dict.set_item("beats_no_cloning", report.beats_no_cloning)?;
    Ok(dict.unbind())
}

/// Noiseless-protocol fidelity.
#[pyfunction]
fn fidelity_ideal(kind: &str, lam: f64) -> PyResult<f64> {
    Ok(cvteleport::fidelity_ideal(&resource(kind, lam)?))
}

/// Brute-force fidelity by 2-D quadrature of the overlap integral.
#[pyfunction]
#[pyo3(signature = (kind, lam, g = 1.0, r2 = 0.0, tau = 0.0, nth = 0.0, alpha = Complex64::new(1.0, 0.0)))]
#[allow(clippy::too_many_arguments)]
fn fidelity_quadrature(
    kind: &str,
    lam: f64,
    g: f64,
    r2: f64,
    tau: f64,
    nth: f64,
    alpha: Complex64,
) -> PyResult<f64> {
    let r = cvteleport::fidelity_quadrature(
        &resource(kind, lam)?,
        &channel(g, r2, tau, nth)?,
        alpha,
        &QuadratureSpec::default(),
    )
    .map_err(to_py_err)?;
    Ok(r.value)
}

/// Thermal phase-space covariance Gamma of the channel.
#[pyfunction]
#[pyo3(signature = (g = 1.0, r2 = 0.0, tau = 0.0, nth = 0.0))]
fn gamma_thermal(g: f64, r2: f64, tau: f64, nth: f64) -> PyResult<f64> {
    Ok(cvteleport::gamma_thermal(&channel(g, r2, tau, nth)?))
}

/// Characteristic function of the coherent state `|alpha>` at `gamma`.
#[pyfunction]
fn chi_coherent(alpha: Complex64, gamma: Complex64) -> Complex64 {
    cvteleport::chi_coherent(alpha, cvteleport::PhasePoint::new(gamma))
}

/// Two-mode characteristic function of the resource at `(alpha, beta)`.
#[pyfunction]
fn chi_resource(kind: &str, lam: f64, alpha: Complex64, beta: Complex64) -> PyResult<Complex64> {
    Ok(cvteleport::chi_resource(
        &resource(kind, lam)?,
        TwoModePhasePoint::new(alpha, beta),
    ))
}

/// Fock-series oracle for the resource characteristic function.
#[pyfunction]
#[pyo3(signature = (kind, lam, alpha, beta, cutoff = 80))]
fn chi_resource_fock(
    kind: &str,
    lam: f64,
    alpha: Complex64,
    beta: Complex64,
    cutoff: usize,
) -> PyResult<Complex64> {
    cvteleport::chi_resource_fock(
        &resource(kind, lam)?,
        TwoModePhasePoint::new(alpha, beta),
        &FockOracleSpec { cutoff },
    )
    .map_err(to_py_err)
}

/// Finite-difference oracle for the subtraction/addition operators.
#[pyfunction]
#[pyo3(signature = (kind, lam, alpha, beta, step = 1e-3))]
fn lambda_operator_fd(
    kind: &str,
    lam: f64,
    alpha: Complex64,
    beta: Complex64,
    step: f64,
) -> PyResult<Complex64> {
    let spec = resource(kind, lam)?;
    cvteleport::lambda_operator_fd(
        spec.kind,
        TwoModePhasePoint::new(alpha, beta),
        step,
        spec.squeeze,
    )
    .map_err(to_py_err)
}

/// Characteristic function of the teleported output state.
#[pyfunction]
#[pyo3(signature = (kind, lam, g, r2, tau, nth, input_alpha, gamma))]
#[allow(clippy::too_many_arguments)]
fn chi_output(
    kind: &str,
    lam: f64,
    g: f64,
    r2: f64,
    tau: f64,
    nth: f64,
    input_alpha: Complex64,
    gamma: Complex64,
) -> PyResult<Complex64> {
    Ok(cvteleport::chi_output(
        &resource(kind, lam)?,
        &channel(g, r2, tau, nth)?,
        input_alpha,
        cvteleport::PhasePoint::new(gamma),
    ))
}

/// Displaced-Fock matrix element `<m|D(gamma)|n>`.
#[pyfunction]
fn displaced_fock_element(m: usize, n: usize, gamma: Complex64) -> Complex64 {
    cvteleport::displaced_fock_element(m, n, gamma)
}

/// Golden-section maximization of the fidelity over the gain; returns
/// `(g_star, f_star)`.
#[pyfunction]
#[pyo3(signature = (kind, lam, r2 = 0.0, tau = 0.0, nth = 0.0, alpha = Complex64::new(1.0, 0.0), bounds = (0.0, 3.0)))]
#[allow(clippy::too_many_arguments)]
fn optimize_gain(
    kind: &str,
    lam: f64,
    r2: f64,
    tau: f64,
    nth: f64,
    alpha: Complex64,
    bounds: (f64, f64),
) -> PyResult<(f64, f64)> {
    cvteleport::optimize_gain(
        &resource(kind, lam)?,
        &channel(1.0, r2, tau, nth)?,
        alpha,
        bounds,
    )
    .map_err(to_py_err)
}

/// Tabulate a quantity over a parameter grid; returns `(header, rows)`.
#[pyfunction]
#[pyo3(signature = (quantity, var, lo, hi, steps, kinds = vec!["tmsv".into(), "psub".into(), "padd".into()], lam = 0.5, g = 1.0, r2 = 0.0, tau = 0.0, nth = 0.0, alpha = 1.0))]
#[allow(clippy::too_many_arguments)]
fn run_sweep(
    quantity: &str,
    var: &str,
    lo: f64,
    hi: f64,
    steps: usize,
    kinds: Vec<String>,
    lam: f64,
    g: f64,
    r2: f64,
    tau: f64,
    nth: f64,
    alpha: f64,
) -> PyResult<(Vec<String>, Vec<Vec<f64>>)> {
    let quantity = match quantity {
        "fidelity" => SweepQuantity::Fidelity,
        "ideal-fidelity" => SweepQuantity::IdealFidelity,
        "epr-variance" => SweepQuantity::EprVariance,
        other => return Err(PyValueError::new_err(format!("unknown quantity `{other}`"))),
    };
    let variable = match var {
        "lambda" => SweepVariable::Lambda,
        "tau" => SweepVariable::Tau,
        "r2" => SweepVariable::ReflectivitySquared,
        "gain" => SweepVariable::Gain,
        "alpha" => SweepVariable::Alpha,
        other => return Err(PyValueError::new_err(format!("unknown variable `{other}`"))),
    };
    let kinds: Vec<ResourceKind> = kinds
        .iter()
        .map(|k| k.parse().map_err(to_py_err))
        .collect::<PyResult<_>>()?;
    let table = cvteleport::run_sweep(&SweepSpec {
        variable,
        lo,
        hi,
        steps,
        kinds,
        quantity,
        fixed_lambda: lam,
        fixed_channel: channel(g, r2, tau, nth)?,
        fixed_alpha: Complex64::new(alpha, 0.0),
    })
    .map_err(to_py_err)?;
    Ok((table.header, table.rows))
}

#[pymodule]
fn cvteleport_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(lambda_from_r, m)?)?;
    m.add_function(wrap_pyfunction!(epr_variance, m)?)?;
    m.add_function(wrap_pyfunction!(epr_variance_fock, m)?)?;
    m.add_function(wrap_pyfunction!(epr_crossover, m)?)?;
    m.add_function(wrap_pyfunction!(fock_amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity_report, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_thermal, m)?)?;
    m.add_function(wrap_pyfunction!(chi_coherent, m)?)?;
    m.add_function(wrap_pyfunction!(chi_resource, m)?)?;
    m.add_function(wrap_pyfunction!(chi_resource_fock, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_operator_fd, m)?)?;
    m.add_function(wrap_pyfunction!(chi_output, m)?)?;
    m.add_function(wrap_pyfunction!(displaced_fock_element, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_gain, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add("CLASSICAL_BENCHMARK", cvteleport::CLASSICAL_BENCHMARK)?;
    m.add("NO_CLONING_BENCHMARK", cvteleport::NO_CLONING_BENCHMARK)?;
    m.add("LAMBDA_MAX", cvteleport::LAMBDA_MAX)?;
    Ok(())
}
