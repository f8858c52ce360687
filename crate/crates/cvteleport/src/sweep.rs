//! Parameter sweeps over the protocol knobs, bisection for the EPR
//! crossover, and golden-section maximization of the fidelity over the gain.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::charfunc::ChannelParams;
use crate::error::{Error, Result};
use crate::fidelity::{closed_form_value, fidelity_ideal};
use crate::states::{epr_variance, ResourceKind, ResourceSpec, LAMBDA_MAX};

/// Which knob a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Lambda,
    Tau,
    ReflectivitySquared,
    Gain,
    Alpha,
}

impl SweepVariable {
    pub fn label(&self) -> &'static str {
        match self {
            SweepVariable::Lambda => "lambda",
            SweepVariable::Tau => "tau",
            SweepVariable::ReflectivitySquared => "r2",
            SweepVariable::Gain => "gain",
            SweepVariable::Alpha => "alpha",
        }
    }
}

/// What a sweep evaluates per grid point and resource kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    Fidelity,
    IdealFidelity,
    EprVariance,
}

/// A sweep over a uniform grid: one row per grid value, one column per
/// resource kind, everything else held at the `fixed` values.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub kinds: Vec<ResourceKind>,
    pub quantity: SweepQuantity,
    /// Resource squeezing used when `variable != Lambda`.
    pub fixed_lambda: f64,
    /// Channel used when the swept variable leaves it untouched.
    pub fixed_channel: ChannelParams,
    /// Input amplitude used when `variable != Alpha`.
    pub fixed_alpha: Complex64,
}

/// Tabulated sweep output: `header[0]` names the swept variable, the
/// remaining columns are the requested kinds in order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn evaluate_cell(spec: &SweepSpec, kind: ResourceKind, value: f64) -> Result<f64> {
    let lambda = match spec.variable {
        SweepVariable::Lambda => value,
        _ => spec.fixed_lambda,
    };
    let resource = ResourceSpec::new(kind, lambda)?;
    match spec.quantity {
        SweepQuantity::EprVariance => Ok(epr_variance(&resource)),
        SweepQuantity::IdealFidelity => Ok(fidelity_ideal(&resource)),
        SweepQuantity::Fidelity => {
            let ch = &spec.fixed_channel;
            let channel = match spec.variable {
                SweepVariable::Tau => {
                    ChannelParams::new(ch.gain(), ch.reflectivity_sq(), value, ch.n_th())?
                }
                SweepVariable::ReflectivitySquared => {
                    ChannelParams::new(ch.gain(), value, ch.tau(), ch.n_th())?
                }
                SweepVariable::Gain => ch.with_gain(value)?,
                _ => *ch,
            };
            let alpha = match spec.variable {
                SweepVariable::Alpha => Complex64::new(value, 0.0),
                _ => spec.fixed_alpha,
            };
            Ok(closed_form_value(&resource, &channel, alpha))
        }
    }
}

/// Run the sweep on a uniform grid of `steps` points including both ends.
/// Rows are evaluated in parallel and assembled in grid order, so the output
/// is identical run to run. Any cell failure aborts the sweep and names the
/// offending parameter point.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    if !(spec.lo.is_finite() && spec.hi.is_finite() && spec.lo < spec.hi) {
        return Err(Error::Domain(format!(
            "sweep range must satisfy lo < hi, got [{}, {}]",
            spec.lo, spec.hi
        )));
    }
    if spec.steps < 2 {
        return Err(Error::Domain(format!(
            "sweep needs at least 2 steps, got {}",
            spec.steps
        )));
    }
    if spec.kinds.is_empty() {
        return Err(Error::Domain(
            "sweep needs at least one resource kind".into(),
        ));
    }
    for (i, kind) in spec.kinds.iter().enumerate() {
        if spec.kinds[..i].contains(kind) {
            return Err(Error::Domain(format!("duplicate resource kind `{kind}`")));
        }
    }

    let mut header = Vec::with_capacity(1 + spec.kinds.len());
    header.push(spec.variable.label().to_string());
    header.extend(spec.kinds.iter().map(|k| k.label().to_string()));

    let step = (spec.hi - spec.lo) / (spec.steps - 1) as f64;
    let rows: Result<Vec<Vec<f64>>> = (0..spec.steps)
        .into_par_iter()
        .map(|i| {
            let value = spec.lo + i as f64 * step;
            let mut row = Vec::with_capacity(1 + spec.kinds.len());
            row.push(value);
            for &kind in &spec.kinds {
                let cell = evaluate_cell(spec, kind, value).map_err(|e| {
                    Error::Domain(format!(
                        "sweep cell failed at {} = {value}, kind `{kind}`: {e}",
                        spec.variable.label()
                    ))
                })?;
                if !cell.is_finite() {
                    return Err(Error::Domain(format!(
                        "sweep cell not finite at {} = {value}, kind `{kind}`",
                        spec.variable.label()
                    )));
                }
                row.push(cell);
            }
            Ok(row)
        })
        .collect();
    Ok(SweepTable {
        header,
        rows: rows?,
    })
}

/// Bisection tolerance of [`epr_crossover`].
pub const CROSSOVER_TOL: f64 = 1e-10;

/// The squeezing at which the EPR variance crosses the vacuum value 1.
///
/// Only the photon-added resource starts above 1 and crosses it (at the root
/// of `l^3 - l^2 + 3l - 1`); the other two stay below 1 on all of `(0, 1)`
/// and yield [`Error::NoCrossover`].
pub fn epr_crossover(kind: ResourceKind) -> Result<f64> {
    let f = |l: f64| epr_variance(&ResourceSpec::new(kind, l).unwrap()) - 1.0;
    let mut lo = 1e-12;
    let mut hi = LAMBDA_MAX;
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoCrossover(kind));
    }
    while hi - lo > CROSSOVER_TOL {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section tolerance of [`optimize_gain`] (in `g`).
pub const GAIN_TOL: f64 = 1e-8;

/// Maximize the closed-form fidelity over the gain `g` on `bounds` by
/// golden-section search; returns `(g_star, f_star)`.
///
/// The search returns the golden-section stationary point; detecting
/// non-unimodal objectives is out of scope.
pub fn optimize_gain(
    spec: &ResourceSpec,
    ch_except_g: &ChannelParams,
    input_alpha: Complex64,
    bounds: (f64, f64),
) -> Result<(f64, f64)> {
    let (mut a, mut b) = bounds;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!(
            "gain bounds must satisfy lo < hi, got ({a}, {b})"
        )));
    }
    if a < 0.0 || b > 5.0 {
        return Err(Error::Domain(format!(
            "gain bounds must lie within [0, 5], got ({a}, {b})"
        )));
    }
    let eval = |g: f64| -> Result<f64> {
        Ok(closed_form_value(
            spec,
            &ch_except_g.with_gain(g)?,
            input_alpha,
        ))
    };

    const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while b - a > GAIN_TOL {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
    }
    let g_star = if f1 > f2 { x1 } else { x2 };
    Ok((g_star, eval(g_star)?))
}
