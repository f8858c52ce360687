//! Independent brute-force verifiers for the closed-form results: 2-D
//! phase-space quadrature of the fidelity overlap integral, a
//! finite-difference realization of the photon subtraction/addition
//! operators, and truncated Fock-space series for characteristic functions
//! and EPR variances.
//!
//! Everything here is O(grid^2) or O(cutoff^2); these routines exist for
//! trust, not throughput, and stay out of the sweep hot paths.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::charfunc::ChannelParams;
use crate::charfunc::{chi_coherent, chi_output, KernelCoeffs, PhasePoint, TwoModePhasePoint};
use crate::error::{Error, Result};
use crate::states::{fock_amplitudes, ResourceKind, ResourceSpec, SqueezingParam};

/// Required magnitude of the integrand on the truncation boundary.
pub const BOUNDARY_LIMIT: f64 = 1e-12;
/// Allowed change between successive grid refinements.
pub const CONVERGENCE_LIMIT: f64 = 1e-7;
/// Allowed imaginary residual of the (real) fidelity integral.
pub const IMAG_RESIDUAL_LIMIT: f64 = 1e-8;
/// Allowed truncated tail in Fock-space sums.
pub const TAIL_LIMIT: f64 = 1e-9;

/// Square integration domain `[-L, L]^2` in `(Re gamma, Im gamma)`, Simpson
/// weights, plus a number of grid-doubling convergence checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub half_width: f64,
    pub points_per_axis: usize,
    pub refinements: usize,
}

impl QuadratureSpec {
    pub fn new(half_width: f64, points_per_axis: usize, refinements: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::Domain(format!(
                "quadrature half width must be finite and positive, got {half_width}"
            )));
        }
        if points_per_axis < 16 {
            return Err(Error::Domain(format!(
                "quadrature needs at least 16 points per axis, got {points_per_axis}"
            )));
        }
        if refinements < 1 {
            return Err(Error::Domain(
                "at least one grid refinement is required".into(),
            ));
        }
        Ok(Self {
            half_width,
            points_per_axis,
            refinements,
        })
    }
}

impl Default for QuadratureSpec {
    /// The integrand decays like `exp(-2 S |gamma|^2)` with `S` bounded well
    /// above 0.25 on the supported parameter domain, so `[-8, 8]^2` leaves a
    /// boundary magnitude far below 1e-12.
    fn default() -> Self {
        Self {
            half_width: 8.0,
            points_per_axis: 401,
            refinements: 1,
        }
    }
}

/// Quadrature value plus the diagnostics produced alongside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// |imaginary part| of the final integral estimate.
    pub imag_residual: f64,
    /// |difference| between the last two refinement estimates.
    pub convergence: f64,
}

/// Composite 2-D Simpson rule over `[-L, L]^2` for the overlap integrand.
/// Rows are evaluated in parallel but summed in index order, so the result
/// is identical run to run.
fn simpson_overlap(
    spec: &ResourceSpec,
    ch: &ChannelParams,
    input_alpha: Complex64,
    half_width: f64,
    points: usize,
) -> Complex64 {
    let n = points | 1; // Simpson needs an odd point count
    let h = 2.0 * half_width / (n - 1) as f64;
    let weight = |i: usize| -> f64 {
        if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let rows: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let re = -half_width + i as f64 * h;
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let im = -half_width + j as f64 * h;
                let gamma = Complex64::new(re, im);
                let v = chi_coherent(input_alpha, PhasePoint::new(gamma))
                    * chi_output(spec, ch, input_alpha, PhasePoint::new(-gamma));
                acc += weight(j) * v;
            }
            weight(i) * acc
        })
        .collect();
    let total: Complex64 = rows.iter().sum();
    total * (h / 3.0) * (h / 3.0) / std::f64::consts::PI
}

/// Brute-force fidelity: numerically integrates
/// `(1/pi) int d^2 gamma chi_in(gamma) chi_out(-gamma)` over the truncated
/// square, with a boundary check up front and Richardson-style refinement
/// checks after.
pub fn fidelity_quadrature(
    spec: &ResourceSpec,
    ch: &ChannelParams,
    input_alpha: Complex64,
    q: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let l = q.half_width;
    let boundary = [
        Complex64::new(l, 0.0),
        Complex64::new(-l, 0.0),
        Complex64::new(0.0, l),
        Complex64::new(0.0, -l),
        Complex64::new(l, l),
        Complex64::new(l, -l),
        Complex64::new(-l, l),
        Complex64::new(-l, -l),
    ];
    let magnitude = boundary
        .iter()
        .map(|&g| {
            (chi_coherent(input_alpha, PhasePoint::new(g))
                * chi_output(spec, ch, input_alpha, PhasePoint::new(-g)))
            .norm()
        })
        .fold(0.0f64, f64::max);
    if magnitude >= BOUNDARY_LIMIT {
        return Err(Error::BoxTooSmall {
            magnitude,
            limit: BOUNDARY_LIMIT,
        });
    }

    let mut points = q.points_per_axis | 1;
    let mut estimate = simpson_overlap(spec, ch, input_alpha, l, points);
    let mut delta = f64::INFINITY;
    for _ in 0..q.refinements {
        points = 2 * points - 1;
        let refined = simpson_overlap(spec, ch, input_alpha, l, points);
        delta = (refined - estimate).norm();
        if delta > CONVERGENCE_LIMIT {
            return Err(Error::Convergence {
                coarse: estimate.re,
                fine: refined.re,
                delta,
            });
        }
        estimate = refined;
    }

    let imag_residual = estimate.im.abs();
    if imag_residual >= IMAG_RESIDUAL_LIMIT {
        return Err(Error::Convergence {
            coarse: estimate.re,
            fine: estimate.re,
            delta: imag_residual,
        });
    }
    Ok(QuadratureResult {
        value: estimate.re,
        imag_residual,
        convergence: delta,
    })
}

/// exp(z) - 1 without cancellation for small z.
fn cexp_m1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    Complex64::new(
        x.exp_m1() * y.cos() - 2.0 * (y / 2.0).sin().powi(2),
        x.exp() * y.sin(),
    )
}

/// Exact increment of the kernel exponent,
/// `phi(a + da, b + db) - phi(a, b)` for
/// `phi = A(|a|^2 + |b|^2) + B(ab + a*b*)`. Every term carries a factor of
/// `da` or `db`, so the increment is formed without cancellation.
fn kernel_exponent_increment(
    kc: KernelCoeffs,
    a: Complex64,
    b: Complex64,
    da: Complex64,
    db: Complex64,
) -> Complex64 {
    let (ac, bc) = (a.conj(), b.conj());
    let (dac, dbc) = (da.conj(), db.conj());
    kc.a * (a * dac + ac * da + da * dac + b * dbc + bc * db + db * dbc)
        + kc.b * (a * db + b * da + da * db + ac * dbc + bc * dac + dac * dbc)
}

/// One-mode operator applied by central differences to kernel ratios.
///
/// `ratios[k]` holds `K(.. + offs[k])/K(..) - 1` for the five stencil
/// offsets `[0, +h, -h, +ih, -ih]`; the Wirtinger derivatives are assembled
/// as `d/dz = (dx - i dy)/2`, `d/dz* = (dx + i dy)/2`.
fn stencil_apply(kind: ResourceKind, z: Complex64, h: f64, ratios: [Complex64; 5]) -> Complex64 {
    let [r0, rxp, rxm, ryp, rym] = ratios;
    let h2 = h * h;
    // second differences of (K/K0 - 1) equal those of K/K0 since the
    // weights sum to zero
    let dxx = (rxp - 2.0 * r0 + rxm) / h2;
    let dyy = (ryp - 2.0 * r0 + rym) / h2;
    let d_zzc = (dxx + dyy) / 4.0;
    match kind {
        ResourceKind::PhotonSubtracted => d_zzc,
        ResourceKind::PhotonAdded => {
            let dx = (rxp - rxm) / (2.0 * h);
            let dy = (ryp - rym) / (2.0 * h);
            let dz = (dx - Complex64::i() * dy) / 2.0;
            let dzc = (dx + Complex64::i() * dy) / 2.0;
            let f0 = r0 + 1.0;
            -d_zzc + z * dz + z.conj() * dzc + (1.0 - z * z.conj()) * f0
        }
        ResourceKind::Tmsv => r0 + 1.0,
    }
}

/// `[Lambda(a) Lambda(b) K](a0, b0) / K(a0, b0)` by central differences.
fn fd_operator_ratio(
    kind: ResourceKind,
    kc: KernelCoeffs,
    a0: Complex64,
    b0: Complex64,
    h: f64,
) -> Complex64 {
    let offs = [
        Complex64::new(0.0, 0.0),
        Complex64::new(h, 0.0),
        Complex64::new(-h, 0.0),
        Complex64::new(0.0, h),
        Complex64::new(0.0, -h),
    ];
    // inner operator in beta at alpha offset da, relative to K(a0+da, b0)
    let inner = |da: Complex64| -> Complex64 {
        let base = kernel_exponent_increment(kc, a0, b0, da, Complex64::new(0.0, 0.0));
        let ratios = offs.map(|db| cexp_m1(kernel_exponent_increment(kc, a0, b0, da, db) - base));
        stencil_apply(kind, b0, h, ratios)
    };
    // outer operator in alpha, relative to K(a0, b0)
    let values = offs.map(|da| {
        let scale = kernel_exponent_increment(kc, a0, b0, da, Complex64::new(0.0, 0.0)).exp();
        inner(da) * scale
    });
    let [v0, vxp, vxm, vyp, vym] = values;
    let h2 = h * h;
    let dxx = (vxp - 2.0 * v0 + vxm) / h2;
    let dyy = (vyp - 2.0 * v0 + vym) / h2;
    let d_zzc = (dxx + dyy) / 4.0;
    match kind {
        ResourceKind::PhotonSubtracted => d_zzc,
        ResourceKind::PhotonAdded => {
            let dx = (vxp - vxm) / (2.0 * h);
            let dy = (vyp - vym) / (2.0 * h);
            let dz = (dx - Complex64::i() * dy) / 2.0;
            let dzc = (dx + Complex64::i() * dy) / 2.0;
            -d_zzc + a0 * dz + a0.conj() * dzc + (1.0 - a0 * a0.conj()) * v0
        }
        ResourceKind::Tmsv => v0,
    }
}

/// Finite-difference realization of the resource characteristic function:
/// applies the subtraction/addition operator pair to the Gaussian kernel by
/// central differences in the Wirtinger convention, restores the vacuum
/// factor and normalizes by the value at the origin. `Tmsv` applies the
/// identity and reproduces the Gaussian directly.
///
/// Truncation error is O(step^2); the kernel ratios are formed from exact
/// exponent increments so roundoff stays far below the truncation term.
pub fn lambda_operator_fd(
    kind: ResourceKind,
    pt: TwoModePhasePoint,
    step: f64,
    squeeze: SqueezingParam,
) -> Result<Complex64> {
    if !(1e-5..=1e-2).contains(&step) {
        return Err(Error::Domain(format!(
            "finite-difference step must lie in [1e-5, 1e-2], got {step}"
        )));
    }
    let kc = KernelCoeffs::new(squeeze);
    let num = fd_operator_ratio(kind, kc, pt.alpha, pt.beta, step);
    let den = fd_operator_ratio(
        kind,
        kc,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        step,
    );
    let kernel = kernel_exponent_increment(
        kc,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        pt.alpha,
        pt.beta,
    )
    .exp();
    let vacuum = (-0.5 * (pt.alpha.norm_sqr() + pt.beta.norm_sqr())).exp();
    Ok(num * kernel / den * vacuum)
}

const LN_FACTORIAL_TABLE: usize = 512;

fn ln_factorial(n: usize) -> f64 {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACTORIAL_TABLE);
        t.push(0.0);
        for k in 1..LN_FACTORIAL_TABLE {
            t.push(t[k - 1] + (k as f64).ln());
        }
        t
    });
    if n < table.len() {
        table[n]
    } else {
        (table.len()..=n).map(|k| (k as f64).ln()).sum::<f64>() + table[table.len() - 1]
    }
}

/// Associated Laguerre polynomial L_n^(k)(x) by the three-term recurrence.
fn laguerre(n: usize, k: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + k - x;
    for i in 1..n {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + k - x) * cur - (i + k) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Displaced-Fock matrix element `<m|D(gamma)|n>`.
///
/// For `m >= n` this is
/// `sqrt(n!/m!) gamma^(m-n) e^(-|gamma|^2/2) L_n^(m-n)(|gamma|^2)`, with the
/// magnitude assembled in log space so it stays finite for `m, n` in the
/// hundreds; the opposite ordering follows from
/// `<m|D(gamma)|n> = <n|D(-gamma)|m>*`.
pub fn displaced_fock_element(m: usize, n: usize, gamma: Complex64) -> Complex64 {
    if m < n {
        return displaced_fock_element(n, m, -gamma).conj();
    }
    let k = m - n;
    let x = gamma.norm_sqr();
    if gamma == Complex64::new(0.0, 0.0) {
        return if k == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let log_mag =
        0.5 * (ln_factorial(n) - ln_factorial(m)) + k as f64 * gamma.norm().ln() - 0.5 * x;
    let phase = Complex64::from_polar(1.0, k as f64 * gamma.arg());
    log_mag.exp() * phase * laguerre(n, k as f64, x)
}

/// Fock-space truncation control for the series oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOracleSpec {
    pub cutoff: usize,
}

impl Default for FockOracleSpec {
    fn default() -> Self {
        Self {
            cutoff: crate::states::DEFAULT_FOCK_CUTOFF,
        }
    }
}

impl FockOracleSpec {
    /// Upper bound on the norm this truncation drops for the given
    /// resource; the same bound gates every series evaluation against
    /// [`TAIL_LIMIT`].
    pub fn tail_bound(&self, spec: &ResourceSpec) -> f64 {
        tail_bound(spec, self.cutoff, 0)
    }
}

/// Geometric bound on the weighted norm tail
/// `sum_{n >= cutoff} c_n^2 (n + offset + 1)^w`: the term ratio decreases in
/// `n`, so the tail is dominated by a geometric series started at the first
/// dropped term. With `w = 0` this bounds the norm deficit, which scales
/// like `lambda^(2 cutoff)`.
fn tail_bound(spec: &ResourceSpec, cutoff: usize, weight_power: i32) -> f64 {
    let l = spec.lambda();
    if l == 0.0 {
        return 0.0;
    }
    let (offset, poly_weight) = match spec.kind {
        ResourceKind::Tmsv => (0usize, 0),
        ResourceKind::PhotonSubtracted => (0, 2),
        ResourceKind::PhotonAdded => (1, 2),
    };
    let n = cutoff as f64;
    let first_sq = match spec.kind {
        ResourceKind::Tmsv => (1.0 - l * l) * l.powi(2 * cutoff as i32),
        _ => (1.0 - l * l).powi(3) / (1.0 + l * l) * l.powi(2 * cutoff as i32) * (n + 1.0).powi(2),
    };
    let first = first_sq * (n + offset as f64 + 1.0).powi(weight_power);
    // sup over n >= cutoff of the squared-term ratio
    let ratio = l
        * l
        * ((n + 2.0) / (n + 1.0)).powi(poly_weight)
        * ((n + offset as f64 + 2.0) / (n + offset as f64 + 1.0)).powi(weight_power);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    first / (1.0 - ratio)
}

/// Resource characteristic function evaluated as a truncated Fock-space
/// double series over displaced-Fock matrix elements.
pub fn chi_resource_fock(
    spec: &ResourceSpec,
    pt: TwoModePhasePoint,
    f: &FockOracleSpec,
) -> Result<Complex64> {
    let cutoff = f.cutoff;
    let bound = tail_bound(spec, cutoff, 0);
    if bound.is_nan() || bound >= TAIL_LIMIT {
        return Err(Error::Cutoff {
            cutoff,
            tail: bound,
            limit: TAIL_LIMIT,
        });
    }
    let amps = fock_amplitudes(spec, cutoff)?;
    let c = amps.coeffs();
    let off = amps.offset();
    let da: Vec<Vec<Complex64>> = (0..cutoff)
        .map(|m| {
            (0..cutoff)
                .map(|n| displaced_fock_element(m + off, n + off, pt.alpha))
                .collect()
        })
        .collect();
    let db: Vec<Vec<Complex64>> = (0..cutoff)
        .map(|m| {
            (0..cutoff)
                .map(|n| displaced_fock_element(m + off, n + off, pt.beta))
                .collect()
        })
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..cutoff {
        for n in 0..cutoff {
            acc += c[m] * c[n] * da[m][n] * db[m][n];
        }
    }
    Ok(acc)
}

/// EPR variance assembled from Fock-space moments:
/// `Delta(x1 - x2)^2 = 1 + 2 <n> - 2 <ab>` with
/// `<n> = sum c_n^2 (n + off)` and `<ab> = sum c_(n-1) c_n (n + off)`
/// (first moments vanish for all three states).
pub fn epr_variance_fock(spec: &ResourceSpec, f: &FockOracleSpec) -> Result<f64> {
    let cutoff = f.cutoff;
    // the moments carry linear photon-number weights; a factor 4 covers the
    // 2<n> + 2<ab> combination
    let tail = 4.0 * tail_bound(spec, cutoff, 1);
    if tail.is_nan() || tail >= TAIL_LIMIT {
        return Err(Error::Cutoff {
            cutoff,
            tail,
            limit: TAIL_LIMIT,
        });
    }
    let amps = fock_amplitudes(spec, cutoff)?;
    let c = amps.coeffs();
    let off = amps.offset() as f64;
    let mut nbar = 0.0;
    let mut ab = 0.0;
    for n in 0..cutoff {
        let w = n as f64 + off;
        nbar += c[n] * c[n] * w;
        if n >= 1 {
            ab += c[n - 1] * c[n] * w;
        }
    }
    Ok(1.0 + 2.0 * nbar - 2.0 * ab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfunc::chi_resource;
    use crate::fidelity::closed_form_value;
    use crate::states::epr_variance;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(kind: ResourceKind, lambda: f64) -> ResourceSpec {
        ResourceSpec::new(kind, lambda).unwrap()
    }

    fn squeeze(lambda: f64) -> SqueezingParam {
        SqueezingParam::from_lambda(lambda).unwrap()
    }

    #[test]
    fn displaced_fock_basics() {
        let g = c(0.6, -0.3);
        assert_abs_diff_eq!(
            displaced_fock_element(0, 0, g).re,
            (-0.5 * g.norm_sqr()).exp(),
            epsilon = 1e-15
        );
        assert_eq!(displaced_fock_element(3, 3, c(0.0, 0.0)), c(1.0, 0.0));
        assert_eq!(displaced_fock_element(2, 5, c(0.0, 0.0)), c(0.0, 0.0));
        // L_1^(0)(x) = 1 - x
        let x = g.norm_sqr();
        let expect = (1.0 - x) * (-0.5 * x).exp();
        let v = displaced_fock_element(1, 1, g);
        assert_abs_diff_eq!(v.re, expect, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn displaced_fock_symmetry_and_unitarity() {
        let g = c(0.8, 0.5);
        let a = displaced_fock_element(2, 6, g);
        let b = displaced_fock_element(6, 2, -g).conj();
        assert!((a - b).norm() < 1e-14);
        // row of a unitary: sum_n |<3|D|n>|^2 = 1
        let total: f64 = (0..80)
            .map(|n| displaced_fock_element(3, n, g).norm_sqr())
            .sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn displaced_fock_large_indices_stay_finite() {
        let v = displaced_fock_element(300, 280, c(1.5, -2.0));
        assert!(v.re.is_finite() && v.im.is_finite());
    }

    #[test]
    fn fd_step_domain() {
        let pt = TwoModePhasePoint::new(c(0.1, 0.0), c(0.0, 0.1));
        assert!(
            lambda_operator_fd(ResourceKind::PhotonSubtracted, pt, 1e-6, squeeze(0.5)).is_err()
        );
        assert!(lambda_operator_fd(ResourceKind::PhotonSubtracted, pt, 0.1, squeeze(0.5)).is_err());
    }

    #[test]
    fn fd_normalized_at_origin() {
        let pt = TwoModePhasePoint::new(c(0.0, 0.0), c(0.0, 0.0));
        for kind in [ResourceKind::PhotonSubtracted, ResourceKind::PhotonAdded] {
            let v = lambda_operator_fd(kind, pt, 1e-3, squeeze(0.5)).unwrap();
            assert!((v - c(1.0, 0.0)).norm() < 1e-9, "{kind}: {v}");
        }
    }

    #[test]
    fn fd_matches_analytic_expansion() {
        let pt = TwoModePhasePoint::new(c(0.3, 0.1), c(0.0, -0.2));
        for kind in [ResourceKind::PhotonSubtracted, ResourceKind::PhotonAdded] {
            for &l in &[0.2, 0.5, 0.8] {
                let s = spec(kind, l);
                let fd = lambda_operator_fd(kind, pt, 1e-3, s.squeeze).unwrap();
                let an = chi_resource(&s, pt);
                assert!((fd - an).norm() < 1e-6, "{kind} lambda={l}: {fd} vs {an}");
            }
        }
    }

    #[test]
    fn fd_added_at_zero_squeezing_gives_laguerre_form() {
        let (a, b) = (c(0.7, 0.2), c(0.0, -0.3));
        let fd = lambda_operator_fd(
            ResourceKind::PhotonAdded,
            TwoModePhasePoint::new(a, b),
            1e-3,
            squeeze(0.0),
        )
        .unwrap();
        let expect = (1.0 - a.norm_sqr())
            * (1.0 - b.norm_sqr())
            * (-0.5 * (a.norm_sqr() + b.norm_sqr())).exp();
        assert!((fd - c(expect, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn fd_truncation_is_second_order() {
        // in the truncation-dominated regime halving the step cuts the
        // error by ~4
        let pt = TwoModePhasePoint::new(c(0.3, 0.1), c(0.0, -0.2));
        for kind in [ResourceKind::PhotonSubtracted, ResourceKind::PhotonAdded] {
            let s = spec(kind, 0.8);
            let exact = chi_resource(&s, pt);
            let e_coarse = (lambda_operator_fd(kind, pt, 4e-3, s.squeeze).unwrap() - exact).norm();
            let e_fine = (lambda_operator_fd(kind, pt, 2e-3, s.squeeze).unwrap() - exact).norm();
            let ratio = e_coarse / e_fine;
            assert!((3.0..5.0).contains(&ratio), "{kind}: ratio {ratio}");
        }
    }

    #[test]
    fn fock_series_normalized_at_origin() {
        let origin = TwoModePhasePoint::new(c(0.0, 0.0), c(0.0, 0.0));
        let f = FockOracleSpec { cutoff: 60 };
        for kind in ResourceKind::ALL {
            let v = chi_resource_fock(&spec(kind, 0.5), origin, &f).unwrap();
            assert!((v - c(1.0, 0.0)).norm() < 1e-10, "{kind}: {v}");
        }
    }

    #[test]
    fn fock_series_matches_gaussian_closed_form() {
        let f = FockOracleSpec { cutoff: 60 };
        let pt = TwoModePhasePoint::new(c(0.5, 0.0), c(0.5, 0.0));
        let series = chi_resource_fock(&spec(ResourceKind::Tmsv, 0.5), pt, &f).unwrap();
        let closed = chi_resource(&spec(ResourceKind::Tmsv, 0.5), pt);
        assert!((series - closed).norm() < 1e-7);
    }

    #[test]
    fn fock_series_matches_analytic_expansions() {
        let f = FockOracleSpec { cutoff: 60 };
        let pts = [
            TwoModePhasePoint::new(c(0.9, 0.4), c(-0.6, 1.1)),
            TwoModePhasePoint::new(c(-1.2, 0.3), c(0.2, -0.8)),
            TwoModePhasePoint::new(c(0.1, -1.4), c(1.0, 0.5)),
            TwoModePhasePoint::new(c(1.4, 1.4), c(-1.4, 1.4)),
        ];
        for kind in [ResourceKind::PhotonSubtracted, ResourceKind::PhotonAdded] {
            for &l in &[0.5, 0.8] {
                let s = spec(kind, l);
                for pt in pts {
                    let series = chi_resource_fock(&s, pt, &f).unwrap();
                    let closed = chi_resource(&s, pt);
                    assert!(
                        (series - closed).norm() < 1e-7,
                        "{kind} lambda={l}: {series} vs {closed}"
                    );
                }
            }
        }
    }

    #[test]
    fn fock_cutoff_guard_trips() {
        let f = FockOracleSpec { cutoff: 10 };
        let pt = TwoModePhasePoint::new(c(0.5, 0.0), c(0.5, 0.0));
        assert!(matches!(
            chi_resource_fock(&spec(ResourceKind::Tmsv, 0.9), pt, &f),
            Err(Error::Cutoff { .. })
        ));
        assert!(matches!(
            epr_variance_fock(&spec(ResourceKind::PhotonAdded, 0.9), &f),
            Err(Error::Cutoff { .. })
        ));
    }

    #[test]
    fn reported_tail_bound_tracks_the_truncation() {
        // the bound dominates the measured deficit and decays with cutoff
        for kind in ResourceKind::ALL {
            let s = spec(kind, 0.8);
            let tight = FockOracleSpec { cutoff: 60 }.tail_bound(&s);
            let loose = FockOracleSpec { cutoff: 30 }.tail_bound(&s);
            let deficit = fock_amplitudes(&s, 60).unwrap().norm_deficit();
            assert!(tight < loose, "{kind}");
            assert!(tight >= deficit, "{kind}: bound {tight} < deficit {deficit}");
            assert!(tight < super::TAIL_LIMIT, "{kind}: {tight}");
        }
    }

    #[test]
    fn epr_fock_known_values() {
        let f = FockOracleSpec { cutoff: 200 };
        assert_abs_diff_eq!(
            epr_variance_fock(&spec(ResourceKind::Tmsv, 0.0), &f).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            epr_variance_fock(&spec(ResourceKind::PhotonSubtracted, 0.5), &f).unwrap(),
            0.2,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            epr_variance_fock(&spec(ResourceKind::PhotonAdded, 0.5), &f).unwrap(),
            0.6,
            epsilon = 1e-8
        );
    }

    #[test]
    fn epr_fock_matches_closed_forms() {
        let f = FockOracleSpec { cutoff: 200 };
        for kind in ResourceKind::ALL {
            for i in 0..=9 {
                let l = i as f64 * 0.1;
                let s = spec(kind, l);
                let series = epr_variance_fock(&s, &f).unwrap();
                assert_abs_diff_eq!(series, epr_variance(&s), epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn quadrature_reproduces_ideal_values() {
        let q = QuadratureSpec::default();
        let ideal = ChannelParams::ideal();
        let r =
            fidelity_quadrature(&spec(ResourceKind::Tmsv, 0.0), &ideal, c(1.0, 0.0), &q).unwrap();
        assert_abs_diff_eq!(r.value, 0.5, epsilon = 1e-7);
        let r =
            fidelity_quadrature(&spec(ResourceKind::Tmsv, 0.5), &ideal, c(1.0, 0.0), &q).unwrap();
        assert_abs_diff_eq!(r.value, 0.75, epsilon = 1e-6);
        assert!(r.imag_residual < 1e-8);
        assert!(r.convergence < 1e-7);
    }

    #[test]
    fn quadrature_matches_closed_form_off_ideal() {
        let q = QuadratureSpec::default();
        let ch = ChannelParams::new(1.0, 0.5, 0.0, 0.0).unwrap();
        let s = spec(ResourceKind::PhotonSubtracted, 0.3);
        let r = fidelity_quadrature(&s, &ch, c(1.0, 0.0), &q).unwrap();
        assert_abs_diff_eq!(
            r.value,
            closed_form_value(&s, &ch, c(1.0, 0.0)),
            epsilon = 1e-6
        );
    }

    #[test]
    fn quadrature_boundary_guard_trips() {
        let q = QuadratureSpec::new(2.0, 101, 1).unwrap();
        let r = fidelity_quadrature(
            &spec(ResourceKind::Tmsv, 0.5),
            &ChannelParams::ideal(),
            c(2.0, 0.0),
            &q,
        );
        assert!(matches!(r, Err(Error::BoxTooSmall { .. })));
    }

    #[test]
    fn quadrature_spec_validation() {
        assert!(QuadratureSpec::new(0.0, 101, 1).is_err());
        assert!(QuadratureSpec::new(8.0, 8, 1).is_err());
        assert!(QuadratureSpec::new(8.0, 101, 0).is_err());
    }
}
