//! Characteristic functions: input coherent state, the three entangled
//! resources, and the composed output state of the realistic protocol.
//!
//! The non-Gaussian resources are handled through precomputed analytic
//! expansions of the photon subtraction/addition operators acting on the
//! Gaussian kernel; the expansions sit in the inner loop of quadrature and
//! sweeps, so runtime symbolic differentiation is out. A finite-difference
//! oracle in [`crate::oracle`] guards the derivation.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{ResourceKind, ResourceSpec, SqueezingParam};

/// A single-mode phase-space point, canonically the complex displacement
/// `gamma`. The real quadrature pair is `x = (gamma + gamma*)/sqrt(2)`,
/// `p = (gamma - gamma*)/(i sqrt(2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    gamma: Complex64,
}

impl PhasePoint {
    pub fn new(gamma: Complex64) -> Self {
        Self { gamma }
    }

    /// Build from the real quadrature pair `(x, p)`.
    pub fn from_xp(x: f64, p: f64) -> Self {
        Self {
            gamma: Complex64::new(x, p) * FRAC_1_SQRT_2,
        }
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn x(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.gamma.re
    }

    pub fn p(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.gamma.im
    }
}

/// Arguments of a two-mode characteristic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModePhasePoint {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl TwoModePhasePoint {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }
}

/// Knobs of the realistic protocol: Bob's displacement gain `g`, the
/// reflectivity squared `R^2` of the measurement beam splitter
/// (`T^2 + R^2 = 1`), the reduced exposure `tau` of Bob's mode to the damping
/// channel, and the channel's thermal occupation `n_th`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    g: f64,
    r_sq: f64,
    tau: f64,
    n_th: f64,
}

impl ChannelParams {
    pub fn new(g: f64, r_sq: f64, tau: f64, n_th: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::Domain(format!(
                "gain g must be finite and >= 0, got {g}"
            )));
        }
        if !(0.0..=1.0).contains(&r_sq) {
            return Err(Error::Domain(format!(
                "reflectivity squared R^2 must lie in [0, 1], got {r_sq}"
            )));
        }
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::Domain(format!(
                "reduced time tau must be finite and >= 0, got {tau}"
            )));
        }
        if !n_th.is_finite() || n_th < 0.0 {
            return Err(Error::Domain(format!(
                "thermal occupation n_th must be finite and >= 0, got {n_th}"
            )));
        }
        Ok(Self { g, r_sq, tau, n_th })
    }

    /// Noiseless protocol: `g = 1`, `R^2 = 0`, `tau = 0`, `n_th = 0`.
    pub fn ideal() -> Self {
        Self {
            g: 1.0,
            r_sq: 0.0,
            tau: 0.0,
            n_th: 0.0,
        }
    }

    pub fn with_gain(&self, g: f64) -> Result<Self> {
        Self::new(g, self.r_sq, self.tau, self.n_th)
    }

    pub fn gain(&self) -> f64 {
        self.g
    }

    pub fn reflectivity_sq(&self) -> f64 {
        self.r_sq
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn n_th(&self) -> f64 {
        self.n_th
    }

    /// Beam-splitter transmissivity `T = sqrt(1 - R^2)`.
    pub fn transmissivity(&self) -> f64 {
        (1.0 - self.r_sq).sqrt()
    }

    /// `g T`, the effective scaling of the measured mode.
    pub fn gain_times_t(&self) -> f64 {
        self.g * self.transmissivity()
    }

    /// `e^(-tau/2)`, the damping factor on Bob's mode.
    pub fn damping(&self) -> f64 {
        (-self.tau / 2.0).exp()
    }
}

/// Thermal phase-space covariance
/// `Gamma = (1 - e^(-tau)) (1/2 + n_th) + g^2 R^2`.
pub fn gamma_thermal(ch: &ChannelParams) -> f64 {
    (-(-ch.tau).exp_m1()) * (0.5 + ch.n_th) + ch.g * ch.g * ch.r_sq
}

/// Characteristic function of the input coherent state `|alpha>`:
/// `exp(-|gamma|^2 / 2) exp(alpha* gamma - alpha gamma*)`.
pub fn chi_coherent(alpha: Complex64, p: PhasePoint) -> Complex64 {
    let gamma = p.gamma();
    let phase = alpha.conj() * gamma - alpha * gamma.conj();
    ((-0.5 * gamma.norm_sqr()) + phase).exp()
}

/// Exponent coefficients of the Gaussian kernel
/// `K(a, b) = exp(A (|a|^2 + |b|^2) + B (a b + a* b*))`, which is the TMSV
/// characteristic function stripped of its vacuum factor.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KernelCoeffs {
    pub a: f64,
    pub b: f64,
}

impl KernelCoeffs {
    pub(crate) fn new(squeeze: SqueezingParam) -> Self {
        let l = squeeze.lambda();
        let d = 1.0 - l * l;
        Self {
            a: -l * l / d,
            b: l / d,
        }
    }
}

/// TMSV characteristic function (real, positive Gaussian).
pub(crate) fn chi_gaussian(squeeze: SqueezingParam, pt: TwoModePhasePoint) -> f64 {
    let l = squeeze.lambda();
    let d = 1.0 - l * l;
    let c = (1.0 + l * l) / (2.0 * d);
    let s = l / d;
    let cross = 2.0 * (pt.alpha * pt.beta).re;
    (-c * (pt.alpha.norm_sqr() + pt.beta.norm_sqr()) + s * cross).exp()
}

/// Polynomial prefactor of the photon-subtracted resource: the exact result
/// of applying `d^2/(da da*) d^2/(db db*)` to the Gaussian kernel, divided by
/// the kernel. Degree <= 2 in each of `a, a*, b, b*`.
fn poly_subtracted(kc: KernelCoeffs, pt: TwoModePhasePoint) -> Complex64 {
    let (a, b) = (pt.alpha, pt.beta);
    let (ac, bc) = (a.conj(), b.conj());
    let ka = Complex64::from(kc.a);
    let u = ka * b + kc.b * ac;
    let v = ka * bc + kc.b * a;
    let w = ka * ac + kc.b * b;
    let z = ka * a + kc.b * bc;
    (ka + u * v) * (ka + w * z) + kc.b * kc.b + kc.b * (u * z + v * w)
}

/// Polynomial prefactor of the photon-added resource: the exact result of
/// applying `(-d^2/(dx dx*) + x d/dx + x* d/dx* - x x* + 1)` for `x = a` and
/// `x = b` to the Gaussian kernel, divided by the kernel.
fn poly_added(kc: KernelCoeffs, pt: TwoModePhasePoint) -> Complex64 {
    let (a, b) = (pt.alpha, pt.beta);
    let (ac, bc) = (a.conj(), b.conj());
    let ka = Complex64::from(kc.a);
    let u = ka * b + kc.b * ac;
    let v = ka * bc + kc.b * a;
    let w = ka * ac + kc.b * b;
    let z = ka * a + kc.b * bc;
    let q = 1.0 - ka - u * v + b * v + bc * u - b * bc;
    let r = 1.0 - ka - w * z + a * w + ac * z - a * ac;
    kc.b * kc.b + kc.b * (b - u) * (a - z) + kc.b * (bc - v) * (ac - w) + q * r
}

/// Two-mode characteristic function of the resource state, normalized so
/// `chi(0, 0) = 1`.
///
/// The photon-subtracted expansion degenerates to 0/0 at `lambda = 0`; its
/// limit is the vacuum Gaussian, which is returned explicitly there.
pub fn chi_resource(spec: &ResourceSpec, pt: TwoModePhasePoint) -> Complex64 {
    let gauss = chi_gaussian(spec.squeeze, pt);
    match spec.kind {
        ResourceKind::Tmsv => Complex64::from(gauss),
        ResourceKind::PhotonSubtracted => {
            if spec.lambda() == 0.0 {
                return Complex64::from(gauss);
            }
            let kc = KernelCoeffs::new(spec.squeeze);
            let norm = kc.a * kc.a + kc.b * kc.b;
            poly_subtracted(kc, pt) / norm * gauss
        }
        ResourceKind::PhotonAdded => {
            let kc = KernelCoeffs::new(spec.squeeze);
            let norm = (kc.a - 1.0) * (kc.a - 1.0) + kc.b * kc.b;
            poly_added(kc, pt) / norm * gauss
        }
    }
}

/// Characteristic function of the teleported output state:
/// `chi_in(gT gamma) chi_res(gT gamma*; e^(-tau/2) gamma)
///  exp(-Gamma |gamma|^2 / 2)`.
pub fn chi_output(
    spec: &ResourceSpec,
    ch: &ChannelParams,
    input_alpha: Complex64,
    p: PhasePoint,
) -> Complex64 {
    let gamma = p.gamma();
    let gt = ch.gain_times_t();
    let damp = ch.damping();
    let envelope = (-0.5 * gamma_thermal(ch) * gamma.norm_sqr()).exp();
    chi_coherent(input_alpha, PhasePoint::new(gt * gamma))
        * chi_resource(
            spec,
            TwoModePhasePoint::new(gt * gamma.conj(), damp * gamma),
        )
        * envelope
}

/// [`chi_output`] written in quadrature variables: the resource factor is
/// evaluated at `(gT x, -gT p; e^(-tau/2) x, e^(-tau/2) p)`. Identical to the
/// complex form because conjugating `gamma` is exactly the `p` sign flip.
pub fn chi_output_xp(
    spec: &ResourceSpec,
    ch: &ChannelParams,
    input_alpha: Complex64,
    x: f64,
    p: f64,
) -> Complex64 {
    let gt = ch.gain_times_t();
    let damp = ch.damping();
    let point = PhasePoint::from_xp(x, p);
    let envelope = (-0.5 * gamma_thermal(ch) * point.gamma().norm_sqr()).exp();
    chi_coherent(input_alpha, PhasePoint::from_xp(gt * x, gt * p))
        * chi_resource(
            spec,
            TwoModePhasePoint::new(
                PhasePoint::from_xp(gt * x, -gt * p).gamma(),
                PhasePoint::from_xp(damp * x, damp * p).gamma(),
            ),
        )
        * envelope
}
