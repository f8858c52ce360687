//! Entangled resource states: squeezing parameterization, Fock-basis
//! amplitudes and closed-form EPR variances.
//!
//! Three two-mode resources are supported: the two-mode squeezed vacuum
//! (TMSV), the state obtained by subtracting one photon from each mode, and
//! the state obtained by adding one photon to each mode. All are
//! parameterized by the squeezing parameter `lambda = tanh(r)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest accepted squeezing parameter. Every formula in this crate carries
/// `(1 - lambda^2)` denominators, so `lambda = 1` is rejected rather than
/// clamped; sweeps that silently clamped would produce garbage rows.
pub const LAMBDA_MAX: f64 = 1.0 - 1e-9;

/// Squeezing strength, carried both as `lambda = tanh(r)` and as `r`.
///
/// `lambda` is canonical; `r` is kept alongside so sweeps do not repeatedly
/// round-trip through `atanh`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingParam {
    lambda: f64,
    r: f64,
}

impl SqueezingParam {
    /// Build from `lambda` in `[0, LAMBDA_MAX]`.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::Domain(format!(
                "squeezing parameter lambda must be finite and >= 0, got {lambda}"
            )));
        }
        if lambda > LAMBDA_MAX {
            return Err(Error::Domain(format!(
                "squeezing parameter lambda must be <= {LAMBDA_MAX} (formulas diverge at lambda = 1), got {lambda}"
            )));
        }
        Ok(Self {
            lambda,
            r: lambda.atanh(),
        })
    }

    /// Build from the squeezing strength `r >= 0` via `lambda = tanh(r)`.
    ///
    /// For very large `r`, `tanh(r)` rounds to 1.0 in double precision; the
    /// result is capped at [`LAMBDA_MAX`] so `lambda < 1` always holds.
    pub fn from_r(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!(
                "squeezing strength r must be finite and >= 0, got {r}"
            )));
        }
        let lambda = r.tanh().min(LAMBDA_MAX);
        Ok(Self { lambda, r })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// `lambda = tanh(r)` with both parameterizations populated.
pub fn lambda_from_r(r: f64) -> Result<SqueezingParam> {
    SqueezingParam::from_r(r)
}

/// Which two-mode entangled channel is shared between the parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResourceKind {
    /// Two-mode squeezed vacuum.
    Tmsv,
    /// One photon subtracted from each mode of the TMSV.
    PhotonSubtracted,
    /// One photon added to each mode of the TMSV.
    PhotonAdded,
}

impl ResourceKind {
    pub const ALL: [ResourceKind; 3] = [
        ResourceKind::Tmsv,
        ResourceKind::PhotonSubtracted,
        ResourceKind::PhotonAdded,
    ];

    /// Short stable label used by the CLI and in table headers.
    pub fn label(&self) -> &'static str {
        match self {
            ResourceKind::Tmsv => "tmsv",
            ResourceKind::PhotonSubtracted => "psub",
            ResourceKind::PhotonAdded => "padd",
        }
    }
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ResourceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tmsv" => Ok(ResourceKind::Tmsv),
            "psub" => Ok(ResourceKind::PhotonSubtracted),
            "padd" => Ok(ResourceKind::PhotonAdded),
            other => Err(Error::Domain(format!(
                "unknown resource kind `{other}` (expected tmsv, psub or padd)"
            ))),
        }
    }
}

/// A resource kind together with its squeezing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceSpec {
    pub kind: ResourceKind,
    pub squeeze: SqueezingParam,
}

impl ResourceSpec {
    pub fn new(kind: ResourceKind, lambda: f64) -> Result<Self> {
        Ok(Self {
            kind,
            squeeze: SqueezingParam::from_lambda(lambda)?,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.squeeze.lambda()
    }
}

/// Normalized Fock-basis amplitudes of a resource state.
///
/// The state is `sum_n coeffs[n] |n + offset, n + offset>` with `offset = 0`
/// for the TMSV and photon-subtracted states and `offset = 1` for the
/// photon-added state. `coeffs` holds `cutoff` entries (n = 0 .. cutoff-1);
/// the dropped norm decays like `lambda^(2 cutoff)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockAmplitudes {
    cutoff: usize,
    coeffs: Vec<f64>,
    offset: usize,
}

impl FockAmplitudes {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// `1 - sum_n c_n^2`, the norm dropped by the truncation.
    pub fn norm_deficit(&self) -> f64 {
        let norm: f64 = self.coeffs.iter().map(|c| c * c).sum();
        (1.0 - norm).max(0.0)
    }
}

/// Default Fock cutoff: for `lambda <= 0.9` the dropped tail is below 1e-9.
pub const DEFAULT_FOCK_CUTOFF: usize = 100;

/// Normalized Fock amplitudes of the resource, truncated at `cutoff` terms.
///
/// TMSV: `c_n = sqrt(1 - l^2) l^n`. Photon-subtracted and photon-added:
/// `c_n = sqrt((1 - l^2)^3 / (1 + l^2)) l^n (n + 1)`, the latter shifted to
/// `|n+1, n+1>`. The normalization constants are folded in; they are never
/// materialized separately.
pub fn fock_amplitudes(spec: &ResourceSpec, cutoff: usize) -> Result<FockAmplitudes> {
    if cutoff == 0 {
        return Err(Error::Domain("Fock cutoff must be >= 1".into()));
    }
    let l = spec.lambda();
    let (norm, offset) = match spec.kind {
        ResourceKind::Tmsv => ((1.0 - l * l).sqrt(), 0),
        ResourceKind::PhotonSubtracted => (((1.0 - l * l).powi(3) / (1.0 + l * l)).sqrt(), 0),
        ResourceKind::PhotonAdded => (((1.0 - l * l).powi(3) / (1.0 + l * l)).sqrt(), 1),
    };
    let mut coeffs = Vec::with_capacity(cutoff);
    let mut pow = 1.0; // l^n
    for n in 0..cutoff {
        let c = match spec.kind {
            ResourceKind::Tmsv => norm * pow,
            _ => norm * pow * (n as f64 + 1.0),
        };
        coeffs.push(c);
        pow *= l;
    }
    Ok(FockAmplitudes {
        cutoff,
        coeffs,
        offset,
    })
}

/// Closed-form EPR variance `Delta(x1 - x2)^2` (equal to `Delta(p1 + p2)^2`
/// for all three states).
///
/// Vacuum gives 1; values below 1 signal correlations beyond the vacuum
/// limit, and 0 is the ideal EPR state.
pub fn epr_variance(spec: &ResourceSpec) -> f64 {
    let l = spec.lambda();
    match spec.kind {
        ResourceKind::Tmsv => 1.0 - 2.0 * l / (1.0 + l),
        ResourceKind::PhotonSubtracted => {
            1.0 - 4.0 * l * (l * l - l + 1.0) / ((1.0 + l * l) * (1.0 + l))
        }
        ResourceKind::PhotonAdded => {
            1.0 - 2.0 * (l * l * l - l * l + 3.0 * l - 1.0) / ((1.0 + l * l) * (1.0 + l))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec(kind: ResourceKind, lambda: f64) -> ResourceSpec {
        ResourceSpec::new(kind, lambda).unwrap()
    }

    #[test]
    fn lambda_from_r_basics() {
        assert_eq!(lambda_from_r(0.0).unwrap().lambda(), 0.0);
        // r = atanh(0.5) rounded to 4 digits
        assert_abs_diff_eq!(lambda_from_r(0.5493).unwrap().lambda(), 0.5, epsilon = 1e-3);
        // asymptote: tanh(20) rounds to 1.0 in f64 and is capped below 1
        let s = lambda_from_r(20.0).unwrap();
        assert!(s.lambda() < 1.0);
        assert!(s.lambda() >= LAMBDA_MAX);
    }

    #[test]
    fn lambda_from_r_rejects_bad_input() {
        assert!(lambda_from_r(-0.1).is_err());
        assert!(lambda_from_r(f64::NAN).is_err());
        assert!(lambda_from_r(f64::INFINITY).is_err());
    }

    #[test]
    fn lambda_domain_is_capped() {
        assert!(SqueezingParam::from_lambda(LAMBDA_MAX).is_ok());
        assert!(SqueezingParam::from_lambda(1.0 - 1e-10).is_err());
        assert!(SqueezingParam::from_lambda(1.0).is_err());
        assert!(SqueezingParam::from_lambda(1.2).is_err());
        assert!(SqueezingParam::from_lambda(-0.2).is_err());
    }

    #[test]
    fn lambda_r_round_trip() {
        let s = SqueezingParam::from_lambda(0.5).unwrap();
        assert_abs_diff_eq!(s.r().tanh(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn tmsv_vacuum_amplitudes() {
        let a = fock_amplitudes(&spec(ResourceKind::Tmsv, 0.0), 8).unwrap();
        assert_eq!(a.coeffs()[0], 1.0);
        assert!(a.coeffs()[1..].iter().all(|&c| c == 0.0));
        assert_eq!(a.offset(), 0);
    }

    #[test]
    fn subtracted_norm_matches_geometric_series_oracle() {
        // oracle: sum (n+1)^2 x^n = (1+x)/(1-x)^3 at x = lambda^2
        let l: f64 = 0.5;
        let x = l * l;
        let oracle = (1.0 + x) / (1.0 - x).powi(3);
        let c2 = (1.0 - l * l).powi(3) / (1.0 + l * l);
        assert_abs_diff_eq!(c2 * oracle, 1.0, epsilon = 1e-15);

        let a = fock_amplitudes(&spec(ResourceKind::PhotonSubtracted, l), 40).unwrap();
        let norm: f64 = a.coeffs().iter().map(|c| c * c).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn added_state_is_shifted_subtracted_state() {
        let sub = fock_amplitudes(&spec(ResourceKind::PhotonSubtracted, 0.5), 10).unwrap();
        let add = fock_amplitudes(&spec(ResourceKind::PhotonAdded, 0.5), 10).unwrap();
        // amplitude of |1,1> in the added state = amplitude of |0,0> in the
        // subtracted one (same coefficient list, photon offset 1)
        assert_eq!(add.offset(), 1);
        assert_eq!(add.coeffs()[0], sub.coeffs()[0]);
    }

    #[test]
    fn norm_deficit_scales_like_lambda_power() {
        for &l in &[0.3, 0.6, 0.9] {
            for &cutoff in &[20usize, 40] {
                for kind in ResourceKind::ALL {
                    let a = fock_amplitudes(&spec(kind, l), cutoff).unwrap();
                    // the measured deficit bottoms out at the roundoff of
                    // summing ~1 in f64
                    let bound =
                        10.0 * (cutoff as f64 + 1.0).powi(2) * l.powi(2 * cutoff as i32) + 1e-15;
                    assert!(
                        a.norm_deficit() <= bound,
                        "{kind} lambda={l} cutoff={cutoff}: deficit {} > {bound}",
                        a.norm_deficit()
                    );
                }
            }
        }
    }

    #[test]
    fn zero_cutoff_rejected() {
        assert!(fock_amplitudes(&spec(ResourceKind::Tmsv, 0.2), 0).is_err());
    }

    #[test]
    fn epr_variance_known_values() {
        assert_eq!(epr_variance(&spec(ResourceKind::Tmsv, 0.0)), 1.0);
        assert_eq!(epr_variance(&spec(ResourceKind::PhotonAdded, 0.0)), 3.0);
        assert_abs_diff_eq!(
            epr_variance(&spec(ResourceKind::Tmsv, 0.5)),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            epr_variance(&spec(ResourceKind::PhotonSubtracted, 0.5)),
            0.2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            epr_variance(&spec(ResourceKind::PhotonAdded, 0.5)),
            0.6,
            epsilon = 1e-15
        );
    }

    #[test]
    fn epr_variance_orderings() {
        for i in 1..100 {
            let l = i as f64 / 100.0;
            let tmsv = epr_variance(&spec(ResourceKind::Tmsv, l));
            let sub = epr_variance(&spec(ResourceKind::PhotonSubtracted, l));
            assert!(tmsv < 1.0, "tmsv variance must beat vacuum for lambda={l}");
            assert!(sub < 1.0, "psub variance must beat vacuum for lambda={l}");
            assert!(
                sub < tmsv,
                "subtraction strengthens correlations at lambda={l}"
            );
        }
    }

    #[test]
    fn epr_variance_vanishes_at_strong_squeezing() {
        for kind in ResourceKind::ALL {
            let v = epr_variance(&spec(kind, 0.9999999));
            assert!(v.abs() < 1e-6, "{kind}: {v}");
        }
    }

    #[test]
    fn kind_labels_round_trip() {
        for kind in ResourceKind::ALL {
            assert_eq!(kind.label().parse::<ResourceKind>().unwrap(), kind);
        }
        assert!("bogus".parse::<ResourceKind>().is_err());
    }
}
