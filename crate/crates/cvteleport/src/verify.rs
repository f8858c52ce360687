//! Cross-validation suites: every closed-form quantity in the crate checked
//! against its brute-force oracle on a parameter grid, with the worst
//! discrepancy reported per suite.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charfunc::{chi_resource, ChannelParams, TwoModePhasePoint};
use crate::error::Result;
use crate::fidelity::{closed_form_value, fidelity_ideal};
use crate::oracle::{
    chi_resource_fock, epr_variance_fock, fidelity_quadrature, lambda_operator_fd, FockOracleSpec,
    QuadratureSpec,
};
use crate::states::{epr_variance, ResourceKind, ResourceSpec};
use crate::sweep::epr_crossover;

/// How much of the verification grid to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyGrid {
    /// A few spot checks per suite; runs in seconds.
    Small,
    /// The complete cross-validation grid.
    Full,
}

/// Worst-case result of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub max_discrepancy: f64,
    pub tolerance: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.max_discrepancy <= self.tolerance
    }
}

/// One fidelity grid point: (kind, lambda, r2, tau, alpha), with g = 1 and
/// n_th = 0.
pub type FidelityCase = (ResourceKind, f64, f64, f64, f64);

/// The closed-form-vs-quadrature grid.
pub fn fidelity_grid(grid: VerifyGrid) -> Vec<FidelityCase> {
    let (lambdas, r2s, taus, alphas): (&[f64], &[f64], &[f64], &[f64]) = match grid {
        VerifyGrid::Small => (&[0.3, 0.7], &[0.0, 0.5], &[0.0, 1.5], &[1.0]),
        VerifyGrid::Full => (
            &[0.1, 0.3, 0.5, 0.7],
            &[0.0, 0.1, 0.5, 0.8],
            &[0.0, 0.5, 1.5],
            &[1.0, 2.0],
        ),
    };
    let mut cases = Vec::new();
    for kind in ResourceKind::ALL {
        for &l in lambdas {
            for &r2 in r2s {
                for &tau in taus {
                    for &alpha in alphas {
                        cases.push((kind, l, r2, tau, alpha));
                    }
                }
            }
        }
    }
    cases
}

/// Closed form vs 2-D quadrature of the overlap integral, with the closed
/// form injectable so a deliberately broken implementation can be shown to
/// trip the suite.
pub fn fidelity_oracle_suite_with<F>(cases: &[FidelityCase], closed: F) -> Result<SuiteOutcome>
where
    F: Fn(&ResourceSpec, &ChannelParams, Complex64) -> f64,
{
    let quad = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for &(kind, l, r2, tau, alpha) in cases {
        let spec = ResourceSpec::new(kind, l)?;
        let ch = ChannelParams::new(1.0, r2, tau, 0.0)?;
        let a = Complex64::new(alpha, 0.0);
        let oracle = fidelity_quadrature(&spec, &ch, a, &quad)?;
        worst = worst.max((closed(&spec, &ch, a) - oracle.value).abs());
    }
    Ok(SuiteOutcome {
        name: "fidelity-quadrature",
        cases: cases.len(),
        max_discrepancy: worst,
        tolerance: 1e-6,
    })
}

fn fidelity_oracle_suite(grid: VerifyGrid) -> Result<SuiteOutcome> {
    fidelity_oracle_suite_with(&fidelity_grid(grid), closed_form_value)
}

fn ideal_reduction_suite() -> Result<SuiteOutcome> {
    let ideal = ChannelParams::ideal();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for kind in ResourceKind::ALL {
        for i in 0..=9 {
            let spec = ResourceSpec::new(kind, i as f64 * 0.1)?;
            let closed = closed_form_value(&spec, &ideal, Complex64::new(1.0, 0.0));
            worst = worst.max((closed - fidelity_ideal(&spec)).abs());
            cases += 1;
        }
    }
    Ok(SuiteOutcome {
        name: "ideal-reduction",
        cases,
        max_discrepancy: worst,
        tolerance: 1e-12,
    })
}

fn epr_fock_suite(grid: VerifyGrid) -> Result<SuiteOutcome> {
    let cutoff = FockOracleSpec { cutoff: 200 };
    let lambdas: Vec<f64> = match grid {
        VerifyGrid::Small => vec![0.0, 0.5, 0.9],
        VerifyGrid::Full => (0..=18).map(|i| i as f64 * 0.05).collect(),
    };
    let mut worst = 0.0f64;
    let mut cases = 0;
    for kind in ResourceKind::ALL {
        for &l in &lambdas {
            let spec = ResourceSpec::new(kind, l)?;
            let series = epr_variance_fock(&spec, &cutoff)?;
            worst = worst.max((series - epr_variance(&spec)).abs());
            cases += 1;
        }
    }
    Ok(SuiteOutcome {
        name: "epr-fock",
        cases,
        max_discrepancy: worst,
        tolerance: 1e-8,
    })
}

/// Deterministic sample of two-mode points with both moduli below `radius`.
pub fn sample_points(count: usize, radius: f64, seed: u64) -> Vec<TwoModePhasePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edge = radius / std::f64::consts::SQRT_2;
    (0..count)
        .map(|_| {
            TwoModePhasePoint::new(
                Complex64::new(rng.gen_range(-edge..edge), rng.gen_range(-edge..edge)),
                Complex64::new(rng.gen_range(-edge..edge), rng.gen_range(-edge..edge)),
            )
        })
        .collect()
}

fn chi_fd_suite(grid: VerifyGrid) -> Result<SuiteOutcome> {
    let count = match grid {
        VerifyGrid::Small => 10,
        VerifyGrid::Full => 50,
    };
    let points = sample_points(count, 1.5, 0x5eed_0001);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for kind in [ResourceKind::PhotonSubtracted, ResourceKind::PhotonAdded] {
        for &l in &[0.2, 0.5, 0.8] {
            let spec = ResourceSpec::new(kind, l)?;
            for &pt in &points {
                let fd = lambda_operator_fd(kind, pt, 1e-3, spec.squeeze)?;
                worst = worst.max((fd - chi_resource(&spec, pt)).norm());
                cases += 1;
            }
        }
    }
    Ok(SuiteOutcome {
        name: "chi-finite-difference",
        cases,
        max_discrepancy: worst,
        tolerance: 1e-6,
    })
}

fn chi_fock_suite(grid: VerifyGrid) -> Result<SuiteOutcome> {
    let count = match grid {
        VerifyGrid::Small => 5,
        VerifyGrid::Full => 50,
    };
    let cutoff = FockOracleSpec { cutoff: 80 };
    let points = sample_points(count, 1.5, 0x5eed_0002);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for kind in [ResourceKind::PhotonSubtracted, ResourceKind::PhotonAdded] {
        for &l in &[0.2, 0.5, 0.8] {
            let spec = ResourceSpec::new(kind, l)?;
            for &pt in &points {
                let series = chi_resource_fock(&spec, pt, &cutoff)?;
                worst = worst.max((series - chi_resource(&spec, pt)).norm());
                cases += 1;
            }
        }
    }
    Ok(SuiteOutcome {
        name: "chi-fock-series",
        cases,
        max_discrepancy: worst,
        tolerance: 1e-7,
    })
}

fn crossover_suite() -> Result<SuiteOutcome> {
    // root of l^3 - l^2 + 3l - 1 to machine precision
    const ROOT: f64 = 0.361_103_080_528_647_26;
    let found = epr_crossover(ResourceKind::PhotonAdded)?;
    Ok(SuiteOutcome {
        name: "epr-crossover",
        cases: 1,
        max_discrepancy: (found - ROOT).abs(),
        tolerance: 1e-9,
    })
}

/// Run every verification suite at the requested grid size.
pub fn run_verification(grid: VerifyGrid) -> Result<Vec<SuiteOutcome>> {
    Ok(vec![
        ideal_reduction_suite()?,
        fidelity_oracle_suite(grid)?,
        epr_fock_suite(grid)?,
        chi_fd_suite(grid)?,
        chi_fock_suite(grid)?,
        crossover_suite()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        for outcome in run_verification(VerifyGrid::Small).unwrap() {
            assert!(
                outcome.passed(),
                "{}: {} > {}",
                outcome.name,
                outcome.max_discrepancy,
                outcome.tolerance
            );
        }
    }

    #[test]
    fn injected_coefficient_bug_is_caught() {
        // perturb the closed form by one part in 1e4 and expect the
        // quadrature suite to flag it
        let cases = fidelity_grid(VerifyGrid::Small);
        let outcome = fidelity_oracle_suite_with(&cases, |s, ch, a| {
            closed_form_value(s, ch, a) * (1.0 + 1e-4)
        })
        .unwrap();
        assert!(!outcome.passed());
    }
}
