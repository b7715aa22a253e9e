//! Randomized cross-checks of the closed-form model against the dense oracle.
//!
//! Every suite draws points from a seeded ChaCha stream, so a report is
//! reproducible from `(seed, samples)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{build_hamiltonian, Params};
use crate::oracle::{direct_fidelity, gibbs_state, jacobi_eigen};
use crate::spectrum::{analytic_eigensystem, EigenSystem};
use crate::thermal::{closed_form_fidelity_from, fidelity, thermal_state_from};

pub const DEFAULT_SEED: u64 = 0x5eed_f1de;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const SUITE_TOL: f64 = 1e-12;
/// Process exit code for a failed verification.
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const GAMMA_BOUND: f64 = 2.0;
pub const LAMBDA_BOUND: f64 = 2.0;
pub const B_BOUND: f64 = 5.0;
pub const T_RANGE: (f64, f64) = (0.05, 10.0);

/// Source of eigensystems under test. The default is the closed form;
/// tests substitute corrupted models to make sure the suites notice.
pub trait SpectrumModel: Sync {
    fn eigensystem(&self, p: &Params) -> EigenSystem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClosedForm;

impl SpectrumModel for ClosedForm {
    fn eigensystem(&self, p: &Params) -> EigenSystem {
        analytic_eigensystem(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Parameters at which the largest deviation occurred.
    pub worst: Option<Params>,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<5} {:<22} samples={:<6} max_dev={:.3e} tol={:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.samples,
            self.max_deviation,
            self.tolerance
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            EXIT_VERIFY_FAILED
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        write!(f, "{}", if self.passed() { "all suites passed" } else { "verification FAILED" })
    }
}

pub fn sample_params(rng: &mut impl Rng) -> Params {
    Params {
        gamma: rng.gen_range(-GAMMA_BOUND..=GAMMA_BOUND),
        lambda_field: rng.gen_range(-LAMBDA_BOUND..=LAMBDA_BOUND),
        b_field: rng.gen_range(-B_BOUND..=B_BOUND),
        temperature: rng.gen_range(T_RANGE.0..=T_RANGE.1),
    }
}

struct Tracker {
    name: &'static str,
    samples: usize,
    max: f64,
    worst: Option<Params>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Tracker { name, samples: 0, max: 0.0, worst: None }
    }

    fn record(&mut self, p: &Params, dev: f64) {
        self.samples += 1;
        // NaN counts as the worst possible deviation
        let dev = if dev.is_nan() { f64::INFINITY } else { dev };
        if dev > self.max || self.worst.is_none() {
            self.max = self.max.max(dev);
            self.worst = Some(*p);
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.into(),
            samples: self.samples,
            max_deviation: self.max,
            tolerance: SUITE_TOL,
            passed: self.max <= SUITE_TOL,
            worst: self.worst,
        }
    }
}

/// Run all suites against `model` on `samples` random points.
pub fn run_verification_with(model: &dyn SpectrumModel, seed: u64, samples: usize) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut energies = Tracker::new("energies");
    let mut residuals = Tracker::new("eigenvector-residuals");
    let mut gibbs = Tracker::new("gibbs-state");
    let mut fid = Tracker::new("fidelity");
    let mut closed = Tracker::new("fidelity-closed-form");

    for _ in 0..samples {
        let p = sample_params(&mut rng);
        let h = build_hamiltonian(&p)?;
        let es = model.eigensystem(&p);
        let dense = jacobi_eigen(&h)?;

        let sorted = es.sorted_energies();
        let de = sorted.iter().zip(dense.eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        energies.record(&p, de);

        let res = es
            .states
            .iter()
            .zip(es.energies)
            .map(|(psi, e)| {
                let norm_err = (psi.norm() - 1.0).abs();
                (h * *psi).max_abs_diff(&psi.scale(e.into())).max(norm_err)
            })
            .fold(0.0, f64::max);
        residuals.record(&p, res);

        let state = thermal_state_from(&es, p.temperature);
        let rho_ref = gibbs_state(&h, p.temperature)?;
        gibbs.record(&p, state.rho.max_abs_diff(&rho_ref));

        let psi1 = es.states[0];
        let f_ref = direct_fidelity(&rho_ref, &psi1)?;
        let f_def = fidelity(&state, &psi1).unwrap_or(f64::NAN);
        fid.record(&p, (f_def - f_ref).abs());

        let f_closed = closed_form_fidelity_from(&es, p.gamma, p.temperature).unwrap_or(f64::NAN);
        closed.record(&p, (f_closed - f_def).abs());
    }

    Ok(VerificationReport {
        seed,
        samples,
        suites: vec![energies.finish(), residuals.finish(), gibbs.finish(), fid.finish(), closed.finish()],
    })
}

pub fn run_verification(seed: u64, samples: usize) -> Result<VerificationReport> {
    run_verification_with(&ClosedForm, seed, samples)
}
