//! Seeded random generation, property-test suites for the closure theorems
//! under test, the one-sided-inverse demonstration, and the exhaustive
//! small-instance oracle.
//!
//! Reproducibility contract: all randomness comes from ChaCha8 streams.
//! Trial `t` of a run with seed `s` uses `ChaCha8Rng::seed_from_u64(
//! trial_seed(s, t))` with the splitmix-style mix below, so any failure
//! replays from the `(seed, trial)` pair echoed in the report.

pub mod suites;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::inverse::InverseError;
use crate::matrix::SquareMatrix;
use crate::preorder::{closure, Preorder, Relation, RelationDoc};
use crate::ring::descriptor::RingDescriptor;
use crate::ring::grassmann::GrassmannRing;
use crate::ring::integers::IntRing;
use crate::ring::jacobson::JacobsonRing;
use crate::ring::matrix_ring::SquareMatrixRing;
use crate::ring::modular::{FpRing, ModRing};
use crate::ring::rationals::RatRing;
use crate::ring::Ring;

pub const DEFAULT_DENSITY: f64 = 0.4;
pub const DEFAULT_RETRY_CAP: usize = 1000;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("suite {suite} does not support this scenario: {why}")]
    UnsupportedCombination { suite: String, why: String },
    #[error("failed to generate an invertible structural matrix within {0} attempts")]
    GenerationFailed(usize),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error(transparent)]
    Inverse(#[from] InverseError),
}

/// Pattern source for a scenario: a fresh random preorder per trial, or one
/// fixed preorder for every trial.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaSpec {
    Random { density: f64 },
    Fixed { theta: RelationDoc },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub ring: RingDescriptor,
    pub n: usize,
    pub theta: ThetaSpec,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_retry_cap")]
    pub retry_cap: usize,
}

fn default_retry_cap() -> usize {
    DEFAULT_RETRY_CAP
}

impl Scenario {
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.ring
            .validate()
            .map_err(|e| HarnessError::InvalidScenario(e.to_string()))?;
        if self.n == 0 {
            return Err(HarnessError::InvalidScenario("n must be positive".into()));
        }
        if self.trials == 0 {
            return Err(HarnessError::InvalidScenario(
                "trials must be at least 1".into(),
            ));
        }
        match &self.theta {
            ThetaSpec::Random { density } => {
                if !(0.0..=1.0).contains(density) {
                    return Err(HarnessError::InvalidScenario(format!(
                        "density {density} outside [0, 1]"
                    )));
                }
            }
            ThetaSpec::Fixed { theta } => {
                if theta.n != self.n {
                    return Err(HarnessError::InvalidScenario(format!(
                        "fixed theta is on {} points but n = {}",
                        theta.n, self.n
                    )));
                }
                theta
                    .to_relation()
                    .map_err(|e| HarnessError::InvalidScenario(e.to_string()))?;
            }
        }
        Ok(())
    }

    /// The preorder for one trial, drawn from the trial's own stream.
    pub fn theta_for_trial(&self, rng: &mut ChaCha8Rng) -> Preorder {
        match &self.theta {
            ThetaSpec::Random { density } => gen_preorder(self.n, *density, rng),
            ThetaSpec::Fixed { theta } => closure(&theta.to_relation().expect("validated")),
        }
    }
}

/// Splitmix-style mix of the run seed and trial index; stable across
/// platforms.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, trial))
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub trial_seed: u64,
    pub message: String,
    pub instance: Value,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub scenario: Value,
    pub trials: usize,
    pub failure_count: usize,
    pub failures: Vec<FailureRecord>,
    pub seed: u64,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Accumulates trial outcomes and timing for one suite run.
pub struct SuiteRunner {
    suite: String,
    scenario: Value,
    seed: u64,
    trials: usize,
    failures: Vec<FailureRecord>,
    started: Instant,
}

impl SuiteRunner {
    pub fn new(suite: &str, scenario: Value, seed: u64) -> Self {
        SuiteRunner {
            suite: suite.to_string(),
            scenario,
            seed,
            trials: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn record_trial(&mut self) {
        self.trials += 1;
    }

    pub fn fail(&mut self, trial: usize, message: impl Into<String>, instance: Value) {
        self.failures.push(FailureRecord {
            trial,
            trial_seed: trial_seed(self.seed, trial as u64),
            message: message.into(),
            instance,
        });
    }

    pub fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            scenario: self.scenario,
            trials: self.trials,
            failure_count: self.failures.len(),
            failures: self.failures,
            seed: self.seed,
            wall_ms: self.started.elapsed().as_millis(),
        }
    }
}

/// Samples each off-diagonal pair independently with the given probability,
/// then closes; deterministic per rng state.
pub fn gen_preorder(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Preorder {
    let mut rel = Relation::empty(n).expect("n >= 1");
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(density) {
                rel.insert(i, j);
            }
        }
    }
    closure(&rel)
}

/// Seeded wrapper over [`gen_preorder`].
pub fn gen_preorder_seeded(n: usize, density: f64, seed: u64) -> Preorder {
    gen_preorder(n, density, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Uniform-ish entries on the pattern positions, exact zeros elsewhere.
pub fn gen_structural_matrix<R: Ring>(
    ring: &R,
    theta: &Preorder,
    rng: &mut ChaCha8Rng,
) -> SquareMatrix<R::Elem> {
    SquareMatrix::from_fn(theta.n(), |i, j| {
        if theta.contains(i, j) {
            ring.sample(rng)
        } else {
            ring.zero()
        }
    })
}

/// Rejection-samples structural matrices until the probe accepts one.
pub fn gen_invertible_structural<R: Ring>(
    ring: &R,
    theta: &Preorder,
    rng: &mut ChaCha8Rng,
    retry_cap: usize,
    is_invertible: impl Fn(&R, &SquareMatrix<R::Elem>) -> bool,
) -> Result<SquareMatrix<R::Elem>, HarnessError> {
    for _ in 0..retry_cap {
        let a = gen_structural_matrix(ring, theta, rng);
        if is_invertible(ring, &a) {
            return Ok(a);
        }
    }
    Err(HarnessError::GenerationFailed(retry_cap))
}

fn unsupported(suite: &str, why: impl Into<String>) -> HarnessError {
    HarnessError::UnsupportedCombination {
        suite: suite.to_string(),
        why: why.into(),
    }
}

/// Runs a named suite over a scenario, dispatching on the ring kind.
/// Suites and their ring requirements:
///
/// - `closure`: invert structural matrices and check the inverse stays
///   structural; commutative rings (adjugate route) and Grassmann rings
///   (nil-geometric route).
/// - `preadjoint`: preadjoint of structural matrices stays structural; any
///   ring.
/// - `adjoint`: adjugate of structural matrices stays structural;
///   commutative rings.
/// - `flatten`: block flattening is a structure-respecting isomorphism;
///   matrix-ring scenarios.
/// - `cayley_hamilton`: the characteristic polynomial annihilates, and the
///   annihilator inverse matches the adjugate inverse; commutative rings.
/// - `nil_lift`: binomial lifting of approximate inverses and agreement of
///   the nil-geometric matrix inverse with the adjugate; Grassmann and
///   modular rings.
/// - `dedekind`: certified right inverses are two-sided; finite rings.
pub fn run_suite(name: &str, scenario: &Scenario) -> Result<SuiteReport, HarnessError> {
    scenario.validate()?;
    let desc = &scenario.ring;
    match name {
        "closure" => {
            if desc.is_commutative() {
                crate::with_ring!(desc, |ring| {
                    suites::closure_suite(&ring, &suites::AdjugateInverter, scenario)
                })
            } else {
                match desc {
                    RingDescriptor::Grassmann { generators, base } => match &**base {
                        RingDescriptor::Rationals => suites::closure_suite(
                            &GrassmannRing::new(*generators, RatRing),
                            &suites::NilGeometricInverter,
                            scenario,
                        ),
                        RingDescriptor::Modular { modulus } => suites::closure_suite(
                            &GrassmannRing::new(*generators, FpRing::new(*modulus)),
                            &suites::NilGeometricInverter,
                            scenario,
                        ),
                        _ => unreachable!("descriptor validated"),
                    },
                    _ => Err(unsupported(
                        name,
                        "closure needs a commutative or grassmann ring; the xy = 1 algebra is \
                         the documented counterexample",
                    )),
                }
            }
        }
        "preadjoint" => crate::with_ring!(desc, |ring| suites::preadjoint_suite(&ring, scenario)),
        "adjoint" => {
            if !desc.is_commutative() {
                return Err(unsupported(name, "adjoint closure needs a commutative ring"));
            }
            crate::with_ring!(desc, |ring| suites::adjoint_suite(&ring, scenario))
        }
        "flatten" => match desc {
            RingDescriptor::Matrix { size, base } => {
                let m = *size;
                match &**base {
                    RingDescriptor::Integers => suites::flatten_suite(&IntRing, m, scenario),
                    RingDescriptor::Rationals => suites::flatten_suite(&RatRing, m, scenario),
                    RingDescriptor::Modular { modulus } => {
                        suites::flatten_suite(&ModRing::new(*modulus), m, scenario)
                    }
                    _ => unreachable!("descriptor validated"),
                }
            }
            _ => Err(unsupported(name, "flatten needs a matrix-ring scenario")),
        },
        "cayley_hamilton" => {
            if !desc.is_commutative() {
                return Err(unsupported(
                    name,
                    "the classical characteristic polynomial needs a commutative ring",
                ));
            }
            crate::with_ring!(desc, |ring| suites::cayley_hamilton_suite(&ring, scenario))
        }
        "nil_lift" => match desc {
            RingDescriptor::Modular { modulus } => {
                suites::nil_lift_suite(&ModRing::new(*modulus), scenario, true)
            }
            RingDescriptor::Grassmann { generators, base } => match &**base {
                RingDescriptor::Rationals => suites::nil_lift_suite(
                    &GrassmannRing::new(*generators, RatRing),
                    scenario,
                    false,
                ),
                RingDescriptor::Modular { modulus } => suites::nil_lift_suite(
                    &GrassmannRing::new(*generators, FpRing::new(*modulus)),
                    scenario,
                    false,
                ),
                _ => unreachable!("descriptor validated"),
            },
            _ => Err(unsupported(
                name,
                "nil lifting needs a ring with computable nilradical (mod or grassmann)",
            )),
        },
        "dedekind" => {
            if !desc.is_finite() {
                return Err(unsupported(name, "the dedekind probe samples a finite ring"));
            }
            crate::with_ring!(desc, |ring| suites::dedekind_suite(&ring, scenario))
        }
        other => Err(unsupported(other, "unknown suite name")),
    }
}

/// The worked one-sided-inverse demonstration over the `xy = 1` algebra:
/// `A = [[y, 1-yx], [0, x]]` inverts to `[[x, 0], [1-yx, y]]`, the inverse
/// escapes the upper-triangular pattern, and the preadjoint does not.
pub fn demo_jacobson() -> SuiteReport {
    let ring = JacobsonRing::new(RatRing);
    let mring = SquareMatrixRing::new(ring.clone(), 2);
    let (x, y) = (ring.x(), ring.y());
    let defect = ring.one_minus_yx();
    let a = SquareMatrix::from_rows(vec![
        vec![y.clone(), defect.clone()],
        vec![ring.zero(), x.clone()],
    ])
    .expect("2x2");
    let a_inv = SquareMatrix::from_rows(vec![
        vec![x.clone(), ring.zero()],
        vec![defect.clone(), y.clone()],
    ])
    .expect("2x2");
    let upper = Preorder::try_new(
        Relation::from_pairs_1based(2, &[(1, 1), (1, 2), (2, 2)]).expect("pairs"),
    )
    .expect("preorder");

    let scenario = json!({
        "ring": ring.descriptor(),
        "n": 2,
        "theta": RelationDoc::from_preorder(&upper),
    });
    let mut runner = SuiteRunner::new("demo_jacobson", scenario, 0);
    let instance = json!({
        "A": crate::io::matrix_doc(&ring, &a, Some(&upper)),
        "A_inverse": crate::io::matrix_doc(&ring, &a_inv, None),
    });

    let assert_demo = |runner: &mut SuiteRunner, name: &str, ok: bool| {
        runner.record_trial();
        if !ok {
            runner.fail(0, format!("assertion {name} failed"), instance.clone());
        }
    };

    assert_demo(&mut runner, "xy_is_one", ring.is_one(&ring.mul(&x, &y)));
    assert_demo(&mut runner, "yx_is_not_one", !ring.is_one(&ring.mul(&y, &x)));
    assert_demo(
        &mut runner,
        "A_times_Ainv_is_identity",
        mring.is_one(&mring.mul(&a, &a_inv)),
    );
    assert_demo(
        &mut runner,
        "Ainv_times_A_is_identity",
        mring.is_one(&mring.mul(&a_inv, &a)),
    );
    assert_demo(
        &mut runner,
        "A_is_structural",
        crate::matrix::check_structural(&ring, &a, &upper).expect("sizes match"),
    );
    assert_demo(
        &mut runner,
        "Ainv_escapes_the_pattern",
        !crate::matrix::check_structural(&ring, &a_inv, &upper).expect("sizes match"),
    );
    let pre = crate::matrix::preadjoint(&ring, &a).expect("n = 2");
    assert_demo(
        &mut runner,
        "preadjoint_of_A_is_structural",
        crate::matrix::check_structural(&ring, &pre, &upper).expect("sizes match"),
    );
    runner.finish()
}

/// Exhaustive desk-scale oracle: over `Z/m`, enumerates every preorder on
/// `{1, ..., n}` and every structural matrix, inverts each invertible one,
/// and checks the inverse is structural. Zero failures is the theorem.
pub fn exhaustive_closure(modulus: u64, n: usize) -> Result<SuiteReport, HarnessError> {
    const ENUMERATION_CAP: u64 = 2_000_000;
    let ring = ModRing::new(modulus);
    let m = modulus;
    let total_for_full = (0..n * n).try_fold(1u64, |acc, _| {
        acc.checked_mul(m).filter(|&v| v <= ENUMERATION_CAP)
    });
    if total_for_full.is_none() {
        return Err(unsupported(
            "closure",
            format!("exhaustive enumeration of {m}^{} matrices is over the cap", n * n),
        ));
    }

    let scenario = json!({
        "ring": ring.descriptor(),
        "n": n,
        "mode": "exhaustive",
    });
    let mut runner = SuiteRunner::new("closure", scenario, 0);

    for theta in all_preorders(n) {
        let positions: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| theta.contains(i, j))
            .collect();
        let mut digits = vec![0u64; positions.len()];
        loop {
            let a = SquareMatrix::from_fn(n, |i, j| {
                positions
                    .iter()
                    .position(|&p| p == (i, j))
                    .map(|idx| digits[idx])
                    .unwrap_or(0)
            });
            runner.record_trial();
            if let Ok(cert) = crate::inverse::inv_adjugate(&ring, &a) {
                match crate::matrix::check_structural(&ring, &cert.inverse, &theta) {
                    Ok(true) => {}
                    _ => runner.fail(
                        0,
                        "inverse escaped the pattern",
                        json!({
                            "theta": RelationDoc::from_preorder(&theta),
                            "matrix": crate::io::matrix_doc(&ring, &a, Some(&theta)),
                            "inverse": crate::io::matrix_doc(&ring, &cert.inverse, None),
                        }),
                    ),
                }
            }
            // odometer over the structural positions
            let mut carry = true;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < m {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                break;
            }
        }
    }
    Ok(runner.finish())
}

/// Every preorder on `{1, ..., n}` by brute force over the off-diagonal
/// pair subsets; practical for `n <= 3`.
pub fn all_preorders(n: usize) -> Vec<Preorder> {
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    assert!(off_diag.len() <= 20, "preorder enumeration is desk-scale only");
    let mut out = Vec::new();
    for mask in 0u64..(1 << off_diag.len()) {
        let mut rel = Relation::empty(n).expect("n >= 1");
        for i in 0..n {
            rel.insert(i, i);
        }
        for (bit, &(i, j)) in off_diag.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel.insert(i, j);
            }
        }
        if let Ok(p) = Preorder::try_new(rel) {
            out.push(p);
        }
    }
    out
}
