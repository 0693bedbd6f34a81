//! Generic suite bodies. Each suite runs seeded trials against one theorem
//! and records full replay payloads for anything that fails; the theorems
//! are exact, so a failure is an implementation bug by definition.

use serde_json::{json, Value};

use crate::inverse::{
    inv_adjugate, inv_by_power_order, inv_nil_geometric, inv_via_char_poly, InverseCertificate,
    InverseError,
};
use crate::matrix::{
    self, check_structural, det_unchecked, identity, mat_add, mat_mul, zero_matrix, SquareMatrix,
    PREADJOINT_DEFAULT_CAP,
};
use crate::preorder::{Preorder, RelationDoc};
use crate::ring::matrix_ring::SquareMatrixRing;
use crate::ring::{NilRing, Ring};

use super::{
    gen_invertible_structural, gen_preorder, gen_structural_matrix, trial_rng, HarnessError,
    Scenario, SuiteReport, SuiteRunner, ThetaSpec, DEFAULT_DENSITY,
};

/// Inversion strategy paired with its invertibility probe, so sampling and
/// inverting agree on what "invertible" means.
pub trait MatrixInverter<R: Ring> {
    fn is_invertible(&self, ring: &R, a: &SquareMatrix<R::Elem>) -> bool;
    fn invert(
        &self,
        ring: &R,
        a: &SquareMatrix<R::Elem>,
    ) -> Result<InverseCertificate<SquareMatrix<R::Elem>>, InverseError>;
}

/// Determinant-is-a-unit route for commutative rings.
pub struct AdjugateInverter;

impl<R: Ring> MatrixInverter<R> for AdjugateInverter {
    fn is_invertible(&self, ring: &R, a: &SquareMatrix<R::Elem>) -> bool {
        ring.is_commutative() && ring.try_invert(&det_unchecked(ring, a)).is_some()
    }

    fn invert(
        &self,
        ring: &R,
        a: &SquareMatrix<R::Elem>,
    ) -> Result<InverseCertificate<SquareMatrix<R::Elem>>, InverseError> {
        inv_adjugate(ring, a)
    }
}

/// Quotient-then-lift route for rings with computable nilradical.
pub struct NilGeometricInverter;

impl<R: NilRing> MatrixInverter<R> for NilGeometricInverter {
    fn is_invertible(&self, ring: &R, a: &SquareMatrix<R::Elem>) -> bool {
        let q = ring.quotient_ring();
        let body = a.map(|e| ring.project(e));
        q.try_invert(&det_unchecked(&q, &body)).is_some()
    }

    fn invert(
        &self,
        ring: &R,
        a: &SquareMatrix<R::Elem>,
    ) -> Result<InverseCertificate<SquareMatrix<R::Elem>>, InverseError> {
        inv_nil_geometric(ring, a, None)
    }
}

fn instance_value<R: Ring>(
    ring: &R,
    theta: Option<&Preorder>,
    mats: &[(&str, &SquareMatrix<R::Elem>)],
) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("ring".into(), serde_json::to_value(ring.descriptor()).expect("descriptor"));
    if let Some(t) = theta {
        map.insert(
            "theta".into(),
            serde_json::to_value(RelationDoc::from_preorder(t)).expect("theta"),
        );
    }
    for (label, m) in mats {
        map.insert((*label).into(), crate::io::matrix_value(ring, m));
    }
    Value::Object(map)
}

fn scenario_value(sc: &Scenario) -> Value {
    serde_json::to_value(sc).expect("scenario serializes")
}

/// Invertible structural matrices keep structural inverses.
pub fn closure_suite<R: Ring, I: MatrixInverter<R>>(
    ring: &R,
    inverter: &I,
    sc: &Scenario,
) -> Result<SuiteReport, HarnessError> {
    let mut runner = SuiteRunner::new("closure", scenario_value(sc), sc.seed);
    for trial in 0..sc.trials {
        let mut rng = trial_rng(sc.seed, trial as u64);
        let theta = sc.theta_for_trial(&mut rng);
        let a = gen_invertible_structural(ring, &theta, &mut rng, sc.retry_cap, |r, m| {
            inverter.is_invertible(r, m)
        })?;
        runner.record_trial();
        match inverter.invert(ring, &a) {
            Ok(cert) => {
                if !check_structural(ring, &cert.inverse, &theta).expect("sizes match") {
                    runner.fail(
                        trial,
                        "inverse escaped the pattern",
                        instance_value(ring, Some(&theta), &[("matrix", &a), ("inverse", &cert.inverse)]),
                    );
                }
            }
            Err(e) => runner.fail(
                trial,
                format!("inversion failed on a sampled-invertible matrix: {e}"),
                instance_value(ring, Some(&theta), &[("matrix", &a)]),
            ),
        }
    }
    Ok(runner.finish())
}

/// The preadjoint of a structural matrix is structural over any ring; over
/// commutative rings it also equals `(n-1)!` times the adjugate.
pub fn preadjoint_suite<R: Ring>(ring: &R, sc: &Scenario) -> Result<SuiteReport, HarnessError> {
    if sc.n > PREADJOINT_DEFAULT_CAP {
        return Err(HarnessError::UnsupportedCombination {
            suite: "preadjoint".into(),
            why: format!("n = {} exceeds the preadjoint cap {PREADJOINT_DEFAULT_CAP}", sc.n),
        });
    }
    let mut factorial: i64 = 1;
    for k in 2..sc.n {
        factorial *= k as i64;
    }
    let mut runner = SuiteRunner::new("preadjoint", scenario_value(sc), sc.seed);
    for trial in 0..sc.trials {
        let mut rng = trial_rng(sc.seed, trial as u64);
        let theta = sc.theta_for_trial(&mut rng);
        let a = gen_structural_matrix(ring, &theta, &mut rng);
        runner.record_trial();
        let pre = matrix::preadjoint(ring, &a).expect("size checked above");
        if !check_structural(ring, &pre, &theta).expect("sizes match") {
            runner.fail(
                trial,
                "preadjoint escaped the pattern",
                instance_value(ring, Some(&theta), &[("matrix", &a), ("preadjoint", &pre)]),
            );
        }
        if ring.is_commutative() {
            let adj = matrix::adjugate(ring, &a).expect("commutative");
            let scaled = adj.map(|e| ring.int_mul(factorial, e));
            if pre != scaled {
                runner.fail(
                    trial,
                    "preadjoint differs from (n-1)! adjugate on a commutative ring",
                    instance_value(
                        ring,
                        Some(&theta),
                        &[("matrix", &a), ("preadjoint", &pre), ("scaled_adjugate", &scaled)],
                    ),
                );
            }
        }
    }
    Ok(runner.finish())
}

/// The adjugate of a structural matrix is structural over commutative
/// rings, and multiplies with the matrix to the determinant times identity.
pub fn adjoint_suite<R: Ring>(ring: &R, sc: &Scenario) -> Result<SuiteReport, HarnessError> {
    let mut runner = SuiteRunner::new("adjoint", scenario_value(sc), sc.seed);
    for trial in 0..sc.trials {
        let mut rng = trial_rng(sc.seed, trial as u64);
        let theta = sc.theta_for_trial(&mut rng);
        let a = gen_structural_matrix(ring, &theta, &mut rng);
        runner.record_trial();
        let adj = matrix::adjugate(ring, &a).expect("commutative checked at dispatch");
        if !check_structural(ring, &adj, &theta).expect("sizes match") {
            runner.fail(
                trial,
                "adjugate escaped the pattern",
                instance_value(ring, Some(&theta), &[("matrix", &a), ("adjugate", &adj)]),
            );
        }
        let det = det_unchecked(ring, &a);
        let want = matrix::scalar_embed(ring, &det, sc.n);
        if mat_mul(ring, &a, &adj) != want || mat_mul(ring, &adj, &a) != want {
            runner.fail(
                trial,
                "A adj(A) or adj(A) A differs from det(A) I",
                instance_value(ring, Some(&theta), &[("matrix", &a), ("adjugate", &adj)]),
            );
        }
    }
    Ok(runner.finish())
}

fn blockwise_structural<R: Ring>(
    ring: &R,
    x: &SquareMatrix<SquareMatrix<R::Elem>>,
    outer: &Preorder,
    inner: &Preorder,
) -> bool {
    for i in 0..x.n() {
        for j in 0..x.n() {
            let blk = x.at(i, j);
            if !check_structural(ring, blk, inner).expect("block sizes match") {
                return false;
            }
            if !outer.contains(i, j) && blk.entries().any(|e| !ring.is_zero(e)) {
                return false;
            }
        }
    }
    true
}

/// Flattening blocks is additive, multiplicative and unit-preserving, and
/// structural for the block pattern pair exactly when the image is
/// structural for the composed pattern.
pub fn flatten_suite<R: Ring>(
    base: &R,
    block_size: usize,
    sc: &Scenario,
) -> Result<SuiteReport, HarnessError> {
    let inner_ring = SquareMatrixRing::new(base.clone(), block_size);
    let density = match &sc.theta {
        ThetaSpec::Random { density } => *density,
        ThetaSpec::Fixed { .. } => DEFAULT_DENSITY,
    };
    let mut runner = SuiteRunner::new("flatten", scenario_value(sc), sc.seed);
    for trial in 0..sc.trials {
        let mut rng = trial_rng(sc.seed, trial as u64);
        let outer_theta = sc.theta_for_trial(&mut rng);
        let inner_theta = gen_preorder(block_size, density, &mut rng);
        let composed = outer_theta.compose_kron(&inner_theta);

        let blocked = |rng: &mut rand_chacha::ChaCha8Rng| {
            SquareMatrix::from_fn(sc.n, |i, j| {
                if outer_theta.contains(i, j) {
                    gen_structural_matrix(base, &inner_theta, rng)
                } else {
                    zero_matrix(base, block_size)
                }
            })
        };
        let x = blocked(&mut rng);
        let y = blocked(&mut rng);
        let unconstrained = SquareMatrix::from_fn(sc.n, |_, _| inner_ring.sample(&mut rng));
        runner.record_trial();

        let check = |name: &str, ok: bool, runner: &mut SuiteRunner, extra: Value| {
            if !ok {
                runner.fail(trial, format!("flatten check {name} failed"), extra);
            }
        };

        let flat_id = matrix::flatten_blocks(&identity(&inner_ring, sc.n)).expect("blocks");
        check(
            "unit",
            flat_id == identity(base, sc.n * block_size),
            &mut runner,
            json!({"ring": base.descriptor()}),
        );

        let xy = mat_mul(&inner_ring, &x, &y);
        let flat_xy = matrix::flatten_blocks(&xy).expect("blocks");
        let flat_x = matrix::flatten_blocks(&x).expect("blocks");
        let flat_y = matrix::flatten_blocks(&y).expect("blocks");
        check(
            "multiplicative",
            flat_xy == mat_mul(base, &flat_x, &flat_y),
            &mut runner,
            instance_value(base, None, &[("flat_x", &flat_x), ("flat_y", &flat_y)]),
        );

        let sum = mat_add(&inner_ring, &x, &y);
        check(
            "additive",
            matrix::flatten_blocks(&sum).expect("blocks") == mat_add(base, &flat_x, &flat_y),
            &mut runner,
            instance_value(base, None, &[("flat_x", &flat_x), ("flat_y", &flat_y)]),
        );

        check(
            "structural_image",
            check_structural(base, &flat_x, &composed).expect("sizes match"),
            &mut runner,
            instance_value(base, Some(&composed), &[("flat_x", &flat_x)]),
        );

        let flat_u = matrix::flatten_blocks(&unconstrained).expect("blocks");
        let lhs = blockwise_structural(base, &unconstrained, &outer_theta, &inner_theta);
        let rhs = check_structural(base, &flat_u, &composed).expect("sizes match");
        check(
            "structural_iff",
            lhs == rhs,
            &mut runner,
            instance_value(base, Some(&composed), &[("flat_unconstrained", &flat_u)]),
        );
    }
    Ok(runner.finish())
}

/// The characteristic polynomial annihilates its matrix, and when the
/// determinant is a unit the annihilator-extracted inverse agrees with the
/// adjugate inverse (and with power iteration on finite rings).
pub fn cayley_hamilton_suite<R: Ring>(ring: &R, sc: &Scenario) -> Result<SuiteReport, HarnessError> {
    let full = Preorder::full(sc.n).expect("n >= 1");
    let mut runner = SuiteRunner::new("cayley_hamilton", scenario_value(sc), sc.seed);
    for trial in 0..sc.trials {
        let mut rng = trial_rng(sc.seed, trial as u64);
        let a = gen_structural_matrix(ring, &full, &mut rng);
        runner.record_trial();
        let chi = matrix::char_poly(ring, &a).expect("commutative checked at dispatch");
        let evaluated = matrix::eval_poly_at_matrix(ring, &chi, &a);
        if evaluated != zero_matrix(ring, sc.n) {
            runner.fail(
                trial,
                "characteristic polynomial does not annihilate the matrix",
                instance_value(ring, None, &[("matrix", &a), ("chi_of_A", &evaluated)]),
            );
            continue;
        }
        let det = det_unchecked(ring, &a);
        if ring.try_invert(&det).is_none() {
            continue;
        }
        let via_adj = inv_adjugate(ring, &a).expect("det is a unit");
        match inv_via_char_poly(ring, &a) {
            Ok(via_chi) if via_chi.inverse == via_adj.inverse => {}
            Ok(via_chi) => runner.fail(
                trial,
                "annihilator inverse differs from adjugate inverse",
                instance_value(
                    ring,
                    None,
                    &[("matrix", &a), ("adjugate_inverse", &via_adj.inverse), ("annihilator_inverse", &via_chi.inverse)],
                ),
            ),
            Err(e) => runner.fail(
                trial,
                format!("annihilator inversion failed on an invertible matrix: {e}"),
                instance_value(ring, None, &[("matrix", &a)]),
            ),
        }
        if ring.is_finite() {
            let mring = SquareMatrixRing::new(ring.clone(), sc.n);
            match inv_by_power_order(&mring, &a) {
                Ok(via_pow) if via_pow.inverse == via_adj.inverse => {}
                Ok(via_pow) => runner.fail(
                    trial,
                    "power-order inverse differs from adjugate inverse",
                    instance_value(ring, None, &[("matrix", &a), ("power_inverse", &via_pow.inverse)]),
                ),
                Err(e) => runner.fail(
                    trial,
                    format!("power-order inversion failed on an invertible matrix: {e}"),
                    instance_value(ring, None, &[("matrix", &a)]),
                ),
            }
        }
    }
    Ok(runner.finish())
}

/// Element-level binomial lifting of approximate inverses, and (over
/// commutative nil rings) agreement of the nil-geometric matrix inverse
/// with the adjugate inverse.
pub fn nil_lift_suite<R: NilRing>(
    ring: &R,
    sc: &Scenario,
    matrix_part: bool,
) -> Result<SuiteReport, HarnessError> {
    let quotient = ring.quotient_ring();
    let mut runner = SuiteRunner::new("nil_lift", scenario_value(sc), sc.seed);
    for trial in 0..sc.trials {
        let mut rng = trial_rng(sc.seed, trial as u64);
        // sample a unit: the body must invert in the quotient
        let mut found = None;
        for _ in 0..sc.retry_cap {
            let x = ring.sample(&mut rng);
            if let Some(q_inv) = quotient.try_invert(&ring.project(&x)) {
                found = Some((x, q_inv));
                break;
            }
        }
        let (x, q_inv) = found.ok_or(HarnessError::GenerationFailed(sc.retry_cap))?;
        runner.record_trial();
        let elem_payload = || {
            json!({
                "ring": ring.descriptor(),
                "x": ring.elem_to_json(&x),
            })
        };
        let approximant = ring.lift(&q_inv);
        match crate::inverse::lift_inverse_nil_binomial(ring, &x, &[approximant], ring.nil_index())
        {
            Ok(cert) => match ring.try_invert(&x) {
                Some(direct) if direct == cert.inverse => {}
                Some(_) => runner.fail(
                    trial,
                    "binomial lift disagrees with the direct inverse",
                    elem_payload(),
                ),
                None => runner.fail(
                    trial,
                    "direct inversion refused an element the lift inverted",
                    elem_payload(),
                ),
            },
            Err(e) => runner.fail(trial, format!("binomial lift failed: {e}"), elem_payload()),
        }

        if matrix_part {
            let full = Preorder::full(sc.n).expect("n >= 1");
            let a = gen_invertible_structural(ring, &full, &mut rng, sc.retry_cap, |r, m| {
                NilGeometricInverter.is_invertible(r, m)
            })?;
            match (inv_nil_geometric(ring, &a, None), inv_adjugate(ring, &a)) {
                (Ok(nil), Ok(adj)) if nil.inverse == adj.inverse => {}
                (Ok(nil), Ok(adj)) => runner.fail(
                    trial,
                    "nil-geometric inverse differs from adjugate inverse",
                    instance_value(
                        ring,
                        None,
                        &[("matrix", &a), ("nil_inverse", &nil.inverse), ("adj_inverse", &adj.inverse)],
                    ),
                ),
                (nil, adj) => runner.fail(
                    trial,
                    format!(
                        "matrix inversion failed: nil-geometric {:?}, adjugate {:?}",
                        nil.err(),
                        adj.err()
                    ),
                    instance_value(ring, None, &[("matrix", &a)]),
                ),
            }
        }
    }
    Ok(runner.finish())
}

/// Samples elements with a certified right inverse and checks the product
/// in the other order is also the identity.
pub fn dedekind_suite<R: Ring>(ring: &R, sc: &Scenario) -> Result<SuiteReport, HarnessError> {
    let mut runner = SuiteRunner::new("dedekind", scenario_value(sc), sc.seed);
    for trial in 0..sc.trials {
        let mut rng = trial_rng(sc.seed, trial as u64);
        let mut found = None;
        for _ in 0..sc.retry_cap {
            let x = ring.sample(&mut rng);
            if let Some(b) = ring.try_invert(&x) {
                found = Some((x, b));
                break;
            }
        }
        let (x, b) = found.ok_or(HarnessError::GenerationFailed(sc.retry_cap))?;
        runner.record_trial();
        let right = ring.is_one(&ring.mul(&x, &b));
        let left = ring.is_one(&ring.mul(&b, &x));
        if !right || !left {
            runner.fail(
                trial,
                format!("one-sided inverse detected: right = {right}, left = {left}"),
                json!({
                    "ring": ring.descriptor(),
                    "x": ring.elem_to_json(&x),
                    "candidate_inverse": ring.elem_to_json(&b),
                }),
            );
        }
    }
    Ok(runner.finish())
}
