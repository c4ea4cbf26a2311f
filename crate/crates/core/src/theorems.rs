//! Executable verification of the structural results about numerical-radius
//! parallelism and orthogonality: constructions, counterexamples and
//! randomized checks of equivalences, each reproducible from a seed.
//!
//! Random operators have entries drawn i.i.d. uniformly from `[−1, 1]`
//! (real and imaginary parts separately over ℂ) from a ChaCha8 generator
//! seeded with the verifier's seed.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{fixtures, operator_norm, rank_one, Operator};
use crate::radius::{numerical_radius, EngineConfig};
use crate::relations::{
    alpha_points, daugavet_check, norm_parallel_vectors, nr_birkhoff, nr_parallel, nr_parallel_via_orthogonality,
    unimodular_points, vo1_certificate, CrossCheck, RelationReport,
};
use crate::scalar::{Real, Scalar};
use crate::spaces::{Functional, NormKind, NormedSpace, Vector};
use crate::tol;

/// Identifiers accepted by [`run`], in the order [`run_all`] executes them.
pub const VERIFIER_IDS: [&str; 9] = ["pvi", "tpt", "pva", "pnv", "examples", "noninj", "final-thm", "vo1", "daugavet"];

/// `3^{3/4}/4`, the numerical radius of the ℓ⁴ shift `(x, y) ↦ (0, x)`.
pub const LP4_SHIFT_RADIUS: f64 = 0.569_876_764_238_694_4;

/// Precision demanded of the example radii and operator norms.
const EXAMPLE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// The measured quantity (a radius, a norm, or the number of trials).
    pub value: f64,
    /// Signed distance to the threshold; negative means on the failing side
    /// for checks of a true statement.
    pub gap: f64,
    /// The offending instance, in full, when the check failed.
    pub instance: Option<String>,
}

impl CheckRecord {
    fn new(name: impl Into<String>, passed: bool, value: f64, gap: f64) -> Self {
        CheckRecord { name: name.into(), passed, value, gap, instance: None }
    }

    fn with_instance(mut self, instance: impl Into<String>) -> Self {
        if !self.passed {
            self.instance = Some(instance.into());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationOutcome {
    pub id: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    pub seeds: Vec<u64>,
}

impl VerificationOutcome {
    fn new(id: &str, seeds: Vec<u64>) -> Self {
        VerificationOutcome { id: id.into(), passed: true, checks: Vec::new(), seeds }
    }

    fn push(&mut self, c: CheckRecord) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    fn extend(&mut self, other: VerificationOutcome) {
        for c in other.checks {
            self.push(c);
        }
        for s in other.seeds {
            if !self.seeds.contains(&s) {
                self.seeds.push(s);
            }
        }
    }
}

/// Counts violations over a batch of randomized trials and keeps the first
/// violating instance.
struct Tally {
    name: String,
    trials: usize,
    worst_gap: f64,
    failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), trials: 0, worst_gap: f64::INFINITY, failure: None }
    }

    fn record(&mut self, ok: bool, gap: f64, instance: impl FnOnce() -> String) {
        self.trials += 1;
        self.worst_gap = self.worst_gap.min(gap);
        if !ok && self.failure.is_none() {
            self.failure = Some(instance());
        }
    }

    fn finish(self) -> CheckRecord {
        let gap = if self.worst_gap.is_finite() { self.worst_gap } else { 0.0 };
        let passed = self.failure.is_none();
        let c = CheckRecord::new(format!("{} ({} trials)", self.name, self.trials), passed, self.trials as f64, gap);
        match self.failure {
            Some(f) => c.with_instance(f),
            None => c,
        }
    }
}

fn random_scalar<S: Scalar, G: Rng>(rng: &mut G, r: f64) -> S {
    let re = rng.random_range(-r..=r);
    let im = rng.random_range(-r..=r);
    S::from_parts(S::Real::lit(re), S::Real::lit(im))
}

/// Random operator with entries uniform on `[−1, 1]` (per real component).
pub fn random_operator<S: Scalar, G: Rng>(dim: usize, rng: &mut G) -> Operator<S> {
    Operator::from_fn(dim, |_, _| random_scalar(rng, 1.0))
}

/// Random unit vector: uniform coordinates, normalized.
pub fn random_unit<S: Scalar, G: Rng>(space: &NormedSpace<S>, rng: &mut G) -> Vector<S> {
    loop {
        let v = Vector::new((0..space.dim()).map(|_| random_scalar(rng, 1.0)).collect());
        if let Ok(Some(u)) = space.normalize(&v) {
            return u;
        }
    }
}

fn describe_ops<S: Scalar>(ops: &[(&str, &Operator<S>)]) -> String {
    ops.iter().map(|(n, t)| format!("{n}={:?}", t.rows())).collect::<Vec<_>>().join(", ")
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn label<S: Scalar>(space: &NormedSpace<S>) -> String {
    format!("{} {}-d {}", space.kind(), space.dim(), space.field())
}

fn strict<S: Scalar>(name: impl Into<String>, r: &RelationReport<S>) -> CheckRecord {
    CheckRecord::new(name, r.is_strictly_false(), r.value.as_f64(), r.gap.as_f64())
}

fn holds<S: Scalar>(name: impl Into<String>, r: &RelationReport<S>) -> CheckRecord {
    CheckRecord::new(name, r.verdict, r.value.as_f64(), r.gap.as_f64())
}

/// `T ∥_v αI` for random `T` and `α`; the first trial uses `α = 0`.
pub fn verify_pvi<S: Scalar>(
    space: &NormedSpace<S>,
    trials: usize,
    seed: u64,
    cfg: &EngineConfig,
) -> Result<VerificationOutcome> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let mut rng = rng_for(seed);
    let id = Operator::identity(space.dim());
    let mut tally = Tally::new(format!("T ∥_v αI on {}", label(space)));
    for k in 0..trials {
        let t = random_operator::<S, _>(space.dim(), &mut rng);
        let alpha: S = if k == 0 { S::zero() } else { random_scalar(&mut rng, 2.0) };
        let ai = id.scaled(alpha);
        let r = nr_parallel(space, &t, &ai, cfg)?;
        tally.record(r.verdict, r.gap.as_f64(), || {
            format!("{}, alpha={alpha:?}, report={r:?}", describe_ops(&[("T", &t)]))
        });
    }
    let mut out = VerificationOutcome::new("pvi", vec![seed]);
    out.push(tally.finish());
    Ok(out)
}

/// Non-transitivity of `∥_v`: with `x` smooth and `x*(y) = 0` for the
/// unique `x* ∈ J(x)`, the rank-one operators `A = x*(·)x` and `B = y*(·)y`
/// satisfy `A ∥_v I` and `I ∥_v B` but `A ∦_v B`.
pub fn nontransitivity_witness<S: Scalar>(
    space: &NormedSpace<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    cfg: &EngineConfig,
) -> Result<VerificationOutcome> {
    let jx = space.duality_set(x)?;
    if !jx.is_singleton() {
        return Err(Error::Precondition(format!("x = {:?} is not a smooth point of {}", x.coords(), label(space))));
    }
    let xs = jx.first().clone();
    let xy = xs.apply(y);
    if xy.modulus().as_f64() > tol::CLOSED_FORM {
        return Err(Error::Precondition(format!("the support functional of x does not annihilate y (x*(y) = {xy:?})")));
    }
    let ys = space.duality_set(y)?.first().clone();
    let a = rank_one(&xs, x)?;
    let b = rank_one(&ys, y)?;
    let id = Operator::identity(space.dim());
    let inst = format!("x={:?}, y={:?}, x*={:?}, y*={:?}", x.coords(), y.coords(), xs.coords(), ys.coords());
    let l = label(space);
    let mut out = VerificationOutcome::new("tpt", vec![cfg.seed]);
    out.push(holds(format!("A ∥_v I on {l}"), &nr_parallel(space, &a, &id, cfg)?).with_instance(&inst));
    out.push(holds(format!("I ∥_v B on {l}"), &nr_parallel(space, &id, &b, cfg)?).with_instance(&inst));
    out.push(strict(format!("x ∦ y on {l}"), &norm_parallel_vectors(space, x, y, cfg)?).with_instance(&inst));
    out.push(strict(format!("A ∦_v B on {l}"), &nr_parallel(space, &a, &b, cfg)?).with_instance(&inst));
    Ok(out)
}

/// Non-additivity of `⊥_vB` on both sides, from `x = e₁` and `x* ∈ J(x)`
/// with `P = x*(·)x`:
/// `I ⊥ P`, `I ⊥ I−P` but `I ⊥̸ I`; and `−P ⊥ I−P`, `I ⊥ I−P` but
/// `I−P ⊥̸ I−P`.
pub fn nonadditivity_witness<S: Scalar>(space: &NormedSpace<S>, cfg: &EngineConfig) -> Result<VerificationOutcome> {
    let x = Vector::basis(space.dim(), 0);
    let xs = space.duality_set(&x)?.first().clone();
    let p = rank_one(&xs, &x)?;
    let id = Operator::identity(space.dim());
    let q = &id - &p;
    let neg_p = -&p;
    let l = label(space);
    let inst = format!("x={:?}, x*={:?}", x.coords(), xs.coords());
    let mut out = VerificationOutcome::new("pva", vec![cfg.seed]);
    out.push(holds(format!("I ⊥_vB P on {l}"), &nr_birkhoff(space, &id, &p, cfg)?).with_instance(&inst));
    out.push(holds(format!("I ⊥_vB I−P on {l}"), &nr_birkhoff(space, &id, &q, cfg)?).with_instance(&inst));
    out.push(strict(format!("I ⊥̸_vB I on {l}"), &nr_birkhoff(space, &id, &id, cfg)?).with_instance(&inst));
    out.push(holds(format!("−P ⊥_vB I−P on {l}"), &nr_birkhoff(space, &neg_p, &q, cfg)?).with_instance(&inst));
    out.push(strict(format!("I−P ⊥̸_vB I−P on {l}"), &nr_birkhoff(space, &q, &q, cfg)?).with_instance(&inst));
    Ok(out)
}

/// For random unit `x, y` and `x* ∈ J(x)`, `y* ∈ J(y)`:
/// (a) `x*(·)x ∥_v y*(·)y ⇒ x ∥ y` in every space;
/// (b) `x ∥ y ⇒ x*(·)x ∥_v y*(·)y` when every unit vector is smooth or
///     rotund, checked on the `Lp` catalog.
///
/// Every fourth trial takes `y` to be a unimodular multiple of `x`, so
/// that the parallel case is exercised.
pub fn verify_pnv_and_smooth<S: Scalar>(
    space: &NormedSpace<S>,
    trials: usize,
    seed: u64,
    cfg: &EngineConfig,
) -> Result<VerificationOutcome> {
    let mut rng = rng_for(seed);
    let l = label(space);
    let mut fwd = Tally::new(format!("x*(·)x ∥_v y*(·)y ⇒ x ∥ y on {l}"));
    let mut conv = Tally::new(format!("x ∥ y ⇒ x*(·)x ∥_v y*(·)y on {l}"));
    let check_converse = matches!(space.kind(), NormKind::Lp(_));
    for k in 0..trials {
        let x = random_unit(space, &mut rng);
        let y = if k % 4 == 3 {
            let mu: S = S::unimodular(S::Real::lit(rng.random_range(0.0..core::f64::consts::TAU)));
            x.scaled(mu)
        } else {
            random_unit(space, &mut rng)
        };
        let xs = space.duality_set(&x)?.first().clone();
        let ys = space.duality_set(&y)?.first().clone();
        let a = rank_one(&xs, &x)?;
        let b = rank_one(&ys, &y)?;
        let nr = nr_parallel(space, &a, &b, cfg)?;
        let par = norm_parallel_vectors(space, &x, &y, cfg)?;
        let inst = || format!("x={:?}, y={:?}, nr={nr:?}, parallel={par:?}", x.coords(), y.coords());
        fwd.record(!nr.verdict || par.verdict, par.gap.as_f64(), inst);
        if check_converse && par.verdict {
            conv.record(nr.verdict, nr.gap.as_f64(), || format!("x={:?}, y={:?}, nr={nr:?}", x.coords(), y.coords()));
        }
    }
    let mut out = VerificationOutcome::new("pnv", vec![seed]);
    out.push(fwd.finish());
    if check_converse {
        out.push(conv.finish());
    }
    Ok(out)
}

/// The ℓ¹ plane: `x = (1,0) ∥ y = (0,1)`, yet with `x* = (1,0)` and
/// `y* = (0,1)` the rank-one operators are not `∥_v`.
pub fn l1_counterexample<S: Scalar>(cfg: &EngineConfig) -> Result<Vec<CheckRecord>> {
    let l1 = NormedSpace::<S>::new(NormKind::L1, 2)?;
    let x = Vector::from_reals(&[1.0, 0.0]);
    let y = Vector::from_reals(&[0.0, 1.0]);
    let (xs, ys) = (Functional::from_reals(&[1.0, 0.0]), Functional::from_reals(&[0.0, 1.0]));
    let a = rank_one(&xs, &x)?;
    let b = rank_one(&ys, &y)?;
    let f = S::Real::lit(tol::CLOSED_FORM).as_f64();
    let members = l1.is_support(&x, &xs, f)? && l1.is_support(&y, &ys, f)?;
    Ok(vec![
        CheckRecord::new("ℓ¹: x* ∈ J(x), y* ∈ J(y)", members, 1.0, 0.0),
        holds("ℓ¹: (1,0) ∥ (0,1)", &norm_parallel_vectors(&l1, &x, &y, cfg)?),
        strict("ℓ¹: x*(·)x ∦_v y*(·)y (max_λ v(A+λB) ≤ 2 − δ)", &nr_parallel(&l1, &a, &b, cfg)?),
    ])
}

fn close(name: &str, value: f64, target: f64, tol: f64) -> CheckRecord {
    let err = (value - target).abs();
    CheckRecord::new(format!("{name} = {target} ± {tol:e}"), err <= tol, value, tol - err)
}

fn below(name: &str, value: f64, bound: f64) -> CheckRecord {
    let gap = bound - tol::STRICT_MARGIN - value;
    CheckRecord::new(format!("{name} ≤ {bound} − δ"), gap >= 0.0, value, gap)
}

/// The worked examples: the ℓ⁴ shift and swap, the ℓ¹ rank-one pair and
/// the mixed Euclidean/max plane.
pub fn run_paper_examples(cfg: &EngineConfig) -> Result<VerificationOutcome> {
    let lp4 = NormedSpace::<f64>::lp(4.0, 2)?;
    let t = fixtures::shift::<f64>();
    let s = fixtures::swap::<f64>();
    let id = Operator::<f64>::identity(2);
    let v = |op: &Operator<f64>| numerical_radius(&lp4, op, cfg).map(|r| r.value);
    let n = |op: &Operator<f64>| operator_norm(&lp4, op, cfg);
    let (vt, vs) = (v(&t)?, v(&s)?);
    let mut out = VerificationOutcome::new("examples", vec![cfg.seed]);
    out.push(close("ℓ⁴: v(T)", vt, LP4_SHIFT_RADIUS, EXAMPLE_TOL));
    out.push(close("ℓ⁴: v(T−S)", v(&(&t - &s))?, LP4_SHIFT_RADIUS, EXAMPLE_TOL));
    out.push(close("ℓ⁴: v(S)", vs, 1.0, EXAMPLE_TOL));
    out.push(below("ℓ⁴: v(T+S)", v(&(&t + &s))?, vt + vs));
    out.push(below("ℓ⁴: v(T−S)", v(&(&t - &s))?, vt + vs));
    out.push(strict("ℓ⁴: T ∦_v S", &nr_parallel(&lp4, &t, &s, cfg)?));
    let (nt, ns, nts) = (n(&t)?, n(&s)?, n(&(&t + &s))?);
    out.push(close("ℓ⁴: ‖T‖", nt, 1.0, EXAMPLE_TOL));
    out.push(close("ℓ⁴: ‖S‖", ns, 1.0, EXAMPLE_TOL));
    out.push(close("ℓ⁴: ‖T+S‖", nts, 2.0, tol::CLOSED_FORM));
    out.push(CheckRecord::new("ℓ⁴: T ∥ S (‖T+S‖ = ‖T‖+‖S‖)", (nts - nt - ns).abs() <= cfg.tol, nts, nts - nt - ns));
    out.push(below("ℓ⁴: ‖T+I‖", n(&(&t + &id))?, 2.0));
    out.push(below("ℓ⁴: ‖T−I‖", n(&(&t - &id))?, 2.0));
    out.push(strict("ℓ⁴: T ∦ I (max_λ ‖I+λT‖ vs 1+‖T‖)", &daugavet_check(&lp4, &t, cfg)?));
    out.push(holds("ℓ⁴: T ∥_v I", &nr_parallel(&lp4, &t, &id, cfg)?));
    for c in l1_counterexample::<f64>(cfg)? {
        out.push(c);
    }
    let mixed = NormedSpace::<f64>::new(NormKind::MixedQuadMax, 2)?;
    let corner = Vector::from_reals(&[-1.0, 1.0]);
    out.push(CheckRecord::new(
        "mixed: ‖(−1,1)‖ = 1",
        (mixed.norm(&corner)? - 1.0).abs() <= tol::CLOSED_FORM,
        mixed.norm(&corner)?,
        0.0,
    ));
    out.push(CheckRecord::new("mixed: (−1,1) is not smooth", !mixed.is_smooth_point(&corner)?, 0.0, 0.0));
    out.push(CheckRecord::new("mixed: (−1,1) is not rotund", !mixed.is_rotund_point(&corner)?, 0.0, 0.0));
    let other = Vector::from_reals(&[0.6, 0.8]);
    out.push(CheckRecord::new("mixed: (0.6,0.8) is smooth", mixed.is_smooth_point(&other)?, 0.0, 0.0));
    Ok(out)
}

/// `I ⊥_vB T` for an operator with a nontrivial kernel.
///
/// A unit kernel vector `x` with `x* ∈ J(x)` gives `x*((I + αT)x) = 1`,
/// so `v(I + αT) ≥ 1` for every α. The bound is checked on a grid of α
/// and recorded as the cross-check; the verdict is [`nr_birkhoff`]'s.
pub fn noninjective_orthogonality<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    let x = t
        .kernel_vector(space, tol::CLOSED_FORM)?
        .ok_or_else(|| Error::Precondition("operator is injective (trivial kernel)".into()))?;
    let xs = space.duality_set(&x)?.first().clone();
    let id = Operator::identity(space.dim());
    let mut alphas: Vec<S> = alpha_points(2.0, 21);
    if S::IS_COMPLEX {
        let i = S::from_parts(S::Real::zero(), S::Real::one());
        alphas.extend(alpha_points::<S>(2.0, 21).into_iter().map(|a| a * i));
    }
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for a in alphas {
        let m = id.add_scaled(a, t)?;
        let at_x = xs.apply(&m.apply(&x)?);
        let v = numerical_radius(space, &m, cfg)?.value.as_f64();
        ok &= (at_x - S::one()).modulus().as_f64() <= tol::CLOSED_FORM && v >= 1.0 - cfg.tol;
        worst = worst.min(v - 1.0);
    }
    let mut r = nr_birkhoff(space, &id, t, cfg)?;
    let w = r.witness.get_or_insert_with(|| crate::relations::Witness {
        lambda_or_alpha: None,
        x: None,
        xstar: None,
        attained: Vec::new(),
    });
    w.x = Some(x);
    w.xstar = Some(xs);
    r.cross_check = Some(CrossCheck { name: "kernel_bound", verdict: ok, gap: S::Real::lit(worst) });
    Ok(r)
}

fn random_pair<S: Scalar, G: Rng>(dim: usize, k: usize, rng: &mut G) -> (Operator<S>, Operator<S>) {
    let t = random_operator::<S, _>(dim, rng);
    let s = match k % 3 {
        // parallel by construction: multiples of I and of T itself
        1 => Operator::identity(dim).scaled(random_scalar(rng, 2.0)),
        2 => t.scaled(random_scalar(rng, 2.0)),
        _ => random_operator(dim, rng),
    };
    (t, s)
}

/// `T ∥_v S ⇔ ∃λ ∈ 𝕋: T ⊥_vB v(S)T + λv(T)S` on random pairs. A third of
/// the pairs are `(T, αI)` and a third `(T, cT)`, which are parallel.
pub fn verify_final_theorem<S: Scalar>(
    space: &NormedSpace<S>,
    trials: usize,
    seed: u64,
    cfg: &EngineConfig,
) -> Result<VerificationOutcome> {
    let mut rng = rng_for(seed);
    let mut tally = Tally::new(format!("T ∥_v S ⇔ ∃λ: T ⊥_vB v(S)T+λv(T)S on {}", label(space)));
    for k in 0..trials {
        let (t, s) = random_pair::<S, _>(space.dim(), k, &mut rng);
        let p = nr_parallel(space, &t, &s, cfg)?;
        let o = nr_parallel_via_orthogonality(space, &t, &s, cfg)?;
        let gap = if p.verdict == o.verdict { p.gap.as_f64().abs().max(o.gap.as_f64().abs()) } else { -1.0 };
        tally.record(p.verdict == o.verdict, gap, || {
            format!("{}, parallel={p:?}, via_orthogonality={o:?}", describe_ops(&[("T", &t), ("S", &s)]))
        });
    }
    let mut out = VerificationOutcome::new("final-thm", vec![seed]);
    out.push(tally.finish());
    Ok(out)
}

/// Unimodular scalars at which [`vo1_certificate`] is tried: `±1` over ℝ;
/// over ℂ eight equally spaced points plus the phase of `extra`.
fn vo1_lambdas<S: Scalar>(extra: Option<S>) -> Vec<S> {
    let mut ls = unimodular_points::<S>(8);
    if S::IS_COMPLEX {
        if let Some(a) = extra.filter(|a| a.modulus() > S::Real::zero()) {
            ls.push(a.phase());
        }
    }
    ls
}

/// Whether certificates exist at every λ tried.
fn vo1_all<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    s: &Operator<S>,
    alpha: Option<S>,
    cfg: &EngineConfig,
) -> Result<(bool, f64)> {
    let mut all = true;
    let mut worst = f64::INFINITY;
    for l in vo1_lambdas(alpha) {
        match vo1_certificate(space, t, s, l, cfg)? {
            Some(c) => worst = worst.min(c.re_term.as_f64()),
            None => all = false,
        }
    }
    Ok((all, if worst.is_finite() { worst } else { 0.0 }))
}

/// `T ⊥_vB S ⇔` certificates exist for every λ. Checked on constructed
/// orthogonal pairs, on `I ⊥̸ I`, and on random pairs. Random pairs whose
/// orthogonality gap lies strictly between `−δ` and `−tol` are counted as
/// inconclusive rather than tested.
pub fn verify_vo1<S: Scalar>(
    space: &NormedSpace<S>,
    trials: usize,
    seed: u64,
    cfg: &EngineConfig,
) -> Result<VerificationOutcome> {
    let mut rng = rng_for(seed);
    let l = label(space);
    let dim = space.dim();
    let id = Operator::identity(dim);
    let x = Vector::basis(dim, 0);
    let p = rank_one(space.duality_set(&x)?.first(), &x)?;
    let q = &id - &p;
    let mut out = VerificationOutcome::new("vo1", vec![seed]);
    let constructed = [
        ("I ⊥_vB P", id.clone(), p.clone()),
        ("I ⊥_vB I−P", id.clone(), q.clone()),
        ("−P ⊥_vB I−P", -&p, q.clone()),
        ("T ⊥_vB 0", random_operator(dim, &mut rng), Operator::zero(dim)),
    ];
    for (name, t, s) in constructed {
        let (all, worst) = vo1_all(space, &t, &s, None, cfg)?;
        out.push(CheckRecord::new(format!("{name}: certificates for every λ on {l}"), all, worst, worst));
    }
    let none = vo1_certificate(space, &id, &id, -S::one(), cfg)?;
    out.push(CheckRecord::new(format!("I ⊥̸_vB I: no certificate at λ = −1 on {l}"), none.is_none(), 0.0, 0.0));

    let mut tally = Tally::new(format!("T ⊥_vB S ⇔ certificates for every λ on {l}"));
    let mut inconclusive = 0usize;
    for _ in 0..trials {
        let t = random_operator::<S, _>(dim, &mut rng);
        let s = random_operator::<S, _>(dim, &mut rng);
        let nb = nr_birkhoff(space, &t, &s, cfg)?;
        if !nb.verdict && !nb.is_strictly_false() {
            inconclusive += 1;
            continue;
        }
        let alpha = nb.witness.as_ref().and_then(|w| w.lambda_or_alpha);
        let (all, _) = vo1_all(space, &t, &s, alpha, cfg)?;
        tally.record(all == nb.verdict, nb.gap.as_f64(), || {
            format!("{}, nr_birkhoff={nb:?}, certificates_for_all={all}", describe_ops(&[("T", &t), ("S", &s)]))
        });
    }
    let mut c = tally.finish();
    c.name = format!("{} [{inconclusive} inconclusive]", c.name);
    out.push(c);
    Ok(out)
}

/// Agreement of the alternative Daugavet equation with `v(T) = ‖T‖` on the
/// given operators.
pub fn verify_daugavet<S: Scalar>(
    space: &NormedSpace<S>,
    ops: &[Operator<S>],
    cfg: &EngineConfig,
) -> Result<VerificationOutcome> {
    let mut out = VerificationOutcome::new("daugavet", vec![cfg.seed]);
    let mut tally = Tally::new(format!("max_λ‖I+λT‖ = 1+‖T‖ ⇔ v(T) = ‖T‖ on {}", label(space)));
    for t in ops {
        let r = daugavet_check(space, t, cfg)?;
        let cc = r.cross_check.as_ref().map(|c| c.gap.as_f64()).unwrap_or(0.0);
        tally.record(r.cross_check_agrees(), r.gap.as_f64().abs().min(cc.abs()), || {
            format!("{}, report={r:?}", describe_ops(&[("T", t)]))
        });
    }
    out.push(tally.finish());
    Ok(out)
}

/// Fixture operators plus `random` random ones, for the Daugavet suite.
pub fn daugavet_operators<S: Scalar>(dim: usize, random: usize, seed: u64) -> Vec<Operator<S>> {
    let mut rng = rng_for(seed);
    let e1 = Vector::basis(dim, 0);
    let mut ops = vec![
        Operator::identity(dim),
        Operator::from_fn(dim, |i, j| if i == j + 1 { S::one() } else { S::zero() }),
        Operator::from_fn(dim, |i, j| if i + j == dim - 1 { S::one() } else { S::zero() }),
        rank_one(&Functional::new(e1.coords().to_vec()), &e1).expect("same dim"),
    ];
    ops.extend((0..random).map(|_| random_operator(dim, &mut rng)));
    ops
}

fn real_space(kind: NormKind) -> Result<NormedSpace<f64>> {
    NormedSpace::new(kind, 2)
}

/// Runs the verifier `id` with its standard instances.
pub fn run(id: &str, seed: u64) -> Result<VerificationOutcome> {
    let cfg = EngineConfig::default().with_seed(seed);
    let lp2 = real_space(NormKind::Lp(2.0))?;
    let lp4 = real_space(NormKind::Lp(4.0))?;
    let l1 = real_space(NormKind::L1)?;
    let linf = real_space(NormKind::Linf)?;
    let e = |i| Vector::<f64>::basis(2, i);
    let mut out = VerificationOutcome::new(id, vec![seed]);
    match id {
        "pvi" => {
            out.extend(verify_pvi(&lp4, 200, seed, &cfg)?);
            let c2 = NormedSpace::<num_complex::Complex64>::lp(2.0, 2)?;
            out.extend(verify_pvi(&c2, 12, seed, &cfg)?);
        }
        "tpt" => {
            for sp in [&lp4, &lp2] {
                out.extend(nontransitivity_witness(sp, &e(0), &e(1), &cfg)?);
            }
        }
        "pva" => {
            for sp in [&lp2, &lp4, &l1] {
                out.extend(nonadditivity_witness(sp, &cfg)?);
            }
        }
        "pnv" => {
            out.extend(verify_pnv_and_smooth(&lp4, 100, seed, &cfg)?);
            for c in l1_counterexample::<f64>(&cfg)? {
                out.push(c);
            }
        }
        "examples" => out.extend(run_paper_examples(&cfg)?),
        "noninj" => {
            for sp in [&lp2, &lp4, &l1] {
                let x = e(0);
                let p = rank_one(sp.duality_set(&x)?.first(), &x)?;
                let q = &Operator::identity(2) - &p;
                for (name, t) in [("P", &p), ("I−P", &q)] {
                    let r = noninjective_orthogonality(sp, t, &cfg)?;
                    let c = holds(format!("I ⊥_vB {name} on {}", label(sp)), &r);
                    out.push(CheckRecord { passed: c.passed && r.cross_check_agrees(), ..c });
                }
            }
            let rejected = noninjective_orthogonality(&lp2, &Operator::identity(2), &cfg);
            out.push(CheckRecord::new(
                "T = I is rejected as injective",
                matches!(rejected, Err(Error::Precondition(_))),
                0.0,
                0.0,
            ));
        }
        "final-thm" => {
            for sp in [&lp2, &lp4] {
                out.extend(verify_final_theorem(sp, 100, seed, &cfg)?);
            }
        }
        "vo1" => {
            for sp in [&lp2, &lp4] {
                out.extend(verify_vo1(sp, 30, seed, &cfg)?);
            }
        }
        "daugavet" => {
            for sp in [&lp2, &lp4, &l1, &linf] {
                out.extend(verify_daugavet(sp, &daugavet_operators(2, 12, seed), &cfg)?);
            }
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown verifier id {other:?}; expected one of {}",
                VERIFIER_IDS.join(", ")
            )))
        }
    }
    out.passed = out.checks.iter().all(|c| c.passed);
    Ok(out)
}

/// Every verifier in [`VERIFIER_IDS`] order.
pub fn run_all(seed: u64) -> Result<Vec<VerificationOutcome>> {
    VERIFIER_IDS.iter().map(|id| run(id, seed)).collect()
}
