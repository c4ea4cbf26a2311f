//! Decision procedures for norm parallelism, Birkhoff orthogonality, their
//! numerical-radius analogues and the alternative Daugavet equation.
//!
//! Every decider returns a [`RelationReport`] carrying the optimized value,
//! the value it is compared against, and the scalar (λ or α) where the
//! optimum was found. A `false` verdict is only a *strict* failure when the
//! gap exceeds [`tol::STRICT_MARGIN`]; see [`RelationReport::is_strictly_false`].
//!
//! Searches over the unimodular set 𝕋 are exact over the reals (`±1`). Over
//! the complex field a uniform grid of `cfg.lambda_grid` angles is scanned
//! and the best arcs are refined by golden-section search. When each grid
//! point costs a numerical-radius computation, the scan uses a cheaper
//! engine configuration and only the refinement runs at full budget.

use num_traits::{Float, FloatConst, One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::operators::{norm_unchecked, Operator};
use crate::radius::{radius_unchecked, EngineConfig, RadiusResult};
use crate::scalar::{Real, Scalar};
use crate::search::{circle_samples, golden_min_until, refine_circle};
use crate::spaces::{Functional, NormedSpace, Vector};
use crate::tol;

/// Grid arcs refined after a scan of 𝕋.
const LAMBDA_ARCS: usize = 3;
const LAMBDA_XTOL: f64 = 1e-9;
/// Relative step at which the α searches stop, for closed-form norms and
/// for numerical radii respectively.
const ALPHA_XTOL_NORM: f64 = 1e-12;
const ALPHA_XTOL_RADIUS: f64 = 1e-9;
/// The nested (re, im) α search over ℂ stops earlier; each point already
/// costs a full inner search.
const ALPHA_XTOL_NESTED: f64 = 1e-5;
/// Perturbation sizes tried by [`vo1_certificate`].
const VO1_EPS: [f64; 7] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

/// Where a relation holds or fails: the scalar found by the search and,
/// for operator relations, a supporting pair `(x, x*)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness<S: Scalar> {
    /// λ ∈ 𝕋 for parallelism-type relations, α ∈ 𝔽 for orthogonality.
    pub lambda_or_alpha: Option<S>,
    pub x: Option<Vector<S>>,
    pub xstar: Option<Functional<S>>,
    /// Values attained at the witness. For the numerical-radius relations
    /// with a pair `(x, x*)` these are `[x*(Tx), x*(Sx)]`.
    pub attained: Vec<S>,
}

impl<S: Scalar> Witness<S> {
    fn scalar(s: S, attained: Vec<S>) -> Self {
        Witness { lambda_or_alpha: Some(s), x: None, xstar: None, attained }
    }
}

/// A second boolean computed alongside the verdict that theory says must
/// agree with it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck<R> {
    pub name: &'static str,
    pub verdict: bool,
    pub gap: R,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport<S: Scalar> {
    pub relation: &'static str,
    pub verdict: bool,
    /// The optimized quantity (a maximum or a minimum, per relation).
    pub value: S::Real,
    pub required: S::Real,
    /// `value − required`; the verdict is `gap ≥ −tol`.
    pub gap: S::Real,
    pub tol: f64,
    pub margin: f64,
    pub witness: Option<Witness<S>>,
    pub cross_check: Option<CrossCheck<S::Real>>,
    /// Set when the verdict followed from a degenerate case without search.
    pub note: Option<&'static str>,
}

impl<S: Scalar> RelationReport<S> {
    fn new(relation: &'static str, value: S::Real, required: S::Real, tol: f64) -> Self {
        let gap = value - required;
        RelationReport {
            relation,
            verdict: gap >= -S::Real::lit(tol),
            value,
            required,
            gap,
            tol,
            margin: tol::STRICT_MARGIN,
            witness: None,
            cross_check: None,
            note: None,
        }
    }

    fn degenerate(relation: &'static str, value: S::Real, tol: f64, note: &'static str) -> Self {
        RelationReport { note: Some(note), ..Self::new(relation, value, value, tol) }
    }

    fn with_witness(mut self, w: Witness<S>) -> Self {
        self.witness = Some(w);
        self
    }

    /// The relation fails by at least the strict margin.
    pub fn is_strictly_false(&self) -> bool {
        self.gap.as_f64() <= -self.margin
    }
}

/// Maximizes `fine` over 𝕋. Complex fields scan a grid with `scan` first.
fn unimodular_max<S, F, G>(n: usize, mut scan: F, mut fine: G) -> (S, S::Real)
where
    S: Scalar,
    F: FnMut(S) -> S::Real,
    G: FnMut(S) -> S::Real,
{
    if !S::IS_COMPLEX {
        let (p, m) = (fine(S::one()), fine(-S::one()));
        return if m > p { (-S::one(), m) } else { (S::one(), p) };
    }
    let samples = circle_samples(&mut |t| scan(S::unimodular(t)), n);
    let mut f = |t| fine(S::unimodular(t));
    // the winner may be a grid point scored by `scan`; re-score it with `fine`
    let (t, _) = refine_circle(&mut f, &samples, LAMBDA_ARCS, S::Real::lit(LAMBDA_XTOL));
    let v = f(t);
    (S::unimodular(t), v)
}

/// Minimizes `f` over `{α ∈ 𝔽 : |Re α|, |Im α| ≤ bound}`, optionally
/// stopping early once a value at or below `stop` is seen. Over ℂ the search is nested: the
/// outer golden search runs over `Re α`, each point minimizing over `Im α`.
fn scalar_min<S, F>(bound: S::Real, xtol: S::Real, stop: Option<S::Real>, mut f: F) -> (S, S::Real)
where
    S: Scalar,
    F: FnMut(S) -> S::Real,
{
    let zero = S::Real::zero();
    if !S::IS_COMPLEX {
        let (a, v) = golden_min_until(&mut |a| f(S::from_real(a)), -bound, bound, xtol, stop);
        return (S::from_real(a), v);
    }
    let mut best = (S::zero(), S::Real::infinity());
    let mut inner = |re: S::Real| {
        let (im, v) = golden_min_until(&mut |im| f(S::from_parts(re, im)), -bound, bound, xtol, stop);
        if v < best.1 {
            best = (S::from_parts(re, im), v);
        }
        v
    };
    golden_min_until(&mut inner, -bound, bound, xtol, stop);
    if best.1 == S::Real::infinity() {
        best = (S::zero(), f(S::from_parts(zero, zero)));
    }
    best
}

/// Unimodular scalars used for sweeps: `±1` over ℝ, `n` equally spaced
/// points of the unit circle over ℂ.
pub fn unimodular_points<S: Scalar>(n: usize) -> Vec<S> {
    if !S::IS_COMPLEX {
        return vec![S::one(), -S::one()];
    }
    let step = <S::Real as FloatConst>::TAU() / <S::Real as Real>::lit(n as f64);
    (0..n).map(|k| S::unimodular(step * <S::Real as Real>::lit(k as f64))).collect()
}

/// `n` equally spaced real scalars on `[−bound, bound]`.
pub fn alpha_points<S: Scalar>(bound: f64, n: usize) -> Vec<S> {
    let n = n.max(2);
    (0..n).map(|k| S::from_real(S::Real::lit(-bound + 2.0 * bound * k as f64 / (n - 1) as f64))).collect()
}

fn check_vectors<S: Scalar>(space: &NormedSpace<S>, x: &Vector<S>, y: &Vector<S>, cfg: &EngineConfig) -> Result<()> {
    cfg.validate()?;
    space.norm(x)?;
    space.norm(y)?;
    Ok(())
}

fn check_operators<S: Scalar>(space: &NormedSpace<S>, ops: &[&Operator<S>], cfg: &EngineConfig) -> Result<()> {
    cfg.validate()?;
    for t in ops {
        space.check_dim(t.dim())?;
    }
    Ok(())
}

/// `x ∥ y`: `‖x + λy‖ = ‖x‖ + ‖y‖` for some `λ ∈ 𝕋`.
pub fn norm_parallel_vectors<S: Scalar>(
    space: &NormedSpace<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    check_vectors(space, x, y, cfg)?;
    let required = space.norm_of(x.coords()) + space.norm_of(y.coords());
    let f = |l: S| space.norm_of(x.add_scaled(l, y).coords());
    let (lambda, value) = unimodular_max(cfg.lambda_grid, f, f);
    // over ℝ both candidates are evaluated exactly
    let tol = if S::IS_COMPLEX { cfg.tol } else { tol::CLOSED_FORM };
    Ok(RelationReport::new("parallel", value, required, tol)
        .with_witness(Witness::scalar(lambda, vec![S::from_real(value)])))
}

fn birkhoff_min<S: Scalar>(space: &NormedSpace<S>, x: &Vector<S>, y: &Vector<S>) -> (S, S::Real) {
    let nx = space.norm_of(x.coords());
    let ny = space.norm_of(y.coords());
    // ‖x + αy‖ ≥ |α|‖y‖ − ‖x‖ > ‖x‖ once |α| > 2‖x‖/‖y‖
    let bound = S::Real::lit(2.0) * nx / ny;
    let xtol = bound * S::Real::lit(if S::IS_COMPLEX { ALPHA_XTOL_NESTED } else { ALPHA_XTOL_NORM });
    scalar_min(bound, xtol, None, |a: S| space.norm_of(x.add_scaled(a, y).coords()))
}

/// `x ⊥_B y`: `‖x + αy‖ ≥ ‖x‖` for every `α ∈ 𝔽`.
pub fn birkhoff_vectors<S: Scalar>(
    space: &NormedSpace<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    check_vectors(space, x, y, cfg)?;
    let nx = space.norm_of(x.coords());
    if space.norm_of(y.coords()) == S::Real::zero() || nx == S::Real::zero() {
        return Ok(RelationReport::degenerate("birkhoff", nx, cfg.tol, "x or y is zero"));
    }
    let (alpha, value) = birkhoff_min(space, x, y);
    Ok(RelationReport::new("birkhoff", value, nx, cfg.tol)
        .with_witness(Witness::scalar(alpha, vec![S::from_real(value)])))
}

/// `∃λ ∈ 𝕋: x ⊥_B ‖y‖x + λ‖x‖y`, which holds exactly when `x ∥ y`.
///
/// The reported value is the best `min_α ‖x + α z_λ‖` over λ, compared
/// against `‖x‖`.
pub fn zamani_t1_check<S: Scalar>(
    space: &NormedSpace<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    check_vectors(space, x, y, cfg)?;
    let nx = space.norm_of(x.coords());
    let ny = space.norm_of(y.coords());
    if nx == S::Real::zero() || ny == S::Real::zero() {
        return Ok(RelationReport::degenerate("zamani", nx, cfg.tol, "x or y is zero"));
    }
    let z = |l: S| x.scaled_real(ny).add_scaled(l.scale(nx), y);
    let g = |l: S| {
        let zl = z(l);
        if space.norm_of(zl.coords()) == S::Real::zero() {
            // x ⊥_B 0
            return nx;
        }
        birkhoff_min(space, x, &zl).1
    };
    let (lambda, value) = unimodular_max(cfg.lambda_grid, g, g);
    Ok(RelationReport::new("zamani", value, nx, cfg.tol)
        .with_witness(Witness::scalar(lambda, vec![S::from_real(value)])))
}

fn radius_value<S: Scalar>(space: &NormedSpace<S>, t: &Operator<S>, cfg: &EngineConfig) -> S::Real {
    radius_unchecked(space, t, cfg).value
}

/// The witness of `v(T + λS)` with its values on `T` and `S` separately.
fn split_witness<S: Scalar>(t: &Operator<S>, s: &Operator<S>, lambda: S, rr: &RadiusResult<S>) -> Witness<S> {
    let w = rr.best();
    let at = w.xstar.apply(&t.apply(&w.x).expect("dimension checked"));
    let as_ = w.xstar.apply(&s.apply(&w.x).expect("dimension checked"));
    Witness {
        lambda_or_alpha: Some(lambda),
        x: Some(w.x.clone()),
        xstar: Some(w.xstar.clone()),
        attained: vec![at, as_],
    }
}

/// `T ∥_v S`: `v(T + λS) = v(T) + v(S)` for some `λ ∈ 𝕋`.
///
/// When the relation holds, the witness is a pair `(x, x*)` maximizing
/// `|x*((T + λS)x)|`, for which `|x*(Tx)| ≈ v(T)` and `|x*(Sx)| ≈ v(S)`.
pub fn nr_parallel<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    s: &Operator<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    check_operators(space, &[t, s], cfg)?;
    let vt = radius_value(space, t, cfg);
    let vs = radius_value(space, s, cfg);
    let eps = S::Real::lit(cfg.tol);
    if vt <= eps || vs <= eps {
        return Ok(RelationReport::degenerate("nr-parallel", vt + vs, cfg.tol, "v(T)v(S) = 0"));
    }
    let coarse = cfg.coarse();
    let (lambda, value) = unimodular_max(
        cfg.lambda_grid,
        |l| radius_value(space, &t.add_scaled(l, s).expect("same dim"), &coarse),
        |l| radius_value(space, &t.add_scaled(l, s).expect("same dim"), cfg),
    );
    let rr = radius_unchecked(space, &t.add_scaled(lambda, s)?, cfg);
    let witness = split_witness(t, s, lambda, &rr);
    Ok(RelationReport::new("nr-parallel", value, vt + vs, cfg.tol).with_witness(witness))
}

struct NrMin<S: Scalar> {
    alpha: S,
    value: S::Real,
    vt: S::Real,
}

/// `min_α v(T + αS)`, or `None` in the degenerate case `v(T)v(S) = 0`.
fn nr_birkhoff_min<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    s: &Operator<S>,
    cfg: &EngineConfig,
) -> (S::Real, Option<NrMin<S>>) {
    let vt = radius_value(space, t, cfg);
    let vs = radius_value(space, s, cfg);
    let eps = S::Real::lit(cfg.tol);
    if vt <= eps || vs <= eps {
        return (vt, None);
    }
    // α ↦ v(T + αS) is convex, and v(T + αS) ≥ |α|v(S) − v(T) > v(T) once
    // |α| > 2v(T)/v(S), so the minimum lies in that bracket.
    let bound = S::Real::lit(2.0) * vt / vs;
    let comb = |a: S| t.add_scaled(a, s).expect("same dim");
    let (alpha, value) = if S::IS_COMPLEX {
        // The nested search runs at coarse budget and stops at the first
        // violating α; the point found is re-evaluated at full budget.
        let coarse = cfg.coarse();
        let xtol = bound * S::Real::lit(ALPHA_XTOL_NESTED);
        let stop = Some(vt - eps);
        let (alpha, _) = scalar_min(bound, xtol, stop, |a: S| radius_value(space, &comb(a), &coarse));
        (alpha, radius_value(space, &comb(alpha), cfg))
    } else {
        let xtol = bound * S::Real::lit(ALPHA_XTOL_RADIUS);
        scalar_min(bound, xtol, None, |a: S| radius_value(space, &comb(a), cfg))
    };
    (vt, Some(NrMin { alpha, value: value.min(vt), vt }))
}

/// `T ⊥_vB S`: `v(T + αS) ≥ v(T)` for every `α ∈ 𝔽`.
pub fn nr_birkhoff<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    s: &Operator<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    check_operators(space, &[t, s], cfg)?;
    Ok(match nr_birkhoff_min(space, t, s, cfg) {
        (vt, None) => RelationReport::degenerate("nr-birkhoff", vt, cfg.tol, "v(T)v(S) = 0"),
        (_, Some(m)) => RelationReport::new("nr-birkhoff", m.value, m.vt, cfg.tol)
            .with_witness(Witness::scalar(m.alpha, vec![S::from_real(m.value)])),
    })
}

/// A pair `(x, x*)` with `|x*(Tx)| ≥ v(T) − tol` and
/// `Re[λ · conj(x*(Tx)) · x*(Sx)] ≥ −tol`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vo1Certificate<S: Scalar> {
    pub lambda: S,
    pub x: Vector<S>,
    pub xstar: Functional<S>,
    /// `x*(Tx)`
    pub t_value: S,
    /// `x*(Sx)`
    pub s_value: S,
    /// `Re[λ · conj(x*(Tx)) · x*(Sx)]`
    pub re_term: S::Real,
}

/// Searches for the pair characterizing `T ⊥_vB S` at a given `λ ∈ 𝕋`.
///
/// Candidates are the radius witnesses of `T` and of the perturbations
/// `T + ελS` for decreasing `ε`: a maximizer of `|x*((T + ελS)x)|` favours
/// pairs where `λ x*(Sx)` points along `x*(Tx)`. Among the candidates with
/// `|x*(Tx)| ≥ v(T) − tol`, the one with the largest real term is returned
/// if that term is at least `−tol`.
pub fn vo1_certificate<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    s: &Operator<S>,
    lambda: S,
    cfg: &EngineConfig,
) -> Result<Option<Vo1Certificate<S>>> {
    check_operators(space, &[t, s], cfg)?;
    let rt = radius_unchecked(space, t, cfg);
    let eps = S::Real::lit(cfg.tol);
    let floor = rt.value - eps;
    let mut pairs: Vec<(Vector<S>, Functional<S>)> =
        rt.witnesses.iter().map(|w| (w.x.clone(), w.xstar.clone())).collect();
    for e in VO1_EPS {
        let pert = t.add_scaled(lambda.scale(S::Real::lit(e)), s)?;
        pairs.extend(radius_unchecked(space, &pert, cfg).witnesses.into_iter().map(|w| (w.x, w.xstar)));
    }
    let mut best: Option<Vo1Certificate<S>> = None;
    for (x, xstar) in pairs {
        let a = xstar.apply(&t.apply(&x)?);
        if a.modulus() < floor {
            continue;
        }
        let b = xstar.apply(&s.apply(&x)?);
        let re_term = (lambda * a.conj() * b).re();
        if best.as_ref().is_none_or(|c| re_term > c.re_term) {
            best = Some(Vo1Certificate { lambda, x, xstar, t_value: a, s_value: b, re_term });
        }
    }
    Ok(best.filter(|c| c.re_term >= -eps))
}

/// `T ∥_v S` decided through orthogonality: `∃λ ∈ 𝕋` with
/// `T ⊥_vB v(S)T + λv(T)S`.
///
/// The reported value is the best `min_α v(T + αR_λ)` over λ, compared
/// against `v(T)`. Over ℂ the λ grid has `cfg.lambda_grid / 10` points
/// (at least 8), since every point needs a two-dimensional α search.
pub fn nr_parallel_via_orthogonality<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    s: &Operator<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    check_operators(space, &[t, s], cfg)?;
    let vt = radius_value(space, t, cfg);
    let vs = radius_value(space, s, cfg);
    let eps = S::Real::lit(cfg.tol);
    if vt <= eps || vs <= eps {
        return Ok(RelationReport::degenerate("nr-parallel-orth", vt, cfg.tol, "v(T)v(S) = 0"));
    }
    let r = |l: S| t.scaled(S::from_real(vs)).add_scaled(l.scale(vt), s).expect("same dim");
    let mut found: Vec<(S, S)> = Vec::new();
    let mut g = |l: S, c: &EngineConfig| -> S::Real {
        match nr_birkhoff_min(space, t, &r(l), c) {
            (v, None) => v,
            (_, Some(m)) => {
                found.push((l, m.alpha));
                m.value
            }
        }
    };
    let coarse = cfg.coarse();
    let grid = (cfg.lambda_grid / 10).max(8);
    let g = core::cell::RefCell::new(&mut g);
    let (lambda, value) = unimodular_max(grid, |l| (g.borrow_mut())(l, &coarse), |l| (g.borrow_mut())(l, cfg));
    let alpha = found.iter().rev().find(|(l, _)| *l == lambda).map(|p| p.1);
    let witness = Witness {
        lambda_or_alpha: Some(lambda),
        x: None,
        xstar: None,
        attained: alpha.into_iter().chain([S::from_real(value)]).collect(),
    };
    let mut report = RelationReport::new("nr-parallel-orth", value, vt, cfg.tol).with_witness(witness);
    if value == S::Real::infinity() {
        report.value = vt;
    }
    Ok(report)
}

/// Alternative Daugavet equation `max_{λ∈𝕋} ‖I + λT‖ = 1 + ‖T‖`.
///
/// The cross-check records whether `v(T) = ‖T‖`, which is equivalent.
pub fn daugavet_check<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    cfg: &EngineConfig,
) -> Result<RelationReport<S>> {
    check_operators(space, &[t], cfg)?;
    let id = Operator::identity(space.dim());
    let coarse = cfg.coarse();
    let (lambda, value) = unimodular_max(
        cfg.lambda_grid,
        |l| norm_unchecked(space, &id.add_scaled(l, t).expect("same dim"), &coarse),
        |l| norm_unchecked(space, &id.add_scaled(l, t).expect("same dim"), cfg),
    );
    let nt = norm_unchecked(space, t, cfg);
    let vt = radius_value(space, t, cfg);
    let eps = S::Real::lit(cfg.tol);
    let mut report = RelationReport::new("daugavet", value, S::Real::one() + nt, cfg.tol)
        .with_witness(Witness::scalar(lambda, vec![S::from_real(value)]));
    report.cross_check = Some(CrossCheck { name: "radius_equals_norm", verdict: vt >= nt - eps, gap: vt - nt });
    Ok(report)
}

impl<S: Scalar> RelationReport<S> {
    /// Whether the cross-check, if any, agrees with the verdict.
    pub fn cross_check_agrees(&self) -> bool {
        self.cross_check.as_ref().is_none_or(|c| c.verdict == self.verdict)
    }
}
