//! The numerical-radius engine.
//!
//! `v(T) = sup{|x*(Tx)| : x ∈ S_X, x* ∈ J(x)}` is maximized by a global
//! search over the unit sphere. At each sampled `x` the inner supremum over
//! `J(x)` is exact (see [`NormedSpace::best_support`]), so the search is
//! over the sphere only. Reported values are attained by the returned
//! witnesses and are therefore certified lower bounds.
//!
//! Search strategy:
//! * real planar spaces: uniform angle grid, zoom refinement around the
//!   best grid maxima, golden-section polish;
//! * everything else: multistart compass search from structured starts
//!   (basis vectors and their pairwise sums) and seeded random starts.
//!   Start `k` draws from stream `k` of a ChaCha generator keyed by the
//!   seed, so results do not depend on evaluation order.

use num_traits::{Float, FloatConst, One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::Operator;
use crate::scalar::{Real, Scalar};
use crate::search::{golden_max, top_local_maxima};
use crate::spaces::{Functional, NormedSpace, Vector};
use crate::tol;

/// Grid maxima refined in the planar search.
const PLANAR_CANDIDATES: usize = 4;
/// Subdivisions per zoom round in the planar search.
const ZOOM: usize = 8;
/// Starts polished to full precision after the coarse multistart pass.
const POLISH: usize = 4;
const COARSE_STEP: f64 = 1e-3;
const FINE_STEP: f64 = 1e-11;
const MAX_WITNESSES: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EngineConfig {
    /// Angles in the planar grid.
    pub grid_size: usize,
    /// Zoom rounds around each planar grid maximum.
    pub refine_rounds: usize,
    /// Random starts for the multistart search.
    pub multistarts: usize,
    pub seed: u64,
    /// Tolerance for searched quantities.
    pub tol: f64,
    /// Points on the complex unit circle scanned by unimodular searches.
    pub lambda_grid: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            grid_size: 2048,
            refine_rounds: 3,
            multistarts: 64,
            seed: 42,
            tol: tol::SEARCH_2D,
            lambda_grid: 720,
        }
    }
}

impl EngineConfig {
    /// Defaults with the tolerance matched to the dimension of `space`.
    pub fn for_space<S: Scalar>(space: &NormedSpace<S>) -> Self {
        EngineConfig { tol: tol::search_tol(space.dim()), ..Default::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_size < 16 {
            return Err(Error::InvalidConfig(format!("grid_size must be at least 16, got {}", self.grid_size)));
        }
        if self.multistarts < 1 {
            return Err(Error::InvalidConfig("multistarts must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        if self.lambda_grid < 8 {
            return Err(Error::InvalidConfig(format!("lambda_grid must be at least 8, got {}", self.lambda_grid)));
        }
        Ok(())
    }

    /// Cheaper settings for scanning many operators before refining the best.
    pub(crate) fn coarse(&self) -> Self {
        EngineConfig {
            grid_size: (self.grid_size / 4).max(16),
            refine_rounds: self.refine_rounds.min(2),
            multistarts: (self.multistarts / 8).max(1),
            ..self.clone()
        }
    }
}

/// A point of the unit sphere and the objective value there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpherePoint<S: Scalar> {
    pub x: Vector<S>,
    pub value: S::Real,
}

/// A feasible pair `(x, x*)` with `x* ∈ J(x)` and the value `x*(Tx)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusWitness<S: Scalar> {
    pub x: Vector<S>,
    pub xstar: Functional<S>,
    pub attained: S,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusResult<S: Scalar> {
    pub value: S::Real,
    /// Best witness first.
    pub witnesses: Vec<RadiusWitness<S>>,
}

impl<S: Scalar> RadiusResult<S> {
    pub fn best(&self) -> &RadiusWitness<S> {
        &self.witnesses[0]
    }
}

/// Maximizes `objective` over the unit sphere of `space`. The objective
/// receives the coordinates of a unit vector.
pub fn sphere_argmax<S, F>(space: &NormedSpace<S>, objective: F, cfg: &EngineConfig) -> Result<SpherePoint<S>>
where
    S: Scalar,
    F: Fn(&[S]) -> S::Real,
{
    Ok(sphere_candidates(space, objective, cfg)?.swap_remove(0))
}

/// Refined local maxima of `objective` on the sphere, best first.
pub fn sphere_candidates<S, F>(space: &NormedSpace<S>, objective: F, cfg: &EngineConfig) -> Result<Vec<SpherePoint<S>>>
where
    S: Scalar,
    F: Fn(&[S]) -> S::Real,
{
    cfg.validate()?;
    Ok(candidates_unchecked(space, objective, cfg))
}

pub(crate) fn candidates_unchecked<S, F>(
    space: &NormedSpace<S>,
    objective: F,
    cfg: &EngineConfig,
) -> Vec<SpherePoint<S>>
where
    S: Scalar,
    F: Fn(&[S]) -> S::Real,
{
    let mut out = if !S::IS_COMPLEX && space.dim() == 2 {
        planar_search(space, &objective, cfg)
    } else {
        multistart_search(space, &objective, cfg)
    };
    out.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap_or(core::cmp::Ordering::Equal));
    out
}

fn planar_search<S, F>(space: &NormedSpace<S>, f: &F, cfg: &EngineConfig) -> Vec<SpherePoint<S>>
where
    S: Scalar,
    F: Fn(&[S]) -> S::Real,
{
    let eval = |t: S::Real| f(space.planar_point(t).coords());
    let n = cfg.grid_size;
    let step = S::Real::TAU() / S::Real::lit(n as f64);
    let values: Vec<S::Real> = (0..n).map(|k| eval(step * S::Real::lit(k as f64))).collect();
    let zoom = S::Real::lit(ZOOM as f64);
    top_local_maxima(values.iter().copied(), PLANAR_CANDIDATES, true)
        .into_iter()
        .map(|k| {
            let mut theta = step * S::Real::lit(k as f64);
            let mut best = values[k];
            let mut h = step;
            for _ in 0..cfg.refine_rounds {
                let centre = theta;
                for j in 1..=ZOOM {
                    for sgn in [-S::Real::one(), S::Real::one()] {
                        let t = centre + sgn * h * S::Real::lit(j as f64) / zoom;
                        let v = eval(t);
                        if v > best {
                            best = v;
                            theta = t;
                        }
                    }
                }
                h /= zoom;
            }
            let (t, v) = golden_max(eval, theta - h, theta + h, S::Real::lit(1e-14));
            if v > best {
                best = v;
                theta = t;
            }
            SpherePoint { x: space.planar_point(theta), value: best }
        })
        .collect()
}

struct Params<'a, S: Scalar, F> {
    space: &'a NormedSpace<S>,
    f: &'a F,
    evals: usize,
}

impl<S: Scalar, F: Fn(&[S]) -> S::Real> Params<'_, S, F> {
    /// Unit coordinates for a real parameter vector, or `None` at the origin.
    fn unit(&self, p: &[S::Real]) -> Option<Vec<S>> {
        let coords: Vec<S> = if S::IS_COMPLEX {
            p.chunks(2).map(|c| S::from_parts(c[0], c[1])).collect()
        } else {
            p.iter().map(|&r| S::from_real(r)).collect()
        };
        let n = self.space.norm_of(&coords);
        if !n.is_finite() || n <= S::Real::zero() {
            return None;
        }
        let inv = n.recip();
        Some(coords.into_iter().map(|z| z.scale(inv)).collect())
    }

    fn params_of(x: &[S]) -> Vec<S::Real> {
        if S::IS_COMPLEX {
            x.iter().flat_map(|z| [z.re(), z.im()]).collect()
        } else {
            x.iter().map(|z| z.re()).collect()
        }
    }

    fn eval(&mut self, p: &[S::Real]) -> Option<(Vec<S>, S::Real)> {
        let u = self.unit(p)?;
        self.evals += 1;
        let v = (self.f)(&u);
        Some((u, v))
    }

    /// Opportunistic compass search; the step halves after a failed poll.
    fn compass(&mut self, mut x: Vec<S>, mut fx: S::Real, h0: f64, h_min: f64, budget: usize) -> (Vec<S>, S::Real) {
        let mut h = S::Real::lit(h0);
        let h_min = S::Real::lit(h_min);
        let stop = self.evals + budget;
        let mut p = Self::params_of(&x);
        while h >= h_min && self.evals < stop {
            let mut improved = false;
            for k in 0..p.len() {
                for sgn in [S::Real::one(), -S::Real::one()] {
                    let mut q = p.clone();
                    q[k] += sgn * h;
                    if let Some((u, v)) = self.eval(&q) {
                        if v > fx {
                            fx = v;
                            p = Self::params_of(&u);
                            x = u;
                            improved = true;
                            break;
                        }
                    }
                }
            }
            if !improved {
                h /= S::Real::lit(2.0);
            }
        }
        (x, fx)
    }
}

/// Structured starts: basis vectors, then `e_i ± e_j` (and `e_i ± i·e_j`
/// over ℂ).
fn structured_starts<S: Scalar>(dim: usize) -> Vec<Vec<S::Real>> {
    let m = dim * S::REAL_DIM;
    let one = S::Real::one();
    let mut out = Vec::new();
    for i in 0..dim {
        let mut p = vec![S::Real::zero(); m];
        p[i * S::REAL_DIM] = one;
        out.push(p);
    }
    for i in 0..dim {
        for j in i + 1..dim {
            for part in 0..S::REAL_DIM {
                for sgn in [one, -one] {
                    let mut p = vec![S::Real::zero(); m];
                    p[i * S::REAL_DIM] = one;
                    p[j * S::REAL_DIM + part] = sgn;
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Random start `k`: a Gaussian direction drawn from stream `k`.
fn random_start<R: Real>(seed: u64, k: usize, m: usize) -> Vec<R> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    (0..m)
        .map(|_| {
            let g: f64 = StandardNormal.sample(&mut rng);
            R::lit(g)
        })
        .collect()
}

fn multistart_search<S, F>(space: &NormedSpace<S>, f: &F, cfg: &EngineConfig) -> Vec<SpherePoint<S>>
where
    S: Scalar,
    F: Fn(&[S]) -> S::Real,
{
    let m = space.dim() * S::REAL_DIM;
    let mut ctx = Params { space, f, evals: 0 };
    let starts = structured_starts::<S>(space.dim())
        .into_iter()
        .chain((0..cfg.multistarts).map(|k| random_start(cfg.seed, k, m)));
    let budget = 200 * m;
    let mut coarse: Vec<(Vec<S>, S::Real)> = starts
        .filter_map(|p| {
            let (u, v) = ctx.eval(&p)?;
            Some(ctx.compass(u, v, 0.25, COARSE_STEP, budget))
        })
        .collect();
    coarse.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(core::cmp::Ordering::Equal));
    coarse.truncate(POLISH);
    coarse
        .into_iter()
        .map(|(u, v)| {
            let (x, value) = ctx.compass(u, v, 2.0 * COARSE_STEP, FINE_STEP, 50 * budget);
            SpherePoint { x: Vector::new(x), value }
        })
        .collect()
}

/// `|x*(Tx)|` maximized over `x* ∈ J(x)`.
pub(crate) fn radius_objective<S: Scalar>(space: &NormedSpace<S>, t: &Operator<S>, x: &[S]) -> S::Real {
    space.best_support_of(x, &t.apply_slice(x)).1.modulus()
}

/// The numerical radius `v(T)` with its maximizing witnesses.
pub fn numerical_radius<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    cfg: &EngineConfig,
) -> Result<RadiusResult<S>> {
    space.check_dim(t.dim())?;
    cfg.validate()?;
    Ok(radius_unchecked(space, t, cfg))
}

/// [`numerical_radius`] without the dimension and configuration checks.
pub(crate) fn radius_unchecked<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    cfg: &EngineConfig,
) -> RadiusResult<S> {
    let cands = candidates_unchecked(space, |x| radius_objective(space, t, x), cfg);
    let value = cands[0].value;
    let floor = value - S::Real::lit(cfg.tol);
    let near = S::Real::lit(1e-6);
    let mut witnesses: Vec<RadiusWitness<S>> = Vec::new();
    for c in cands.into_iter().filter(|c| c.value >= floor) {
        let duplicate = witnesses.iter().any(|w| {
            space.norm_of(w.x.add_scaled(-S::one(), &c.x).coords()) < near
                || space.norm_of(w.x.add_scaled(S::one(), &c.x).coords()) < near
        });
        if duplicate || witnesses.len() == MAX_WITNESSES {
            continue;
        }
        let (xstar, attained) = space.best_support_of(c.x.coords(), &t.apply_slice(c.x.coords()));
        witnesses.push(RadiusWitness { x: c.x, xstar, attained });
    }
    RadiusResult { value, witnesses }
}

/// `v(T + λS)`.
pub fn radius_of_combination<S: Scalar>(
    space: &NormedSpace<S>,
    t: &Operator<S>,
    s: &Operator<S>,
    lambda: S,
    cfg: &EngineConfig,
) -> Result<S::Real> {
    Ok(numerical_radius(space, &t.add_scaled(lambda, s)?, cfg)?.value)
}
