//! Finite-dimensional normed spaces from a fixed catalog of norms.
//!
//! Besides the norm itself, each catalog entry knows its dual norm and the
//! face of the dual ball that supports a given point, so duality mappings
//! are computed exactly instead of being searched for.

use core::fmt;
use core::marker::PhantomData;
use core::ops::Index;
use core::str::FromStr;

use num_traits::{Float, FloatConst, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::tol;

/// Largest supported dimension; the sphere searches are not trustworthy
/// at default budgets beyond it.
pub const MAX_DIM: usize = 8;

/// Cap on the number of free coordinates enumerated for an ℓ¹ face.
pub const L1_FACE_CAP: usize = 16;

const ROTUND_GRID: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(Error::InvalidSpace(format!("unknown field `{other}`"))),
        }
    }
}

/// Catalog of norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    /// `(Σ|x_i|^p)^{1/p}` with `1 < p < ∞`.
    Lp(f64),
    L1,
    Linf,
    /// Planar real norm equal to the Euclidean norm on the quadrants where
    /// `x₁x₂ ≥ 0` and to the max norm where `x₁x₂ ≤ 0`. Its unit sphere is
    /// smooth and rotund everywhere except at `±(−1, 1)`, and the two
    /// flat edges meeting there.
    MixedQuadMax,
}

impl NormKind {
    pub fn is_strictly_convex(&self) -> bool {
        matches!(self, NormKind::Lp(_))
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Lp(p) if *p == 2.0 => f.write_str("l2"),
            NormKind::Lp(p) => write!(f, "lp:{p}"),
            NormKind::L1 => f.write_str("l1"),
            NormKind::Linf => f.write_str("linf"),
            NormKind::MixedQuadMax => f.write_str("mixed"),
        }
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "l1" => return Ok(NormKind::L1),
            "l2" => return Ok(NormKind::Lp(2.0)),
            "linf" => return Ok(NormKind::Linf),
            "mixed" => return Ok(NormKind::MixedQuadMax),
            _ => {}
        }
        let p = s.strip_prefix("lp:").ok_or_else(|| Error::InvalidSpace(format!("unknown norm kind `{s}`")))?;
        let p: f64 = p.parse().map_err(|_| Error::InvalidSpace(format!("bad exponent in `{s}`")))?;
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidSpace(format!(
                "lp exponent must lie in (1, ∞), got {p}; use `l1` or `linf` for the endpoints"
            )));
        }
        Ok(NormKind::Lp(p))
    }
}

impl Serialize for NormKind {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> core::result::Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

/// Vector of `dim` field scalars.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector<S>(Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![S::zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = S::one();
        v
    }

    pub fn from_reals(coords: &[f64]) -> Self {
        Vector(coords.iter().map(|&c| S::from_real(S::Real::lit(c))).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<S> {
        self.0
    }

    pub fn scaled(&self, c: S) -> Self {
        Vector(self.0.iter().map(|&z| z * c).collect())
    }

    pub fn scaled_real(&self, r: S::Real) -> Self {
        Vector(self.0.iter().map(|&z| z.scale(r)).collect())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: S, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| a + c * b).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Scalar> From<Vec<S>> for Vector<S> {
    fn from(v: Vec<S>) -> Self {
        Vector(v)
    }
}

/// Element of the dual space, acting by plain coordinate pairing
/// `x*(z) = Σ a_i z_i` (no conjugation).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Functional<S>(Vec<S>);

impl<S: Scalar> Functional<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Functional(coords)
    }

    pub fn from_reals(coords: &[f64]) -> Self {
        Functional(coords.iter().map(|&c| S::from_real(S::Real::lit(c))).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn apply(&self, z: &Vector<S>) -> S {
        pair(&self.0, z.coords())
    }
}

impl<S> Index<usize> for Functional<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

#[inline]
pub(crate) fn pair<S: Scalar>(a: &[S], z: &[S]) -> S {
    a.iter().zip(z).map(|(&a, &z)| a * z).sum()
}

/// The duality mapping `J(x)` of a unit vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualitySet<S> {
    /// `x` is a smooth point.
    Singleton(Functional<S>),
    /// Extreme points of the supporting face. For complex ℓ¹ the face has
    /// a continuum of extreme points; the list then holds the ones whose
    /// free coordinates are fourth roots of unity.
    ExtremePoints(Vec<Functional<S>>),
}

impl<S: Scalar> DualitySet<S> {
    pub fn is_singleton(&self) -> bool {
        matches!(self, DualitySet::Singleton(_))
    }

    pub fn functionals(&self) -> &[Functional<S>] {
        match self {
            DualitySet::Singleton(f) => core::slice::from_ref(f),
            DualitySet::ExtremePoints(v) => v,
        }
    }

    pub fn first(&self) -> &Functional<S> {
        &self.functionals()[0]
    }
}

/// A catalog norm on 𝔽^dim, with 𝔽 fixed by the scalar type `S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormedSpace<S> {
    dim: usize,
    kind: NormKind,
    _field: PhantomData<fn() -> S>,
}

impl<S: Scalar> NormedSpace<S> {
    pub fn new(kind: NormKind, dim: usize) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidSpace(format!("dimension must lie in 2..={MAX_DIM}, got {dim}")));
        }
        match kind {
            NormKind::Lp(p) if !(p.is_finite() && p > 1.0) => {
                return Err(Error::InvalidSpace(format!("lp exponent must lie in (1, ∞), got {p}")))
            }
            NormKind::MixedQuadMax if dim != 2 || S::IS_COMPLEX => {
                return Err(Error::InvalidSpace("the mixed norm is defined on the real plane only".into()))
            }
            _ => {}
        }
        Ok(NormedSpace { dim, kind, _field: PhantomData })
    }

    pub fn lp(p: f64, dim: usize) -> Result<Self> {
        Self::new(NormKind::Lp(p), dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        if S::IS_COMPLEX {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            Err(Error::DimensionMismatch { expected: self.dim, found })
        } else {
            Ok(())
        }
    }

    pub fn norm(&self, x: &Vector<S>) -> Result<S::Real> {
        self.check_dim(x.dim())?;
        if !x.is_finite() {
            return Err(Error::NonFinite("vector"));
        }
        Ok(self.norm_of(x.coords()))
    }

    pub(crate) fn norm_of(&self, x: &[S]) -> S::Real {
        match self.kind {
            NormKind::Lp(p) => lp_norm(x, p),
            NormKind::L1 => x.iter().map(|z| z.modulus()).sum(),
            NormKind::Linf => max_modulus(x),
            NormKind::MixedQuadMax => {
                let (a, b) = (x[0].re(), x[1].re());
                if a * b >= S::Real::zero() {
                    a.hypot(b)
                } else {
                    a.abs().max(b.abs())
                }
            }
        }
    }

    /// Norm of `x*` in the dual space: `sup{|x*(z)| : ‖z‖ ≤ 1}`.
    pub fn dual_norm(&self, f: &Functional<S>) -> Result<S::Real> {
        self.check_dim(f.dim())?;
        let a = f.coords();
        Ok(match self.kind {
            NormKind::Lp(p) => lp_norm(a, p / (p - 1.0)),
            NormKind::L1 => max_modulus(a),
            NormKind::Linf => a.iter().map(|z| z.modulus()).sum(),
            NormKind::MixedQuadMax => {
                let (a1, a2) = (a[0].re(), a[1].re());
                // Extreme points of the ball: the two quarter circles in the
                // quadrants x₁x₂ ≥ 0 and the corners ±(1, −1).
                let corners = (a1 - a2).abs();
                corners.max(quarter_arc_max(a1, a2)).max(quarter_arc_max(-a1, -a2))
            }
        })
    }

    /// `x/‖x‖`, or `None` for the zero vector.
    pub fn normalize(&self, x: &Vector<S>) -> Result<Option<Vector<S>>> {
        let n = self.norm(x)?;
        if n == S::Real::zero() {
            return Ok(None);
        }
        Ok(Some(x.scaled_real(n.recip())))
    }

    pub(crate) fn check_unit(&self, x: &Vector<S>) -> Result<()> {
        let n = self.norm(x)?;
        if (n - S::Real::one()).abs() > S::Real::lit(tol::CLOSED_FORM) {
            return Err(Error::NotUnit { norm: n.as_f64() });
        }
        Ok(())
    }

    /// Whether `f` lies in `J(x)` up to `tol`: dual norm one and `f(x) = ‖x‖`.
    pub fn is_support(&self, x: &Vector<S>, f: &Functional<S>, tol: f64) -> Result<bool> {
        let t = S::Real::lit(tol);
        let nx = self.norm(x)?;
        let nf = self.dual_norm(f)?;
        let gap = (f.apply(x) - S::from_real(nx)).modulus();
        Ok((nf - S::Real::one()).abs() <= t && gap <= t)
    }

    /// The duality mapping `J(x)` for a unit vector `x`.
    pub fn duality_set(&self, x: &Vector<S>) -> Result<DualitySet<S>> {
        self.check_unit(x)?;
        let mut ext = self.extreme_supports(x.coords())?;
        Ok(if ext.len() == 1 {
            DualitySet::Singleton(ext.pop().expect("one element"))
        } else {
            DualitySet::ExtremePoints(ext)
        })
    }

    pub fn is_smooth_point(&self, x: &Vector<S>) -> Result<bool> {
        Ok(self.duality_set(x)?.is_singleton())
    }

    fn extreme_supports(&self, x: &[S]) -> Result<Vec<Functional<S>>> {
        let n = self.norm_of(x);
        match self.kind {
            NormKind::Lp(p) => Ok(vec![Functional(lp_support(x, n, p))]),
            NormKind::L1 => {
                let thr = n * S::Real::lit(tol::FACE);
                let mut base = vec![S::zero(); x.len()];
                let mut free = Vec::new();
                for (i, &z) in x.iter().enumerate() {
                    if z.modulus() > thr {
                        base[i] = z.phase().conj();
                    } else {
                        free.push(i);
                    }
                }
                if free.len() > L1_FACE_CAP {
                    return Err(Error::Precondition(format!(
                        "ℓ¹ face with {} free coordinates exceeds the enumeration cap {L1_FACE_CAP}",
                        free.len()
                    )));
                }
                let choices: Vec<S> = if S::IS_COMPLEX {
                    [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
                        .iter()
                        .map(|&(re, im)| S::from_parts(S::Real::lit(re), S::Real::lit(im)))
                        .collect()
                } else {
                    vec![S::one(), -S::one()]
                };
                let k = choices.len();
                let count = k.pow(free.len() as u32);
                let mut out = Vec::with_capacity(count);
                for mut code in 0..count {
                    let mut a = base.clone();
                    for &i in &free {
                        a[i] = choices[code % k];
                        code /= k;
                    }
                    out.push(Functional(a));
                }
                Ok(out)
            }
            NormKind::Linf => Ok(argmax_coords(x, n)
                .into_iter()
                .map(|i| {
                    let mut a = vec![S::zero(); x.len()];
                    a[i] = x[i].phase().conj();
                    Functional(a)
                })
                .collect()),
            NormKind::MixedQuadMax => {
                let (u1, u2) = (x[0].re() / n, x[1].re() / n);
                if u1 * u2 > S::Real::zero() {
                    return Ok(vec![Functional(vec![S::from_real(u1), S::from_real(u2)])]);
                }
                let unit = |i: usize, s: S::Real| {
                    let mut a = vec![S::zero(); 2];
                    a[i] = S::from_real(crate::scalar::sign(s));
                    Functional(a)
                };
                Ok(argmax_coords(x, n).into_iter().map(|i| unit(i, [u1, u2][i])).collect())
            }
        }
    }

    /// Among the functionals in `J(x/‖x‖)`, one maximizing `|x*(w)|`,
    /// together with the value `x*(w)`.
    ///
    /// The maximum of the modulus of a linear map over a compact convex
    /// face is attained at an extreme point; for the polyhedral faces it is
    /// computed in closed form.
    pub fn best_support(&self, x: &Vector<S>, w: &Vector<S>) -> Result<(Functional<S>, S)> {
        self.check_dim(x.dim())?;
        self.check_dim(w.dim())?;
        if self.norm_of(x.coords()) == S::Real::zero() {
            return Err(Error::Precondition("zero vector has no supporting functional".into()));
        }
        Ok(self.best_support_of(x.coords(), w.coords()))
    }

    pub(crate) fn best_support_of(&self, x: &[S], w: &[S]) -> (Functional<S>, S) {
        let n = self.norm_of(x);
        match self.kind {
            NormKind::Lp(p) => {
                let a = lp_support(x, n, p);
                let v = pair(&a, w);
                (Functional(a), v)
            }
            NormKind::L1 => {
                let thr = n * S::Real::lit(tol::FACE);
                let mut a = vec![S::zero(); x.len()];
                let mut fixed = S::zero();
                for (i, &z) in x.iter().enumerate() {
                    if z.modulus() > thr {
                        a[i] = z.phase().conj();
                        fixed += a[i] * w[i];
                    }
                }
                // Free coordinates align their contribution with the fixed part.
                let align = fixed.phase();
                for (i, &z) in x.iter().enumerate() {
                    if z.modulus() <= thr {
                        a[i] = align * w[i].phase().conj();
                    }
                }
                let v = pair(&a, w);
                (Functional(a), v)
            }
            NormKind::Linf | NormKind::MixedQuadMax => {
                let mut best: Option<(Functional<S>, S)> = None;
                for f in self.extreme_supports(x).expect("no enumeration for these kinds") {
                    let v = f.apply_slice(w);
                    if best.as_ref().is_none_or(|(_, b)| v.modulus() > b.modulus()) {
                        best = Some((f, v));
                    }
                }
                best.expect("supporting face is nonempty")
            }
        }
    }

    /// Whether the unit vector `x` is a rotund point: no `y ≠ x` on the
    /// unit sphere has its midpoint with `x` on the sphere as well.
    ///
    /// Points that are endpoints of a segment of the sphere are therefore
    /// not rotund. Strictly convex norms answer without search; other
    /// real planar norms are searched on an angle grid with refinement;
    /// polyhedral norms in higher dimension or over ℂ follow the catalog
    /// (every point of their sphere lies on a segment).
    pub fn is_rotund_point(&self, x: &Vector<S>) -> Result<bool> {
        self.check_unit(x)?;
        if self.kind.is_strictly_convex() {
            return Ok(true);
        }
        if S::IS_COMPLEX || self.dim != 2 {
            return match self.kind {
                NormKind::L1 | NormKind::Linf => Ok(false),
                _ => Err(Error::Precondition(format!(
                    "rotundity test unsupported for {} in dimension {}",
                    self.kind, self.dim
                ))),
            };
        }
        Ok(self.segment_partner(x).is_none())
    }

    /// A unit `y` far from `x` whose midpoint with `x` stays on the sphere.
    pub(crate) fn segment_partner(&self, x: &Vector<S>) -> Option<Vector<S>> {
        let one = S::Real::one();
        let half = S::Real::lit(0.5);
        let min_len = S::Real::lit(tol::SEGMENT_MIN_LENGTH);
        let midpoint_norm = |theta: S::Real| -> (S::Real, Vector<S>) {
            let y = self.planar_point(theta);
            let d = self.norm_of(x.add_scaled(-S::one(), &y).coords());
            if d <= min_len {
                return (S::Real::neg_infinity(), y);
            }
            let m = self.norm_of(x.add_scaled(S::one(), &y).scaled_real(half).coords());
            (m, y)
        };
        let step = S::Real::TAU() / S::Real::lit(ROTUND_GRID as f64);
        let mut best = (S::Real::neg_infinity(), S::Real::zero());
        for k in 0..ROTUND_GRID {
            let theta = step * S::Real::lit(k as f64);
            let (m, _) = midpoint_norm(theta);
            if m > best.0 {
                best = (m, theta);
            }
        }
        let target = one - S::Real::lit(tol::CLOSED_FORM);
        let (theta, m) =
            crate::search::golden_max(|t| midpoint_norm(t).0, best.1 - step, best.1 + step, S::Real::lit(1e-13));
        let (m, theta) = if m > best.0 { (m, theta) } else { best };
        (m >= target).then(|| midpoint_norm(theta).1)
    }

    /// Unit vector of the real plane in direction `θ`. Coordinates below
    /// `1e-15` are snapped to zero so the axes are hit exactly.
    pub(crate) fn planar_point(&self, theta: S::Real) -> Vector<S> {
        let snap = |c: S::Real| if c.abs() < S::Real::lit(1e-15) { S::Real::zero() } else { c };
        let (c, s) = (snap(theta.cos()), snap(theta.sin()));
        let mut coords = vec![S::zero(); self.dim];
        coords[0] = S::from_real(c);
        coords[1] = S::from_real(s);
        let n = self.norm_of(&coords);
        Vector(coords).scaled_real(n.recip())
    }
}

impl<S: Scalar> Functional<S> {
    #[inline]
    pub(crate) fn apply_slice(&self, z: &[S]) -> S {
        pair(&self.0, z)
    }
}

fn max_modulus<S: Scalar>(x: &[S]) -> S::Real {
    x.iter().map(|z| z.modulus()).fold(S::Real::zero(), |m, v| m.max(v))
}

/// `|r|^p`, using repeated multiplication for small integer exponents.
#[inline]
fn abs_pow<R: Real>(r: R, p: f64) -> R {
    if p.fract() == 0.0 && p <= 32.0 {
        r.abs().powi(p as i32)
    } else {
        r.abs().powf(R::lit(p))
    }
}

fn lp_norm<S: Scalar>(x: &[S], p: f64) -> S::Real {
    let m = max_modulus(x);
    if m == S::Real::zero() || !m.is_finite() {
        return m;
    }
    if p == 2.0 {
        let s: S::Real = x.iter().map(|z| (z.modulus() / m).powi(2)).sum();
        return m * s.sqrt();
    }
    let s: S::Real = x.iter().map(|z| abs_pow(z.modulus() / m, p)).sum();
    m * s.powf(S::Real::lit(1.0 / p))
}

/// The unique supporting functional of `x` for the ℓᵖ norm:
/// `a_i = conj(phase(x_i))·(|x_i|/‖x‖)^{p−1}`.
fn lp_support<S: Scalar>(x: &[S], norm: S::Real, p: f64) -> Vec<S> {
    x.iter()
        .map(|&z| {
            let r = z.modulus() / norm;
            if r == S::Real::zero() {
                S::zero()
            } else {
                z.phase().conj().scale(abs_pow(r, p - 1.0))
            }
        })
        .collect()
}

/// Indices whose modulus ties the maximum within the face tolerance.
fn argmax_coords<S: Scalar>(x: &[S], norm: S::Real) -> Vec<usize> {
    let m = max_modulus(x);
    let thr = m - norm * S::Real::lit(tol::FACE);
    (0..x.len()).filter(|&i| x[i].modulus() >= thr).collect()
}

/// `max_{θ∈[0,π/2]} a₁cos θ + a₂sin θ`.
fn quarter_arc_max<R: Real>(a1: R, a2: R) -> R {
    if a1 >= R::zero() && a2 >= R::zero() {
        a1.hypot(a2)
    } else {
        a1.max(a2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_reals(c)
    }

    fn close(a: f64, b: f64, t: f64) -> bool {
        (a - b).abs() <= t
    }

    #[test]
    fn parses_catalog_names() {
        assert_eq!("lp:4".parse::<NormKind>().unwrap(), NormKind::Lp(4.0));
        assert_eq!("l2".parse::<NormKind>().unwrap(), NormKind::Lp(2.0));
        assert_eq!("l1".parse::<NormKind>().unwrap(), NormKind::L1);
        assert_eq!("linf".parse::<NormKind>().unwrap(), NormKind::Linf);
        assert_eq!("mixed".parse::<NormKind>().unwrap(), NormKind::MixedQuadMax);
        assert!("lp:1".parse::<NormKind>().is_err());
        assert!("lp:inf".parse::<NormKind>().is_err());
        assert!("l3".parse::<NormKind>().is_err());
        for k in ["lp:4", "l2", "l1", "linf", "mixed", "lp:1.5"] {
            assert_eq!(k.parse::<NormKind>().unwrap().to_string(), k);
        }
    }

    #[test]
    fn rejects_bad_spaces() {
        assert!(NormedSpace::<f64>::new(NormKind::L1, 1).is_err());
        assert!(NormedSpace::<f64>::new(NormKind::L1, 9).is_err());
        assert!(NormedSpace::<f64>::new(NormKind::MixedQuadMax, 3).is_err());
        assert!(NormedSpace::<Complex64>::new(NormKind::MixedQuadMax, 2).is_err());
        assert!(NormedSpace::<f64>::new(NormKind::Lp(0.5), 2).is_err());
    }

    #[test]
    fn norm_examples() {
        let lp4 = NormedSpace::<f64>::lp(4.0, 2).unwrap();
        assert!(close(lp4.norm(&v(&[1.0, 1.0])).unwrap(), 2f64.powf(0.25), 1e-15));
        let l1 = NormedSpace::<f64>::new(NormKind::L1, 2).unwrap();
        assert_eq!(l1.norm(&v(&[1.0, 1.0])).unwrap(), 2.0);
        let mixed = NormedSpace::<f64>::new(NormKind::MixedQuadMax, 2).unwrap();
        assert_eq!(mixed.norm(&v(&[-1.0, 1.0])).unwrap(), 1.0);
        assert!(close(mixed.norm(&v(&[0.6, 0.8])).unwrap(), 1.0, 1e-15));
        assert_eq!(mixed.norm(&v(&[0.6, -0.8])).unwrap(), 0.8);
        assert_eq!(lp4.norm(&Vector::zeros(2)).unwrap(), 0.0);
    }

    #[test]
    fn norm_errors() {
        let l2 = NormedSpace::<f64>::lp(2.0, 2).unwrap();
        assert_eq!(l2.norm(&v(&[1.0, 2.0, 3.0])), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
        assert!(matches!(l2.norm(&v(&[f64::NAN, 0.0])), Err(Error::NonFinite(_))));
    }

    #[test]
    fn lp4_duality_matches_hoelder_equality() {
        let lp4 = NormedSpace::<f64>::lp(4.0, 2).unwrap();
        let x = v(&[0.25f64.powf(0.25), 0.75f64.powf(0.25)]);
        let j = lp4.duality_set(&x).unwrap();
        let DualitySet::Singleton(f) = j else { panic!("expected singleton") };
        assert!(close(f[0], 0.25f64.powf(0.75), 1e-12));
        assert!(close(f[1], 0.75f64.powf(0.75), 1e-12));
        assert!(lp4.is_support(&x, &f, 1e-12).unwrap());
    }

    #[test]
    fn euclidean_duality_is_self() {
        let l2 = NormedSpace::<f64>::lp(2.0, 3).unwrap();
        let x = v(&[0.6, 0.0, -0.8]);
        assert_eq!(l2.duality_set(&x).unwrap(), DualitySet::Singleton(Functional::from_reals(&[0.6, 0.0, -0.8])));
        let c2 = NormedSpace::<Complex64>::lp(2.0, 2).unwrap();
        let z = Vector::new(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
        let f = c2.duality_set(&z).unwrap().first().clone();
        assert!((f[1] - Complex64::new(0.0, -0.8)).norm() < 1e-15);
        assert!((f.apply(&z) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn l1_corner_has_two_extreme_functionals() {
        let l1 = NormedSpace::<f64>::new(NormKind::L1, 2).unwrap();
        let x = v(&[1.0, 0.0]);
        let j = l1.duality_set(&x).unwrap();
        assert_eq!(
            j,
            DualitySet::ExtremePoints(vec![Functional::from_reals(&[1.0, 1.0]), Functional::from_reals(&[1.0, -1.0])])
        );
        assert!(!l1.is_smooth_point(&x).unwrap());
        assert!(l1.is_smooth_point(&v(&[0.5, -0.5])).unwrap());
    }

    #[test]
    fn linf_extreme_functionals_follow_signs() {
        let linf = NormedSpace::<f64>::new(NormKind::Linf, 3).unwrap();
        let x = v(&[-1.0, 0.2, 1.0]);
        let j = linf.duality_set(&x).unwrap();
        assert_eq!(
            j.functionals(),
            &[Functional::from_reals(&[-1.0, 0.0, 0.0]), Functional::from_reals(&[0.0, 0.0, 1.0])]
        );
    }

    #[test]
    fn mixed_norm_classification() {
        let m = NormedSpace::<f64>::new(NormKind::MixedQuadMax, 2).unwrap();
        let y = v(&[-1.0, 1.0]);
        assert!(!m.is_smooth_point(&y).unwrap());
        assert!(!m.is_rotund_point(&y).unwrap());
        assert!(m.is_smooth_point(&v(&[1.0, 0.0])).unwrap());
        assert!(m.is_smooth_point(&v(&[0.6, 0.8])).unwrap());
        assert!(m.is_smooth_point(&v(&[1.0, -0.3])).unwrap());
        assert!(m.is_rotund_point(&v(&[0.6, 0.8])).unwrap());
        assert!(!m.is_rotund_point(&v(&[1.0, -0.3])).unwrap());
        // the join between arc and edge is an endpoint of a segment
        assert!(!m.is_rotund_point(&v(&[1.0, 0.0])).unwrap());
    }

    #[test]
    fn mixed_dual_norm_of_supports_is_one() {
        let m = NormedSpace::<f64>::new(NormKind::MixedQuadMax, 2).unwrap();
        for x in [[0.6, 0.8], [-0.8, -0.6], [1.0, -0.3], [-1.0, 1.0], [0.0, -1.0]] {
            let x = v(&x);
            for f in m.duality_set(&x).unwrap().functionals() {
                assert!(m.is_support(&x, f, 1e-12).unwrap(), "{x:?} {f:?}");
            }
        }
    }

    #[test]
    fn rotundity_examples() {
        let lp4 = NormedSpace::<f64>::lp(4.0, 2).unwrap();
        assert!(lp4.is_rotund_point(&v(&[1.0, 0.0])).unwrap());
        let linf = NormedSpace::<f64>::new(NormKind::Linf, 2).unwrap();
        assert!(!linf.is_rotund_point(&v(&[1.0, 0.5])).unwrap());
        let y = linf.segment_partner(&v(&[1.0, 0.5])).unwrap();
        assert_eq!(y[0], 1.0);
        let l1 = NormedSpace::<f64>::new(NormKind::L1, 3).unwrap();
        assert!(!l1.is_rotund_point(&v(&[1.0, 0.0, 0.0])).unwrap());
    }

    #[test]
    fn non_unit_inputs_are_rejected() {
        let l2 = NormedSpace::<f64>::lp(2.0, 2).unwrap();
        let x = v(&[1.0, 1.0]);
        assert!(matches!(l2.duality_set(&x), Err(Error::NotUnit { .. })));
        assert!(matches!(l2.is_smooth_point(&x), Err(Error::NotUnit { .. })));
        assert!(matches!(l2.is_rotund_point(&x), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn best_support_on_l1_face_is_exact() {
        let l1 = NormedSpace::<f64>::new(NormKind::L1, 3).unwrap();
        let x = v(&[1.0, 0.0, 0.0]);
        let w = v(&[-0.5, 2.0, -1.0]);
        let (f, val) = l1.best_support(&x, &w).unwrap();
        assert_eq!(val, -3.5);
        assert!(l1.is_support(&x, &f, 1e-15).unwrap());
        let brute = l1.duality_set(&x).unwrap().functionals().iter().map(|f| f.apply(&w).abs()).fold(0.0, f64::max);
        assert_eq!(brute, 3.5);
    }
}
