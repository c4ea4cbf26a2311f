//! One-dimensional searches used by the sphere engine and the relation
//! deciders.

use crate::scalar::Real;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_ITER: usize = 200;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns `(argmax, max)`.
pub fn golden_max<R: Real, F: FnMut(R) -> R>(mut f: F, a: R, b: R, xtol: R) -> (R, R) {
    let (x, v) = golden_min(|t| -f(t), a, b, xtol);
    (x, -v)
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
/// Returns `(argmin, min)`; the endpoints are evaluated too, so the result
/// is never worse than `min(f(a), f(b))`.
pub fn golden_min<R: Real, F: FnMut(R) -> R>(mut f: F, a: R, b: R, xtol: R) -> (R, R) {
    golden_min_until(&mut f, a, b, xtol, None)
}

/// As [`golden_min`], stopping as soon as a value at or below `stop_below`
/// is seen.
pub fn golden_min_until<R: Real, F: FnMut(R) -> R>(f: &mut F, a: R, b: R, xtol: R, stop_below: Option<R>) -> (R, R) {
    let r = R::lit(INV_PHI);
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut best = (lo, f(lo));
    let fb = f(hi);
    if fb < best.1 {
        best = (hi, fb);
    }
    let hit = |v: R| stop_below.is_some_and(|s| v <= s);
    if hit(best.1) {
        return best;
    }
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_ITER {
        if f1 < best.1 {
            best = (x1, f1);
        }
        if f2 < best.1 {
            best = (x2, f2);
        }
        if hit(best.1) || hi - lo <= xtol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    best
}

/// Maximizes a `2π`-periodic function: uniform grid of `n` angles, then a
/// golden-section refinement around each of the `arcs` best grid local
/// maxima. Returns `(θ, value)` of the best point found.
pub fn circle_max<R: Real, F: FnMut(R) -> R>(mut f: F, n: usize, arcs: usize, xtol: R) -> (R, R) {
    let samples = circle_samples(&mut f, n);
    refine_circle(&mut f, &samples, arcs, xtol)
}

pub(crate) fn circle_samples<R: Real, F: FnMut(R) -> R>(f: &mut F, n: usize) -> Vec<(R, R)> {
    let step = R::TAU() / R::lit(n as f64);
    (0..n)
        .map(|k| {
            let t = step * R::lit(k as f64);
            (t, f(t))
        })
        .collect()
}

/// Golden refinement around the `arcs` best local maxima of a cyclic grid.
pub(crate) fn refine_circle<R: Real, F: FnMut(R) -> R>(f: &mut F, samples: &[(R, R)], arcs: usize, xtol: R) -> (R, R) {
    let n = samples.len();
    let step = R::TAU() / R::lit(n as f64);
    let mut best = samples.iter().copied().fold((R::zero(), R::neg_infinity()), |b, s| if s.1 > b.1 { s } else { b });
    for k in top_local_maxima(samples.iter().map(|s| s.1), arcs, true) {
        let t = samples[k].0;
        let (x, v) = golden_max(&mut *f, t - step, t + step, xtol);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Indices of the `count` largest local maxima of a sequence (cyclic or
/// not), ties broken by index. Plateaus contribute their first index.
pub(crate) fn top_local_maxima<R: Real>(values: impl Iterator<Item = R>, count: usize, cyclic: bool) -> Vec<usize> {
    let v: Vec<R> = values.collect();
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = if i > 0 {
                Some(v[i - 1])
            } else if cyclic {
                Some(v[n - 1])
            } else {
                None
            };
            let next = if i + 1 < n {
                Some(v[i + 1])
            } else if cyclic {
                Some(v[0])
            } else {
                None
            };
            prev.is_none_or(|p| v[i] > p) && next.is_none_or(|q| v[i] >= q)
        })
        .collect();
    if idx.is_empty() {
        // constant sequence
        idx.push(0);
    }
    idx.sort_by(|&a, &b| v[b].partial_cmp(&v[a]).unwrap_or(core::cmp::Ordering::Equal).then(a.cmp(&b)));
    idx.truncate(count.max(1));
    idx
}
