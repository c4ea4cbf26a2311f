//! Tolerances shared by every check in the crate.

/// Equality/membership checks that reduce to closed-form arithmetic.
pub const CLOSED_FORM: f64 = 1e-9;

/// Quantities found by search over a two-dimensional sphere.
pub const SEARCH_2D: f64 = 1e-7;

/// Quantities found by search in dimension three or more.
pub const SEARCH_HIGH_DIM: f64 = 1e-5;

/// Gap required before a strict inequality (e.g. non-parallelism) is
/// claimed. Searches under-estimate suprema, so failing by `tol` alone
/// is not evidence of strictness.
pub const STRICT_MARGIN: f64 = 1e-3;

/// Relative threshold under which a coordinate is treated as zero (or as
/// tied for the maximum) when identifying the face of the unit ball that
/// contains a point.
pub const FACE: f64 = 1e-12;

/// Smallest distance between the two ends of a segment accepted as a
/// witness against rotundity.
pub const SEGMENT_MIN_LENGTH: f64 = 1e-3;

/// Default tolerance for searched quantities in a space of dimension `dim`.
pub fn search_tol(dim: usize) -> f64 {
    if dim <= 2 {
        SEARCH_2D
    } else {
        SEARCH_HIGH_DIM
    }
}
