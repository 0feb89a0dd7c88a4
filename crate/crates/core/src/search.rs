use crate::Result;

/// Walk outward from 0 along `sign·Ω` until `inside` turns false, then bisect
/// the last step. Returns the edge magnitude. `None` if still inside at `limit`.
pub(crate) fn edge<F>(mut inside: F, first: f64, limit: f64, rel_tol: f64) -> Result<Option<f64>>
where
    F: FnMut(f64) -> Result<bool>,
{
    const GROWTH: f64 = 1.05;
    let mut lo = 0.0;
    let mut hi = first;
    loop {
        if !inside(hi)? {
            break;
        }
        if hi >= limit {
            return Ok(None);
        }
        lo = hi;
        hi = (hi * GROWTH).min(limit);
    }
    for _ in 0..200 {
        if hi - lo <= rel_tol * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if inside(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Bisection for the smallest x in [lo, hi] where `holds` is true, given
/// `holds(hi)` and not `holds(lo)`.
pub(crate) fn bisect_threshold<F>(
    mut holds: F,
    mut lo: f64,
    mut hi: f64,
    abs_tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    while hi - lo > abs_tol {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
