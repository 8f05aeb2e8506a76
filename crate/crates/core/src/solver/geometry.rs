//! Physical surface curve `x ↦ (ξ₀(x), η₀(x))` with `ξ₀′ = 1 + H(η₀′)`.

use crate::error::Result;
use crate::spectral::{hilbert, hilbert_prime, SurfaceProfile};

/// Polyline refinement used for the intersection test.
pub const POLYLINE_FACTOR: usize = 8;

/// `min ξ₀′` on a grid refined by `factor`.
pub fn min_xi_slope(eta: &SurfaceProfile, d: f64, factor: usize) -> Result<f64> {
    let slope = hilbert_prime(&eta.padded(factor), d)?;
    Ok(1.0 + slope.min_value())
}

/// Surface points over one period from crest to crest, closed at `2π`.
pub fn surface_polyline(eta: &SurfaceProfile, d: f64, factor: usize) -> Result<Vec<(f64, f64)>> {
    let fine = eta.padded(factor);
    let h = hilbert(&fine, d)?;
    let n = fine.grid().n_points();
    let mut pts: Vec<(f64, f64)> = (0..n).map(|j| (fine.node(j) + h.at(j), fine.at(j))).collect();
    pts.push((2.0 * std::f64::consts::PI + h.at(0), fine.at(0)));
    Ok(pts)
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn segments_cross(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Proper crossing between two non-adjacent segments of an open polyline.
pub fn polyline_self_intersects(pts: &[(f64, f64)]) -> bool {
    let n = pts.len();
    if n < 4 {
        return false;
    }
    for i in 0..n - 1 {
        let (lo_x, hi_x) = (pts[i].0.min(pts[i + 1].0), pts[i].0.max(pts[i + 1].0));
        for j in i + 2..n - 1 {
            let (a, b) = (pts[j], pts[j + 1]);
            if a.0.max(b.0) < lo_x || a.0.min(b.0) > hi_x {
                continue;
            }
            if segments_cross(pts[i], pts[i + 1], a, b) {
                return true;
            }
        }
    }
    false
}

/// Self-intersection of the surface curve. Returns `min ξ₀′` when the
/// curve crosses itself; a graph (`ξ₀′ > 0`) never does.
pub fn self_intersection(eta: &SurfaceProfile, d: f64) -> Result<Option<f64>> {
    let slope = min_xi_slope(eta, d, POLYLINE_FACTOR)?;
    if slope > 0.0 {
        return Ok(None);
    }
    let pts = surface_polyline(eta, d, POLYLINE_FACTOR)?;
    Ok(polyline_self_intersects(&pts).then_some(slope))
}
