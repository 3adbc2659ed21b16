use crate::error::Result;
use crate::sampling::sphere_directions;

use super::body::dot;
use super::lp::conv_contains;

pub const EXTREME_TOL: f64 = 1e-9;

/// Minimal sublist with the same convex hull.
///
/// Points are visited in order and dropped when the hull of the remaining
/// points already contains them, so duplicates keep their first surviving copy.
pub fn extreme_points(points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = points.len();
    if n <= 1 {
        return Ok(points.to_vec());
    }
    let certain = unique_maximizers(points);
    let mut alive = vec![true; n];
    for i in 0..n {
        if certain[i] {
            continue;
        }
        let others: Vec<Vec<f64>> = (0..n)
            .filter(|&j| j != i && alive[j])
            .map(|j| points[j].clone())
            .collect();
        if !others.is_empty() && conv_contains(&others, &points[i], EXTREME_TOL)? {
            alive[i] = false;
        }
    }
    Ok((0..n)
        .filter(|&i| alive[i])
        .map(|i| points[i].clone())
        .collect())
}

/// Flags points that strictly maximize some probe functional; those are extreme
/// and can skip the LP.
fn unique_maximizers(points: &[Vec<f64>]) -> Vec<bool> {
    let dim = points[0].len();
    let mut dirs = Vec::with_capacity(2 * dim + 64);
    for i in 0..dim {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[i] = sign;
            dirs.push(e);
        }
    }
    dirs.extend(sphere_directions(dim, 64, 0x5eed_e47e));
    let mut flags = vec![false; points.len()];
    for u in &dirs {
        let mut best = (f64::NEG_INFINITY, usize::MAX);
        let mut second = f64::NEG_INFINITY;
        for (i, p) in points.iter().enumerate() {
            let v = dot(p, u);
            if v > best.0 {
                second = best.0;
                best = (v, i);
            } else if v > second {
                second = v;
            }
        }
        if best.0 - second > 1e-7 {
            flags[best.1] = true;
        }
    }
    flags
}

/// Approximate Euclidean projection of `v` onto `conv(points)` by Gilbert's
/// algorithm (Frank–Wolfe with exact line search).
pub(crate) fn project_onto_hull(points: &[Vec<f64>], v: &[f64], iterations: usize) -> Vec<f64> {
    let dist2 = |p: &[f64]| p.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
    let mut y = points
        .iter()
        .min_by(|a, b| dist2(a).total_cmp(&dist2(b)))
        .expect("nonempty point list")
        .clone();
    for _ in 0..iterations {
        let g: Vec<f64> = y.iter().zip(v).map(|(a, b)| a - b).collect();
        let s = points
            .iter()
            .min_by(|a, b| dot(a, &g).total_cmp(&dot(b, &g)))
            .unwrap();
        let d: Vec<f64> = s.iter().zip(&y).map(|(a, b)| a - b).collect();
        let gap = -dot(&g, &d);
        let dd = dot(&d, &d);
        if gap <= 1e-15 * (1.0 + dot(&g, &g)) || dd == 0.0 {
            break;
        }
        let t = (gap / dd).min(1.0);
        for (yi, di) in y.iter_mut().zip(&d) {
            *yi += t * di;
        }
    }
    y
}
