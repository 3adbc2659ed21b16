use crate::error::Result;
use crate::sampling::sphere_directions;

use super::body::{dot, norm, DualBody, GeneratingSet};
use super::hull::{extreme_points, project_onto_hull};
use super::lp::conv_contains;

/// Attainment slack for the sampled boundary check.
pub const ATTAIN_TOL: f64 = 1e-9;
/// Probe directions used by the sampled (I)-generation check.
pub const GENERATION_PROBES: usize = 1000;
/// Mixed into caller seeds so probes never coincide with seeded sphere samples.
const PROBE_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    Exact,
    Approximate,
}

impl Certainty {
    pub fn label(self) -> &'static str {
        match self {
            Certainty::Exact => "exact",
            Certainty::Approximate => "approximate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryVerdict {
    pub is_boundary: bool,
    pub certainty: Certainty,
    /// Fraction of vertices (polytope) or probe directions (ball) at which `B` attains `h_K`.
    pub attained_fraction: f64,
    /// A unit direction `x` whose supremum over `K` no point of `B` attains.
    pub witness: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationVerdict {
    pub generates: bool,
    pub certainty: Certainty,
    /// Polytope: a vertex of `K` outside `conv(B)`. Ball: the probe direction with the largest support gap.
    pub witness: Option<Vec<f64>>,
    /// Largest `h_K(u) - h_B(u)` seen over the probes (0 for exact polytope checks that pass).
    pub max_gap: f64,
}

pub(crate) fn probe_directions(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    sphere_directions(dim, count, seed ^ PROBE_SALT)
}

fn hull_support(points: &[Vec<f64>], u: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| dot(p, u))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn near_any(points: &[Vec<f64>], v: &[f64], tol: f64) -> bool {
    points.iter().any(|p| {
        p.iter()
            .zip(v)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
            <= tol
    })
}

/// Does every direction have a point of `B` attaining `sup_K`?
///
/// Exact for polytopes (every vertex of `K` must be in `B`); sampled over
/// `probes` seeded directions for balls.
pub fn is_boundary(
    b: &GeneratingSet,
    k: &DualBody,
    probes: usize,
    seed: u64,
) -> Result<BoundaryVerdict> {
    let pts = b.points_within(k)?;
    match k {
        DualBody::VPolytope(vs) => {
            let ext = extreme_points(vs)?;
            let missing: Vec<&Vec<f64>> = ext.iter().filter(|v| !near_any(&pts, v, 1e-9)).collect();
            let attained_fraction = (ext.len() - missing.len()) as f64 / ext.len() as f64;
            let witness = match missing.first() {
                Some(v) => Some(separating_direction(&pts, k, v)?),
                None => None,
            };
            Ok(BoundaryVerdict {
                is_boundary: missing.is_empty(),
                certainty: Certainty::Exact,
                attained_fraction,
                witness,
            })
        }
        DualBody::Ball { radius, dim } => {
            let dirs = probe_directions(*dim, probes, seed);
            let mut attained = 0usize;
            let mut worst: Option<(f64, &Vec<f64>)> = None;
            for u in &dirs {
                let gap = radius - hull_support(&pts, u);
                if gap <= ATTAIN_TOL {
                    attained += 1;
                } else if worst.is_none_or(|(g, _)| gap > g) {
                    worst = Some((gap, u));
                }
            }
            Ok(BoundaryVerdict {
                is_boundary: worst.is_none(),
                certainty: Certainty::Approximate,
                attained_fraction: if dirs.is_empty() {
                    1.0
                } else {
                    attained as f64 / dirs.len() as f64
                },
                witness: worst.map(|(_, u)| u.clone()),
            })
        }
    }
}

/// Unit direction `u` with `h_K(u) > max_{b in B} <b, u>`, for a vertex `v` of
/// `K` lying outside `conv(B)`.
fn separating_direction(pts: &[Vec<f64>], k: &DualBody, v: &[f64]) -> Result<Vec<f64>> {
    let y = project_onto_hull(pts, v, 20_000);
    let mut u: Vec<f64> = v.iter().zip(&y).map(|(a, b)| a - b).collect();
    let n = norm(&u);
    if n > 0.0 {
        u.iter_mut().for_each(|x| *x /= n);
        // snap round-off so exact witnesses like (0, -1) print cleanly
        u.iter_mut().for_each(|x| {
            if x.abs() < 1e-12 {
                *x = 0.0
            }
        });
    }
    debug_assert!(n == 0.0 || k.support_value(&u)? >= hull_support(pts, &u));
    Ok(u)
}

/// Is `cl conv(B) = K`?
///
/// Exact for polytopes via one LP per vertex of `K`; for balls, approximate:
/// `h_B(u) >= r - tol` over [`GENERATION_PROBES`] seeded directions.
pub fn i_generates(
    b: &GeneratingSet,
    k: &DualBody,
    tol: f64,
    seed: u64,
) -> Result<GenerationVerdict> {
    let pts = b.points_within(k)?;
    match k {
        DualBody::VPolytope(vs) => {
            for v in extreme_points(vs)? {
                if !conv_contains(&pts, &v, 1e-9)? {
                    return Ok(GenerationVerdict {
                        generates: false,
                        certainty: Certainty::Exact,
                        max_gap: norm(&sub(&v, &project_onto_hull(&pts, &v, 20_000))),
                        witness: Some(v),
                    });
                }
            }
            Ok(GenerationVerdict {
                generates: true,
                certainty: Certainty::Exact,
                witness: None,
                max_gap: 0.0,
            })
        }
        DualBody::Ball { radius, dim } => {
            let mut worst = (f64::NEG_INFINITY, Vec::new());
            for u in probe_directions(*dim, GENERATION_PROBES, seed) {
                let gap = radius - hull_support(&pts, &u);
                if gap > worst.0 {
                    worst = (gap, u);
                }
            }
            let generates = worst.0 < tol;
            Ok(GenerationVerdict {
                generates,
                certainty: Certainty::Approximate,
                witness: (!generates).then_some(worst.1),
                max_gap: worst.0.max(0.0),
            })
        }
    }
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
