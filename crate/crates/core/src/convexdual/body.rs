use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sampling::sphere_directions;

/// Slack allowed when checking that a generating set sits inside its body.
pub const SUBSET_TOL: f64 = 1e-9;

/// A compact convex body in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub enum DualBody {
    /// Convex hull of a finite vertex list.
    VPolytope(Vec<Vec<f64>>),
    /// Euclidean ball centered at the origin.
    Ball { radius: f64, dim: usize },
}

impl DualBody {
    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput(
                "polytope needs at least one vertex".into(),
            ));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidInput(
                "polytope vertices must have dimension >= 1".into(),
            ));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(
                    "polytope vertices must be finite".into(),
                ));
            }
        }
        Ok(DualBody::VPolytope(vertices))
    }

    pub fn ball(radius: f64, dim: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidInput("ball dimension must be >= 1".into()));
        }
        Ok(DualBody::Ball { radius, dim })
    }

    /// `conv{±e_1, ..., ±e_d}`, the unit ball of the l1 norm.
    pub fn cross_polytope(dim: usize) -> Result<Self> {
        let mut vertices = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let mut v = vec![0.0; dim];
                v[i] = sign;
                vertices.push(v);
            }
        }
        Self::polytope(vertices)
    }

    pub fn dim(&self) -> usize {
        match self {
            DualBody::VPolytope(vs) => vs[0].len(),
            DualBody::Ball { dim, .. } => *dim,
        }
    }

    pub fn vertices(&self) -> Option<&[Vec<f64>]> {
        match self {
            DualBody::VPolytope(vs) => Some(vs),
            DualBody::Ball { .. } => None,
        }
    }

    /// `h_K(v) = sup_{x in K} <x, v>`.
    pub fn support_value(&self, v: &[f64]) -> Result<f64> {
        check_dim(self.dim(), v)?;
        Ok(match self {
            DualBody::VPolytope(vs) => vs
                .iter()
                .map(|p| dot(p, v))
                .fold(f64::NEG_INFINITY, f64::max),
            DualBody::Ball { radius, .. } => radius * norm(v),
        })
    }

    /// Membership of a single point, up to `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        check_dim(self.dim(), x)?;
        match self {
            DualBody::VPolytope(vs) => super::lp::conv_contains(vs, x, tol),
            DualBody::Ball { radius, .. } => Ok(norm(x) <= radius + tol),
        }
    }
}

pub fn support_value(body: &DualBody, v: &[f64]) -> Result<f64> {
    body.support_value(v)
}

/// A spherical cap removed from a sample: directions within `angular_radius` of `direction`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cap {
    pub direction: Vec<f64>,
    pub angular_radius: f64,
}

impl Cap {
    pub fn contains(&self, u: &[f64]) -> bool {
        let n = norm(&self.direction) * norm(u);
        n > 0.0 && dot(&self.direction, u) / n >= self.angular_radius.cos()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereSample {
    pub count: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded_cap: Option<Cap>,
}

/// A candidate subset `B` of a body `K`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratingSet {
    FinitePoints(Vec<Vec<f64>>),
    /// Seeded uniform points on the bounding sphere of a ball.
    SphereSample(SphereSample),
}

impl GeneratingSet {
    pub fn sphere_sample(count: usize, seed: u64, excluded_cap: Option<Cap>) -> Self {
        GeneratingSet::SphereSample(SphereSample {
            count,
            seed,
            excluded_cap,
        })
    }

    /// Materializes the points inside `body`.
    pub fn points(&self, body: &DualBody) -> Result<Vec<Vec<f64>>> {
        match self {
            GeneratingSet::FinitePoints(ps) => {
                for p in ps {
                    check_dim(body.dim(), p)?;
                }
                Ok(ps.clone())
            }
            GeneratingSet::SphereSample(s) => {
                let DualBody::Ball { radius, dim } = body else {
                    return Err(Error::InvalidInput(
                        "sphere samples need a ball body".into(),
                    ));
                };
                if let Some(cap) = &s.excluded_cap {
                    check_dim(*dim, &cap.direction)?;
                }
                Ok(sphere_directions(*dim, s.count, s.seed)
                    .into_iter()
                    .filter(|u| s.excluded_cap.as_ref().is_none_or(|c| !c.contains(u)))
                    .map(|u| u.into_iter().map(|x| x * radius).collect())
                    .collect())
            }
        }
    }

    /// Points, after checking each lies in `body`.
    pub fn points_within(&self, body: &DualBody) -> Result<Vec<Vec<f64>>> {
        let pts = self.points(body)?;
        if pts.is_empty() {
            return Err(Error::InvalidInput("generating set is empty".into()));
        }
        for (index, p) in pts.iter().enumerate() {
            if !body.contains(p, SUBSET_TOL)? {
                return Err(Error::SubsetViolation { index });
            }
        }
        Ok(pts)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn check_dim(expected: usize, v: &[f64]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum BodyJson {
    Vpolytope { vertices: Vec<Vec<f64>> },
    Ball { radius: f64, dim: usize },
}

impl Serialize for DualBody {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DualBody::VPolytope(vs) => BodyJson::Vpolytope {
                vertices: vs.clone(),
            },
            DualBody::Ball { radius, dim } => BodyJson::Ball {
                radius: *radius,
                dim: *dim,
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualBody {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match BodyJson::deserialize(deserializer)? {
            BodyJson::Vpolytope { vertices } => DualBody::polytope(vertices),
            BodyJson::Ball { radius, dim } => DualBody::ball(radius, dim),
        }
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SetJson {
    FinitePoints {
        points: Vec<Vec<f64>>,
    },
    SphereSample {
        count: usize,
        seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        excluded_cap: Option<Cap>,
    },
}

impl Serialize for GeneratingSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GeneratingSet::FinitePoints(ps) => SetJson::FinitePoints { points: ps.clone() },
            GeneratingSet::SphereSample(s) => SetJson::SphereSample {
                count: s.count,
                seed: s.seed,
                excluded_cap: s.excluded_cap.clone(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneratingSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(match SetJson::deserialize(deserializer)? {
            SetJson::FinitePoints { points } => GeneratingSet::FinitePoints(points),
            SetJson::SphereSample {
                count,
                seed,
                excluded_cap,
            } => GeneratingSet::sphere_sample(count, seed, excluded_cap),
        })
    }
}
