//! Seeded random instances: polytopes, generating sets and vector sequences.

use serde::{Deserialize, Serialize};

use crate::convexdual::{extreme_points, DualBody, GeneratingSet};
use crate::error::{Error, Result};
use crate::sampling::SampleRng;
use crate::seq::{SequenceSpec, VectorSequence};

/// Which subset of the polytope's extreme points forms `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteSet {
    ExtremePoints,
    /// Every extreme point but one, chosen by the instance rng.
    DropOneExtremePoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    pub count: usize,
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    /// Inclusive range of vertex counts.
    #[serde(default = "default_vertices")]
    pub vertices: (usize, usize),
    #[serde(default = "default_max_period")]
    pub max_period: usize,
    #[serde(default = "default_set")]
    pub generating_set: SuiteSet,
}

fn default_dims() -> Vec<usize> {
    vec![2, 3, 4]
}

fn default_vertices() -> (usize, usize) {
    (4, 12)
}

fn default_max_period() -> usize {
    8
}

fn default_set() -> SuiteSet {
    SuiteSet::ExtremePoints
}

impl SuiteSpec {
    pub fn new(count: usize) -> Self {
        Self {
            count,
            dims: default_dims(),
            vertices: default_vertices(),
            max_period: default_max_period(),
            generating_set: default_set(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidInput(
                "dims must be a nonempty list of positive dimensions".into(),
            ));
        }
        let (lo, hi) = self.vertices;
        if lo < 2 || lo > hi {
            return Err(Error::InvalidInput(format!(
                "vertex range {lo}..={hi} is invalid"
            )));
        }
        if self.max_period == 0 {
            return Err(Error::InvalidInput("max_period must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: usize,
    pub body: DualBody,
    pub generating_set: GeneratingSet,
    pub xs: VectorSequence,
}

/// Independent stream per instance, so instance `i` does not depend on `count`.
pub fn instance_rng(seed: u64, id: usize) -> SampleRng {
    SampleRng::new(seed ^ (id as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn random_points(rng: &mut SampleRng, count: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| rng.uniform_in(-1.0, 1.0)).collect())
        .collect()
}

/// Eventually periodic coordinates: preperiod up to 3, period up to `max_period`, values in `[-1, 1]`.
pub fn random_vector_sequence(
    rng: &mut SampleRng,
    dim: usize,
    max_period: usize,
) -> VectorSequence {
    let coords = (0..dim)
        .map(|_| {
            let pre = rng.int_in(0, 3);
            let per = rng.int_in(1, max_period);
            let pre: Vec<f64> = (0..pre).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
            let period: Vec<f64> = (0..per).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
            SequenceSpec::periodic(pre, period).expect("nonempty finite period")
        })
        .collect();
    VectorSequence::new(coords).expect("dim >= 1")
}

/// Constant vector sequences with coordinates in `[-1, 1]`.
pub fn random_constant_sequences(dim: usize, count: usize, seed: u64) -> Vec<VectorSequence> {
    let mut rng = SampleRng::new(seed);
    random_points(&mut rng, count, dim)
        .iter()
        .map(|x| VectorSequence::constant(x).expect("dim >= 1"))
        .collect()
}

pub fn random_suite(spec: &SuiteSpec, seed: u64) -> Result<Vec<Instance>> {
    spec.validate()?;
    (0..spec.count)
        .map(|id| {
            let mut rng = instance_rng(seed, id);
            let dim = spec.dims[rng.int_in(0, spec.dims.len() - 1)];
            let count = rng.int_in(spec.vertices.0, spec.vertices.1);
            let body = DualBody::polytope(random_points(&mut rng, count, dim))?;
            let mut ext = extreme_points(body.vertices().expect("polytope"))?;
            if spec.generating_set == SuiteSet::DropOneExtremePoint && ext.len() > 1 {
                ext.remove(rng.int_in(0, ext.len() - 1));
            }
            let xs = random_vector_sequence(&mut rng, dim, spec.max_period);
            Ok(Instance {
                id,
                body,
                generating_set: GeneratingSet::FinitePoints(ext),
                xs,
            })
        })
        .collect()
}
