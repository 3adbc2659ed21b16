//! Shared fixtures for the criterion benches.

use summa_core::convexdual::DualBody;
use summa_core::sampling::SampleRng;
use summa_core::simonslab::{random_points, random_vector_sequence};
use summa_core::VectorSequence;

pub fn random_cloud(count: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    random_points(&mut SampleRng::new(seed), count, dim)
}

pub fn random_polytope(vertices: usize, dim: usize, seed: u64) -> DualBody {
    DualBody::polytope(random_cloud(vertices, dim, seed)).expect("valid polytope")
}

pub fn random_sequence(dim: usize, max_period: usize, seed: u64) -> VectorSequence {
    random_vector_sequence(&mut SampleRng::new(seed), dim, max_period)
}
