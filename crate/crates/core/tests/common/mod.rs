#![allow(dead_code)]

use proptest::prelude::*;
use summa_core::{IntegerSet, SequenceSpec};

pub fn values(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..=1.0, len)
}

/// Eventually periodic, preperiod < 4, period 1..=8, values in [-1, 1].
pub fn periodic() -> impl Strategy<Value = SequenceSpec> {
    (values(0..4), values(1..9)).prop_map(|(pre, per)| SequenceSpec::periodic(pre, per).unwrap())
}

/// Values on the grid {-1, -0.5, 0, 0.5, 1}.
pub fn grid_periodic() -> impl Strategy<Value = SequenceSpec> {
    let grid = || prop::collection::vec((-2i32..=2).prop_map(|v| v as f64 / 2.0), 0..4);
    let period = prop::collection::vec((-2i32..=2).prop_map(|v| v as f64 / 2.0), 1..7);
    (grid(), period).prop_map(|(pre, per)| SequenceSpec::periodic(pre, per).unwrap())
}

/// Convergent in the ordinary sense: any preperiod, then a constant.
pub fn convergent() -> impl Strategy<Value = SequenceSpec> {
    (values(0..6), -1.0f64..=1.0).prop_map(|(pre, c)| SequenceSpec::periodic(pre, vec![c]).unwrap())
}

fn support() -> impl Strategy<Value = IntegerSet> {
    prop_oneof![Just(IntegerSet::Squares), Just(IntegerSet::PowersOfTwo)]
}

/// Periodic parts plus sparse jumps on squares or powers of two.
pub fn bounded() -> impl Strategy<Value = SequenceSpec> {
    let sparse = (support(), -1.0f64..=1.0, -1.0f64..=1.0)
        .prop_map(|(set, on, off)| SequenceSpec::indicator(set, on, off));
    let part = prop_oneof![3 => periodic(), 2 => sparse];
    prop_oneof![
        periodic(),
        (prop::collection::vec((-1.0f64..=1.0, part), 1..4)).prop_map(|terms| {
            let (c, p): (Vec<f64>, Vec<SequenceSpec>) = terms.into_iter().unzip();
            SequenceSpec::combo(c, p).unwrap()
        }),
    ]
}

pub fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..=1.0, dim)
}

/// `count` points in `[-1, 1]^dim` for dim in 2..=4.
pub fn cloud(count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..=4).prop_flat_map(move |d| prop::collection::vec(point(d), count.clone()))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
