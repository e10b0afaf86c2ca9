//! Shared model builders for the benchmark targets.

use redq_core::model::{fig1_ring, uniform_complete, CompatibilityModel};

pub fn ring_model(load: f64) -> CompatibilityModel {
    fig1_ring(load).unwrap()
}

pub fn complete_model(n: usize, load: f64) -> CompatibilityModel {
    uniform_complete(n, vec![1.0; n], load).unwrap()
}
