//! Fixed workloads shared by the benchmarks.

use orbit_lmap::{CartanType, LMapConfig, Strategy, WeightedDynkinDiagram};

/// `(type, diagram)` pairs, from a few hundred terms to a few hundred thousand.
pub const ORBITS: &[(&str, &str)] = &[
    ("B3", "000"),
    ("C4", "0000"),
    ("D5", "00000"),
    ("F4", "0001"),
    ("E6", "000100"),
    ("B6", "010000"),
];

pub fn workload(i: usize) -> (CartanType, WeightedDynkinDiagram) {
    let (t, d) = ORBITS[i];
    (t.parse().expect("type"), d.parse().expect("diagram"))
}

pub fn config(strategy: Strategy) -> LMapConfig {
    LMapConfig::with_strategy(strategy)
}
