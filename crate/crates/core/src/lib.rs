//! Leading terms of symmetrized root products for nilpotent orbits.
//!
//! For a nilpotent orbit O with weighted Dynkin diagram h, L(O) is the
//! dominance-maximal term of the symmetrized product `prod (1 - e^alpha)`
//! over positive roots with `alpha(h) <= 1`.
//!
//! ```
//! use orbit_lmap::{compute_l, LMapConfig, RootSystem};
//!
//! let rs = RootSystem::new("G2".parse().unwrap());
//! let r = compute_l(&rs, &"01".parse().unwrap(), &LMapConfig::default()).unwrap();
//! assert_eq!(r.weight.to_string(), "30");
//! ```

pub mod error;
pub mod groupring;
pub mod lmap;
pub mod orbits;
pub mod rootsys;
pub mod tables;

pub use error::{Error, Result};
pub use groupring::{
    levi_times_invariant, levi_times_invariant_symmetrized, product_in_order, product_over_roots,
    weyl_denominator_levi, Coefficient, ExponentialSum, LeviWeylGroup, Product, DEFAULT_TERM_CAP,
};
pub use lmap::{
    check_reciprocity, compute_l, compute_table, gl_dual_weight, pairing_with_diagram,
    richardson_weight, roots_le_one, LMapConfig, LMapResult, ReciprocityCheck, ReciprocityReport,
    ReciprocityStatus, RootSplit, Stats, Strategy, TableEntry,
};
pub use orbits::{
    all_orbits, diagram_from_partition, diagram_of, enumerate_orbits, exceptional_orbit_diagrams,
    is_even, partitions, transpose_partition, OrbitLabel, Partition, Tag, WeightedDynkinDiagram,
};
pub use rootsys::{CartanType, Family, Rational, Root, RootSystem, Weight};
pub use tables::{
    load_fixtures, load_table, parse_fixture, parse_group, self_consistency, table_name,
    tabulated_types, verify, FixtureRow, FixtureTable, Inconsistency, RowFlag, RowReport,
    RowStatus, Summary, VerificationReport,
};
