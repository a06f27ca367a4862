//! Exact counting, enumeration and uniform sampling of `n`-ribbon tilings of
//! lattice regions, together with the graph of tiles whose admissible
//! acyclic orientations are in bijection with those tilings.
//!
//! * [`region`]: cells, ribbon shapes, tiles, tilings and region builders.
//! * [`enumerate`]: the canonical-cell search with frontier memoization.
//! * [`sheffield`]: tile graph, light rule, orientation counting, chromatic
//!   polynomials and graph isomorphism.
//! * [`formulas`]: closed forms, recurrences and entropy bounds.
//! * [`verify`]: named check suites cross-validating all of the above.

pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod region;
pub mod sheffield;
pub mod verify;

pub use enumerate::{
    count_minimal, count_tilings, count_tilings_with, count_variable, entropy, enumerate_tilings, is_tileable,
    sample_tiling, tiling_probability, BigCount, CountOptions, Occupancy, TilingCounter, TilingSampler,
};
pub use error::{Error, Result};
pub use region::{build_aztec, build_rectangle, build_stair, Cell, Region, RibbonShape, Step, Tile, Tiling};

/// Serializes a big integer as a decimal string.
pub fn serde_decimal<S: serde::Serializer>(value: &num_bigint::BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}
