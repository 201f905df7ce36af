//! Normalized integer chains, Smith normal form, homology groups with
//! explicit cycle generators, and maps induced in homology.

mod chain;
mod group;
mod induced;
mod matrix;
mod reduce;
mod snf;

pub use chain::{normalized_chains, Chain, ChainComplex, ChainMap, SparseColumn, SparseMatrix};
pub use group::{euler_characteristic, homology_groups, reduced, Homology, HomologyGroup};
pub use induced::{induced_map, induced_map_of, InducedMap};
pub use matrix::IntMatrix;
pub use reduce::Reduction;
pub use snf::{smith_normal_form, SmithForm};
