//! Finite pointed simplicial sets and the constructions on them: products,
//! group actions and orbit quotients, symmetric powers, collapses and the
//! stabilization maps `Sym^n X -> Sym^{n+1} X`.

mod action;
mod collapse;
mod degeneracy;
mod map;
mod models;
mod product;
mod set;

pub use action::{quotient, GroupAction};
pub use collapse::collapse;
pub use degeneracy::{Degeneracy, MAX_DIM};
pub use map::{insert_basepoints, stabilization_map, SimplicialMap};
pub use models::{circle_model, load_complex, load_complex_file, sphere_model, ComplexDocument};
pub use product::{power, product, sym_power, sym_projection, Budget, DEFAULT_SIMPLEX_BUDGET};
pub use set::{Label, NormalSimplex, SimplicialSet};
