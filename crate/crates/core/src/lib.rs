//! Symmetric powers of finite pointed simplicial sets, their integral
//! homology and stabilization maps, together with exact power-series tools
//! for zeta functions of varieties over finite fields.

pub mod cache;
pub mod cli;
pub mod error;
pub mod homology;
pub mod simplicial;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
