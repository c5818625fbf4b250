#![no_std]

extern crate alloc;

pub mod closed;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod gamma;
pub mod lie;
pub mod matrix;
pub mod poly;
pub mod scan;
pub mod subspace;
pub mod table1;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use matrix::FpMatrix;
pub use poly::IntPoly;
pub use subspace::Subspace;
