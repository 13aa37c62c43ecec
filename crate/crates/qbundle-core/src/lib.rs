//! Exact symbolic engine for quantum principal bundles over noncommutative
//! bases: structure-group calculi, connections, covariant derivatives,
//! associated vector bundles and gauge transformations.
#![no_std]

extern crate alloc;

pub mod assoc;
pub mod bundle;
pub mod dga;
pub mod error;
pub mod examples;
pub mod expr;
pub mod fodc;
pub mod gauge;
pub mod hopf;
pub mod linalg;
pub mod lincomb;
pub mod ncalg;
pub mod scalars;
pub mod tensor;

pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use ncalg::{Algebra, Elem, Gen, Presentation, Word};
pub use scalars::Scalar;
pub use tensor::Tensor;
