//! Exact computations with Auslander-Reiten sequences over graded plane
//! curve singularities `k[x,y]/(g)`.

pub mod ar;
pub mod branches;
pub mod decompose;
pub mod error;
pub mod explore;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod qelem;
pub mod quiver;
pub mod ring;
pub mod trace;
pub mod tube_example;
pub mod upoly;

pub use error::{Error, Result};
