//! Exact Bredon cohomology of finite G-CW complexes with Mackey-functor
//! coefficients, together with the Chern-character target decomposition
//! computed from fixed-point data.

pub mod bredon;
pub mod category;
pub mod chartab;
pub mod data;
pub mod error;
pub mod gcw;
pub mod group;
pub mod linalg;
pub mod mackey;
pub mod selftest;
mod text;

pub use error::{Error, Result};
