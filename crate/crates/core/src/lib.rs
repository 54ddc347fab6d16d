//! Exact F-signature estimates for singularities over prime fields.

pub mod error;
pub mod field;
pub mod groebner;
pub mod io;
pub mod lab;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod signature;

pub use error::{Error, Result};
