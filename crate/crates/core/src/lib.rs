pub mod cli;
pub mod error;
pub mod groebner;
pub mod homalg;
pub mod ideal_ops;
pub mod linkage;
pub mod monomial;
pub mod poly;
pub mod theorems;

pub use error::{Error, Result};
