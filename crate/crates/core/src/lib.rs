pub mod autos;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod gradings;
pub mod io;
pub mod liealg;
pub mod realforms;

pub use error::{Error, Result};
