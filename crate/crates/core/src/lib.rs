pub mod bezout;
pub mod cli;
pub mod configs;
pub mod error;
pub mod exactalg;
pub mod geometry;
pub mod linsys;
pub mod waldschmidt;

pub use error::{Error, Result};
