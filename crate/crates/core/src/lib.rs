pub mod error;
pub mod fiber;
pub mod fixtures;
pub mod holonomy;
pub mod homology;
pub mod io;
pub mod character;
pub mod cli;
pub mod cochain;
pub mod linalg;
pub mod phase;
pub mod product;
pub mod random;
pub mod relative;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
