pub mod action;
pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod correspondence;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod instance;
pub mod iso_pu;
pub mod lattice;
pub mod report;
pub mod ring;
pub mod semigroup;
pub mod zero_case;

pub use error::{Error, Result};
