#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod algebroid;
pub mod derivation;
pub mod error;

pub use algebra::{BiWeight, BlockDecl, Element, GenId, GeneratorKind, GeneratorTable, Monomial, Rational};
pub use algebroid::AlgebroidSpec;
pub use derivation::Derivation;
pub use error::{Error, Result};
pub mod linalg;
pub mod weight_modules;
pub mod superconnection;
pub mod cohomology;
pub mod families;
pub mod dsl;
pub mod cli;
