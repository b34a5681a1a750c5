//! Exact computer algebra for Yang-Mills Lie algebras `ym(n)`: free Lie
//! algebras on Lyndon bases, finite nilpotent quotients, Koszul homology,
//! coadjoint orbits, and maps into Weyl algebras.

pub mod cli;
pub mod config;
pub mod error;
pub mod exactalg;
pub mod freelie;
pub mod koszul;
pub mod orbit;
pub mod series;
pub mod verify;
pub mod weyl;
pub mod ymquotient;

pub use error::{Error, Result};
