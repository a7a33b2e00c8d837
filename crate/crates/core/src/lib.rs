pub mod bitset;
pub mod co2plex;
pub mod error;
pub mod graph;
pub mod lab;
pub mod lp;
pub mod numeric;
pub mod polyhedra;
pub mod separation;
pub mod solver;
pub mod utter;

pub use co2plex::Co2Plex;
pub use error::{Error, Result};
pub use graph::{Element, Graph};
pub use numeric::{Rational, Scalar};
pub use utter::{UtterClique, UtterGraph};
