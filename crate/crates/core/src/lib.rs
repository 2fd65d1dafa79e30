//! Triangle-free graphs with bounded independence number: Andrásfai and
//! Vega constructions, weighted blow-ups, the piecewise-quadratic edge bound,
//! the extremal families, a blow-up optimizer and an exact enumeration
//! oracle.

pub mod bits;
pub mod blowup;
pub mod canon;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod extremal;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod mis;
pub mod optimizer;
pub mod oracle;
pub mod report;
pub mod twins;
pub mod verify;

pub use bits::BitRow;
pub use error::{Error, Result};
pub use extremal::Rational;
pub use graph::{Graph, Label};
