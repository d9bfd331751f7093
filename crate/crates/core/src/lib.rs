pub mod corners;
pub mod error;
pub mod graph;
pub mod numeric;
pub mod params;
pub mod refinement;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, Label};
