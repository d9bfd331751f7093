//! Solvers: exact rational LP, dense SDP, prime-field linear algebra.

mod gf;
mod sdp;
mod simplex;

pub use gf::GFMatrix;
pub use sdp::{SdpProblem, SdpSettings, SdpSolution, SparseSym};
pub use simplex::{maximize, LpSolution};
