//! Distributions on vertex sets, entropy functionals, n-types, type classes
//! and type graphs.

mod distribution;
mod entropy;
mod ntype;
mod type_graph;

pub use distribution::{
    parse_rational, Distribution, DistributionJson, ExactDist, FloatDist, FromCount, Weight,
};
pub use entropy::{binary_entropy, binary_relative_entropy, entropy_bits, log2};
pub use ntype::{enumerate_ntypes, type_class_bounds_hold, type_class_size, type_of, NType};
pub use type_graph::{
    materialization_cap, type_class_sequences, type_graph, type_graph_with_cap, TypeGraphSpec,
    TypeTarget,
    DEFAULT_CAP,
};
