//! Leavitt path algebras of finite directed graphs over the rationals.
//!
//! [`graph`] holds graphs, cycles and hereditary saturated sets;
//! [`element`] the algebra itself in a rewriting normal form; [`ideal`]
//! graded and λ-reducible ideals; [`two_vertex`] the classification of
//! two-vertex graphs.

pub mod element;
pub mod error;
pub mod graph;
pub mod ideal;
pub mod poly;
pub mod two_vertex;

pub use element::{Element, Monomial, Scalar};
pub use error::{ElementError, GraphError, IdealError, TwoVertexError};
pub use graph::{Cycle, Graph, HeredSatSet, Path, VertexClass};
pub use poly::Poly;
