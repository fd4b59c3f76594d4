//! Exact computations around Weyl group elements: adapted positive systems,
//! compatible normal orderings, Cayley transforms, quantum root vectors with
//! their straightening relations, and the characters they support.

pub mod cayley;
pub mod cli;
pub mod error;
pub mod field;
pub mod ordering;
pub mod poly;
pub mod qalgebra;
pub mod quad;
pub mod rootsys;
pub mod scalar;
pub mod sl2w;
pub mod slice;
pub mod weyl;

pub use error::{Error, Result};
pub use field::Q;
pub use ordering::{NormalOrdering, SegmentData};
pub use rootsys::{CoweightVector, Root, RootSystem};
pub use scalar::QScalar;
pub use weyl::{InvolutionDecomposition, WeylElement};
