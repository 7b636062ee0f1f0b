//! Exact-arithmetic workbench for deformation theory via differential graded Lie algebras.

pub mod complex;
pub mod error;
pub mod graded;
pub mod matrix;
pub mod scalar;
pub mod table;
pub mod dgla;
pub mod artinian;
pub mod mc;
pub mod simplicial;
pub mod cartan;
pub mod dbv;
pub mod io;
pub mod cli;
pub mod corpus;

pub use complex::{Cohomology, Complex, HomComplex};
pub use error::{Error, Result};
pub use graded::{Elem, GradedMap, GradedSpace};
pub use matrix::Matrix;
pub use scalar::Scalar;
