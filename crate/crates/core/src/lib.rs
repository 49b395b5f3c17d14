//! Exact symbolic engine for proto-bialgebras, the big bracket, Courant and
//! Dirac checks, twisting, deriving operators and polynomial Poisson calculus.

pub mod basis;
pub mod error;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod report;
pub mod samples;
pub mod scalar;
pub mod structures;
pub mod twisting;

pub use basis::{Basis, BasisSpec};
pub use error::{Error, Result};
pub use graded::{GradedElement, Monomial};
pub use poly::{Kind, Poly, PolyForm, PolyMultivector, PolySection, PolyTensor};
pub use report::{AxiomReport, Check, Residual};
pub use scalar::Scalar;
pub use structures::{Classification, DoubleSection, ProtoStructure};
