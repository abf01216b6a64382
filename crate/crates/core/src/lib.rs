//! Measurement calculus for one-way quantum computation.
//!
//! Patterns are built from entanglements, dependent measurements and
//! corrections, combined by composition and tensor, rewritten to standard
//! entanglement–measurement–correction form, and executed branch by branch
//! on explicit state vectors.
//!
//! ```
//! use mcalc::{library, rewrite, sim, Angle};
//!
//! let p = library::teleport(Angle::zero(), Angle::zero());
//! let (standard, _trace) = rewrite::standardize(&p).unwrap();
//! assert!(standard.is_emc());
//! let u = sim::extract_unitary::<f64>(&standard, 1e-9).unwrap();
//! assert_eq!(u.dim(), (2, 2));
//! ```

pub mod angle;
pub mod clifford;
pub mod command;
pub mod dsl;
pub mod error;
pub mod graph;
pub mod library;
pub mod matrix;
pub mod notation;
pub mod pattern;
pub mod qubit;
pub mod random;
pub mod rewrite;
pub mod scalar;
pub mod signal;
pub mod sim;

pub use angle::Angle;
pub use command::{Command, Measure};
pub use error::{AnalysisError, PatternError, RewriteError, SimError};
pub use pattern::{Pattern, ValidityReport};
pub use qubit::QubitId;
pub use scalar::Real;
pub use signal::{OutcomeMap, Signal};

/// Double-precision state vector.
pub type State = sim::QuantumState<f64>;
/// Double-precision complex matrix.
pub type Matrix = matrix::CMatrix<f64>;
/// Single-precision complex matrix.
pub type Matrix32 = matrix::CMatrix<f32>;
