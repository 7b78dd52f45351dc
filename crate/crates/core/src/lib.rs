//! Symplectic Bott-Chern/Aeppli cohomology on finite invariant-form
//! complexes, together with the Witten-deformed local oscillator model and
//! Morse-type inequality arithmetic.
//!
//! The crate has three layers:
//!
//! - exact-rational exterior algebra and Chevalley-Eilenberg complexes
//!   ([`exterior`], [`nilmanifold`], [`hodge`]): every operator identity and
//!   cohomology dimension is a bit-exact matrix statement;
//! - the Euclidean local model on a truncated harmonic-oscillator basis
//!   ([`witten`]): deformed differentials, their Laplacians, kernel counts
//!   and inequality checks in `f64` with Θ(T²) gaps separating pass from
//!   fail;
//! - pure integer arithmetic over cohomology tables and Morse count
//!   vectors ([`morse`]).
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the thin `sympcoh` binary for the report-driven command line.

pub mod cli;
pub mod exterior;
pub mod graded;
pub mod hodge;
pub mod linalg;
pub mod morse;
pub mod nilmanifold;
pub mod report;
pub mod sparse;
pub mod specfile;
pub mod witten;

pub use exterior::{KForm, SymplecticData};
pub use hodge::{CohomologyTable, SymplecticComplex};
pub use linalg::{rat, rat_i, Rat, RatMat};
pub use morse::{MorseData, TorsionData};
pub use nilmanifold::LieAlgebraSpec;
pub use report::{Check, Report, Section, Status};
pub use witten::{LocalModel, LocalModelConfig};
