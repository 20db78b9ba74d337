//! Exact and numeric verification of covariant first-order differential
//! calculi on the quantum group `SU_q(2)`.
//!
//! - [`qscalar`]: the coefficient field `Q(q)`.
//! - [`suq2`]: the Hopf *-algebra `O(SU_q(2))` in PBW normal form.
//! - [`fodc`]: the 3D, 4D± and quotient calculi as bimodule rewrite systems.
//! - [`sphere`]: the Podleś sphere and its induced calculus.
//! - [`oprep`]: truncated lattice representations and commutator operators.
//! - [`report`]: check records shared by every suite.

pub mod error;
pub mod qscalar;
mod text;

pub use error::{Error, Result};
pub use qscalar::{Laurent, ScalarQ};
pub mod suq2;

pub use suq2::{AlgebraElement, Gen, Letter, Monomial, TensorElement};
pub mod fodc;
pub mod report;
pub mod sphere;
pub mod oprep;

pub use fodc::{make_calculus, CalculusDescriptor, CalculusId, OneForm};
pub use report::{CheckRecord, Report};
