//! Truncated lattice `*`-representations of `O(SU_q(2))` and the commutator
//! operators `F` built on them.
//!
//! Operators act on `G ⊕ l²(N₀ × Z)` (optionally with a copy index `l`) cut
//! down to a finite window. Vectors pushed outside the window are dropped, so
//! every identity is evaluated only on an interior mask whose margin is the
//! tracked reach of the identity's longest operator word.

mod checks;
mod disk;
mod fspec;
mod lattice;
mod operator;
mod regular;
mod rep;

pub use checks::*;
pub use disk::*;
pub use fspec::{
    assemble_f, build_f, decompose_r, materialize, spec_conditions, ConditionCheck, FSpec, Materialized, RSpec,
    RSplit, TSpec, Variant, CONDITION_TOL,
};
pub use lattice::{interior_mask, InteriorMask, LatticeWindow, Layout, Site};
pub use operator::{LatticeOperator, OpSum, Residual};
pub use regular::*;
pub use rep::{build_rep, lambda_n, RepConfig, Representation, VSector, WChoice};
