//! Exact, desk-scale computations on spaces of subgroups.
//!
//! The crate is organised around a handful of group backends:
//!
//! * [`words`] and [`laws`]: reduced words in abstract generators, word maps
//!   and group laws (including the recursive solvability laws).
//! * [`perm`] and [`permgrp`]: finite permutation groups, explicitly
//!   enumerated, with subgroup lattices, normal closures and derived series.
//! * [`stallings`]: finitely generated subgroups of free groups as folded
//!   core graphs, with separating finite quotients.
//! * [`towers`]: families of quotient maps onto finite groups and the
//!   closure `cl(H) = ∩ φ⁻¹(φ(H))` they define, truncated to balls.
//! * [`treelab`]: automaton groups acting on rooted trees (Grigorchuk preset).
//! * [`subdyn`]: conjugacy classes of subgroups of finite groups viewed as
//!   uniformly recurrent subgroups, envelopes and the envelope-law check.
//!
//! File formats for all of the above live in [`formats`].

pub mod budget;
pub mod error;
pub mod formats;
pub mod laws;
pub mod perm;
pub mod permgrp;
pub mod stallings;
pub mod subdyn;
pub mod towers;
pub mod treelab;
pub mod words;

pub use budget::Budgets;
pub use error::{Error, Result};
pub use perm::Permutation;
pub use permgrp::{FiniteGroup, PermGroup, Subgroup, SubgroupClass};
pub use words::{Letter, Word};
