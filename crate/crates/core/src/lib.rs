//! Neighbourhood-intersection spectra of finite digraphs.
//!
//! For a `d`-regular digraph `Γ` on `Ω = {0..n-1}`, the graph `Γ_i` joins
//! `u` and `v` when their out-neighbourhoods share exactly `d − i` vertices.
//! This crate computes those layers, the parameters `κ` and `ℓ` derived from
//! them, and the two-branch dichotomy that every vertex-primitive digraph
//! satisfies. Around that core sit the tools needed to check such claims by
//! brute force: permutation groups with stabilizer chains, automorphism
//! groups via partition refinement, synchronisation of transformation
//! semigroups, and exhaustive oracle suites.

pub mod aut;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod perm;
pub mod reldig;
pub mod spectrum;
pub mod sync;
mod search;
mod text;

pub use error::{Error, Result};
pub use perm::{BlockSystem, PermGroup, Permutation};
pub use reldig::{are_isomorphic, Digraph, ValencyProfile};
