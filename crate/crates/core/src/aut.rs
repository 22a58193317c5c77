//! Automorphism groups of digraphs, vertex-transitivity and vertex-primitivity.

use crate::perm::{PermGroup, Permutation};
use crate::reldig::Digraph;
use crate::search;

/// `Aut(Γ)` as a permutation group. The identity stands in as sole
/// generator when the group is trivial.
pub fn automorphism_group(g: &Digraph) -> PermGroup {
    let n = g.order();
    let mut gens = search::automorphism_generators(g);
    for s in &gens {
        assert!(g.is_automorphism(s), "search returned a non-automorphism {s}");
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    PermGroup::new(n, gens).expect("generators have degree n")
}

pub fn is_vertex_transitive(g: &Digraph) -> bool {
    automorphism_group(g).is_transitive()
}

pub fn is_vertex_primitive(g: &Digraph) -> bool {
    automorphism_group(g).is_primitive()
}
