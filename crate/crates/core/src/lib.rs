//! Exact computational toolkit for linearly equivalent G-sets over small
//! finite groups.
//!
//! The crate enumerates a finite permutation group and its subgroup lattice,
//! builds the integer matrix of quasiregular characters over the
//! subgroup-class basis, and computes the exact kernel lattice of the map
//! from the Burnside ring to the character ring. Kernel vectors split into
//! pairs of G-sets with identical fixed-point counts; the unbalanced ones
//! (different orbit-size multisets) exist for every non-cyclic group and
//! are constructed explicitly. Two exact surrogates verify the spectral
//! consequences: Schreier-graph characteristic polynomials and
//! representation numbers of flat-torus quadratic forms.
//!
//! Everything is integer or rational arithmetic; there is no floating point
//! and no tolerance anywhere.

pub mod arith;
pub mod error;
pub mod gset;
pub mod group;
pub mod kernel;
pub mod linalg;
pub mod pairs;
pub mod perm;
pub mod spectral;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::{construct, construct_with_cap, ConjClass, Group, GroupSpec, DEFAULT_ORDER_CAP};
pub use gset::{
    cartesian, coset_space, disjoint_union, fixed_points, hom_count, induce, inflate, isomorphic,
    linearly_equivalent, one_point, orbit_decomposition, perm_character, regular, repeat,
    restrict, tensor, GSet, OrbitType, PermCharacter,
};
pub use kernel::{
    character_matrix, is_unbalanced, kernel_basis, kernel_contains, quasiregular_character,
    sunada_pairs, to_reduced_pair, BurnsideElement, CharacterMatrix, ReducedPair,
};
pub use pairs::{
    elementary_abelian_candidate, find_unbalanced_pair, find_unbalanced_pair_via_kernel,
    pair_elementary_abelian, pair_metacyclic, lift_by_induction, lift_by_inflation,
    recognize_elementary_or_pq, Provenance, SmallClassification, UnbalancedPair,
};
pub use spectral::{
    char_poly, cospectral, hecke_check, random_inverse_closed_multiset, representation_counts,
    schreier_adjacency, symmetrize_multiset, torus_quotient_form, unimodular_equivalent,
    AdjacencyMatrix, HeckeOutcome, IntPolynomial, QForm, RepCounts,
};
pub use subgroup::{
    all_subgroups, are_conjugate, class_index_of, frattini, quotient, subgroup_classes,
    sylow_subgroup, Quotient, Subgroup, SubgroupClass,
};
