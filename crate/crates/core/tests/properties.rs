//! Standalone property suites: structural axioms and counting identities on
//! seeded random instances.

mod common;

#[test]
fn action_axioms_hold_across_constructors() {
    common::check_action_axiom_spread();
}

#[test]
fn lagrange_for_elements_and_subgroups() {
    common::check_lagrange();
}

#[test]
fn adjunction_counts_on_fifty_seeded_instances() {
    common::check_adjunction_instances(50, 0xAD);
}

#[test]
fn character_products_on_fifty_seeded_instances() {
    common::check_character_product_instances(50, 0xC0DE);
}

#[test]
fn kernel_vectors_balance_sizes_and_orbit_counts() {
    common::check_kernel_balance(&common::catalog());
}
