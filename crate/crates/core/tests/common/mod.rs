//! Shared fixtures for the property and acceptance suites: the group catalog
//! and the reusable property checks.

#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use burnside::gset::{
    cartesian, coset_space, disjoint_union, hom_count, induce, one_point, perm_character,
    restrict, GSet,
};
use burnside::group::{construct, Group, GroupSpec};
use burnside::kernel::kernel_basis;
use burnside::perm::Perm;
use burnside::subgroup::{all_subgroups, subgroup_classes, Subgroup};

pub fn q8_spec() -> GroupSpec {
    GroupSpec::Generators {
        degree: 8,
        gens: vec![
            Perm::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).unwrap(),
            Perm::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).unwrap(),
        ],
    }
}

pub fn a4_spec() -> GroupSpec {
    GroupSpec::Generators {
        degree: 4,
        gens: vec![
            Perm::from_images(vec![1, 2, 0, 3]).unwrap(),
            Perm::from_images(vec![1, 0, 3, 2]).unwrap(),
        ],
    }
}

pub fn s4_spec() -> GroupSpec {
    GroupSpec::Generators {
        degree: 4,
        gens: vec![
            Perm::from_images(vec![1, 2, 3, 0]).unwrap(),
            Perm::from_images(vec![1, 0, 2, 3]).unwrap(),
        ],
    }
}

pub fn holomorph_z8_spec() -> GroupSpec {
    GroupSpec::Generators {
        degree: 8,
        gens: vec![
            Perm::from_images((0..8).map(|i| (i + 1) % 8).collect()).unwrap(),
            Perm::from_images((0..8).map(|i| 3 * i % 8).collect()).unwrap(),
            Perm::from_images((0..8).map(|i| 5 * i % 8).collect()).unwrap(),
        ],
    }
}

fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
    GroupSpec::Product(Box::new(a), Box::new(b))
}

/// The acceptance catalog: every cyclic group up to order 30, the
/// elementary/abelian small cases, dihedral groups D3..D8, Q8, A4, S4, the
/// order-32 holomorph of Z/8, and two metacyclic groups.
pub fn catalog() -> Vec<(String, Arc<Group>)> {
    let mut specs: Vec<(String, GroupSpec)> = (1..=30)
        .map(|n| (format!("C({n})"), GroupSpec::Cyclic(n)))
        .collect();
    specs.push((
        "C2xC2".into(),
        product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)),
    ));
    specs.push((
        "C3xC3".into(),
        product(GroupSpec::Cyclic(3), GroupSpec::Cyclic(3)),
    ));
    specs.push((
        "C2xC4".into(),
        product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(4)),
    ));
    for n in 3..=8 {
        specs.push((format!("D({n})"), GroupSpec::Dihedral(n)));
    }
    specs.push(("Q8".into(), q8_spec()));
    specs.push(("A4".into(), a4_spec()));
    specs.push(("S4".into(), s4_spec()));
    specs.push(("Hol(Z8)".into(), holomorph_z8_spec()));
    specs.push(("M(7,3,2)".into(), GroupSpec::Metacyclic { m: 7, n: 3, r: 2 }));
    specs.push(("M(5,4,2)".into(), GroupSpec::Metacyclic { m: 5, n: 4, r: 2 }));
    specs
        .into_iter()
        .map(|(name, spec)| {
            let g = construct(&spec).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, g)
        })
        .collect()
}

fn small_pool() -> Vec<Arc<Group>> {
    vec![
        construct(&GroupSpec::Cyclic(4)).unwrap(),
        construct(&GroupSpec::Cyclic(6)).unwrap(),
        construct(&product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2))).unwrap(),
        construct(&GroupSpec::Metacyclic { m: 3, n: 2, r: 2 }).unwrap(),
        construct(&GroupSpec::Dihedral(4)).unwrap(),
        construct(&product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(4))).unwrap(),
        construct(&q8_spec()).unwrap(),
    ]
}

/// A small random G-set: a union of up to `max_orbits` coset spaces with
/// index at most `max_index`.
fn random_small_gset(
    g: &Arc<Group>,
    rng: &mut ChaCha8Rng,
    max_orbits: usize,
    max_index: usize,
    max_size: usize,
) -> GSet {
    let classes: Vec<Subgroup> = subgroup_classes(g)
        .into_iter()
        .map(|c| c.representative)
        .filter(|h| h.index() <= max_index)
        .collect();
    let mut x = one_point(g);
    let orbits = rng.gen_range(0..max_orbits);
    for _ in 0..orbits {
        let h = &classes[rng.gen_range(0..classes.len())];
        if x.size() + h.index() > max_size {
            break;
        }
        x = disjoint_union(&x, &coset_space(g, h).unwrap()).unwrap();
    }
    x
}

/// Extension-restriction adjunction: |Hom_G(G x_H X, Y)| = |Hom_H(X, Y)| on
/// seeded random small instances, both sides counted exhaustively.
pub fn check_adjunction_instances(count: usize, seed: u64) {
    let pool = small_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < count {
        let g = &pool[rng.gen_range(0..pool.len())];
        let hs: Vec<Subgroup> = subgroup_classes(g)
            .into_iter()
            .map(|c| c.representative)
            .filter(|h| h.index() <= 3)
            .collect();
        let h = hs[rng.gen_range(0..hs.len())].clone();
        let h_group = h.to_group();
        let x = random_small_gset(&h_group, &mut rng, 2, 2, 3);
        if h.index() * x.size() > 9 {
            continue;
        }
        let y = random_small_gset(g, &mut rng, 2, 3, 3);
        let induced = induce(g, &h, &x).unwrap();
        let lhs = hom_count(&induced, &y).unwrap();
        let restricted = restrict(&y, &h).unwrap();
        let rhs = hom_count(&x, &restricted).unwrap();
        assert_eq!(
            lhs, rhs,
            "adjunction count mismatch on |G|={} |H|={} |X|={} |Y|={}",
            g.order(),
            h.order(),
            x.size(),
            y.size()
        );
        done += 1;
    }
}

/// Ring homomorphism into characters: the fixed-point character of the
/// diagonal product is the pointwise product of the characters.
pub fn check_character_product_instances(count: usize, seed: u64) {
    let pool = small_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let g = &pool[rng.gen_range(0..pool.len())];
        let x = random_small_gset(g, &mut rng, 3, 4, 8);
        let y = random_small_gset(g, &mut rng, 3, 4, 8);
        let prod = cartesian(&x, &y).unwrap();
        let (cx, cy, cp) = (perm_character(&x), perm_character(&y), perm_character(&prod));
        for j in 0..g.conjugacy_classes().len() {
            assert_eq!(cp.at(j), cx.at(j) * cy.at(j), "|G|={}", g.order());
        }
    }
}

/// Action axioms re-verified across the constructors.
pub fn check_action_axiom_spread() {
    let pool = small_pool();
    for g in &pool {
        let classes = subgroup_classes(g);
        let mut sets: Vec<GSet> = vec![one_point(g), burnside::gset::regular(g)];
        for c in classes.iter().take(4) {
            sets.push(coset_space(g, &c.representative).unwrap());
        }
        let union = disjoint_union(&sets[0], &sets[1]).unwrap();
        let prod = cartesian(&sets[1], &sets[0]).unwrap();
        sets.push(union);
        sets.push(prod);
        if let Some(c) = classes.iter().find(|c| c.representative.index() == 2) {
            let h = &c.representative;
            sets.push(induce(g, h, &one_point(&h.to_group())).unwrap());
        }
        for x in &sets {
            x.verify_action_axioms().unwrap();
        }
    }
}

/// Lagrange on elements and subgroups for the pool groups.
pub fn check_lagrange() {
    for g in small_pool() {
        for e in 0..g.order() {
            assert_eq!(g.order() % g.element_order(e), 0);
        }
        for h in all_subgroups(&g) {
            assert_eq!(g.order() % h.order(), 0);
        }
    }
}

/// Size and orbit-count balance on every kernel vector of every catalog
/// group: the coefficients and the index-weighted coefficients both sum to
/// zero.
pub fn check_kernel_balance(catalog: &[(String, Arc<Group>)]) {
    use num_bigint::BigInt;
    use num_traits::Zero;
    for (name, g) in catalog {
        let classes = subgroup_classes(g);
        for v in kernel_basis(g) {
            let count: BigInt = v.coeffs().iter().sum();
            assert!(count.is_zero(), "{name}: orbit counts balance");
            let size: BigInt = v
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(classes[i].representative.index() as i64))
                .sum();
            assert!(size.is_zero(), "{name}: total sizes balance");
        }
    }
}
