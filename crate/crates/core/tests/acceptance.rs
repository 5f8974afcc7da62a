//! Acceptance suite: one test per criterion, each printing a PASS line and
//! enforcing its runtime budget. Run with `--nocapture` to see the lines.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use burnside::group::{construct, Group, GroupSpec};
use burnside::gset::{
    coset_space, fixed_points, linearly_equivalent, one_point, orbit_decomposition, repeat,
};
use burnside::kernel::{
    character_matrix, is_unbalanced, kernel_basis, kernel_contains, sunada_pairs, BurnsideElement,
};
use burnside::pairs::{
    elementary_abelian_candidate, find_unbalanced_pair, find_unbalanced_pair_via_kernel,
    orbit_size_multiset, pair_elementary_abelian, pair_metacyclic, UnbalancedPair,
};
use burnside::perm::Perm;
use burnside::spectral::{
    cospectral, hecke_check, random_inverse_closed_multiset, unimodular_equivalent, QForm,
};
use burnside::subgroup::{are_conjugate, subgroup_classes, Subgroup};

fn d6() -> Arc<Group> {
    construct(&GroupSpec::Dihedral(6)).unwrap()
}

fn assert_budget(start: Instant, budget: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

/// Criterion 1: the D6 kernel has rank 4 and spans the same lattice as the
/// four reference basis vectors, re-indexed by generator matching.
#[test]
fn criterion_1_d6_kernel_reproduction() {
    let start = Instant::now();
    let g = d6();
    let basis = kernel_basis(&g);
    assert_eq!(basis.len(), 4, "rank of the D6 kernel");

    // Column order of the reference basis (as produced by standard CAS subgroup enumeration), as words in the rotation σ and
    // the reflection τ: ⟨1⟩, ⟨τ⟩, ⟨σ³⟩, ⟨τσ⟩, ⟨σ²⟩, ⟨τ,τσ³⟩, ⟨τ,τσ²⟩,
    // ⟨σ⟩, ⟨τσ,τσ³⟩, ⟨τ,τσ⟩.
    let sigma = g
        .index_of(&Perm::from_images(vec![1, 2, 3, 4, 5, 0]).unwrap())
        .unwrap();
    let tau = g
        .index_of(&Perm::from_images(vec![0, 5, 4, 3, 2, 1]).unwrap())
        .unwrap();
    let sig = |k: usize| {
        let mut e = 0;
        for _ in 0..k {
            e = g.product(e, sigma);
        }
        e
    };
    let ts = |k: usize| g.product(tau, sig(k));
    let column_generators: Vec<Vec<usize>> = vec![
        vec![],
        vec![tau],
        vec![sig(3)],
        vec![ts(1)],
        vec![sig(2)],
        vec![tau, ts(3)],
        vec![tau, ts(2)],
        vec![sigma],
        vec![ts(1), ts(3)],
        vec![tau, ts(1)],
    ];
    let classes = subgroup_classes(&g);
    let column_to_class: Vec<usize> = column_generators
        .iter()
        .map(|gens| {
            let h = Subgroup::from_generators(&g, gens).unwrap();
            burnside::subgroup::class_index_of(&g, &h).unwrap()
        })
        .collect();
    {
        let mut sorted = column_to_class.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..10).collect::<Vec<_>>(), "columns hit every class");
    }

    let reference: [[i64; 10]; 4] = [
        [0, 1, 0, -1, 0, 0, -1, 0, 1, 0],
        [1, -1, 0, -1, 0, 0, 0, -1, 0, 2],
        [-1, 1, 0, 1, 1, 0, -1, 0, -1, 0],
        [-1, 1, 1, 1, 0, -2, 0, 0, 0, 0],
    ];
    let reindexed: Vec<BurnsideElement> = reference
        .iter()
        .map(|row| {
            let mut coeffs = vec![0i64; classes.len()];
            for (col, &value) in row.iter().enumerate() {
                coeffs[column_to_class[col]] += value;
            }
            BurnsideElement::from_i64(&coeffs)
        })
        .collect();

    for v in &reindexed {
        assert!(
            kernel_contains(&basis, v),
            "reference vector {v:?} lies in the computed lattice"
        );
    }
    for v in &basis {
        assert!(
            kernel_contains(&reindexed, v),
            "computed vector {v:?} lies in the reference lattice"
        );
    }

    // The first reference vector is balanced (both sides have orbit sizes
    // {6, 2}); the other three are unbalanced.
    let expected_unbalanced = [false, true, true, true];
    for (v, expected) in reindexed.iter().zip(expected_unbalanced) {
        assert_eq!(is_unbalanced(&g, v).unwrap(), expected, "{v:?}");
    }
    assert_budget(start, Duration::from_secs(5), "criterion 1");
    println!("acceptance 1 (D6 kernel reproduction): PASS");
}

/// Criterion 2: cyclic groups have trivial kernels.
#[test]
fn criterion_2_cyclic_triviality() {
    let start = Instant::now();
    for n in 1..=30 {
        let g = construct(&GroupSpec::Cyclic(n)).unwrap();
        assert!(kernel_basis(&g).is_empty(), "C({n}) kernel rank 0");
    }
    assert_budget(start, Duration::from_secs(5), "criterion 2");
    println!("acceptance 2 (cyclic triviality): PASS");
}

/// Criterion 3: elementary abelian pairs for p = 2, 3, 5 are linearly
/// equivalent with the stated fix counts and unbalanced; p = 4 fails.
#[test]
fn criterion_3_elementary_abelian_pairs() {
    for p in [2usize, 3, 5] {
        let pair = pair_elementary_abelian(p).unwrap();
        assert!(linearly_equivalent(&pair.x, &pair.y).unwrap());
        let g = pair.x.group();
        assert_eq!(fixed_points(&pair.x, 0).unwrap(), p * (p + 1));
        for e in 1..g.order() {
            assert_eq!(fixed_points(&pair.x, e).unwrap(), p, "p = {p}");
            assert_eq!(fixed_points(&pair.y, e).unwrap(), p, "p = {p}");
        }
        assert_ne!(
            orbit_size_multiset(&pair.x),
            orbit_size_multiset(&pair.y),
            "p = {p} unbalanced"
        );
    }
    let (x, y) = elementary_abelian_candidate(4).unwrap();
    assert!(!linearly_equivalent(&x, &y).unwrap(), "p = 4 analogue fails");
    println!("acceptance 3 (elementary abelian pairs): PASS");
}

/// Criterion 4: metacyclic pairs for (2,3), (2,5), (3,7); the (2,5) pair has
/// the dihedral structure: two copies of G/P and one G/Q against two points
/// and a regular orbit.
#[test]
fn criterion_4_metacyclic_pairs() {
    for (p, q) in [(2usize, 3usize), (2, 5), (3, 7)] {
        let pair = pair_metacyclic(p, q).unwrap();
        assert!(linearly_equivalent(&pair.x, &pair.y).unwrap());
        assert_ne!(
            orbit_size_multiset(&pair.x),
            orbit_size_multiset(&pair.y),
            "(p,q) = ({p},{q})"
        );
    }
    let pair = pair_metacyclic(2, 5).unwrap();
    let g = pair.x.group().clone();
    let classes = subgroup_classes(&g);
    let dx = orbit_decomposition(&pair.x);
    let dy = orbit_decomposition(&pair.y);
    let p_class = classes
        .iter()
        .position(|c| c.representative.order() == 2)
        .unwrap();
    let q_class = classes
        .iter()
        .position(|c| c.representative.order() == 5)
        .unwrap();
    assert_eq!(dx.multiplicity(p_class), 2, "two copies of G/P");
    assert_eq!(dx.multiplicity(q_class), 1, "one copy of G/Q");
    assert_eq!(dy.multiplicity(0), 1, "one regular orbit");
    assert_eq!(dy.multiplicity(classes.len() - 1), 2, "two fixed points");
    println!("acceptance 4 (metacyclic pairs): PASS");
}

/// Criterion 5: over the whole catalog, the structural search returns a
/// verified unbalanced pair exactly for the non-cyclic entries, and the
/// kernel fallback agrees on existence.
#[test]
fn criterion_5_totality_over_catalog() {
    let start = Instant::now();
    for (name, g) in common::catalog() {
        let structural = find_unbalanced_pair(&g).unwrap();
        let through_kernel = find_unbalanced_pair_via_kernel(&g).unwrap();
        assert_eq!(
            structural.is_some(),
            !g.is_cyclic(),
            "{name}: pair exists iff non-cyclic"
        );
        assert_eq!(
            through_kernel.is_some(),
            structural.is_some(),
            "{name}: kernel route agrees on existence"
        );
        if let Some(pair) = structural {
            assert!(linearly_equivalent(&pair.x, &pair.y).unwrap(), "{name}");
            assert_ne!(
                orbit_size_multiset(&pair.x),
                orbit_size_multiset(&pair.y),
                "{name}"
            );
        }
    }
    assert_budget(start, Duration::from_secs(60), "criterion 5");
    println!("acceptance 5 (totality over the catalog): PASS");
}

/// Criterion 6: the order-32 holomorph of Z/8 has a Sunada pair, verified
/// non-conjugate with equal class intersections; no smaller catalog group
/// has one.
#[test]
fn criterion_6_sunada_pair_existence() {
    let g = construct(&common::holomorph_z8_spec()).unwrap();
    assert_eq!(g.order(), 32);
    let pairs = sunada_pairs(&g);
    assert!(!pairs.is_empty(), "the holomorph has a Sunada pair");
    for (a, b) in &pairs {
        assert!(
            are_conjugate(&g, &a.representative, &b.representative)
                .unwrap()
                .is_none(),
            "Sunada pair subgroups are non-conjugate"
        );
        for class in g.conjugacy_classes() {
            let in_a = class
                .members
                .iter()
                .filter(|&&m| a.representative.contains(m))
                .count();
            let in_b = class
                .members
                .iter()
                .filter(|&&m| b.representative.contains(m))
                .count();
            assert_eq!(in_a, in_b, "|g^G ∩ H| = |g^G ∩ K| on every class");
        }
    }
    for (name, g) in common::catalog() {
        if g.order() < 32 {
            assert!(sunada_pairs(&g).is_empty(), "{name} has no Sunada pair");
        }
    }
    println!("acceptance 6 (Sunada pair existence): PASS");
}

fn pairs_from_criteria_3_to_5() -> Vec<(String, UnbalancedPair)> {
    let mut out = Vec::new();
    for p in [2usize, 3, 5] {
        out.push((format!("elementary p={p}"), pair_elementary_abelian(p).unwrap()));
    }
    for (p, q) in [(2usize, 3usize), (2, 5), (3, 7)] {
        out.push((format!("metacyclic ({p},{q})"), pair_metacyclic(p, q).unwrap()));
    }
    for (name, g) in common::catalog() {
        if let Some(pair) = find_unbalanced_pair(&g).unwrap() {
            out.push((name, pair));
        }
    }
    out
}

/// Criterion 7: exact Schreier cospectrality for every produced pair under
/// ten seeded random inverse-closed generating multisets, with a failing
/// negative control.
#[test]
fn criterion_7_schreier_cospectrality() {
    let start = Instant::now();
    for (name, pair) in pairs_from_criteria_3_to_5() {
        let g = pair.x.group();
        for i in 0..10u64 {
            let seed = 1000 + i;
            let k = 2 + (i as usize % 3);
            let multiset = random_inverse_closed_multiset(g, k, seed, true);
            assert!(
                cospectral(&pair.x, &pair.y, &multiset).unwrap(),
                "{name}: seed {seed}"
            );
        }
    }

    // Negative control: G/<σ> against two points in D6 is not linearly
    // equivalent and must fail for at least one multiset.
    let g = d6();
    let sigma = g
        .index_of(&Perm::from_images(vec![1, 2, 3, 4, 5, 0]).unwrap())
        .unwrap();
    let x = coset_space(&g, &Subgroup::from_generators(&g, &[sigma]).unwrap()).unwrap();
    let y = repeat(&one_point(&g), 2).unwrap();
    let mut failures = 0;
    for i in 0..10u64 {
        let multiset = random_inverse_closed_multiset(&g, 2 + (i as usize % 3), 2000 + i, true);
        if !cospectral(&x, &y, &multiset).unwrap() {
            failures += 1;
        }
    }
    assert!(failures > 0, "negative control fails at least once");
    assert_budget(start, Duration::from_secs(60), "criterion 7");
    println!("acceptance 7 (Schreier cospectrality): PASS");
}

/// Criterion 8: flat-torus representation counts agree to 10000 for
/// p = 2, 3, 5, the p = 2 form sets match the classical ones up to
/// unimodular equivalence, and p = 4 yields a concrete witness.
#[test]
fn criterion_8_hecke_torus_forms() {
    let start = Instant::now();
    for p in [2usize, 3, 5] {
        let outcome = hecke_check(p, 10000).unwrap();
        assert!(outcome.equal, "p = {p} counts agree up to 10000");
    }

    let outcome = hecke_check(2, 10000).unwrap();
    let classical_x = [
        QForm::from_integers(4, 0, 1, "4m²+n²").unwrap(),
        QForm::from_integers(2, 0, 2, "2m²+2n²").unwrap(),
        QForm::from_integers(4, 0, 1, "4m²+n²").unwrap(),
    ];
    let classical_y = [
        QForm::from_integers(1, 0, 1, "m²+n²").unwrap(),
        QForm::from_integers(4, 0, 4, "4m²+4n²").unwrap(),
        QForm::from_integers(4, 0, 4, "4m²+4n²").unwrap(),
    ];
    for (ours, classical) in outcome.x_forms.iter().zip(&classical_x) {
        assert!(unimodular_equivalent(ours, classical));
    }
    for (ours, classical) in outcome.y_forms.iter().zip(&classical_y) {
        assert!(unimodular_equivalent(ours, classical));
    }

    let outcome = hecke_check(4, 10000).unwrap();
    assert!(!outcome.equal, "p = 4 analogue disagrees");
    let witness = outcome.witness.unwrap();
    assert_eq!(witness.value, BigRational::from_integer(BigInt::from(4)));
    assert_eq!((witness.x_count, witness.y_count), (6, 4));
    assert_budget(start, Duration::from_secs(30), "criterion 8");
    println!("acceptance 8 (Hecke torus forms): PASS");
}

/// Criterion 9: the property suites (also runnable standalone in
/// `properties.rs`).
#[test]
fn criterion_9_property_suites() {
    common::check_action_axiom_spread();
    common::check_lagrange();
    common::check_adjunction_instances(50, 0xAD);
    common::check_character_product_instances(50, 0xC0DE);
    common::check_kernel_balance(&common::catalog());
    println!("acceptance 9 (property suites): PASS");
}

/// The positive side of criterion 5 exercised through `is_unbalanced` on the
/// kernel route, closing the loop between the two representations.
#[test]
fn kernel_vectors_realize_their_pairs() {
    for (name, g) in common::catalog() {
        if g.is_cyclic() {
            continue;
        }
        if let Some(v) = burnside::pairs::find_unbalanced_kernel_vector(&g) {
            assert!(is_unbalanced(&g, &v).unwrap(), "{name}");
            let pair = burnside::kernel::to_reduced_pair(&g, &v).unwrap();
            assert!(linearly_equivalent(&pair.x, &pair.y).unwrap(), "{name}");
        } else {
            panic!("{name}: non-cyclic catalog group without an unbalanced kernel vector");
        }
    }
}

/// Character matrix sanity across the catalog: the identity column lists the
/// indices and the last row is all ones.
#[test]
fn character_matrix_structure_across_catalog() {
    for (name, g) in common::catalog() {
        let m = character_matrix(&g);
        let classes = subgroup_classes(&g);
        assert_eq!(m.rows(), classes.len(), "{name}");
        assert_eq!(m.cols(), g.conjugacy_classes().len(), "{name}");
        for (i, c) in classes.iter().enumerate() {
            assert_eq!(m.entry(i, 0) as usize, c.representative.index(), "{name}");
        }
        assert!(m.row(m.rows() - 1).iter().all(|&v| v == 1), "{name}");
    }
}
