//! Explicit unbalanced-pair constructions, lifting along subgroups and
//! quotients, and the search that produces an unbalanced pair for every
//! non-cyclic group.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{construct, Group, GroupSpec};
use crate::gset::{
    coset_space, disjoint_union, induce, inflate, linearly_equivalent, one_point, perm_character,
    regular, repeat, GSet,
};
use crate::kernel::{kernel_basis, to_reduced_pair, BurnsideElement};
use crate::subgroup::{all_subgroups, quotient, sylow_subgroup, frattini, Subgroup};

/// How an unbalanced pair was obtained.
#[derive(Clone, Debug)]
pub enum Provenance {
    ElementaryAbelian { p: usize },
    Metacyclic { p: usize, q: usize },
    InducedFrom(Subgroup),
    InflatedFrom(Subgroup),
    KernelSearch,
}

/// Two linearly equivalent G-sets whose orbit-size multisets differ.
#[derive(Clone, Debug)]
pub struct UnbalancedPair {
    pub x: GSet,
    pub y: GSet,
    pub provenance: Provenance,
}

/// Orbit sizes with multiplicity.
pub fn orbit_size_multiset(x: &GSet) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for orbit in x.orbits() {
        *out.entry(orbit.len()).or_insert(0) += 1;
    }
    out
}

impl UnbalancedPair {
    /// Wraps a candidate pair after re-verifying both defining properties by
    /// direct fix-count and orbit computations.
    pub fn verified(x: GSet, y: GSet, provenance: Provenance) -> Result<UnbalancedPair> {
        if !linearly_equivalent(&x, &y)? {
            return Err(Error::VerificationFailed(
                "candidate pair is not linearly equivalent".into(),
            ));
        }
        if orbit_size_multiset(&x) == orbit_size_multiset(&y) {
            return Err(Error::VerificationFailed(
                "candidate pair has equal orbit-size multisets".into(),
            ));
        }
        Ok(UnbalancedPair { x, y, provenance })
    }
}

/// Classification of the two base cases the liftings target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallClassification {
    /// Z/p x Z/p.
    ElementaryAbelianSquare { p: usize },
    /// Nonabelian of order p·q with q = 1 (mod p).
    NonabelianPq { p: usize, q: usize },
}

/// Recognizes whether a group is elementary abelian of rank two or nonabelian
/// of order pq, by order, abelianness, and the element-order profile.
pub fn recognize_elementary_or_pq(g: &Arc<Group>) -> Option<SmallClassification> {
    let n = g.order();
    let primes = arith::prime_factors(n);
    if primes.len() == 1 {
        let p = primes[0];
        if n == p * p && g.is_abelian() && !g.is_cyclic() {
            return Some(SmallClassification::ElementaryAbelianSquare { p });
        }
    }
    if primes.len() == 2 {
        let (p, q) = (primes[0], primes[1]);
        if n == p * q && !g.is_abelian() {
            debug_assert_eq!(q % p, 1, "nonabelian pq forces q = 1 (mod p)");
            return Some(SmallClassification::NonabelianPq { p, q });
        }
    }
    None
}

/// The canonical unbalanced pair over any group isomorphic to Z/p x Z/p:
/// X the union of the p+1 index-p coset spaces, Y a regular orbit plus p
/// points. Verifies the character identity sum S_H = p·S_G + S_1 on the way.
pub fn elementary_abelian_pair_over(g: &Arc<Group>) -> Result<UnbalancedPair> {
    let Some(SmallClassification::ElementaryAbelianSquare { p }) = recognize_elementary_or_pq(g)
    else {
        return Err(Error::VerificationFailed(
            "group is not elementary abelian of rank two".into(),
        ));
    };
    let lines: Vec<Subgroup> = all_subgroups(g)
        .into_iter()
        .filter(|h| h.order() == p)
        .collect();
    if lines.len() != p + 1 {
        return Err(Error::VerificationFailed(format!(
            "expected {} index-p subgroups, found {}",
            p + 1,
            lines.len()
        )));
    }
    let mut x = GSet::empty(Arc::clone(g));
    for h in &lines {
        x = disjoint_union(&x, &coset_space(g, h)?)?;
    }
    let y = disjoint_union(&repeat(&one_point(g), p)?, &regular(g))?;

    // Character identity: the lines cover each nonzero element once, so the
    // sum of their characters is p(p+1) at e and p elsewhere.
    let chi = perm_character(&x);
    for (j, class) in g.conjugacy_classes().iter().enumerate() {
        let expected = if class.representative == 0 {
            (p * (p + 1)) as i64
        } else {
            p as i64
        };
        if chi.at(j) != expected {
            return Err(Error::VerificationFailed(
                "quasiregular character sum deviates from p·S_G + S_1".into(),
            ));
        }
    }
    UnbalancedPair::verified(x, y, Provenance::ElementaryAbelian { p })
}

/// The unbalanced pair over any nonabelian group of order pq: X is p copies
/// of G/P plus G/Q, Y is p points plus a regular orbit.
pub fn pq_pair_over(g: &Arc<Group>) -> Result<UnbalancedPair> {
    let Some(SmallClassification::NonabelianPq { p, q }) = recognize_elementary_or_pq(g) else {
        return Err(Error::VerificationFailed(
            "group is not nonabelian of order pq".into(),
        ));
    };
    let subs = all_subgroups(g);
    let qs: Vec<&Subgroup> = subs.iter().filter(|h| h.order() == q).collect();
    if qs.len() != 1 {
        return Err(Error::VerificationFailed(
            "expected a unique subgroup of order q".into(),
        ));
    }
    let q_sub = qs[0].clone();
    let p_sub = subs
        .iter()
        .find(|h| h.order() == p)
        .expect("Cauchy provides an order-p subgroup")
        .clone();

    // S_P is q at e, 0 on Q \ e, 1 off Q.
    let chi = crate::kernel::quasiregular_character(g, &p_sub)?;
    for (j, class) in g.conjugacy_classes().iter().enumerate() {
        let expected = if class.representative == 0 {
            q as i64
        } else if q_sub.contains(class.representative) {
            0
        } else {
            1
        };
        if chi.at(j) != expected {
            return Err(Error::VerificationFailed(
                "S_P deviates from the piecewise pq form".into(),
            ));
        }
    }

    let x = disjoint_union(&repeat(&coset_space(g, &p_sub)?, p)?, &coset_space(g, &q_sub)?)?;
    let y = disjoint_union(&repeat(&one_point(g), p)?, &regular(g))?;
    UnbalancedPair::verified(x, y, Provenance::Metacyclic { p, q })
}

/// The Z/p x Z/p pair on the standard product group.
pub fn pair_elementary_abelian(p: usize) -> Result<UnbalancedPair> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = product_of_two_cyclics(p)?;
    elementary_abelian_pair_over(&g)
}

/// The analogue candidate for arbitrary n, built from the n+1 "line"
/// subgroups {(x, λx)} and {(0, x)} of Z/n x Z/n. For prime n these are all
/// the index-n subgroups and the pair is unbalanced; for composite n the
/// lines cover the nonzero elements unevenly and linear equivalence fails.
pub fn elementary_abelian_candidate(n: usize) -> Result<(GSet, GSet)> {
    let g = product_of_two_cyclics(n)?;
    let mut x = GSet::empty(Arc::clone(&g));
    for lambda in 0..=n {
        let members: Vec<usize> = (0..n)
            .map(|t| {
                let (a, b) = if lambda == n {
                    (0, t)
                } else {
                    (t, lambda * t % n)
                };
                pair_element(&g, n, a, b)
            })
            .collect();
        let h = Subgroup::new(&g, members)?;
        x = disjoint_union(&x, &coset_space(&g, &h)?)?;
    }
    let y = disjoint_union(&repeat(&one_point(&g), n)?, &regular(&g))?;
    Ok((x, y))
}

fn product_of_two_cyclics(n: usize) -> Result<Arc<Group>> {
    construct(&GroupSpec::Product(
        Box::new(GroupSpec::Cyclic(n)),
        Box::new(GroupSpec::Cyclic(n)),
    ))
}

/// Element index of (a, b) in the product of two copies of Z/n acting on
/// disjoint blocks of n points.
fn pair_element(g: &Arc<Group>, n: usize, a: usize, b: usize) -> usize {
    let mut img: Vec<usize> = (0..2 * n).collect();
    for i in 0..n {
        img[i] = (i + a) % n;
        img[n + i] = n + (i + b) % n;
    }
    let p = crate::perm::Perm::from_images(img).expect("translation is a permutation");
    g.index_of(&p).expect("product contains all translations")
}

/// The pq pair on the metacyclic model Z/q ⋊ Z/p, for primes with
/// q = 1 (mod p).
pub fn pair_metacyclic(p: usize, q: usize) -> Result<UnbalancedPair> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !arith::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q % p != 1 {
        return Err(Error::BadCongruence { p, q });
    }
    let r = (2..q)
        .find(|&r| arith::mod_pow(r, p, q) == 1)
        .expect("q = 1 (mod p) provides an element of order p");
    let g = construct(&GroupSpec::Metacyclic { m: q, n: p, r })?;
    pq_pair_over(&g)
}

/// Induces an unbalanced pair over a subgroup up to the whole group; orbit
/// sizes multiply by [G:H].
pub fn lift_by_induction(
    g: &Arc<Group>,
    h: &Subgroup,
    pair: &UnbalancedPair,
) -> Result<UnbalancedPair> {
    let x = induce(g, h, &pair.x)?;
    let y = induce(g, h, &pair.y)?;
    if x.size() != h.index() * pair.x.size() {
        return Err(Error::VerificationFailed(
            "induced size differs from [G:H] · |X|".into(),
        ));
    }
    UnbalancedPair::verified(x, y, Provenance::InducedFrom(h.clone()))
}

/// Pulls an unbalanced pair over G/N back to G; orbits are unchanged.
pub fn lift_by_inflation(
    g: &Arc<Group>,
    n: &Subgroup,
    pair: &UnbalancedPair,
) -> Result<UnbalancedPair> {
    let x = inflate(g, n, &pair.x)?;
    let y = inflate(g, n, &pair.y)?;
    if orbit_size_multiset(&x) != orbit_size_multiset(&pair.x) {
        return Err(Error::VerificationFailed(
            "inflation must preserve orbit sizes".into(),
        ));
    }
    UnbalancedPair::verified(x, y, Provenance::InflatedFrom(n.clone()))
}

/// Produces a verified unbalanced pair for every non-cyclic group, and `None`
/// exactly for cyclic ones.
///
/// Strategy: a non-cyclic Sylow subgroup P is reduced through P/Φ(P) to a
/// Z/p x Z/p quotient and the elementary abelian pair is lifted back by
/// inflation and induction. When every Sylow subgroup is cyclic the group is
/// metacyclic; it is reduced by quotienting out its center and descending to
/// non-cyclic subgroups until a nonabelian pq group is reached. A kernel
/// search backs both routes as a fallback.
pub fn find_unbalanced_pair(g: &Arc<Group>) -> Result<Option<UnbalancedPair>> {
    if g.is_cyclic() {
        return Ok(None);
    }
    match recognize_elementary_or_pq(g) {
        Some(SmallClassification::ElementaryAbelianSquare { .. }) => {
            return elementary_abelian_pair_over(g).map(Some)
        }
        Some(SmallClassification::NonabelianPq { .. }) => return pq_pair_over(g).map(Some),
        None => {}
    }
    let noncyclic_sylow = arith::prime_factors(g.order()).into_iter().find_map(|p| {
        sylow_subgroup(g, p).filter(|s| !s.is_cyclic())
    });
    let structural = match noncyclic_sylow {
        Some(p_sub) => route_noncyclic_sylow(g, &p_sub),
        None => route_all_sylow_cyclic(g),
    };
    match structural {
        Ok(pair) => Ok(Some(pair)),
        // The kernel search keeps the operation total even if the structural
        // descent misses a case; route disagreement is surfaced as an error.
        Err(err) => match find_unbalanced_pair_via_kernel(g)? {
            Some(pair) => Ok(Some(pair)),
            None => Err(err),
        },
    }
}

/// Route (a): reduce a non-cyclic Sylow subgroup through its Frattini
/// quotient to Z/p x Z/p, then lift by inflation and induction.
fn route_noncyclic_sylow(g: &Arc<Group>, p_sub: &Subgroup) -> Result<UnbalancedPair> {
    let p = arith::prime_factors(p_sub.order())[0];
    let p_group = p_sub.to_group();
    let phi = frattini(&p_group);
    let v = quotient(&p_group, &phi)?;
    // V = P/Φ(P) is elementary abelian of rank >= 2.
    let base = if v.group.order() == p * p {
        let inner = elementary_abelian_pair_over(&v.group)?;
        lift_by_inflation(&p_group, &phi, &inner)?
    } else {
        let w = all_subgroups(&v.group)
            .into_iter()
            .find(|h| h.order() == v.group.order() / (p * p))
            .expect("elementary abelian groups have subgroups of every p-power order");
        let inner = elementary_abelian_pair_over(&quotient(&v.group, &w)?.group)?;
        let over_v = lift_by_inflation(&v.group, &w, &inner)?;
        lift_by_inflation(&p_group, &phi, &over_v)?
    };
    if p_sub.order() == g.order() {
        Ok(base)
    } else {
        lift_by_induction(g, p_sub, &base)
    }
}

/// Route (b): all Sylow subgroups cyclic (a metacyclic group). Quotient by
/// the center first; with trivial center, descend to the canonically first
/// non-cyclic proper subgroup; the base case is a nonabelian pq group.
fn route_all_sylow_cyclic(g: &Arc<Group>) -> Result<UnbalancedPair> {
    if let Some(SmallClassification::NonabelianPq { .. }) = recognize_elementary_or_pq(g) {
        return pq_pair_over(g);
    }
    let center = Subgroup::new(g, g.center_members())?;
    if center.order() > 1 {
        let q = quotient(g, &center)?;
        let inner = route_all_sylow_cyclic(&q.group)?;
        return lift_by_inflation(g, &center, &inner);
    }
    let h = all_subgroups(g)
        .into_iter()
        .find(|h| h.order() > 1 && h.order() < g.order() && !h.is_cyclic())
        .ok_or_else(|| {
            Error::VerificationFailed(
                "no non-cyclic proper subgroup found during metacyclic descent".into(),
            )
        })?;
    let inner = route_all_sylow_cyclic(&h.to_group())?;
    lift_by_induction(g, &h, &inner)
}

/// Route (c): the first kernel basis vector whose positive and negative parts
/// have different orbit-size multisets.
pub fn find_unbalanced_kernel_vector(g: &Arc<Group>) -> Option<BurnsideElement> {
    let classes = crate::subgroup::subgroup_classes(g);
    kernel_basis(g).into_iter().find(|v| {
        let mut pos: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut neg: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (i, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let size = classes[i].representative.index();
            if *c > BigInt::zero() {
                *pos.entry(size).or_insert_with(BigInt::zero) += c;
            } else {
                *neg.entry(size).or_insert_with(BigInt::zero) -= c;
            }
        }
        pos != neg
    })
}

/// Realizes the kernel-search fallback as a reduced pair.
pub fn find_unbalanced_pair_via_kernel(g: &Arc<Group>) -> Result<Option<UnbalancedPair>> {
    let Some(v) = find_unbalanced_kernel_vector(g) else {
        return Ok(None);
    };
    let pair = to_reduced_pair(g, &v)?;
    UnbalancedPair::verified(pair.x, pair.y, Provenance::KernelSearch).map(Some)
}
