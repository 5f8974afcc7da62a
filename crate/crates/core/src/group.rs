//! Finite permutation groups, fully enumerated, with conjugacy structure.
//!
//! Groups are built by breadth-first closure from generators and are immutable
//! afterwards; derived structure (conjugacy classes, the subgroup lattice) is
//! computed once on demand and cached.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::subgroup::SubgroupCache;

/// Default bound on group orders accepted by [`construct`].
pub const DEFAULT_ORDER_CAP: usize = 512;

/// Hard bound past which the dense multiplication table becomes unreasonable.
const HARD_ORDER_BOUND: usize = 4096;

/// Description of a group to construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// Z/n, acting on n points (one point for n = 1).
    Cyclic(usize),
    /// Dihedral group of order 2n, acting on the n-gon for n >= 3.
    Dihedral(usize),
    /// Direct product acting on the disjoint union of the factors' points.
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// G_{m,n,r} = <a, b | a^m = b^n = e, a^b = a^r> on m + n points.
    Metacyclic { m: usize, n: usize, r: usize },
    /// Closure of explicit generators of a common degree.
    Generators { degree: usize, gens: Vec<Perm> },
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) => {
                if *n < 1 {
                    return Err(Error::InvalidSpec("n must be at least 1".into()));
                }
            }
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()?;
            }
            GroupSpec::Metacyclic { m, n, r } => {
                if *m < 1 || *n < 1 {
                    return Err(Error::InvalidSpec("m and n must be at least 1".into()));
                }
                let rm = r % m;
                if arith::mod_pow(rm, *n, *m) != 1 % m {
                    return Err(Error::InvalidSpec(format!(
                        "need r^n = 1 (mod m): {r}^{n} != 1 (mod {m})"
                    )));
                }
                let shift = (rm + m - 1) % m; // (r - 1) mod m
                if num_integer::gcd(*m, n * shift) != 1 {
                    return Err(Error::InvalidSpec(format!(
                        "need gcd(m, n(r-1)) = 1 for M({m},{n},{r})"
                    )));
                }
            }
            GroupSpec::Generators { degree, gens } => {
                for g in gens {
                    if g.degree() != *degree {
                        return Err(Error::DegreeMismatch {
                            expected: *degree,
                            got: g.degree(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of points the canonical faithful action uses.
    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(1) => 2,
            GroupSpec::Dihedral(2) => 4,
            GroupSpec::Dihedral(n) => *n,
            GroupSpec::Product(a, b) => a.degree() + b.degree(),
            GroupSpec::Metacyclic { m, n, .. } => m + n,
            GroupSpec::Generators { degree, .. } => *degree,
        }
    }

    /// Expected group order, when the spec determines it.
    pub fn predicted_order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => Some(2 * n),
            GroupSpec::Product(a, b) => Some(a.predicted_order()? * b.predicted_order()?),
            GroupSpec::Metacyclic { m, n, .. } => Some(m * n),
            GroupSpec::Generators { .. } => None,
        }
    }

    /// Canonical generating permutations for this spec, identity generators
    /// omitted. Their order pins the element numbering of the closure.
    pub fn generating_perms(&self) -> Result<Vec<Perm>> {
        self.validate()?;
        let degree = self.degree();
        let mut gens = Vec::new();
        match self {
            GroupSpec::Cyclic(n) => {
                gens.push(cycle_on_block(degree, 0, *n)?);
            }
            GroupSpec::Dihedral(1) => {
                gens.push(Perm::from_images(vec![1, 0])?);
            }
            GroupSpec::Dihedral(2) => {
                gens.push(Perm::from_images(vec![1, 0, 2, 3])?);
                gens.push(Perm::from_images(vec![0, 1, 3, 2])?);
            }
            GroupSpec::Dihedral(n) => {
                gens.push(cycle_on_block(degree, 0, *n)?);
                let refl: Vec<usize> = (0..*n).map(|i| (n - i) % n).collect();
                gens.push(Perm::from_images(refl)?);
            }
            GroupSpec::Product(a, b) => {
                let da = a.degree();
                for g in a.generating_perms()? {
                    gens.push(embed(&g, 0, degree)?);
                }
                for g in b.generating_perms()? {
                    gens.push(embed(&g, da, degree)?);
                }
            }
            GroupSpec::Metacyclic { m, n, r } => {
                let a = cycle_on_block(degree, 0, *m)?;
                // b multiplies the first block by r^{n-1} = r^{-1} (mod m), so
                // that b^{-1} a b = a^r, and cycles the second block.
                let rinv = arith::mod_pow(r % m, n - 1, *m);
                let mut img: Vec<usize> = (0..degree).collect();
                for (i, slot) in img.iter_mut().enumerate().take(*m) {
                    *slot = rinv * i % m;
                }
                for j in 0..*n {
                    img[m + j] = m + (j + 1) % n;
                }
                let b = Perm::from_images(img)?;
                gens.push(a);
                gens.push(b);
            }
            GroupSpec::Generators { gens: gs, .. } => {
                gens.extend(gs.iter().cloned());
            }
        }
        gens.retain(|g| !g.is_identity());
        Ok(gens)
    }

    /// Canonical textual form, matching the CLI group-spec grammar.
    pub fn canonical(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("C({n})"),
            GroupSpec::Dihedral(n) => format!("D({n})"),
            GroupSpec::Product(a, b) => format!("P({},{})", a.canonical(), b.canonical()),
            GroupSpec::Metacyclic { m, n, r } => format!("M({m},{n},{r})"),
            GroupSpec::Generators { degree, gens } => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                format!("gens({degree}; {})", parts.join("; "))
            }
        }
    }
}

fn cycle_on_block(degree: usize, offset: usize, len: usize) -> Result<Perm> {
    let mut img: Vec<usize> = (0..degree).collect();
    for i in 0..len {
        img[offset + i] = offset + (i + 1) % len;
    }
    Perm::from_images(img)
}

fn embed(p: &Perm, offset: usize, degree: usize) -> Result<Perm> {
    let mut img: Vec<usize> = (0..degree).collect();
    for (i, &j) in p.images().iter().enumerate() {
        img[offset + i] = offset + j;
    }
    Perm::from_images(img)
}

/// A conjugacy class of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub size: usize,
}

/// A fully enumerated finite permutation group.
///
/// Element 0 is the identity. Elements are numbered breadth-first from the
/// spec's generators (ties broken by lexicographic image sequence), so indices
/// are reproducible across runs.
pub struct Group {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    product: Vec<u32>,
    inverse: Vec<usize>,
    conj_classes: OnceLock<Vec<ConjClass>>,
    pub(crate) subgroup_cache: OnceLock<SubgroupCache>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, degree {})", self.order(), self.degree)
    }
}

/// Builds the group generated by `spec` with the default order cap.
pub fn construct(spec: &GroupSpec) -> Result<Arc<Group>> {
    construct_with_cap(spec, DEFAULT_ORDER_CAP)
}

/// Builds the group generated by `spec`, failing if the closure exceeds `cap`.
pub fn construct_with_cap(spec: &GroupSpec, cap: usize) -> Result<Arc<Group>> {
    let gens = spec.generating_perms()?;
    let elements = bfs_closure(spec.degree(), &gens, cap)?;
    if let Some(expected) = spec.predicted_order() {
        if elements.len() != expected {
            return Err(Error::VerificationFailed(format!(
                "{} closed to {} elements, expected {expected}",
                spec.canonical(),
                elements.len()
            )));
        }
    }
    Ok(Arc::new(Group::from_ordered_elements(
        spec.degree(),
        elements,
    )?))
}

fn bfs_closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let ident = Perm::identity(degree);
    let mut elements = vec![ident.clone()];
    let mut seen: HashSet<Perm> = elements.iter().cloned().collect();
    let mut frontier = vec![ident];
    while !frontier.is_empty() {
        let mut level: BTreeSet<Perm> = BTreeSet::new();
        for g in &frontier {
            for s in gens {
                let h = g.compose(s);
                if !seen.contains(&h) {
                    level.insert(h);
                }
            }
        }
        frontier = level.into_iter().collect();
        for h in &frontier {
            seen.insert(h.clone());
            elements.push(h.clone());
        }
        if elements.len() > cap {
            return Err(Error::OrderCapExceeded {
                cap,
                reached: elements.len(),
            });
        }
    }
    Ok(elements)
}

impl Group {
    /// Builds a group from an explicit closed set of permutations. The set
    /// must contain the identity and be closed under composition; elements
    /// are numbered identity-first, then lexicographically.
    pub fn from_permutations(degree: usize, perms: Vec<Perm>) -> Result<Group> {
        let mut elements: Vec<Perm> = perms;
        elements.sort();
        elements.dedup();
        let ident = Perm::identity(degree);
        let Some(pos) = elements.iter().position(|p| *p == ident) else {
            return Err(Error::NotASubgroup("identity missing".into()));
        };
        elements.remove(pos);
        elements.insert(0, ident);
        Group::from_ordered_elements(degree, elements)
    }

    fn from_ordered_elements(degree: usize, elements: Vec<Perm>) -> Result<Group> {
        let n = elements.len();
        if n > HARD_ORDER_BOUND {
            return Err(Error::OrderCapExceeded {
                cap: HARD_ORDER_BOUND,
                reached: n,
            });
        }
        for p in &elements {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: p.degree(),
                });
            }
        }
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        if index.len() != n {
            return Err(Error::NotASubgroup("duplicate elements".into()));
        }
        let mut product = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = elements[a].compose(&elements[b]);
                let Some(&i) = index.get(&p) else {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: element {a} * element {b} escapes the set"
                    )));
                };
                product[a * n + b] = i as u32;
            }
        }
        let mut inverse = vec![0usize; n];
        for (a, p) in elements.iter().enumerate() {
            let Some(&i) = index.get(&p.inverse()) else {
                return Err(Error::NotASubgroup("not inverse-closed".into()));
            };
            inverse[a] = i;
        }
        Ok(Group {
            degree,
            elements,
            index,
            product,
            inverse,
            conj_classes: OnceLock::new(),
            subgroup_cache: OnceLock::new(),
            generators: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, g: usize) -> &Perm {
        &self.elements[g]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// x^g = g^{-1} x g.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.product(self.product(self.inverse(g), x), g)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut cur = g;
        while cur != 0 {
            cur = self.product(cur, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.product(a, b) == self.product(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|g| self.element_order(g) == n)
    }

    /// Closure of a set of element indices under products.
    pub fn closure_of(&self, seed: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = seed.iter().copied().collect();
        members.insert(0);
        let mut frontier: Vec<usize> = members.iter().copied().collect();
        while !frontier.is_empty() {
            let mut new = Vec::new();
            let snapshot: Vec<usize> = members.iter().copied().collect();
            for &a in &snapshot {
                for &b in &frontier {
                    for c in [self.product(a, b), self.product(b, a)] {
                        if members.insert(c) {
                            new.push(c);
                        }
                    }
                }
            }
            frontier = new;
        }
        members.into_iter().collect()
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generating_set(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut closed = vec![0usize];
            for g in 1..self.order() {
                if !closed.contains(&g) {
                    gens.push(g);
                    closed = self.closure_of(&gens);
                    if closed.len() == self.order() {
                        break;
                    }
                }
            }
            gens
        })
    }

    /// Conjugacy classes, ordered by minimal member; the identity class first.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        self.conj_classes.get_or_init(|| {
            let n = self.order();
            let mut assigned = vec![false; n];
            let mut classes = Vec::new();
            for g in 0..n {
                if assigned[g] {
                    continue;
                }
                let mut members: BTreeSet<usize> = BTreeSet::new();
                for x in 0..n {
                    members.insert(self.conjugate(g, x));
                }
                let members: Vec<usize> = members.into_iter().collect();
                for &m in &members {
                    assigned[m] = true;
                }
                classes.push(ConjClass {
                    representative: members[0],
                    size: members.len(),
                    members,
                });
            }
            classes.sort_by_key(|c| c.representative);
            classes
        })
    }

    /// Index of the conjugacy class containing `g`.
    pub fn class_of_element(&self, g: usize) -> usize {
        self.conjugacy_classes()
            .iter()
            .position(|c| c.members.binary_search(&g).is_ok())
            .expect("every element lies in a class")
    }

    /// Elements commuting with `g`, ascending.
    pub fn centralizer(&self, g: usize) -> Result<Vec<usize>> {
        if g >= self.order() {
            return Err(Error::IndexOutOfRange {
                index: g,
                order: self.order(),
            });
        }
        Ok((0..self.order())
            .filter(|&h| self.product(h, g) == self.product(g, h))
            .collect())
    }

    /// Elements commuting with everything, ascending.
    pub fn center_members(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&z| (0..n).all(|g| self.product(z, g) == self.product(g, z)))
            .collect()
    }
}
