//! Subgroup enumeration and conjugacy classes of subgroups, the basis of the
//! Burnside ring.
//!
//! Enumeration seeds with every cyclic subgroup and joins pairs (closure of
//! the union) until a fixpoint; exact and adequate below the order cap.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// A subgroup of a fully enumerated parent group, stored by sorted member
/// indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    members: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && *self.parent == *other.parent
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {:?})", self.order(), self.parent)
    }
}

impl Subgroup {
    /// Wraps a member set after checking closure under product and inverse.
    pub fn new(parent: &Arc<Group>, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        for &m in &set {
            if m >= parent.order() {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    order: parent.order(),
                });
            }
        }
        if !set.contains(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inverse(a)) {
                return Err(Error::NotASubgroup("not inverse-closed".into()));
            }
            for &b in &set {
                if !set.contains(&parent.product(a, b)) {
                    return Err(Error::NotASubgroup("not closed under products".into()));
                }
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members: set.into_iter().collect(),
        })
    }

    /// The subgroup generated by the given element indices.
    pub fn from_generators(parent: &Arc<Group>, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            if g >= parent.order() {
                return Err(Error::IndexOutOfRange {
                    index: g,
                    order: parent.order(),
                });
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members: parent.closure_of(gens),
        })
    }

    pub fn trivial(parent: &Arc<Group>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(parent),
            members: vec![0],
        }
    }

    pub fn full(parent: &Arc<Group>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(parent),
            members: (0..parent.order()).collect(),
        }
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// [G : H].
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_cyclic(&self) -> bool {
        self.members
            .iter()
            .any(|&g| self.parent.element_order(g) == self.order())
    }

    /// H^g = g^{-1} H g.
    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let members: BTreeSet<usize> = self
            .members
            .iter()
            .map(|&h| self.parent.conjugate(h, g))
            .collect();
        Subgroup {
            parent: Arc::clone(&self.parent),
            members: members.into_iter().collect(),
        }
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order()).all(|g| self.conjugate_by(g).members == self.members)
    }

    /// N_G(H), ascending.
    pub fn normalizer(&self) -> Vec<usize> {
        (0..self.parent.order())
            .filter(|&g| self.conjugate_by(g).members == self.members)
            .collect()
    }

    /// A small generating set of member indices, chosen greedily.
    pub fn generator_indices(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut closed = vec![0usize];
        for &g in &self.members {
            if !closed.contains(&g) {
                gens.push(g);
                closed = self.parent.closure_of(&gens);
                if closed.len() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Materializes the subgroup as a group in its own right (same degree).
    /// When the subgroup is the whole parent, the parent is returned as is.
    pub fn to_group(&self) -> Arc<Group> {
        if self.order() == self.parent.order() {
            return Arc::clone(&self.parent);
        }
        let perms: Vec<Perm> = self
            .members
            .iter()
            .map(|&m| self.parent.perm(m).clone())
            .collect();
        Arc::new(
            Group::from_permutations(self.parent.degree(), perms)
                .expect("subgroup members form a closed set"),
        )
    }
}

/// A conjugacy class of subgroups; one basis vector of the Burnside ring.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Lexicographically minimal conjugate of the class.
    pub representative: Subgroup,
    /// Number of conjugates, equal to [G : N_G(H)].
    pub class_size: usize,
    /// Position in the canonical class ordering.
    pub index_in_basis: usize,
}

pub(crate) struct SubgroupCache {
    /// All subgroups, sorted by (order, members lexicographic).
    pub subgroups: Vec<Vec<usize>>,
    /// Per class: (minimal-conjugate members, class size), sorted canonically.
    pub classes: Vec<(Vec<usize>, usize)>,
    /// Member set of any subgroup -> its class index.
    pub class_of: HashMap<Vec<usize>, usize>,
}

fn ensure_cache(g: &Group) -> &SubgroupCache {
    g.subgroup_cache.get_or_init(|| {
        let n = g.order();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..n {
            all.insert(g.closure_of(&[x]));
        }
        let mut work: Vec<Vec<usize>> = all.iter().cloned().collect();
        while !work.is_empty() {
            let mut new = Vec::new();
            let snapshot: Vec<Vec<usize>> = all.iter().cloned().collect();
            for a in &work {
                for b in &snapshot {
                    let mut seed: Vec<usize> = a.clone();
                    seed.extend_from_slice(b);
                    let j = g.closure_of(&seed);
                    if all.insert(j.clone()) {
                        new.push(j);
                    }
                }
            }
            work = new;
        }
        let mut subgroups: Vec<Vec<usize>> = all.into_iter().collect();
        subgroups.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));

        let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut classes: Vec<(Vec<usize>, usize)> = Vec::new();
        for h in &subgroups {
            if class_of.contains_key(h) {
                continue;
            }
            let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
            for x in 0..n {
                orbit.insert(conjugate_members(g, h, x));
            }
            let rep = orbit.iter().next().cloned().expect("orbit is nonempty");
            let idx = classes.len();
            for k in &orbit {
                class_of.insert(k.clone(), idx);
            }
            classes.push((rep, orbit.len()));
        }
        // Canonical class order: (order of representative, lexicographic
        // minimal conjugate). Trivial first, G last.
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&i, &j| {
            (classes[i].0.len(), &classes[i].0).cmp(&(classes[j].0.len(), &classes[j].0))
        });
        let remap: HashMap<usize, usize> = order
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let classes: Vec<(Vec<usize>, usize)> = order.iter().map(|&i| classes[i].clone()).collect();
        for v in class_of.values_mut() {
            *v = remap[v];
        }
        SubgroupCache {
            subgroups,
            classes,
            class_of,
        }
    })
}

fn conjugate_members(g: &Group, members: &[usize], x: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = members.iter().map(|&h| g.conjugate(h, x)).collect();
    set.into_iter().collect()
}

/// Every subgroup of `g`, each exactly once, sorted by (order, members).
pub fn all_subgroups(g: &Arc<Group>) -> Vec<Subgroup> {
    ensure_cache(g)
        .subgroups
        .iter()
        .map(|members| Subgroup {
            parent: Arc::clone(g),
            members: members.clone(),
        })
        .collect()
}

/// Conjugacy classes of subgroups in canonical order.
pub fn subgroup_classes(g: &Arc<Group>) -> Vec<SubgroupClass> {
    ensure_cache(g)
        .classes
        .iter()
        .enumerate()
        .map(|(i, (rep, size))| SubgroupClass {
            representative: Subgroup {
                parent: Arc::clone(g),
                members: rep.clone(),
            },
            class_size: *size,
            index_in_basis: i,
        })
        .collect()
}

/// Canonical class index of a subgroup.
pub fn class_index_of(g: &Arc<Group>, h: &Subgroup) -> Result<usize> {
    if **h.parent() != **g {
        return Err(Error::GroupMismatch);
    }
    ensure_cache(g)
        .class_of
        .get(h.members())
        .copied()
        .ok_or_else(|| Error::NotASubgroup("unknown member set".into()))
}

/// Searches for x with H^x = K; returns the minimal such element index.
pub fn are_conjugate(g: &Arc<Group>, h: &Subgroup, k: &Subgroup) -> Result<Option<usize>> {
    if **h.parent() != **g || **k.parent() != **g {
        return Err(Error::GroupMismatch);
    }
    if h.order() != k.order() {
        return Ok(None);
    }
    Ok((0..g.order()).find(|&x| conjugate_members(g, h.members(), x) == k.members()))
}

/// A Sylow p-subgroup (order = the full p-part of |G|), the canonically first
/// subgroup of that order.
pub fn sylow_subgroup(g: &Arc<Group>, p: usize) -> Option<Subgroup> {
    let target = arith::p_part(g.order(), p);
    if target == 1 {
        return None;
    }
    all_subgroups(g).into_iter().find(|h| h.order() == target)
}

/// The Frattini subgroup: intersection of all maximal subgroups (G itself for
/// the trivial group).
pub fn frattini(g: &Arc<Group>) -> Subgroup {
    let subs = all_subgroups(g);
    let proper: Vec<&Subgroup> = subs.iter().filter(|h| h.order() < g.order()).collect();
    let maximal: Vec<&&Subgroup> = proper
        .iter()
        .filter(|h| {
            !proper.iter().any(|k| {
                k.order() > h.order() && h.members().iter().all(|m| k.contains(*m))
            })
        })
        .collect();
    if maximal.is_empty() {
        return Subgroup::full(g);
    }
    let mut inter: BTreeSet<usize> = maximal[0].members().iter().copied().collect();
    for h in &maximal[1..] {
        inter.retain(|m| h.contains(*m));
    }
    Subgroup {
        parent: Arc::clone(g),
        members: inter.into_iter().collect(),
    }
}

/// A quotient group realized by the left-multiplication action on cosets of a
/// normal subgroup, with the projection map from parent element indices.
pub struct Quotient {
    pub group: Arc<Group>,
    /// projection[g] = index in `group` of the image of parent element g.
    pub projection: Vec<usize>,
    pub kernel: Subgroup,
}

/// Builds G/N as a permutation group on the cosets of N.
pub fn quotient(g: &Arc<Group>, n: &Subgroup) -> Result<Quotient> {
    if **n.parent() != **g {
        return Err(Error::GroupMismatch);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset_of[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &h in n.members() {
                coset_of[g.product(x, h)] = id;
            }
        }
    }
    let k = reps.len();
    let mut perms = Vec::with_capacity(order);
    for x in 0..order {
        let img: Vec<usize> = reps.iter().map(|&r| coset_of[g.product(x, r)]).collect();
        perms.push(Perm::from_images(img)?);
    }
    let qgroup = Arc::new(Group::from_permutations(k, perms.clone())?);
    let projection: Vec<usize> = perms
        .iter()
        .map(|p| qgroup.index_of(p).expect("image lies in the quotient"))
        .collect();
    Ok(Quotient {
        group: qgroup,
        projection,
        kernel: n.clone(),
    })
}
