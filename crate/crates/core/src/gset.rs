//! Finite G-sets: coset spaces, unions, products, induction, inflation,
//! fixed-point characters, and linear equivalence.
//!
//! Actions are stored as full element-indexed permutation tables; fixed-point
//! counting is then a scan, with no word expansion. Every constructed G-set
//! is checked against the action axioms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;
use crate::subgroup::{class_index_of, quotient, subgroup_classes, Subgroup};

/// A finite set with a total left action of a group: `action[g]` is the
/// permutation of points induced by element `g`.
#[derive(Clone)]
pub struct GSet {
    group: Arc<Group>,
    action: Vec<Perm>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.action == other.action
    }
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet(size {} over {:?})", self.size(), self.group)
    }
}

impl GSet {
    /// Wraps an action table, verifying the action axioms exhaustively.
    pub fn new(group: Arc<Group>, action: Vec<Perm>) -> Result<GSet> {
        if action.len() != group.order() {
            return Err(Error::VerificationFailed(format!(
                "action table has {} rows for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let x = GSet { group, action };
        x.verify_action_axioms()?;
        Ok(x)
    }

    /// Checks action(e) = id and action(g)action(h) = action(gh) for all g, h.
    pub fn verify_action_axioms(&self) -> Result<()> {
        let size = self.size();
        for p in &self.action {
            if p.degree() != size {
                return Err(Error::VerificationFailed(
                    "action table rows have mixed sizes".into(),
                ));
            }
        }
        if !self.action[0].is_identity() {
            return Err(Error::VerificationFailed(
                "identity does not act trivially".into(),
            ));
        }
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.product(g, h);
                for x in 0..size {
                    if self.action[g].image(self.action[h].image(x)) != self.action[gh].image(x) {
                        return Err(Error::VerificationFailed(format!(
                            "action axiom fails at g={g}, h={h}, x={x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.action[0].degree()
    }

    /// g · x.
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g].image(x)
    }

    pub fn action_of(&self, g: usize) -> &Perm {
        &self.action[g]
    }

    /// The empty G-set.
    pub fn empty(group: Arc<Group>) -> GSet {
        let action = vec![Perm::identity(0); group.order()];
        GSet { group, action }
    }

    /// Orbits as sorted point lists, ordered by minimal point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let size = self.size();
        let mut orbit_of = vec![usize::MAX; size];
        let mut orbits = Vec::new();
        for x in 0..size {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = Vec::new();
            for g in 0..self.group.order() {
                let y = self.act(g, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    members.push(y);
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits
    }

    /// Stabilizer of a point, as a subgroup.
    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.act(g, x) == x)
            .collect();
        Subgroup::new(&self.group, members).expect("stabilizers are subgroups")
    }
}

fn check_same_group(x: &GSet, y: &GSet) -> Result<()> {
    if *x.group != *y.group {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// The transitive G-set of left cosets G/H.
pub fn coset_space(g: &Arc<Group>, h: &Subgroup) -> Result<GSet> {
    if **h.parent() != **g {
        return Err(Error::GroupMismatch);
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset_of[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &m in h.members() {
                coset_of[g.product(x, m)] = id;
            }
        }
    }
    let mut action = Vec::with_capacity(order);
    for gi in 0..order {
        let img: Vec<usize> = reps.iter().map(|&r| coset_of[g.product(gi, r)]).collect();
        action.push(Perm::from_images(img)?);
    }
    GSet::new(Arc::clone(g), action)
}

/// The regular G-set G/1.
pub fn regular(g: &Arc<Group>) -> GSet {
    coset_space(g, &Subgroup::trivial(g)).expect("regular action is valid")
}

/// The one-point G-set G/G.
pub fn one_point(g: &Arc<Group>) -> GSet {
    coset_space(g, &Subgroup::full(g)).expect("trivial action is valid")
}

pub fn disjoint_union(x: &GSet, y: &GSet) -> Result<GSet> {
    check_same_group(x, y)?;
    let (nx, ny) = (x.size(), y.size());
    let mut action = Vec::with_capacity(x.group.order());
    for g in 0..x.group.order() {
        let mut img = Vec::with_capacity(nx + ny);
        img.extend((0..nx).map(|p| x.act(g, p)));
        img.extend((0..ny).map(|p| nx + y.act(g, p)));
        action.push(Perm::from_images(img)?);
    }
    GSet::new(Arc::clone(&x.group), action)
}

/// k disjoint copies of x.
pub fn repeat(x: &GSet, k: usize) -> Result<GSet> {
    let mut acc = GSet::empty(Arc::clone(&x.group));
    for _ in 0..k {
        acc = disjoint_union(&acc, x)?;
    }
    Ok(acc)
}

/// The cartesian product with the diagonal action; its orbit set is the
/// tensor product X ×_G Y of the two left G-sets.
pub fn cartesian(x: &GSet, y: &GSet) -> Result<GSet> {
    check_same_group(x, y)?;
    let (nx, ny) = (x.size(), y.size());
    let mut action = Vec::with_capacity(x.group.order());
    for g in 0..x.group.order() {
        let mut img = Vec::with_capacity(nx * ny);
        for p in 0..nx {
            for q in 0..ny {
                img.push(x.act(g, p) * ny + y.act(g, q));
            }
        }
        action.push(Perm::from_images(img)?);
    }
    GSet::new(Arc::clone(&x.group), action)
}

/// Orbit structure of X ×_G Y = (X × Y)/G as a plain set: one entry per
/// diagonal orbit, recorded by stabilizer class.
pub fn tensor(x: &GSet, y: &GSet) -> Result<OrbitType> {
    Ok(orbit_decomposition(&cartesian(x, y)?))
}

/// Extension of scalars G ×_H X: induces an H-set (over `h.to_group()`) up
/// to a G-set of size [G:H] · |X|.
pub fn induce(g: &Arc<Group>, h: &Subgroup, x: &GSet) -> Result<GSet> {
    if **h.parent() != **g {
        return Err(Error::GroupMismatch);
    }
    let h_group = h.to_group();
    if *x.group != *h_group {
        return Err(Error::GroupMismatch);
    }
    let order = g.order();
    // Left transversal: minimal representative per coset gH.
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for v in 0..order {
        if coset_of[v] == usize::MAX {
            let id = reps.len();
            reps.push(v);
            for &m in h.members() {
                coset_of[g.product(v, m)] = id;
            }
        }
    }
    let k = reps.len();
    let nx = x.size();
    let mut action = Vec::with_capacity(order);
    for gi in 0..order {
        let mut img = vec![0usize; k * nx];
        for (i, &t) in reps.iter().enumerate() {
            let w = g.product(gi, t);
            let j = coset_of[w];
            // h = t_j^{-1} g t_i lies in H.
            let h_parent = g.product(g.inverse(reps[j]), w);
            let h_sub = h_group
                .index_of(g.perm(h_parent))
                .expect("coset defect lies in H");
            for p in 0..nx {
                img[i * nx + p] = j * nx + x.act(h_sub, p);
            }
        }
        action.push(Perm::from_images(img)?);
    }
    GSet::new(Arc::clone(g), action)
}

/// Pulls a G/N-set back to G along the projection: same points, g acting as
/// its image in the quotient. The quotient is recomputed from (g, n), so the
/// input must be a G-set over `quotient(g, n)?.group`.
pub fn inflate(g: &Arc<Group>, n: &Subgroup, x: &GSet) -> Result<GSet> {
    let q = quotient(g, n)?;
    if *x.group != *q.group {
        return Err(Error::GroupMismatch);
    }
    let action: Vec<Perm> = (0..g.order())
        .map(|gi| x.action[q.projection[gi]].clone())
        .collect();
    GSet::new(Arc::clone(g), action)
}

/// Restriction of scalars: the same points as an H-set over `h.to_group()`.
pub fn restrict(x: &GSet, h: &Subgroup) -> Result<GSet> {
    if **h.parent() != *x.group {
        return Err(Error::GroupMismatch);
    }
    let h_group = h.to_group();
    let action: Vec<Perm> = (0..h_group.order())
        .map(|i| {
            let parent = x
                .group
                .index_of(h_group.perm(i))
                .expect("subgroup elements lie in the parent");
            x.action[parent].clone()
        })
        .collect();
    GSet::new(h_group, action)
}

/// |{x : g · x = x}|.
pub fn fixed_points(x: &GSet, g: usize) -> Result<usize> {
    if g >= x.group.order() {
        return Err(Error::IndexOutOfRange {
            index: g,
            order: x.group.order(),
        });
    }
    Ok((0..x.size()).filter(|&p| x.act(g, p) == p).count())
}

/// The fixed-point character of a G-set, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCharacter {
    values: Vec<i64>,
}

impl PermCharacter {
    pub fn new(values: Vec<i64>) -> PermCharacter {
        PermCharacter { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, class: usize) -> i64 {
        self.values[class]
    }
}

/// Fixed points at each conjugacy-class representative, verified constant on
/// classes.
pub fn perm_character(x: &GSet) -> PermCharacter {
    let classes = x.group.conjugacy_classes();
    let mut values = Vec::with_capacity(classes.len());
    for c in classes {
        let v = fixed_points(x, c.representative).expect("representative is valid");
        for &m in &c.members {
            assert_eq!(
                fixed_points(x, m).unwrap(),
                v,
                "fixed points must be constant on conjugacy classes"
            );
        }
        values.push(v as i64);
    }
    PermCharacter { values }
}

/// True iff every group element fixes the same number of points in X and Y,
/// i.e. the complex permutation representations are isomorphic.
pub fn linearly_equivalent(x: &GSet, y: &GSet) -> Result<bool> {
    check_same_group(x, y)?;
    Ok(perm_character(x) == perm_character(y))
}

/// Isomorphism type of a G-set: multiplicity of each subgroup class among
/// point-stabilizer classes of its orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitType {
    counts: BTreeMap<usize, usize>,
}

impl OrbitType {
    pub fn from_counts(counts: BTreeMap<usize, usize>) -> OrbitType {
        OrbitType { counts }
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn orbit_count(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn multiplicity(&self, class: usize) -> usize {
        self.counts.get(&class).copied().unwrap_or(0)
    }

    /// Total point count: sum of multiplicity · [G : H_i].
    pub fn total_size(&self, g: &Arc<Group>) -> usize {
        let classes = subgroup_classes(g);
        self.counts
            .iter()
            .map(|(&i, &mult)| mult * classes[i].representative.index())
            .sum()
    }
}

/// Maps each orbit to the conjugacy class of its point stabilizers.
pub fn orbit_decomposition(x: &GSet) -> OrbitType {
    let mut counts = BTreeMap::new();
    for orbit in x.orbits() {
        let stab = x.stabilizer(orbit[0]);
        let class = class_index_of(&x.group, &stab).expect("stabilizer is a subgroup");
        *counts.entry(class).or_insert(0) += 1;
    }
    OrbitType { counts }
}

/// True iff X and Y are isomorphic as G-sets (equal orbit decompositions).
pub fn isomorphic(x: &GSet, y: &GSet) -> Result<bool> {
    check_same_group(x, y)?;
    Ok(orbit_decomposition(x) == orbit_decomposition(y))
}

/// Default bound on |Y|^|X| for the exhaustive homomorphism count.
pub const DEFAULT_HOM_CAP: u128 = 1_000_000;

/// Number of equivariant maps X -> Y, counted exhaustively.
pub fn hom_count(x: &GSet, y: &GSet) -> Result<u64> {
    hom_count_capped(x, y, DEFAULT_HOM_CAP)
}

pub fn hom_count_capped(x: &GSet, y: &GSet, cap: u128) -> Result<u64> {
    check_same_group(x, y)?;
    let (nx, ny) = (x.size(), y.size());
    if nx == 0 {
        return Ok(1);
    }
    if ny == 0 {
        return Ok(0);
    }
    let total = (ny as u128).checked_pow(nx as u32);
    match total {
        Some(t) if t <= cap => {}
        _ => {
            return Err(Error::BruteForceCapExceeded(format!(
                "{ny}^{nx} maps exceed cap {cap}"
            )))
        }
    }
    // Checking equivariance on a generating set suffices.
    let gens: Vec<usize> = x.group.generating_set().to_vec();
    let mut f = vec![0usize; nx];
    let mut count = 0u64;
    'outer: loop {
        let ok = gens.iter().all(|&g| {
            (0..nx).all(|p| f[x.act(g, p)] == y.act(g, f[p]))
        });
        if ok {
            count += 1;
        }
        // Odometer increment.
        for slot in (0..nx).rev() {
            f[slot] += 1;
            if f[slot] < ny {
                continue 'outer;
            }
            f[slot] = 0;
        }
        break;
    }
    Ok(count)
}
