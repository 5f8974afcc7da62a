//! The Burnside ring over the subgroup-class basis, the quasiregular
//! character matrix, and its exact integer kernel: the lattice of reduced
//! linearly equivalent pairs.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gset::{coset_space, disjoint_union, perm_character, GSet, PermCharacter};
use crate::group::Group;
use crate::linalg;
use crate::subgroup::{subgroup_classes, Subgroup, SubgroupClass};

/// An element of the Burnside ring, written over the canonical subgroup-class
/// basis: coefficient i multiplies G/H_i.
#[derive(Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    coeffs: Vec<BigInt>,
}

impl BurnsideElement {
    pub fn new(coeffs: Vec<BigInt>) -> BurnsideElement {
        BurnsideElement { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> BurnsideElement {
        BurnsideElement {
            coeffs: coeffs.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn zero(len: usize) -> BurnsideElement {
        BurnsideElement {
            coeffs: vec![BigInt::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl std::ops::Add for &BurnsideElement {
    type Output = BurnsideElement;
    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        BurnsideElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &BurnsideElement {
    type Output = BurnsideElement;
    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        BurnsideElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &BurnsideElement {
    type Output = BurnsideElement;
    fn neg(self) -> BurnsideElement {
        BurnsideElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Integer matrix of quasiregular character values: rows indexed by subgroup
/// classes, columns by conjugacy classes of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMatrix {
    entries: Vec<Vec<i64>>,
}

impl CharacterMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// The quasiregular character S_H: fixed points of G/H on each conjugacy
/// class, computed by the closed formula |g^G ∩ H| |C_G(g)| / |H| and
/// cross-checked against direct fixed-point counting.
pub fn quasiregular_character(g: &Arc<Group>, h: &Subgroup) -> Result<PermCharacter> {
    if **h.parent() != **g {
        return Err(Error::GroupMismatch);
    }
    let mut values = Vec::new();
    for class in g.conjugacy_classes() {
        let inter = class.members.iter().filter(|&&m| h.contains(m)).count();
        let centralizer_order = g.order() / class.size;
        let num = inter * centralizer_order;
        if !num.is_multiple_of(h.order()) {
            return Err(Error::VerificationFailed(
                "quasiregular character formula did not divide exactly".into(),
            ));
        }
        values.push((num / h.order()) as i64);
    }
    let character = PermCharacter::new(values);
    let direct = perm_character(&coset_space(g, h)?);
    if character != direct {
        return Err(Error::VerificationFailed(
            "closed-formula character disagrees with direct fixed-point counts".into(),
        ));
    }
    Ok(character)
}

/// The full character matrix over the canonical class orderings.
pub fn character_matrix(g: &Arc<Group>) -> CharacterMatrix {
    let classes = subgroup_classes(g);
    let entries: Vec<Vec<i64>> = classes
        .iter()
        .map(|c| {
            quasiregular_character(g, &c.representative)
                .expect("class representatives are subgroups")
                .values()
                .to_vec()
        })
        .collect();
    let m = CharacterMatrix { entries };
    // Structural invariants: fixed-point counts are nonnegative, the G row is
    // all ones, and the identity column carries the indices [G:H_i].
    debug_assert!(m.entries.iter().flatten().all(|&v| v >= 0));
    debug_assert!(m.entries[m.rows() - 1].iter().all(|&v| v == 1));
    for (i, c) in classes.iter().enumerate() {
        debug_assert_eq!(m.entry(i, 0) as usize, c.representative.index());
    }
    m
}

/// A lattice basis of ℒ(G) = {v : v · CharacterMatrix = 0}: LLL-reduced with
/// delta = 3/4, each vector's first nonzero coefficient positive, vectors
/// sorted lexicographically.
pub fn kernel_basis(g: &Arc<Group>) -> Vec<BurnsideElement> {
    let m = character_matrix(g);
    let int_matrix = linalg::from_i64_matrix(m.entries());
    let raw = linalg::left_kernel(&int_matrix);
    let mut reduced = linalg::lll_reduce(raw);
    for v in reduced.iter_mut() {
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    reduced.sort();
    reduced.into_iter().map(BurnsideElement::new).collect()
}

/// Membership of a Burnside element in the kernel lattice spanned by `basis`.
pub fn kernel_contains(basis: &[BurnsideElement], v: &BurnsideElement) -> bool {
    let mat: linalg::IntMat = basis.iter().map(|b| b.coeffs().to_vec()).collect();
    linalg::lattice_contains(&mat, &v.coeffs().to_vec())
}

/// A pair of G-sets with no isomorphic orbits in common, the concrete form of
/// a Burnside element split into positive and negative parts.
#[derive(Clone, Debug)]
pub struct ReducedPair {
    pub x: GSet,
    pub y: GSet,
}

/// Splits v into the pair (X, Y) with X from positive coefficients and Y from
/// negative ones. The supports are disjoint by construction, so the pair is
/// reduced; it is linearly equivalent exactly when v lies in ℒ(G).
pub fn to_reduced_pair(g: &Arc<Group>, v: &BurnsideElement) -> Result<ReducedPair> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let classes = subgroup_classes(g);
    if v.len() != classes.len() {
        return Err(Error::VerificationFailed(format!(
            "coefficient vector has length {}, expected {}",
            v.len(),
            classes.len()
        )));
    }
    let mut x = GSet::empty(Arc::clone(g));
    let mut y = GSet::empty(Arc::clone(g));
    for (i, c) in v.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mult = c.abs().to_usize().ok_or_else(|| {
            Error::VerificationFailed("coefficient too large to realize".into())
        })?;
        let orbit = coset_space(g, &classes[i].representative)?;
        let side = if c.is_positive() { &mut x } else { &mut y };
        for _ in 0..mult {
            *side = disjoint_union(side, &orbit)?;
        }
    }
    Ok(ReducedPair { x, y })
}

/// Multiset of orbit sizes contributed by one sign of a coefficient vector.
fn side_sizes(classes: &[SubgroupClass], v: &BurnsideElement, positive: bool) -> BTreeMap<usize, BigInt> {
    let mut sizes: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (i, c) in v.coeffs().iter().enumerate() {
        let mult = if positive {
            c.max(&BigInt::zero()).clone()
        } else {
            (-c).max(BigInt::zero())
        };
        if !mult.is_zero() {
            let size = classes[i].representative.index();
            *sizes.entry(size).or_insert_with(BigInt::zero) += mult;
        }
    }
    sizes
}

/// True iff the pair encoded by a kernel vector differs in its orbit-size
/// multisets. Errors when v is not actually in ℒ(G).
pub fn is_unbalanced(g: &Arc<Group>, v: &BurnsideElement) -> Result<bool> {
    let basis = kernel_basis(g);
    if !kernel_contains(&basis, v) {
        return Err(Error::NotInKernel);
    }
    let classes = subgroup_classes(g);
    Ok(side_sizes(&classes, v, true) != side_sizes(&classes, v, false))
}

/// All unordered pairs of distinct subgroup classes with equal quasiregular
/// characters: the transitive linear equivalences.
pub fn sunada_pairs(g: &Arc<Group>) -> Vec<(SubgroupClass, SubgroupClass)> {
    let m = character_matrix(g);
    let classes = subgroup_classes(g);
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if m.row(i) == m.row(j) {
                out.push((classes[i].clone(), classes[j].clone()));
            }
        }
    }
    out
}
