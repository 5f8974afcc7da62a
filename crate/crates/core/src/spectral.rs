//! Exact cospectrality checks on two surrogates: Schreier-graph
//! characteristic polynomials, and representation numbers of the binary
//! quadratic forms attached to flat-torus quotients.
//!
//! No floating point anywhere: characteristic polynomials come from
//! fraction-free determinants with exact interpolation, and form enumeration
//! radii use rational eigenvalue bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::GSet;
use crate::linalg::{bareiss_det, IntMat};

/// Multigraph adjacency: entry (x, y) counts generators moving x to y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    entries: Vec<Vec<i64>>,
}

impl AdjacencyMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, x: usize, y: usize) -> i64 {
        self.entries[x][y]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (x..n).all(|y| self.entries[x][y] == self.entries[y][x]))
    }
}

/// Monic integer polynomial, coefficients from constant to leading term.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "poly[{}]", parts.join(", "))
    }
}

/// Completes a multiset of element indices to an inverse-closed one: the
/// multiplicity of each element is raised to match its inverse's.
pub fn symmetrize_multiset(g: &Arc<Group>, multiset: &[usize]) -> Result<Vec<usize>> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in multiset {
        if s >= g.order() {
            return Err(Error::IndexOutOfRange {
                index: s,
                order: g.order(),
            });
        }
        *counts.entry(s).or_insert(0) += 1;
    }
    let mut balanced: BTreeMap<usize, usize> = BTreeMap::new();
    for (&s, &c) in &counts {
        let inv = g.inverse(s);
        let target = c.max(counts.get(&inv).copied().unwrap_or(0));
        balanced.insert(s, target);
        balanced.insert(inv, target);
    }
    let mut out = Vec::new();
    for (&s, &c) in &balanced {
        out.extend(std::iter::repeat_n(s, c));
    }
    Ok(out)
}

/// The Schreier multigraph of a G-set with respect to an inverse-closed
/// multiset of elements (symmetrized if it is not).
pub fn schreier_adjacency(x: &GSet, multiset: &[usize]) -> Result<AdjacencyMatrix> {
    let s = symmetrize_multiset(x.group(), multiset)?;
    let n = x.size();
    let mut entries = vec![vec![0i64; n]; n];
    for &g in &s {
        for p in 0..n {
            entries[p][x.act(g, p)] += 1;
        }
    }
    let a = AdjacencyMatrix { entries };
    debug_assert!(a.is_symmetric());
    debug_assert!(a.row_sums().iter().all(|&r| r == s.len() as i64));
    Ok(a)
}

/// Characteristic polynomial det(λI − A), exactly: fraction-free determinants
/// at λ = 0..n followed by exact interpolation.
pub fn char_poly(a: &AdjacencyMatrix) -> IntPolynomial {
    let n = a.size();
    if n == 0 {
        return IntPolynomial {
            coeffs: vec![BigInt::one()],
        };
    }
    let values: Vec<BigInt> = (0..=n)
        .map(|k| {
            let m: IntMat = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let diag = if i == j { BigInt::from(k as i64) } else { BigInt::zero() };
                            diag - BigInt::from(a.entry(i, j))
                        })
                        .collect()
                })
                .collect();
            bareiss_det(&m)
        })
        .collect();
    let coeffs = interpolate_integer_polynomial(&values);
    debug_assert_eq!(coeffs.len(), n + 1);
    debug_assert!(coeffs[n].is_one(), "characteristic polynomial is monic");
    IntPolynomial { coeffs }
}

/// Interpolates the unique polynomial with f(k) = values[k] for k = 0..=n,
/// asserting integer coefficients.
fn interpolate_integer_polynomial(values: &[BigInt]) -> Vec<BigInt> {
    let n = values.len() - 1;
    // Full product Π (x - j) as integer coefficients, low to high.
    let mut full = vec![BigInt::one()];
    for j in 0..=n {
        let mut next = vec![BigInt::zero(); full.len() + 1];
        for (d, c) in full.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= BigInt::from(j as i64) * c;
        }
        full = next;
    }
    let mut acc = vec![BigRational::zero(); n + 1];
    for (i, value) in values.iter().enumerate() {
        // Q_i(x) = full(x) / (x - i), by synthetic division.
        let mut q = vec![BigInt::zero(); n + 1];
        let mut carry = BigInt::zero();
        for d in (0..=n).rev() {
            let coeff = &full[d + 1] + &carry;
            q[d] = coeff.clone();
            carry = coeff * BigInt::from(i as i64);
        }
        debug_assert!((&full[0] + &carry).is_zero(), "synthetic division is exact");
        let mut denom = BigInt::one();
        for j in 0..=n {
            if j != i {
                denom *= BigInt::from(i as i64) - BigInt::from(j as i64);
            }
        }
        let scale = BigRational::new(value.clone(), denom);
        for d in 0..=n {
            acc[d] += &scale * BigRational::from_integer(q[d].clone());
        }
    }
    acc.into_iter()
        .map(|c| {
            debug_assert!(c.is_integer(), "interpolant must be integral");
            c.to_integer()
        })
        .collect()
}

/// Exact equality of the Schreier characteristic polynomials of two G-sets
/// with respect to one (symmetrized) multiset.
pub fn cospectral(x: &GSet, y: &GSet, multiset: &[usize]) -> Result<bool> {
    if *x.group() != *y.group() {
        return Err(Error::GroupMismatch);
    }
    let s = symmetrize_multiset(x.group(), multiset)?;
    Ok(char_poly(&schreier_adjacency(x, &s)?) == char_poly(&schreier_adjacency(y, &s)?))
}

/// Seeded random inverse-closed multiset of k non-identity elements,
/// optionally grown until it generates the group.
pub fn random_inverse_closed_multiset(
    g: &Arc<Group>,
    k: usize,
    seed: u64,
    require_generating: bool,
) -> Vec<usize> {
    let n = g.order();
    if n <= 1 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw: Vec<usize> = (0..k.max(1)).map(|_| rng.gen_range(1..n)).collect();
    loop {
        let sym = symmetrize_multiset(g, &raw).expect("sampled indices are in range");
        if !require_generating || g.closure_of(&sym).len() == n {
            return sym;
        }
        raw.push(rng.gen_range(1..n));
    }
}

/// A positive-definite binary quadratic form a·m² + 2b·mn + c·n² with exact
/// rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct QForm {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    provenance: String,
}

impl QForm {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, provenance: String) -> Result<QForm> {
        let det = &a * &c - &b * &b;
        if !a.is_positive() || !det.is_positive() {
            return Err(Error::VerificationFailed(
                "form is not positive definite".into(),
            ));
        }
        Ok(QForm { a, b, c, provenance })
    }

    pub fn from_integers(a: i64, b: i64, c: i64, provenance: &str) -> Result<QForm> {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        QForm::new(r(a), r(b), r(c), provenance.to_string())
    }

    pub fn coefficients(&self) -> (&BigRational, &BigRational, &BigRational) {
        (&self.a, &self.b, &self.c)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn evaluate(&self, m: i64, n: i64) -> BigRational {
        let (m, n) = (
            BigRational::from_integer(BigInt::from(m)),
            BigRational::from_integer(BigInt::from(n)),
        );
        &self.a * &m * &m + BigRational::from_integer(BigInt::from(2)) * &self.b * &m * &n
            + &self.c * &n * &n
    }

    /// GL2(Z)-reduced representative (a, b, c) with 0 <= 2b <= a <= c; equal
    /// triples characterize unimodular equivalence.
    pub fn reduced_triple(&self) -> (BigRational, BigRational, BigRational) {
        let two = BigRational::from_integer(BigInt::from(2));
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        loop {
            // Translate (m, n) -> (m + k n, n) to minimize |b|.
            let k = nearest_integer(&(-&b / &a));
            if !k.is_zero() {
                let kr = BigRational::from_integer(k);
                c = &c + &two * &kr * &b + &kr * &kr * &a;
                b = &b + &kr * &a;
            }
            if c < a {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            break;
        }
        if b.is_negative() {
            b = -b;
        }
        // Boundary normalization keeps 2b <= a after the sign flip.
        if &two * &b > a {
            let kr = BigRational::from_integer(BigInt::one());
            let c2 = &c - &two * &kr * &b + &kr * &kr * &a;
            b = &kr * &a - &b;
            c = c2;
            if c < a {
                std::mem::swap(&mut a, &mut c);
            }
            if b.is_negative() {
                b = -b;
            }
        }
        (a, b, c)
    }
}

impl fmt::Debug for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}m^2 + {}mn + {}n^2", self.a, &self.b * BigRational::from_integer(BigInt::from(2)), self.c)
    }
}

fn nearest_integer(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

/// True iff the forms differ by a GL2(Z) change of variables.
pub fn unimodular_equivalent(f: &QForm, g: &QForm) -> bool {
    f.reduced_triple() == g.reduced_triple()
}

/// The dual-lattice Gram form of the torus quotient by a translation
/// subgroup H <= (Z/p)²: the lattice is Z² + (1/p)·H, and the form's
/// representation numbers enumerate the quotient's Laplace spectrum up to
/// the common 4π² factor.
pub fn torus_quotient_form(p: usize, members: &[(usize, usize)]) -> Result<QForm> {
    if p == 0 {
        return Err(Error::InvalidSpec("p must be positive".into()));
    }
    let set: std::collections::BTreeSet<(usize, usize)> =
        members.iter().map(|&(a, b)| (a % p, b % p)).collect();
    if !set.contains(&(0, 0)) {
        return Err(Error::NotASubgroup("zero vector missing".into()));
    }
    for &(a1, b1) in &set {
        for &(a2, b2) in &set {
            if !set.contains(&((a1 + a2) % p, (b1 + b2) % p)) {
                return Err(Error::NotASubgroup(
                    "translation set is not closed under addition".into(),
                ));
            }
        }
    }
    // Integer basis of p·L = span{(p,0), (0,p)} + H-lifts.
    let mut rows: IntMat = vec![
        vec![BigInt::from(p as i64), BigInt::zero()],
        vec![BigInt::zero(), BigInt::from(p as i64)],
    ];
    for &(a, b) in &set {
        rows.push(vec![BigInt::from(a as i64), BigInt::from(b as i64)]);
    }
    let (basis, rank) = crate::linalg::hnf_rows(&rows);
    debug_assert_eq!(rank, 2);
    // Gram of (1/p)·basis rows, inverted: dual Gram = p² (B Bᵀ)⁻¹.
    let dot = |u: &[BigInt], v: &[BigInt]| -> BigInt { &u[0] * &v[0] + &u[1] * &v[1] };
    let g11 = dot(&basis[0], &basis[0]);
    let g12 = dot(&basis[0], &basis[1]);
    let g22 = dot(&basis[1], &basis[1]);
    let det = &g11 * &g22 - &g12 * &g12;
    let p2 = BigInt::from((p * p) as i64);
    let scale = BigRational::new(p2, det);
    let a = &scale * BigRational::from_integer(g22);
    let b = -(&scale * BigRational::from_integer(g12));
    let c = &scale * BigRational::from_integer(g11);
    QForm::new(a, b, c, format!("p={p} H of order {}", set.len()))
}

/// Representation numbers of a collection of forms: for every attained value
/// t <= bound, how many integer pairs across all forms evaluate to t. Values
/// are keyed after clearing by a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepCounts {
    denom: BigInt,
    counts: BTreeMap<BigInt, u64>,
}

impl RepCounts {
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Count for a cleared value key (t · denominator).
    pub fn counts(&self) -> &BTreeMap<BigInt, u64> {
        &self.counts
    }

    pub fn count_at(&self, cleared: &BigInt) -> u64 {
        self.counts.get(cleared).copied().unwrap_or(0)
    }
}

fn common_denominator(forms: &[QForm]) -> BigInt {
    let mut d = BigInt::one();
    for f in forms {
        let (a, b, c) = f.coefficients();
        let doubled = b * BigRational::from_integer(BigInt::from(2));
        d = d.lcm(a.denom());
        d = d.lcm(doubled.denom());
        d = d.lcm(c.denom());
    }
    d
}

/// Enumerates all integer pairs with q(m, n) <= bound for each form; the
/// radius comes from the rational bound λ_min >= det/trace.
pub fn representation_counts(forms: &[QForm], bound: u64) -> RepCounts {
    representation_counts_with_denominator(forms, bound, &common_denominator(forms))
}

fn representation_counts_with_denominator(
    forms: &[QForm],
    bound: u64,
    denom: &BigInt,
) -> RepCounts {
    let mut counts: BTreeMap<BigInt, u64> = BTreeMap::new();
    let bound_r = BigRational::from_integer(BigInt::from(bound));
    for f in forms {
        let (a, b, c) = f.coefficients();
        let det = a * c - b * b;
        let trace = a + c;
        // m² + n² <= bound / λ_min <= bound·trace/det.
        let ratio = &bound_r * trace / det;
        let ceil = ratio.ceil().to_integer();
        let mut radius = ceil.sqrt();
        while &radius * &radius < ceil {
            radius += 1;
        }
        let radius = radius.to_i64().expect("enumeration radius fits in i64");
        for m in -radius..=radius {
            for n in -radius..=radius {
                let v = f.evaluate(m, n);
                if v <= bound_r {
                    let cleared = v * BigRational::from_integer(denom.clone());
                    debug_assert!(cleared.is_integer());
                    *counts.entry(cleared.to_integer()).or_insert(0) += 1;
                }
            }
        }
    }
    RepCounts {
        denom: denom.clone(),
        counts,
    }
}

/// Outcome of comparing the two sides of the flat-torus family at level p.
#[derive(Clone, Debug)]
pub struct HeckeOutcome {
    pub p: usize,
    pub bound: u64,
    pub x_forms: Vec<QForm>,
    pub y_forms: Vec<QForm>,
    pub equal: bool,
    /// Smallest value where the counts differ, with both counts.
    pub witness: Option<HeckeWitness>,
}

#[derive(Clone, Debug)]
pub struct HeckeWitness {
    pub value: BigRational,
    pub x_count: u64,
    pub y_count: u64,
}

/// The "line" translation subgroups {(x, λx)} for λ = 0..p-1 plus {(0, x)}.
pub fn line_subgroups(p: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for lambda in 0..p {
        out.push((0..p).map(|x| (x, lambda * x % p)).collect());
    }
    out.push((0..p).map(|x| (0, x)).collect());
    out
}

/// Compares representation counts of the p+1 line-quotient tori against the
/// plain torus plus p copies of the full quotient, up to `bound`. Equal for
/// prime p; a witness of disagreement is reported otherwise.
pub fn hecke_check(p: usize, bound: u64) -> Result<HeckeOutcome> {
    if p < 2 {
        return Err(Error::InvalidSpec("p must be at least 2".into()));
    }
    let x_forms: Vec<QForm> = line_subgroups(p)
        .iter()
        .map(|h| torus_quotient_form(p, h))
        .collect::<Result<_>>()?;
    let trivial = torus_quotient_form(p, &[(0, 0)])?;
    let full: Vec<(usize, usize)> = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .collect();
    let full_form = torus_quotient_form(p, &full)?;
    let mut y_forms = vec![trivial];
    y_forms.extend(std::iter::repeat_n(full_form, p));

    let mut all = x_forms.clone();
    all.extend(y_forms.iter().cloned());
    let denom = common_denominator(&all);
    let x_counts = representation_counts_with_denominator(&x_forms, bound, &denom);
    let y_counts = representation_counts_with_denominator(&y_forms, bound, &denom);

    let mut witness = None;
    let keys: std::collections::BTreeSet<&BigInt> = x_counts
        .counts
        .keys()
        .chain(y_counts.counts.keys())
        .collect();
    for key in keys {
        let (xc, yc) = (x_counts.count_at(key), y_counts.count_at(key));
        if xc != yc {
            witness = Some(HeckeWitness {
                value: BigRational::new(key.clone(), denom.clone()),
                x_count: xc,
                y_count: yc,
            });
            break;
        }
    }
    Ok(HeckeOutcome {
        p,
        bound,
        x_forms,
        y_forms,
        equal: witness.is_none(),
        witness,
    })
}
