//! Exact integer linear algebra: Hermite normal form, integer left kernels,
//! LLL reduction, and fraction-free (Bareiss) elimination.
//!
//! Everything runs over arbitrary-precision integers, so intermediate growth
//! is handled exactly and silent wraparound cannot occur.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;
pub type IntMat = Vec<IntVec>;

pub fn from_i64_matrix(rows: &[Vec<i64>]) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn row_sub_scaled(target: &mut IntVec, source: &IntVec, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form with unimodular transform: returns (H, U)
/// with U * M = H, pivots positive, entries above each pivot reduced into
/// [0, pivot), zero rows at the bottom.
pub fn hnf_with_transform(m: &IntMat) -> (IntMat, IntMat) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut u: IntMat = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        while let Some(piv) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].abs())
        {
            a.swap(r, piv);
            u.swap(r, piv);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (ai, ar) = split_two(&mut a, i, r);
                row_sub_scaled(ai, ar, &q);
                let (ui, ur) = split_two(&mut u, i, r);
                row_sub_scaled(ui, ur, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
                for x in u[r].iter_mut() {
                    *x = -&*x;
                }
            }
            // Reduce entries above the pivot.
            for i in 0..r {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let (ai, ar) = split_two(&mut a, i, r);
                    row_sub_scaled(ai, ar, &q);
                    let (ui, ur) = split_two(&mut u, i, r);
                    row_sub_scaled(ui, ur, &q);
                }
            }
            r += 1;
        }
    }
    (a, u)
}

fn split_two<T>(rows: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &Vec<T>) {
    debug_assert_ne!(i, j);
    if i < j {
        let (lo, hi) = rows.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

/// Nonzero rows of the Hermite normal form (a canonical lattice basis for the
/// row span), plus the rank.
pub fn hnf_rows(m: &IntMat) -> (IntMat, usize) {
    let (h, _) = hnf_with_transform(m);
    let rows: IntMat = h
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let rank = rows.len();
    (rows, rank)
}

/// A lattice basis of the left kernel {v : v M = 0}. Kernels of integer
/// matrices are saturated, so this is a basis of all integer solutions.
pub fn left_kernel(m: &IntMat) -> IntMat {
    let (h, u) = hnf_with_transform(m);
    h.iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur)
        .collect()
}

/// Membership of `v` in the lattice spanned by `basis` rows.
pub fn lattice_contains(basis: &IntMat, v: &IntVec) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let (h, _) = hnf_rows(basis);
    let mut w = v.clone();
    for row in &h {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if w[p].is_zero() {
            continue;
        }
        let (q, rem) = w[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        row_sub_scaled(&mut w, row, &q);
    }
    w.iter().all(|x| x.is_zero())
}

/// Two lattices are equal iff each basis lies in the other's span.
pub fn same_lattice(a: &IntMat, b: &IntMat) -> bool {
    a.iter().all(|v| lattice_contains(b, v)) && b.iter().all(|v| lattice_contains(a, v))
}

fn gram_schmidt(basis: &IntMat) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let k = basis.len();
    let rat = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut norms: Vec<BigRational> = Vec::with_capacity(k);
    for i in 0..k {
        let mut v: Vec<BigRational> = basis[i].iter().map(rat).collect();
        for j in 0..i {
            let dot: BigRational = basis[i]
                .iter()
                .zip(&star[j])
                .map(|(a, b)| rat(a) * b)
                .sum();
            mu[i][j] = dot / norms[j].clone();
            for (t, s) in v.iter_mut().zip(&star[j]) {
                *t -= &mu[i][j] * s;
            }
        }
        let n: BigRational = v.iter().map(|x| x * x).sum();
        norms.push(n);
        star.push(v);
    }
    (mu, norms)
}

fn round_rational(x: &BigRational) -> BigInt {
    // Nearest integer, floor(x + 1/2): ties round up.
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

/// LLL reduction with delta = 3/4 over exact rationals. The input rows must
/// be linearly independent; the output spans the same lattice.
pub fn lll_reduce(mut basis: IntMat) -> IntMat {
    if basis.len() <= 1 {
        return basis;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < basis.len() {
        let (mut mu, norms) = gram_schmidt(&basis);
        debug_assert!(norms.iter().all(|n| !n.is_zero()), "rows must be independent");
        // Size-reduce b_k; the Gram-Schmidt vectors (and norms) are unchanged.
        for j in (0..k).rev() {
            let q = round_rational(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let (bk, bj) = split_two(&mut basis, k, j);
            row_sub_scaled(bk, bj, &q);
            let qr = BigRational::from_integer(q);
            let mj = mu[j].clone();
            for (jp, m) in mj.iter().enumerate().take(j) {
                let sub = &qr * m;
                mu[k][jp] -= sub;
            }
            mu[k][j] -= qr;
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = k.max(2) - 1;
        }
    }
    basis
}

/// Rank over the rationals by fraction-free (Bareiss) elimination; an
/// independent route from the HNF-based kernel machinery.
pub fn bareiss_rank(m: &IntMat) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn bareiss_det(m: &IntMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for c in 0..n - 1 {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if piv != c {
            a.swap(c, piv);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = &a[c][c] * &a[i][j] - &a[i][c] * &a[c][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_of_simple_lattice() {
        let m = mat(&[&[2, 0], &[0, 2], &[1, 1]]);
        let (h, rank) = hnf_rows(&m);
        assert_eq!(rank, 2);
        assert_eq!(h, mat(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn transform_reproduces_hnf() {
        let m = mat(&[&[4, 6, 2], &[6, 9, 3], &[2, 4, 2]]);
        let (h, u) = hnf_with_transform(&m);
        for (i, hrow) in h.iter().enumerate() {
            for j in 0..3 {
                let got: BigInt = (0..3).map(|k| &u[i][k] * &m[k][j]).sum();
                assert_eq!(got, hrow[j]);
            }
        }
    }

    #[test]
    fn left_kernel_of_rank_deficient_matrix() {
        // Row 1 = row 0 * 3/2, so (3, -2) spans the kernel.
        let m = mat(&[&[2, 4], &[3, 6]]);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(lattice_contains(&k, &vec![BigInt::from(3), BigInt::from(-2)]));
        assert!(!lattice_contains(&k, &vec![BigInt::from(1), BigInt::from(-1)]));
        for v in &k {
            let prod0: BigInt = v.iter().zip(&m).map(|(vi, row)| vi * &row[0]).sum();
            let prod1: BigInt = v.iter().zip(&m).map(|(vi, row)| vi * &row[1]).sum();
            assert!(prod0.is_zero() && prod1.is_zero());
        }
    }

    #[test]
    fn kernel_of_full_rank_matrix_is_empty() {
        let m = mat(&[&[1, 0], &[0, 1], &[0, 0]]);
        // The zero row contributes a kernel vector e_2.
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        let m2 = mat(&[&[1, 0], &[5, 3]]);
        assert!(left_kernel(&m2).is_empty());
    }

    #[test]
    fn lll_shortens_a_skewed_basis() {
        let b = mat(&[&[1, 0, 0], &[99, 1, 0], &[250, 50, 1]]);
        let red = lll_reduce(b.clone());
        assert!(same_lattice(&b, &red));
        let max_abs = red
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x.abs())
            .max()
            .unwrap();
        assert!(max_abs <= BigInt::from(5), "reduced basis stays small");
    }

    #[test]
    fn bareiss_agrees_with_known_values() {
        assert_eq!(bareiss_det(&mat(&[&[0, 2], &[2, 0]])), BigInt::from(-4));
        assert_eq!(
            bareiss_det(&mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])),
            BigInt::from(6)
        );
        assert_eq!(
            bareiss_det(&mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])),
            BigInt::zero()
        );
        assert_eq!(bareiss_rank(&mat(&[&[2, 4], &[3, 6]])), 1);
        assert_eq!(bareiss_rank(&mat(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(bareiss_det(&mat(&[])), BigInt::one());
    }

    #[test]
    fn rounding_is_nearest_integer() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(round_rational(&r(7, 2)), BigInt::from(4)); // ties round up
        assert_eq!(round_rational(&r(5, 3)), BigInt::from(2));
        assert_eq!(round_rational(&r(-5, 3)), BigInt::from(-2));
        assert_eq!(round_rational(&r(-7, 2)), BigInt::from(-3));
    }
}
