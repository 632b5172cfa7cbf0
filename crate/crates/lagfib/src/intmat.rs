//! Exact integer/rational linear algebra for symplectic monodromy matrices:
//! quasi-unipotency, semisimple order, and the rank gates that pick the
//! classification branch.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! eigenvalue-order and rank decisions are discrete, so no tolerances appear
//! anywhere. The convention throughout is the symplectic form
//! `J = [[0, I_n], [-I_n, 0]]`, and the matrix stored is the *cohomology*
//! monodromy (the homology monodromy is its inverse transpose).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntmatError {
    #[error("matrix is {rows}x{cols}, expected square of even dimension")]
    BadShape { rows: usize, cols: usize },
    #[error("matrix does not preserve the standard symplectic form")]
    NotSymplectic,
    #[error("matrix is not quasi-unipotent (characteristic polynomial has a non-cyclotomic factor)")]
    NotQuasiUnipotent,
    #[error("rank of U^m - I is {defect}, but a fibration germ allows at most 1")]
    RankGateViolation { defect: usize },
}

/// Dense matrix of arbitrary-precision integers, row major.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix<T: Into<BigInt> + Clone>(rows: &[&[T]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|x| x.clone().into()).collect())
        .collect()
}

pub fn identity(size: usize) -> IntMatrix {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![BigInt::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * &b[k][j];
            }
        }
    }
    out
}

pub fn mat_pow(a: &IntMatrix, mut e: u64) -> IntMatrix {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

pub fn mat_sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// The standard symplectic form `[[0, I_n], [-I_n, 0]]`.
pub fn standard_form(n: usize) -> IntMatrix {
    let mut j = vec![vec![BigInt::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        j[i][n + i] = BigInt::one();
        j[n + i][i] = -BigInt::one();
    }
    j
}

pub fn is_symplectic(u: &IntMatrix, n: usize) -> bool {
    let j = standard_form(n);
    mat_mul(&mat_mul(&transpose(u), &j), u) == j
}

/// Rank over Q of an integer matrix, by exact Gaussian elimination.
pub fn rank(a: &IntMatrix) -> usize {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    rational_rank(&mut m)
}

fn rational_rank(m: &mut [Vec<BigRational>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&i| !m[i][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for j in col..cols {
            m[rank][j] = &m[rank][j] / &inv;
        }
        for i in 0..rows {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    let sub = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Dimension over Q of `ker(A - I)` for a square rational matrix given as
/// integer numerators with a common denominator of 1 (integer input).
pub fn fixed_space_dim(a: &IntMatrix) -> usize {
    let n = a.len();
    let diff = mat_sub(a, &identity(n));
    n - rank(&diff)
}

/// Characteristic polynomial, monic, coefficients from constant term up.
/// Faddeev–LeVerrier over exact rationals; the result is integral for
/// integer input.
pub fn char_poly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.len();
    let ar: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // N_0 = I; M_k = A N_{k-1}; c_{n-k} = -tr(M_k)/k; N_k = M_k + c_{n-k} I.
    let mut nmat: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for k in 1..=n {
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if ar[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let add = &ar[i][l] * &nmat[l][j];
                    m[i][j] = &m[i][j] + add;
                }
            }
        }
        let mut tr = BigRational::zero();
        for i in 0..n {
            tr = &tr + &m[i][i];
        }
        let c = -tr / BigRational::from_integer(BigInt::from(k));
        for i in 0..n {
            m[i][i] = &m[i][i] + &c;
        }
        coeffs[n - k] = c;
        nmat = m;
    }
    coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// Euler totient by trial division.
fn totient(mut d: u64) -> u64 {
    let mut result = d;
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            while d % p == 0 {
                d /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if d > 1 {
        result -= result / d;
    }
    result
}

/// Cyclotomic polynomial Φ_d, coefficients from constant term up, computed by
/// dividing x^d - 1 by Φ_e over all proper divisors e of d.
pub fn cyclotomic(d: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            num = poly_div_exact(&num, &cyclotomic(e))
                .expect("cyclotomic division is exact");
        }
    }
    num
}

/// Exact polynomial division (monic divisor); `None` when the remainder is
/// nonzero. Coefficients from constant term up.
pub fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return None;
    }
    let qn = rem.len() - den.len();
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        quot[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (i, dcoef) in den.iter().enumerate() {
            rem[k + i] -= &c * dcoef;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

/// Factor a monic integer polynomial as a product of cyclotomic polynomials.
/// Returns the multiset of orders d, or `None` if a non-cyclotomic factor
/// remains. Only d with φ(d) ≤ deg are tried, which is complete.
pub fn cyclotomic_orders(poly: &[BigInt]) -> Option<Vec<u64>> {
    let deg = (poly.len() - 1) as u64;
    let mut f = poly.to_vec();
    let mut orders = Vec::new();
    let mut d = 1;
    // φ(d) ≥ sqrt(d/2), so d ≤ 2 deg² bounds the search.
    while f.len() > 1 && d <= 2 * deg * deg + 1 {
        if totient(d) <= deg {
            let phi = cyclotomic(d);
            while let Some(q) = poly_div_exact(&f, &phi) {
                orders.push(d);
                f = q;
                if f.len() == 1 {
                    break;
                }
            }
        }
        d += 1;
    }
    if f.len() == 1 && f[0].is_one() {
        Some(orders)
    } else {
        None
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Exact integer 2n×2n symplectic quasi-unipotent matrix: the cohomology
/// monodromy of a fibration germ. Both invariants are checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyMatrix {
    n: usize,
    entries: IntMatrix,
}

impl MonodromyMatrix {
    pub fn new(n: usize, entries: IntMatrix) -> Result<Self, IntmatError> {
        let size = 2 * n;
        if n == 0 || entries.len() != size || entries.iter().any(|r| r.len() != size) {
            return Err(IntmatError::BadShape {
                rows: entries.len(),
                cols: entries.first().map_or(0, |r| r.len()),
            });
        }
        if !is_symplectic(&entries, n) {
            return Err(IntmatError::NotSymplectic);
        }
        let m = Self { n, entries };
        // Construction already rejects non-quasi-unipotent input.
        quasi_unipotent_index(&m)?;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }
}

/// Minimal m ≥ 1 with (U^m − I)^{2n} = 0: the lcm of the orders of the roots
/// of unity among the eigenvalues, read off the cyclotomic factorization of
/// the characteristic polynomial.
pub fn quasi_unipotent_index(u: &MonodromyMatrix) -> Result<u64, IntmatError> {
    let cp = char_poly(&u.entries);
    let orders = cyclotomic_orders(&cp).ok_or(IntmatError::NotQuasiUnipotent)?;
    Ok(orders.into_iter().fold(1, lcm_u64))
}

/// Rank over Q of U^m − I, where m is the quasi-unipotent index.
pub fn unipotent_rank_defect(u: &MonodromyMatrix) -> Result<usize, IntmatError> {
    let m = quasi_unipotent_index(u)?;
    let pw = mat_pow(&u.entries, m);
    let diff = mat_sub(&pw, &identity(2 * u.n));
    Ok(rank(&diff))
}

/// The branch gate: 0 selects the smooth-fibre branch, 1 the first-order
/// branch; any larger defect cannot arise from a fibration germ.
pub fn torus_rank(u: &MonodromyMatrix) -> Result<usize, IntmatError> {
    let defect = unipotent_rank_defect(u)?;
    if defect >= 2 {
        return Err(IntmatError::RankGateViolation { defect });
    }
    Ok(defect)
}

/// Multiplicative order of the semisimple part of U; equals the
/// quasi-unipotent index.
pub fn semisimple_order(u: &MonodromyMatrix) -> Result<u64, IntmatError> {
    quasi_unipotent_index(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
        int_matrix(&[&[a, b], &[c, d]])
    }

    fn mono2(a: i64, b: i64, c: i64, d: i64) -> MonodromyMatrix {
        MonodromyMatrix::new(1, m2(a, b, c, d)).unwrap()
    }

    #[test]
    fn char_poly_small() {
        assert_eq!(
            char_poly(&m2(0, -1, 1, 0)),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            char_poly(&m2(2, 1, 1, 1)),
            vec![BigInt::from(1), BigInt::from(-3), BigInt::from(1)]
        );
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic(2), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        // Φ_12 = x^4 - x^2 + 1
        assert_eq!(
            cyclotomic(12),
            [1, 0, -1, 0, 1].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn index_examples() {
        assert_eq!(quasi_unipotent_index(&mono2(1, 0, 0, 1)).unwrap(), 1);
        assert_eq!(quasi_unipotent_index(&mono2(1, 1, 0, 1)).unwrap(), 1);
        assert_eq!(quasi_unipotent_index(&mono2(0, -1, 1, 0)).unwrap(), 4);
        assert_eq!(quasi_unipotent_index(&mono2(0, -1, 1, 1)).unwrap(), 6);
        assert_eq!(quasi_unipotent_index(&mono2(-1, -3, 0, -1)).unwrap(), 2);
        assert!(matches!(
            MonodromyMatrix::new(1, m2(2, 1, 1, 1)),
            Err(IntmatError::NotQuasiUnipotent)
        ));
    }

    #[test]
    fn index_by_brute_force_powering() {
        // Independent oracle: smallest m ≤ 24 with (U^m - I)^{2n} = 0.
        let samples = [
            mono2(1, 0, 0, 1),
            mono2(1, 1, 0, 1),
            mono2(1, -5, 0, 1),
            mono2(0, -1, 1, 0),
            mono2(0, -1, 1, 1),
            mono2(0, 1, -1, -1),
            mono2(-1, 1, 0, -1),
            mono2(3, -2, 2, -1),
        ];
        for u in samples {
            let claimed = quasi_unipotent_index(&u).unwrap();
            let brute = (1..=24u64)
                .find(|&m| {
                    let d = mat_sub(&mat_pow(u.entries(), m), &identity(2));
                    mat_pow(&d, 2).iter().flatten().all(|x| x.is_zero())
                })
                .unwrap();
            assert_eq!(claimed, brute, "matrix {:?}", u.entries());
        }
    }

    #[test]
    fn rank_defect_examples() {
        assert_eq!(unipotent_rank_defect(&mono2(1, 0, 0, 1)).unwrap(), 0);
        assert_eq!(unipotent_rank_defect(&mono2(1, 1, 0, 1)).unwrap(), 1);
        assert_eq!(unipotent_rank_defect(&mono2(0, -1, 1, 0)).unwrap(), 0);
        assert_eq!(torus_rank(&mono2(1, 3, 0, 1)).unwrap(), 1);
    }

    #[test]
    fn rank_gate_rejects_defect_two() {
        // [[I, S], [0, I]] with S = I is symplectic and has defect 2.
        let u = MonodromyMatrix::new(
            2,
            int_matrix(&[
                &[1, 0, 1, 0],
                &[0, 1, 0, 1],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ]),
        )
        .unwrap();
        assert_eq!(unipotent_rank_defect(&u).unwrap(), 2);
        assert_eq!(
            torus_rank(&u),
            Err(IntmatError::RankGateViolation { defect: 2 })
        );
    }

    #[test]
    fn semisimple_order_examples() {
        assert_eq!(semisimple_order(&mono2(0, -1, 1, 0)).unwrap(), 4);
        assert_eq!(semisimple_order(&mono2(0, -1, 1, 1)).unwrap(), 6);
        let neg = MonodromyMatrix::new(
            2,
            int_matrix(&[
                &[-1, 0, 0, 0],
                &[0, -1, 0, 0],
                &[0, 0, -1, 0],
                &[0, 0, 0, -1],
            ]),
        )
        .unwrap();
        assert_eq!(semisimple_order(&neg).unwrap(), 2);
    }

    #[test]
    fn fixed_space_dims() {
        assert_eq!(fixed_space_dim(&identity(4)), 4);
        let neg = int_matrix(&[&[-1, 0], &[0, -1]]);
        assert_eq!(fixed_space_dim(&neg), 0);
        assert_eq!(fixed_space_dim(&m2(0, -1, 1, 0)), 0);
        assert_eq!(fixed_space_dim(&m2(1, 1, 0, 1)), 1);
    }

    #[test]
    fn rejects_non_symplectic() {
        assert!(matches!(
            MonodromyMatrix::new(1, m2(1, 0, 0, -1)),
            Err(IntmatError::NotSymplectic)
        ));
        assert!(matches!(
            MonodromyMatrix::new(1, m2(2, 0, 0, 1)),
            Err(IntmatError::NotSymplectic)
        ));
    }

    #[test]
    fn index_of_power_divides_index() {
        let u = mono2(0, -1, 1, 1); // index 6
        for k in 1..=6u64 {
            let p = MonodromyMatrix::new(1, mat_pow(u.entries(), k)).unwrap();
            let idx = quasi_unipotent_index(&p).unwrap();
            assert_eq!(6 % idx, 0, "k={k}");
        }
    }
}
