//! Exact integer and rational helpers shared by every module.
//!
//! All combinatorial functions are total: `1/n!` is zero for negative `n`,
//! and `binom(m, j)` is zero whenever `j < 0`, `j > m` or `m < 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number with arbitrary-precision parts.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `1/n!`, with the convention that it vanishes for `n < 0`.
pub fn inv_factorial(n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), factorial(n as u32))
    }
}

/// `n! / (n-k)!` as an exact integer; zero when `k > n`.
pub fn falling_factorial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub fn binom(m: i64, j: i64) -> BigInt {
    if m < 0 || j < 0 || j > m {
        return BigInt::zero();
    }
    let j = j.min(m - j);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    acc
}

/// Renders a rational in lowest terms as `num/den`, or `num` when `den == 1`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense matrix over the rationals, row-major.
pub type Matrix = Vec<Vec<Rational>>;

/// Greedy selection of linearly independent rows, scanning top to bottom.
///
/// Returns the indices of the selected rows. The number of indices is the rank.
pub fn independent_rows(m: &Matrix) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in m.iter().enumerate() {
        let mut r = row.clone();
        for (pivot, prow) in &echelon {
            if !r[*pivot].is_zero() {
                let f = r[*pivot].clone() / prow[*pivot].clone();
                for (x, y) in r.iter_mut().zip(prow.iter()) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            echelon.push((p, r));
            picked.push(idx);
        }
    }
    picked
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn rank(m: &Matrix) -> usize {
    independent_rows(m).len()
}

/// Inverse of a square matrix by Gauss-Jordan elimination; `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = Rational::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let prow = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(prow.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by Leibniz expansion. Intended for the tiny (k <= 3)
/// matrices of the determinantal formula, where it stays fraction-free.
pub fn leibniz_det(m: &Matrix) -> Rational {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = Rational::from_integer(permutation_sign(p).into());
        for (row, &col) in p.iter().enumerate() {
            if m[row][col].is_zero() {
                return;
            }
            term *= &m[row][col];
        }
        total += term;
    });
    total
}

fn permute(p: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, f);
        p.swap(start, i);
    }
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
