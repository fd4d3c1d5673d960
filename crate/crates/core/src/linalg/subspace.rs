//! Kernels and solution spaces of homogeneous linear systems.
//!
//! Every system is cleared to integer rows and reduced with Bareiss'
//! fraction-free elimination, so intermediate entries stay bounded by
//! minors of the input instead of accumulating denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Row echelon form with integer entries.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn echelon(rows: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

fn kernel_of_rows(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = echelon(rows, ncols);
    let is_pivot: Vec<bool> = (0..ncols).map(|c| ech.pivots.contains(&c)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
            let mut acc = Rational::zero();
            for j in pc + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += Rational::from(row[j].clone()) * &x[j];
                }
            }
            x[pc] = -acc / Rational::from(row[pc].clone());
        }
        basis.push(x);
    }
    basis
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    kernel_of_rows(&m.to_rows(), m.cols())
}

pub fn rank(m: &RationalMatrix) -> usize {
    echelon(&m.to_rows(), m.cols()).pivots.len()
}

/// Rank of a family of vectors of equal length.
pub fn rank_of_vectors(vectors: &[Vec<Rational>]) -> usize {
    let n = vectors.first().map_or(0, Vec::len);
    echelon(vectors, n).pivots.len()
}

/// Exact basis of the common zero set of `constraints` inside a space of
/// dimension `dim`. Each constraint is a linear functional given by its
/// coefficient row; with no constraints the standard basis is returned.
pub fn solve_linear_subspace(
    dim: usize,
    constraints: &[Vec<Rational>],
) -> Result<Vec<Vec<Rational>>> {
    if let Some(bad) = constraints.iter().find(|c| c.len() != dim) {
        return Err(Error::Dimension(format!(
            "functional of length {} on a space of dimension {dim}",
            bad.len()
        )));
    }
    Ok(kernel_of_rows(constraints, dim))
}

/// Coefficients `c` with `sum_i c_i * basis[i] = target`, when they exist.
/// For a linearly independent `basis` the coefficients are unique.
pub fn express_in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = target.len();
    // columns: basis vectors, then the target
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            basis
                .iter()
                .map(|b| b[i].clone())
                .chain(std::iter::once(target[i].clone()))
                .collect()
        })
        .collect();
    let kernel = kernel_of_rows(&rows, k + 1);
    let v = kernel.into_iter().find(|v| !v[k].is_zero())?;
    let scale = -v[k].clone();
    Some(v[..k].iter().map(|x| x / &scale).collect())
}

/// Row-major flattening of a matrix, the coordinate system used for
/// functionals on matrix space.
pub fn flatten(m: &RationalMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

pub fn unflatten(v: &[Rational], rows: usize, cols: usize) -> Result<RationalMatrix> {
    RationalMatrix::from_vec(rows, cols, v.to_vec())
}

/// Functionals on `n x n` matrices `X` encoding `X m = m X`.
pub fn commutation_constraints(m: &RationalMatrix) -> Result<Vec<Vec<Rational>>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut out = Vec::with_capacity(n * n);
    // (X m - m X)_{ij} = sum_k X_{ik} m_{kj} - m_{ik} X_{kj}
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Rational::zero(); n * n];
            for k in 0..n {
                row[i * n + k] += &m[(k, j)];
                row[k * n + j] -= &m[(i, k)];
            }
            out.push(row);
        }
    }
    Ok(out)
}
