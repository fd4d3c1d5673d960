//! Exact deciders for coorbit compatibility: membership in `S(O)`, the
//! factorization `A = λ·h·A₁`, normalizer membership of `A₁`, commutation
//! with the scaling generator, and the dimension of the symmetry group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{solve_linear_subspace, Rational, RationalMatrix};
use crate::shearlet::{make_toeplitz_group, ShearletGroup};

/// `A = [[λ, z], [0, B]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SOBlockForm {
    pub lambda: Rational,
    pub z: Vec<Rational>,
    #[serde(rename = "B")]
    pub b: RationalMatrix,
}

impl SOBlockForm {
    pub fn reassemble(&self) -> RationalMatrix {
        let n = self.b.rows();
        let mut a = RationalMatrix::zeros(n + 1, n + 1);
        a[(0, 0)] = self.lambda.clone();
        for j in 0..n {
            a[(0, j + 1)] = self.z[j].clone();
            for i in 0..n {
                a[(i + 1, j + 1)] = self.b[(i, j)].clone();
            }
        }
        a
    }
}

fn check_square(a: &RationalMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(())
}

/// Reads off the block form of `A ∈ S(O)`.
pub fn decompose_s_o(a: &RationalMatrix) -> Result<SOBlockForm> {
    check_square(a)?;
    let d = a.rows();
    if let Some(i) = (1..d).find(|&i| !a[(i, 0)].is_zero()) {
        return Err(Error::NotInSO { row: i + 1 });
    }
    let lambda = a[(0, 0)].clone();
    let b = a.block(1..d, 1..d);
    if lambda.is_zero() || b.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(SOBlockForm {
        lambda,
        z: a.row(0)[1..].to_vec(),
        b,
    })
}

/// `A = λ·h·diag(1, A1_B)` with `h = h(0, shear_t) ∈ S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub lambda: Rational,
    pub shear_t: Vec<Rational>,
    #[serde(rename = "A1_B")]
    pub a1_b: RationalMatrix,
}

impl Factorization {
    /// The factor `h = (I + Σ shear_t_i X_i)^{-1}`.
    pub fn shear_factor(&self, group: &ShearletGroup) -> Result<RationalMatrix> {
        group.shear_from_t(&self.shear_t)?.matrix.inverse()
    }

    /// `diag(1, A1_B)`.
    pub fn a1(&self) -> RationalMatrix {
        SOBlockForm {
            lambda: Rational::one(),
            z: vec![Rational::zero(); self.a1_b.rows()],
            b: self.a1_b.clone(),
        }
        .reassemble()
    }

    pub fn reassemble(&self, group: &ShearletGroup) -> Result<RationalMatrix> {
        Ok(self
            .shear_factor(group)?
            .mul(&self.a1())?
            .scale(&self.lambda))
    }
}

pub fn factorize(group: &ShearletGroup, a: &RationalMatrix) -> Result<Factorization> {
    let d = group.d();
    if a.rows() != d || a.cols() != d {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, group dimension is {d}",
            a.rows(),
            a.cols()
        )));
    }
    let block = decompose_s_o(a)?;
    let inv_lambda = block.lambda.recip().ok_or(Error::SingularMatrix)?;
    let z1: Vec<Rational> = block.z.iter().map(|x| x * &inv_lambda).collect();
    let b1 = block.b.scale(&inv_lambda);
    // z'' = -z' B'^{-1}, as a row vector
    let b1_inv_t = b1.inverse()?.transpose();
    let shear_t: Vec<Rational> = b1_inv_t.apply(&z1)?.into_iter().map(|x| -x).collect();
    // lower block of h^{-1} A' is (I + C(z'')) B'
    let lower = RationalMatrix::identity(d - 1).add(&group.c_map(&shear_t)?)?;
    let a1_b = lower.mul(&b1)?;
    Ok(Factorization {
        lambda: block.lambda,
        shear_t,
        a1_b,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizerWitness {
    /// Index `i ∈ 2..=d` of the basis vector where the identity breaks.
    pub index: usize,
    /// `B^{-1} C(e_i) B`.
    pub lhs: RationalMatrix,
    /// `C(Bᵀ e_i)`.
    pub rhs: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizerCheck {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<NormalizerWitness>,
}

/// Decides `diag(1, B) ∈ N_S` via `B^{-1} C(e_i) B = C(Bᵀ e_i)` on the
/// canonical basis.
pub fn is_in_normalizer_s(group: &ShearletGroup, b: &RationalMatrix) -> Result<NormalizerCheck> {
    let n = group.n();
    if b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "B is {}x{}, expected {n}x{n}",
            b.rows(),
            b.cols()
        )));
    }
    let b_inv = b.inverse()?;
    let bt = b.transpose();
    for (k, c) in group.c_basis().iter().enumerate() {
        let lhs = b_inv.mul(c)?.mul(b)?;
        let image = bt.col(k);
        let rhs = group.c_map(&image)?;
        if lhs != rhs {
            return Ok(NormalizerCheck {
                member: false,
                witness: Some(NormalizerWitness {
                    index: k + 2,
                    lhs,
                    rhs,
                }),
            });
        }
    }
    Ok(NormalizerCheck {
        member: true,
        witness: None,
    })
}

/// First entry `b_ij ≠ 0` with `λ_i ≠ λ_j`, as zero-based block indices.
fn scaling_obstruction(group: &ShearletGroup, b: &RationalMatrix) -> Option<(usize, usize)> {
    let l = group.lambdas();
    let n = group.n();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| l[i] != l[j] && !b[(i, j)].is_zero())
}

/// `B Ỹ = Ỹ B`.
pub fn commutes_with_scaling(group: &ShearletGroup, b: &RationalMatrix) -> bool {
    scaling_obstruction(group, b).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailedCondition {
    NotInSO,
    NotInNormalizerS,
    NotCommutingWithY,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `A_{row,1} ≠ 0` for some `row ≥ 2` (one-based).
    FirstColumn {
        row: usize,
        value: Rational,
    },
    Normalizer(NormalizerWitness),
    /// `b_{row,col} ≠ 0` across distinct scaling exponents (indices in `2..=d`).
    Commutation {
        row: usize,
        col: usize,
        value: Rational,
        lambda_row: Rational,
        lambda_col: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityVerdict {
    pub compatible: bool,
    pub factorization: Option<Factorization>,
    pub failed_condition: FailedCondition,
    pub witness: Option<Witness>,
}

/// Decides whether `A` normalizes `H`, equivalently whether `f ↦ f∘A^{-1}`
/// preserves the coorbit spaces of `H`.
pub fn is_coorbit_compatible(
    group: &ShearletGroup,
    a: &RationalMatrix,
) -> Result<CompatibilityVerdict> {
    let d = group.d();
    if a.rows() != d || a.cols() != d {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, group dimension is {d}",
            a.rows(),
            a.cols()
        )));
    }
    if a.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let factorization = match factorize(group, a) {
        Ok(f) => f,
        Err(Error::NotInSO { row }) => {
            return Ok(CompatibilityVerdict {
                compatible: false,
                factorization: None,
                failed_condition: FailedCondition::NotInSO,
                witness: Some(Witness::FirstColumn {
                    row,
                    value: a[(row - 1, 0)].clone(),
                }),
            })
        }
        Err(e) => return Err(e),
    };
    let b = &factorization.a1_b;
    let normalizer = is_in_normalizer_s(group, b)?;
    let (failed_condition, witness) = if let Some(w) = normalizer.witness {
        (
            FailedCondition::NotInNormalizerS,
            Some(Witness::Normalizer(w)),
        )
    } else if let Some((i, j)) = scaling_obstruction(group, b) {
        let l = group.lambdas();
        (
            FailedCondition::NotCommutingWithY,
            Some(Witness::Commutation {
                row: i + 2,
                col: j + 2,
                value: b[(i, j)].clone(),
                lambda_row: l[i].clone(),
                lambda_col: l[j].clone(),
            }),
        )
    } else {
        (FailedCondition::None, None)
    };
    Ok(CompatibilityVerdict {
        compatible: failed_condition == FailedCondition::None,
        factorization: Some(factorization),
        failed_condition,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutantBlock {
    pub lambda: Rational,
    /// Indices in `2..=d` sharing this scaling exponent.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsCheck {
    /// `d ≤ dim_total`.
    pub lower: bool,
    /// `dim_total ≤ d² - d + 1`.
    pub upper: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryGroupReport {
    pub d: usize,
    pub dim_total: usize,
    #[serde(rename = "dim_B_component")]
    pub dim_b_component: usize,
    pub derivation_dim: usize,
    pub commutant_dim: usize,
    pub commutant_blocks: Vec<CommutantBlock>,
    pub bounds_check: BoundsCheck,
    pub dimension_kind: String,
    /// `dim_total = d + 1`, the smallest value known to occur.
    pub attains_smallest_known: bool,
}

/// Partition of `2..=d` by equal scaling exponent, in order of first
/// appearance.
pub fn commutant_blocks(group: &ShearletGroup) -> Vec<CommutantBlock> {
    let mut blocks: Vec<CommutantBlock> = Vec::new();
    for (k, l) in group.lambdas().iter().enumerate() {
        match blocks.iter_mut().find(|b| &b.lambda == l) {
            Some(b) => b.indices.push(k + 2),
            None => blocks.push(CommutantBlock {
                lambda: l.clone(),
                indices: vec![k + 2],
            }),
        }
    }
    blocks
}

/// Linear constraints on the coordinate matrix `M` of a linear map
/// `Δ(X_i) = Σ_k M[i][k] X_k` (row-major unknowns) expressing
/// `Δ(X_i X_j) = Δ(X_i) X_j + X_i Δ(X_j)`.
fn derivation_constraints(group: &ShearletGroup) -> Vec<Vec<Rational>> {
    let n = group.n();
    let c = |i: usize, j: usize, k: usize| -> &Rational { &group.product_coords(i, j)[k] };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for l in 0..n {
                    row[l * n + k] += c(i, j, l);
                }
                for m in 0..n {
                    row[i * n + m] -= c(m, j, k);
                    row[j * n + m] -= c(i, m, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn scaling_constraints(group: &ShearletGroup) -> Vec<Vec<Rational>> {
    let n = group.n();
    let l = group.lambdas();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if l[a] != l[b] {
                let mut row = vec![Rational::zero(); n * n];
                row[a * n + b] = Rational::one();
                rows.push(row);
            }
        }
    }
    rows
}

/// Basis of the derivations of `s` that commute with `ad Y`, as coordinate
/// matrices.
pub fn compatible_derivations(group: &ShearletGroup) -> Vec<RationalMatrix> {
    let n = group.n();
    let mut constraints = derivation_constraints(group);
    constraints.extend(scaling_constraints(group));
    solve_linear_subspace(n * n, &constraints)
        .expect("constraint rows have length n*n")
        .into_iter()
        .map(|v| RationalMatrix::from_vec(n, n, v).expect("n*n entries"))
        .collect()
}

pub fn symmetry_group_report(group: &ShearletGroup) -> SymmetryGroupReport {
    let d = group.d();
    let n = group.n();
    let derivations = derivation_constraints(group);
    let derivation_dim = solve_linear_subspace(n * n, &derivations)
        .expect("constraint rows have length n*n")
        .len();
    let dim_b_component = compatible_derivations(group).len();
    let blocks = commutant_blocks(group);
    let commutant_dim = blocks.iter().map(|b| b.indices.len().pow(2)).sum();
    let dim_total = d + dim_b_component;
    SymmetryGroupReport {
        d,
        dim_total,
        dim_b_component,
        derivation_dim,
        commutant_dim,
        commutant_blocks: blocks,
        bounds_check: BoundsCheck {
            lower: d <= dim_total,
            upper: dim_total <= d * d - d + 1,
        },
        dimension_kind: "connected-component dimension".to_string(),
        attains_smallest_known: dim_total == d + 1,
    }
}

/// Coordinate matrix of the algebra automorphism of the Toeplitz shearing
/// algebra sending `X_2 ↦ b_2 = Σ c_i X_i`. Row `j` holds the coordinates
/// of `b_j = b_2^{j-1}`.
pub fn toeplitz_automorphism_matrix(d: usize, c: &[Rational]) -> Result<RationalMatrix> {
    if d < 2 || c.len() != d - 1 {
        return Err(Error::Dimension(format!(
            "{} coefficients for dimension {d}",
            c.len()
        )));
    }
    if c[0].is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let group = ShearletGroup::new(make_toeplitz_group(&Rational::zero(), d)?)?;
    let b2 = group.algebra_element(c)?;
    let mut rows = Vec::with_capacity(d - 1);
    let mut power = b2.clone();
    for _ in 0..d - 1 {
        rows.push(power.row(0)[1..].to_vec());
        power = power.mul(&b2)?;
    }
    RationalMatrix::from_rows(rows)
}
