//! Shearlet dilation groups `H = DS ∪ -DS`: construction and validation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{express_in_span, Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Standard,
    Toeplitz,
    Custom,
}

/// Unvalidated description of a shearlet dilation group: the canonical basis
/// `X_2..X_d` of the shearing algebra and the scaling exponents of
/// `Y = diag(1, λ_2, .., λ_d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShearletGroupSpec {
    pub d: usize,
    pub kind: GroupKind,
    pub canonical_basis: Vec<RationalMatrix>,
    /// `λ_2..λ_d`; a leading entry is accepted only when it equals 1.
    pub scaling_exponents: Vec<Rational>,
    pub delta: Option<Rational>,
}

/// Standard shearlet group: `X_i = e_1 e_i^T`.
pub fn make_standard_group(lambdas: &[Rational]) -> ShearletGroupSpec {
    let d = lambdas.len() + 1;
    let basis = (1..d).map(|i| RationalMatrix::unit(d, d, 0, i)).collect();
    ShearletGroupSpec {
        d,
        kind: GroupKind::Standard,
        canonical_basis: basis,
        scaling_exponents: lambdas.to_vec(),
        delta: None,
    }
}

/// Upper shift matrix `T(0, 1, 0, .., 0)`.
pub fn shift_matrix(d: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(d, d);
    for i in 0..d.saturating_sub(1) {
        m[(i, i + 1)] = Rational::one();
    }
    m
}

/// Toeplitz shearlet group: `X_j = X_2^{j-1}` with `X_2` the upper shift and
/// `λ_j = 1 - (j-1)δ`.
pub fn make_toeplitz_group(delta: &Rational, d: usize) -> Result<ShearletGroupSpec> {
    if d < 2 {
        return Err(Error::InvalidSpec(format!("dimension {d} < 2")));
    }
    let x2 = shift_matrix(d);
    let mut basis = Vec::with_capacity(d - 1);
    let mut power = x2.clone();
    for _ in 2..=d {
        basis.push(power.clone());
        power = power.mul(&x2)?;
    }
    let lambdas = (1..d)
        .map(|k| Rational::one() - Rational::from(k as i64) * delta)
        .collect();
    Ok(ShearletGroupSpec {
        d,
        kind: GroupKind::Toeplitz,
        canonical_basis: basis,
        scaling_exponents: lambdas,
        delta: Some(delta.clone()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn failures(&self) -> String {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| match &c.witness {
                Some(w) => format!("{}: {w}", c.name),
                None => c.name.clone(),
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub const CHECK_SHAPE: &str = "shape";
pub const CHECK_NORMALIZATION: &str = "scaling_normalization";
pub const CHECK_CANONICAL: &str = "canonical_basis";
pub const CHECK_CLOSURE: &str = "closed_under_products";
pub const CHECK_COMMUTATIVE: &str = "commutative";
pub const CHECK_FILTRATION: &str = "filtration";
pub const CHECK_SCALING: &str = "scaling_compatibility";

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, witness: Option<String>) {
        self.0.push(Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }
}

/// Runs every structural check on `spec`. Failures are reported with a
/// witness instead of raised.
pub fn validate_spec(spec: &ShearletGroupSpec) -> ValidationReport {
    let mut checks = Checks(Vec::new());
    let d = spec.d;

    let shape_problem = if d < 2 {
        Some(format!("dimension {d} < 2"))
    } else if spec.canonical_basis.len() != d - 1 {
        Some(format!(
            "{} basis matrices, expected {}",
            spec.canonical_basis.len(),
            d - 1
        ))
    } else if let Some((i, m)) = spec
        .canonical_basis
        .iter()
        .enumerate()
        .find(|(_, m)| m.rows() != d || m.cols() != d)
    {
        Some(format!(
            "X_{} is {}x{}, expected {d}x{d}",
            i + 2,
            m.rows(),
            m.cols()
        ))
    } else if spec.scaling_exponents.len() != d - 1 && spec.scaling_exponents.len() != d {
        Some(format!(
            "{} scaling exponents, expected {}",
            spec.scaling_exponents.len(),
            d - 1
        ))
    } else {
        None
    };
    let shape_ok = shape_problem.is_none();
    checks.push(CHECK_SHAPE, shape_problem);
    if !shape_ok {
        return ValidationReport {
            valid: false,
            checks: checks.0,
        };
    }

    let normalization = if spec.scaling_exponents.len() == d && !spec.scaling_exponents[0].is_one()
    {
        Some(format!(
            "Y must be normalized as diag(1, λ_2, ..); got leading entry {}",
            spec.scaling_exponents[0]
        ))
    } else {
        None
    };
    checks.push(CHECK_NORMALIZATION, normalization);

    let basis = &spec.canonical_basis;
    let canonical = basis.iter().enumerate().find_map(|(k, x)| {
        let i = k + 1;
        for r in 0..d {
            for c in 0..=r {
                if !x[(r, c)].is_zero() {
                    return Some(format!(
                        "X_{} has nonzero entry ({}, {}) on or below the diagonal",
                        i + 1,
                        r + 1,
                        c + 1
                    ));
                }
            }
        }
        let first_row_ok = (0..d).all(|c| {
            let expected = if c == i {
                Rational::one()
            } else {
                Rational::zero()
            };
            x[(0, c)] == expected
        });
        if !first_row_ok {
            return Some(format!("X_{}^T e_1 = {:?} != e_{}", i + 1, x.row(0), i + 1));
        }
        None
    });
    let canonical_ok = canonical.is_none();
    checks.push(CHECK_CANONICAL, canonical);

    let flat: Vec<Vec<Rational>> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let in_span = |m: &RationalMatrix| express_in_span(&flat, m.entries());

    let mut closure = None;
    let mut commutative = None;
    let mut filtration = None;
    for i in 0..d - 1 {
        for j in 0..d - 1 {
            let p = basis[i].mul(&basis[j]).expect("square basis");
            if commutative.is_none() && j > i {
                let q = basis[j].mul(&basis[i]).expect("square basis");
                if p != q {
                    commutative = Some(format!("X_{}X_{} != X_{}X_{}", i + 2, j + 2, j + 2, i + 2));
                }
            }
            match in_span(&p) {
                None => {
                    if closure.is_none() {
                        closure = Some(format!("X_{}X_{} = {:?} is not in s", i + 2, j + 2, p));
                    }
                }
                Some(coeffs) => {
                    // s_k s_l ⊂ s_{k+l-1}: coefficients of X_m vanish for m < k+l-1
                    let (k, l) = (i + 2, j + 2);
                    if filtration.is_none() {
                        if let Some(m) = (2..k + l - 1)
                            .filter(|&m| m <= d)
                            .find(|&m| !coeffs[m - 2].is_zero())
                        {
                            filtration = Some(format!(
                                "X_{k}X_{l} has coordinate {} on X_{m}, outside s_{}",
                                coeffs[m - 2],
                                k + l - 1
                            ));
                        }
                    }
                }
            }
        }
    }
    checks.push(CHECK_CLOSURE, closure);
    checks.push(CHECK_COMMUTATIVE, commutative);
    checks.push(CHECK_FILTRATION, filtration);

    let y = scaling_generator_of(spec);
    let scaling = basis.iter().enumerate().find_map(|(k, x)| {
        let br = y.bracket(x).expect("square");
        if in_span(&br).is_none() {
            Some(format!("[Y, X_{}] = {:?} is not in s", k + 2, br))
        } else {
            None
        }
    });
    checks.push(CHECK_SCALING, scaling);

    let valid = canonical_ok && checks.0.iter().all(|c| c.passed);
    ValidationReport {
        valid,
        checks: checks.0,
    }
}

fn lambdas_of(spec: &ShearletGroupSpec) -> &[Rational] {
    if spec.scaling_exponents.len() == spec.d {
        &spec.scaling_exponents[1..]
    } else {
        &spec.scaling_exponents
    }
}

fn scaling_generator_of(spec: &ShearletGroupSpec) -> RationalMatrix {
    let mut diag = vec![Rational::one()];
    diag.extend(lambdas_of(spec).iter().cloned());
    RationalMatrix::diagonal(&diag)
}

/// A shearlet dilation group whose spec passed validation, with the derived
/// data the deciders need.
#[derive(Debug, Clone)]
pub struct ShearletGroup {
    spec: ShearletGroupSpec,
    lambdas: Vec<Rational>,
    /// `C(e_i)`: lower-right `(d-1)x(d-1)` block of `X_i`.
    c_basis: Vec<RationalMatrix>,
    /// `X_i X_j` in canonical coordinates, indexed `[i][j]`.
    structure: Vec<Vec<Vec<Rational>>>,
    basis_f64: Vec<Vec<Vec<f64>>>,
    c_basis_f64: Vec<Vec<Vec<f64>>>,
}

impl ShearletGroup {
    pub fn new(spec: ShearletGroupSpec) -> Result<Self> {
        let report = validate_spec(&spec);
        if !report.valid {
            return Err(Error::InvalidSpec(report.failures()));
        }
        let d = spec.d;
        let lambdas = lambdas_of(&spec).to_vec();
        let c_basis: Vec<RationalMatrix> = spec
            .canonical_basis
            .iter()
            .map(|x| x.block(1..d, 1..d))
            .collect();
        let basis_f64 = spec
            .canonical_basis
            .iter()
            .map(RationalMatrix::to_f64)
            .collect();
        let c_basis_f64 = c_basis.iter().map(RationalMatrix::to_f64).collect();
        let structure = spec
            .canonical_basis
            .iter()
            .map(|xi| {
                spec.canonical_basis
                    .iter()
                    .map(|xj| {
                        // first row of a member of s is (0, t)
                        xi.mul(xj).expect("square").row(0)[1..].to_vec()
                    })
                    .collect()
            })
            .collect();
        Ok(ShearletGroup {
            spec,
            lambdas,
            c_basis,
            structure,
            basis_f64,
            c_basis_f64,
        })
    }

    pub fn standard(lambdas: &[Rational]) -> Result<Self> {
        Self::new(make_standard_group(lambdas))
    }

    pub fn toeplitz(delta: &Rational, d: usize) -> Result<Self> {
        Self::new(make_toeplitz_group(delta, d)?)
    }

    pub fn spec(&self) -> &ShearletGroupSpec {
        &self.spec
    }

    pub fn d(&self) -> usize {
        self.spec.d
    }

    /// Dimension of the shear coordinates, `d - 1`.
    pub fn n(&self) -> usize {
        self.spec.d - 1
    }

    pub fn kind(&self) -> GroupKind {
        self.spec.kind
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.spec.canonical_basis
    }

    /// `λ_2..λ_d`.
    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn lambdas_f64(&self) -> Vec<f64> {
        self.lambdas.iter().map(Rational::to_f64).collect()
    }

    /// `Y = diag(1, λ_2, .., λ_d)`.
    pub fn scaling_generator(&self) -> RationalMatrix {
        scaling_generator_of(&self.spec)
    }

    /// `Ỹ = diag(λ_2, .., λ_d)`.
    pub fn reduced_scaling_generator(&self) -> RationalMatrix {
        RationalMatrix::diagonal(&self.lambdas)
    }

    pub fn c_basis(&self) -> &[RationalMatrix] {
        &self.c_basis
    }

    pub fn basis_f64(&self) -> &[Vec<Vec<f64>>] {
        &self.basis_f64
    }

    pub fn c_basis_f64(&self) -> &[Vec<Vec<f64>>] {
        &self.c_basis_f64
    }

    /// Coordinates of `X_i X_j` (zero-based `i`, `j`).
    pub fn product_coords(&self, i: usize, j: usize) -> &[Rational] {
        &self.structure[i][j]
    }

    /// `Σ t_i X_i`.
    pub fn algebra_element(&self, t: &[Rational]) -> Result<RationalMatrix> {
        self.check_len(t.len())?;
        let d = self.d();
        let mut m = RationalMatrix::zeros(d, d);
        for (ti, x) in t.iter().zip(self.basis()) {
            if !ti.is_zero() {
                m = m.add(&x.scale(ti))?;
            }
        }
        Ok(m)
    }

    /// The linear map `C(t)`: lower-right block of `Σ t_i X_i`.
    pub fn c_map(&self, t: &[Rational]) -> Result<RationalMatrix> {
        self.check_len(t.len())?;
        let n = self.n();
        let mut m = RationalMatrix::zeros(n, n);
        for (ti, c) in t.iter().zip(&self.c_basis) {
            if !ti.is_zero() {
                m = m.add(&c.scale(ti))?;
            }
        }
        Ok(m)
    }

    /// Canonical coordinates of `m` when `m ∈ s`.
    pub fn coords_in_algebra(&self, m: &RationalMatrix) -> Option<Vec<Rational>> {
        if m.rows() != self.d() || m.cols() != self.d() {
            return None;
        }
        let t = m.row(0)[1..].to_vec();
        let rebuilt = self.algebra_element(&t).ok()?;
        (rebuilt == *m).then_some(t)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::Dimension(format!(
                "coordinate vector of length {len}, expected {}",
                self.n()
            )));
        }
        Ok(())
    }
}
