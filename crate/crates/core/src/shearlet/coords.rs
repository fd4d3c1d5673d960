//! Coordinates `h = ε·h(r, t)` with `h(r,t) = exp(-rY)(I + Σ t_j X_j)^{-1}`,
//! shear products, conjugation by scalings and the orbit map.

use serde::{Deserialize, Serialize};

use super::spec::ShearletGroup;
use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupElementCoords<S> {
    /// `+1` or `-1`.
    pub sign: i8,
    pub r: S,
    pub t: Vec<S>,
}

pub type ExactCoords = GroupElementCoords<Rational>;
pub type FloatCoords = GroupElementCoords<f64>;

impl ExactCoords {
    pub fn identity(n: usize) -> Self {
        GroupElementCoords {
            sign: 1,
            r: Rational::zero(),
            t: vec![Rational::zero(); n],
        }
    }

    pub fn shear(t: Vec<Rational>) -> Self {
        GroupElementCoords {
            sign: 1,
            r: Rational::zero(),
            t,
        }
    }

    pub fn to_f64(&self) -> FloatCoords {
        GroupElementCoords {
            sign: self.sign,
            r: self.r.to_f64(),
            t: self.t.iter().map(Rational::to_f64).collect(),
        }
    }
}

impl FloatCoords {
    pub fn identity(n: usize) -> Self {
        GroupElementCoords {
            sign: 1,
            r: 0.0,
            t: vec![0.0; n],
        }
    }
}

/// `I_d + Σ t_i X_i` together with `C(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShearMatrixForm {
    pub matrix: RationalMatrix,
    pub c: RationalMatrix,
}

impl ShearMatrixForm {
    pub fn t(&self) -> Vec<Rational> {
        self.matrix.row(0)[1..].to_vec()
    }
}

impl ShearletGroup {
    pub fn shear_from_t(&self, t: &[Rational]) -> Result<ShearMatrixForm> {
        let x = self.algebra_element(t)?;
        let matrix = RationalMatrix::identity(self.d()).add(&x)?;
        let c = self.c_map(t)?;
        Ok(ShearMatrixForm { matrix, c })
    }

    /// `t₁ + t₂ + C(t₂)ᵀ t₁`, the shear coordinates of `h(0,t₁)·h(0,t₂)`.
    pub fn shear_product(&self, t1: &[Rational], t2: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(t1.len())?;
        let cross = self.c_map(t2)?.transpose().apply(t1)?;
        Ok(t1
            .iter()
            .zip(t2)
            .zip(cross)
            .map(|((a, b), c)| a + b + c)
            .collect())
    }

    /// Exact product. Only pure shears (`r = 0`) can be multiplied exactly.
    pub fn group_mul_coords(&self, a: &ExactCoords, b: &ExactCoords) -> Result<ExactCoords> {
        for r in [&a.r, &b.r] {
            if !r.is_zero() {
                return Err(Error::Exactness(r.to_string()));
            }
        }
        Ok(GroupElementCoords {
            sign: a.sign * b.sign,
            r: Rational::zero(),
            t: self.shear_product(&a.t, &b.t)?,
        })
    }

    /// Exact inverse of a pure shear: `v = -(I + C(t)ᵀ)^{-1} t`.
    pub fn shear_inverse(&self, t: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.n();
        let m = RationalMatrix::identity(n).add(&self.c_map(t)?.transpose())?;
        let neg: Vec<Rational> = t.iter().map(|x| -x).collect();
        m.inverse()?.apply(&neg)
    }

    fn c_map_f64(&self, t: &[f64]) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for (ti, c) in t.iter().zip(self.c_basis_f64()) {
            if *ti != 0.0 {
                for (row, crow) in m.iter_mut().zip(c) {
                    for (x, y) in row.iter_mut().zip(crow) {
                        *x += ti * y;
                    }
                }
            }
        }
        m
    }

    /// Float shear product `t₁ + t₂ + C(t₂)ᵀ t₁`.
    pub fn shear_product_f64(&self, t1: &[f64], t2: &[f64]) -> Vec<f64> {
        let c = self.c_map_f64(t2);
        (0..self.n())
            .map(|j| t1[j] + t2[j] + (0..self.n()).map(|i| c[i][j] * t1[i]).sum::<f64>())
            .collect()
    }

    /// Float shear inverse, by forward substitution in the unitriangular
    /// system `(I + C(t)ᵀ) v = -t`.
    pub fn shear_inverse_f64(&self, t: &[f64]) -> Vec<f64> {
        let n = self.n();
        let c = self.c_map_f64(t);
        let mut v = vec![0.0; n];
        for j in 0..n {
            // C(t) is strictly upper triangular, so row j of C(t)ᵀ only sees i < j
            let acc: f64 = (0..j).map(|i| c[i][j] * v[i]).sum();
            v[j] = -t[j] - acc;
        }
        v
    }

    /// `Z̃_r t` with `Z̃_r = diag(e^{-r(λ_j - 1)})`.
    pub fn conjugate_shear_by_scaling(&self, r: f64, t: &[f64]) -> Vec<f64> {
        self.lambdas()
            .iter()
            .zip(t)
            .map(|(l, x)| (-r * (l.to_f64() - 1.0)).exp() * x)
            .collect()
    }

    /// Float product `ε₁ε₂·h(r₁ + r₂, Z̃_{r₂}t₁ ⊕ t₂)`.
    pub fn group_mul_f64(&self, a: &FloatCoords, b: &FloatCoords) -> FloatCoords {
        let moved = self.conjugate_shear_by_scaling(b.r, &a.t);
        GroupElementCoords {
            sign: a.sign * b.sign,
            r: a.r + b.r,
            t: self.shear_product_f64(&moved, &b.t),
        }
    }

    pub fn group_inv_f64(&self, a: &FloatCoords) -> FloatCoords {
        let moved = self.conjugate_shear_by_scaling(-a.r, &a.t);
        GroupElementCoords {
            sign: a.sign,
            r: -a.r,
            t: self.shear_inverse_f64(&moved),
        }
    }

    /// `p(εh(r,t)) = ε(e^r, e^{λ_2 r}t_2, ..)`, the first row of `h^{-1}`.
    pub fn orbit_map(&self, h: &FloatCoords) -> Vec<f64> {
        let eps = f64::from(h.sign);
        let mut xi = Vec::with_capacity(self.d());
        xi.push(eps * h.r.exp());
        for (l, tj) in self.lambdas().iter().zip(&h.t) {
            xi.push(eps * (l.to_f64() * h.r).exp() * tj);
        }
        xi
    }

    pub fn orbit_map_inverse(&self, xi: &[f64]) -> Result<FloatCoords> {
        if xi.len() != self.d() {
            return Err(Error::Dimension(format!(
                "orbit point of length {}, expected {}",
                xi.len(),
                self.d()
            )));
        }
        let x1 = xi[0];
        if x1 == 0.0 || !x1.is_finite() {
            return Err(Error::Orbit(x1));
        }
        let sign: i8 = if x1 > 0.0 { 1 } else { -1 };
        let eps = f64::from(sign);
        let a = x1.abs();
        let t = self
            .lambdas()
            .iter()
            .zip(&xi[1..])
            .map(|(l, x)| eps * x * a.powf(-l.to_f64()))
            .collect();
        Ok(GroupElementCoords { sign, r: a.ln(), t })
    }

    /// Dense float matrix of `ε h(r,t)`.
    pub fn element_matrix_f64(&self, h: &FloatCoords) -> Vec<Vec<f64>> {
        let d = self.d();
        // (I + X)^{-1} = Σ_k (-X)^k, X nilpotent
        let mut x = vec![vec![0.0; d]; d];
        for (tj, b) in h.t.iter().zip(self.basis_f64()) {
            for i in 0..d {
                for j in 0..d {
                    x[i][j] += tj * b[i][j];
                }
            }
        }
        let mut inv = identity_f64(d);
        let mut power = identity_f64(d);
        for k in 1..d {
            power = matmul_f64(&power, &x);
            let s = if k % 2 == 1 { -1.0 } else { 1.0 };
            for i in 0..d {
                for j in 0..d {
                    inv[i][j] += s * power[i][j];
                }
            }
        }
        let mut y = vec![1.0];
        y.extend(self.lambdas_f64());
        let eps = f64::from(h.sign);
        (0..d)
            .map(|i| {
                let scale = eps * (-h.r * y[i]).exp();
                inv[i].iter().map(|v| scale * v).collect()
            })
            .collect()
    }
}

pub(crate) fn identity_f64(d: usize) -> Vec<Vec<f64>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

pub(crate) fn matmul_f64(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}
