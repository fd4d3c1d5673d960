//! Exponential coordinates `h = ε·exp(-rY)·exp(-X(u))`.
//!
//! With `X(u) = log(I + X(t))` the group law becomes
//! `(r₁, u₁)(r₂, u₂) = (r₁ + r₂, Z̃_{r₂}u₁ + u₂)` with `Z̃_r = diag(e^{a_j r})`
//! and `a_j = 1 - λ_j`, for every shearlet group. The oracle works in these
//! coordinates and converts to `(r, t)` only at its boundary.

use serde::{Deserialize, Serialize};

use crate::shearlet::{FloatCoords, ShearletGroup};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogCoords {
    pub sign: i8,
    pub r: f64,
    pub u: Vec<f64>,
}

impl LogCoords {
    pub fn identity(n: usize) -> Self {
        LogCoords {
            sign: 1,
            r: 0.0,
            u: vec![0.0; n],
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExpGroup {
    a: Vec<f64>,
    basis: Vec<Vec<Vec<f64>>>,
    d: usize,
}

impl ExpGroup {
    pub fn new(group: &ShearletGroup) -> Self {
        ExpGroup {
            a: group.lambdas_f64().iter().map(|l| 1.0 - l).collect(),
            basis: group.basis_f64().to_vec(),
            d: group.d(),
        }
    }

    /// `1 - λ_j`, the exponents of `Z̃_r`.
    pub fn rates(&self) -> &[f64] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.d - 1
    }

    pub fn mul(&self, x: &LogCoords, y: &LogCoords) -> LogCoords {
        LogCoords {
            sign: x.sign * y.sign,
            r: x.r + y.r,
            u: self
                .a
                .iter()
                .zip(x.u.iter().zip(&y.u))
                .map(|(a, (ux, uy))| (a * y.r).exp() * ux + uy)
                .collect(),
        }
    }

    pub fn inv(&self, x: &LogCoords) -> LogCoords {
        LogCoords {
            sign: x.sign,
            r: -x.r,
            u: self
                .a
                .iter()
                .zip(&x.u)
                .map(|(a, u)| -(-a * x.r).exp() * u)
                .collect(),
        }
    }

    /// `x^{-1} y`.
    pub fn between(&self, x: &LogCoords, y: &LogCoords) -> LogCoords {
        self.mul(&self.inv(x), y)
    }

    /// First row of `X(v)^k` for `k = 1..d-1`, as coordinate vectors.
    fn first_row_powers(&self, v: &[f64]) -> Vec<Vec<f64>> {
        let d = self.d;
        let mut x = vec![vec![0.0; d]; d];
        for (c, b) in v.iter().zip(&self.basis) {
            for i in 0..d {
                for j in 0..d {
                    x[i][j] += c * b[i][j];
                }
            }
        }
        let mut row: Vec<f64> = x[0].clone();
        let mut out = vec![row[1..].to_vec()];
        for _ in 2..d {
            row = (0..d)
                .map(|j| (0..d).map(|i| row[i] * x[i][j]).sum())
                .collect();
            out.push(row[1..].to_vec());
        }
        out
    }

    /// `u` with `X(u) = log(I + X(t))`.
    pub fn log_of_shear(&self, t: &[f64]) -> Vec<f64> {
        let mut u = vec![0.0; self.n()];
        for (k, p) in self.first_row_powers(t).iter().enumerate() {
            let k = (k + 1) as f64;
            let s = if k as usize % 2 == 1 { 1.0 } else { -1.0 };
            for (uj, pj) in u.iter_mut().zip(p) {
                *uj += s * pj / k;
            }
        }
        u
    }

    /// `t` with `I + X(t) = exp(X(u))`.
    pub fn exp_of_log(&self, u: &[f64]) -> Vec<f64> {
        let mut t = vec![0.0; self.n()];
        let mut fact = 1.0;
        for (k, p) in self.first_row_powers(u).iter().enumerate() {
            fact *= (k + 1) as f64;
            for (tj, pj) in t.iter_mut().zip(p) {
                *tj += pj / fact;
            }
        }
        t
    }

    pub fn from_coords(&self, h: &FloatCoords) -> LogCoords {
        LogCoords {
            sign: h.sign,
            r: h.r,
            u: self.log_of_shear(&h.t),
        }
    }

    pub fn to_coords(&self, x: &LogCoords) -> FloatCoords {
        FloatCoords {
            sign: x.sign,
            r: x.r,
            t: self.exp_of_log(&x.u),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
    }

    #[test]
    fn log_exp_round_trip_toeplitz() {
        let g = ShearletGroup::toeplitz(&q(1, 3), 5).unwrap();
        let e = ExpGroup::new(&g);
        let t = [0.7, -1.3, 2.1, 0.4];
        let u = e.log_of_shear(&t);
        assert!(close(&e.exp_of_log(&u), &t, 1e-12));
    }

    #[test]
    fn law_agrees_with_shear_coordinates() {
        for g in [
            ShearletGroup::toeplitz(&q(1, 3), 4).unwrap(),
            ShearletGroup::standard(&[q(1, 2), q(2, 1)]).unwrap(),
        ] {
            let e = ExpGroup::new(&g);
            let x = FloatCoords {
                sign: 1,
                r: 0.3,
                t: vec![0.5, -1.0, 0.25][..g.n()].to_vec(),
            };
            let y = FloatCoords {
                sign: -1,
                r: -0.8,
                t: vec![1.5, 0.2, -0.7][..g.n()].to_vec(),
            };
            let direct = g.group_mul_f64(&x, &y);
            let via = e.to_coords(&e.mul(&e.from_coords(&x), &e.from_coords(&y)));
            assert_eq!(direct.sign, via.sign);
            assert!((direct.r - via.r).abs() < 1e-12);
            assert!(close(&direct.t, &via.t, 1e-10), "{direct:?} vs {via:?}");
            let inv = e.inv(&e.from_coords(&x));
            let id = e.mul(&e.from_coords(&x), &inv);
            assert!(id.r.abs() < 1e-12 && id.u.iter().all(|v| v.abs() < 1e-12));
        }
    }
}
