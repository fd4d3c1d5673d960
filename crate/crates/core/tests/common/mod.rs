#![allow(dead_code)]

use coorbitsym::linalg::subspace::flatten;
use coorbitsym::linalg::{express_in_span, q, Rational, RationalMatrix};
use coorbitsym::shearlet::ShearletGroup;
use coorbitsym::symmetry::toeplitz_automorphism_matrix;
use rand::Rng;

pub fn rational<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let n = rng.gen_range(-6i64..=6);
        let d = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
        if !nonzero || n != 0 {
            return q(n, d);
        }
    }
}

pub fn small_int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    q(rng.gen_range(lo..=hi), 1)
}

/// Standard group with exponents drawn from a short list, so repeats occur.
pub fn random_standard<R: Rng>(rng: &mut R, d: usize) -> ShearletGroup {
    let pool = [q(0, 1), q(1, 2), q(1, 3), q(1, 1), q(-1, 1), q(2, 1)];
    let l: Vec<Rational> = (1..d)
        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
        .collect();
    ShearletGroup::standard(&l).expect("standard groups validate")
}

pub fn random_toeplitz<R: Rng>(rng: &mut R, d: usize) -> ShearletGroup {
    let delta = if rng.gen_bool(0.3) {
        q(0, 1)
    } else {
        rational(rng, true)
    };
    ShearletGroup::toeplitz(&delta, d).expect("toeplitz groups validate")
}

pub fn random_group<R: Rng>(rng: &mut R, d: usize) -> ShearletGroup {
    if d >= 3 && rng.gen_bool(0.5) {
        random_toeplitz(rng, d)
    } else {
        random_standard(rng, d)
    }
}

/// `[[λ, z], [0, B]]` with random invertible `B`.
pub fn random_s_o<R: Rng>(rng: &mut R, d: usize) -> RationalMatrix {
    loop {
        let mut a = RationalMatrix::zeros(d, d);
        a[(0, 0)] = rational(rng, true);
        for j in 1..d {
            a[(0, j)] = small_int(rng, -2, 2);
            for i in 1..d {
                a[(i, j)] = small_int(rng, -2, 2);
            }
        }
        if !a.determinant().unwrap().is_zero() {
            return a;
        }
    }
}

/// Random `B` commuting with `diag(λ_2..λ_d)`: arbitrary inside each block
/// of equal exponents, zero across blocks.
pub fn random_block_commutant<R: Rng>(rng: &mut R, group: &ShearletGroup) -> RationalMatrix {
    let l = group.lambdas();
    let n = l.len();
    loop {
        let mut b = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if l[i] == l[j] {
                    b[(i, j)] = small_int(rng, -2, 2);
                }
            }
        }
        if !b.determinant().unwrap().is_zero() {
            return b;
        }
    }
}

/// A compatible matrix `λ·h·diag(1, B)` assembled from known generators.
pub fn random_compatible<R: Rng>(rng: &mut R, group: &ShearletGroup) -> RationalMatrix {
    let d = group.d();
    let n = d - 1;
    let toeplitz_like = group.kind() == coorbitsym::shearlet::GroupKind::Toeplitz;
    let b = if toeplitz_like {
        let flat = group.lambdas().iter().all(|x| x == &group.lambdas()[0]);
        let c: Vec<Rational> = (0..n)
            .map(|j| {
                if j == 0 {
                    rational(rng, true)
                } else if flat {
                    rational(rng, false)
                } else {
                    q(0, 1)
                }
            })
            .collect();
        toeplitz_automorphism_matrix(d, &c).unwrap()
    } else {
        random_block_commutant(rng, group)
    };
    let t: Vec<Rational> = (0..n).map(|_| rational(rng, false)).collect();
    let h = group.shear_from_t(&t).unwrap().matrix;
    let mut a1 = RationalMatrix::identity(d);
    for i in 0..n {
        for j in 0..n {
            a1[(i + 1, j + 1)] = b[(i, j)].clone();
        }
    }
    h.mul(&a1).unwrap().scale(&rational(rng, true))
}

/// `Y, X_2, .., X_d`: a basis of the Lie algebra of `H`.
pub fn lie_algebra(group: &ShearletGroup) -> Vec<RationalMatrix> {
    let mut basis = vec![group.scaling_generator()];
    basis.extend(group.basis().iter().cloned());
    basis
}

/// Independent oracle: `A` normalizes `H` iff conjugation by `A` maps
/// every basis element of the Lie algebra back into the span.
pub fn brute_force_normalizes(group: &ShearletGroup, a: &RationalMatrix) -> bool {
    let a_inv = a.inverse().unwrap();
    let basis = lie_algebra(group);
    let flat: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
    basis.iter().all(|x| {
        let conj = a.mul(x).unwrap().mul(&a_inv).unwrap();
        express_in_span(&flat, &flatten(&conj)).is_some()
    })
}
