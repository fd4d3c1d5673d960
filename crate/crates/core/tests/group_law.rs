mod common;

use common::*;
use coorbitsym::linalg::Rational;
use coorbitsym::shearlet::{FloatCoords, ShearletGroup};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(seed: u64, d: usize) -> ShearletGroup {
    random_group(&mut ChaCha8Rng::seed_from_u64(seed), d)
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn close_mat(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    let scale = a
        .iter()
        .chain(b)
        .flatten()
        .fold(1.0f64, |m, x| m.max(x.abs()));
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).abs() <= 1e-9 * scale)
}

fn arb_coords(n: usize) -> impl Strategy<Value = FloatCoords> {
    (
        prop::bool::ANY,
        -2.0f64..2.0,
        prop::collection::vec(-3.0f64..3.0, n),
    )
        .prop_map(|(neg, r, t)| FloatCoords {
            sign: if neg { -1 } else { 1 },
            r,
            t,
        })
}

fn arb_t(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(
        (-9i64..=9, 1i64..=5).prop_map(|(a, b)| coorbitsym::linalg::q(a, b)),
        n,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_shear_product_is_matrix_product(seed in any::<u64>(), t1 in arb_t(4), t2 in arb_t(4)) {
        let g = group(seed, 5);
        let p = g.shear_product(&t1, &t2).unwrap();
        // h(0, t) = (I + X(t))^{-1}, so the inverses multiply in reverse
        let lhs = g.shear_from_t(&t2).unwrap().matrix.mul(&g.shear_from_t(&t1).unwrap().matrix).unwrap();
        prop_assert_eq!(lhs, g.shear_from_t(&p).unwrap().matrix);
        let inv = g.shear_inverse(&t1).unwrap();
        prop_assert!(g.shear_product(&t1, &inv).unwrap().iter().all(|x| x.is_zero()));
        prop_assert!(g.shear_product(&inv, &t1).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn float_law_is_matrix_product(seed in any::<u64>(), a in arb_coords(3), b in arb_coords(3)) {
        let g = group(seed, 4);
        let ab = g.group_mul_f64(&a, &b);
        let want = matmul(&g.element_matrix_f64(&a), &g.element_matrix_f64(&b));
        prop_assert!(close_mat(&g.element_matrix_f64(&ab), &want));
        let id = g.group_mul_f64(&a, &g.group_inv_f64(&a));
        prop_assert_eq!(id.sign, 1);
        prop_assert!(id.r.abs() < 1e-12 && id.t.iter().all(|x| x.abs() < 1e-9));
    }

    #[test]
    fn scaling_conjugation_matches_matrices(seed in any::<u64>(), r in -2.0f64..2.0, t in prop::collection::vec(-3.0f64..3.0, 3)) {
        // h(r,0)^{-1} h(0,t) h(r,0) is the shear with coordinates Z̃_r t
        let g = group(seed, 4);
        let s = FloatCoords { sign: 1, r, t: vec![0.0; 3] };
        let h = FloatCoords { sign: 1, r: 0.0, t: t.clone() };
        let conj = g.group_mul_f64(&g.group_mul_f64(&g.group_inv_f64(&s), &h), &s);
        let z = g.conjugate_shear_by_scaling(r, &t);
        prop_assert!(conj.r.abs() < 1e-12);
        for (x, y) in conj.t.iter().zip(&z) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn orbit_map_round_trips(seed in any::<u64>(), h in arb_coords(3)) {
        let g = group(seed, 4);
        let xi = g.orbit_map(&h);
        let back = g.orbit_map_inverse(&xi).unwrap();
        prop_assert_eq!(back.sign, h.sign);
        prop_assert!((back.r - h.r).abs() < 1e-12);
        for (x, y) in back.t.iter().zip(&h.t) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs()));
        }
        // first row of h^{-1}
        let inv = g.element_matrix_f64(&g.group_inv_f64(&h));
        for (x, y) in xi.iter().zip(&inv[0]) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs()));
        }
    }
}
