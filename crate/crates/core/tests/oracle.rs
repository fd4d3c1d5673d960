use coorbitsym::linalg::{q, RationalMatrix};
use coorbitsym::oracle::*;
use coorbitsym::shearlet::{FloatCoords, ShearletGroup};
use proptest::prelude::*;

fn groups() -> Vec<ShearletGroup> {
    vec![
        ShearletGroup::standard(&[q(1, 2)]).unwrap(),
        ShearletGroup::standard(&[q(0, 1), q(1, 1)]).unwrap(),
        ShearletGroup::toeplitz(&q(1, 3), 3).unwrap(),
        ShearletGroup::standard(&[q(2, 1), q(-1, 1)]).unwrap(),
    ]
}

fn arb_element() -> impl Strategy<Value = FloatCoords> {
    (-1.5f64..1.5, prop::collection::vec(-2.0f64..2.0, 2)).prop_map(|(r, t)| FloatCoords {
        sign: 1,
        r,
        t,
    })
}

fn finite(d: WordDistance) -> u32 {
    d.finite().expect("finite distance")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_symmetric(k in 0usize..4, a in arb_element(), b in arb_element()) {
        let g = &groups()[k];
        let n = g.n();
        let (a, b) = (FloatCoords { t: a.t[..n].to_vec(), ..a }, FloatCoords { t: b.t[..n].to_vec(), ..b });
        let cfg = OracleConfig::default();
        let ab = finite(word_distance_estimate(g, &cfg, &a, &b));
        let ba = finite(word_distance_estimate(g, &cfg, &b, &a));
        prop_assert!(ab.abs_diff(ba) <= 1);
    }

    #[test]
    fn triangle_inequality(k in 0usize..4, a in arb_element(), b in arb_element(), c in arb_element()) {
        let g = &groups()[k];
        let n = g.n();
        let cut = |x: FloatCoords| FloatCoords { t: x.t[..n].to_vec(), ..x };
        let (a, b, c) = (cut(a), cut(b), cut(c));
        let cfg = OracleConfig::default();
        let d = |x: &FloatCoords, y: &FloatCoords| finite(word_distance_estimate(g, &cfg, x, y));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn left_translation_preserves_distance(k in 0usize..4, a in arb_element(), b in arb_element(), h in arb_element()) {
        let g = &groups()[k];
        let n = g.n();
        let cut = |x: FloatCoords| FloatCoords { t: x.t[..n].to_vec(), ..x };
        let (a, b, h) = (cut(a), cut(b), cut(h));
        let cfg = OracleConfig::default();
        let d0 = finite(word_distance_estimate(g, &cfg, &a, &b));
        let d1 = finite(word_distance_estimate(g, &cfg, &g.group_mul_f64(&h, &a), &g.group_mul_f64(&h, &b)));
        prop_assert!(d0.abs_diff(d1) <= 1);
    }

    #[test]
    fn phi_is_a_homomorphism_in_a(h in arb_element(), z in -3i64..=3, w in 1i64..=3) {
        let g = ShearletGroup::standard(&[q(1, 2), q(1, 3)]).unwrap();
        let h = FloatCoords { t: h.t[..2].to_vec(), ..h };
        let a = RationalMatrix::from_i64(&[&[1, z, 0], &[0, w, 0], &[0, 1, 2]]);
        let b = RationalMatrix::from_i64(&[&[2, 0, 1], &[0, 1, 1], &[0, 0, 3]]);
        let ab = a.mul(&b).unwrap();
        let direct = phi_a(&g, &ab, &h).unwrap();
        let composed = phi_a(&g, &a, &phi_a(&g, &b, &h).unwrap()).unwrap();
        prop_assert_eq!(direct.sign, composed.sign);
        prop_assert!((direct.r - composed.r).abs() < 1e-10);
        for (x, y) in direct.t.iter().zip(&composed.t) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
        }
    }
}

fn cfg(radius: u32) -> OracleConfig {
    OracleConfig {
        radius,
        ..OracleConfig::default()
    }
}

#[test]
fn compatible_2d_distortion_is_bounded() {
    let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
    let a = RationalMatrix::from_i64(&[&[1, 0], &[0, 2]]);
    let rep = distortion_scan(&g, &cfg(12), &a).unwrap();
    let radii: Vec<u32> = rep.per_scale.iter().map(|s| s.radius).collect();
    assert_eq!(radii, vec![6, 9, 12]);
    assert!(!rep.monotone_growth_flag, "{rep:?}");
    assert!(rep
        .per_scale
        .iter()
        .all(|s| s.max_ratio <= 3.0 && s.pairs > 300));
}

#[test]
fn flat_direction_push_is_flagged() {
    // λ = (0, 1): B = [[1, 1], [0, 1]] pushes the λ=1 coordinate into the λ=0 one
    let g = ShearletGroup::standard(&[q(0, 1), q(1, 1)]).unwrap();
    let a = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
    let rep = distortion_scan(&g, &cfg(12), &a).unwrap();
    assert!(rep.monotone_growth_flag, "{rep:?}");
}

#[test]
fn coverings_compatible_2d_counts_stabilize() {
    let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
    let a = RationalMatrix::from_i64(&[&[1, 0], &[0, 2]]);
    let counts: Vec<IntersectionCounts> = [6, 9, 12]
        .iter()
        .map(|&r| weak_equivalence_count(&g, &cfg(r), &a).unwrap())
        .collect();
    for w in counts.windows(2) {
        assert!(
            w[1].n_qp <= w[0].n_qp + 1 && w[1].n_pq <= w[0].n_pq + 1,
            "{counts:?}"
        );
    }
    assert!(counts.windows(2).all(|w| w[1].centers > w[0].centers));
}

#[test]
fn coverings_identity_3d_symmetric() {
    let g = ShearletGroup::standard(&[q(0, 1), q(1, 1)]).unwrap();
    let c = weak_equivalence_count(&g, &cfg(3), &RationalMatrix::identity(3)).unwrap();
    assert_eq!(c.n_qp, c.n_pq);
}

#[test]
fn coverings_incompatible_3d_counts_grow() {
    // the 3D ball is expensive, so the ladder is 3/4/5 instead of 6/9/12
    let g = ShearletGroup::standard(&[q(0, 1), q(1, 1)]).unwrap();
    let bad = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
    let good = RationalMatrix::diagonal(&[q(1, 1), q(2, 1), q(1, 2)]);
    let run = |a: &RationalMatrix| -> Vec<usize> {
        [3, 4, 5]
            .iter()
            .map(|&r| {
                let c = weak_equivalence_count(&g, &cfg(r), a).unwrap();
                c.n_qp.max(c.n_pq)
            })
            .collect()
    };
    let bad_counts = run(&bad);
    assert!(bad_counts.windows(2).all(|w| w[1] > w[0]), "{bad_counts:?}");
    let good_counts = run(&good);
    let growth = |v: &[usize]| v[2] as f64 / v[0] as f64;
    assert!(
        growth(&good_counts) < growth(&bad_counts),
        "{good_counts:?} vs {bad_counts:?}"
    );
}
