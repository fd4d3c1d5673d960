//! Floating-point coarse-geometry oracle: word metrics on `H`, the induced
//! map `φ_A`, empirical quasi-isometry distortion and covering intersection
//! counts. Conclusions drawn from it are qualitative.

mod ball;
mod expcoords;
mod metric;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use ball::{generator_net, word_ball, Center, CoveringSample};
pub use expcoords::{ExpGroup, LogCoords};
pub use metric::{WordDistance, WordMetric};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::shearlet::{FloatCoords, ShearletGroup};
use crate::symmetry::decompose_s_o;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleConfig {
    /// Half-width `δ` of the unit box `W`.
    pub step: f64,
    pub radius: u32,
    pub samples: u32,
    pub seed: u64,
    pub net_resolution: usize,
    /// Radius ladder for `distortion_scan`; empty means `R/2, 3R/4, R`.
    pub scales: Vec<u32>,
    /// Relative increase of the max ratio between consecutive scales above
    /// which growth counts.
    pub growth_threshold: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            step: 0.25,
            radius: 12,
            samples: 400,
            seed: 42,
            net_resolution: 3,
            scales: Vec::new(),
            growth_threshold: 0.5,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(format!("oracle config: {m}")));
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad("step must be positive");
        }
        if self.radius < 1 {
            return bad("radius must be at least 1");
        }
        if self.samples < 1 {
            return bad("samples must be at least 1");
        }
        if self.net_resolution < 2 {
            return bad("net_resolution must be at least 2");
        }
        if self.scales.iter().any(|&s| s == 0 || s > self.radius) {
            return bad("scales must lie in 1..=radius");
        }
        Ok(())
    }

    pub fn ladder(&self) -> Vec<u32> {
        let mut s = if self.scales.is_empty() {
            vec![self.radius / 2, 3 * self.radius / 4, self.radius]
        } else {
            self.scales.clone()
        };
        s.retain(|&x| x > 0);
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Search cap for word distances, as in "no path within 4R steps".
    pub fn distance_cap(&self) -> u32 {
        4 * self.radius
    }
}

fn metric_for(eg: &ExpGroup, config: &OracleConfig) -> WordMetric {
    WordMetric::new(eg.rates(), config.step)
}

fn log_distance(
    eg: &ExpGroup,
    metric: &WordMetric,
    x: &LogCoords,
    y: &LogCoords,
    cap: u32,
) -> WordDistance {
    if x.sign != y.sign {
        return WordDistance::Infinite;
    }
    let forward = metric.length(&eg.between(x, y), cap);
    let backward = metric.length(&eg.between(y, x), cap);
    match (forward, backward) {
        (Some(a), Some(b)) => WordDistance::Finite(a.min(b)),
        (Some(a), None) | (None, Some(a)) => WordDistance::Finite(a),
        (None, None) => WordDistance::Infinite,
    }
}

/// Word distance `d_W(g1, g2)` for `W` the box of half-width `config.step`
/// in exponential coordinates; `Infinite` across components or beyond
/// `4·radius`.
pub fn word_distance_estimate(
    group: &ShearletGroup,
    config: &OracleConfig,
    g1: &FloatCoords,
    g2: &FloatCoords,
) -> WordDistance {
    let eg = ExpGroup::new(group);
    let metric = metric_for(&eg, config);
    log_distance(
        &eg,
        &metric,
        &eg.from_coords(g1),
        &eg.from_coords(g2),
        config.distance_cap(),
    )
}

/// `h ↦ p^{-1}(A^{-T} p(h))`, prepared once per matrix.
#[derive(Debug, Clone)]
pub struct PhiMap {
    m: Vec<Vec<f64>>,
}

impl PhiMap {
    pub fn new(a: &RationalMatrix) -> Result<Self> {
        Ok(PhiMap {
            m: a.inverse()?.transpose().to_f64(),
        })
    }

    /// From a float matrix already equal to `A^{-T}`.
    pub fn from_inverse_transpose(m: Vec<Vec<f64>>) -> Self {
        PhiMap { m }
    }

    pub fn apply(&self, group: &ShearletGroup, h: &FloatCoords) -> Result<FloatCoords> {
        let xi = group.orbit_map(h);
        let image: Vec<f64> = self
            .m
            .iter()
            .map(|row| row.iter().zip(&xi).map(|(a, x)| a * x).sum())
            .collect();
        group.orbit_map_inverse(&image)
    }

    fn apply_log(&self, group: &ShearletGroup, eg: &ExpGroup, x: &LogCoords) -> Result<LogCoords> {
        Ok(eg.from_coords(&self.apply(group, &eg.to_coords(x))?))
    }
}

pub fn phi_a(group: &ShearletGroup, a: &RationalMatrix, h: &FloatCoords) -> Result<FloatCoords> {
    PhiMap::new(a)?.apply(group, h)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleReport {
    #[serde(rename = "R")]
    pub radius: u32,
    pub max_ratio: f64,
    #[serde(rename = "L")]
    pub slope: f64,
    #[serde(rename = "C")]
    pub intercept: f64,
    pub pairs: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    #[serde(rename = "scales")]
    pub per_scale: Vec<ScaleReport>,
    #[serde(rename = "flag")]
    pub monotone_growth_flag: bool,
    pub config: OracleConfig,
}

fn pair_rng(seed: u64, scale: u32, index: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(scale) << 32) | u64::from(index));
    rng
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    if points.is_empty() {
        return (0.0, 0.0);
    }
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return (0.0, my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Multiplicative distortion of `φ_A` on sampled pairs of the word ball at
/// each scale of the ladder. Pair `i` at scale `R` is drawn from its own
/// random stream: a center `g1` of the ball of radius `R`, and
/// `g2 = g1·w_1⋯w_k` for `k ≤ R` random net letters.
pub fn distortion_scan(
    group: &ShearletGroup,
    config: &OracleConfig,
    a: &RationalMatrix,
) -> Result<DistortionReport> {
    config.validate()?;
    // A^{-T}O = O fails on an open set as soon as A leaves S(O)
    decompose_s_o(a)?;
    let phi = PhiMap::new(a)?;
    let eg = ExpGroup::new(group);
    let metric = metric_for(&eg, config);
    let ladder = config.ladder();
    let top = ladder.last().copied().unwrap_or(config.radius);
    let ball = ball::word_ball_exp(&eg, config, top);
    let net = generator_net(&eg, config);
    // images may be much farther apart than the pairs themselves
    let cap = 64 * config.radius.max(1);
    let mut per_scale = Vec::with_capacity(ladder.len());
    for &scale in &ladder {
        let pool: Vec<&LogCoords> = ball
            .points
            .iter()
            .filter(|(_, depth)| *depth <= scale)
            .map(|(x, _)| x)
            .collect();
        let mut max_ratio: f64 = 1.0;
        let mut fit = Vec::with_capacity(config.samples as usize);
        for i in 0..config.samples {
            let mut rng = pair_rng(config.seed, scale, i);
            let g1 = pool[rng.gen_range(0..pool.len())].clone();
            let k = rng.gen_range(1..=scale);
            let mut g2 = g1.clone();
            for _ in 0..k {
                g2 = eg.mul(&g2, &net[rng.gen_range(0..net.len())]);
            }
            let d = match log_distance(&eg, &metric, &g1, &g2, cap) {
                WordDistance::Finite(x) if x > 0 => x,
                _ => continue,
            };
            let p1 = phi.apply_log(group, &eg, &g1)?;
            let p2 = phi.apply_log(group, &eg, &g2)?;
            let dp = match log_distance(&eg, &metric, &p1, &p2, cap) {
                WordDistance::Finite(x) => x.max(1),
                WordDistance::Infinite => cap + 1,
            };
            let (d, dp) = (f64::from(d), f64::from(dp));
            max_ratio = max_ratio.max(dp / d).max(d / dp);
            fit.push((d, dp));
        }
        let (slope, intercept) = least_squares(&fit);
        per_scale.push(ScaleReport {
            radius: scale,
            max_ratio,
            slope,
            intercept,
            pairs: fit.len() as u32,
        });
    }
    let monotone_growth_flag = per_scale.len() >= 2
        && per_scale
            .windows(2)
            .all(|w| w[1].max_ratio > (1.0 + config.growth_threshold) * w[0].max_ratio);
    Ok(DistortionReport {
        per_scale,
        monotone_growth_flag,
        config: config.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCounts {
    /// `max_i |{j : P_j ∩ Q_i ≠ ∅}|`.
    pub n_qp: usize,
    /// `max_j |{i : Q_i ∩ P_j ≠ ∅}|`.
    pub n_pq: usize,
    pub centers: usize,
}

/// Intersection counts between the induced covering `Q_i = p(h_i U)` of
/// the word ball and `P_i = A^{-T} Q_i`.
pub fn weak_equivalence_count(
    group: &ShearletGroup,
    config: &OracleConfig,
    a: &RationalMatrix,
) -> Result<IntersectionCounts> {
    config.validate()?;
    decompose_s_o(a)?;
    let eg = ExpGroup::new(group);
    let phi = PhiMap::new(a)?;
    let phi_inv = PhiMap::new(&a.inverse()?)?;
    let ball = ball::word_ball_exp(&eg, config, config.radius);
    let centers: Vec<LogCoords> = ball.points.into_iter().map(|(x, _)| x).collect();
    let pairs = ball::intersections(
        &eg,
        &centers,
        &centers,
        config.step / 2.0,
        |x| phi.apply_log(group, &eg, x).ok(),
        |x| phi_inv.apply_log(group, &eg, x).ok(),
    );
    let mut per_q = vec![0usize; centers.len()];
    let mut per_p = vec![0usize; centers.len()];
    for (i, j) in pairs {
        per_q[i] += 1;
        per_p[j] += 1;
    }
    Ok(IntersectionCounts {
        n_qp: per_q.into_iter().max().unwrap_or(0),
        n_pq: per_p.into_iter().max().unwrap_or(0),
        centers: centers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn config_defaults_validate() {
        let c = OracleConfig::default();
        c.validate().unwrap();
        assert_eq!(c.ladder(), vec![6, 9, 12]);
        let bad = OracleConfig {
            net_resolution: 1,
            ..c
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn radius_zero_and_one_balls() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        let cfg = OracleConfig::default();
        let eg = ExpGroup::new(&g);
        let b0 = ball::word_ball_exp(&eg, &cfg, 0);
        assert_eq!(b0.points.len(), 1);
        let b1 = ball::word_ball_exp(&eg, &cfg, 1);
        assert!(b1.points[1..].iter().all(|(_, d)| *d == 1));
        assert!(b1.points.len() > 1);
    }

    #[test]
    fn phi_identity() {
        let g = ShearletGroup::toeplitz(&q(1, 2), 3).unwrap();
        let h = FloatCoords {
            sign: 1,
            r: 0.7,
            t: vec![1.0, -2.0],
        };
        let out = phi_a(&g, &RationalMatrix::identity(3), &h).unwrap();
        assert!((out.r - h.r).abs() < 1e-12);
        assert!(out.t.iter().zip(&h.t).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-10 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn distance_basics() {
        let g = ShearletGroup::standard(&[q(1, 2), q(1, 3)]).unwrap();
        let cfg = OracleConfig::default();
        let eg = ExpGroup::new(&g);
        let g1 = FloatCoords {
            sign: 1,
            r: 0.4,
            t: vec![1.5, -0.5],
        };
        assert_eq!(
            word_distance_estimate(&g, &cfg, &g1, &g1),
            WordDistance::Finite(0)
        );
        for w in generator_net(&eg, &cfg) {
            let g2 = eg.to_coords(&eg.mul(&eg.from_coords(&g1), &w));
            assert_eq!(
                word_distance_estimate(&g, &cfg, &g1, &g2),
                WordDistance::Finite(1)
            );
        }
        let neg = FloatCoords {
            sign: -1,
            ..g1.clone()
        };
        assert_eq!(
            word_distance_estimate(&g, &cfg, &g1, &neg),
            WordDistance::Infinite
        );
        let far = FloatCoords {
            sign: 1,
            r: 100.0,
            t: vec![0.0, 0.0],
        };
        assert_eq!(
            word_distance_estimate(&g, &cfg, &g1, &far),
            WordDistance::Infinite
        );
    }

    #[test]
    fn ball_grows_inside_identity_component() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        let mut counts = Vec::new();
        for radius in 1..=6 {
            let cfg = OracleConfig {
                radius,
                ..OracleConfig::default()
            };
            let ball = word_ball(&g, &cfg);
            assert!(ball
                .centers
                .iter()
                .all(|c| c.coords.sign == 1 && c.depth <= radius));
            assert_eq!(ball.base_box, cfg.step / 2.0);
            counts.push(ball.centers.len());
        }
        assert!(counts.windows(2).all(|w| w[1] > w[0]), "{counts:?}");
    }

    #[test]
    fn intersection_graph_is_symmetric_and_reflexive() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        let cfg = OracleConfig {
            radius: 3,
            ..OracleConfig::default()
        };
        let ball = word_ball(&g, &cfg);
        let adj = ball.intersection_graph(&g);
        for (i, list) in adj.iter().enumerate() {
            assert!(list.contains(&i));
            assert!(list.iter().all(|&j| adj[j].contains(&i)));
        }
    }

    #[test]
    fn phi_of_block_diagonal_matches_closed_form() {
        // φ(h(r, t)) = h(r, e^{-λr} B^{-T} e^{λr} t) with e^{λr} = diag(e^{λ_j r})
        let g = ShearletGroup::standard(&[q(1, 2), q(1, 3)]).unwrap();
        let b = [[2.0, 5.0], [0.0, 3.0]];
        let a = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 5], &[0, 0, 3]]);
        let lam = g.lambdas_f64();
        // B^{-T} for upper-triangular B
        let bit = [
            [1.0 / b[0][0], 0.0],
            [-b[0][1] / (b[0][0] * b[1][1]), 1.0 / b[1][1]],
        ];
        for (r, t) in [(0.0, [1.0, 2.0]), (0.9, [-0.3, 4.0]), (-1.7, [2.5, -1.0])] {
            let h = FloatCoords {
                sign: 1,
                r,
                t: t.to_vec(),
            };
            let out = phi_a(&g, &a, &h).unwrap();
            let scaled: Vec<f64> = (0..2).map(|j| (lam[j] * r).exp() * t[j]).collect();
            let want: Vec<f64> = (0..2)
                .map(|i| (-lam[i] * r).exp() * (bit[i][0] * scaled[0] + bit[i][1] * scaled[1]))
                .collect();
            assert!(close(out.r, r));
            assert!(
                close(out.t[0], want[0]) && close(out.t[1], want[1]),
                "{out:?} {want:?}"
            );
        }
    }

    #[test]
    fn phi_of_scalar_matrix() {
        // A = 2I: r' = r - ln 2, t'_j = 2^{λ_j - 1} t_j
        let g = ShearletGroup::toeplitz(&q(1, 3), 3).unwrap();
        let lam = g.lambdas_f64();
        let a = RationalMatrix::diagonal(&[q(2, 1), q(2, 1), q(2, 1)]);
        let h = FloatCoords {
            sign: -1,
            r: 0.6,
            t: vec![1.25, -3.0],
        };
        let out = phi_a(&g, &a, &h).unwrap();
        assert_eq!(out.sign, -1);
        assert!(close(out.r, 0.6 - 2f64.ln()));
        for j in 0..2 {
            assert!(close(out.t[j], 2f64.powf(lam[j] - 1.0) * h.t[j]));
        }
    }

    #[test]
    fn phi_of_one_by_one_block() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        let a = RationalMatrix::from_i64(&[&[1, 0], &[0, 3]]);
        let h = FloatCoords {
            sign: 1,
            r: 1.3,
            t: vec![6.0],
        };
        let out = phi_a(&g, &a, &h).unwrap();
        assert!(close(out.r, 1.3) && close(out.t[0], 2.0));
    }

    #[test]
    fn phi_reports_orbit_exit() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        // A^{-T} = [[1, -1], [0, 1]] sends (1, 1) to (0, 1)
        let a = RationalMatrix::from_i64(&[&[1, 0], &[1, 1]]);
        let h = FloatCoords {
            sign: 1,
            r: 0.0,
            t: vec![1.0],
        };
        assert!(matches!(phi_a(&g, &a, &h), Err(Error::Orbit(_))));
    }

    fn small(radius: u32) -> OracleConfig {
        OracleConfig {
            radius,
            samples: 60,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn identity_has_no_distortion() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        let rep = distortion_scan(&g, &small(6), &RationalMatrix::identity(2)).unwrap();
        assert!(!rep.monotone_growth_flag);
        assert_eq!(rep.per_scale.len(), 3);
        for s in &rep.per_scale {
            assert_eq!(s.max_ratio, 1.0);
            assert!(close(s.slope, 1.0) && s.intercept.abs() < 1e-9);
        }
    }

    #[test]
    fn left_translation_is_nearly_isometric() {
        // -diag(2, 1, 2)·(I + X(1, -3)) lies in H for λ = (0, 1)
        let g = ShearletGroup::standard(&[q(0, 1), q(1, 1)]).unwrap();
        let shear = g.shear_from_t(&[q(1, 1), q(-3, 1)]).unwrap().matrix;
        let d = RationalMatrix::diagonal(&[q(-2, 1), q(-1, 1), q(-2, 1)]);
        let a = d.mul(&shear).unwrap();
        let rep = distortion_scan(&g, &small(6), &a).unwrap();
        for s in &rep.per_scale {
            assert!(s.max_ratio <= 2.0, "{rep:?}");
        }
        assert!(!rep.monotone_growth_flag);
    }

    #[test]
    fn scan_is_deterministic() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        let a = RationalMatrix::from_i64(&[&[1, 0], &[0, 2]]);
        let one = distortion_scan(&g, &small(4), &a).unwrap();
        let two = distortion_scan(&g, &small(4), &a).unwrap();
        assert_eq!(one, two);
        let json = serde_json::to_value(&one).unwrap();
        assert!(json["scales"][0]["R"].is_u64() && json["flag"].is_boolean());
        assert_eq!(json["config"]["seed"], 42);
    }

    #[test]
    fn identity_coverings_are_symmetric() {
        let g = ShearletGroup::standard(&[q(1, 2)]).unwrap();
        let c = weak_equivalence_count(&g, &small(4), &RationalMatrix::identity(2)).unwrap();
        assert_eq!(c.n_qp, c.n_pq);
        assert!(c.n_qp >= 1);
    }
}
