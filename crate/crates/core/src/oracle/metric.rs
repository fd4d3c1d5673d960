//! Word length for the generating set `W ∪ W^{-1}`, where `W` is the box
//! `|r| ≤ δ, |u_j| ≤ δ` in exponential coordinates.
//!
//! A word `w_1 ⋯ w_n` multiplies out to `(Σ r_k, Σ_k Z̃_{s_k} u_k)` with
//! `s_k = r_{k+1} + .. + r_n`. So `x = (R, T)` has length at most `n` iff
//! some path `R = s_0, s_1, .., s_n = 0` with steps of size at most `δ`
//! has capacity `δ Σ_k e^{a_j s_k} ≥ |T_j|` in every coordinate. Using a
//! letter from `W^{-1}` on a descending step raises its weight to
//! `e^{a_j s_{k-1}}`.
//!
//! When all rates `a_j` share a sign, the tent path that climbs (or dives)
//! at full speed and returns at full speed dominates every other path
//! pointwise, and the length below is exact. Mixed signs fall back to a
//! family of one-turn paths, giving an upper bound.

use serde::{Deserialize, Serialize};

use super::expcoords::LogCoords;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WordDistance {
    Finite(u32),
    Infinite,
}

impl WordDistance {
    pub fn finite(self) -> Option<u32> {
        match self {
            WordDistance::Finite(n) => Some(n),
            WordDistance::Infinite => None,
        }
    }
}

impl Serialize for WordDistance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            WordDistance::Finite(n) => s.serialize_u32(*n),
            WordDistance::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

impl<'de> Deserialize<'de> for WordDistance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(WordDistance::Finite(n)),
            Raw::S(s) if s == "INFINITE" => Ok(WordDistance::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad distance {s:?}"))),
        }
    }
}

const REL_TOL: f64 = 1e-9;

/// `Σ_{k=1}^m e^{bk}`.
fn geometric(b: f64, m: u32) -> f64 {
    if m == 0 {
        return 0.0;
    }
    if b.abs() < 1e-12 {
        return f64::from(m);
    }
    b.exp() * (b * f64::from(m)).exp_m1() / b.exp_m1()
}

#[derive(Debug, Clone)]
pub struct WordMetric {
    rates: Vec<f64>,
    step: f64,
}

impl WordMetric {
    pub fn new(rates: &[f64], step: f64) -> Self {
        WordMetric {
            rates: rates.to_vec(),
            step,
        }
    }

    /// Capacity `Σ_k e^{a max(s_{k-1}, s_k)}` (in units of `δ`) of the tent
    /// `s_k = min(R + kδ, (n-k)δ)`.
    fn tent(&self, a: f64, r: f64, n: u32) -> f64 {
        let d = self.step;
        let x = r / d;
        let peak = ((f64::from(n) - x) / 2.0 + 1e-12)
            .floor()
            .clamp(0.0, f64::from(n)) as u32;
        let up = (a * r).exp() * geometric(a * d, peak);
        if peak == n {
            return up;
        }
        let top = (r + f64::from(peak) * d).max(f64::from(n - peak - 1) * d);
        up + (a * top).exp() + geometric(a * d, n - peak - 1)
    }

    fn covers(&self, capacity: f64, target: f64) -> bool {
        self.step * capacity >= target.abs() * (1.0 - REL_TOL) - 1e-12
    }

    fn feasible(&self, x: &LogCoords, n: u32) -> bool {
        if x.r.abs() > f64::from(n) * self.step * (1.0 + REL_TOL) + 1e-12 {
            return false;
        }
        let all_up = self.rates.iter().all(|a| *a >= 0.0);
        let all_down = self.rates.iter().all(|a| *a <= 0.0);
        if all_up {
            return self
                .rates
                .iter()
                .zip(&x.u)
                .all(|(a, t)| self.covers(self.tent(*a, x.r, n), *t));
        }
        if all_down {
            return self
                .rates
                .iter()
                .zip(&x.u)
                .all(|(a, t)| self.covers(self.tent(-a, -x.r, n), *t));
        }
        (0..=n).any(|p| {
            [1.0, -1.0]
                .iter()
                .any(|&dir| self.one_turn_covers(x, n, p, dir))
        })
    }

    /// Path: `p` full-speed steps in direction `dir`, then the extreme
    /// path in the opposite direction back to 0. Letters all from `W`.
    fn one_turn_covers(&self, x: &LogCoords, n: u32, p: u32, dir: f64) -> bool {
        let d = self.step;
        let top = x.r + dir * f64::from(p) * d;
        let m = n - p;
        if top.abs() > f64::from(m) * d * (1.0 + REL_TOL) + 1e-12 {
            return false;
        }
        let levels: Vec<f64> = (1..=p)
            .map(|k| x.r + dir * f64::from(k) * d)
            .chain((1..=m).map(|i| {
                let away = top - dir * f64::from(i) * d;
                let back = -dir * f64::from(m - i) * d;
                if dir > 0.0 {
                    away.max(back)
                } else {
                    away.min(back)
                }
            }))
            .collect();
        self.rates.iter().zip(&x.u).all(|(a, t)| {
            let cap: f64 = levels.iter().map(|s| (a * s).exp()).sum();
            self.covers(cap, *t)
        })
    }

    /// Length of `x` in the word metric, or `None` above `cap`.
    pub fn length(&self, x: &LogCoords, cap: u32) -> Option<u32> {
        if x.r == 0.0 && x.u.iter().all(|u| *u == 0.0) {
            return Some(0);
        }
        let lo = ((x.r.abs() / self.step) * (1.0 - REL_TOL)).ceil().max(1.0) as u32;
        if lo > cap || !self.feasible(x, cap) {
            return None;
        }
        let (mut lo, mut hi) = (lo, cap);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.feasible(x, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }
}
