//! Word balls of the generator net and the induced covering they define.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::expcoords::{ExpGroup, LogCoords};
use super::OracleConfig;
use crate::shearlet::{FloatCoords, ShearletGroup};

/// Grid cells adapted to left translation: at `r`-level `L` (cell center
/// `r_L`), a point `(r, u)` is filed under `e^{a_j (r_L - r)} u_j`, which is
/// the `v = Z̃_{-r}u` coordinate rescaled to that level. Left translates of
/// a small box are nearly axis-aligned boxes in these cells.
// sign, level and up to six shear coordinates
const KEY_LEN: usize = 8;
pub(crate) type CellKey = [i64; KEY_LEN];

#[derive(Debug, Clone)]
pub(crate) struct CellGrid {
    cell: f64,
    rates: Vec<f64>,
}

impl CellGrid {
    pub(crate) fn new(cell: f64, rates: &[f64]) -> Self {
        CellGrid {
            cell,
            rates: rates.to_vec(),
        }
    }

    fn level(&self, r: f64) -> i64 {
        (r / self.cell).floor() as i64
    }

    fn key_at(&self, x: &LogCoords, level: i64) -> CellKey {
        let rc = (level as f64 + 0.5) * self.cell;
        let mut key = [0i64; KEY_LEN];
        key[0] = i64::from(x.sign);
        key[1] = level;
        for (k, (a, u)) in self.rates.iter().zip(&x.u).enumerate() {
            key[k + 2] = ((a * (rc - x.r)).exp() * u / self.cell).floor() as i64;
        }
        key
    }

    pub(crate) fn key(&self, x: &LogCoords) -> CellKey {
        self.key_at(x, self.level(x.r))
    }

    /// Visits the cells within one step of `x`, level by level.
    pub(crate) fn for_each_neighbor(&self, x: &LogCoords, mut visit: impl FnMut(&CellKey)) {
        let l = self.level(x.r);
        let n = x.u.len();
        let count = 3usize.pow(n as u32);
        for level in l - 1..=l + 1 {
            let base = self.key_at(x, level);
            for code in 0..count {
                let mut key = base;
                let mut c = code;
                for j in 0..n {
                    key[j + 2] += (c % 3) as i64 - 1;
                    c /= 3;
                }
                visit(&key);
            }
        }
    }
}

/// Finite symmetric net of `W`: the grid `linspace(-δ, δ, res)` in every
/// exponential coordinate, without the identity, together with inverses.
pub fn generator_net(group: &ExpGroup, config: &OracleConfig) -> Vec<LogCoords> {
    let n = group.n();
    let res = config.net_resolution.max(2);
    let axis: Vec<f64> = (0..res)
        .map(|i| -config.step + 2.0 * config.step * i as f64 / (res - 1) as f64)
        .collect();
    let dims = n + 1;
    let mut net = Vec::new();
    let total = res.pow(dims as u32);
    for code in 0..total {
        let mut c = code;
        let mut v = Vec::with_capacity(dims);
        for _ in 0..dims {
            v.push(axis[c % res]);
            c /= res;
        }
        if v.iter().all(|x| x.abs() < 1e-15) {
            continue;
        }
        let x = LogCoords {
            sign: 1,
            r: v[0],
            u: v[1..].to_vec(),
        };
        if x.r != 0.0 {
            net.push(group.inv(&x));
        }
        net.push(x);
    }
    net
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Center {
    pub coords: FloatCoords,
    pub log: LogCoords,
    pub depth: u32,
}

/// Finite induced covering `Q_i = p(h_i U)` with `U` the box of half-width
/// `base_box` in exponential coordinates. The base box matches the
/// half-step separation of the centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringSample {
    pub centers: Vec<Center>,
    pub base_box: f64,
}

/// Breadth-first search from the identity over the generator net, up to
/// depth `config.radius`. A new point is dropped when its half-step cell is
/// already occupied.
pub fn word_ball(group: &ShearletGroup, config: &OracleConfig) -> CoveringSample {
    let eg = ExpGroup::new(group);
    word_ball_exp(&eg, config, config.radius).into_sample(&eg, config.step / 2.0)
}

pub(crate) struct LogBall {
    pub(crate) points: Vec<(LogCoords, u32)>,
}

impl LogBall {
    pub(crate) fn into_sample(self, eg: &ExpGroup, step: f64) -> CoveringSample {
        CoveringSample {
            centers: self
                .points
                .into_iter()
                .map(|(log, depth)| Center {
                    coords: eg.to_coords(&log),
                    log,
                    depth,
                })
                .collect(),
            base_box: step,
        }
    }
}

pub(crate) fn word_ball_exp(eg: &ExpGroup, config: &OracleConfig, radius: u32) -> LogBall {
    let net = generator_net(eg, config);
    let grid = CellGrid::new(config.step / 2.0, eg.rates());
    let origin = LogCoords::identity(eg.n());
    let mut seen: HashSet<CellKey> = HashSet::new();
    seen.insert(grid.key(&origin));
    let mut points = vec![(origin, 0u32)];
    let mut frontier = vec![0usize];
    for depth in 1..=radius {
        let mut next = Vec::new();
        for &i in &frontier {
            let x = points[i].0.clone();
            for g in &net {
                let y = eg.mul(&x, g);
                if seen.insert(grid.key(&y)) {
                    next.push(points.len());
                    points.push((y, depth));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    LogBall { points }
}

/// Corners, face centers and center of `U` (the `3^{d}` grid).
pub(crate) fn box_cloud(n: usize, half: f64) -> Vec<LogCoords> {
    let dims = n + 1;
    (0..3usize.pow(dims as u32))
        .map(|code| {
            let mut c = code;
            let mut v = Vec::with_capacity(dims);
            for _ in 0..dims {
                v.push(half * ((c % 3) as f64 - 1.0));
                c /= 3;
            }
            LogCoords {
                sign: 1,
                r: v[0],
                u: v[1..].to_vec(),
            }
        })
        .collect()
}

/// Spatial index over a set of box centers `h_i`, answering "which `i`
/// have `h_i^{-1} y ∈ scale·U`".
pub(crate) struct BoxIndex<'a> {
    eg: &'a ExpGroup,
    centers: &'a [LogCoords],
    half: f64,
    grid: CellGrid,
    cells: HashMap<CellKey, Vec<usize>>,
}

impl<'a> BoxIndex<'a> {
    pub(crate) fn new(eg: &'a ExpGroup, centers: &'a [LogCoords], half: f64) -> Self {
        // the cell must contain the left translate of the box at every level
        // offset inside one cell
        let amax = eg.rates().iter().fold(0.0f64, |m, a| m.max(a.abs()));
        let mut cell = half;
        for _ in 0..64 {
            let need = half * (amax * (cell / 2.0 + half)).exp();
            if cell >= need {
                break;
            }
            cell *= 1.25;
        }
        let grid = CellGrid::new(cell, eg.rates());
        let mut cells: HashMap<CellKey, Vec<usize>> = HashMap::new();
        for (i, c) in centers.iter().enumerate() {
            cells.entry(grid.key(c)).or_default().push(i);
        }
        BoxIndex {
            eg,
            centers,
            half,
            grid,
            cells,
        }
    }

    // `x^{-1} y ∈ U` without building the product
    fn contains(&self, x: &LogCoords, y: &LogCoords) -> bool {
        let dr = y.r - x.r;
        x.sign == y.sign
            && dr.abs() <= self.half
            && self
                .eg
                .rates()
                .iter()
                .zip(x.u.iter().zip(&y.u))
                .all(|(a, (ux, uy))| (uy - (a * dr).exp() * ux).abs() <= self.half)
    }

    pub(crate) fn containing(&self, y: &LogCoords, out: &mut Vec<usize>) {
        self.grid.for_each_neighbor(y, |key| {
            if let Some(ids) = self.cells.get(key) {
                for &i in ids {
                    if self.contains(&self.centers[i], y) {
                        out.push(i);
                    }
                }
            }
        });
    }
}

/// Pairs `(i, j)` with `h_i U ∩ φ(g_j U) ≠ ∅`, detected on point clouds:
/// a cloud point of one set inside the slightly enlarged other set.
pub(crate) fn intersections(
    eg: &ExpGroup,
    q_centers: &[LogCoords],
    p_centers: &[LogCoords],
    half: f64,
    forward: impl Fn(&LogCoords) -> Option<LogCoords>,
    backward: impl Fn(&LogCoords) -> Option<LogCoords>,
) -> HashSet<(usize, usize)> {
    const SLACK: f64 = 1.25;
    let cloud = box_cloud(eg.n(), half);
    let q_index = BoxIndex::new(eg, q_centers, SLACK * half);
    let p_index = BoxIndex::new(eg, p_centers, SLACK * half);
    let mut pairs = HashSet::new();
    let mut hits = Vec::new();
    for (j, g) in p_centers.iter().enumerate() {
        for w in &cloud {
            if let Some(y) = forward(&eg.mul(g, w)) {
                hits.clear();
                q_index.containing(&y, &mut hits);
                pairs.extend(hits.iter().map(|&i| (i, j)));
            }
        }
    }
    for (i, h) in q_centers.iter().enumerate() {
        for w in &cloud {
            if let Some(y) = backward(&eg.mul(h, w)) {
                hits.clear();
                p_index.containing(&y, &mut hits);
                pairs.extend(hits.iter().map(|&j| (i, j)));
            }
        }
    }
    pairs
}

impl CoveringSample {
    /// Adjacency lists of `h_i U ∩ h_j U ≠ ∅`; every center is adjacent to
    /// itself.
    pub fn intersection_graph(&self, group: &ShearletGroup) -> Vec<Vec<usize>> {
        let eg = ExpGroup::new(group);
        let logs: Vec<LogCoords> = self.centers.iter().map(|c| c.log.clone()).collect();
        let pairs = intersections(
            &eg,
            &logs,
            &logs,
            self.base_box,
            |x| Some(x.clone()),
            |x| Some(x.clone()),
        );
        let mut adj = vec![Vec::new(); logs.len()];
        for (i, j) in pairs {
            adj[i].push(j);
            if i != j {
                adj[j].push(i);
            }
        }
        for (i, list) in adj.iter_mut().enumerate() {
            list.push(i);
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}
