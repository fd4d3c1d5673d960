//! Regression suite of worked examples with known answers: the 2D groups,
//! the standard groups over all multiplicity patterns, and the Toeplitz
//! groups. Expected values are computed here from closed formulas, never
//! from the deciders under test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::subspace::flatten;
use crate::linalg::{express_in_span, q, Rational, RationalMatrix};
use crate::shearlet::ShearletGroup;
use crate::symmetry::{
    is_coorbit_compatible, is_in_normalizer_s, symmetry_group_report, toeplitz_automorphism_matrix,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub passed: bool,
    pub total: usize,
    pub failed: Vec<String>,
    pub fixtures: Vec<FixtureResult>,
}

impl FixtureReport {
    fn from_results(fixtures: Vec<FixtureResult>) -> Self {
        let failed: Vec<String> = fixtures
            .iter()
            .filter(|f| !f.passed)
            .map(|f| f.name.clone())
            .collect();
        FixtureReport {
            passed: failed.is_empty(),
            total: fixtures.len(),
            failed,
            fixtures,
        }
    }
}

fn result(
    name: impl Into<String>,
    expected: impl ToString,
    actual: impl ToString,
) -> FixtureResult {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    FixtureResult {
        name: name.into(),
        passed: expected == actual,
        expected,
        actual,
    }
}

fn failure(
    name: impl Into<String>,
    expected: impl ToString,
    err: impl std::fmt::Display,
) -> FixtureResult {
    FixtureResult {
        name: name.into(),
        passed: false,
        expected: expected.to_string(),
        actual: format!("error: {err}"),
    }
}

/// All nonsingular 2×2 matrices with entries in `-2..=2`.
pub fn integer_grid_2x2() -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for code in 0..625 {
        let e: Vec<i64> = (0..4).map(|k| (code / 5i64.pow(k)) % 5 - 2).collect();
        if e[0] * e[3] - e[1] * e[2] != 0 {
            out.push(RationalMatrix::from_i64(&[&[e[0], e[1]], &[e[2], e[3]]]));
        }
    }
    out
}

/// `S_c`: compatible exactly for the upper-triangular invertible matrices.
pub fn two_dimensional_shearlet() -> Vec<FixtureResult> {
    let mut out = Vec::new();
    for c in [q(0, 1), q(1, 2), q(1, 1), q(-1, 1), q(3, 1)] {
        let g = match ShearletGroup::standard(std::slice::from_ref(&c)) {
            Ok(g) => g,
            Err(e) => {
                out.push(failure(format!("S_{c} grid"), 0, e));
                continue;
            }
        };
        let grid = integer_grid_2x2();
        let mismatches = grid
            .iter()
            .filter(|a| match is_coorbit_compatible(&g, a) {
                Ok(v) => v.compatible != a[(1, 0)].is_zero(),
                Err(_) => true,
            })
            .count();
        out.push(result(
            format!("S_{c} grid of {} matrices: mismatches", grid.len()),
            0,
            mismatches,
        ));
    }
    if let Ok(g) = ShearletGroup::standard(&[q(1, 2)]) {
        let a = RationalMatrix::from_i64(&[&[1, 0], &[0, 5]]);
        match is_coorbit_compatible(&g, &a) {
            Ok(v) => out.push(result("S_1/2 diag(1, 5)", true, v.compatible)),
            Err(e) => out.push(failure("S_1/2 diag(1, 5)", true, e)),
        }
    }
    out
}

/// Does `A` normalize the Lie algebra spanned by `basis`? Decided by
/// conjugating each basis element.
pub fn normalizes_span(a: &RationalMatrix, basis: &[RationalMatrix]) -> bool {
    let Ok(a_inv) = a.inverse() else {
        return false;
    };
    let flat: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
    basis.iter().all(|x| {
        a.mul(x)
            .and_then(|ax| ax.mul(&a_inv))
            .map(|c| express_in_span(&flat, &flatten(&c)).is_some())
            .unwrap_or(false)
    })
}

/// Diagonal group: the reflection times a diagonal matrix normalizes `D`;
/// a shear does not. Similitude group: `diag(1, 2)` is outside `N(H)`,
/// so the normalizer is strictly smaller than `GL(2)` there.
pub fn two_dimensional_other_groups() -> Vec<FixtureResult> {
    let diag_algebra = [
        RationalMatrix::from_i64(&[&[1, 0], &[0, 0]]),
        RationalMatrix::from_i64(&[&[0, 0], &[0, 1]]),
    ];
    let rotation_algebra = [
        RationalMatrix::identity(2),
        RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]]),
    ];
    let reflected = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]])
        .mul(&RationalMatrix::diagonal(&[q(3, 1), q(-2, 5)]))
        .expect("2x2 product");
    vec![
        result(
            "diagonal group: R·diag(3, -2/5) normalizes D",
            true,
            normalizes_span(&reflected, &diag_algebra),
        ),
        result(
            "diagonal group: [[1,1],[0,1]] does not normalize D",
            false,
            normalizes_span(
                &RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]),
                &diag_algebra,
            ),
        ),
        result(
            "similitude group: diag(1, 2) outside N(H)",
            false,
            normalizes_span(
                &RationalMatrix::from_i64(&[&[1, 0], &[0, 2]]),
                &rotation_algebra,
            ),
        ),
    ]
}

/// Partitions of `n` into positive parts, non-increasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Scaling exponents with the given multiplicities: block `ℓ` gets `1/(ℓ+2)`.
pub fn lambdas_for_partition(parts: &[usize]) -> Vec<Rational> {
    parts
        .iter()
        .enumerate()
        .flat_map(|(l, &m)| std::iter::repeat_n(q(1, l as i64 + 2), m))
        .collect()
}

pub fn standard_dimensions() -> Vec<FixtureResult> {
    let mut out = Vec::new();
    for d in 2..=5usize {
        for parts in partitions(d - 1) {
            let name = format!("standard d={d} multiplicities {parts:?}: dim_total");
            let expected = d + parts.iter().map(|n| n * n).sum::<usize>();
            match ShearletGroup::standard(&lambdas_for_partition(&parts)) {
                Ok(g) => out.push(result(name, expected, symmetry_group_report(&g).dim_total)),
                Err(e) => out.push(failure(name, expected, e)),
            }
        }
    }
    let extremes = [
        ("standard d=3 λ=(1,1)", vec![q(1, 1), q(1, 1)], 7),
        ("standard d=2 λ=1/2", vec![q(1, 2)], 3),
        ("standard d=2 λ=-4", vec![q(-4, 1)], 3),
    ];
    for (name, l, want) in extremes {
        match ShearletGroup::standard(&l) {
            Ok(g) => out.push(result(name, want, symmetry_group_report(&g).dim_total)),
            Err(e) => out.push(failure(name, want, e)),
        }
    }
    out
}

/// Rows of the Toeplitz automorphism matrix written out by hand.
pub fn toeplitz_expected(c: &[Rational]) -> Option<RationalMatrix> {
    let z = Rational::zero;
    let two = q(2, 1);
    let three = q(3, 1);
    let rows: Vec<Vec<Rational>> = match c.len() {
        2 => vec![vec![c[0].clone(), c[1].clone()], vec![z(), c[0].pow(2)]],
        3 => vec![
            vec![c[0].clone(), c[1].clone(), c[2].clone()],
            vec![z(), c[0].pow(2), &two * &c[0] * &c[1]],
            vec![z(), z(), c[0].pow(3)],
        ],
        4 => vec![
            vec![c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()],
            vec![
                z(),
                c[0].pow(2),
                &two * &c[0] * &c[1],
                &(&two * &c[0] * &c[2]) + &c[1].pow(2),
            ],
            vec![z(), z(), c[0].pow(3), &three * &c[0].pow(2) * &c[1]],
            vec![z(), z(), z(), c[0].pow(4)],
        ],
        _ => return None,
    };
    RationalMatrix::from_rows(rows).ok()
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n = rng.gen_range(-9i64..=9);
        let d = rng.gen_range(1i64..=7);
        if !nonzero || n != 0 {
            return q(n, d);
        }
    }
}

pub fn toeplitz_fixtures(seed: u64) -> Vec<FixtureResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for d in 3..=5usize {
        let group = ShearletGroup::toeplitz(&q(0, 1), d);
        for k in 0..5 {
            let c: Vec<Rational> = (0..d - 1)
                .map(|j| random_rational(&mut rng, j == 0))
                .collect();
            let shown = c
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let name = format!("toeplitz d={d} sample {k} c=({shown})");
            let want = toeplitz_expected(&c).expect("d in 3..=5");
            let got = match toeplitz_automorphism_matrix(d, &c) {
                Ok(b) => b,
                Err(e) => {
                    out.push(failure(format!("{name}: matrix"), format!("{want:?}"), e));
                    continue;
                }
            };
            out.push(FixtureResult {
                name: format!("{name}: matrix"),
                passed: got == want,
                expected: format!("{:?}", want.to_rows()),
                actual: format!("{:?}", got.to_rows()),
            });
            let member = group
                .as_ref()
                .map_err(|e| e.to_string())
                .and_then(|g| is_in_normalizer_s(g, &got).map_err(|e| e.to_string()));
            match member {
                Ok(m) => out.push(result(format!("{name}: in normalizer"), true, m.member)),
                Err(e) => out.push(failure(format!("{name}: in normalizer"), true, e)),
            }
        }
    }
    for d in 3..=5usize {
        for (delta, want) in [(q(0, 1), 2 * d - 1), (q(1, 3), d + 1)] {
            let name = format!("toeplitz d={d} δ={delta}: dim_total");
            match ShearletGroup::toeplitz(&delta, d) {
                Ok(g) => out.push(result(name, want, symmetry_group_report(&g).dim_total)),
                Err(e) => out.push(failure(name, want, e)),
            }
        }
    }
    out
}

/// The whole suite. `seed` drives the random Toeplitz coefficients.
pub fn run_fixture_suite(seed: u64) -> FixtureReport {
    let mut all = two_dimensional_shearlet();
    all.extend(two_dimensional_other_groups());
    all.extend(standard_dimensions());
    all.extend(toeplitz_fixtures(seed));
    FixtureReport::from_results(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn grid_size() {
        // 625 minus the 113 singular integer matrices with entries in -2..=2
        let g = integer_grid_2x2();
        assert!(g.len() > 200 && g.len() < 625);
        assert!(g.iter().all(|a| !a.determinant().unwrap().is_zero()));
    }

    #[test]
    fn suite_passes() {
        let report = run_fixture_suite(7);
        assert!(report.passed, "{:?}", report.failed);
        assert_eq!(report.total, report.fixtures.len());
    }
}
