//! Slow, independent reference implementations for cross-checking the main
//! algorithms in tests. Nothing here is reused by the library proper.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::toric::AffineChart;

/// Whether `a` lies in `conv(gens) + R^d_{≥0}`, by phase-one simplex with
/// Bland's rule.
pub fn brute_np_membership(gens: &[Vec<i64>], a: &[i64]) -> bool {
    let d = a.len();
    let n = gens.len();
    if n == 0 {
        return false;
    }
    // Rows: Σ λ_i g_i + s = a (d rows), Σ λ_i = 1. Columns: λ, s, artificials.
    let rows = d + 1;
    let cols = n + d + rows;
    let q = |x: i64| BigRational::from_integer(x.into());
    let mut t: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols + 1]; rows];
    for r in 0..d {
        for (i, g) in gens.iter().enumerate() {
            t[r][i] = q(g[r]);
        }
        t[r][n + r] = BigRational::one();
        t[r][cols] = q(a[r]);
    }
    for i in 0..n {
        t[d][i] = BigRational::one();
    }
    t[d][cols] = BigRational::one();
    for (r, row) in t.iter_mut().enumerate() {
        row[n + d + r] = BigRational::one();
    }
    let mut basis: Vec<usize> = (0..rows).map(|r| n + d + r).collect();

    // Reduced costs of minimizing the artificial sum.
    let reduced = |t: &Vec<Vec<BigRational>>, basis: &[usize], j: usize| -> BigRational {
        let cost = |c: usize| if c >= n + d && c < cols { BigRational::one() } else { BigRational::zero() };
        let mut z = cost(j);
        for (r, &b) in basis.iter().enumerate() {
            z -= cost(b) * &t[r][j];
        }
        z
    };
    while let Some(enter) = (0..cols).find(|&j| !basis.contains(&j) && reduced(&t, &basis, j).is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let pivot = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        basis[pr] = enter;
    }
    basis.iter().enumerate().all(|(r, &b)| b < n + d || t[r][cols].is_zero())
}

/// Minimal generators of the integral closure, by testing every point of
/// the bounding box.
pub fn brute_closure(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = gens[0].len();
    let bound: Vec<i64> = (0..d).map(|i| gens.iter().map(|g| g[i]).max().unwrap_or(0)).collect();
    let mut inside = Vec::new();
    let mut p = vec![0i64; d];
    loop {
        if brute_np_membership(gens, &p) {
            inside.push(p.clone());
        }
        let mut i = 0;
        while i < d && p[i] == bound[i] {
            p[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
        p[i] += 1;
    }
    let mut minimal: Vec<Vec<i64>> = inside
        .iter()
        .filter(|a| !inside.iter().any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x <= y)))
        .cloned()
        .collect();
    minimal.sort();
    minimal
}

/// Sums of generators with `grading` value at most `max_degree`. The
/// grading must be positive on every generator.
fn graded_semigroup(gens: &[Vec<i64>], grading: &[i64], max_degree: i64) -> Result<Vec<HashSet<Vec<i64>>>> {
    let deg = |v: &[i64]| v.iter().zip(grading).map(|(a, b)| a * b).sum::<i64>();
    if gens.iter().any(|g| deg(g) <= 0) {
        return Err(Error::DegenerateInput("grading must be positive on generators".into()));
    }
    let d = grading.len();
    let mut layers: Vec<HashSet<Vec<i64>>> = vec![HashSet::from([vec![0; d]])];
    loop {
        let last = layers.last().unwrap();
        let next: HashSet<Vec<i64>> = last
            .iter()
            .flat_map(|s| gens.iter().map(move |g| s.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<i64>>()))
            .filter(|t| deg(t) <= max_degree)
            .collect();
        if next.is_empty() {
            return Ok(layers);
        }
        layers.push(next);
    }
}

/// Elements `s` of the chart semigroup with `grading(s) ≤ max_degree` and
/// `normal · s ≥ n`.
pub fn brute_symbolic_power(
    chart: &AffineChart,
    normal: &[i64],
    n: i64,
    grading: &[i64],
    max_degree: i64,
) -> Result<BTreeSet<Vec<i64>>> {
    let layers = graded_semigroup(chart.generators(), grading, max_degree)?;
    Ok(layers.into_iter().flatten().filter(|s| s.iter().zip(normal).map(|(a, b)| a * b).sum::<i64>() >= n).collect())
}

/// Elements of the chart semigroup with `grading ≤ max_degree`.
pub fn brute_semigroup(chart: &AffineChart, grading: &[i64], max_degree: i64) -> Result<BTreeSet<Vec<i64>>> {
    Ok(graded_semigroup(chart.generators(), grading, max_degree)?.into_iter().flatten().collect())
}

/// `ℓ(n) = length(A / m^n)` for `n = 1..=n_max` at the vertex of a pointed
/// chart, counting monomials whose longest factorization into generators is
/// shorter than `n`.
pub fn brute_hilbert_samuel(chart: &AffineChart, n_max: usize) -> Result<Vec<u64>> {
    if !chart.is_pointed() {
        return Err(Error::DegenerateInput("chart has units".into()));
    }
    let d = chart.dim();
    let grading: Vec<i64> = (0..d).map(|i| chart.facets().iter().map(|u| u[i]).sum()).collect();
    let deg = |v: &[i64]| v.iter().zip(&grading).map(|(a, b)| a * b).sum::<i64>();
    let gmax = chart.generators().iter().map(|g| deg(g)).max().unwrap_or(0);
    let layers = graded_semigroup(chart.generators(), &grading, gmax * n_max.saturating_sub(1) as i64)?;
    let mut longest: HashMap<&Vec<i64>, usize> = HashMap::new();
    for (k, layer) in layers.iter().enumerate() {
        for s in layer {
            longest.insert(s, k);
        }
    }
    Ok((1..=n_max).map(|n| longest.values().filter(|&&k| k < n).count() as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let g = vec![vec![3, 0, 0], vec![0, 2, 0], vec![1, 0, 1]];
        assert!(!brute_np_membership(&g, &[0, 1, 1]));
        assert!(g.iter().all(|a| brute_np_membership(&g, a)));
        assert!(brute_np_membership(&[vec![2, 0], vec![0, 2]], &[1, 1]));
        assert!(!brute_np_membership(&[vec![2, 0], vec![0, 2]], &[1, 0]));
    }

    #[test]
    fn closure_of_squares() {
        assert_eq!(brute_closure(&[vec![2, 0], vec![0, 2]]), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn smooth_vertex_lengths() {
        let c = AffineChart::from_generators(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let binom = |n: u64| (n + 2) * (n + 1) * n / 6;
        assert_eq!(brute_hilbert_samuel(&c, 5).unwrap(), (1..=5).map(binom).collect::<Vec<_>>());
    }
}
