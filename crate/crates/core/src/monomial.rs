//! Monomial ideals in `d` local variables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, polyhedron_facets, Facet, Polyhedron};

/// Exponent vector `a` of the monomial `x^a`.
pub type ExponentVector = Vec<i64>;

/// A monomial ideal given by its minimal generators, stored sorted so that
/// equality of ideals is equality of values. The unit ideal is `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Minimalizes `raw` into an antichain.
    pub fn new(dim: usize, raw: Vec<ExponentVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if raw.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for a in &raw {
            if a.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.len() });
            }
            if a.iter().any(|&x| x < 0) {
                return Err(Error::NegativeExponent);
            }
        }
        Ok(MonomialIdeal { dim, gens: minimalize(raw) })
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal { dim, gens: vec![vec![0; dim]] }
    }

    /// The maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(dim: usize) -> Self {
        Self::maximal_power(dim, 1)
    }

    /// `m^k`, all monomials of total degree `k`.
    pub fn maximal_power(dim: usize, k: i64) -> Self {
        let mut gens = Vec::new();
        let mut cur = vec![0i64; dim];
        fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        rec(0, k, &mut cur, &mut gens);
        gens.sort();
        MonomialIdeal { dim, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    /// True iff every variable has a pure power among the generators.
    pub fn is_m_primary(&self) -> bool {
        !self.is_unit()
            && (0..self.dim).all(|i| self.gens.iter().any(|g| g.iter().enumerate().all(|(j, &x)| j == i || x == 0)))
    }

    /// Membership of the monomial `x^a`.
    pub fn contains(&self, a: &[i64]) -> bool {
        self.gens.iter().any(|g| g.iter().zip(a).all(|(x, y)| x <= y))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Order: the least total degree of a generator.
    pub fn ord(&self) -> Result<i64> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(self.gens.iter().map(|g| g.iter().sum::<i64>()).min().unwrap_or(0))
    }

    /// Ordinary product.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.dim, other.dim, "dimension mismatch in product");
        let mut raw = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                raw.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal { dim: self.dim, gens: minimalize(raw) }
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        (0..k).fold(MonomialIdeal::unit(self.dim), |acc, _| acc.product(self))
    }

    /// Largest exponent of variable `i` among the generators.
    pub fn max_exponent(&self, i: usize) -> i64 {
        self.gens.iter().map(|g| g[i]).max().unwrap_or(0)
    }
}

pub fn make_ideal(dim: usize, raw: Vec<ExponentVector>) -> Result<MonomialIdeal> {
    MonomialIdeal::new(dim, raw)
}

pub fn ord(ideal: &MonomialIdeal) -> Result<i64> {
    ideal.ord()
}

/// Antichain of the componentwise-minimal vectors, sorted.
pub fn minimalize(mut raw: Vec<ExponentVector>) -> Vec<ExponentVector> {
    raw.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
    raw.dedup();
    let mut keep: Vec<ExponentVector> = Vec::new();
    for a in raw {
        if !keep.iter().any(|k| k.iter().zip(&a).all(|(x, y)| x <= y)) {
            keep.push(a);
        }
    }
    keep.sort();
    keep
}

/// `min_{a in gens} v · a`.
pub fn valuation_value(v: &[i64], ideal: &MonomialIdeal) -> i64 {
    ideal.gens.iter().map(|a| dot(v, a)).min().expect("ideal has generators")
}

/// Facets of the Newton polyhedron `conv(gens) + R^d_{>=0}`.
pub fn newton_facets(ideal: &MonomialIdeal) -> Result<Vec<Facet>> {
    polyhedron_facets(&Polyhedron::newton(ideal.dim, ideal.gens.clone()))
}

/// Integral closure: the lattice points of the Newton polyhedron.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let facets = newton_facets(ideal)?;
    let bounds: Vec<i64> = (0..ideal.dim).map(|i| ideal.max_exponent(i)).collect();
    let gens = minimal_points_in_box(&bounds, |a| facets.iter().all(|f| f.contains(a)));
    Ok(MonomialIdeal { dim: ideal.dim, gens })
}

/// `I * J`: the integral closure of the ordinary product.
pub fn star_product(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    integral_closure(&a.product(b))
}

pub fn is_complete(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(&integral_closure(ideal)? == ideal)
}

/// Minimal generators of `{a >= 0 : v_k · a >= c_k for all k}` for strictly
/// positive `v_k`.
pub fn valuation_ideal(dim: usize, conditions: &[(Vec<i64>, i64)]) -> MonomialIdeal {
    let bounds: Vec<i64> = (0..dim)
        .map(|i| {
            conditions
                .iter()
                .map(|(v, c)| {
                    assert!(v[i] > 0, "valuation ideal needs positive vectors");
                    if *c <= 0 {
                        0
                    } else {
                        (c + v[i] - 1) / v[i]
                    }
                })
                .max()
                .unwrap_or(0)
        })
        .collect();
    let gens = minimal_points_in_box(&bounds, |a| conditions.iter().all(|(v, c)| dot(v, a) >= *c));
    MonomialIdeal { dim, gens }
}

/// Minimal lattice points of an up-closed set inside `[0, bounds]`.
///
/// `member` must describe a set closed under adding unit vectors whose
/// minimal elements all lie in the box.
pub(crate) fn minimal_points_in_box(bounds: &[i64], member: impl Fn(&[i64]) -> bool) -> Vec<ExponentVector> {
    let dim = bounds.len();
    let mut out = Vec::new();
    let mut a = vec![0i64; dim];
    let mut probe = vec![0i64; dim];
    loop {
        if member(&a) {
            let minimal = (0..dim).filter(|&i| a[i] > 0).all(|i| {
                probe.copy_from_slice(&a);
                probe[i] -= 1;
                !member(&probe)
            });
            if minimal {
                out.push(a.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == dim {
                out.sort();
                return out;
            }
            if a[i] < bounds[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn p2() -> MonomialIdeal {
        ideal(3, &[&[3, 0, 0], &[2, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]])
    }

    #[test]
    fn make_ideal_minimalizes() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 2], &[2, 1]]);
        assert_eq!(i.gens(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(p2().gens().len(), 6);
        assert!(p2().is_m_primary());
        assert!(!ideal(3, &[&[3, 0, 0], &[0, 2, 0], &[1, 0, 1]]).is_m_primary());
    }

    #[test]
    fn make_ideal_errors() {
        assert_eq!(MonomialIdeal::new(2, vec![]), Err(Error::EmptyGenerators));
        assert_eq!(MonomialIdeal::new(2, vec![vec![1, -1]]), Err(Error::NegativeExponent));
        assert_eq!(MonomialIdeal::new(2, vec![vec![1, 1, 1]]), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn d4_p2_has_ten_generators() {
        // x^3, x^2 y, x z_i, (y, z_1, z_2)^2
        let i = ideal(
            4,
            &[
                &[3, 0, 0, 0],
                &[2, 1, 0, 0],
                &[1, 0, 1, 0],
                &[1, 0, 0, 1],
                &[0, 2, 0, 0],
                &[0, 1, 1, 0],
                &[0, 1, 0, 1],
                &[0, 0, 2, 0],
                &[0, 0, 1, 1],
                &[0, 0, 0, 2],
            ],
        );
        assert_eq!(i.gens().len(), 10);
    }

    #[test]
    fn order() {
        assert_eq!(p2().ord(), Ok(2));
        assert_eq!(MonomialIdeal::maximal_power(3, 4).ord(), Ok(4));
        assert_eq!(MonomialIdeal::unit(3).ord(), Err(Error::UnitIdeal));
    }

    #[test]
    fn closure_examples() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(integral_closure(&i).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(integral_closure(&p2()).unwrap(), p2());
        let k = ideal(3, &[&[3, 0, 0], &[0, 2, 0], &[1, 0, 1]]);
        let c = integral_closure(&k).unwrap();
        assert!(!c.contains(&[0, 1, 1]));
        assert!(p2().contains(&[0, 1, 1]));
    }

    #[test]
    fn star_products() {
        let m = MonomialIdeal::maximal(3);
        assert_eq!(star_product(&m, &m).unwrap(), MonomialIdeal::maximal_power(3, 2));
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(star_product(&i, &MonomialIdeal::unit(2)).unwrap(), integral_closure(&i).unwrap());
    }

    #[test]
    fn valuation_values() {
        assert_eq!(valuation_value(&[2, 3, 4], &p2()), 6);
        assert_eq!(valuation_value(&[1, 2, 2], &p2()), 3);
        assert_eq!(valuation_value(&[1, 1, 1], &p2()), p2().ord().unwrap());
    }

    #[test]
    fn valuation_ideal_of_p2_profile() {
        let got = valuation_ideal(3, &[(vec![1, 1, 1], 2), (vec![1, 2, 2], 3), (vec![2, 3, 4], 6)]);
        assert_eq!(got, p2());
        assert!(valuation_ideal(2, &[(vec![1, 1], 0)]).is_unit());
    }
}
