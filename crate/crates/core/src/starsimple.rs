//! Special *-simple ideals, Lipman factorization and *-divisibility.
//!
//! Complete finitely supported monomial ideals are handled through their
//! point bases: the ideal with point basis `b` on a tree is the set of
//! monomials whose value under each node's order valuation reaches the
//! value forced by `b`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infnear::{
    base_point_tree, is_proximate, order_valuation, proximity_feasible, transform_along, QuadraticChain,
};
use crate::linalg::dot;
use crate::monomial::{integral_closure, star_product, valuation_ideal, valuation_value, MonomialIdeal};

pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000;
pub const DEFAULT_CONDITION_BOUND: u32 = 6;

/// A special *-simple ideal together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialStarSimple {
    pub chain: QuadraticChain,
    pub ideal: MonomialIdeal,
    /// Point basis along the chain, root first.
    pub point_basis: Vec<i64>,
    /// Order-valuation vectors of the chain's points.
    pub valuations: Vec<Vec<i64>>,
    /// Value of the ideal under each of those valuations.
    pub values: Vec<i64>,
}

/// Point basis `r_n = 1`, `r_k = sum of r_j over later points proximate to k`.
pub fn special_point_basis(chain: &QuadraticChain) -> Vec<i64> {
    let points = chain.prefixes();
    let n = chain.len();
    let mut r = vec![0i64; n + 1];
    r[n] = 1;
    for k in (0..n).rev() {
        r[k] = (k + 1..=n).filter(|&j| is_proximate(&points[j], &points[k])).map(|j| r[j]).sum();
    }
    r
}

/// Value under each node's order valuation of the complete ideal whose
/// point basis on `chains` is `b`. The chains must be closed under
/// truncation.
pub fn profile_values(chains: &[QuadraticChain], b: &[i64]) -> Vec<i64> {
    chains
        .iter()
        .enumerate()
        .map(|(k, ck)| {
            let v = order_valuation(ck);
            let below: i64 = (0..ck.len())
                .map(|m| {
                    let idx = chains.iter().position(|c| *c == ck.prefix(m)).expect("tree closed under truncation");
                    b[idx] * dot(&v, &ck.exceptional(m))
                })
                .sum();
            below + b[k]
        })
        .collect()
}

/// The complete ideal cut out by the valuation profile of `b`.
pub fn realize(chains: &[QuadraticChain], b: &[i64]) -> MonomialIdeal {
    let dim = chains[0].dim();
    if b.iter().all(|&x| x == 0) {
        return MonomialIdeal::unit(dim);
    }
    let c = profile_values(chains, b);
    let conditions: Vec<(Vec<i64>, i64)> = chains.iter().map(order_valuation).zip(c).collect();
    valuation_ideal(dim, &conditions)
}

/// Whether the realization of `b` has point basis exactly `b`.
pub fn is_realizable(chains: &[QuadraticChain], b: &[i64]) -> Result<bool> {
    let ideal = realize(chains, b);
    if ideal.is_unit() {
        return Ok(true);
    }
    let tree = match base_point_tree(&ideal) {
        Ok(t) => t,
        Err(Error::NotFinitelySupported { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let support: Vec<(QuadraticChain, i64)> =
        chains.iter().zip(b).filter(|(_, &x)| x != 0).map(|(c, &x)| (c.clone(), x)).collect();
    Ok(support.len() == tree.len() && support.iter().all(|(c, x)| tree.multiplicity(c) == *x))
}

/// Builds the special *-simple ideal of the chain and checks it.
/// Largest exponent box searched when realizing a special ideal.
pub const SPECIAL_BOX_BUDGET: u128 = 20_000_000;

/// Number of lattice points scanned to realize the special ideal of `chain`.
pub fn special_box_size(chain: &QuadraticChain) -> u128 {
    let points = chain.prefixes();
    let values = profile_values(&points, &special_point_basis(chain));
    let valuations: Vec<Vec<i64>> = points.iter().map(order_valuation).collect();
    (0..chain.dim())
        .map(|i| {
            let b = valuations
                .iter()
                .zip(&values)
                .map(|(v, &c)| if c <= 0 { 0 } else { (c + v[i] - 1) / v[i] })
                .max()
                .unwrap_or(0);
            b as u128 + 1
        })
        .fold(1u128, |acc, b| acc.saturating_mul(b))
}

pub fn special_star_simple(chain: &QuadraticChain) -> Result<SpecialStarSimple> {
    let dim = chain.dim();
    let points = chain.prefixes();
    if chain.is_root() {
        return Ok(SpecialStarSimple {
            chain: chain.clone(),
            ideal: MonomialIdeal::maximal(dim),
            point_basis: vec![1],
            valuations: vec![vec![1; dim]],
            values: vec![1],
        });
    }
    let size = special_box_size(chain);
    if size > SPECIAL_BOX_BUDGET {
        return Err(Error::SearchBudgetExceeded { explored: size, budget: SPECIAL_BOX_BUDGET });
    }
    let r = special_point_basis(chain);
    let values = profile_values(&points, &r);
    let valuations: Vec<Vec<i64>> = points.iter().map(order_valuation).collect();
    let conditions: Vec<(Vec<i64>, i64)> = valuations.iter().cloned().zip(values.iter().copied()).collect();
    let ideal = valuation_ideal(dim, &conditions);

    let fail = |what: String| Err(Error::ConstructionUnverified(format!("chain {:?}: {what}", chain.directions())));
    let tree = base_point_tree(&ideal)?;
    if tree.chains() != points || tree.multiplicities() != r {
        return fail(format!("base points {:?} with multiplicities {:?}", tree.chains(), tree.multiplicities()));
    }
    let (_, leaf) = transform_along(&ideal, chain)?;
    if leaf != MonomialIdeal::maximal(dim) {
        return fail("transform at the last point is not its maximal ideal".into());
    }
    if ideal.ord()? != r[0] {
        return fail("order differs from the first point-basis entry".into());
    }
    for (v, c) in &conditions {
        if valuation_value(v, &ideal) != *c {
            return fail(format!("value {} under {:?}, expected {c}", valuation_value(v, &ideal), v));
        }
    }
    if dim <= crate::linalg::MAX_POLYHEDRAL_DIM && integral_closure(&ideal)? != ideal {
        return fail("result is not complete".into());
    }
    Ok(SpecialStarSimple { chain: chain.clone(), ideal, point_basis: r, valuations, values })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub chain: QuadraticChain,
    pub exponent: i64,
}

/// `I = *-product of P_i^{a_i}` over the base points, exponents possibly negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn exponents(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.exponent).collect()
    }

    pub fn exponent(&self, chain: &QuadraticChain) -> i64 {
        self.factors.iter().find(|f| &f.chain == chain).map_or(0, |f| f.exponent)
    }
}

pub fn lipman_factorization(ideal: &MonomialIdeal) -> Result<Factorization> {
    let tree = base_point_tree(ideal)?;
    if &integral_closure(ideal)? != ideal {
        return Err(Error::NotComplete);
    }
    let chains = tree.chains();
    let basis = tree.multiplicities();
    let specials: Vec<SpecialStarSimple> = chains.par_iter().map(special_star_simple).collect::<Result<_>>()?;

    // Column i holds B(P_i), supported on the truncations of chain i.
    let entry = |i: usize, k: usize| -> i64 {
        if chains[k].is_prefix_of(&chains[i]) {
            specials[i].point_basis[chains[k].len()]
        } else {
            0
        }
    };
    let mut a = vec![0i64; chains.len()];
    for k in (0..chains.len()).rev() {
        let below: i64 = (0..chains.len()).filter(|&i| i != k).map(|i| a[i] * entry(i, k)).sum();
        a[k] = basis[k] - below;
    }

    for ck in &chains {
        let v = order_valuation(ck);
        let combined: i64 = specials.iter().zip(&a).map(|(s, &e)| e * valuation_value(&v, &s.ideal)).sum();
        if combined != valuation_value(&v, ideal) {
            return Err(Error::ConstructionUnverified(format!(
                "factorization misses the value at {:?}",
                ck.directions()
            )));
        }
    }
    Ok(Factorization {
        factors: chains.into_iter().zip(a).map(|(chain, exponent)| Factor { chain, exponent }).collect(),
    })
}

/// Whether some complete `J` has `D * J = closure(I)`.
pub fn star_divides(divisor: &MonomialIdeal, ideal: &MonomialIdeal) -> Result<bool> {
    let target = integral_closure(ideal)?;
    if divisor.is_unit() {
        return Ok(true);
    }
    if target.is_unit() || divisor.ord()? > target.ord()? {
        return Ok(false);
    }
    let td = base_point_tree(divisor)?;
    let ti = base_point_tree(&target)?;
    if td.chains().iter().any(|c| !ti.contains(c)) {
        return Ok(false);
    }
    let chains = ti.chains();
    let b: Vec<i64> = ti.nodes().iter().map(|n| n.multiplicity - td.multiplicity(&n.chain)).collect();
    if b.iter().any(|&x| x < 0) || (divisor.dim() == 2 && !proximity_feasible(&chains, &b)) {
        return Ok(false);
    }
    let quotient = realize(&chains, &b);
    Ok(star_product(divisor, &quotient)? == target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Simplicity {
    Simple,
    Factors(MonomialIdeal, MonomialIdeal),
}

pub fn star_simplicity_check(ideal: &MonomialIdeal) -> Result<Simplicity> {
    star_simplicity_check_with_budget(ideal, DEFAULT_SEARCH_BUDGET)
}

/// Searches every splitting `B(I) = b' + b''` into realizable point bases.
pub fn star_simplicity_check_with_budget(ideal: &MonomialIdeal, budget: u128) -> Result<Simplicity> {
    let tree = base_point_tree(ideal)?;
    let target = integral_closure(ideal)?;
    if target != *ideal {
        return Err(Error::NotComplete);
    }
    let chains = tree.chains();
    let b = tree.multiplicities();
    let total = b.iter().try_fold(1u128, |acc, &x| acc.checked_mul(x as u128 + 1)).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::SearchBudgetExceeded { explored: total, budget });
    }
    let decode = |mut index: u128| -> Vec<i64> {
        b.iter()
            .map(|&x| {
                let radix = x as u128 + 1;
                let digit = (index % radix) as i64;
                index /= radix;
                digit
            })
            .collect()
    };
    let found = (1..total.saturating_sub(1)).into_par_iter().map(decode).find_map_first(|first| {
        let second: Vec<i64> = b.iter().zip(&first).map(|(x, y)| x - y).collect();
        if first > second {
            return None;
        }
        let usable = |part: &[i64]| {
            (ideal.dim() > 2 || proximity_feasible(&chains, part)) && matches!(is_realizable(&chains, part), Ok(true))
        };
        if !usable(&first) || !usable(&second) {
            return None;
        }
        let (p, q) = (realize(&chains, &first), realize(&chains, &second));
        match star_product(&p, &q) {
            Ok(prod) if prod == target => Some((p, q)),
            _ => None,
        }
    });
    Ok(match found {
        Some((p, q)) => Simplicity::Factors(p, q),
        None => Simplicity::Simple,
    })
}

/// A property asked for some power `k` up to a search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Bounded {
    Holds { k: u32 },
    UnknownUpTo { bound: u32 },
}

impl Bounded {
    pub fn holds(&self) -> bool {
        matches!(self, Bounded::Holds { .. })
    }
}

impl std::fmt::Display for Bounded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bounded::Holds { k } => write!(f, "yes (k = {k})"),
            Bounded::UnknownUpTo { bound } => write!(f, "unknown beyond bound {bound}"),
        }
    }
}

/// The five conditions of the saturated-factorization discussion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationConditions {
    pub product_divides: bool,
    pub each_special_divides: bool,
    pub product_divides_power: Bounded,
    pub transforms_divisible_by_maximal: bool,
    pub power_transforms_divisible_by_maximal: Bounded,
    /// The known implications among the five hold on the computed flags.
    pub implications_hold: bool,
}

pub fn saturation_conditions(ideal: &MonomialIdeal, bound: u32) -> Result<SaturationConditions> {
    let tree = base_point_tree(ideal)?;
    if integral_closure(ideal)? != *ideal {
        return Err(Error::NotComplete);
    }
    let chains = tree.chains();
    let specials: Vec<MonomialIdeal> =
        chains.par_iter().map(|c| special_star_simple(c).map(|s| s.ideal)).collect::<Result<_>>()?;
    let product = specials.iter().try_fold(MonomialIdeal::unit(ideal.dim()), |acc, p| star_product(&acc, p))?;

    let c1 = star_divides(&product, ideal)?;
    let c2 = specials.iter().map(|p| star_divides(p, ideal)).collect::<Result<Vec<_>>>()?.into_iter().all(|x| x);
    let c3 = if c1 {
        Bounded::Holds { k: 1 }
    } else {
        let mut found = Bounded::UnknownUpTo { bound };
        for k in 2..=bound {
            if star_divides(&product, &ideal.power(k))? {
                found = Bounded::Holds { k };
                break;
            }
        }
        found
    };

    let transforms: Vec<MonomialIdeal> =
        chains.iter().map(|c| transform_along(ideal, c).map(|(_, t)| t)).collect::<Result<_>>()?;
    let divisible_at = |k: u32| -> Result<bool> {
        for t in &transforms {
            let m = MonomialIdeal::maximal(t.dim());
            if !star_divides(&m, &integral_closure(&t.power(k))?)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let c4 = divisible_at(1)?;
    let c5 = if c4 {
        Bounded::Holds { k: 1 }
    } else {
        let mut found = Bounded::UnknownUpTo { bound };
        for k in 2..=bound {
            if divisible_at(k)? {
                found = Bounded::Holds { k };
                break;
            }
        }
        found
    };

    let implications_hold = (!c1 || c2) && (!c2 || c3.holds() || bound < 2) && (!c4 || c5.holds()) && {
        match (c3, c5) {
            (Bounded::Holds { k }, Bounded::Holds { k: k5 }) => k5 <= k,
            (Bounded::Holds { .. }, Bounded::UnknownUpTo { .. }) => false,
            _ => true,
        }
    };
    Ok(SaturationConditions {
        product_divides: c1,
        each_special_divides: c2,
        product_divides_power: c3,
        transforms_divisible_by_maximal: c4,
        power_transforms_divisible_by_maximal: c5,
        implications_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn chain(dim: usize, dirs: &[usize]) -> QuadraticChain {
        QuadraticChain::new(dim, dirs.to_vec()).unwrap()
    }

    #[test]
    fn specials_of_setting_chain() {
        assert_eq!(special_star_simple(&chain(3, &[])).unwrap().ideal, MonomialIdeal::maximal(3));
        assert_eq!(
            special_star_simple(&chain(3, &[0])).unwrap().ideal,
            ideal(3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        let p2 = special_star_simple(&chain(3, &[0, 1])).unwrap();
        assert_eq!(p2.ideal, ideal(3, &[&[3, 0, 0], &[2, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]));
        assert_eq!(p2.point_basis, vec![2, 1, 1]);
        assert_eq!(p2.values, vec![2, 3, 6]);
        assert_eq!(special_star_simple(&chain(2, &[0, 1])).unwrap().ideal, ideal(2, &[&[3, 0], &[2, 1], &[0, 2]]));
    }

    #[test]
    fn special_of_free_chain() {
        let p = special_star_simple(&chain(2, &[0, 0])).unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[3, 0], &[0, 1]]));
        assert_eq!(p.point_basis, vec![1, 1, 1]);
    }

    #[test]
    fn realization_round_trip() {
        let chains = vec![chain(3, &[]), chain(3, &[0]), chain(3, &[0, 1])];
        let p2 = special_star_simple(&chains[2]).unwrap().ideal;
        assert_eq!(realize(&chains, &[2, 1, 1]), p2);
        assert!(is_realizable(&chains, &[2, 1, 1]).unwrap());
        assert!(realize(&chains, &[0, 0, 0]).is_unit());
        assert!(!proximity_feasible(&chains, &[1, 0, 1]));
    }

    #[test]
    fn factorization_of_special_and_powers() {
        let p2 = special_star_simple(&chain(3, &[0, 1])).unwrap().ideal;
        assert_eq!(lipman_factorization(&p2).unwrap().exponents(), vec![0, 0, 1]);
        let m3 = MonomialIdeal::maximal_power(3, 3);
        assert_eq!(lipman_factorization(&m3).unwrap().exponents(), vec![3]);
        let not_complete = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(lipman_factorization(&not_complete), Err(Error::NotComplete));
    }

    #[test]
    fn divisibility_small() {
        let p1 = special_star_simple(&chain(3, &[0])).unwrap().ideal;
        let p2 = special_star_simple(&chain(3, &[0, 1])).unwrap().ideal;
        let m = MonomialIdeal::maximal(3);
        let mp2 = star_product(&m, &p2).unwrap();
        assert!(star_divides(&p2, &mp2).unwrap());
        assert!(star_divides(&m, &mp2).unwrap());
        assert!(!star_divides(&p1, &p2).unwrap());
        assert!(star_divides(&p2, &p2).unwrap());
    }

    #[test]
    fn simplicity_small() {
        let m2 = MonomialIdeal::maximal_power(3, 2);
        let m = MonomialIdeal::maximal(3);
        assert_eq!(star_simplicity_check(&m2).unwrap(), Simplicity::Factors(m.clone(), m));
        let p2 = special_star_simple(&chain(3, &[0, 1])).unwrap().ideal;
        assert_eq!(star_simplicity_check(&p2).unwrap(), Simplicity::Simple);
        assert_eq!(
            star_simplicity_check_with_budget(&MonomialIdeal::maximal_power(2, 9), 5),
            Err(Error::SearchBudgetExceeded { explored: 10, budget: 5 })
        );
    }

    #[test]
    fn conditions_of_p2() {
        let p2 = special_star_simple(&chain(3, &[0, 1])).unwrap().ideal;
        let c = saturation_conditions(&p2, 3).unwrap();
        assert!(!c.each_special_divides);
        assert!(!c.product_divides);
        assert!(c.implications_hold);
    }
}
