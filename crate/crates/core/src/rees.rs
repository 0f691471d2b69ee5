//! Rees valuations of m-primary monomial ideals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infnear::{order_valuation, QuadraticChain};
use crate::monomial::{newton_facets, valuation_value, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReesValuation {
    pub vector: Vec<i64>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReesSet {
    pub valuations: Vec<ReesValuation>,
}

impl ReesSet {
    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.valuations.iter().map(|r| r.vector.clone()).collect()
    }

    pub fn contains_vector(&self, v: &[i64]) -> bool {
        self.valuations.iter().any(|r| r.vector == v)
    }
}

/// One valuation per compact facet of the Newton polyhedron.
pub fn rees_valuations(ideal: &MonomialIdeal) -> Result<ReesSet> {
    if !ideal.is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    let mut valuations: Vec<ReesValuation> = newton_facets(ideal)?
        .into_iter()
        .filter(|f| f.is_compact())
        .map(|f| {
            debug_assert_eq!(f.offset, valuation_value(&f.normal, ideal));
            ReesValuation { vector: f.normal, value: f.offset }
        })
        .collect();
    valuations.sort();
    Ok(ReesSet { valuations })
}

/// Whether the order valuation of the chain's last point is a Rees valuation.
pub fn order_in_rees(chain: &QuadraticChain, ideal: &MonomialIdeal) -> Result<bool> {
    Ok(rees_valuations(ideal)?.contains_vector(&order_valuation(chain)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn rv(vector: &[i64], value: i64) -> ReesValuation {
        ReesValuation { vector: vector.to_vec(), value }
    }

    #[test]
    fn rees_of_p2() {
        let p2 = ideal(3, &[&[3, 0, 0], &[2, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
        assert_eq!(rees_valuations(&p2).unwrap().valuations, vec![rv(&[1, 1, 1], 2), rv(&[2, 3, 4], 6)]);
        let p2_plane = ideal(2, &[&[3, 0], &[2, 1], &[0, 2]]);
        assert_eq!(rees_valuations(&p2_plane).unwrap().valuations, vec![rv(&[2, 3], 6)]);
    }

    #[test]
    fn rees_of_maximal_and_p1() {
        assert_eq!(rees_valuations(&MonomialIdeal::maximal(3)).unwrap().valuations, vec![rv(&[1, 1, 1], 1)]);
        let p1 = ideal(3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let root = QuadraticChain::root(3);
        assert!(!order_in_rees(&root, &p1).unwrap());
        assert!(order_in_rees(&QuadraticChain::new(3, vec![0]).unwrap(), &p1).unwrap());
    }

    #[test]
    fn non_primary_is_rejected() {
        assert_eq!(rees_valuations(&ideal(2, &[&[1, 0]])), Err(Error::NotMPrimary));
        assert_eq!(rees_valuations(&MonomialIdeal::unit(2)), Err(Error::NotMPrimary));
    }
}
