//! Monomial infinitely near points.
//!
//! A point is reached from the root by a chain of local quadratic transforms,
//! each centered on a coordinate axis. Blowing up in direction `j` replaces
//! `x_i` by `x_i / x_j` for `i != j` and keeps `x_j`, which becomes the
//! equation of the new exceptional divisor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::monomial::{minimalize, MonomialIdeal};

pub const DEFAULT_MAX_DEPTH: usize = 32;

/// An infinitely near point, named by its direction indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadraticChain {
    dim: usize,
    directions: Vec<usize>,
}

impl QuadraticChain {
    pub fn new(dim: usize, directions: Vec<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(&index) = directions.iter().find(|&&j| j >= dim) {
            return Err(Error::InvalidDirection { index, dim });
        }
        Ok(QuadraticChain { dim, directions })
    }

    pub fn root(dim: usize) -> Self {
        QuadraticChain { dim, directions: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn directions(&self) -> &[usize] {
        &self.directions
    }

    /// Number of quadratic transforms from the root.
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn parent(&self) -> Option<QuadraticChain> {
        let (_, rest) = self.directions.split_last()?;
        Some(QuadraticChain { dim: self.dim, directions: rest.to_vec() })
    }

    pub fn child(&self, j: usize) -> QuadraticChain {
        let mut directions = self.directions.clone();
        directions.push(j);
        QuadraticChain { dim: self.dim, directions }
    }

    /// The truncation to the first `k` steps.
    pub fn prefix(&self, k: usize) -> QuadraticChain {
        QuadraticChain { dim: self.dim, directions: self.directions[..k].to_vec() }
    }

    /// All truncations, root first, ending with `self`.
    pub fn prefixes(&self) -> Vec<QuadraticChain> {
        (0..=self.len()).map(|k| self.prefix(k)).collect()
    }

    pub fn is_prefix_of(&self, other: &QuadraticChain) -> bool {
        self.dim == other.dim && other.directions.starts_with(&self.directions)
    }

    /// Root exponent vectors of this point's coordinates: entry `i` is the
    /// Laurent monomial that became the `i`-th variable.
    pub fn coordinates(&self) -> Vec<Vec<i64>> {
        let mut coords: Vec<Vec<i64>> = (0..self.dim).map(|i| crate::linalg::unit(self.dim, i)).collect();
        for &j in &self.directions {
            coords = step_coordinates(&coords, j);
        }
        coords
    }

    /// Root exponent vector of the exceptional divisor created by step `k`.
    pub fn exceptional(&self, k: usize) -> Vec<i64> {
        self.prefix(k).coordinates()[self.directions[k]].clone()
    }
}

fn step_coordinates(coords: &[Vec<i64>], j: usize) -> Vec<Vec<i64>> {
    coords
        .iter()
        .enumerate()
        .map(|(i, c)| if i == j { c.clone() } else { c.iter().zip(&coords[j]).map(|(a, b)| a - b).collect() })
        .collect()
}

/// Transform of `ideal` along one quadratic transform in direction `j`:
/// `I R' = x_j^r I'` with `r = ord(I)`.
pub fn transform(ideal: &MonomialIdeal, j: usize) -> Result<(i64, MonomialIdeal)> {
    let dim = ideal.dim();
    if j >= dim {
        return Err(Error::InvalidDirection { index: j, dim });
    }
    let r = ideal.ord()?;
    let mut raw = Vec::with_capacity(ideal.gens().len());
    for a in ideal.gens() {
        let mut b = a.clone();
        b[j] = a.iter().try_fold(0i64, |s, &x| s.checked_add(x)).ok_or(Error::Overflow)? - r;
        raw.push(b);
    }
    Ok((r, MonomialIdeal::new(dim, minimalize(raw))?))
}

/// Transforms along a whole chain; returns the orders met at each step and
/// the final transform.
pub fn transform_along(ideal: &MonomialIdeal, chain: &QuadraticChain) -> Result<(Vec<i64>, MonomialIdeal)> {
    let mut current = ideal.clone();
    let mut orders = Vec::with_capacity(chain.len());
    for &j in chain.directions() {
        if current.is_unit() {
            orders.push(0);
            continue;
        }
        let (r, next) = transform(&current, j)?;
        orders.push(r);
        current = next;
    }
    Ok((orders, current))
}

/// Values of the root variables under the order valuation of the chain's
/// last point.
pub fn order_valuation(chain: &QuadraticChain) -> Vec<i64> {
    let mut w = vec![1i64; chain.dim()];
    for &j in chain.directions().iter().rev() {
        let wj = w[j];
        for (i, x) in w.iter_mut().enumerate() {
            if i != j {
                *x += wj;
            }
        }
    }
    w
}

/// Expresses a valuation given on the root variables in the coordinates of
/// the chain's last point.
pub fn forward_valuation(v: &[i64], chain: &QuadraticChain) -> Vec<i64> {
    chain.coordinates().iter().map(|c| dot(v, c)).collect()
}

/// Whether the point `later` lies in the order valuation ring of `earlier`.
/// Only meaningful when `earlier` is a proper truncation of `later`.
pub fn is_proximate(later: &QuadraticChain, earlier: &QuadraticChain) -> bool {
    earlier.len() < later.len()
        && earlier.is_prefix_of(later)
        && forward_valuation(&order_valuation(earlier), later).iter().all(|&x| x >= 0)
}

/// All pairs `(j, k)`, `j > k`, of chain levels with `R_j` proximate to `R_k`.
pub fn proximity(chain: &QuadraticChain) -> Vec<(usize, usize)> {
    let points = chain.prefixes();
    let mut out = Vec::new();
    for j in 1..points.len() {
        for k in 0..j {
            if is_proximate(&points[j], &points[k]) {
                out.push((j, k));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeNode {
    pub chain: QuadraticChain,
    pub multiplicity: i64,
}

/// Base points with their point-basis entries, closed under truncation and
/// sorted parents first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasePointTree {
    dim: usize,
    nodes: Vec<TreeNode>,
}

impl BasePointTree {
    /// Builds a tree from explicit entries; nodes are re-sorted canonically.
    pub fn from_nodes(dim: usize, mut nodes: Vec<TreeNode>) -> Result<Self> {
        nodes.sort_by(|a, b| chain_order(&a.chain, &b.chain));
        let chains: Vec<QuadraticChain> = nodes.iter().map(|n| n.chain.clone()).collect();
        validate_shape(dim, &chains)?;
        if nodes.iter().any(|n| n.multiplicity < 1) {
            return Err(Error::InvalidGamma("multiplicities must be positive".into()));
        }
        Ok(BasePointTree { dim, nodes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn chains(&self) -> Vec<QuadraticChain> {
        self.nodes.iter().map(|n| n.chain.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, chain: &QuadraticChain) -> Option<usize> {
        self.nodes.iter().position(|n| &n.chain == chain)
    }

    pub fn contains(&self, chain: &QuadraticChain) -> bool {
        self.index_of(chain).is_some()
    }

    /// Multiplicity at `chain`, zero off the tree.
    pub fn multiplicity(&self, chain: &QuadraticChain) -> i64 {
        self.index_of(chain).map_or(0, |i| self.nodes[i].multiplicity)
    }

    pub fn multiplicities(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.multiplicity).collect()
    }

    /// Nodes with no child in the tree.
    pub fn terminal(&self) -> Vec<QuadraticChain> {
        self.nodes
            .iter()
            .filter(|n| !self.nodes.iter().any(|m| m.chain.parent().as_ref() == Some(&n.chain)))
            .map(|n| n.chain.clone())
            .collect()
    }

    /// Checks `r_k >= sum of r_j over points proximate to k`. This is a
    /// necessary condition on point bases in dimension 2 only.
    pub fn satisfies_proximity(&self) -> bool {
        proximity_feasible(&self.chains(), &self.multiplicities())
    }
}

/// Canonical node order: by depth, then lexicographically by directions.
pub fn chain_order(a: &QuadraticChain, b: &QuadraticChain) -> std::cmp::Ordering {
    (a.len(), a.directions()).cmp(&(b.len(), b.directions()))
}

/// Checks that `chains` contain the root, are closed under truncation and
/// share one dimension.
pub fn validate_shape(dim: usize, chains: &[QuadraticChain]) -> Result<()> {
    if !chains.iter().any(|c| c.is_root()) {
        return Err(Error::InvalidGamma("the root is missing".into()));
    }
    for c in chains {
        if c.dim() != dim {
            return Err(Error::InvalidGamma(format!("point {:?} has dimension {}", c.directions(), c.dim())));
        }
        if let Some(p) = c.parent() {
            if !chains.contains(&p) {
                return Err(Error::InvalidGamma(format!("parent of {:?} is missing", c.directions())));
            }
        }
    }
    let mut sorted = chains.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != chains.len() {
        return Err(Error::InvalidGamma("repeated point".into()));
    }
    Ok(())
}

/// `b_k >= sum of b_j over j proximate to k`, for every `k`.
pub fn proximity_feasible(chains: &[QuadraticChain], b: &[i64]) -> bool {
    chains.iter().enumerate().all(|(k, ck)| {
        let load: i64 = chains.iter().enumerate().filter(|(_, cj)| is_proximate(cj, ck)).map(|(j, _)| b[j]).sum();
        b[k] >= load
    })
}

/// Recursion cap, overridable through `FINSUPP_MAX_DEPTH`.
pub fn max_depth() -> usize {
    std::env::var("FINSUPP_MAX_DEPTH").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_DEPTH)
}

pub fn base_point_tree(ideal: &MonomialIdeal) -> Result<BasePointTree> {
    base_point_tree_with_depth(ideal, max_depth())
}

pub fn base_point_tree_with_depth(ideal: &MonomialIdeal, cap: usize) -> Result<BasePointTree> {
    if ideal.is_unit() {
        return Err(Error::NotMPrimary);
    }
    let mut nodes = Vec::new();
    let root = QuadraticChain::root(ideal.dim());
    let explored = explore(ideal, root, cap, &mut nodes);
    if !ideal.is_m_primary() {
        // A non-primary ideal is reported through the first offending
        // transform when there is one.
        return Err(match explored {
            Err(e @ Error::NotFinitelySupported { .. }) => e,
            _ => Error::NotMPrimary,
        });
    }
    explored?;
    BasePointTree::from_nodes(ideal.dim(), nodes)
}

fn explore(ideal: &MonomialIdeal, chain: QuadraticChain, cap: usize, nodes: &mut Vec<TreeNode>) -> Result<()> {
    let r = ideal.ord()?;
    if chain.len() > cap {
        return Err(Error::DepthExceeded(cap));
    }
    for j in 0..ideal.dim() {
        let (_, t) = transform(ideal, j)?;
        if t.is_unit() {
            continue;
        }
        let next = chain.child(j);
        if !t.is_m_primary() {
            return Err(Error::NotFinitelySupported {
                chain: next.directions().to_vec(),
                transform: t.gens().to_vec(),
            });
        }
        explore(&t, next, cap, nodes)?;
    }
    nodes.push(TreeNode { chain, multiplicity: r });
    Ok(())
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

    fn p2() -> MonomialIdeal {
        ideal(3, &[&[3, 0, 0], &[2, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]])
    }

    #[test]
    fn transform_examples() {
        let (r, t) = transform(&p2(), 0).unwrap();
        assert_eq!(r, 2);
        assert_eq!(t, ideal(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]));
        let mp2 = MonomialIdeal::maximal(3).product(&p2());
        let (r, t) = transform(&mp2, 0).unwrap();
        assert_eq!(r, 3);
        assert_eq!(t, ideal(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]));
        for j in 0..3 {
            let (r, t) = transform(&MonomialIdeal::maximal_power(3, 2), j).unwrap();
            assert_eq!(r, 2);
            assert!(t.is_unit());
        }
        assert_eq!(transform(&p2(), 3), Err(Error::InvalidDirection { index: 3, dim: 3 }));
    }

    #[test]
    fn order_valuation_tables() {
        assert_eq!(order_valuation(&QuadraticChain::root(3)), vec![1, 1, 1]);
        assert_eq!(order_valuation(&chain(3, &[0])), vec![1, 2, 2]);
        assert_eq!(order_valuation(&chain(3, &[0, 1])), vec![2, 3, 4]);
        assert_eq!(order_valuation(&chain(3, &[2])), vec![2, 2, 1]);
        assert_eq!(order_valuation(&chain(3, &[2, 1])), vec![4, 3, 2]);
        assert_eq!(order_valuation(&chain(2, &[0, 1])), vec![2, 3]);
    }

    #[test]
    fn forward_inverts_backward() {
        let c = chain(3, &[0, 1]);
        assert_eq!(forward_valuation(&order_valuation(&c), &c), vec![1, 1, 1]);
        assert_eq!(forward_valuation(&[1, 1, 1], &c), vec![1, 0, 0]);
    }

    #[test]
    fn proximity_of_setting_chain() {
        assert_eq!(proximity(&chain(3, &[0, 1])), vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(proximity(&chain(3, &[0, 0])), vec![(1, 0), (2, 1)]);
        assert!(!is_proximate(&chain(3, &[2, 1]), &chain(3, &[0])));
    }

    #[test]
    fn base_point_trees() {
        let t = base_point_tree(&MonomialIdeal::maximal(3)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.multiplicities(), vec![1]);

        let t = base_point_tree(&p2()).unwrap();
        assert_eq!(t.chains(), vec![chain(3, &[]), chain(3, &[0]), chain(3, &[0, 1])]);
        assert_eq!(t.multiplicities(), vec![2, 1, 1]);
        assert!(t.satisfies_proximity());
        assert_eq!(t.terminal(), vec![chain(3, &[0, 1])]);
    }

    #[test]
    fn non_finitely_supported_witness() {
        let k = ideal(3, &[&[3, 0, 0], &[0, 2, 0], &[1, 0, 1], &[2, 1, 0]]);
        match base_point_tree(&k) {
            Err(Error::NotFinitelySupported { chain, transform }) => {
                assert_eq!(chain, vec![2]);
                assert_eq!(transform, vec![vec![0, 2, 0], vec![1, 0, 0]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(base_point_tree(&MonomialIdeal::unit(2)), Err(Error::NotMPrimary));
        assert_eq!(
            base_point_tree(&ideal(2, &[&[1, 0]])),
            Err(Error::NotFinitelySupported { chain: vec![1], transform: vec![vec![1, 0]] })
        );
    }

    #[test]
    fn depth_cap() {
        let deep = ideal(2, &[&[40, 0], &[0, 1]]);
        assert_eq!(base_point_tree_with_depth(&deep, 5), Err(Error::DepthExceeded(5)));
        assert_eq!(base_point_tree(&deep).map(|t| t.len()), Err(Error::DepthExceeded(32)));
    }

    #[test]
    fn shape_validation() {
        let ok = vec![chain(2, &[]), chain(2, &[0]), chain(2, &[0, 1])];
        assert!(validate_shape(2, &ok).is_ok());
        assert!(validate_shape(2, &[chain(2, &[0])]).is_err());
        assert!(validate_shape(2, &[chain(2, &[]), chain(2, &[0, 1])]).is_err());
    }
}
