//! Affine charts of blowups as semigroups of Laurent monomials.
//!
//! A chart `R[I/x^g]` is the semigroup ring of `S = <a - g : a in gens(I)> +
//! N^d` inside `Z^d`. Its geometry is read off the cone of `S`: faces are
//! torus-invariant primes, facets are the height-one primes and their
//! inward normals are the corresponding divisorial valuations.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    cone_facets, det_i128, dot, next_combination, primitive, rank_of, smith_decomposition, smith_normal_form,
    unimodular_inverse, unit, IntMatrix, LatticeQuotient,
};
use crate::monomial::{integral_closure, ExponentVector, MonomialIdeal};

pub const DEFAULT_HS_BOUND: usize = 16;

/// Bound on `n` for Hilbert-Samuel stabilization, overridable through
/// `FINSUPP_HS_BOUND`.
pub fn hs_bound() -> usize {
    std::env::var("FINSUPP_HS_BOUND").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_HS_BOUND)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChartSource {
    pub ideal: MonomialIdeal,
    pub at: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineChart {
    dim: usize,
    generators: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    saturated: bool,
    source: Option<ChartSource>,
}

impl AffineChart {
    /// The semigroup generated by `gens`, reduced to a minimal generating
    /// set. The generated group must be all of `Z^d`.
    pub fn from_generators(dim: usize, gens: Vec<Vec<i64>>) -> Result<Self> {
        let mut gens: Vec<Vec<i64>> = gens.into_iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
        if gens.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: gens.iter().map(Vec::len).find(|&l| l != dim).unwrap_or(0),
            });
        }
        gens.sort();
        gens.dedup();
        if rank_of(&gens, dim) < dim || !LatticeQuotient::new(dim, &gens)?.is_trivial() {
            return Err(Error::DegenerateInput("chart generators must generate the whole lattice".into()));
        }
        let facets = cone_facets(dim, &gens)?;
        let generators = reduce_generators(&facets, gens)?;
        Ok(AffineChart { dim, generators, facets, saturated: false, source: None })
    }

    /// All lattice points of the cone of `self`.
    pub fn saturate(&self) -> Result<Self> {
        let generators = hilbert_basis(self.dim, &self.facets, &self.generators)?;
        Ok(AffineChart {
            dim: self.dim,
            generators,
            facets: self.facets.clone(),
            saturated: true,
            source: self.source.clone(),
        })
    }

    /// Adjoins the inverse of a monomial.
    pub fn invert(&self, m: &[i64]) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(m.iter().map(|x| -x).collect());
        let mut c = AffineChart::from_generators(self.dim, gens)?;
        if self.saturated {
            c = c.saturate()?;
        }
        c.source = self.source.clone();
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Inward primitive normals of the cone's facets, sorted.
    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn source(&self) -> Option<&ChartSource> {
        self.source.as_ref()
    }

    /// Generators that are units (lie in every facet).
    pub fn units(&self) -> Vec<Vec<i64>> {
        self.generators.iter().filter(|g| self.facets.iter().all(|u| dot(u, g) == 0)).cloned().collect()
    }

    pub fn is_pointed(&self) -> bool {
        self.units().is_empty()
    }

    pub fn facet_index(&self, normal: &[i64]) -> Option<usize> {
        self.facets.iter().position(|u| u == normal)
    }

    pub fn contains(&self, s: &[i64]) -> Result<bool> {
        Membership::new(self.dim, &self.facets, &self.generators)?.contains(s)
    }
}

/// `R[I/x^g]`, with `g` a minimal generator of the closure of `I`.
pub fn chart(ideal: &MonomialIdeal, at: &[i64], saturated: bool) -> Result<AffineChart> {
    let closure = integral_closure(ideal)?;
    if !closure.gens().iter().any(|a| a == at) {
        return Err(Error::NotAGenerator(format!("{at:?}")));
    }
    let dim = ideal.dim();
    let mut gens: Vec<Vec<i64>> =
        closure.gens().iter().map(|a| a.iter().zip(at).map(|(x, y)| x - y).collect()).collect();
    gens.extend((0..dim).map(|i| unit(dim, i)));
    let mut c = AffineChart::from_generators(dim, gens)?;
    if saturated {
        c = c.saturate()?;
    }
    c.source = Some(ChartSource { ideal: closure, at: at.to_vec() });
    Ok(c)
}

fn facet_values(facets: &[Vec<i64>], s: &[i64]) -> Vec<i64> {
    facets.iter().map(|u| dot(u, s)).collect()
}

/// Membership in a finitely generated semigroup.
///
/// Units form the group `Λ` they generate; every other element is a sum of
/// non-unit generators plus an element of `Λ`, and each non-unit generator
/// strictly raises some facet value, which bounds the search.
struct Membership {
    facets: Vec<Vec<i64>>,
    plus: Vec<(Vec<i64>, Vec<i64>)>,
    quotient: LatticeQuotient,
}

impl Membership {
    fn new(dim: usize, facets: &[Vec<i64>], gens: &[Vec<i64>]) -> Result<Self> {
        let (units, plus): (Vec<Vec<i64>>, Vec<Vec<i64>>) =
            gens.iter().cloned().partition(|g| facets.iter().all(|u| dot(u, g) == 0));
        let plus = plus.into_iter().map(|g| (facet_values(facets, &g), g)).collect();
        Ok(Membership { facets: facets.to_vec(), plus, quotient: LatticeQuotient::new(dim, &units)? })
    }

    fn contains(&self, s: &[i64]) -> Result<bool> {
        let target_phi = facet_values(&self.facets, s);
        if target_phi.iter().any(|&x| x < 0) {
            return Ok(false);
        }
        let target = self.quotient.key(s);
        let zero = vec![0i64; s.len()];
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut stack = vec![(zero.clone(), vec![0i64; self.facets.len()])];
        seen.insert(self.quotient.key(&zero));
        while let Some((t, phi)) = stack.pop() {
            if phi == target_phi && self.quotient.key(&t) == target {
                return Ok(true);
            }
            for (gphi, g) in &self.plus {
                let nphi: Vec<i64> = phi.iter().zip(gphi).map(|(a, b)| a + b).collect();
                if nphi.iter().zip(&target_phi).any(|(a, b)| a > b) {
                    continue;
                }
                let nt: Vec<i64> = t.iter().zip(g).map(|(a, b)| a + b).collect();
                if seen.insert(self.quotient.key(&nt)) {
                    stack.push((nt, nphi));
                }
            }
        }
        Ok(false)
    }
}

/// Drops generators that are sums of others; among associate generators the
/// first in sorted order is kept.
fn reduce_generators(facets: &[Vec<i64>], gens: Vec<Vec<i64>>) -> Result<Vec<Vec<i64>>> {
    let dim = gens.first().map_or(0, Vec::len);
    let is_unit = |g: &[i64]| facets.iter().all(|u| dot(u, g) == 0);
    let mut keep = gens.clone();
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        let g = keep[i].clone();
        if is_unit(&g) {
            continue;
        }
        let others: Vec<Vec<i64>> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h.clone()).collect();
        if Membership::new(dim, facets, &others)?.contains(&g)? {
            keep.remove(i);
        }
    }
    let units: Vec<Vec<i64>> = keep.iter().filter(|g| is_unit(g)).cloned().collect();
    let mut out: Vec<Vec<i64>> = keep.iter().filter(|g| !is_unit(g)).cloned().collect();
    out.extend(unit_basis(dim, &units));
    out.sort();
    Ok(out)
}

/// Replaces unit generators by a lattice basis of the group they generate,
/// with negatives, when an independent subset already generates it.
fn unit_basis(dim: usize, units: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for u in units {
        let mut candidate = basis.clone();
        candidate.push(u.clone());
        if rank_of(&candidate, dim) > basis.len() {
            basis.push(u.clone());
        }
    }
    let generates = LatticeQuotient::new(dim, &basis).map(|q| units.iter().all(|u| q.contains(u))).unwrap_or(false);
    let chosen = if generates { basis } else { units.to_vec() };
    let mut out: Vec<Vec<i64>> = chosen.iter().flat_map(|b| [b.clone(), b.iter().map(|x| -x).collect()]).collect();
    out.sort();
    out.dedup();
    out
}

/// Hilbert basis of `cone ∩ Z^d` for the cone with the given facets and
/// generating rays, including a basis of the lineality lattice with
/// negatives.
pub fn hilbert_basis(dim: usize, facets: &[Vec<i64>], rays: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if facets.is_empty() {
        return Ok((0..dim).flat_map(|i| [unit(dim, i), unit(dim, i).iter().map(|x| -x).collect()]).collect());
    }
    let n = IntMatrix::from_rows(facets, dim);
    let dec = smith_decomposition(&n);
    let r = dec.rank;
    let v = dec.right;
    let v_inv = unimodular_inverse(&v)?;
    let v64 = v.to_i64_rows()?;
    let vinv64 = v_inv.to_i64_rows()?;
    let project = |s: &[i64]| -> Vec<i64> { (0..r).map(|i| dot(&vinv64[i], s)).collect() };
    let lift = |y: &[i64]| -> Vec<i64> { (0..dim).map(|i| (0..r).map(|j| v64[i][j] * y[j]).sum()).collect() };
    let qfacets: Vec<Vec<i64>> =
        facets.iter().map(|u| (0..r).map(|j| (0..dim).map(|i| u[i] * v64[i][j]).sum()).collect()).collect();
    let in_cone = |y: &[i64]| qfacets.iter().all(|u| dot(u, y) >= 0);

    let mut extreme: Vec<Vec<i64>> = Vec::new();
    for g in rays {
        let y = project(g);
        if y.iter().all(|&x| x == 0) {
            continue;
        }
        let y = primitive(&y);
        let tight: Vec<Vec<i64>> = qfacets.iter().filter(|u| dot(u, &y) == 0).cloned().collect();
        if rank_of(&tight, r) + 1 == r && !extreme.contains(&y) {
            extreme.push(y);
        }
    }
    extreme.sort();

    let mut candidates: HashSet<Vec<i64>> = extreme.iter().cloned().collect();
    if extreme.len() >= r {
        let mut idx: Vec<usize> = (0..r).collect();
        loop {
            let w: Vec<&Vec<i64>> = idx.iter().map(|&i| &extreme[i]).collect();
            for p in parallelepiped_points(r, &w)? {
                if p.iter().any(|&x| x != 0) {
                    candidates.insert(p);
                }
            }
            if !next_combination(&mut idx, extreme.len()) {
                break;
            }
        }
    }
    let candidates: Vec<Vec<i64>> = candidates.into_iter().collect();
    let mut basis: Vec<Vec<i64>> = candidates
        .iter()
        .filter(|h| {
            !candidates.iter().any(|g| g != *h && in_cone(&h.iter().zip(g).map(|(a, b)| a - b).collect::<Vec<_>>()))
        })
        .map(|h| lift(h))
        .collect();
    for j in r..dim {
        let col: Vec<i64> = (0..dim).map(|i| v64[i][j]).collect();
        basis.push(col.iter().map(|x| -x).collect());
        basis.push(col);
    }
    basis.sort();
    basis.dedup();
    Ok(basis)
}

/// Lattice points `sum λ_i w_i` with `0 <= λ_i < 1`.
fn parallelepiped_points(r: usize, w: &[&Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    // Matrix with the w_i as columns.
    let m: Vec<Vec<i128>> = (0..r).map(|i| w.iter().map(|c| c[i] as i128).collect()).collect();
    let det = det_i128(m.clone()).ok_or(Error::Overflow)?;
    if det == 0 {
        return Ok(Vec::new());
    }
    // adj[j][i] = (-1)^{i+j} det(minor without row i, column j)
    let mut adj = vec![vec![0i128; r]; r];
    for i in 0..r {
        for j in 0..r {
            let minor: Vec<Vec<i128>> =
                (0..r).filter(|&a| a != i).map(|a| (0..r).filter(|&b| b != j).map(|b| m[a][b]).collect()).collect();
            let d = det_i128(minor).ok_or(Error::Overflow)?;
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    let (lo, hi): (Vec<i64>, Vec<i64>) = (0..r)
        .map(|i| {
            let neg: i64 = w.iter().map(|c| c[i].min(0)).sum();
            let pos: i64 = w.iter().map(|c| c[i].max(0)).sum();
            (neg, pos)
        })
        .unzip();
    let abs = det.abs();
    let mut out = Vec::new();
    let mut p = lo.clone();
    loop {
        let inside = (0..r).all(|j| {
            let t: i128 = (0..r).map(|i| adj[j][i] * p[i] as i128).sum::<i128>() * det.signum();
            (0..abs).contains(&t)
        });
        if inside {
            out.push(p.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(out);
            }
            if p[i] < hi[i] {
                p[i] += 1;
                break;
            }
            p[i] = lo[i];
            i += 1;
        }
    }
}

/// `Z^k / (image of Z^d)` for a facet-value map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, ascending and dividing each other.
    pub torsion: Vec<u64>,
}

impl ClassGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }
}

impl std::fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of `Z^dim -> Z^{facets}`, `s ↦ (u_F · s)_F`.
pub fn class_group_of(dim: usize, facets: &[Vec<i64>]) -> Result<ClassGroup> {
    if facets.is_empty() {
        return Ok(ClassGroup { free_rank: 0, torsion: Vec::new() });
    }
    let rows: Vec<Vec<i64>> = (0..dim).map(|i| facets.iter().map(|u| u[i]).collect()).collect();
    let snf = smith_normal_form(&IntMatrix::from_rows(&rows, facets.len()));
    let torsion =
        snf.torsion().iter().map(|t| u64::try_from(t).map_err(|_| Error::Overflow)).collect::<Result<Vec<_>>>()?;
    Ok(ClassGroup { free_rank: facets.len() - snf.rank, torsion })
}

/// A face of the chart's cone, i.e. a torus-invariant prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    /// Chart generators lying on the face (they become units at the prime).
    pub generators: Vec<Vec<i64>>,
    /// Normals of the facets containing the face.
    pub facets: Vec<Vec<i64>>,
    pub dim: usize,
    pub height: usize,
}

/// All faces, including the whole cone (height 0), sorted by height.
pub fn faces(chart: &AffineChart) -> Vec<Face> {
    let g = &chart.generators;
    let all: Vec<usize> = (0..g.len()).collect();
    let mut sets: Vec<Vec<usize>> = vec![all];
    for u in &chart.facets {
        sets.push((0..g.len()).filter(|&i| dot(u, &g[i]) == 0).collect());
    }
    loop {
        let mut added = false;
        let snapshot = sets.clone();
        for a in &snapshot {
            for b in &snapshot {
                let c: Vec<usize> = a.iter().filter(|i| b.contains(i)).copied().collect();
                if !sets.contains(&c) {
                    sets.push(c);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Face> = sets
        .into_iter()
        .map(|set| {
            let generators: Vec<Vec<i64>> = set.iter().map(|&i| g[i].clone()).collect();
            let dim = rank_of(&generators, chart.dim);
            let facets = chart.facets.iter().filter(|u| generators.iter().all(|x| dot(u, x) == 0)).cloned().collect();
            Face { generators, facets, dim, height: chart.dim - dim }
        })
        .collect();
    out.sort_by(|a, b| (a.height, &a.generators).cmp(&(b.height, &b.generators)));
    out.dedup();
    out
}

/// The smallest face, whose prime is the chart's "vertex" (maximal
/// torus-invariant prime).
pub fn minimal_face(chart: &AffineChart) -> Face {
    faces(chart).pop().expect("a cone has faces")
}

/// Local semigroup at a face: the chart with the face's generators inverted.
fn localized_generators(chart: &AffineChart, face: &Face) -> Vec<Vec<i64>> {
    let mut gens = chart.generators.clone();
    gens.extend(face.generators.iter().map(|g| g.iter().map(|x| -x).collect::<Vec<_>>()));
    gens
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub face: Face,
    pub normal: bool,
    pub smooth: bool,
    pub embedding_dimension: usize,
    /// Class group of the localization, when it is normal.
    pub class_group: Option<ClassGroup>,
}

/// Normality, smoothness, embedding dimension and class group at a face.
pub fn analyze_face(chart: &AffineChart, face: &Face) -> Result<LocalReport> {
    let dim = chart.dim;
    let local = localized_generators(chart, face);
    let normal = chart.saturated || {
        let member = Membership::new(dim, &face.facets, &local)?;
        let hb = hilbert_basis(dim, &chart.facets, &chart.generators)?;
        let mut ok = true;
        for h in &hb {
            let on_face = face.facets.iter().all(|u| dot(u, h) == 0);
            let neg: Vec<i64> = h.iter().map(|x| -x).collect();
            if !member.contains(h)? || (on_face && !member.contains(&neg)?) {
                ok = false;
                break;
            }
        }
        ok
    };
    let class_group = if normal { Some(class_group_of(dim, &face.facets)?) } else { None };
    let smooth = normal && face.facets.len() == face.height && {
        let snf = smith_normal_form(&IntMatrix::from_rows(&face.facets, dim));
        snf.rank == face.height && snf.torsion().is_empty()
    };
    let embedding_dimension = embedding_dimension_at(chart, face)?;
    Ok(LocalReport { face: face.clone(), normal, smooth, embedding_dimension, class_group })
}

/// Number of irreducible non-units of the local semigroup, up to units.
pub fn embedding_dimension_at(chart: &AffineChart, face: &Face) -> Result<usize> {
    let dim = chart.dim;
    let local = localized_generators(chart, face);
    let member = Membership::new(dim, &face.facets, &local)?;
    let units = LatticeQuotient::new(dim, &face.generators)?;
    let phi = |s: &[i64]| facet_values(&face.facets, s);
    let nonunits: Vec<&Vec<i64>> = chart.generators.iter().filter(|g| phi(g).iter().any(|&x| x != 0)).collect();
    let mut classes: HashSet<Vec<i64>> = HashSet::new();
    for g in &nonunits {
        let mut reducible = false;
        for h in &nonunits {
            let diff: Vec<i64> = g.iter().zip(h.iter()).map(|(a, b)| a - b).collect();
            let dphi = phi(&diff);
            if dphi.iter().all(|&x| x >= 0) && dphi.iter().any(|&x| x > 0) && member.contains(&diff)? {
                reducible = true;
                break;
            }
        }
        if !reducible {
            classes.insert(units.key(g));
        }
    }
    Ok(classes.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartAnalysis {
    pub generators: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
    pub pointed: bool,
    pub normal: bool,
    /// At the minimal face.
    pub embedding_dimension: usize,
    pub class_group: Option<ClassGroup>,
    /// Faces whose localization is singular.
    pub singular: Vec<LocalReport>,
}

pub fn analyze_chart(chart: &AffineChart) -> Result<ChartAnalysis> {
    let all = faces(chart);
    let mut reports = Vec::with_capacity(all.len());
    for f in &all {
        reports.push(analyze_face(chart, f)?);
    }
    let vertex = reports.last().expect("minimal face").clone();
    let normal = reports.iter().all(|r| r.normal);
    let class_group = if normal { Some(class_group_of(chart.dim, &chart.facets)?) } else { None };
    Ok(ChartAnalysis {
        generators: chart.generators.clone(),
        facets: chart.facets.clone(),
        pointed: chart.is_pointed(),
        normal,
        embedding_dimension: vertex.embedding_dimension,
        class_group,
        singular: reports.into_iter().filter(|r| !r.smooth).collect(),
    })
}

/// The face on which `v` vanishes, for `v` nonnegative on the chart.
pub fn valuation_center(chart: &AffineChart, v: &[i64]) -> Result<Face> {
    if chart.generators.iter().any(|g| dot(v, g) < 0) {
        return Err(Error::NotCentered);
    }
    let zero: Vec<Vec<i64>> = chart.generators.iter().filter(|g| dot(v, g) == 0).cloned().collect();
    faces(chart)
        .into_iter()
        .find(|f| f.generators == zero)
        .ok_or_else(|| Error::DegenerateInput("center is not a face".into()))
}

/// Facet valuations of a monomial, in the order of `chart.facets()`.
pub fn principal_divisor(chart: &AffineChart, m: &[i64]) -> Result<Vec<i64>> {
    if m.len() != chart.dim {
        return Err(Error::NotInChart);
    }
    Ok(facet_values(&chart.facets, m))
}

/// Whether `L · m = m^2` for the maximal ideal at the minimal face.
pub fn reduction_check(chart: &AffineChart, reduction: &[Vec<i64>]) -> Result<bool> {
    let member = Membership::new(chart.dim, &chart.facets, &chart.generators)?;
    let maximal: Vec<&Vec<i64>> =
        chart.generators.iter().filter(|g| chart.facets.iter().any(|u| dot(u, g) != 0)).collect();
    for (i, a) in maximal.iter().enumerate() {
        for b in &maximal[i..] {
            let sum: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
            let mut covered = false;
            'search: for l in reduction {
                for g in &maximal {
                    let rest: Vec<i64> = sum.iter().zip(l).zip(g.iter()).map(|((s, x), y)| s - x - y).collect();
                    if member.contains(&rest)? {
                        covered = true;
                        break 'search;
                    }
                }
            }
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `k` with `s` a sum of `k` non-units in the local semigroup at
/// the minimal face, capped at `cap`.
pub fn adic_order(chart: &AffineChart, s: &[i64], cap: usize) -> Result<usize> {
    let face = minimal_face(chart);
    let member = Membership::new(chart.dim, &chart.facets, &chart.generators)?;
    if !member.contains(s)? {
        return Err(Error::NotInChart);
    }
    let nonunits: Vec<&Vec<i64>> =
        chart.generators.iter().filter(|g| face.facets.iter().any(|u| dot(u, g) != 0)).collect();
    fn order(
        s: &[i64],
        depth: usize,
        cap: usize,
        nonunits: &[&Vec<i64>],
        member: &Membership,
        memo: &mut HashMap<Vec<i64>, usize>,
    ) -> Result<usize> {
        if depth == cap {
            return Ok(0);
        }
        if let Some(&k) = memo.get(s) {
            return Ok(k);
        }
        let mut best = 0;
        for g in nonunits {
            let rest: Vec<i64> = s.iter().zip(g.iter()).map(|(a, b)| a - b).collect();
            if member.contains(&rest)? {
                best = best.max(1 + order(&rest, depth + 1, cap, nonunits, member, memo)?);
            }
        }
        memo.insert(s.to_vec(), best);
        Ok(best)
    }
    order(s, 0, cap, &nonunits, &member, &mut HashMap::new())
}

/// Hilbert-Samuel lengths `ℓ(1..=n_max)` of the local ring at a face.
pub fn hilbert_samuel(chart: &AffineChart, face: &Face, n_max: usize) -> Result<Vec<u64>> {
    let dim = chart.dim;
    let local = localized_generators(chart, face);
    let units = LatticeQuotient::new(dim, &face.generators)?;
    let grading: Vec<i64> = (0..dim).map(|i| face.facets.iter().map(|u| u[i]).sum()).collect();
    let nonunits: Vec<Vec<i64>> = local.iter().filter(|g| dot(&grading, g) > 0).cloned().collect();
    let gmax = nonunits.iter().map(|g| dot(&grading, g)).max().unwrap_or(0);
    let limit = gmax * n_max as i64;

    // Each class of the local semigroup modulo units, by increasing grading.
    let mut order: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut buckets: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    buckets.insert(0, vec![vec![0; dim]]);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(units.key(&vec![0; dim]));
    let mut counts = vec![0u64; n_max + 1];
    while let Some((level, items)) = buckets.pop_first() {
        for s in items {
            let key = units.key(&s);
            let mut ord = 0;
            for g in &nonunits {
                let rest: Vec<i64> = s.iter().zip(g).map(|(a, b)| a - b).collect();
                if let Some(&k) = order.get(&units.key(&rest)) {
                    ord = ord.max(k + 1);
                }
            }
            order.insert(key, ord);
            if ord < n_max {
                for c in counts.iter_mut().skip(ord + 1) {
                    *c += 1;
                }
            }
            for g in &nonunits {
                let next_level = level + dot(&grading, g);
                if next_level >= limit {
                    continue;
                }
                let t: Vec<i64> = s.iter().zip(g).map(|(a, b)| a + b).collect();
                if seen.insert(units.key(&t)) {
                    buckets.entry(next_level).or_default().push(t);
                }
            }
        }
    }
    Ok(counts[1..].to_vec())
}

/// Hilbert-Samuel multiplicity at a face, read off the stabilized
/// `height`-th difference of the length function.
pub fn multiplicity(chart: &AffineChart, face: &Face) -> Result<u64> {
    multiplicity_with_bound(chart, face, hs_bound())
}

pub fn multiplicity_with_bound(chart: &AffineChart, face: &Face, bound: usize) -> Result<u64> {
    let h = face.height;
    if h == 0 {
        return Ok(1);
    }
    let lengths = hilbert_samuel(chart, face, bound)?;
    let mut diffs: Vec<i64> = std::iter::once(0).chain(lengths.iter().map(|&x| x as i64)).collect();
    for _ in 0..h {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    // diffs[i] is the h-th difference ending at n = i + h.
    let need = h + 1;
    for start in 0..diffs.len().saturating_sub(need - 1) {
        let window = &diffs[start..start + need];
        if window.iter().all(|&x| x == window[0]) && window[0] > 0 {
            return Ok(window[0] as u64);
        }
    }
    Err(Error::DidNotStabilize(bound))
}
