//! Projective models assembled from affine charts.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infnear::{base_point_tree, order_valuation, validate_shape, QuadraticChain};
use crate::monomial::{integral_closure, MonomialIdeal};
use crate::rees::{rees_valuations, ReesSet};
use crate::starsimple::special_star_simple;
use crate::toric::{analyze_face, chart, faces, multiplicity, AffineChart, ClassGroup};

/// Proj of the normalized Rees algebra, as one saturated chart per minimal
/// generator of the closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveModel {
    pub ideal: MonomialIdeal,
    pub charts: Vec<AffineChart>,
}

impl ProjectiveModel {
    /// Charts at vertices of the Newton polyhedron; the others are
    /// localizations of these.
    pub fn pointed_charts(&self) -> impl Iterator<Item = &AffineChart> {
        self.charts.iter().filter(|c| c.is_pointed())
    }

    /// Canonical identity of the model: the set of its pointed chart
    /// semigroups.
    pub fn key(&self) -> BTreeSet<Vec<Vec<i64>>> {
        self.pointed_charts().map(|c| c.generators().to_vec()).collect()
    }
}

pub fn normalized_blowup(ideal: &MonomialIdeal) -> Result<ProjectiveModel> {
    if !ideal.is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    let closure = integral_closure(ideal)?;
    let charts = closure.gens().par_iter().map(|g| chart(&closure, g, true)).collect::<Result<Vec<_>>>()?;
    Ok(ProjectiveModel { ideal: closure, charts })
}

/// A torus-invariant singular point of a model, identified by the facet
/// valuations through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularStratum {
    pub facets: Vec<Vec<i64>>,
    /// Dimension of the local ring.
    pub height: usize,
    /// Dimension of the stratum's closure.
    pub dim: usize,
    /// Generators `g` of the charts `R[I/x^g]` containing the stratum.
    pub charts: Vec<Vec<i64>>,
    pub normal: bool,
    pub embedding_dimension: usize,
    pub class_group: Option<ClassGroup>,
    pub multiplicity: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub regular: bool,
    pub chart_count: usize,
    pub singular_strata: Vec<SingularStratum>,
    /// Indices of strata not in the closure of another singular stratum.
    pub singular_components: Vec<usize>,
    pub singular_locus_dimension: Option<usize>,
}

pub fn analyze_model(model: &ProjectiveModel) -> Result<ModelReport> {
    analyze_model_with(model, true)
}

/// The census with or without Hilbert-Samuel multiplicities, which dominate
/// the cost on large models.
pub fn analyze_model_with(model: &ProjectiveModel, multiplicities: bool) -> Result<ModelReport> {
    let per_chart: Vec<Vec<(Vec<i64>, SingularStratum)>> = model
        .charts
        .par_iter()
        .map(|c| {
            let at = c.source().map(|s| s.at.clone()).unwrap_or_default();
            let mut out = Vec::new();
            for f in faces(c) {
                let local = analyze_face(c, &f)?;
                if local.smooth {
                    continue;
                }
                out.push((
                    at.clone(),
                    SingularStratum {
                        facets: f.facets.clone(),
                        height: f.height,
                        dim: f.dim,
                        charts: Vec::new(),
                        normal: local.normal,
                        embedding_dimension: local.embedding_dimension,
                        class_group: local.class_group,
                        multiplicity: if multiplicities { multiplicity(c, &f).ok() } else { None },
                    },
                ));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut strata: Vec<SingularStratum> = Vec::new();
    for (at, s) in per_chart.into_iter().flatten() {
        match strata.iter_mut().find(|t| t.facets == s.facets) {
            Some(t) => t.charts.push(at),
            None => {
                let mut s = s;
                s.charts.push(at);
                strata.push(s);
            }
        }
    }
    for s in &mut strata {
        s.charts.sort();
        s.charts.dedup();
    }
    strata.sort_by(|a, b| (a.height, &a.facets).cmp(&(b.height, &b.facets)));

    let contains =
        |small: &[Vec<i64>], big: &[Vec<i64>]| small.len() < big.len() && small.iter().all(|u| big.contains(u));
    let singular_components: Vec<usize> =
        (0..strata.len()).filter(|&i| !strata.iter().any(|t| contains(&t.facets, &strata[i].facets))).collect();
    Ok(ModelReport {
        regular: strata.is_empty(),
        chart_count: model.charts.len(),
        singular_locus_dimension: strata.iter().map(|s| s.dim).max(),
        singular_strata: strata,
        singular_components,
    })
}

/// The ideal `∏ P_i` over the points of `gamma`; the root contributes `m`.
pub fn gamma_ideal(dim: usize, gamma: &[QuadraticChain]) -> Result<MonomialIdeal> {
    validate_shape(dim, gamma)?;
    let specials: Vec<MonomialIdeal> =
        gamma.par_iter().map(|c| special_star_simple(c).map(|s| s.ideal)).collect::<Result<_>>()?;
    Ok(specials.iter().fold(MonomialIdeal::unit(dim), |acc, p| acc.product(p)))
}

/// The saturated regular model `X_Γ`; its regularity is checked.
pub fn x_gamma(dim: usize, gamma: &[QuadraticChain]) -> Result<(ProjectiveModel, ModelReport)> {
    let model = normalized_blowup(&gamma_ideal(dim, gamma)?)?;
    let report = analyze_model(&model)?;
    if !report.regular {
        return Err(Error::ConstructionUnverified(format!(
            "model of {} points has {} singular strata",
            gamma.len(),
            report.singular_strata.len()
        )));
    }
    Ok((model, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationEvidence {
    pub holds: bool,
    pub rees: ReesSet,
    pub base_point_valuations: Vec<Vec<i64>>,
    /// `Rees I` equals the set of base-point order valuations.
    pub rees_precondition: bool,
    /// Present when the precondition holds and the model was examined.
    pub model: Option<ModelReport>,
}

pub fn saturated_factorization(ideal: &MonomialIdeal) -> Result<SaturationEvidence> {
    let tree = base_point_tree(ideal)?;
    let rees = rees_valuations(ideal)?;
    let mut base_point_valuations: Vec<Vec<i64>> = tree.chains().iter().map(order_valuation).collect();
    base_point_valuations.sort();
    base_point_valuations.dedup();
    let rees_precondition = rees.vectors() == base_point_valuations;
    let model = if rees_precondition { Some(analyze_model(&normalized_blowup(ideal)?)?) } else { None };
    let holds = model.as_ref().is_some_and(|m| m.regular);
    Ok(SaturationEvidence { holds, rees, base_point_valuations, rees_precondition, model })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelClass {
    /// Exponent of each point's special *-simple ideal, in tree order.
    pub exponents: Vec<i64>,
    pub regular: bool,
    pub singular_strata: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCount {
    pub points: Vec<QuadraticChain>,
    pub count: usize,
    pub classes: Vec<ModelClass>,
}

/// Distinct normalized models over the ideals `∏ P_i^{a_i}` with `a_i ∈ {0, 1}`
/// on non-terminal points and `a_i = 1` on terminal ones.
pub fn distinct_models(dim: usize, gamma: &[QuadraticChain]) -> Result<ModelCount> {
    validate_shape(dim, gamma)?;
    let mut points = gamma.to_vec();
    points.sort_by(crate::infnear::chain_order);
    let terminal: Vec<bool> = points.iter().map(|c| !points.iter().any(|d| d.parent().as_ref() == Some(c))).collect();
    let free: Vec<usize> = (0..points.len()).filter(|&i| !terminal[i]).collect();
    let specials: Vec<MonomialIdeal> =
        points.par_iter().map(|c| special_star_simple(c).map(|s| s.ideal)).collect::<Result<_>>()?;

    let patterns: Vec<Vec<i64>> = (0..1u64 << free.len())
        .map(|mask| {
            let mut e: Vec<i64> = terminal.iter().map(|&t| t as i64).collect();
            for (bit, &i) in free.iter().enumerate() {
                e[i] = ((mask >> bit) & 1) as i64;
            }
            e
        })
        .collect();
    type Evaluated = (Vec<i64>, BTreeSet<Vec<Vec<i64>>>, ModelReport);
    let evaluated: Vec<Evaluated> = patterns
        .into_par_iter()
        .map(|e| {
            let ideal = specials
                .iter()
                .zip(&e)
                .filter(|(_, &a)| a > 0)
                .fold(MonomialIdeal::unit(dim), |acc, (p, _)| acc.product(p));
            let model = normalized_blowup(&ideal)?;
            let report = analyze_model_with(&model, false)?;
            Ok((e, model.key(), report))
        })
        .collect::<Result<_>>()?;

    let mut seen: Vec<BTreeSet<Vec<Vec<i64>>>> = Vec::new();
    let mut classes = Vec::new();
    for (e, key, report) in evaluated {
        if !seen.contains(&key) {
            seen.push(key);
            classes.push(ModelClass {
                exponents: e,
                regular: report.regular,
                singular_strata: report.singular_strata.len(),
            });
        }
    }
    Ok(ModelCount { points, count: classes.len(), classes })
}
