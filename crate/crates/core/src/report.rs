//! Serializable reports for each front-end command, with plain-text rendering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::infnear::{base_point_tree, order_valuation, QuadraticChain};
use crate::models::{
    analyze_model, distinct_models, normalized_blowup, x_gamma, ModelReport, ProjectiveModel, SingularStratum,
};
use crate::monomial::{integral_closure, is_complete, MonomialIdeal};
use crate::notation::{format_chain, format_laurent, parse_monomial};
use crate::problem::Problem;
use crate::rees::rees_valuations;
use crate::starsimple::{
    lipman_factorization, saturation_conditions, special_star_simple, star_simplicity_check_with_budget,
    SaturationConditions, Simplicity, DEFAULT_SEARCH_BUDGET,
};
use crate::toric::{analyze_chart, chart, ClassGroup, LocalReport};

/// Why a command could not produce a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandError {
    /// The request does not make sense for the problem file.
    Input(String),
    /// A computation rejected its input.
    Math(Error),
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Input(m) => write!(f, "{m}"),
            CommandError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Math(e)
    }
}

pub type CommandResult = std::result::Result<Report, CommandError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSummary {
    pub name: String,
    pub generators: Vec<String>,
    pub exponents: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePointEntry {
    pub chain: String,
    pub multiplicity: i64,
    pub order_valuation: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub chain: String,
    pub exponent: i64,
    pub special: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SimplicityEntry {
    Simple,
    Factors { left: Vec<String>, right: Vec<String> },
    Unknown { budget: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesEntry {
    pub vector: Vec<i64>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePointRees {
    pub chain: String,
    pub order_valuation: Vec<i64>,
    pub is_rees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceEntry {
    pub facets: Vec<Vec<i64>>,
    pub height: usize,
    pub dim: usize,
    pub normal: bool,
    pub embedding_dimension: usize,
    pub class_group: Option<ClassGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartSummary {
    pub at: String,
    pub generators: Vec<String>,
    pub facets: Vec<Vec<i64>>,
    pub pointed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumEntry {
    pub facets: Vec<Vec<i64>>,
    pub height: usize,
    pub dim: usize,
    pub charts: Vec<String>,
    pub normal: bool,
    pub embedding_dimension: usize,
    pub class_group: Option<ClassGroup>,
    pub multiplicity: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelClassEntry {
    pub exponents: Vec<i64>,
    pub regular: bool,
    pub singular_points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Basepoints {
        ideal: IdealSummary,
        complete: bool,
        base_points: Vec<BasePointEntry>,
    },
    Factorize {
        ideal: IdealSummary,
        factors: Vec<FactorEntry>,
        simplicity: SimplicityEntry,
    },
    Rees {
        ideal: IdealSummary,
        valuations: Vec<ReesEntry>,
        /// Absent when the ideal is not finitely supported.
        base_points: Option<Vec<BasePointRees>>,
    },
    Special {
        chain: String,
        generators: Vec<String>,
        point_basis: Vec<i64>,
        valuations: Vec<Vec<i64>>,
        values: Vec<i64>,
    },
    Blowup {
        ideal: IdealSummary,
        mode: String,
        regular: bool,
        charts: Vec<ChartSummary>,
        singular_points: Vec<StratumEntry>,
        singular_components: Vec<usize>,
        singular_locus_dimension: Option<usize>,
        rees: Vec<ReesEntry>,
        factorization: Option<Vec<FactorEntry>>,
    },
    Chart {
        ideal: IdealSummary,
        at: String,
        saturated: bool,
        generators: Vec<String>,
        facets: Vec<Vec<i64>>,
        pointed: bool,
        normal: bool,
        embedding_dimension: usize,
        class_group: Option<ClassGroup>,
        singular_faces: Vec<FaceEntry>,
    },
    Conditions {
        ideal: IdealSummary,
        bound: u32,
        conditions: SaturationConditions,
    },
    ModelsCount {
        tree: Vec<String>,
        count: usize,
        classes: Vec<ModelClassEntry>,
        experimental: bool,
    },
    PaperExamples {
        passed: usize,
        failed: usize,
        checks: Vec<CheckEntry>,
    },
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Ctx<'a> {
    problem: &'a Problem,
}

impl Ctx<'_> {
    fn vars(&self) -> &[String] {
        &self.problem.variables
    }

    fn ideal(&self, name: &str) -> Result<MonomialIdeal, CommandError> {
        self.problem.ideal(name).ok_or_else(|| CommandError::Input(format!("no ideal named `{name}`")))
    }

    fn chain(&self, name: &str) -> Result<QuadraticChain, CommandError> {
        self.problem.chain(name).ok_or_else(|| CommandError::Input(format!("no chain named `{name}`")))
    }

    fn summary(&self, name: &str, ideal: &MonomialIdeal) -> IdealSummary {
        IdealSummary {
            name: name.to_string(),
            generators: ideal.gens().iter().map(|g| format_laurent(g, self.vars())).collect(),
            exponents: ideal.gens().to_vec(),
        }
    }

    fn chain_name(&self, c: &QuadraticChain) -> String {
        format_chain(c.directions(), self.vars())
    }

    fn monomials(&self, gens: &[Vec<i64>]) -> Vec<String> {
        gens.iter().map(|g| format_laurent(g, self.vars())).collect()
    }

    fn factors(&self, ideal: &MonomialIdeal) -> Result<Vec<FactorEntry>, CommandError> {
        lipman_factorization(ideal)?
            .factors
            .iter()
            .map(|f| {
                let special = special_star_simple(&f.chain)?;
                Ok(FactorEntry {
                    chain: self.chain_name(&f.chain),
                    exponent: f.exponent,
                    special: self.monomials(special.ideal.gens()),
                })
            })
            .collect()
    }

    fn rees(&self, ideal: &MonomialIdeal) -> Result<Vec<ReesEntry>, CommandError> {
        Ok(rees_valuations(ideal)?
            .valuations
            .into_iter()
            .map(|r| ReesEntry { vector: r.vector, value: r.value })
            .collect())
    }

    fn face(&self, r: &LocalReport) -> FaceEntry {
        FaceEntry {
            facets: r.face.facets.clone(),
            height: r.face.height,
            dim: r.face.dim,
            normal: r.normal,
            embedding_dimension: r.embedding_dimension,
            class_group: r.class_group.clone(),
        }
    }

    fn stratum(&self, s: &SingularStratum) -> StratumEntry {
        StratumEntry {
            facets: s.facets.clone(),
            height: s.height,
            dim: s.dim,
            charts: self.monomials(&s.charts),
            normal: s.normal,
            embedding_dimension: s.embedding_dimension,
            class_group: s.class_group.clone(),
            multiplicity: s.multiplicity,
        }
    }
}

pub fn basepoints(problem: &Problem, name: &str) -> CommandResult {
    let cx = Ctx { problem };
    let ideal = cx.ideal(name)?;
    let tree = base_point_tree(&ideal)?;
    Ok(Report::Basepoints {
        ideal: cx.summary(name, &ideal),
        complete: is_complete(&ideal)?,
        base_points: tree
            .nodes()
            .iter()
            .map(|n| BasePointEntry {
                chain: cx.chain_name(&n.chain),
                multiplicity: n.multiplicity,
                order_valuation: order_valuation(&n.chain),
            })
            .collect(),
    })
}

pub fn factorize(problem: &Problem, name: &str) -> CommandResult {
    let cx = Ctx { problem };
    let ideal = cx.ideal(name)?;
    let factors = cx.factors(&ideal)?;
    let simplicity = match star_simplicity_check_with_budget(&ideal, DEFAULT_SEARCH_BUDGET) {
        Ok(Simplicity::Simple) => SimplicityEntry::Simple,
        Ok(Simplicity::Factors(a, b)) => {
            SimplicityEntry::Factors { left: cx.monomials(a.gens()), right: cx.monomials(b.gens()) }
        }
        Err(Error::SearchBudgetExceeded { budget, .. }) => SimplicityEntry::Unknown { budget },
        Err(e) => return Err(e.into()),
    };
    Ok(Report::Factorize { ideal: cx.summary(name, &ideal), factors, simplicity })
}

pub fn rees(problem: &Problem, name: &str) -> CommandResult {
    let cx = Ctx { problem };
    let ideal = cx.ideal(name)?;
    let set = rees_valuations(&ideal)?;
    let base_points = match base_point_tree(&ideal) {
        Ok(tree) => Some(
            tree.chains()
                .iter()
                .map(|c| {
                    let v = order_valuation(c);
                    BasePointRees { chain: cx.chain_name(c), is_rees: set.contains_vector(&v), order_valuation: v }
                })
                .collect(),
        ),
        Err(Error::NotFinitelySupported { .. }) | Err(Error::NotComplete) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(Report::Rees { ideal: cx.summary(name, &ideal), valuations: cx.rees(&ideal)?, base_points })
}

pub fn special(problem: &Problem, chain_name: &str) -> CommandResult {
    let cx = Ctx { problem };
    let c = cx.chain(chain_name)?;
    let s = special_star_simple(&c)?;
    Ok(Report::Special {
        chain: cx.chain_name(&c),
        generators: cx.monomials(s.ideal.gens()),
        point_basis: s.point_basis,
        valuations: s.valuations,
        values: s.values,
    })
}

fn blowup_report(cx: &Ctx, name: &str, mode: &str, model: &ProjectiveModel, report: &ModelReport) -> CommandResult {
    let factorization = match cx.factors(&model.ideal) {
        Ok(f) => Some(f),
        Err(CommandError::Math(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Report::Blowup {
        ideal: cx.summary(name, &model.ideal),
        mode: mode.to_string(),
        regular: report.regular,
        charts: model
            .charts
            .iter()
            .map(|c| ChartSummary {
                at: c.source().map(|s| format_laurent(&s.at, cx.vars())).unwrap_or_default(),
                generators: cx.monomials(c.generators()),
                facets: c.facets().to_vec(),
                pointed: c.is_pointed(),
            })
            .collect(),
        singular_points: report.singular_strata.iter().map(|s| cx.stratum(s)).collect(),
        singular_components: report.singular_components.clone(),
        singular_locus_dimension: report.singular_locus_dimension,
        rees: cx.rees(&model.ideal)?,
        factorization,
    })
}

/// The normalized blowup of a named ideal.
pub fn blowup_normalized(problem: &Problem, name: &str) -> CommandResult {
    let cx = Ctx { problem };
    let ideal = cx.ideal(name)?;
    let model = normalized_blowup(&ideal)?;
    let report = analyze_model(&model)?;
    blowup_report(&cx, name, "normalized", &model, &report)
}

/// The saturated model of a named tree.
pub fn blowup_gamma(problem: &Problem, tree: &str) -> CommandResult {
    let cx = Ctx { problem };
    let gamma = problem.tree(tree).ok_or_else(|| CommandError::Input(format!("no tree named `{tree}`")))?;
    let (model, report) = x_gamma(problem.dimension, gamma)?;
    blowup_report(&cx, tree, "gamma", &model, &report)
}

pub fn chart_report(problem: &Problem, name: &str, at: &str, saturate: bool) -> CommandResult {
    let cx = Ctx { problem };
    let ideal = cx.ideal(name)?;
    let g = parse_monomial(at, cx.vars()).map_err(|e| CommandError::Input(format!("--at: {e}")))?;
    let closure = integral_closure(&ideal)?;
    let c = chart(&closure, &g, saturate)?;
    let a = analyze_chart(&c)?;
    Ok(Report::Chart {
        ideal: cx.summary(name, &closure),
        at: format_laurent(&g, cx.vars()),
        saturated: saturate,
        generators: cx.monomials(&a.generators),
        facets: a.facets,
        pointed: a.pointed,
        normal: a.normal,
        embedding_dimension: a.embedding_dimension,
        class_group: a.class_group,
        singular_faces: a.singular.iter().map(|r| cx.face(r)).collect(),
    })
}

pub fn conditions(problem: &Problem, name: &str, bound: u32) -> CommandResult {
    let cx = Ctx { problem };
    let ideal = cx.ideal(name)?;
    Ok(Report::Conditions { ideal: cx.summary(name, &ideal), bound, conditions: saturation_conditions(&ideal, bound)? })
}

pub fn models_count(problem: &Problem, tree: &str) -> CommandResult {
    let cx = Ctx { problem };
    let gamma = problem.tree(tree).ok_or_else(|| CommandError::Input(format!("no tree named `{tree}`")))?;
    let count = distinct_models(problem.dimension, gamma)?;
    Ok(Report::ModelsCount {
        tree: count.points.iter().map(|c| cx.chain_name(c)).collect(),
        count: count.count,
        classes: count
            .classes
            .iter()
            .map(|c| ModelClassEntry {
                exponents: c.exponents.clone(),
                regular: c.regular,
                singular_points: c.singular_strata,
            })
            .collect(),
        experimental: true,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn class_group(c: &Option<ClassGroup>) -> String {
    c.as_ref().map_or_else(|| "-".to_string(), |g| g.to_string())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Basepoints { ideal, complete, base_points } => {
                writeln!(f, "{} = ({})", ideal.name, ideal.generators.join(", "))?;
                writeln!(f, "complete: {}", yes_no(*complete))?;
                writeln!(f, "{:<16} {:>12}  order valuation", "base point", "multiplicity")?;
                for b in base_points {
                    writeln!(f, "{:<16} {:>12}  {:?}", b.chain, b.multiplicity, b.order_valuation)?;
                }
            }
            Report::Factorize { ideal, factors, simplicity } => {
                writeln!(f, "{} = ({})", ideal.name, ideal.generators.join(", "))?;
                for x in factors {
                    writeln!(f, "{:<16} exponent {:>3}  P = ({})", x.chain, x.exponent, x.special.join(", "))?;
                }
                match simplicity {
                    SimplicityEntry::Simple => writeln!(f, "*-simple: yes")?,
                    SimplicityEntry::Factors { left, right } => {
                        writeln!(f, "*-simple: no, ({}) * ({})", left.join(", "), right.join(", "))?
                    }
                    SimplicityEntry::Unknown { budget } => writeln!(f, "*-simple: unknown within {budget} candidates")?,
                }
            }
            Report::Rees { ideal, valuations, base_points } => {
                writeln!(f, "Rees valuations of {}:", ideal.name)?;
                for v in valuations {
                    writeln!(f, "  {:?}  value {}", v.vector, v.value)?;
                }
                if let Some(bp) = base_points {
                    for b in bp {
                        writeln!(
                            f,
                            "  base point {:<12} {:?} rees: {}",
                            b.chain,
                            b.order_valuation,
                            yes_no(b.is_rees)
                        )?;
                    }
                }
            }
            Report::Special { chain, generators, point_basis, valuations, values } => {
                writeln!(f, "P[{chain}] = ({})", generators.join(", "))?;
                writeln!(f, "point basis: {point_basis:?}")?;
                for (v, c) in valuations.iter().zip(values) {
                    writeln!(f, "  {v:?} -> {c}")?;
                }
            }
            Report::Blowup { ideal, mode, regular, charts, singular_points, singular_locus_dimension, .. } => {
                writeln!(f, "{mode} model of {}", ideal.name)?;
                writeln!(f, "regular: {regular}, singular points: {}", singular_points.len())?;
                writeln!(f, "charts: {}", charts.len())?;
                if let Some(d) = singular_locus_dimension {
                    writeln!(f, "singular locus dimension: {d}")?;
                }
                for s in singular_points {
                    writeln!(
                        f,
                        "  height {} dim {} embdim {} Cl {} e {} facets {:?} charts [{}]",
                        s.height,
                        s.dim,
                        s.embedding_dimension,
                        class_group(&s.class_group),
                        s.multiplicity.map_or("-".into(), |m| m.to_string()),
                        s.facets,
                        s.charts.join(", ")
                    )?;
                }
            }
            Report::Chart {
                ideal,
                at,
                generators,
                facets,
                pointed,
                normal,
                embedding_dimension,
                class_group: cl,
                singular_faces,
                ..
            } => {
                writeln!(f, "chart of {} at {at}", ideal.name)?;
                writeln!(f, "generators: {}", generators.join(", "))?;
                writeln!(f, "facets: {facets:?}")?;
                writeln!(
                    f,
                    "pointed: {}, normal: {}, embedding dimension: {embedding_dimension}, Cl: {}",
                    yes_no(*pointed),
                    yes_no(*normal),
                    class_group(cl)
                )?;
                writeln!(f, "singular faces: {}", singular_faces.len())?;
                for s in singular_faces {
                    writeln!(
                        f,
                        "  height {} embdim {} Cl {} facets {:?}",
                        s.height,
                        s.embedding_dimension,
                        class_group(&s.class_group),
                        s.facets
                    )?;
                }
            }
            Report::Conditions { ideal, bound, conditions: c } => {
                writeln!(f, "conditions for {} (search bound {bound})", ideal.name)?;
                writeln!(f, "  (1) product divides: {}", yes_no(c.product_divides))?;
                writeln!(f, "  (2) each special divides: {}", yes_no(c.each_special_divides))?;
                writeln!(f, "  (3) product divides a power: {}", c.product_divides_power)?;
                writeln!(
                    f,
                    "  (4) transforms divisible by maximal ideal: {}",
                    yes_no(c.transforms_divisible_by_maximal)
                )?;
                writeln!(f, "  (5) transforms of a power divisible: {}", c.power_transforms_divisible_by_maximal)?;
                writeln!(f, "  implications consistent: {}", yes_no(c.implications_hold))?;
            }
            Report::ModelsCount { tree, count, classes, .. } => {
                writeln!(f, "points: {}", tree.join(" | "))?;
                writeln!(f, "distinct models (experimental): {count}")?;
                for c in classes {
                    writeln!(
                        f,
                        "  exponents {:?} regular {} singular points {}",
                        c.exponents, c.regular, c.singular_points
                    )?;
                }
            }
            Report::PaperExamples { passed, failed, checks } => {
                for c in checks {
                    writeln!(
                        f,
                        "[{}] criterion {} {}: {}",
                        if c.passed { "pass" } else { "FAIL" },
                        c.criterion,
                        c.name,
                        c.detail
                    )?;
                }
                writeln!(f, "{passed} passed, {failed} failed")?;
            }
        }
        Ok(())
    }
}

pub fn paper_examples() -> Report {
    let checks = crate::regressions::run_regression_checks();
    let passed = checks.iter().filter(|c| c.passed).count();
    Report::PaperExamples { passed, failed: checks.len() - passed, checks }
}
