//! Problem files: TOML documents naming ideals, chains and trees.
//!
//! ```toml
//! dimension = 3
//! variables = ["x", "y", "z"]
//!
//! [ideals]
//! P2 = "x^3, x^2 y, x z, y^2, y z, z^2"
//! J = [[1, 0, 1], "y^2", "z^3", "y z^2", "x^2 y", "x^3"]
//!
//! [chains]
//! R1 = "x"
//! R2 = ["x", "y"]
//!
//! [specials]
//! P1 = "R1"
//!
//! [products]
//! I = ["m", "P1", "P2^2"]
//!
//! [trees]
//! Gamma = ["root", "R1", "R2"]
//!
//! [params]
//! max_k = 6
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::infnear::QuadraticChain;
use crate::monomial::MonomialIdeal;
use crate::notation::{default_variables, is_valid_name, parse_chain, parse_generators, parse_monomial};
use crate::starsimple::{special_box_size, special_star_simple};

pub const MAX_DIMENSION: usize = 16;
pub const MAX_EXPONENT: i64 = 1 << 20;
pub const MAX_POWER: u32 = 16;
/// Longest chain whose special ideal may be requested from a file.
pub const MAX_SPECIAL_LENGTH: usize = 10;
pub const MAX_SPECIAL_BOX: u128 = 1_000_000;
pub const MAX_PRODUCT_GENERATORS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

/// 1-based line and column of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |p| before[p + 1..].chars().count()) + 1;
    (line, column)
}

struct Locator<'a>(&'a str);

impl Locator<'_> {
    fn error(&self, span: Range<usize>, message: impl Into<String>) -> InputError {
        let (line, column) = line_column(self.0, span.start);
        InputError { line, column, message: message.into() }
    }

    /// Errors inside a quoted string point at the offending character.
    fn inner(&self, span: &Range<usize>, offset: usize, message: impl Into<String>) -> InputError {
        let quoted = self.0.get(span.clone()).is_some_and(|s| s.starts_with('"'));
        let start = if quoted { span.start + 1 + offset } else { span.start };
        self.error(start..start, message)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMonomial {
    Text(String),
    Exponents(Vec<i64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawIdeal {
    Text(String),
    List(Vec<RawMonomial>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawChain {
    Text(String),
    Names(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    dimension: Spanned<i64>,
    variables: Option<Spanned<Vec<String>>>,
    #[serde(default)]
    ideals: BTreeMap<Spanned<String>, Spanned<RawIdeal>>,
    #[serde(default)]
    chains: BTreeMap<Spanned<String>, Spanned<RawChain>>,
    #[serde(default)]
    specials: BTreeMap<Spanned<String>, Spanned<String>>,
    #[serde(default)]
    products: BTreeMap<Spanned<String>, Spanned<Vec<String>>>,
    #[serde(default)]
    trees: BTreeMap<Spanned<String>, Spanned<Vec<String>>>,
    #[serde(default)]
    params: BTreeMap<String, Spanned<i64>>,
}

/// A validated problem file. `m` always names the maximal ideal and `root`
/// the empty chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub dimension: usize,
    pub variables: Vec<String>,
    pub ideals: BTreeMap<String, MonomialIdeal>,
    pub chains: BTreeMap<String, QuadraticChain>,
    pub trees: BTreeMap<String, Vec<QuadraticChain>>,
    pub params: BTreeMap<String, i64>,
}

impl Problem {
    pub fn ideal(&self, name: &str) -> Option<MonomialIdeal> {
        match name {
            "m" => Some(MonomialIdeal::maximal(self.dimension)),
            _ => self.ideals.get(name).cloned(),
        }
    }

    pub fn chain(&self, name: &str) -> Option<QuadraticChain> {
        match name {
            "root" => Some(QuadraticChain::root(self.dimension)),
            _ => self.chains.get(name).cloned(),
        }
    }

    pub fn tree(&self, name: &str) -> Option<&[QuadraticChain]> {
        self.trees.get(name).map(Vec::as_slice)
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.get(name).copied()
    }
}

fn split_power(item: &str) -> (&str, Option<&str>) {
    match item.split_once('^') {
        Some((name, k)) => (name.trim(), Some(k.trim())),
        None => (item.trim(), None),
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, InputError> {
    let loc = Locator(text);
    let raw: RawProblem = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        loc.error(span, e.message().to_string())
    })?;

    let dim_span = raw.dimension.span();
    let dimension = *raw.dimension.get_ref();
    if dimension < 2 || dimension > MAX_DIMENSION as i64 {
        return Err(loc.error(dim_span, format!("dimension must lie between 2 and {MAX_DIMENSION}")));
    }
    let dimension = dimension as usize;

    let variables = match raw.variables {
        None => default_variables(dimension),
        Some(v) => {
            let span = v.span();
            let vars = v.into_inner();
            if vars.len() != dimension {
                return Err(loc.error(span, format!("expected {dimension} variable names, found {}", vars.len())));
            }
            if let Some(bad) = vars.iter().find(|n| !is_valid_name(n) || *n == "root") {
                return Err(loc.error(span, format!("invalid variable name `{bad}`")));
            }
            let mut sorted = vars.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != vars.len() {
                return Err(loc.error(span, "variable names must be distinct"));
            }
            vars
        }
    };

    let mut taken: BTreeMap<String, ()> = BTreeMap::new();
    let mut claim = |key: &Spanned<String>, reserved: &str| -> Result<String, InputError> {
        let name = key.get_ref().clone();
        if !is_valid_name(&name) {
            return Err(loc.error(key.span(), format!("invalid name `{name}`")));
        }
        if name == reserved {
            return Err(loc.error(key.span(), format!("`{name}` is reserved")));
        }
        if taken.insert(name.clone(), ()).is_some() {
            return Err(loc.error(key.span(), format!("`{name}` is defined twice")));
        }
        Ok(name)
    };

    let mut chains = BTreeMap::new();
    for (key, value) in &raw.chains {
        let name = claim(key, "root")?;
        let span = value.span();
        let dirs = match value.get_ref() {
            RawChain::Text(s) => parse_chain(s, &variables).map_err(|e| loc.inner(&span, e.offset, e.message))?,
            RawChain::Names(names) => {
                let mut dirs = Vec::new();
                for n in names {
                    let d = parse_chain(n, &variables).map_err(|e| loc.error(span.clone(), e.message))?;
                    dirs.extend(d);
                }
                dirs
            }
        };
        chains.insert(name, QuadraticChain::new(dimension, dirs).map_err(|e| loc.error(span, e.to_string()))?);
    }
    let lookup_chain = |name: &str| -> Option<QuadraticChain> {
        if name == "root" {
            Some(QuadraticChain::root(dimension))
        } else {
            chains.get(name).cloned()
        }
    };

    let mut ideals: BTreeMap<String, MonomialIdeal> = BTreeMap::new();
    for (key, value) in &raw.ideals {
        let name = claim(key, "m")?;
        let span = value.span();
        let gens = match value.get_ref() {
            RawIdeal::Text(s) => parse_generators(s, &variables).map_err(|e| loc.inner(&span, e.offset, e.message))?,
            RawIdeal::List(items) => {
                let mut gens = Vec::new();
                for item in items {
                    gens.push(match item {
                        RawMonomial::Text(s) => {
                            parse_monomial(s, &variables).map_err(|e| loc.error(span.clone(), e.message))?
                        }
                        RawMonomial::Exponents(a) => {
                            if a.len() != dimension {
                                return Err(
                                    loc.error(span, format!("exponent vector {a:?} must have length {dimension}"))
                                );
                            }
                            a.clone()
                        }
                    });
                }
                gens
            }
        };
        if gens.iter().flatten().any(|&e| e > MAX_EXPONENT) {
            return Err(loc.error(span, format!("exponents above {MAX_EXPONENT} are not supported")));
        }
        let ideal = MonomialIdeal::new(dimension, gens).map_err(|e| loc.error(span, e.to_string()))?;
        ideals.insert(name, ideal);
    }

    for (key, value) in &raw.specials {
        let name = claim(key, "m")?;
        let chain = lookup_chain(value.get_ref())
            .ok_or_else(|| loc.error(value.span(), format!("unknown chain `{}`", value.get_ref())))?;
        if chain.len() > MAX_SPECIAL_LENGTH || special_box_size(&chain) > MAX_SPECIAL_BOX {
            return Err(loc.error(value.span(), "the special ideal of this chain is too large for a problem file"));
        }
        let special = special_star_simple(&chain).map_err(|e| loc.error(value.span(), e.to_string()))?;
        ideals.insert(name, special.ideal);
    }

    // Products may refer to each other in any order, without cycles.
    let mut pending: Vec<(String, &Spanned<Vec<String>>)> = Vec::new();
    for (key, value) in &raw.products {
        pending.push((claim(key, "m")?, value));
    }
    while !pending.is_empty() {
        let mut progressed = false;
        let mut rest = Vec::new();
        for (name, value) in pending {
            let mut acc = Some(MonomialIdeal::unit(dimension));
            for item in value.get_ref() {
                let (factor, power) = split_power(item);
                let k: u32 = match power {
                    None => 1,
                    Some(p) => p.parse().ok().filter(|&k| k <= MAX_POWER).ok_or_else(|| {
                        loc.error(value.span(), format!("invalid power in `{item}` (at most {MAX_POWER})"))
                    })?,
                };
                let known =
                    if factor == "m" { Some(MonomialIdeal::maximal(dimension)) } else { ideals.get(factor).cloned() };
                match known {
                    Some(f) => {
                        if let Some(a) = acc.as_mut() {
                            for _ in 0..k {
                                if a.gens().len().saturating_mul(f.gens().len()) > 50 * MAX_PRODUCT_GENERATORS {
                                    return Err(
                                        loc.error(value.span(), format!("product `{name}` has too many generators"))
                                    );
                                }
                                *a = a.product(&f);
                                if a.gens().len() > MAX_PRODUCT_GENERATORS {
                                    return Err(
                                        loc.error(value.span(), format!("product `{name}` has too many generators"))
                                    );
                                }
                            }
                        }
                    }
                    None if raw.products.keys().any(|k| k.get_ref() == factor) => acc = None,
                    None => return Err(loc.error(value.span(), format!("unknown ideal `{factor}`"))),
                }
            }
            match acc {
                Some(i) => {
                    ideals.insert(name, i);
                    progressed = true;
                }
                None => rest.push((name, value)),
            }
        }
        if !progressed {
            let (name, value) = &rest[0];
            return Err(loc.error(value.span(), format!("product `{name}` depends on itself")));
        }
        pending = rest;
    }

    let mut trees = BTreeMap::new();
    for (key, value) in &raw.trees {
        let name = claim(key, "")?;
        let mut points = Vec::new();
        for item in value.get_ref() {
            points.push(lookup_chain(item).ok_or_else(|| loc.error(value.span(), format!("unknown chain `{item}`")))?);
        }
        trees.insert(name, points);
    }

    let params = raw.params.into_iter().map(|(k, v)| (k, v.into_inner())).collect();
    Ok(Problem { dimension, variables, ideals, chains, trees, params })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
dimension = 3

[ideals]
P2 = "x^3, x^2 y, x z, y^2, y z, z^2"
Q = [[1, 0, 1], "y^2", "z^3"]

[chains]
R1 = "x"
R2 = ["x", "y"]

[specials]
P1 = "R1"
S2 = "R2"

[products]
I = ["m", "P1", "S2"]
K = ["I^2"]

[trees]
Gamma = ["root", "R1", "R2"]
"#;

    #[test]
    fn parses_sample() {
        let p = parse_problem(SAMPLE).unwrap();
        assert_eq!(p.variables, vec!["x", "y", "z"]);
        assert_eq!(p.ideal("P2"), p.ideal("S2"));
        assert_eq!(p.ideal("P1").unwrap().gens(), &[vec![0, 0, 1], vec![0, 1, 0], vec![2, 0, 0]]);
        assert_eq!(p.ideal("K").unwrap(), p.ideal("I").unwrap().power(2));
        assert_eq!(p.chain("R2").unwrap().directions(), &[0, 1]);
        assert_eq!(p.tree("Gamma").unwrap().len(), 3);
        assert_eq!(p.ideal("m").unwrap(), MonomialIdeal::maximal(3));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_problem("dimension = 2\n[ideals]\nA = \"x^2, w\"\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 11));
        let e = parse_problem("dimension = 2\n[ideals]\nA = \"x\"\nA = \"y\"\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_problem("dimension = 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 13));
        assert!(parse_problem("dimension = 2\n[ideals]\nA = [[1, -1]]\n").is_err());
        assert!(parse_problem("dimension = 2\n[products]\nA = [\"B\"]\nB = [\"A\"]\n").is_err());
        assert!(parse_problem("dimension = 2\n[ideals]\nm = \"x\"\n").is_err());
        assert!(parse_problem("dimension = 2\nfoo = 1\n").is_err());
        assert!(parse_problem("dimension = 2\n[chains]\nR = \"x\"\n[ideals]\nR = \"x\"\n").is_err());
    }
}
