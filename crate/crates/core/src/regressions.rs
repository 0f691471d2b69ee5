//! Pinned regression values for the worked examples, runnable as one suite.

use rayon::prelude::*;

use crate::error::Result;
use crate::infnear::{base_point_tree, order_valuation, QuadraticChain};
use crate::models::{
    analyze_model, analyze_model_with, distinct_models, normalized_blowup, saturated_factorization, x_gamma,
};
use crate::monomial::{star_product, MonomialIdeal};
use crate::rees::rees_valuations;
use crate::report::CheckEntry;
use crate::starsimple::{
    lipman_factorization, saturation_conditions, special_star_simple, star_divides, star_simplicity_check, Simplicity,
};
use crate::toric::{
    adic_order, analyze_chart, chart, minimal_face, multiplicity, principal_divisor, reduction_check, valuation_center,
    AffineChart,
};

pub fn chain(dim: usize, dirs: &[usize]) -> QuadraticChain {
    QuadraticChain::new(dim, dirs.to_vec()).expect("valid directions")
}

pub fn ideal(dim: usize, gens: &[&[i64]]) -> MonomialIdeal {
    MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec()).collect()).expect("valid generators")
}

pub fn special(dim: usize, dirs: &[usize]) -> Result<MonomialIdeal> {
    Ok(special_star_simple(&chain(dim, dirs))?.ideal)
}

/// The ideal with two branches of base points and order 5.
#[rustfmt::skip]
pub fn two_branch_i() -> MonomialIdeal {
    ideal(
        3,
        &[
            &[1, 1, 3], &[2, 0, 3], &[0, 3, 2], &[1, 2, 2], &[2, 1, 2], &[3, 0, 2], &[0, 4, 1],
            &[1, 3, 1], &[2, 2, 1], &[3, 1, 1], &[0, 5, 0], &[1, 4, 0], &[2, 3, 0], &[0, 1, 5],
            &[1, 0, 5], &[0, 2, 4], &[5, 0, 1], &[4, 2, 0], &[5, 1, 0], &[0, 0, 7], &[7, 0, 0],
        ],
    )
}

/// The *-simple ideal with `P_2 * P_4 = J * m^2`.
pub fn two_branch_j() -> MonomialIdeal {
    ideal(3, &[&[1, 0, 1], &[0, 2, 0], &[0, 0, 3], &[0, 1, 2], &[2, 1, 0], &[3, 0, 0]])
}

/// Base points of [`two_branch_i`], in canonical order.
pub fn two_branch_tree() -> Vec<QuadraticChain> {
    [&[][..], &[0], &[2], &[0, 1], &[2, 1]].iter().map(|d| chain(3, d)).collect()
}

pub fn chain_of_three(dim: usize) -> Vec<QuadraticChain> {
    vec![chain(dim, &[]), chain(dim, &[0]), chain(dim, &[0, 1])]
}

fn product(ideals: &[MonomialIdeal]) -> MonomialIdeal {
    ideals.iter().fold(MonomialIdeal::unit(ideals[0].dim()), |acc, i| acc.product(i))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn facet_values(c: &AffineChart, m: &[i64], normals: &[&[i64]]) -> Result<Vec<i64>> {
    let all = principal_divisor(c, m)?;
    Ok(normals.iter().map(|n| c.facet_index(n).map_or(i64::MIN, |k| all[k])).collect())
}

type Check = (u8, &'static str, fn() -> Result<(bool, String)>);

fn checks() -> Vec<Check> {
    vec![
        (1, "P1 = (x^2, y, z) and its d-dimensional form", || {
            let p1 = special(3, &[0])?;
            let mut ok = p1 == ideal(3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
            for d in 2..=6 {
                let mut gens = vec![vec![0; d]; d];
                gens[0][0] = 2;
                for (i, g) in gens.iter_mut().enumerate().skip(1) {
                    g[i] = 1;
                }
                ok &= special(d, &[0])? == MonomialIdeal::new(d, gens)?;
            }
            Ok((ok, format!("P1 = {:?}", p1.gens())))
        }),
        (1, "P0, P1, P2 along the chain in dimensions 2 and 3", || {
            let ok = special(2, &[])? == MonomialIdeal::maximal(2)
                && special(2, &[0])? == ideal(2, &[&[2, 0], &[0, 1]])
                && special(2, &[0, 1])? == ideal(2, &[&[3, 0], &[2, 1], &[0, 2]])
                && special(3, &[])? == MonomialIdeal::maximal(3)
                && special(3, &[0, 1])?
                    == ideal(3, &[&[3, 0, 0], &[2, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
            Ok((ok, "P2 = (x^3, x^2 y, x z, y^2, y z, z^2)".into()))
        }),
        (1, "two-branch special ideals P0..P4", || {
            let ok = special(3, &[2])? == ideal(3, &[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]])
                && special(3, &[2, 1])?
                    == ideal(3, &[&[0, 0, 3], &[0, 1, 2], &[1, 0, 1], &[0, 2, 0], &[1, 1, 0], &[2, 0, 0]])
                && special(3, &[0])? == ideal(3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
            Ok((ok, "P4 = (z^3, z^2 y, z x, y^2, y x, x^2)".into()))
        }),
        (1, "P2 has C(d+1, 2) minimal generators for d <= 6", || {
            let counts: Vec<usize> =
                (2..=6).map(|d| special(d, &[0, 1]).map(|p| p.gens().len())).collect::<Result<_>>()?;
            let expected: Vec<usize> = (2..=6).map(|d| binomial(d + 1, 2)).collect();
            Ok((counts == expected, format!("{counts:?}")))
        }),
        (2, "order valuations along the chain", || {
            let v: Vec<Vec<i64>> = chain_of_three(3).iter().map(order_valuation).collect();
            Ok((v == vec![vec![1, 1, 1], vec![1, 2, 2], vec![2, 3, 4]], format!("{v:?}")))
        }),
        (2, "order valuations of the two-branch tree", || {
            let v: Vec<Vec<i64>> =
                [&[][..], &[0], &[0, 1], &[2], &[2, 1]].iter().map(|d| order_valuation(&chain(3, d))).collect();
            let expected = vec![vec![1, 1, 1], vec![1, 2, 2], vec![2, 3, 4], vec![2, 2, 1], vec![4, 3, 2]];
            Ok((v == expected, format!("{v:?}")))
        }),
        (3, "Rees valuations of P2", || {
            let r3 = rees_valuations(&special(3, &[0, 1])?)?.vectors();
            let r2 = rees_valuations(&special(2, &[0, 1])?)?.vectors();
            Ok((r3 == vec![vec![1, 1, 1], vec![2, 3, 4]] && r2 == vec![vec![2, 3]], format!("d=3 {r3:?}, d=2 {r2:?}")))
        }),
        (3, "Rees valuations of J", || {
            let r = rees_valuations(&two_branch_j())?.vectors();
            Ok((r == vec![vec![2, 3, 4], vec![4, 3, 2]], format!("{r:?}")))
        }),
        (3, "P1 P2 and m P1 P2 share all three Rees valuations", || {
            let p1p2 = special(3, &[0])?.product(&special(3, &[0, 1])?);
            let a = rees_valuations(&p1p2)?.vectors();
            let b = rees_valuations(&MonomialIdeal::maximal(3).product(&p1p2))?.vectors();
            let all = vec![vec![1, 1, 1], vec![1, 2, 2], vec![2, 3, 4]];
            Ok((a == all && b == all, format!("{a:?}")))
        }),
        (3, "ord_R is not a Rees valuation of P1", || {
            let r = rees_valuations(&special(3, &[0])?)?;
            Ok((!r.contains_vector(&[1, 1, 1]), format!("{:?}", r.vectors())))
        }),
        (4, "P2 * P4 = J * m^2", || {
            let lhs = star_product(&special(3, &[0, 1])?, &special(3, &[2, 1])?)?;
            let rhs = star_product(&two_branch_j(), &MonomialIdeal::maximal_power(3, 2))?;
            Ok((lhs == rhs, format!("{} generators", lhs.gens().len())))
        }),
        (4, "divisibility in the two-branch ideal", || {
            let i = two_branch_i();
            let all = product(&[special(3, &[0])?, special(3, &[2])?, special(3, &[0, 1])?, special(3, &[2, 1])?]);
            let ok = i.ord()? == 5
                && star_divides(&special(3, &[0, 1])?, &i)?
                && star_divides(&special(3, &[2, 1])?, &i)?
                && all.ord()? == 6
                && !star_divides(&all, &i)?;
            Ok((ok, format!("ord(P1 P2 P3 P4) = {} > ord I = {}", all.ord()?, i.ord()?)))
        }),
        (4, "factorization of the two-branch ideal", || {
            let f = lipman_factorization(&two_branch_i())?;
            let e: Vec<i64> = two_branch_tree().iter().map(|c| f.exponent(c)).collect();
            let tree = base_point_tree(&two_branch_i())?;
            let ok = e == vec![-1, 1, 1, 1, 1]
                && tree.chains() == two_branch_tree()
                && tree.multiplicities() == vec![5, 2, 2, 1, 1];
            Ok((ok, format!("exponents {e:?}")))
        }),
        (4, "J is *-simple", || {
            let s = star_simplicity_check(&two_branch_j())?;
            Ok((s == Simplicity::Simple, format!("{s:?}")))
        }),
        (4, "conditions (2) but not (1)", || {
            let c = saturation_conditions(&two_branch_i(), 3)?;
            Ok((!c.product_divides && c.each_special_divides && c.implications_hold, format!("{c:?}")))
        }),
        (5, "m P1 P2 has a regular normalized blowup", || {
            let i = MonomialIdeal::maximal(3).product(&special(3, &[0])?).product(&special(3, &[0, 1])?);
            let r = analyze_model(&normalized_blowup(&i)?)?;
            let gamma = x_gamma(3, &chain_of_three(3))?;
            Ok((
                r.regular && gamma.1.regular && saturated_factorization(&i)?.holds,
                format!("{} charts", r.chart_count),
            ))
        }),
        (5, "P1 P2 has exactly one singular vertex", || {
            let i = special(3, &[0])?.product(&special(3, &[0, 1])?);
            let r = analyze_model(&normalized_blowup(&i)?)?;
            let ok =
                r.singular_strata.len() == 1 && r.singular_strata[0].height == 3 && !saturated_factorization(&i)?.holds;
            Ok((ok, format!("{} singular points", r.singular_strata.len())))
        }),
        (5, "P2 census in dimension 3", || {
            let p2 = special(3, &[0, 1])?;
            let c = chart(&p2, &[0, 0, 2], true)?;
            let a = chart(&p2, &[0, 2, 0], true)?;
            let aa = analyze_chart(&a)?;
            let mut ok = analyze_chart(&c)?.singular.is_empty()
                && aa.embedding_dimension == 6
                && aa.singular.len() == 1
                && aa.singular[0].face.height == 3
                && multiplicity(&a, &minimal_face(&a))? == 4;
            for at in [[3, 0, 0], [1, 0, 1]] {
                let ch = chart(&p2, &at, true)?;
                let q = valuation_center(&ch, &[1, 2, 2])?;
                let an = analyze_chart(&ch)?;
                ok &= q.height == 2
                    && multiplicity(&ch, &q)? == 2
                    && an.singular.iter().any(|r| r.face == q)
                    && an.singular.iter().all(|r| q.facets.iter().all(|u| r.face.facets.contains(u)));
            }
            Ok((ok, "C regular; A vertex embdim 6, e 4; B, D along the ord_R1 center, e 2".into()))
        }),
        (5, "P1 singular locus has dimension d - 2", || {
            let dims: Vec<Option<usize>> = (2..=5)
                .map(|d| Ok(analyze_model(&normalized_blowup(&special(d, &[0])?)?)?.singular_locus_dimension))
                .collect::<Result<_>>()?;
            let plane = analyze_model(&normalized_blowup(&special(2, &[0])?)?)?;
            let ok = plane.singular_strata.len() == 1 && dims == (2..=5).map(|d| Some(d - 2)).collect::<Vec<_>>();
            Ok((ok, format!("{dims:?} for d = 2..5")))
        }),
        (6, "plane charts S0, S1", || {
            let p = special(2, &[0, 1])?;
            let s0 = analyze_chart(&chart(&p, &[0, 2], true)?)?.class_group;
            let s1 = analyze_chart(&chart(&p, &[3, 0], true)?)?.class_group;
            let (s0, s1) = (s0.map(|c| c.to_string()), s1.map(|c| c.to_string()));
            Ok((s0.as_deref() == Some("Z/3") && s1.as_deref() == Some("Z/2"), format!("{s0:?}, {s1:?}")))
        }),
        (6, "same-Rees chart has class group Z", || {
            let i = special(3, &[0])?.product(&special(3, &[0, 1])?);
            let cl = analyze_chart(&chart(&i, &[0, 3, 0], true)?)?.class_group.map(|c| c.to_string());
            Ok((cl.as_deref() == Some("Z"), format!("{cl:?}")))
        }),
        (6, "two-branch chart and its localization", || {
            let a = chart(&two_branch_j(), &[1, 0, 1], false)?;
            let cl = analyze_chart(&a)?.class_group.map(|c| c.to_string());
            let loc = analyze_chart(&a.invert(&[-1, 0, 2])?)?.class_group.map(|c| c.to_string());
            Ok((cl.as_deref() == Some("Z/2 + Z/6") && loc.as_deref() == Some("Z/2"), format!("{cl:?}, {loc:?}")))
        }),
        (7, "centers and principal divisors", || {
            let a = chart(&two_branch_j(), &[1, 0, 1], false)?;
            let heights: Vec<usize> = [[1, 1, 1], [1, 2, 2], [2, 3, 4], [2, 2, 1], [4, 3, 2]]
                .iter()
                .map(|v| valuation_center(&a, v).map(|f| f.height))
                .collect::<Result<_>>()?;
            let q: [&[i64]; 2] = [&[2, 3, 4], &[4, 3, 2]];
            let divs: Vec<Vec<i64>> = [[1, 0, 0], [0, 0, 1], [-1, 0, 2], [2, 0, -1]]
                .iter()
                .map(|m| facet_values(&a, m, &q))
                .collect::<Result<_>>()?;
            let ok = heights == vec![2, 2, 1, 2, 1] && divs == vec![vec![2, 4], vec![4, 2], vec![6, 0], vec![0, 6]];
            Ok((ok, format!("heights {heights:?}, divisors {divs:?}")))
        }),
        (7, "reduction, multiplicity and the adic-order witness", || {
            let a = chart(&two_branch_j(), &[1, 0, 1], false)?;
            let red = reduction_check(&a, &[vec![-1, 0, 2], vec![2, 0, -1], vec![-1, 2, -1]])?;
            let e = multiplicity(&a, &minimal_face(&a))?;
            let (o1, o2) = (adic_order(&a, &[0, 1, 0], 8)?, adic_order(&a, &[0, 2, 0], 8)?);
            Ok((red && e == 6 && o1 == 1 && o2 >= 3, format!("reduction {red}, e = {e}, ord y = {o1}, ord y^2 = {o2}")))
        }),
        (8, "torsion class group when ord_R is not a Rees valuation", || {
            let p1 = special(2, &[0])?;
            let r = analyze_model(&normalized_blowup(&p1)?)?;
            let torsion = r.singular_strata.iter().any(|s| s.class_group.as_ref().is_some_and(|c| c.is_torsion()));
            Ok((torsion && !rees_valuations(&p1)?.contains_vector(&[1, 1]), "plane P1 vertex has Cl = Z/2".into()))
        }),
        (8, "singular points have non-torsion class groups under the Rees hypothesis", || {
            let mut checked = 0;
            let mut ok = true;
            for i in regression_corpus()? {
                let rees = rees_valuations(&i)?;
                let tree = base_point_tree(&i)?;
                if !tree.chains().iter().all(|c| rees.contains_vector(&order_valuation(c))) {
                    continue;
                }
                checked += 1;
                let r = analyze_model_with(&normalized_blowup(&i)?, false)?;
                ok &= r.singular_strata.iter().all(|s| s.class_group.as_ref().is_some_and(|c| !c.is_torsion()));
            }
            Ok((ok && checked > 0, format!("{checked} ideals satisfy the hypothesis")))
        }),
        (8, "Rees(mI) adds ord_R on the corpus", || {
            let mut ok = true;
            for i in regression_corpus()? {
                let d = i.dim();
                let mut expected = rees_valuations(&i)?.vectors();
                expected.push(vec![1; d]);
                expected.sort();
                expected.dedup();
                ok &= rees_valuations(&star_product(&MonomialIdeal::maximal(d), &i)?)?.vectors() == expected;
            }
            Ok((ok, "all corpus ideals".into()))
        }),
        (8, "saturated models of the worked trees are regular", || {
            let ok = x_gamma(3, &two_branch_tree())?.1.regular && x_gamma(2, &chain_of_three(2))?.1.regular;
            Ok((ok, "two-branch tree and the plane chain".into()))
        }),
        (9, "model counts 1, 2, 4", || {
            let counts = [
                distinct_models(3, &chain_of_three(3)[..1])?.count,
                distinct_models(3, &chain_of_three(3)[..2])?.count,
                distinct_models(3, &chain_of_three(3))?.count,
            ];
            Ok((counts == [1, 2, 4], format!("{counts:?}")))
        }),
    ]
}

/// Finitely supported complete ideals from the worked examples.
pub fn regression_corpus() -> Result<Vec<MonomialIdeal>> {
    let m = MonomialIdeal::maximal(3);
    let p1 = special(3, &[0])?;
    let p2 = special(3, &[0, 1])?;
    Ok(vec![
        m.clone(),
        p1.clone(),
        p2.clone(),
        special(2, &[0])?,
        special(2, &[0, 1])?,
        star_product(&p1, &p2)?,
        star_product(&m, &star_product(&p1, &p2)?)?,
        star_product(&m, &p2)?,
        two_branch_i(),
        two_branch_j(),
        star_product(&special(3, &[0, 1])?, &special(3, &[2, 1])?)?,
    ])
}

/// Runs every pinned regression; failures and errors are reported, never
/// propagated.
pub fn run_regression_checks() -> Vec<CheckEntry> {
    checks()
        .into_par_iter()
        .map(|(criterion, name, f)| {
            let (passed, detail) = match f() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckEntry { criterion, name: name.to_string(), passed, detail }
        })
        .collect()
}
