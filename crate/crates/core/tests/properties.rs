use std::collections::BTreeSet;

use finsupp::infnear::{base_point_tree, order_valuation, QuadraticChain};
use finsupp::linalg::{rank_of, smith_normal_form, IntMatrix};
use finsupp::models::{analyze_model_with, normalized_blowup, x_gamma};
use finsupp::monomial::{integral_closure, star_product, valuation_value, MonomialIdeal};
use finsupp::oracle::{brute_closure, brute_hilbert_samuel, brute_semigroup, brute_symbolic_power};
use finsupp::rees::rees_valuations;
use finsupp::starsimple::special_star_simple;
use finsupp::toric::{chart, hilbert_samuel, minimal_face, principal_divisor, AffineChart};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ideal_strategy(max_dim: usize, max_exp: i64) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_dim).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, d), 1..6)
            .prop_filter_map("zero generator", move |g| MonomialIdeal::new(d, g).ok().filter(|i| !i.is_unit()))
    })
}

fn primary_strategy(max_dim: usize, max_exp: i64) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_dim).prop_flat_map(move |d| {
        (prop::collection::vec(1..=max_exp, d), prop::collection::vec(prop::collection::vec(0..=max_exp, d), 0..4))
            .prop_map(move |(powers, mut extra)| {
                extra.extend((0..d).map(|i| {
                    let mut e = vec![0; d];
                    e[i] = powers[i];
                    e
                }));
                MonomialIdeal::new(d, extra).unwrap()
            })
    })
}

/// A prefix-closed set of at most `max_points` chains.
fn gamma_strategy(max_points: usize) -> impl Strategy<Value = (usize, Vec<QuadraticChain>)> {
    (2usize..=3).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(0..d, 1..=3), 0..4).prop_map(move |paths| {
            let mut chains = vec![QuadraticChain::root(d)];
            for p in paths {
                for k in 1..=p.len() {
                    let c = QuadraticChain::new(d, p[..k].to_vec()).unwrap();
                    if !chains.contains(&c) && chains.len() < max_points {
                        chains.push(c);
                    }
                }
            }
            (d, chains)
        })
    })
}

/// A finitely supported complete ideal: a product of special *-simple ideals.
fn fs_strategy() -> impl Strategy<Value = MonomialIdeal> {
    gamma_strategy(5).prop_flat_map(|(d, chains)| {
        let n = chains.len();
        prop::collection::vec(0i64..=2, n).prop_map(move |e| {
            let mut i = MonomialIdeal::unit(d);
            for (c, &k) in chains.iter().zip(&e) {
                for _ in 0..k {
                    i = i.product(&special_star_simple(c).unwrap().ideal);
                }
            }
            if i.is_unit() {
                i = special_star_simple(chains.last().unwrap()).unwrap().ideal;
            }
            integral_closure(&i).unwrap()
        })
    })
}

fn vertex_chart_strategy() -> impl Strategy<Value = AffineChart> {
    (primary_strategy(3, 4), any::<prop::sample::Index>(), any::<bool>()).prop_filter_map(
        "not pointed",
        |(i, pick, sat)| {
            let closure = integral_closure(&i).unwrap();
            let at = pick.get(closure.gens()).clone();
            chart(&closure, &at, sat).ok().filter(|c| c.is_pointed())
        },
    )
}

fn grading(c: &AffineChart) -> Vec<i64> {
    (0..c.dim()).map(|i| c.facets().iter().map(|u| u[i]).sum()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn closure_agrees_with_oracle(i in ideal_strategy(3, 6)) {
        prop_assert_eq!(integral_closure(&i).unwrap().gens().to_vec(), brute_closure(i.gens()));
    }

    #[test]
    fn symbolic_powers_agree_with_oracle(c in vertex_chart_strategy(), pick in any::<prop::sample::Index>(), n in 0i64..4) {
        let h = grading(&c);
        let gmax = c.generators().iter().map(|g| g.iter().zip(&h).map(|(a, b)| a * b).sum::<i64>()).max().unwrap();
        let bound = 2 * gmax;
        let normal = pick.get(c.facets()).clone();
        let k = c.facet_index(&normal).unwrap();
        let all = brute_semigroup(&c, &h, bound).unwrap();
        let power = brute_symbolic_power(&c, &normal, n, &h, bound).unwrap();
        for s in &all {
            prop_assert!(c.contains(s).unwrap());
            prop_assert_eq!(principal_divisor(&c, s).unwrap()[k] >= n, power.contains(s));
            for g in c.generators() {
                let t: Vec<i64> = s.iter().zip(g).map(|(a, b)| a - b).collect();
                prop_assert_eq!(c.contains(&t).unwrap(), all.contains(&t));
            }
        }
    }

    #[test]
    fn hilbert_samuel_agrees_with_oracle(c in vertex_chart_strategy()) {
        let main = hilbert_samuel(&c, &minimal_face(&c), 4).unwrap();
        prop_assert_eq!(main, brute_hilbert_samuel(&c, 4).unwrap());
    }

    #[test]
    fn closure_is_idempotent_and_extensive(i in ideal_strategy(3, 6)) {
        let c = integral_closure(&i).unwrap();
        prop_assert!(c.contains_ideal(&i));
        prop_assert_eq!(integral_closure(&c).unwrap(), c);
    }

    #[test]
    fn valuations_add_on_star_products(a in primary_strategy(3, 5), b in primary_strategy(3, 5), v in prop::collection::vec(1i64..6, 3)) {
        prop_assume!(a.dim() == b.dim());
        let v = &v[..a.dim()];
        let p = star_product(&a, &b).unwrap();
        prop_assert_eq!(valuation_value(v, &p), valuation_value(v, &a) + valuation_value(v, &b));
    }

    #[test]
    fn smith_form_divisibility(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..5)) {
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows, 3));
        prop_assert!(snf.factors.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)));
        prop_assert_eq!(snf.factors.len(), snf.rank);
        prop_assert_eq!(snf.rank, rank_of(&rows, 3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn point_basis_is_additive(a in fs_strategy(), b in fs_strategy()) {
        prop_assume!(a.dim() == b.dim());
        let ta = base_point_tree(&a).unwrap();
        let tb = base_point_tree(&b).unwrap();
        let tp = base_point_tree(&star_product(&a, &b).unwrap()).unwrap();
        let mut chains: BTreeSet<Vec<usize>> = BTreeSet::new();
        for t in [&ta, &tb, &tp] {
            chains.extend(t.chains().iter().map(|c| c.directions().to_vec()));
        }
        for c in chains {
            let c = QuadraticChain::new(a.dim(), c).unwrap();
            prop_assert_eq!(tp.multiplicity(&c), ta.multiplicity(&c) + tb.multiplicity(&c));
        }
    }

    #[test]
    fn multiplying_by_maximal_adds_order(i in fs_strategy()) {
        let d = i.dim();
        let mi = star_product(&MonomialIdeal::maximal(d), &i).unwrap();
        let mut expected = rees_valuations(&i).unwrap().vectors();
        expected.push(vec![1; d]);
        expected.sort();
        expected.dedup();
        prop_assert_eq!(rees_valuations(&mi).unwrap().vectors(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gamma_models_are_regular((d, gamma) in gamma_strategy(6)) {
        let (_, report) = x_gamma(d, &gamma).unwrap();
        prop_assert!(report.regular);
        prop_assert!(report.singular_strata.is_empty());
    }

    #[test]
    fn rees_hypothesis_gives_nontorsion_class_groups(i in fs_strategy()) {
        let rees = rees_valuations(&i).unwrap();
        let hypothesis = base_point_tree(&i).unwrap().chains().iter().all(|c| rees.contains_vector(&order_valuation(c)));
        prop_assume!(hypothesis);
        let report = analyze_model_with(&normalized_blowup(&i).unwrap(), false).unwrap();
        for s in &report.singular_strata {
            prop_assert!(!s.class_group.as_ref().unwrap().is_torsion(), "{:?}", s.facets);
        }
    }
}
