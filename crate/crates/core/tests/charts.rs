use finsupp::monomial::MonomialIdeal;
use finsupp::toric::{
    adic_order, analyze_chart, chart, minimal_face, multiplicity, principal_divisor, reduction_check, valuation_center,
    AffineChart,
};

fn ideal(dim: usize, gens: &[&[i64]]) -> MonomialIdeal {
    MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

fn p2() -> MonomialIdeal {
    ideal(3, &[&[3, 0, 0], &[2, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]])
}

fn j() -> MonomialIdeal {
    ideal(3, &[&[1, 0, 1], &[0, 2, 0], &[0, 0, 3], &[0, 1, 2], &[2, 1, 0], &[3, 0, 0]])
}

fn p1p2() -> MonomialIdeal {
    ideal(
        3,
        &[
            &[0, 0, 3],
            &[0, 1, 2],
            &[1, 0, 2],
            &[0, 2, 1],
            &[1, 1, 1],
            &[0, 3, 0],
            &[3, 0, 1],
            &[2, 2, 0],
            &[3, 1, 0],
            &[5, 0, 0],
        ],
    )
}

fn chart_a_of_j() -> AffineChart {
    chart(&j(), &[1, 0, 1], false).unwrap()
}

fn divisor(c: &AffineChart, m: &[i64], normals: &[&[i64]]) -> Vec<i64> {
    let all = principal_divisor(c, m).unwrap();
    normals.iter().map(|n| all[c.facet_index(n).unwrap()]).collect()
}

#[test]
fn two_branch_chart_centers() {
    let c = chart_a_of_j();
    let heights: Vec<usize> = [[1, 1, 1], [1, 2, 2], [2, 3, 4], [2, 2, 1], [4, 3, 2]]
        .iter()
        .map(|v| valuation_center(&c, v).unwrap().height)
        .collect();
    assert_eq!(heights, vec![2, 2, 1, 2, 1]);
}

#[test]
fn two_branch_chart_divisors() {
    let c = chart_a_of_j();
    let q: [&[i64]; 2] = [&[2, 3, 4], &[4, 3, 2]];
    assert_eq!(divisor(&c, &[1, 0, 0], &q), vec![2, 4]);
    assert_eq!(divisor(&c, &[0, 0, 1], &q), vec![4, 2]);
    assert_eq!(divisor(&c, &[-1, 0, 2], &q), vec![6, 0]);
    assert_eq!(divisor(&c, &[2, 0, -1], &q), vec![0, 6]);
}

#[test]
fn two_branch_chart_local_invariants() {
    let c = chart_a_of_j();
    assert!(reduction_check(&c, &[vec![-1, 0, 2], vec![2, 0, -1], vec![-1, 2, -1]]).unwrap());
    assert_eq!(multiplicity(&c, &minimal_face(&c)).unwrap(), 6);
    assert_eq!(adic_order(&c, &[0, 1, 0], 8).unwrap(), 1);
    assert!(adic_order(&c, &[0, 2, 0], 8).unwrap() >= 3);
    let inverted = c.invert(&[-1, 0, 2]).unwrap();
    assert_eq!(analyze_chart(&inverted).unwrap().class_group.unwrap().to_string(), "Z/2");
}

#[test]
fn p2_chart_a() {
    let c = chart(&p2(), &[0, 2, 0], true).unwrap();
    let a = analyze_chart(&c).unwrap();
    assert_eq!(a.embedding_dimension, 6);
    assert_eq!(a.singular.len(), 1);
    assert_eq!(a.singular[0].face.height, 3);
    assert_eq!(multiplicity(&c, &minimal_face(&c)).unwrap(), 4);
}

#[test]
fn p2_chart_c_regular() {
    let c = chart(&p2(), &[0, 0, 2], true).unwrap();
    assert!(analyze_chart(&c).unwrap().singular.is_empty());
}

#[test]
fn p2_chart_d_and_b() {
    for at in [[3, 0, 0], [1, 0, 1]] {
        let c = chart(&p2(), &at, true).unwrap();
        let q = valuation_center(&c, &[1, 2, 2]).unwrap();
        assert_eq!(q.height, 2);
        assert_eq!(multiplicity(&c, &q).unwrap(), 2);
        let a = analyze_chart(&c).unwrap();
        // Singular exactly along the faces inside the center's closure.
        for r in &a.singular {
            assert!(r.face.facets.len() >= q.facets.len());
            assert!(q.facets.iter().all(|u| r.face.facets.contains(u)), "{at:?} {:?}", r.face);
        }
        assert!(a.singular.iter().any(|r| r.face == q));
    }
}

#[test]
fn same_rees_chart() {
    let c = chart(&p1p2(), &[0, 3, 0], true).unwrap();
    let a = analyze_chart(&c).unwrap();
    assert_eq!(a.class_group.clone().unwrap().to_string(), "Z");
    assert_eq!(a.singular.len(), 1);
    assert_eq!(a.singular[0].face.height, 3);
    assert_eq!(divisor(&c, &[0, 1, 0], &[&[1, 1, 1], &[2, 3, 4]]), vec![1, 3]);
}

#[test]
fn plane_p2_charts() {
    let p = ideal(2, &[&[3, 0], &[2, 1], &[0, 2]]);
    let s0 = chart(&p, &[0, 2], true).unwrap();
    assert_eq!(analyze_chart(&s0).unwrap().class_group.unwrap().to_string(), "Z/3");
    let s1 = chart(&p, &[3, 0], true).unwrap();
    assert_eq!(analyze_chart(&s1).unwrap().class_group.unwrap().to_string(), "Z/2");
    let p1 = ideal(2, &[&[2, 0], &[0, 1]]);
    let c = chart(&p1, &[0, 1], true).unwrap();
    let a = analyze_chart(&c).unwrap();
    assert_eq!(a.class_group.unwrap().to_string(), "Z/2");
    assert_eq!(a.singular.len(), 1);
}
