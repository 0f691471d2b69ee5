use finsupp::infnear::{base_point_tree, order_valuation, QuadraticChain};
use finsupp::monomial::{star_product, MonomialIdeal};
use finsupp::starsimple::{
    lipman_factorization, saturation_conditions, special_star_simple, star_divides, star_simplicity_check, Simplicity,
};

fn ideal(gens: &[[i64; 3]]) -> MonomialIdeal {
    MonomialIdeal::new(3, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

fn chain(dirs: &[usize]) -> QuadraticChain {
    QuadraticChain::new(3, dirs.to_vec()).unwrap()
}

fn special(dirs: &[usize]) -> MonomialIdeal {
    special_star_simple(&chain(dirs)).unwrap().ideal
}

#[rustfmt::skip]
fn big_i() -> MonomialIdeal {
    ideal(&[
        [1, 1, 3], [2, 0, 3], [0, 3, 2], [1, 2, 2], [2, 1, 2], [3, 0, 2], [0, 4, 1],
        [1, 3, 1], [2, 2, 1], [3, 1, 1], [0, 5, 0], [1, 4, 0], [2, 3, 0], [0, 1, 5],
        [1, 0, 5], [0, 2, 4], [5, 0, 1], [4, 2, 0], [5, 1, 0], [0, 0, 7], [7, 0, 0],
    ])
}

fn j() -> MonomialIdeal {
    ideal(&[[1, 0, 1], [0, 2, 0], [0, 0, 3], [0, 1, 2], [2, 1, 0], [3, 0, 0]])
}

#[test]
fn listed_specials() {
    assert_eq!(special(&[2]), ideal(&[[0, 0, 2], [1, 0, 0], [0, 1, 0]]));
    assert_eq!(special(&[2, 1]), ideal(&[[0, 0, 3], [0, 1, 2], [1, 0, 1], [0, 2, 0], [1, 1, 0], [2, 0, 0]]));
    assert_eq!(order_valuation(&chain(&[2])), vec![2, 2, 1]);
}

#[test]
fn product_identity_and_definition_of_i() {
    let m = MonomialIdeal::maximal(3);
    let lhs = star_product(&special(&[0, 1]), &special(&[2, 1])).unwrap();
    let rhs = star_product(&j(), &MonomialIdeal::maximal_power(3, 2)).unwrap();
    assert_eq!(lhs, rhs);
    let i = [m, special(&[0]), special(&[2])].iter().try_fold(j(), |acc, p| star_product(&acc, p)).unwrap();
    assert_eq!(i, big_i());
    assert_eq!(big_i().ord(), Ok(5));
}

#[test]
fn tree_of_i() {
    let t = base_point_tree(&big_i()).unwrap();
    assert_eq!(t.chains(), vec![chain(&[]), chain(&[0]), chain(&[2]), chain(&[0, 1]), chain(&[2, 1])]);
    assert_eq!(t.multiplicities(), vec![5, 2, 2, 1, 1]);
    // Four base points are proximate to the root and carry 6 > 5.
    assert!(!t.satisfies_proximity());
}

#[test]
fn factorization_of_i() {
    let f = lipman_factorization(&big_i()).unwrap();
    assert_eq!(f.exponent(&chain(&[])), -1);
    for dirs in [&[0][..], &[2], &[0, 1], &[2, 1]] {
        assert_eq!(f.exponent(&chain(dirs)), 1);
    }
}

#[test]
fn divisibility_in_i() {
    let i = big_i();
    assert!(star_divides(&special(&[0, 1]), &i).unwrap());
    assert!(star_divides(&special(&[2, 1]), &i).unwrap());
    let all = [special(&[0]), special(&[2]), special(&[2, 1])]
        .iter()
        .try_fold(special(&[0, 1]), |acc, p| star_product(&acc, p))
        .unwrap();
    assert_eq!(all.ord(), Ok(6));
    assert!(!star_divides(&all, &i).unwrap());
    assert!(star_divides(&i, &i).unwrap());
}

#[test]
fn j_is_simple() {
    assert_eq!(star_simplicity_check(&j()).unwrap(), Simplicity::Simple);
}

#[test]
fn conditions_of_i() {
    let c = saturation_conditions(&big_i(), 3).unwrap();
    println!("{c:?}");
    assert!(!c.product_divides);
    assert!(c.each_special_divides);
    assert!(c.implications_hold);
}
