use lieop::free_lie::{graft, LieElement};
use lieop::perm::Permutation;
use lieop::trees::{
    caterpillar, graft_bracket_shadow, graft_trees, random_binary_tree, random_monotone_heights, ungraft, Ungraft,
    WeightedTree,
};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tree(n: usize, seed: u64) -> WeightedTree {
    let labels: Vec<u32> = (1..=n as u32).collect();
    random_binary_tree(&labels, 20, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn random_trees_are_valid_and_round_trip(n in 1usize..=8, seed in any::<u64>()) {
        let t = tree(n, seed);
        prop_assert!(t.clone().validated().is_ok());
        prop_assert_eq!(t.to_string().parse::<WeightedTree>().unwrap(), t.clone());
        let m = t.t_matrix().unwrap();
        prop_assert!(m.is_ultrametric());
        prop_assert_eq!(WeightedTree::from_t_matrix(&m).unwrap(), t);
    }

    #[test]
    fn relabelling_conjugates_the_t_matrix(n in 2usize..=7, seed in any::<u64>()) {
        let t = tree(n, seed);
        let s = Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(!seed));
        prop_assert_eq!(t.relabel(&s).t_matrix().unwrap(), t.t_matrix().unwrap().conjugate(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ungraft_inverts_graft(n1 in 1usize..=4, n2 in 1usize..=4, k in 1i64..20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l1: Vec<u32> = (1..=n1 as u32).collect();
        let l2: Vec<u32> = (n1 as u32 + 1..=(n1 + n2) as u32).collect();
        let t1 = random_binary_tree(&l1, 12, &mut rng);
        let t2 = random_binary_tree(&l2, 12, &mut rng);
        let t0 = BigRational::new(k.into(), 20.into());
        let g = graft_trees(&t0, &t1, &t2).unwrap();
        prop_assert!(g.clone().validated().is_ok());
        prop_assert_eq!(ungraft(&g, &l1, &l2).unwrap(), Ungraft::Split { t0: t0.clone(), left: t1.clone(), right: t2.clone() });
        prop_assert_eq!(ungraft(&g, &l2, &l1).unwrap(), Ungraft::Split { t0, left: t2, right: t1 });
    }
}

#[test]
fn caterpillars_with_distinct_heights_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=5 {
        for _ in 0..20 {
            let mut theta = random_monotone_heights(n - 1, 50, &mut rng);
            theta.dedup();
            if theta.len() != n - 1 {
                continue;
            }
            let s = Permutation::random(n - 1, &mut rng);
            let c = caterpillar(&s, &theta).unwrap();
            assert!(c.clone().validated().is_ok());
            assert_eq!(WeightedTree::from_t_matrix(&c.t_matrix().unwrap()).unwrap(), c);
        }
    }
}

#[test]
fn degenerate_grafts_hit_the_basepoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let one = BigRational::one();
    for _ in 0..20 {
        let t1 = random_binary_tree(&[1, 2], 10, &mut rng);
        let t2 = random_binary_tree(&[3], 10, &mut rng);
        let g = graft_trees(&BigRational::from_integer(0.into()), &t1, &t2).unwrap();
        assert!(g.is_basepoint());
        assert_eq!(ungraft(&g, &[1, 2], &[3]).unwrap(), Ungraft::Basepoint);
        assert!(graft_trees(&one, &t1, &t2).unwrap().is_basepoint());
    }
}

#[test]
fn shadow_bracket_is_graft() {
    let e1 = LieElement::parse("[x1,x4]", 0).unwrap();
    let e2 = LieElement::parse("[x2,x3] - [x3,x2]", 0).unwrap();
    assert_eq!(graft_bracket_shadow(&e1, &e2).unwrap(), graft(&e1, &e2).unwrap());
}
