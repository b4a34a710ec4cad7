use std::collections::HashSet;

use lieop::free_lie::lie_basis;
use lieop::partition::{build_nerve, build_poset, simplicial_action, top_simplex_of_tree, PartitionChain};
use lieop::perm::Permutation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    *row.last().unwrap()
}

#[test]
fn poset_sizes() {
    for n in 2..=8 {
        assert_eq!(build_poset(n).unwrap().len() as u64, bell(n) - 2, "n = {n}");
    }
}

#[test]
fn faces_of_simplices_are_simplices() {
    let nerve = build_nerve(5).unwrap();
    for d in 1..=nerve.top_dimension() {
        for k in 0..nerve.count(d) {
            let c = nerve.chain(d, k);
            for drop in 0..=d {
                let mut parts = c.partitions().to_vec();
                parts.remove(drop);
                let face = PartitionChain::new(5, parts).unwrap();
                assert_eq!(nerve.index_of(&face).map(|x| x.0), Some(d - 1));
            }
        }
    }
}

#[test]
fn action_on_simplices_composes() {
    let nerve = build_nerve(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let s = Permutation::random(5, &mut rng);
        let t = Permutation::random(5, &mut rng);
        let ps = nerve.action_permutation(&s);
        let pt = nerve.action_permutation(&t);
        let pst = nerve.action_permutation(&s.compose(&t));
        for d in 0..ps.len() {
            for k in 0..ps[d].len() {
                assert_eq!(pst[d][k], ps[d][pt[d][k] as usize]);
            }
        }
        let c = nerve.chain(2, 17);
        let direct = simplicial_action(&s.compose(&t), &c).unwrap();
        assert_eq!(direct, simplicial_action(&s, &simplicial_action(&t, &c).unwrap()).unwrap());
    }
}

#[test]
fn comb_trees_give_distinct_top_simplices() {
    for n in 3..=6 {
        let nerve = build_nerve(n).unwrap();
        let mut seen = HashSet::new();
        for w in lie_basis(n) {
            let c = top_simplex_of_tree(&w, n).unwrap();
            assert_eq!(nerve.index_of(&c).map(|x| x.0), Some(n - 3));
            assert!(seen.insert(c.to_string()));
        }
    }
}

#[test]
fn chain_text_round_trip() {
    let nerve = build_nerve(5).unwrap();
    for k in (0..nerve.count(2)).step_by(7) {
        let c = nerve.chain(2, k);
        assert_eq!(PartitionChain::parse(&c.to_string(), 5).unwrap(), c);
    }
}
