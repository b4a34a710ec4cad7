use lieop::free_lie::{
    act, action_matrix, expand_element, lie_basis, reduce, reduce_by_rewriting, BracketedWord, LieElement,
};
use lieop::perm::Permutation;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_element(n: usize, shift: u32, seed: u64) -> LieElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<u32> = (1..=n as u32).collect();
    let mut e = LieElement::zero(&labels, shift);
    for k in 1..=3 {
        let w = LieElement::from_word(BracketedWord::random(&labels, &mut rng), shift).unwrap();
        e = e.add(&w.scale(&BigInt::from(k))).unwrap();
    }
    e
}

proptest! {
    #[test]
    fn reduction_preserves_graded_expansion(n in 1usize..=6, shift in 0u32..4, seed in any::<u64>()) {
        let e = random_element(n, shift, seed);
        let r = reduce(&e);
        prop_assert!(r.is_right_normed());
        prop_assert_eq!(expand_element(&r), expand_element(&e));
    }

    #[test]
    fn rewriting_is_confluent(n in 1usize..=5, shift in 0u32..3, seed in any::<u64>()) {
        let e = random_element(n, shift, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        prop_assert_eq!(reduce_by_rewriting(&e, &mut rng), reduce(&e));
    }

    #[test]
    fn reduction_is_idempotent(n in 1usize..=6, seed in any::<u64>()) {
        let r = reduce(&random_element(n, 0, seed));
        prop_assert_eq!(reduce(&r), r);
    }

    #[test]
    fn act_is_a_left_action(n in 2usize..=5, shift in 0u32..2, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Permutation::random(n, &mut rng);
        let t = Permutation::random(n, &mut rng);
        let e = random_element(n, shift, seed);
        prop_assert_eq!(act(&s, &act(&t, &e).unwrap()).unwrap(), act(&s.compose(&t), &e).unwrap());
    }
}

#[test]
fn action_matrices_form_a_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=5 {
        for _ in 0..10 {
            let s = Permutation::random(n, &mut rng);
            let t = Permutation::random(n, &mut rng);
            for shift in 0..2 {
                let lhs = action_matrix(n, shift, &s.compose(&t)).unwrap();
                let rhs = action_matrix(n, shift, &s).unwrap().mul(&action_matrix(n, shift, &t).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn basis_words_have_independent_expansions() {
    for n in 1..=5 {
        let basis = lie_basis(n);
        // The leading monomial of w_σ is its own letter sequence, and no other basis word has it.
        for w in &basis {
            let seq = w.as_right_normed().unwrap();
            let hits = basis.iter().filter(|v| !lieop::free_lie::tensor_expand(v).coefficient(&seq).eq(&BigInt::from(0))).count();
            assert_eq!(hits, 1, "{w}");
        }
    }
}
