use lieop::homology::{homology, induced_map_on_cohomology, ChainMap, IntegerChainComplex};
use lieop::linalg::{invariant_factors, smith_normal_form, IntegerMatrix};
use lieop::partition::build_nerve;
use lieop::perm::Permutation;
use lieop::sparse::SparseMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntegerMatrix {
    let density: f64 = rng.gen_range(0.1..1.0);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 }).collect())
        .collect();
    IntegerMatrix::from_i64_rows(&data)
}

#[test]
fn smith_form_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=40), rng.gen_range(1..=40));
        let m = random_matrix(&mut rng, r, c);
        let (s, u, v) = smith_normal_form(&m);
        assert_eq!(u.mul(&m).mul(&v), s);
        assert!(u.is_unimodular() && v.is_unimodular());
        for i in 0..r {
            for j in 0..c {
                assert!(i == j || s[(i, j)].is_zero());
            }
        }
        let d = s.diagonal();
        assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()), "{d:?}");
        }
        let nonzero: Vec<BigInt> = d.iter().filter(|x| !x.is_zero()).cloned().collect();
        assert_eq!(invariant_factors(&m), nonzero);
        let sparse = SparseMatrix::from_dense(&m).elementary_divisors();
        assert_eq!(sparse.rank, nonzero.len());
        let torsion: Vec<BigInt> = nonzero.iter().filter(|x| *x > &BigInt::from(1)).cloned().collect();
        assert_eq!(sparse.torsion, torsion);
    }
}

/// A random product of elementary operations and its inverse.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> (IntegerMatrix, IntegerMatrix) {
    let mut p = IntegerMatrix::identity(n);
    let mut q = IntegerMatrix::identity(n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k = rng.gen_range(-2i64..=2);
        let mut e = IntegerMatrix::identity(n);
        e[(i, j)] = BigInt::from(k);
        let mut e_inv = IntegerMatrix::identity(n);
        e_inv[(i, j)] = BigInt::from(-k);
        p = e.mul(&p);
        q = q.mul(&e_inv);
    }
    (p, q)
}

#[test]
fn homology_is_invariant_under_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [4, 5] {
        let c = build_nerve(n).unwrap().chain_complex();
        let expected = homology(&c);
        for _ in 0..3 {
            let bases: Vec<_> = (c.min_degree()..=c.max_degree()).map(|k| random_unimodular(&mut rng, c.dim(k))).collect();
            let mut boundaries = Vec::new();
            for k in c.min_degree() + 1..=c.max_degree() {
                let d = c.boundary(k).unwrap().to_dense();
                let lo = &bases[(k - 1 - c.min_degree()) as usize].0;
                let hi_inv = &bases[(k - c.min_degree()) as usize].1;
                boundaries.push(SparseMatrix::from_dense(&lo.mul(&d).mul(hi_inv)));
            }
            let dims = (c.min_degree()..=c.max_degree()).map(|k| c.dim(k)).collect();
            let changed = IntegerChainComplex::new(c.min_degree(), dims, boundaries, true).unwrap();
            assert_eq!(homology(&changed), expected);
        }
    }
}

#[test]
fn partition_complex_homology() {
    for n in 3..=6usize {
        let h = homology(&build_nerve(n).unwrap().chain_complex());
        let groups: Vec<_> = h.nonzero().map(|(k, g)| (k, g.rank, g.torsion.len())).collect();
        let rank = (1..n).product::<usize>();
        assert_eq!(groups, vec![(n as i32 - 3, rank, 0)]);
    }
}

#[test]
fn simplex_counts_for_n7() {
    let nerve = build_nerve(7).unwrap();
    assert_eq!(nerve.counts(), vec![875, 16674, 74165, 114345, 56700]);
    assert_eq!(nerve.euler_characteristic(), 721);
}

#[test]
fn induced_maps_are_contravariant() {
    let nerve = build_nerve(4).unwrap();
    let c = nerve.chain_complex();
    let s = Permutation::parse("(1 2)", 4).unwrap();
    let t = Permutation::parse("(2 3 4)", 4).unwrap();
    let f = nerve.action_chain_map(&s);
    let g = nerve.action_chain_map(&t);
    let fs = induced_map_on_cohomology(&f, &c, &c, 1).unwrap();
    let gs = induced_map_on_cohomology(&g, &c, &c, 1).unwrap();
    let both = induced_map_on_cohomology(&f.then(&g), &c, &c, 1).unwrap();
    assert_eq!(both, fs.mul(&gs));
    assert_ne!(both, gs.mul(&fs));
}

#[test]
fn transposition_on_three_points_is_an_involution() {
    let nerve = build_nerve(3).unwrap();
    let c = nerve.chain_complex();
    let f = nerve.action_chain_map(&Permutation::transposition(3, 1, 2).unwrap());
    let m = induced_map_on_cohomology(&f, &c, &c, 0).unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 2));
    assert!(m.mul(&m).is_identity());
    assert!(!m.is_identity());
}

#[test]
fn constant_map_is_zero_on_reduced_cohomology() {
    let nerve = build_nerve(3).unwrap();
    let c = nerve.chain_complex();
    let mut aug = SparseMatrix::new(1);
    aug.push_column(vec![(0, 1)]);
    let mut to_vertex = SparseMatrix::new(3);
    for _ in 0..3 {
        to_vertex.push_column(vec![(0, 1)]);
    }
    let f = ChainMap::new(-1, vec![aug, to_vertex]);
    assert!(induced_map_on_cohomology(&f, &c, &c, 0).unwrap().is_zero());
}

#[test]
fn non_chain_maps_are_rejected() {
    let nerve = build_nerve(3).unwrap();
    let c = nerve.chain_complex();
    let mut aug = SparseMatrix::new(1);
    aug.push_column(vec![(0, 1)]);
    let f = ChainMap::new(-1, vec![aug, SparseMatrix::zeros(3, 3)]);
    assert!(induced_map_on_cohomology(&f, &c, &c, 0).is_err());
}
