//! The cocycles `c_σ` on the top simplices of the nerve of `Π_n`, the map
//! `[c_σ] ↦ w_σ` into `Lie(n) ⊗ sgn`, and its equivariance check.
//!
//! `c_σ` is supported on the top simplex of the comb tree `w_σ` with value
//! `sgn(σ)`. The plain indicator cochains also give a basis of `H^{n-3}`, but
//! the map `[1_σ] ↦ w_σ` intertwines the two actions only up to that sign.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_lie::{self, BracketedWord, LieElement};
use crate::homology::{cohomology, induced_map_with_bases, CohomologyBasis, IntegerChainComplex};
use crate::linalg::IntegerMatrix;
use crate::partition::{build_nerve, top_simplex_of_tree, NerveComplex, PartitionChain};
use crate::perm::Permutation;

/// A top-degree cochain on the nerve of `Π_n`, stored by support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    n: usize,
    values: BTreeMap<String, (PartitionChain, BigInt)>,
}

impl Cocycle {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i32 {
        self.n as i32 - 3
    }

    pub fn support(&self) -> impl Iterator<Item = (&PartitionChain, &BigInt)> {
        self.values.values().map(|(c, v)| (c, v))
    }

    pub fn value(&self, c: &PartitionChain) -> BigInt {
        self.values.get(&c.to_string()).map_or_else(BigInt::zero, |(_, v)| v.clone())
    }

    /// Dense vector over the `(n-3)`-simplices of `nerve`.
    pub fn to_vector(&self, nerve: &NerveComplex) -> Result<Vec<BigInt>> {
        let top = self.n - 3;
        let mut v = vec![BigInt::zero(); nerve.count(top)];
        for (c, x) in self.values.values() {
            let (d, k) = nerve.index_of(c).ok_or_else(|| Error::Consistency(format!("{c} is not a simplex")))?;
            if d != top {
                return Err(Error::Consistency(format!("{c} is not a top simplex")));
            }
            v[k] += x;
        }
        Ok(v)
    }

    /// `δc = 0`; automatic in top degree, but checked against the nerve.
    pub fn is_closed(&self, nerve: &NerveComplex) -> Result<bool> {
        let v = self.to_vector(nerve)?;
        let c = nerve.chain_complex();
        let k = self.degree();
        Ok(match c.boundary(k + 1) {
            None => true,
            Some(b) => {
                let t = b.transpose();
                (0..t.cols()).all(|j| t.column(j).iter().map(|&(i, x)| &v[i as usize] * x).sum::<BigInt>().is_zero())
            }
        })
    }
}

/// An element of `Lie(n) ⊗ sgn_n`: `σ` acts by `sgn(σ)·act(σ, ·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedLieElement {
    pub element: LieElement,
}

impl TwistedLieElement {
    pub fn act(&self, sigma: &Permutation) -> Result<TwistedLieElement> {
        let e = free_lie::act(sigma, &self.element)?;
        Ok(TwistedLieElement { element: e.scale(&BigInt::from(sigma.sign())) })
    }
}

/// `w_σ = [x^{σ1},[…,[x^{σ(n-1)},x^n]]]` for `σ ∈ Σ_{n-1}`.
pub fn robinson_word(sigma: &Permutation) -> BracketedWord {
    let mut seq: Vec<u32> = sigma.images().to_vec();
    seq.push(sigma.degree() as u32 + 1);
    BracketedWord::right_normed(&seq)
}

/// `c_σ` for `σ ∈ Σ_{n-1}`, `n = deg σ + 1`.
pub fn robinson_cocycle(sigma: &Permutation) -> Result<Cocycle> {
    cocycle_with_value(sigma, BigInt::from(sigma.sign()))
}

/// The plain indicator of the top simplex of `w_σ`.
pub fn indicator_cocycle(sigma: &Permutation) -> Result<Cocycle> {
    cocycle_with_value(sigma, BigInt::one())
}

fn cocycle_with_value(sigma: &Permutation, value: BigInt) -> Result<Cocycle> {
    let n = sigma.degree() + 1;
    if n < 3 {
        return Err(Error::InvalidInput(format!("c_σ needs n ≥ 3, got {n}")));
    }
    let chain = top_simplex_of_tree(&robinson_word(sigma), n)?;
    let mut values = BTreeMap::new();
    values.insert(chain.to_string(), (chain, value));
    Ok(Cocycle { n, values })
}

/// `[c_σ] ↦ w_σ`, together with the classes `[c_σ]` in a computed basis of `H^{n-3}`.
#[derive(Clone, Debug)]
pub struct RobinsonMap {
    n: usize,
    nerve: NerveComplex,
    complex: IntegerChainComplex,
    basis: CohomologyBasis,
    /// Column `σ`: coordinates of `[c_σ]` in `basis`.
    classes: IntegerMatrix,
    classes_inv: IntegerMatrix,
}

impl RobinsonMap {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The map in the bases `([c_σ])` and `(w_σ)`: the identity.
    pub fn matrix(&self) -> IntegerMatrix {
        IntegerMatrix::identity(self.classes.cols())
    }

    /// Coordinates of `[c_σ]` against the computed cohomology basis; unimodular.
    pub fn class_matrix(&self) -> &IntegerMatrix {
        &self.classes
    }

    pub fn nerve(&self) -> &NerveComplex {
        &self.nerve
    }

    /// Image of the class of a top cocycle, given as a dense vector.
    pub fn apply(&self, z: &[BigInt]) -> Result<TwistedLieElement> {
        let coords = self.classes_inv.mul_vec(&self.basis.coordinates(z)?);
        let labels: Vec<u32> = (1..=self.n as u32).collect();
        let mut e = LieElement::zero(&labels, 0);
        for (w, c) in free_lie::lie_basis(self.n).into_iter().zip(coords) {
            e = e.add(&LieElement::from_word(w, 0)?.scale(&c))?;
        }
        Ok(TwistedLieElement { element: e })
    }

    /// Matrix of the action of `σ` on `H^{n-3}` in the basis `([c_σ])`.
    pub fn cohomology_action(&self, sigma: &Permutation) -> Result<IntegerMatrix> {
        // σ acts on cochains by pulling back along σ⁻¹.
        let f = self.nerve.action_chain_map(&sigma.inverse());
        let k = self.n as i32 - 3;
        let x = induced_map_with_bases(&f, &self.basis, &self.basis, &self.complex, &self.complex, k)?;
        Ok(self.classes_inv.mul(&x).mul(&self.classes))
    }

    /// `ρ(σ)·R - R·(sgn(σ)·act(σ))` with `R` the identity.
    pub fn defect(&self, sigma: &Permutation) -> Result<IntegerMatrix> {
        let lhs = self.cohomology_action(sigma)?;
        let rhs = free_lie::action_matrix(self.n, 0, sigma)?.scale(&BigInt::from(sigma.sign()));
        Ok(lhs.sub(&rhs))
    }
}

pub fn robinson_map(n: usize) -> Result<RobinsonMap> {
    map_with_cocycles(n, robinson_cocycle)
}

fn map_with_cocycles(n: usize, cocycle: impl Fn(&Permutation) -> Result<Cocycle>) -> Result<RobinsonMap> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("needs n ≥ 3, got {n}")));
    }
    let nerve = build_nerve(n)?;
    let complex = nerve.chain_complex();
    let basis = CohomologyBasis::compute(&complex, n as i32 - 3);
    let mut columns = Vec::new();
    for sigma in Permutation::all(n - 1) {
        let c = cocycle(&sigma)?;
        if !c.is_closed(&nerve)? {
            return Err(Error::Consistency(format!("c_σ is not closed for n = {n}")));
        }
        columns.push(basis.coordinates(&c.to_vector(&nerve)?)?);
    }
    let classes = IntegerMatrix::from_columns(basis.rank(), &columns);
    if classes.rows() != classes.cols() || !classes.is_unimodular() {
        return Err(Error::Consistency(format!("the classes [c_σ] do not form a basis for n = {n}")));
    }
    let classes_inv = classes.unimodular_inverse().expect("unimodular");
    Ok(RobinsonMap { n, nerve, complex, basis, classes, classes_inv })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub perm: String,
    pub pass: bool,
    pub defect: IntegerMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub n: usize,
    pub generators: Vec<GeneratorCheck>,
}

impl EquivarianceReport {
    pub fn all_pass(&self) -> bool {
        self.generators.iter().all(|g| g.pass)
    }
}

/// Checks every transposition of `Σ_n`.
pub fn verify_equivariance(n: usize) -> Result<EquivarianceReport> {
    let map = robinson_map(n)?;
    verify_with(&map, &Permutation::transpositions(n))
}

pub fn verify_with(map: &RobinsonMap, perms: &[Permutation]) -> Result<EquivarianceReport> {
    let generators = perms
        .par_iter()
        .map(|t| {
            let defect = map.defect(t)?;
            Ok(GeneratorCheck { perm: t.to_string(), pass: defect.is_zero(), defect })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivarianceReport { n: map.n, generators })
}

/// `(n - 1, (n-1)!)`: the top reduced cohomology of `|Π_n|`, shifted by two suspensions.
pub fn gpc_cohomology_rank(n: usize) -> Result<(i32, usize)> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("needs n ≥ 2, got {n}")));
    }
    let complex = if n == 2 { IntegerChainComplex::empty_augmented() } else { build_nerve(n)?.chain_complex() };
    let h = cohomology(&complex);
    let nonzero: Vec<_> = h.nonzero().collect();
    match nonzero.as_slice() {
        [(k, g)] if g.torsion.is_empty() => Ok((k + 2, g.rank)),
        _ => Err(Error::Consistency(format!("cohomology of |Π_{n}| is not a single free group"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn cocycles_for_n3() {
        let c = robinson_cocycle(&Permutation::identity(2)).unwrap();
        let support: Vec<_> = c.support().map(|(ch, v)| (ch.to_string(), v.clone())).collect();
        assert_eq!(support, vec![("1|23".to_string(), BigInt::from(1))]);
        let c = robinson_cocycle(&perm("(1 2)", 2)).unwrap();
        let support: Vec<_> = c.support().map(|(ch, v)| (ch.to_string(), v.clone())).collect();
        assert_eq!(support, vec![("13|2".to_string(), BigInt::from(-1))]);
        let plain = indicator_cocycle(&perm("(1 2)", 2)).unwrap();
        assert_eq!(plain.value(&PartitionChain::parse("13|2", 3).unwrap()), BigInt::from(1));
    }

    #[test]
    fn identity_matrices() {
        assert!(robinson_map(3).unwrap().matrix().is_identity());
        let m4 = robinson_map(4).unwrap();
        assert_eq!(m4.matrix().rows(), 6);
        assert!(m4.class_matrix().is_unimodular());
    }

    #[test]
    fn equivariant_for_small_n() {
        for n in 3..=5 {
            let r = verify_equivariance(n).unwrap();
            assert_eq!(r.generators.len(), n * (n - 1) / 2);
            assert!(r.all_pass(), "n = {n}");
        }
    }

    #[test]
    fn identity_and_other_elements() {
        let m = robinson_map(4).unwrap();
        let perms = vec![Permutation::identity(4), perm("(1 2 3 4)", 4), perm("(1 3)(2 4)", 4)];
        assert!(verify_with(&m, &perms).unwrap().all_pass());
    }

    #[test]
    fn plain_indicators_miss_the_sign() {
        let m = map_with_cocycles(3, indicator_cocycle).unwrap();
        let r = verify_with(&m, &Permutation::transpositions(3)).unwrap();
        assert!(!r.all_pass());
    }

    #[test]
    fn apply_recovers_words() {
        let m = robinson_map(4).unwrap();
        let s = perm("(1 3 2)", 3);
        let z = robinson_cocycle(&s).unwrap().to_vector(m.nerve()).unwrap();
        let image = m.apply(&z).unwrap();
        assert_eq!(image.element, LieElement::from_word(robinson_word(&s), 0).unwrap());
    }

    #[test]
    fn gpc_ranks() {
        assert_eq!(gpc_cohomology_rank(2).unwrap(), (1, 1));
        assert_eq!(gpc_cohomology_rank(3).unwrap(), (2, 2));
        assert_eq!(gpc_cohomology_rank(5).unwrap(), (4, 24));
    }
}
