//! Free Lie rings, the Lie operad `Lie(n)` and its graded variant `Lie_D(n)`.
//!
//! Elements are integer combinations of bracketed words that are multilinear
//! on a finite, totally ordered label set. [`reduce`] rewrites them into the
//! right-normed basis `[x^{σ1},[x^{σ2},…,[x^{σ(n-1)},x^n]]]`, where `x^n` is
//! the largest label. With generator degree `D > 0` the Koszul signs of the
//! graded relations apply.

mod element;
mod reduce;
mod tensor;
mod word;

pub(crate) use element::parse_coefficient;
pub(crate) use word::Cursor;

use num_bigint::BigInt;

pub use element::LieElement;
pub use reduce::{reduce, reduce_by_rewriting};
pub use tensor::{expand_element, tensor_expand, tensor_expand_graded, TensorElement};
pub use word::BracketedWord;

use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;
use crate::perm::Permutation;

/// The `(n-1)!` right-normed words on `{1..n}`, ordered lexicographically by `σ`.
pub fn lie_basis(n: usize) -> Vec<BracketedWord> {
    let labels: Vec<u32> = (1..=n as u32).collect();
    lie_basis_on(&labels)
}

/// Right-normed basis on an arbitrary label set; the largest label ends every word.
pub fn lie_basis_on(labels: &[u32]) -> Vec<BracketedWord> {
    basis_sequences(labels).iter().map(|s| BracketedWord::right_normed(s)).collect()
}

pub(crate) fn basis_sequences(labels: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    let Some(&top) = sorted.last() else {
        return Vec::new();
    };
    let head = &sorted[..sorted.len() - 1];
    Permutation::all(head.len())
        .into_iter()
        .map(|p| {
            let mut seq: Vec<u32> = p.images().iter().map(|&i| head[i as usize - 1]).collect();
            seq.push(top);
            seq
        })
        .collect()
}

/// Relabels letters `i ↦ σ(i)` and reduces. Requires labels `{1..n}`.
pub fn act(sigma: &Permutation, e: &LieElement) -> Result<LieElement> {
    if !e.is_standard() || e.degree() != sigma.degree() {
        return Err(Error::InvalidElement(format!(
            "permutation of degree {} cannot act on an element with labels {:?}",
            sigma.degree(),
            e.labels()
        )));
    }
    Ok(reduce(&e.relabel(|i| sigma.apply(i))))
}

/// Coordinates of a reduced element in the basis [`lie_basis_on`] of its labels.
pub fn coordinates(e: &LieElement) -> Vec<BigInt> {
    let reduced = reduce(e);
    lie_basis_on(reduced.labels()).iter().map(|w| reduced.coefficient(w)).collect()
}

/// Matrix of `act(σ, ·)` on `Lie_D(n)`; column `j` is the image of the `j`-th basis word.
pub fn action_matrix(n: usize, shift: u32, sigma: &Permutation) -> Result<IntegerMatrix> {
    if sigma.degree() != n {
        return Err(Error::InvalidInput(format!("σ has degree {}, expected {n}", sigma.degree())));
    }
    let basis = lie_basis(n);
    let mut m = IntegerMatrix::zeros(basis.len(), basis.len());
    for (j, w) in basis.iter().enumerate() {
        let image = act(sigma, &LieElement::from_word(w.clone(), shift)?)?;
        for (i, b) in basis.iter().enumerate() {
            m[(i, j)] = image.coefficient(b);
        }
    }
    Ok(m)
}

/// Trace of [`action_matrix`].
pub fn character(n: usize, shift: u32, sigma: &Permutation) -> Result<BigInt> {
    Ok(action_matrix(n, shift, sigma)?.trace())
}

/// `[e1, e2]` on the disjoint union of the label sets, reduced.
pub fn graft(e1: &LieElement, e2: &LieElement) -> Result<LieElement> {
    if e1.shift() != e2.shift() {
        return Err(Error::InvalidElement("generator degrees differ".into()));
    }
    let clash: Vec<u32> = e1.labels().iter().filter(|l| e2.labels().contains(l)).copied().collect();
    if !clash.is_empty() {
        return Err(Error::LabelClash(clash));
    }
    let labels: Vec<u32> = e1.labels().iter().chain(e2.labels()).copied().collect();
    let mut out = LieElement::zero(&labels, e1.shift());
    for (w1, c1) in e1.terms() {
        for (w2, c2) in e2.terms() {
            out.add_term(BracketedWord::bracket(w1.clone(), w2.clone()), c1 * c2);
        }
    }
    Ok(reduce(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> LieElement {
        LieElement::parse(s, 0).unwrap()
    }

    #[test]
    fn basis_small() {
        assert_eq!(lie_basis(1), vec![BracketedWord::Letter(1)]);
        assert_eq!(lie_basis(2)[0].to_string(), "[x1,x2]");
        let b3: Vec<String> = lie_basis(3).iter().map(|w| w.to_string()).collect();
        assert_eq!(b3, vec!["[x1,[x2,x3]]", "[x2,[x1,x3]]"]);
        assert_eq!(lie_basis(5).len(), 24);
    }

    #[test]
    fn act_examples() {
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        let t23 = Permutation::transposition(3, 2, 3).unwrap();
        let w = el("[x1,[x2,x3]]");
        assert_eq!(act(&t12, &w).unwrap(), el("[x2,[x1,x3]]"));
        assert_eq!(act(&t23, &w).unwrap(), el("-1*[x1,[x2,x3]]"));
        assert_eq!(act(&Permutation::identity(3), &w).unwrap(), w);
        assert!(act(&Permutation::identity(2), &w).is_err());
    }

    #[test]
    fn action_matrix_examples() {
        let t = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(action_matrix(2, 0, &t).unwrap().to_i64_rows(), vec![vec![-1]]);
        assert_eq!(action_matrix(2, 1, &t).unwrap().to_i64_rows(), vec![vec![1]]);
        let t3 = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(action_matrix(3, 0, &t3).unwrap().to_i64_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn character_examples() {
        let t = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(character(2, 0, &t).unwrap(), BigInt::from(-1));
        assert_eq!(character(2, 1, &t).unwrap(), BigInt::from(1));
        let c = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(character(3, 0, &c).unwrap(), BigInt::from(-1));
        for d in 0..4 {
            assert_eq!(character(4, d, &Permutation::identity(4)).unwrap(), BigInt::from(6));
        }
    }

    #[test]
    fn graft_examples() {
        assert_eq!(graft(&el("x1"), &el("x2")).unwrap(), el("[x1,x2]"));
        assert_eq!(graft(&el("[x1,x2]"), &el("x3")).unwrap(), el("[x1,[x2,x3]] - [x2,[x1,x3]]"));
        let zero = LieElement::zero(&[2], 0);
        assert!(graft(&el("x1"), &zero).unwrap().is_zero());
        assert_eq!(graft(&el("x1"), &el("[x1,x2]")), Err(Error::LabelClash(vec![1])));
    }

    #[test]
    fn graft_on_general_labels() {
        let g = graft(&el("[x7,x3]"), &el("x5")).unwrap();
        assert_eq!(g.labels(), &[3, 5, 7]);
        assert!(g.is_right_normed());
        assert_eq!(expand_element(&g), expand_element(&el("[[x7,x3],x5]")));
    }
}
