//! The free associative ring as an oracle: brackets expand to (graded)
//! commutators, so two Lie expressions agree iff their expansions agree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::element::LieElement;
use super::reduce::Signs;
use super::word::BracketedWord;

/// Integer combination of associative monomials (letter sequences).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn monomial(letters: Vec<u32>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(letters, BigInt::one());
        TensorElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &TensorElement, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            let slot = self.terms.entry(m.clone()).or_default();
            *slot += c * k;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                *out.terms.entry(m).or_default() += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

/// `Letter(i) ↦ (i)`, `[l,r] ↦ l·r − r·l`.
pub fn tensor_expand(w: &BracketedWord) -> TensorElement {
    tensor_expand_graded(w, 0)
}

/// Graded commutator expansion `[l,r] ↦ l·r − (−1)^{|l||r|} r·l` with every
/// generator in degree `shift`.
pub fn tensor_expand_graded(w: &BracketedWord, shift: u32) -> TensorElement {
    let signs = Signs::new(shift);
    expand(w, signs)
}

fn expand(w: &BracketedWord, signs: Signs) -> TensorElement {
    match w {
        BracketedWord::Letter(i) => TensorElement::monomial(vec![*i]),
        BracketedWord::Bracket(l, r) => {
            let el = expand(l, signs);
            let er = expand(r, signs);
            let mut out = el.mul(&er);
            let k = if signs.koszul_odd(l.len(), r.len()) { BigInt::one() } else { -BigInt::one() };
            out.add_scaled(&er.mul(&el), &k);
            out
        }
    }
}

/// `Σ c · expand(w)` over the terms of `e`, using its generator degree.
pub fn expand_element(e: &LieElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in e.terms() {
        out.add_scaled(&tensor_expand_graded(w, e.shift()), c);
    }
    out
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let letters: Vec<String> = m.iter().map(|i| i.to_string()).collect();
            write!(f, "{c}*({})", letters.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator() {
        let t = tensor_expand(&"[x1,x2]".parse().unwrap());
        assert_eq!(t.coefficient(&[1, 2]), BigInt::from(1));
        assert_eq!(t.coefficient(&[2, 1]), BigInt::from(-1));
        assert_eq!(t.terms().len(), 2);
        assert_eq!(tensor_expand(&"x1".parse().unwrap()), TensorElement::monomial(vec![1]));
    }

    #[test]
    fn jacobi_expands_to_zero() {
        let e = LieElement::parse("[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]", 0).unwrap();
        assert!(expand_element(&e).is_zero());
    }

    #[test]
    fn odd_generators_anticommute_to_sum() {
        let t = tensor_expand_graded(&"[x1,x2]".parse().unwrap(), 1);
        assert_eq!(t.coefficient(&[2, 1]), BigInt::from(1));
    }
}
