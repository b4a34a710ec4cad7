use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::word::{BracketedWord, Cursor};
use crate::error::{Error, Result};

/// An integer combination of bracketed words, each multilinear on the same
/// finite label set. `shift` is the degree `D` of every generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    labels: Vec<u32>,
    shift: u32,
    terms: BTreeMap<BracketedWord, BigInt>,
}

impl LieElement {
    pub fn zero(labels: &[u32], shift: u32) -> Self {
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        labels.dedup();
        LieElement { labels, shift, terms: BTreeMap::new() }
    }

    pub fn from_word(word: BracketedWord, shift: u32) -> Result<Self> {
        let labels = word
            .multilinear_support()
            .ok_or_else(|| Error::InvalidElement(format!("{word} repeats a letter")))?;
        let mut terms = BTreeMap::new();
        terms.insert(word, BigInt::one());
        Ok(LieElement { labels, shift, terms })
    }

    /// Builds `Σ c·w`, checking every word is multilinear on `labels`.
    pub fn from_terms<I>(labels: &[u32], shift: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BracketedWord, BigInt)>,
    {
        let mut e = LieElement::zero(labels, shift);
        for (w, c) in terms {
            if !w.is_multilinear_on(&e.labels) {
                return Err(Error::InvalidElement(format!(
                    "{w} is not multilinear on {:?}",
                    e.labels
                )));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    /// Right-normed basis word on the letter sequence `seq`.
    pub fn basis_word(seq: &[u32], shift: u32) -> Self {
        Self::from_word(BracketedWord::right_normed(seq), shift).expect("distinct letters")
    }

    pub(crate) fn add_term(&mut self, w: BracketedWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Arity `n`, the size of the label set.
    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn terms(&self) -> &BTreeMap<BracketedWord, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, w: &BracketedWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Labels are `{1..n}`.
    pub fn is_standard(&self) -> bool {
        self.labels.iter().enumerate().all(|(k, &l)| l as usize == k + 1)
    }

    pub fn is_right_normed(&self) -> bool {
        let max = self.labels.last().copied();
        self.terms
            .keys()
            .all(|w| w.as_right_normed().is_some_and(|s| s.last().copied() == max))
    }

    fn check_compatible(&self, other: &LieElement) -> Result<()> {
        if self.shift != other.shift {
            return Err(Error::InvalidElement(format!(
                "generator degrees differ: {} vs {}",
                self.shift, other.shift
            )));
        }
        if self.labels != other.labels && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidElement(format!(
                "label sets differ: {:?} vs {:?}",
                self.labels, other.labels
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check_compatible(other)?;
        let mut out = if self.is_zero() && !other.is_zero() { other.clone() } else { self.clone() };
        if !(self.is_zero() && !other.is_zero()) {
            for (w, c) in &other.terms {
                out.add_term(w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> LieElement {
        let mut out = LieElement::zero(&self.labels, self.shift);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        }
        out
    }

    /// Renames letters by `f`, which must be injective on the label set.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> LieElement {
        let labels: Vec<u32> = self.labels.iter().map(|&l| f(l)).collect();
        let mut out = LieElement::zero(&labels, self.shift);
        for (w, c) in &self.terms {
            out.add_term(w.relabel(&f), c.clone());
        }
        out
    }

    pub fn with_shift(&self, shift: u32) -> LieElement {
        LieElement { shift, ..self.clone() }
    }

    /// Parses sums like `2*[x1,x2] + -1*[x2,x1]` or `[x1,x2] - [x2,x1]`.
    pub fn parse(s: &str, shift: u32) -> Result<Self> {
        let mut c = Cursor::new(s);
        let mut terms = Vec::new();
        if c.peek() == Some(b'0') {
            c.pos += 1;
            if c.at_end() {
                return Ok(LieElement::zero(&[], shift));
            }
            c.pos -= 1;
        }
        let mut first = true;
        loop {
            let mut negative = false;
            if !first {
                match c.peek() {
                    Some(b'+') => c.pos += 1,
                    Some(b'-') => {
                        c.pos += 1;
                        negative = true;
                    }
                    None => break,
                    _ => return Err(Error::parse(c.pos, "expected '+' or '-'")),
                }
            }
            first = false;
            let coeff = parse_coefficient(&mut c)?;
            let word = c.word()?;
            terms.push((word, if negative { -coeff } else { coeff }));
        }
        let labels = terms
            .first()
            .and_then(|(w, _)| w.multilinear_support())
            .ok_or_else(|| Error::InvalidElement("first word repeats a letter".into()))?;
        LieElement::from_terms(&labels, shift, terms)
    }
}

pub(crate) fn parse_coefficient(c: &mut Cursor<'_>) -> Result<BigInt> {
    let mut sign = BigInt::one();
    loop {
        match c.peek() {
            Some(b'-') => {
                c.pos += 1;
                sign = -sign;
            }
            Some(b'+') => c.pos += 1,
            _ => break,
        }
    }
    match c.peek() {
        Some(d) if d.is_ascii_digit() => {
            let digits = c.digits()?;
            let k: BigInt = digits.parse().expect("digits");
            c.expect(b'*')?;
            Ok(sign * k)
        }
        _ => Ok(sign),
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_negative() {
                write!(f, "-{}*{w}", c.abs())?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sums() {
        let e = LieElement::parse("2*[x1,x2] + -1*[x2,x1]", 0).unwrap();
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.to_string(), "2*[x1,x2] + -1*[x2,x1]");
        let f = LieElement::parse("[x1,x2] - [x2,x1] + [x1,x2]", 0).unwrap();
        assert_eq!(f.coefficient(&"[x1,x2]".parse().unwrap()), BigInt::from(2));
        assert!(LieElement::parse("0", 0).unwrap().is_zero());
        assert!(LieElement::parse("[x1,x2] + [x1,x3]", 0).is_err());
        assert!(LieElement::parse("[x1,x1]", 0).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let e = LieElement::parse("[x1,x2] - [x1,x2]", 0).unwrap();
        assert!(e.is_zero());
        assert_eq!(e.labels(), &[1, 2]);
    }
}
