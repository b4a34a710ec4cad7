//! Lie elements whose leaves carry group elements: the module
//! `Lie(n) ⊗ Z[G^n]` with its `Σ_n`-action and bracket.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_lie::{self, parse_coefficient, BracketedWord, Cursor, LieElement};
use crate::perm::Permutation;

/// A finite group by its multiplication table; element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    table: Vec<Vec<u32>>,
    inverses: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<u32>>,
}

impl FiniteGroupTable {
    pub fn new(table: Vec<Vec<u32>>) -> Result<Self> {
        let g = table.len();
        if g == 0 {
            return Err(Error::InvalidInput("empty group table".into()));
        }
        if table.iter().any(|row| row.len() != g || row.iter().any(|&x| x as usize >= g)) {
            return Err(Error::InvalidInput("group table must be g×g with entries in 0..g".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if table[0][a] != a as u32 || row[0] != a as u32 {
                return Err(Error::InvalidInput("element 0 is not the identity".into()));
            }
        }
        for a in 0..g {
            for b in 0..g {
                let ab = table[a][b] as usize;
                for c in 0..g {
                    if table[ab][c] != table[a][table[b][c] as usize] {
                        return Err(Error::InvalidInput(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(g);
        for (a, row) in table.iter().enumerate() {
            let inv = row
                .iter()
                .position(|&x| x == 0)
                .ok_or_else(|| Error::InvalidInput(format!("element {a} has no inverse")))?;
            if table[inv][a] != 0 {
                return Err(Error::InvalidInput(format!("element {a} has no two-sided inverse")));
            }
            inverses.push(inv as u32);
        }
        Ok(FiniteGroupTable { table, inverses })
    }

    pub fn trivial() -> Self {
        FiniteGroupTable { table: vec![vec![0]], inverses: vec![0] }
    }

    pub fn cyclic(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("cyclic group of order 0".into()));
        }
        FiniteGroupTable::new((0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect())
    }

    /// `Σ_m` with elements in lexicographic order of their images (identity first).
    pub fn symmetric(m: usize) -> Result<Self> {
        let elems = Permutation::all(m);
        let index: BTreeMap<Vec<u32>, u32> =
            elems.iter().enumerate().map(|(i, p)| (p.images().to_vec(), i as u32)).collect();
        let table = elems.iter().map(|a| elems.iter().map(|b| index[a.compose(b).images()]).collect()).collect();
        FiniteGroupTable::new(table)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: GroupJson = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("group table: {e}")))?;
        if j.order != j.table.len() {
            return Err(Error::InvalidInput(format!("order {} does not match table size {}", j.order, j.table.len())));
        }
        FiniteGroupTable::new(j.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupJson { order: self.order(), table: self.table.clone() }).expect("serializable")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn contains(&self, a: u32) -> bool {
        (a as usize) < self.order()
    }
}

/// An element of `Z[G]`; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<u32, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, BigInt::one());
        GroupRingElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<u32, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, g: u32, c: BigInt) {
        let e = self.terms.entry(g).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (&g, c) in &other.terms {
            out.add_term(g, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &GroupRingElement, group: &FiniteGroupTable) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                out.add_term(group.mul(a, b), x * y);
            }
        }
        out
    }
}

/// Decoration tuple, aligned with the sorted label set.
pub type Decoration = Vec<u32>;

/// `Σ c · (w, g)` with `w` multilinear on the labels and `g_i` the decoration of leaf `labels[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedLieElement {
    group: Arc<FiniteGroupTable>,
    labels: Vec<u32>,
    shift: u32,
    terms: BTreeMap<(BracketedWord, Decoration), BigInt>,
}

impl DecoratedLieElement {
    pub fn zero(group: Arc<FiniteGroupTable>, labels: &[u32], shift: u32) -> Self {
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        DecoratedLieElement { group, labels, shift, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(group: Arc<FiniteGroupTable>, labels: &[u32], shift: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BracketedWord, Decoration, BigInt)>,
    {
        let mut e = DecoratedLieElement::zero(group, labels, shift);
        for (w, g, c) in terms {
            e.check_term(&w, &g)?;
            e.add_term(w, g, c);
        }
        Ok(e)
    }

    fn check_term(&self, w: &BracketedWord, g: &Decoration) -> Result<()> {
        if !w.is_multilinear_on(&self.labels) {
            return Err(Error::InvalidElement(format!("{w} is not multilinear on {:?}", self.labels)));
        }
        if g.len() != self.labels.len() {
            return Err(Error::InvalidElement(format!(
                "decoration has {} entries for {} leaves",
                g.len(),
                self.labels.len()
            )));
        }
        if let Some(&x) = g.iter().find(|&&x| !self.group.contains(x)) {
            return Err(Error::InvalidElement(format!("g{x} is not in a group of order {}", self.group.order())));
        }
        Ok(())
    }

    fn add_term(&mut self, w: BracketedWord, g: Decoration, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (w, g);
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroupTable> {
        &self.group
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn terms(&self) -> &BTreeMap<(BracketedWord, Decoration), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &BracketedWord, g: &[u32]) -> BigInt {
        self.terms.get(&(w.clone(), g.to_vec())).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &DecoratedLieElement) -> Result<DecoratedLieElement> {
        self.compatible(other)?;
        if self.labels != other.labels || self.shift != other.shift {
            return Err(Error::InvalidElement("summands live on different label sets or degrees".into()));
        }
        let mut out = self.clone();
        for ((w, g), c) in &other.terms {
            out.add_term(w.clone(), g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> DecoratedLieElement {
        let mut out = DecoratedLieElement::zero(self.group.clone(), &self.labels, self.shift);
        for ((w, g), c) in &self.terms {
            out.add_term(w.clone(), g.clone(), c * k);
        }
        out
    }

    fn compatible(&self, other: &DecoratedLieElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupClash)
        }
    }

    /// Word factor with decorations forgotten.
    pub fn word_projection(&self) -> LieElement {
        let mut out = LieElement::zero(&self.labels, self.shift);
        for ((w, _), c) in &self.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// The part of `self` carrying decoration `g`, as a plain Lie element.
    pub fn component(&self, g: &[u32]) -> LieElement {
        let mut out = LieElement::zero(&self.labels, self.shift);
        for ((w, h), c) in &self.terms {
            if h == g {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    fn by_decoration(&self) -> BTreeMap<Decoration, LieElement> {
        let mut parts: BTreeMap<Decoration, LieElement> = BTreeMap::new();
        for ((w, g), c) in &self.terms {
            parts
                .entry(g.clone())
                .or_insert_with(|| LieElement::zero(&self.labels, self.shift))
                .add_term(w.clone(), c.clone());
        }
        parts
    }

    fn with_parts(&self, labels: &[u32], parts: impl IntoIterator<Item = (Decoration, LieElement)>) -> Self {
        let mut out = DecoratedLieElement::zero(self.group.clone(), labels, self.shift);
        for (g, e) in parts {
            for (w, c) in e.terms() {
                out.add_term(w.clone(), g.clone(), c.clone());
            }
        }
        out
    }

    /// Parses `2*[x1,x2]@(g1,g0) - [x2,x1]@(g0,g0)`; decorations follow the sorted labels.
    pub fn parse(s: &str, group: Arc<FiniteGroupTable>, shift: u32) -> Result<Self> {
        let mut c = Cursor::new(s);
        let mut terms = Vec::new();
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
            c.expect(b'@')?;
            c.expect(b'(')?;
            let mut g = Vec::new();
            loop {
                if c.peek() == Some(b'g') {
                    c.pos += 1;
                }
                let pos = c.pos;
                g.push(c.digits()?.parse().map_err(|_| Error::parse(pos, "group index too large"))?);
                match c.peek() {
                    Some(b',') => c.pos += 1,
                    Some(b')') => {
                        c.pos += 1;
                        break;
                    }
                    _ => return Err(Error::parse(c.pos, "expected ',' or ')'")),
                }
            }
            terms.push((word, g, if negative { -coeff } else { coeff }));
        }
        let labels = terms
            .first()
            .and_then(|(w, _, _)| w.multilinear_support())
            .ok_or_else(|| Error::InvalidElement("first word repeats a letter".into()))?;
        DecoratedLieElement::from_terms(group, &labels, shift, terms)
    }
}

impl fmt::Display for DecoratedLieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((w, g), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let g: Vec<String> = g.iter().map(|x| format!("g{x}")).collect();
            write!(f, "{c}*{w}@({})", g.join(","))?;
        }
        Ok(())
    }
}

/// Rewrites every word into the right-normed basis; decorations stay on their leaves.
pub fn decorated_reduce(e: &DecoratedLieElement) -> DecoratedLieElement {
    let parts = e.by_decoration().into_iter().map(|(g, l)| (g, free_lie::reduce(&l)));
    e.with_parts(&e.labels, parts)
}

/// `[e1, e2]`: brackets words and concatenates decorations along the merged labels.
pub fn grasper_bracket(e1: &DecoratedLieElement, e2: &DecoratedLieElement) -> Result<DecoratedLieElement> {
    e1.compatible(e2)?;
    if e1.shift != e2.shift {
        return Err(Error::InvalidElement("generator degrees differ".into()));
    }
    let clash: Vec<u32> = e1.labels.iter().filter(|l| e2.labels.binary_search(l).is_ok()).copied().collect();
    if !clash.is_empty() {
        return Err(Error::LabelClash(clash));
    }
    let mut labels: Vec<u32> = e1.labels.iter().chain(&e2.labels).copied().collect();
    labels.sort_unstable();
    let mut parts: BTreeMap<Decoration, LieElement> = BTreeMap::new();
    for (g1, l1) in e1.by_decoration() {
        for (g2, l2) in e2.by_decoration() {
            let g = merge_decorations(&e1.labels, &g1, &e2.labels, &g2);
            let b = free_lie::graft(&l1, &l2)?;
            let slot = parts.entry(g).or_insert_with(|| LieElement::zero(&labels, e1.shift));
            *slot = slot.add(&b)?;
        }
    }
    Ok(e1.with_parts(&labels, parts))
}

fn merge_decorations(l1: &[u32], g1: &[u32], l2: &[u32], g2: &[u32]) -> Decoration {
    let mut pairs: Vec<(u32, u32)> = l1.iter().copied().zip(g1.iter().copied()).collect();
    pairs.extend(l2.iter().copied().zip(g2.iter().copied()));
    pairs.sort_unstable();
    pairs.into_iter().map(|(_, g)| g).collect()
}

/// `σ` renames leaf `i` to `σ(i)`, which keeps decoration `g_i`; then reduces.
pub fn decorated_act(sigma: &Permutation, e: &DecoratedLieElement) -> Result<DecoratedLieElement> {
    let n = e.degree();
    if sigma.degree() != n || e.labels.iter().enumerate().any(|(i, &l)| l != i as u32 + 1) {
        return Err(Error::InvalidElement(format!("σ ∈ Σ_{} cannot act on labels {:?}", sigma.degree(), e.labels)));
    }
    let mut out = DecoratedLieElement::zero(e.group.clone(), &e.labels, e.shift);
    for ((w, g), c) in &e.terms {
        let mut moved = vec![0; n];
        for (i, &x) in g.iter().enumerate() {
            moved[sigma.apply(i as u32 + 1) as usize - 1] = x;
        }
        out.add_term(w.relabel(&|i| sigma.apply(i)), moved, c.clone());
    }
    Ok(decorated_reduce(&out))
}

/// `(n-1)!·g^n`, the rank of `Lie_D(n) ⊗ Z[G^n]`; independent of `D`.
pub fn decorated_rank(n: u32, _shift: u32, group_order: u64) -> BigInt {
    let f: BigInt = (1..n).fold(BigInt::one(), |acc, k| acc * k);
    f * BigInt::from(group_order).pow(n)
}

/// The basis `(w_σ, g)` for `σ ∈ Σ_{n-1}` and `g ∈ G^n`.
pub fn decorated_basis(n: usize, group_order: u32) -> Vec<(BracketedWord, Decoration)> {
    let mut decorations: Vec<Decoration> = vec![Vec::new()];
    for _ in 0..n {
        decorations = decorations
            .into_iter()
            .flat_map(|d| {
                (0..group_order).map(move |x| {
                    let mut d = d.clone();
                    d.push(x);
                    d
                })
            })
            .collect();
    }
    let words = free_lie::lie_basis(n);
    words.iter().flat_map(|w| decorations.iter().map(move |g| (w.clone(), g.clone()))).collect()
}

/// Reduced words of length at most `radius` in the free group on `rank` generators.
pub fn free_group_ball_size(rank: u64, radius: u32) -> BigInt {
    if rank == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::one();
    let mut layer = BigInt::from(2 * rank);
    for _ in 0..radius {
        total += &layer;
        layer *= 2 * rank - 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteGroupTable> {
        Arc::new(FiniteGroupTable::cyclic(2).unwrap())
    }

    fn el(s: &str, g: &Arc<FiniteGroupTable>) -> DecoratedLieElement {
        DecoratedLieElement::parse(s, g.clone(), 0).unwrap()
    }

    #[test]
    fn group_tables() {
        assert!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroupTable::new(vec![vec![1, 0], vec![0, 1]]).is_err());
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_ne!(s3.mul(1, 2), s3.mul(2, 1));
        for a in 0..6 {
            assert_eq!(s3.mul(a, s3.inverse(a)), 0);
        }
        let z3 = FiniteGroupTable::cyclic(3).unwrap();
        assert_eq!(FiniteGroupTable::from_json(&z3.to_json()).unwrap(), z3);
        assert_eq!(z3.to_json(), r#"{"order":3,"table":[[0,1,2],[1,2,0],[2,0,1]]}"#);
        assert!(FiniteGroupTable::from_json(r#"{"order":2,"table":[[0]]}"#).is_err());
    }

    #[test]
    fn group_ring() {
        let z3 = FiniteGroupTable::cyclic(3).unwrap();
        let a = GroupRingElement::basis(1).add(&GroupRingElement::basis(2));
        let sq = a.mul(&a, &z3);
        assert_eq!(sq.terms().get(&0), Some(&BigInt::from(2)));
        assert_eq!(sq.terms().get(&2), Some(&BigInt::from(1)));
        assert_eq!(sq.terms().get(&1), Some(&BigInt::from(1)));
    }

    #[test]
    fn reduce_examples() {
        let g = z2();
        assert_eq!(decorated_reduce(&el("[x2,x1]@(g0,g1)", &g)), el("-1*[x1,x2]@(g0,g1)", &g));
        let jacobi = el("[x1,[x2,x3]]@(g1,g0,g1) + [x2,[x3,x1]]@(g1,g0,g1) + [x3,[x1,x2]]@(g1,g0,g1)", &g);
        assert!(decorated_reduce(&jacobi).is_zero());
        let plain = el("[[x1,x3],x2]@(g0,g0,g0)", &g);
        let expected = free_lie::reduce(&LieElement::parse("[[x1,x3],x2]", 0).unwrap());
        assert_eq!(decorated_reduce(&plain).component(&[0, 0, 0]), expected);
    }

    #[test]
    fn bracket_examples() {
        let g = z2();
        let b = grasper_bracket(&el("x1@(g1)", &g), &el("x2@(g0)", &g)).unwrap();
        assert_eq!(b, el("[x1,x2]@(g1,g0)", &g));
        let zero = DecoratedLieElement::zero(g.clone(), &[2], 0);
        assert!(grasper_bracket(&el("x1@(g1)", &g), &zero).unwrap().is_zero());
        let j = grasper_bracket(&el("[x1,x2]@(g1,g0)", &g), &el("x3@(g1)", &g)).unwrap();
        assert_eq!(j, el("[x1,[x2,x3]]@(g1,g0,g1) - [x2,[x1,x3]]@(g1,g0,g1)", &g));
        let z3 = Arc::new(FiniteGroupTable::cyclic(3).unwrap());
        assert_eq!(grasper_bracket(&el("x1@(g1)", &g), &el("x2@(g0)", &z3)), Err(Error::GroupClash));
        assert_eq!(grasper_bracket(&el("x1@(g1)", &g), &el("x1@(g0)", &g)), Err(Error::LabelClash(vec![1])));
    }

    #[test]
    fn act_examples() {
        let g = z2();
        let e = el("[x1,x2]@(g0,g1)", &g);
        assert_eq!(decorated_act(&Permutation::identity(2), &e).unwrap(), e);
        let t = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(decorated_act(&t, &e).unwrap(), el("-1*[x1,x2]@(g1,g0)", &g));
        assert_eq!(decorated_act(&t, &decorated_act(&t, &e).unwrap()).unwrap(), e);
    }

    #[test]
    fn ranks() {
        assert_eq!(decorated_rank(2, 0, 1), BigInt::from(1));
        assert_eq!(decorated_rank(3, 0, 2), BigInt::from(16));
        assert_eq!(decorated_rank(4, 0, 1), BigInt::from(6));
        assert_eq!(BigInt::from(decorated_basis(3, 2).len()), decorated_rank(3, 0, 2));
        assert_eq!(free_group_ball_size(1, 3), BigInt::from(7));
        assert_eq!(free_group_ball_size(2, 2), BigInt::from(17));
    }

    #[test]
    fn text_round_trip() {
        let g = z2();
        let e = el("2*[x1,x2]@(g1,g0) - [x2,x1]@(g0,g0)", &g);
        assert_eq!(DecoratedLieElement::parse(&e.to_string(), g.clone(), 0).unwrap(), e);
        assert!(DecoratedLieElement::parse("[x1,x2]@(g0)", g.clone(), 0).is_err());
        assert!(DecoratedLieElement::parse("[x1,x2]@(g0,g2)", g, 0).is_err());
    }
}
