//! Leaf-labelled rooted trees with rational edge lengths and unit
//! root-to-leaf distance, as points of the Goodwillie partition complex.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_lie::{self, LieElement};
use crate::perm::Permutation;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(u32),
    /// Children sorted by smallest leaf label.
    Internal(Vec<WeightedTree>),
}

/// A vertex together with the length of the edge above it. At the top level
/// that edge is the root edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTree {
    len: BigRational,
    node: Node,
}

impl WeightedTree {
    pub fn leaf(label: u32, len: BigRational) -> Self {
        WeightedTree { len, node: Node::Leaf(label) }
    }

    pub fn internal(len: BigRational, mut children: Vec<WeightedTree>) -> Self {
        children.sort_by_key(WeightedTree::min_leaf);
        WeightedTree { len, node: Node::Internal(children) }
    }

    /// Checks edge lengths, arities, distinct labels and unit root-to-leaf distance.
    pub fn validated(self) -> Result<Self> {
        let mut labels = BTreeSet::new();
        self.check(&BigRational::zero(), &mut labels)?;
        Ok(self)
    }

    fn check(&self, above: &BigRational, labels: &mut BTreeSet<u32>) -> Result<()> {
        if self.len.is_negative() || self.len > BigRational::one() {
            return Err(Error::InvalidInput(format!("edge length {} outside [0,1]", self.len)));
        }
        let h = above + &self.len;
        match &self.node {
            Node::Leaf(l) => {
                if !labels.insert(*l) {
                    return Err(Error::InvalidInput(format!("leaf {l} appears twice")));
                }
                if !h.is_one() {
                    return Err(Error::InvalidInput(format!("leaf {l} is at distance {h} from the root")));
                }
            }
            Node::Internal(ch) => {
                if ch.len() < 2 {
                    return Err(Error::InvalidInput("internal vertex with fewer than two children".into()));
                }
                for c in ch {
                    c.check(&h, labels)?;
                }
            }
        }
        Ok(())
    }

    pub fn edge_length(&self) -> &BigRational {
        &self.len
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn min_leaf(&self) -> u32 {
        match &self.node {
            Node::Leaf(l) => *l,
            Node::Internal(ch) => ch[0].min_leaf(),
        }
    }

    /// Sorted leaf labels.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match &self.node {
            Node::Leaf(l) => out.push(*l),
            Node::Internal(ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Zero root edge or some zero leaf edge.
    pub fn is_basepoint(&self) -> bool {
        self.len.is_zero() || self.has_zero_leaf_edge()
    }

    fn has_zero_leaf_edge(&self) -> bool {
        match &self.node {
            Node::Leaf(_) => self.len.is_zero(),
            Node::Internal(ch) => ch.iter().any(WeightedTree::has_zero_leaf_edge),
        }
    }

    fn scaled(&self, k: &BigRational) -> WeightedTree {
        let node = match &self.node {
            Node::Leaf(l) => Node::Leaf(*l),
            Node::Internal(ch) => Node::Internal(ch.iter().map(|c| c.scaled(k)).collect()),
        };
        WeightedTree { len: &self.len * k, node }
    }

    pub fn relabel(&self, sigma: &Permutation) -> WeightedTree {
        match &self.node {
            Node::Leaf(l) => WeightedTree::leaf(sigma.apply(*l), self.len.clone()),
            Node::Internal(ch) => WeightedTree::internal(self.len.clone(), ch.iter().map(|c| c.relabel(sigma)).collect()),
        }
    }

    pub fn t_matrix(&self) -> Result<TMatrix> {
        if self.is_basepoint() {
            return Err(Error::BasepointInput);
        }
        let labels = self.leaves();
        let k = labels.len();
        let mut entries = vec![vec![BigRational::one(); k]; k];
        let pos = |l: u32| labels.binary_search(&l).expect("leaf label");
        let mut stack = vec![(self, self.len.clone())];
        while let Some((t, h)) = stack.pop() {
            if let Node::Internal(ch) = &t.node {
                let sets: Vec<Vec<u32>> = ch.iter().map(WeightedTree::leaves).collect();
                for (a, sa) in sets.iter().enumerate() {
                    for sb in &sets[a + 1..] {
                        for &i in sa {
                            for &j in sb {
                                entries[pos(i)][pos(j)] = h.clone();
                                entries[pos(j)][pos(i)] = h.clone();
                            }
                        }
                    }
                }
                for c in ch {
                    stack.push((c, &h + &c.len));
                }
            }
        }
        Ok(TMatrix { labels, entries })
    }

    /// Rebuilds the tree from its T-matrix, contracting zero-length internal edges.
    pub fn from_t_matrix(t: &TMatrix) -> Result<WeightedTree> {
        if !t.is_ultrametric() {
            return Err(Error::InvalidInput("T-matrix fails the ultrametric condition".into()));
        }
        let idx: Vec<usize> = (0..t.labels.len()).collect();
        Ok(rebuild(t, &idx, &BigRational::zero()))
    }
}

fn rebuild(t: &TMatrix, idx: &[usize], above: &BigRational) -> WeightedTree {
    if let [i] = idx {
        return WeightedTree::leaf(t.labels[*i], BigRational::one() - above);
    }
    let m = idx
        .iter()
        .flat_map(|&i| idx.iter().filter(move |&&j| j != i).map(move |&j| &t.entries[i][j]))
        .min()
        .expect("at least two leaves")
        .clone();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in idx {
        match classes.iter_mut().find(|c| t.entries[c[0]][i] > m) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let children = classes.iter().map(|c| rebuild(t, c, &m)).collect();
    WeightedTree::internal(&m - above, children)
}

impl fmt::Display for WeightedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        self.write_node(f)?;
        write!(f, ")")
    }
}

impl WeightedTree {
    fn write_node(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Leaf(l) => write!(f, "{l}:{}", self.len),
            Node::Internal(ch) => {
                write!(f, "(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    c.write_node(f)?;
                }
                write!(f, "):{}", self.len)
            }
        }
    }
}

impl FromStr for WeightedTree {
    type Err = Error;

    /// Accepts the wrapped form `((1:1/2,2:1/2):1/2)` and the bare `(1:1/2,2:1/2):1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = TreeParser { chars: &chars, pos: 0 };
        let t = p.item()?;
        if p.pos != chars.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        let t = match t {
            Item::Tree(t) => t,
            Item::Group(mut ch) if ch.len() == 1 => ch.pop().expect("one child"),
            Item::Group(_) => return Err(Error::parse(chars.len(), "missing root edge length")),
        };
        t.validated()
    }
}

enum Item {
    Tree(WeightedTree),
    /// A parenthesized list without a trailing length.
    Group(Vec<WeightedTree>),
}

struct TreeParser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl TreeParser<'_> {
    fn item(&mut self) -> Result<Item> {
        if self.chars.get(self.pos) == Some(&'(') {
            self.pos += 1;
            let mut children = vec![self.tree()?];
            while self.chars.get(self.pos) == Some(&',') {
                self.pos += 1;
                children.push(self.tree()?);
            }
            if self.chars.get(self.pos) != Some(&')') {
                return Err(Error::parse(self.pos, "expected ')'"));
            }
            self.pos += 1;
            if self.chars.get(self.pos) != Some(&':') {
                return Ok(Item::Group(children));
            }
            self.pos += 1;
            let len = self.rational()?;
            return Ok(Item::Tree(WeightedTree::internal(len, children)));
        }
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let label: u32 = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| Error::parse(start, "expected a leaf label"))?;
        if self.chars.get(self.pos) != Some(&':') {
            return Err(Error::parse(self.pos, "expected ':'"));
        }
        self.pos += 1;
        Ok(Item::Tree(WeightedTree::leaf(label, self.rational()?)))
    }

    fn tree(&mut self) -> Result<WeightedTree> {
        match self.item()? {
            Item::Tree(t) => Ok(t),
            Item::Group(_) => Err(Error::parse(self.pos, "expected ':' after ')'")),
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == '/' || *c == '-') {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::parse(start, format!("bad length '{s}'")))
    }
}

/// Symmetric matrix of root distances of lowest common vertices, indexed by leaf label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TMatrix {
    labels: Vec<u32>,
    #[serde(serialize_with = "ser_rationals")]
    entries: Vec<Vec<BigRational>>,
}

fn ser_rationals<S: serde::Serializer>(m: &[Vec<BigRational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        seq.serialize_element(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl TMatrix {
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn get(&self, i: u32, h: u32) -> Option<&BigRational> {
        let a = self.labels.binary_search(&i).ok()?;
        let b = self.labels.binary_search(&h).ok()?;
        Some(&self.entries[a][b])
    }

    /// Symmetric, unit diagonal, and the two smallest entries of every triple agree.
    pub fn is_ultrametric(&self) -> bool {
        let k = self.labels.len();
        let e = &self.entries;
        if (0..k).any(|i| !e[i][i].is_one() || (0..i).any(|j| e[i][j] != e[j][i])) {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    let mut v = [&e[i][j], &e[i][l], &e[j][l]];
                    v.sort();
                    if v[0] != v[1] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The matrix of the relabelled tree: entry `(σi, σh)` is entry `(i, h)`.
    pub fn conjugate(&self, sigma: &Permutation) -> TMatrix {
        let mut labels: Vec<u32> = self.labels.iter().map(|&l| sigma.apply(l)).collect();
        labels.sort_unstable();
        let k = labels.len();
        let mut entries = vec![vec![BigRational::zero(); k]; k];
        for (a, &i) in self.labels.iter().enumerate() {
            for (b, &h) in self.labels.iter().enumerate() {
                let x = labels.binary_search(&sigma.apply(i)).expect("label");
                let y = labels.binary_search(&sigma.apply(h)).expect("label");
                entries[x][y] = self.entries[a][b].clone();
            }
        }
        TMatrix { labels, entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ungraft {
    Basepoint,
    Split { t0: BigRational, left: WeightedTree, right: WeightedTree },
}

/// Splits at a binary root separating `s1` from `s2`, rescaling both sides by `1/(1 - T0)`.
pub fn ungraft(t: &WeightedTree, s1: &[u32], s2: &[u32]) -> Result<Ungraft> {
    let mut a: Vec<u32> = s1.to_vec();
    let mut b: Vec<u32> = s2.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let mut all: Vec<u32> = a.iter().chain(&b).copied().collect();
    all.sort_unstable();
    if all != t.leaves() || a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("S1 and S2 must partition the leaves".into()));
    }
    if t.is_basepoint() {
        return Ok(Ungraft::Basepoint);
    }
    let Node::Internal(ch) = &t.node else {
        return Ok(Ungraft::Basepoint);
    };
    let [c1, c2] = ch.as_slice() else {
        return Ok(Ungraft::Basepoint);
    };
    let (left, right) = match (c1.leaves(), c2.leaves()) {
        (x, y) if x == a && y == b => (c1, c2),
        (x, y) if x == b && y == a => (c2, c1),
        _ => return Ok(Ungraft::Basepoint),
    };
    let k = (BigRational::one() - &t.len).recip();
    Ok(Ungraft::Split { t0: t.len.clone(), left: left.scaled(&k), right: right.scaled(&k) })
}

/// Binary root vertex at height `t0` over `t1` and `t2` scaled by `1 - t0`.
pub fn graft_trees(t0: &BigRational, t1: &WeightedTree, t2: &WeightedTree) -> Result<WeightedTree> {
    if t0.is_negative() || *t0 > BigRational::one() {
        return Err(Error::InvalidInput(format!("root height {t0} outside [0,1]")));
    }
    if t1.is_basepoint() || t2.is_basepoint() {
        return Err(Error::BasepointInput);
    }
    let l2 = t2.leaves();
    let clash: Vec<u32> = t1.leaves().into_iter().filter(|l| l2.binary_search(l).is_ok()).collect();
    if !clash.is_empty() {
        return Err(Error::LabelClash(clash));
    }
    let k = BigRational::one() - t0;
    Ok(WeightedTree::internal(t0.clone(), vec![t1.scaled(&k), t2.scaled(&k)]))
}

/// The caterpillar of `w_σ`: spine vertex `i` at height `θ_i` carries leaf `σ(i)`,
/// and leaf `n` hangs from the top spine vertex.
pub fn caterpillar(sigma: &Permutation, theta: &[BigRational]) -> Result<WeightedTree> {
    let m = sigma.degree();
    if m == 0 || theta.len() != m {
        return Err(Error::InvalidInput(format!("need {m} heights for σ ∈ Σ_{m}, got {}", theta.len())));
    }
    if theta[0].is_negative() || theta[m - 1] > BigRational::one() || theta.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("heights must be nondecreasing in [0,1]".into()));
    }
    let one = BigRational::one();
    let n = m as u32 + 1;
    let top = &theta[m - 1];
    let mut spine = WeightedTree::internal(
        BigRational::zero(),
        vec![WeightedTree::leaf(sigma.apply(m as u32), &one - top), WeightedTree::leaf(n, &one - top)],
    );
    for i in (0..m - 1).rev() {
        spine.len = &theta[i + 1] - &theta[i];
        spine = WeightedTree::internal(
            BigRational::zero(),
            vec![WeightedTree::leaf(sigma.apply(i as u32 + 1), &one - &theta[i]), spine],
        );
    }
    spine.len = theta[0].clone();
    Ok(spine)
}

/// The bracket on Lie trees induced by grafting; the same as [`free_lie::graft`].
pub fn graft_bracket_shadow(e1: &LieElement, e2: &LieElement) -> Result<LieElement> {
    free_lie::graft(e1, e2)
}

/// A random binary tree on `labels` with strictly increasing vertex heights in
/// `(0,1)` and denominators up to `max_den`.
pub fn random_binary_tree<R: Rng + ?Sized>(labels: &[u32], max_den: i64, rng: &mut R) -> WeightedTree {
    let mut labels = labels.to_vec();
    random_subtree(&mut labels, &BigRational::zero(), max_den, rng)
}

fn random_height<R: Rng + ?Sized>(above: &BigRational, max_den: i64, rng: &mut R) -> BigRational {
    let d = rng.gen_range(2..=max_den.max(2));
    let k = rng.gen_range(1..d);
    above + (BigRational::one() - above) * q(k, d)
}

fn random_subtree<R: Rng + ?Sized>(labels: &mut [u32], above: &BigRational, max_den: i64, rng: &mut R) -> WeightedTree {
    if let [l] = labels {
        return WeightedTree::leaf(*l, BigRational::one() - above);
    }
    let h = random_height(above, max_den, rng);
    // shuffle, then cut into two nonempty parts
    for i in (1..labels.len()).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    let cut = rng.gen_range(1..labels.len());
    let (a, b) = labels.split_at_mut(cut);
    let children = vec![random_subtree(a, &h, max_den, rng), random_subtree(b, &h, max_den, rng)];
    WeightedTree::internal(h - above, children)
}

/// `k` sorted heights in `(0,1)` with denominators up to `max_den`.
pub fn random_monotone_heights<R: Rng + ?Sized>(k: usize, max_den: i64, rng: &mut R) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = (0..k)
        .map(|_| {
            let d = rng.gen_range(2..=max_den.max(2));
            q(rng.gen_range(1..d), d)
        })
        .collect();
    v.sort();
    v
}
