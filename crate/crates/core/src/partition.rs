//! The poset `Π_n` of proper partitions of `{1..n}` and its nerve.
//!
//! Simplices are strict chains `b_0 < b_1 < … < b_k` with `b_i` refining
//! `b_{i+1}` (fine to coarse). That order is the orientation of the simplex,
//! and `Σ_n` acts by relabelling, which preserves it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::free_lie::BracketedWord;
use crate::homology::{ChainMap, IntegerChainComplex};
use crate::perm::Permutation;
use crate::sparse::SparseMatrix;

/// A set partition of `{1..n}`; blocks sorted internally and by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            for &i in b {
                if i == 0 || i as usize > n || seen[i as usize] {
                    return Err(Error::InvalidInput(format!("{blocks:?} is not a partition of 1..{n}")));
                }
                seen[i as usize] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::InvalidInput(format!("{blocks:?} does not cover 1..{n}")));
        }
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { n, blocks }
    }

    /// From a restricted growth string: `labels[i]` is the block of `i + 1`.
    fn from_labels(labels: &[u8]) -> Self {
        let k = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l as usize].push(i as u32 + 1);
        }
        Partition { n: labels.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Neither discrete nor trivial.
    pub fn is_proper(&self) -> bool {
        self.blocks.len() > 1 && self.blocks.len() < self.n
    }

    /// Block index of each element `1..=n` (position `i` is element `i + 1`).
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                out[i as usize - 1] = k;
            }
        }
        out
    }

    /// Every block of `self` lies in a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.n != other.n {
            return false;
        }
        let theirs = other.block_of();
        self.blocks.iter().all(|b| b.iter().all(|&i| theirs[i as usize - 1] == theirs[b[0] as usize - 1]))
    }

    pub fn strictly_refines(&self, other: &Partition) -> bool {
        self.blocks.len() > other.blocks.len() && self.refines(other)
    }

    pub fn relabel(&self, sigma: &Permutation) -> Partition {
        Self::canonical(self.n, self.blocks.iter().map(|b| b.iter().map(|&i| sigma.apply(i)).collect()).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n <= 9 { "" } else { "," };
        let blocks: Vec<String> =
            self.blocks.iter().map(|b| b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)).collect();
        write!(f, "{}", blocks.join("|"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `12|3` (single digits) or `1,12|2,3,…` (comma-separated).
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let block: Vec<u32> = if part.contains(',') {
                part.split(',').map(|x| x.parse().map_err(|_| Error::parse(0, format!("bad element {x}")))).collect::<Result<_>>()?
            } else {
                part.chars()
                    .map(|c| c.to_digit(10).ok_or_else(|| Error::parse(0, format!("bad element {c}"))))
                    .collect::<Result<_>>()?
            };
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks)
    }
}

/// A strict refinement chain of proper partitions, finest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionChain {
    n: usize,
    partitions: Vec<Partition>,
}

impl PartitionChain {
    pub fn new(n: usize, partitions: Vec<Partition>) -> Result<Self> {
        for p in &partitions {
            if p.n() != n || !p.is_proper() {
                return Err(Error::InvalidInput(format!("{p} is not a proper partition of 1..{n}")));
            }
        }
        if partitions.windows(2).any(|w| !w[0].strictly_refines(&w[1])) {
            return Err(Error::InvalidInput("chain is not strictly increasing under refinement".into()));
        }
        Ok(PartitionChain { n, partitions })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Simplex dimension: one less than the number of partitions.
    pub fn dimension(&self) -> isize {
        self.partitions.len() as isize - 1
    }

    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let parts = s.split('<').map(|p| p.trim()).filter(|p| !p.is_empty()).map(str::parse).collect::<Result<Vec<Partition>>>()?;
        PartitionChain::new(n, parts)
    }
}

impl fmt::Display for PartitionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partitions.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" < "))
    }
}

/// All proper partitions of `{1..n}` in canonical order; `Bell(n) - 2` of them.
pub fn build_poset(n: usize) -> Result<Vec<Partition>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("Π_n needs n ≥ 2, got {n}")));
    }
    let mut out = Vec::new();
    let mut labels = vec![0u8; n];
    enumerate_rgs(&mut labels, 1, 0, &mut out);
    out.retain(Partition::is_proper);
    out.sort();
    Ok(out)
}

fn enumerate_rgs(labels: &mut [u8], pos: usize, max: u8, out: &mut Vec<Partition>) {
    if pos == labels.len() {
        out.push(Partition::from_labels(labels));
        return;
    }
    for l in 0..=max + 1 {
        labels[pos] = l;
        enumerate_rgs(labels, pos + 1, max.max(l), out);
    }
}

/// Nondegenerate simplices of the nerve of `Π_n`, indexed per dimension.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    n: usize,
    poset: Vec<Partition>,
    poset_index: HashMap<Partition, u16>,
    /// `simplices[d]`: sorted chains of poset indices, each of length `d + 1`.
    simplices: Vec<Vec<Vec<u16>>>,
    lookup: Vec<HashMap<Vec<u16>, u32>>,
}

pub fn build_nerve(n: usize) -> Result<NerveComplex> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "the nerve of Π_{n} is empty; use IntegerChainComplex::empty_augmented"
        )));
    }
    let poset = build_poset(n)?;
    let poset_index: HashMap<Partition, u16> = poset.iter().enumerate().map(|(i, p)| (p.clone(), i as u16)).collect();
    let coarser: Vec<Vec<u16>> = poset
        .iter()
        .map(|p| {
            poset.iter().enumerate().filter(|(_, q)| p.strictly_refines(q)).map(|(j, _)| j as u16).collect()
        })
        .collect();
    let top = n - 3;
    let mut simplices: Vec<Vec<Vec<u16>>> = vec![Vec::new(); top + 1];
    let mut stack = Vec::with_capacity(top + 1);
    for i in 0..poset.len() as u16 {
        stack.push(i);
        extend_chains(&coarser, &mut stack, &mut simplices);
        stack.pop();
    }
    for level in &mut simplices {
        level.sort_unstable();
    }
    let lookup = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(k, s)| (s.clone(), k as u32)).collect())
        .collect();
    Ok(NerveComplex { n, poset, poset_index, simplices, lookup })
}

fn extend_chains(coarser: &[Vec<u16>], stack: &mut Vec<u16>, out: &mut [Vec<Vec<u16>>]) {
    out[stack.len() - 1].push(stack.clone());
    let last = *stack.last().expect("nonempty chain") as usize;
    for &j in &coarser[last] {
        stack.push(j);
        extend_chains(coarser, stack, out);
        stack.pop();
    }
}

impl NerveComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &[Partition] {
        &self.poset
    }

    pub fn top_dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplex_indices(&self, d: usize) -> &[Vec<u16>] {
        &self.simplices[d]
    }

    pub fn chain(&self, d: usize, k: usize) -> PartitionChain {
        PartitionChain {
            n: self.n,
            partitions: self.simplices[d][k].iter().map(|&i| self.poset[i as usize].clone()).collect(),
        }
    }

    /// Dimension and position of a chain among the stored simplices.
    pub fn index_of(&self, c: &PartitionChain) -> Option<(usize, usize)> {
        let key: Vec<u16> = c.partitions().iter().map(|p| self.poset_index.get(p).copied()).collect::<Option<_>>()?;
        let d = key.len().checked_sub(1)?;
        self.lookup.get(d)?.get(&key).map(|&k| (d, k as usize))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum()
    }

    /// Augmented simplicial chain complex; its homology is the reduced homology of `|Π_n|`.
    pub fn chain_complex(&self) -> IntegerChainComplex {
        let mut dims = vec![1];
        dims.extend(self.counts());
        let mut boundaries = Vec::with_capacity(self.simplices.len());
        let mut aug = SparseMatrix::new(1);
        for _ in 0..self.count(0) {
            aug.push_column(vec![(0, 1)]);
        }
        boundaries.push(aug);
        for d in 1..self.simplices.len() {
            let mut m = SparseMatrix::new(self.count(d - 1));
            let mut face = Vec::with_capacity(d);
            for s in &self.simplices[d] {
                let mut col = Vec::with_capacity(d + 1);
                for drop in 0..=d {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &x)| x));
                    let row = self.lookup[d - 1][&face];
                    col.push((row, if drop % 2 == 0 { 1 } else { -1 }));
                }
                m.push_column(col);
            }
            boundaries.push(m);
        }
        IntegerChainComplex::new(-1, dims, boundaries, true).expect("nerve boundaries square to zero")
    }

    /// Where `σ` sends each simplex, per dimension.
    pub fn action_permutation(&self, sigma: &Permutation) -> Vec<Vec<u32>> {
        let on_poset: Vec<u16> = self.poset.iter().map(|p| self.poset_index[&p.relabel(sigma)]).collect();
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, level)| {
                level
                    .iter()
                    .map(|s| {
                        let image: Vec<u16> = s.iter().map(|&i| on_poset[i as usize]).collect();
                        self.lookup[d][&image]
                    })
                    .collect()
            })
            .collect()
    }

    /// The chain map induced by `σ` on [`Self::chain_complex`].
    pub fn action_chain_map(&self, sigma: &Permutation) -> ChainMap {
        let mut maps = Vec::new();
        let mut aug = SparseMatrix::new(1);
        aug.push_column(vec![(0, 1)]);
        maps.push(aug);
        for (d, images) in self.action_permutation(sigma).into_iter().enumerate() {
            let mut m = SparseMatrix::new(self.count(d));
            for t in images {
                m.push_column(vec![(t, 1)]);
            }
            maps.push(m);
        }
        ChainMap::new(-1, maps)
    }
}

/// Acts blockwise on every partition of the chain.
pub fn simplicial_action(sigma: &Permutation, c: &PartitionChain) -> Result<PartitionChain> {
    if sigma.degree() != c.n() {
        return Err(Error::InvalidInput(format!("σ ∈ Σ_{} cannot act on a chain in Π_{}", sigma.degree(), c.n())));
    }
    Ok(PartitionChain { n: c.n, partitions: c.partitions.iter().map(|p| p.relabel(sigma)).collect() })
}

/// Cuts the tree of `w` at every depth below the root and keeps the proper
/// partitions, finest first. Each depth gives the leaf sets of the subtrees
/// hanging at that depth.
pub fn level_chain(w: &BracketedWord, n: usize) -> Result<PartitionChain> {
    if !w.is_multilinear_on(&(1..=n as u32).collect::<Vec<_>>()) {
        return Err(Error::InvalidElement(format!("{w} is not multilinear on 1..{n}")));
    }
    let mut levels = Vec::new();
    let mut depth = 1;
    loop {
        let mut blocks = Vec::new();
        cut_at(w, 0, depth, &mut blocks);
        let p = Partition::canonical(n, blocks);
        if p.num_blocks() >= n {
            break;
        }
        if p.is_proper() {
            levels.push(p);
        }
        depth += 1;
    }
    levels.reverse();
    PartitionChain::new(n, levels)
}

fn cut_at(w: &BracketedWord, depth: usize, cut: usize, out: &mut Vec<Vec<u32>>) {
    match w {
        BracketedWord::Bracket(l, r) if depth < cut => {
            cut_at(l, depth + 1, cut, out);
            cut_at(r, depth + 1, cut, out);
        }
        _ => out.push(w.letters()),
    }
}

/// The top simplex of a fully grown Lie tree: requires one internal vertex per depth.
pub fn top_simplex_of_tree(w: &BracketedWord, n: usize) -> Result<PartitionChain> {
    let c = level_chain(w, n)?;
    if c.partitions().len() + 2 != n {
        return Err(Error::InvalidInput(format!("{w} has two internal vertices at one height; no top simplex")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_text_format() {
        assert_eq!(p("23|1").to_string(), "1|23");
        assert_eq!(p("1,10|2,3,4,5,6,7,8,9").to_string(), "1,10|2,3,4,5,6,7,8,9");
        assert!("12|2".parse::<Partition>().is_err());
        assert!("13".parse::<Partition>().is_err());
    }

    #[test]
    fn refinement() {
        assert!(p("1|2|34").strictly_refines(&p("1|234")));
        assert!(!p("12|34").refines(&p("13|24")));
        assert!(p("12|34").refines(&p("12|34")));
        assert!(!p("12|34").strictly_refines(&p("12|34")));
    }

    #[test]
    fn small_posets() {
        assert!(build_poset(2).unwrap().is_empty());
        let p3: Vec<String> = build_poset(3).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(p3.len(), 3);
        for s in ["12|3", "13|2", "1|23"] {
            assert!(p3.contains(&s.to_string()));
        }
        assert_eq!(build_poset(4).unwrap().len(), 13);
        assert!(build_poset(1).is_err());
    }

    #[test]
    fn small_nerves() {
        assert_eq!(build_nerve(3).unwrap().counts(), vec![3]);
        let n4 = build_nerve(4).unwrap();
        assert_eq!(n4.counts(), vec![13, 18]);
        assert_eq!(n4.euler_characteristic(), -5);
        assert_eq!(build_nerve(5).unwrap().top_dimension(), 2);
        assert!(build_nerve(2).is_err());
    }

    #[test]
    fn tree_simplices() {
        let c = top_simplex_of_tree(&"[x1,[x2,x3]]".parse().unwrap(), 3).unwrap();
        assert_eq!(c.to_string(), "1|23");
        let c = top_simplex_of_tree(&"[x2,[x1,x3]]".parse().unwrap(), 3).unwrap();
        assert_eq!(c.to_string(), "13|2");
        let c = top_simplex_of_tree(&"[x1,[x2,[x3,x4]]]".parse().unwrap(), 4).unwrap();
        assert_eq!(c.to_string(), "1|2|34 < 1|234");
        assert!(top_simplex_of_tree(&"[[x1,x2],[x3,x4]]".parse().unwrap(), 4).is_err());
        assert_eq!(level_chain(&"[[x1,x2],[x3,x4]]".parse().unwrap(), 4).unwrap().to_string(), "12|34");
        assert!(top_simplex_of_tree(&"[x1,x1]".parse().unwrap(), 2).is_err());
    }

    #[test]
    fn relabelling() {
        let t = Permutation::transposition(3, 1, 2).unwrap();
        let v = PartitionChain::parse("13|2", 3).unwrap();
        assert_eq!(simplicial_action(&t, &v).unwrap().to_string(), "1|23");
        let s = Permutation::transposition(4, 3, 4).unwrap();
        let c = PartitionChain::parse("1|2|34 < 1|234", 4).unwrap();
        assert_eq!(simplicial_action(&s, &c).unwrap(), c);
        assert_eq!(simplicial_action(&Permutation::identity(4), &c).unwrap(), c);
    }

    #[test]
    fn chains_are_validated() {
        assert!(PartitionChain::parse("1|234 < 1|2|34", 4).is_err());
        assert!(PartitionChain::parse("1|2|3|4", 4).is_err());
    }
}
