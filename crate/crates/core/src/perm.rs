//! Permutations of `{1..n}` in one-line notation.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A bijection of `{1..n}`, stored as its list of images.
///
/// Composition follows function notation: `s.compose(&p)` applies `p` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i as usize > n || seen[i as usize] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Transposition `(i j)` in `Σ_n`.
    pub fn transposition(n: usize, i: u32, j: u32) -> Result<Self> {
        Self::from_cycles(n, &[vec![i, j]])
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a as usize > n || touched[a as usize] {
                    return Err(Error::InvalidInput(format!("bad cycle {cycle:?} for n={n}")));
                }
                touched[a as usize] = true;
                images[a as usize - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses either one-line notation `2,1,3` / `[2,1,3]` or cycle notation
    /// `(1 2)(3 4)`; cycle notation needs the degree `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('(') || t.is_empty() || t == "id" || t == "e" {
            let mut cycles = Vec::new();
            let mut rest = t;
            while let Some(start) = rest.find('(') {
                let end = rest[start..]
                    .find(')')
                    .ok_or_else(|| Error::parse(start, "unclosed cycle"))?;
                let body = &rest[start + 1..start + end];
                let cycle = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<u32>().map_err(|_| Error::parse(start, format!("bad entry {x}"))))
                    .collect::<Result<Vec<_>>>()?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                rest = &rest[start + end + 1..];
            }
            return Self::from_cycles(n, &cycles);
        }
        let body = t.trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<u32>().map_err(|_| Error::parse(0, format!("bad entry {x}"))))
            .collect::<Result<Vec<_>>>()?;
        let p = Self::from_images(images)?;
        if n != 0 && p.degree() != n {
            return Err(Error::InvalidInput(format!("expected a permutation of 1..{n}, got {p}")));
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of `i` (1-based). Points outside `1..=n` are fixed.
    pub fn apply(&self, i: u32) -> u32 {
        match i {
            0 => 0,
            _ if i as usize <= self.images.len() => self.images[i as usize - 1],
            _ => i,
        }
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.degree().max(other.degree());
        Permutation { images: (1..=n as u32).map(|i| self.apply(other.apply(i))).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize - 1] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| j as usize == i + 1)
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize - 1;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Extends to `Σ_m` (m ≥ n) by fixing the new points.
    pub fn extend(&self, m: usize) -> Permutation {
        Permutation { images: (1..=m.max(self.degree()) as u32).map(|i| self.apply(i)).collect() }
    }

    pub fn fixes(&self, i: u32) -> bool {
        self.apply(i) == i
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// All of `Σ_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Permutation { images: current.clone() });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// Every transposition `(i j)`, `i < j`, in `Σ_n`.
    pub fn transpositions(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        for i in 1..=n as u32 {
            for j in i + 1..=n as u32 {
                out.push(Self::transposition(n, i, j).expect("valid transposition"));
            }
        }
        out
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i as usize] {
                seen[i as usize] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, i) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
