//! Lyndon words, basic words with full letter support, and the ranks of the
//! first nonvanishing homotopy groups of total fibres of collapsing cubes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::free_lie;
use crate::perm::Permutation;

/// Lyndon words on letters `1..=n` of length at most `max_len`, ordered by
/// length and then lexicographically.
pub fn lyndon_words(n: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    // Duval's generator: every Lyndon word of length ≤ max_len, lexicographically.
    let mut w: Vec<u32> = vec![1];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&n) {
            w.pop();
        }
        let Some(last) = w.last_mut() else { break };
        *last += 1;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Lyndon words that use every letter `1..=n` at least once.
pub fn basic_words_all_letters(n: u32, max_len: usize) -> Vec<Vec<u32>> {
    if max_len < n as usize {
        return Vec::new();
    }
    lyndon_words(n, max_len)
        .into_iter()
        .filter(|w| (1..=n).all(|l| w.contains(&l)))
        .collect()
}

fn mobius(mut k: u64) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            k /= p;
            if k.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if k > 1 {
        -mu
    } else {
        mu
    }
}

/// Number of Lyndon words of length `len` on `n` letters: `(1/len) Σ_{d | len} μ(d) n^{len/d}`.
pub fn lyndon_count(n: u32, len: u32) -> BigInt {
    if len == 0 {
        return BigInt::from(0);
    }
    let mut total = BigInt::from(0);
    for d in (1..=len).filter(|d| len.is_multiple_of(*d)) {
        total += BigInt::from(mobius(d as u64)) * BigInt::from(n).pow(len / d);
    }
    total / BigInt::from(len)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(g) => write!(f, "{g}"),
            GroupOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Arity `n`, connectivity `c` of the wedge summands, ranks of `H_{c+1}(X_i)`,
/// and the order of the fundamental group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub n: u32,
    pub c: u32,
    pub leaf_ranks: Vec<u64>,
    pub group_order: GroupOrder,
}

impl RankProfile {
    pub fn new(c: u32, leaf_ranks: Vec<u64>, group_order: GroupOrder) -> Result<Self> {
        if leaf_ranks.is_empty() {
            return Err(Error::InvalidInput("need at least one leaf".into()));
        }
        if leaf_ranks.contains(&0) || group_order == GroupOrder::Finite(0) {
            return Err(Error::InvalidInput("ranks and group order must be positive".into()));
        }
        Ok(RankProfile { n: leaf_ranks.len() as u32, c, leaf_ranks, group_order })
    }

    /// `n` copies of `S^{d-2}` with trivial fundamental group.
    pub fn spheres(n: u32, d: u32) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidInput(format!("need d ≥ 3 for S^(d-2) to be connected, got {d}")));
        }
        RankProfile::new(d - 3, vec![1; n as usize], GroupOrder::Finite(1))
    }
}

/// A rank, exact or as a formula in the unknown group order `|G|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankValue {
    Exact(BigInt),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstRank {
    pub degree: u64,
    pub rank: RankValue,
}

impl Serialize for FirstRank {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("degree", &self.degree)?;
        match &self.rank {
            RankValue::Exact(r) => m.serialize_entry("rank", &r.to_string())?,
            RankValue::Expr(e) => m.serialize_entry("rank_expr", e)?,
        }
        m.end()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn base_rank(p: &RankProfile) -> BigInt {
    factorial(p.n.saturating_sub(1)) * p.leaf_ranks.iter().fold(BigInt::one(), |acc, &r| acc * r)
}

/// `(n(c+1), (n-1)!·∏ r_i)` for a simply connected profile.
pub fn tofib_first_rank(p: &RankProfile) -> Result<(u64, BigInt)> {
    if p.group_order != GroupOrder::Finite(1) {
        return Err(Error::InvalidInput("use tofib_first_rank_with_group for a nontrivial group".into()));
    }
    Ok((p.n as u64 * (p.c as u64 + 1), base_rank(p)))
}

/// As [`tofib_first_rank`], with a factor `g^n` from `Z[π₁M^{×n}]`.
pub fn tofib_first_rank_with_group(p: &RankProfile) -> FirstRank {
    let degree = p.n as u64 * (p.c as u64 + 1);
    let rank = match p.group_order {
        GroupOrder::Finite(g) => RankValue::Exact(base_rank(p) * BigInt::from(g).pow(p.n)),
        GroupOrder::Infinite => RankValue::Expr(format!("{}*|G|^{}", base_rank(p), p.n)),
    };
    FirstRank { degree, rank }
}

/// `(n+1)(c+1)`.
pub fn connectivity_of_j(n: u64, c: u64) -> u64 {
    (n + 1) * (c + 1)
}

/// Character at `σ` of the first nonvanishing homotopy group of the total
/// fibre for `n` spheres `S^{d-2}`: the graded Lie representation `Lie_{d-2}(n)`.
pub fn sphere_first_character(n: usize, d: u32, sigma: &Permutation) -> Result<BigInt> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("need d ≥ 3, got {d}")));
    }
    free_lie::character(n, d - 2, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_examples() {
        assert_eq!(lyndon_words(2, 2), vec![vec![1], vec![2], vec![1, 2]]);
        let l3: Vec<_> = lyndon_words(2, 3).into_iter().filter(|w| w.len() == 3).collect();
        assert_eq!(l3, vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert_eq!(lyndon_words(1, 5), vec![vec![1]]);
    }

    #[test]
    fn witt_counts() {
        assert_eq!(lyndon_count(2, 3), BigInt::from(2));
        assert_eq!(lyndon_count(2, 6), BigInt::from(9));
        assert_eq!(lyndon_count(3, 4), BigInt::from(18));
        for n in 1..=3 {
            for len in 1..=6u32 {
                let c = lyndon_words(n, 6).iter().filter(|w| w.len() == len as usize).count();
                assert_eq!(BigInt::from(c), lyndon_count(n, len));
            }
        }
    }

    #[test]
    fn basic_words() {
        assert_eq!(basic_words_all_letters(2, 2), vec![vec![1, 2]]);
        assert_eq!(basic_words_all_letters(3, 3).len(), 2);
        assert!(basic_words_all_letters(3, 2).is_empty());
        for w in basic_words_all_letters(3, 4).iter().filter(|w| w.len() == 4) {
            assert!((1..=3).all(|l| w.contains(&l)));
        }
    }

    #[test]
    fn rank_examples() {
        let p = RankProfile::new(0, vec![1, 1, 1], GroupOrder::Finite(1)).unwrap();
        assert_eq!(tofib_first_rank(&p).unwrap(), (3, BigInt::from(2)));
        let p = RankProfile::new(4, vec![7], GroupOrder::Finite(1)).unwrap();
        assert_eq!(tofib_first_rank(&p).unwrap(), (5, BigInt::from(7)));
        assert_eq!(tofib_first_rank(&RankProfile::spheres(4, 5).unwrap()).unwrap(), (12, BigInt::from(6)));
        let p = RankProfile::new(0, vec![1, 1], GroupOrder::Finite(2)).unwrap();
        assert_eq!(tofib_first_rank_with_group(&p), FirstRank { degree: 2, rank: RankValue::Exact(4.into()) });
        assert!(tofib_first_rank(&p).is_err());
        let mut p = RankProfile::spheres(3, 5).unwrap();
        p.group_order = GroupOrder::Finite(6);
        assert_eq!(tofib_first_rank_with_group(&p), FirstRank { degree: 9, rank: RankValue::Exact(432.into()) });
        p.group_order = GroupOrder::Infinite;
        assert_eq!(tofib_first_rank_with_group(&p).rank, RankValue::Expr("2*|G|^3".into()));
        assert_eq!(
            serde_json::to_string(&tofib_first_rank_with_group(&p)).unwrap(),
            r#"{"degree":9,"rank_expr":"2*|G|^3"}"#
        );
    }

    #[test]
    fn j_connectivity() {
        assert_eq!(connectivity_of_j(1, 0), 2);
        assert_eq!(connectivity_of_j(3, 2), 12);
    }

    #[test]
    fn sphere_characters_twist_for_odd_d() {
        let t = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(sphere_first_character(2, 4, &t).unwrap(), BigInt::from(-1));
        assert_eq!(sphere_first_character(2, 5, &t).unwrap(), BigInt::from(1));
    }
}
