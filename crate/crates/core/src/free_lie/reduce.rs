//! Normalization into the right-normed basis.
//!
//! A right-normed word `[s0,[s1,…,[s_{k-2},s_{k-1}]]]` whose last letter is
//! the largest label is identified with its letter sequence. Brackets are
//! oriented so the largest letter sits on the right, then left factors are
//! pushed through with the graded Leibniz rule
//! `[[y,u],r] = [y,[u,r]] - (-1)^{|y||u|} [u,[y,r]]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::element::LieElement;
use super::word::BracketedWord;

type Combo = BTreeMap<Vec<u32>, BigInt>;

fn add_into(acc: &mut Combo, key: Vec<u32>, c: BigInt) {
    if !c.is_zero() {
        *acc.entry(key).or_default() += c;
    }
}

fn clean(mut c: Combo) -> Combo {
    c.retain(|_, v| !v.is_zero());
    c
}

#[derive(Clone, Copy)]
pub(crate) struct Signs {
    odd: bool,
}

impl Signs {
    pub(crate) fn new(shift: u32) -> Self {
        Signs { odd: shift % 2 == 1 }
    }

    /// True when `(-1)^{|a||b|} = -1` for words of lengths `a`, `b`.
    pub(crate) fn koszul_odd(self, a: usize, b: usize) -> bool {
        self.odd && a % 2 == 1 && b % 2 == 1
    }

    /// Coefficient `ε` with `[a,b] = ε [b,a]`.
    pub(crate) fn swap_sign(self, a: usize, b: usize) -> BigInt {
        if self.koszul_odd(a, b) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }
}

struct Reducer {
    signs: Signs,
}

impl Reducer {
    fn word(&self, w: &BracketedWord) -> Combo {
        match w {
            BracketedWord::Letter(i) => {
                let mut c = Combo::new();
                c.insert(vec![*i], BigInt::one());
                c
            }
            BracketedWord::Bracket(a, b) => {
                let ra = self.word(a);
                let rb = self.word(b);
                if b.max_letter() > a.max_letter() {
                    self.bracket(&ra, &rb)
                } else {
                    let eps = self.signs.swap_sign(a.len(), b.len());
                    let mut out = self.bracket(&rb, &ra);
                    for v in out.values_mut() {
                        *v *= &eps;
                    }
                    out
                }
            }
        }
    }

    /// `[u, r]` where every word of `r` ends in the overall largest letter.
    fn bracket(&self, u: &Combo, r: &Combo) -> Combo {
        let mut out = Combo::new();
        for (uw, uc) in u {
            for (k, v) in self.ad(uw, r.clone()) {
                add_into(&mut out, k, v * uc);
            }
        }
        clean(out)
    }

    fn ad(&self, u: &[u32], r: Combo) -> Combo {
        if u.len() == 1 {
            return r
                .into_iter()
                .map(|(mut k, v)| {
                    k.insert(0, u[0]);
                    (k, v)
                })
                .collect();
        }
        let (y, rest) = (&u[..1], &u[1..]);
        let first = self.ad(y, self.ad(rest, r.clone()));
        let second = self.ad(rest, self.ad(y, r));
        let mut out = first;
        let minus = !self.signs.koszul_odd(1, rest.len());
        for (k, v) in second {
            add_into(&mut out, k, if minus { -v } else { v });
        }
        clean(out)
    }
}

/// Rewrites `e` into the right-normed basis of its label set.
pub fn reduce(e: &LieElement) -> LieElement {
    let reducer = Reducer { signs: Signs::new(e.shift()) };
    let mut acc = Combo::new();
    for (w, c) in e.terms() {
        for (k, v) in reducer.word(w) {
            add_into(&mut acc, k, v * c);
        }
    }
    let mut out = LieElement::zero(e.labels(), e.shift());
    for (k, v) in clean(acc) {
        out.add_term(BracketedWord::right_normed(&k), v);
    }
    out
}

/// Same normal form, reached by applying single rewrite steps at randomly
/// chosen positions until no redex is left.
pub fn reduce_by_rewriting<R: Rng + ?Sized>(e: &LieElement, rng: &mut R) -> LieElement {
    let signs = Signs::new(e.shift());
    let mut current = e.clone();
    loop {
        let pending: Vec<&BracketedWord> =
            current.terms().keys().filter(|w| !redexes(w, &mut Vec::new()).is_empty()).collect();
        if pending.is_empty() {
            return current;
        }
        let word = pending[rng.gen_range(0..pending.len())].clone();
        let spots = redexes(&word, &mut Vec::new());
        let path = &spots[rng.gen_range(0..spots.len())];
        let coeff = current.coefficient(&word);
        current.add_term(word.clone(), -coeff.clone());
        for (w, s) in rewrite_at(&word, path, signs) {
            current.add_term(w, &coeff * s);
        }
    }
}

fn redexes(w: &BracketedWord, path: &mut Vec<bool>) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    if let BracketedWord::Bracket(a, b) = w {
        let oriented = b.max_letter() > a.max_letter();
        if !oriented || matches!(**a, BracketedWord::Bracket(..)) {
            out.push(path.clone());
        }
        path.push(false);
        out.extend(redexes(a, path));
        path.pop();
        path.push(true);
        out.extend(redexes(b, path));
        path.pop();
    }
    out
}

fn rewrite_at(w: &BracketedWord, path: &[bool], signs: Signs) -> Vec<(BracketedWord, BigInt)> {
    let BracketedWord::Bracket(a, b) = w else {
        unreachable!("redex paths end at brackets")
    };
    if let Some((&right, rest)) = path.split_first() {
        let (fixed, moving) = if right { (a, b) } else { (b, a) };
        return rewrite_at(moving, rest, signs)
            .into_iter()
            .map(|(m, s)| {
                let w = if right {
                    BracketedWord::bracket((**fixed).clone(), m)
                } else {
                    BracketedWord::bracket(m, (**fixed).clone())
                };
                (w, s)
            })
            .collect();
    }
    if a.max_letter() > b.max_letter() {
        return vec![(BracketedWord::bracket((**b).clone(), (**a).clone()), signs.swap_sign(a.len(), b.len()))];
    }
    let BracketedWord::Bracket(a1, a2) = &**a else {
        unreachable!("oriented redex has a bracket on the left")
    };
    let s = if signs.koszul_odd(a1.len(), a2.len()) { BigInt::one() } else { -BigInt::one() };
    vec![
        (
            BracketedWord::bracket((**a1).clone(), BracketedWord::bracket((**a2).clone(), (**b).clone())),
            BigInt::one(),
        ),
        (BracketedWord::bracket((**a2).clone(), BracketedWord::bracket((**a1).clone(), (**b).clone())), s),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn el(s: &str, d: u32) -> LieElement {
        LieElement::parse(s, d).unwrap()
    }

    #[test]
    fn antisymmetry() {
        assert_eq!(reduce(&el("[x2,x1]", 0)), el("-1*[x1,x2]", 0));
        assert_eq!(reduce(&el("[x2,x1]", 1)), el("[x1,x2]", 1));
        assert_eq!(reduce(&el("[x2,x1]", 2)), el("-1*[x1,x2]", 2));
    }

    #[test]
    fn jacobi_left_nested() {
        let r = reduce(&el("[[x1,x2],x3]", 0));
        assert_eq!(r, el("[x1,[x2,x3]] - [x2,[x1,x3]]", 0));
        let jacobi = el("[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]", 0);
        assert!(reduce(&jacobi).is_zero());
    }

    #[test]
    fn graded_jacobi_odd() {
        // [[v,w],z] = [v,[w,z]] - (-1)^{|v||w|} [w,[v,z]] with |v|=|w|=1
        let r = reduce(&el("[[x1,x2],x3]", 1));
        assert_eq!(r, el("[x1,[x2,x3]] + [x2,[x1,x3]]", 1));
    }

    #[test]
    fn rewriting_agrees_on_small_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in ["[[x3,x1],[x4,x2]]", "[[[x2,x4],x1],x3]", "[x4,[x3,[x2,x1]]]"] {
            for d in 0..3 {
                let e = el(s, d);
                assert_eq!(reduce_by_rewriting(&e, &mut rng), reduce(&e), "{s} D={d}");
            }
        }
    }

    #[test]
    fn general_labels() {
        let r = reduce(&el("[x9,x5]", 0));
        assert_eq!(r, el("-1*[x5,x9]", 0));
        assert!(r.is_right_normed());
    }
}
