use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A bracketed word in letters `x^i`, read as a planar binary Lie tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketedWord {
    Letter(u32),
    Bracket(Box<BracketedWord>, Box<BracketedWord>),
}

impl BracketedWord {
    pub fn letter(i: u32) -> Self {
        BracketedWord::Letter(i)
    }

    pub fn bracket(left: BracketedWord, right: BracketedWord) -> Self {
        BracketedWord::Bracket(Box::new(left), Box::new(right))
    }

    /// `[s0,[s1,…,[s_{k-2},s_{k-1}]]]`.
    pub fn right_normed(seq: &[u32]) -> Self {
        assert!(!seq.is_empty(), "right-normed word needs at least one letter");
        let mut word = BracketedWord::Letter(seq[seq.len() - 1]);
        for &i in seq[..seq.len() - 1].iter().rev() {
            word = BracketedWord::bracket(BracketedWord::Letter(i), word);
        }
        word
    }

    /// Letter sequence if this word is right-normed, `None` otherwise.
    pub fn as_right_normed(&self) -> Option<Vec<u32>> {
        let mut seq = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                BracketedWord::Letter(i) => {
                    seq.push(*i);
                    return Some(seq);
                }
                BracketedWord::Bracket(l, r) => match **l {
                    BracketedWord::Letter(i) => {
                        seq.push(i);
                        cur = r;
                    }
                    _ => return None,
                },
            }
        }
    }

    /// Letters in left-to-right reading order.
    pub fn letters(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<u32>) {
        match self {
            BracketedWord::Letter(i) => out.push(*i),
            BracketedWord::Bracket(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            BracketedWord::Letter(_) => 1,
            BracketedWord::Bracket(l, r) => l.len() + r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_letter(&self) -> u32 {
        match self {
            BracketedWord::Letter(i) => *i,
            BracketedWord::Bracket(l, r) => l.max_letter().max(r.max_letter()),
        }
    }

    /// Sorted letters, provided each occurs exactly once.
    pub fn multilinear_support(&self) -> Option<Vec<u32>> {
        let mut letters = self.letters();
        letters.sort_unstable();
        if letters.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some(letters)
        }
    }

    pub fn is_multilinear_on(&self, labels: &[u32]) -> bool {
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        self.multilinear_support().is_some_and(|s| s == sorted)
    }

    /// A uniformly shuffled multilinear word on `labels` with a random bracketing.
    pub fn random<R: Rng + ?Sized>(labels: &[u32], rng: &mut R) -> BracketedWord {
        let mut letters = labels.to_vec();
        letters.shuffle(rng);
        random_bracketing(&letters, rng)
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> BracketedWord {
        match self {
            BracketedWord::Letter(i) => BracketedWord::Letter(f(*i)),
            BracketedWord::Bracket(l, r) => BracketedWord::bracket(l.relabel(f), r.relabel(f)),
        }
    }

}

fn random_bracketing<R: Rng + ?Sized>(letters: &[u32], rng: &mut R) -> BracketedWord {
    if let [x] = letters {
        return BracketedWord::Letter(*x);
    }
    let cut = rng.gen_range(1..letters.len());
    BracketedWord::bracket(random_bracketing(&letters[..cut], rng), random_bracketing(&letters[cut..], rng))
}

impl fmt::Display for BracketedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketedWord::Letter(i) => write!(f, "x{i}"),
            BracketedWord::Bracket(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    pub(crate) fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn word(&mut self) -> Result<BracketedWord> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let pos = self.pos;
                let d = self.digits()?;
                let i: u32 = d.parse().map_err(|_| Error::parse(pos, "letter index too large"))?;
                if i == 0 {
                    return Err(Error::parse(pos, "letters are indexed from 1"));
                }
                Ok(BracketedWord::Letter(i))
            }
            Some(b'[') => {
                self.pos += 1;
                let l = self.word()?;
                self.expect(b',')?;
                let r = self.word()?;
                self.expect(b']')?;
                Ok(BracketedWord::bracket(l, r))
            }
            _ => Err(Error::parse(self.pos, "expected 'x' or '['")),
        }
    }
}

impl FromStr for BracketedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor::new(s);
        let w = c.word()?;
        if !c.at_end() {
            return Err(Error::parse(c.pos, "trailing input"));
        }
        Ok(w)
    }
}
