//! Crossing words: sequences of oriented gluing crossings standing in for
//! elements of the fundamental group.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One oriented crossing of a gluing. The forward direction crosses from
/// `side_b`'s polygon into `side_a`'s polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gluing: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gluing: usize, inverse: bool) -> Self {
        Self { gluing, inverse }
    }

    pub fn inv(self) -> Self {
        Self::new(self.gluing, !self.inverse)
    }

    pub fn label(self, labels: &[String]) -> String {
        let base = labels
            .get(self.gluing)
            .cloned()
            .unwrap_or_else(|| format!("g{}", self.gluing));
        if self.inverse {
            format!("{base}'")
        } else {
            base
        }
    }
}

/// Default gluing labels: `a`..`z`, then `g26`, `g27`, ...
pub fn default_label(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("g{index}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomotopyWord {
    pub letters: Vec<Letter>,
    pub cyclic: bool,
}

impl HomotopyWord {
    pub fn new(letters: Vec<Letter>, cyclic: bool) -> Self {
        let mut w = Self { letters, cyclic };
        w.reduce();
        w
    }

    pub fn linear(letters: Vec<Letter>) -> Self {
        Self::new(letters, false)
    }

    pub fn cyclic(letters: Vec<Letter>) -> Self {
        Self::new(letters, true)
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Free reduction, plus cyclic reduction for cyclic words.
    pub fn reduce(&mut self) {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        if self.cyclic {
            let mut lo = 0;
            let mut hi = out.len();
            while hi - lo >= 2 && out[lo] == out[hi - 1].inv() {
                lo += 1;
                hi -= 1;
            }
            out = out[lo..hi].to_vec();
        }
        self.letters = out;
    }

    pub fn is_reduced(&self) -> bool {
        let mut copy = self.clone();
        copy.reduce();
        copy.letters == self.letters
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.letters.iter().rev().map(|l| l.inv()).collect(), self.cyclic)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new(letters, self.cyclic && other.cyclic)
    }

    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn power(&self, k: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        Self::new(letters, self.cyclic)
    }

    /// Cyclic rotation by `k` letters.
    pub fn rotated(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Self::new(letters, self.cyclic)
    }

    pub fn as_cyclic(&self) -> Self {
        Self::new(self.letters.clone(), true)
    }

    pub fn as_linear(&self) -> Self {
        Self::new(self.letters.clone(), false)
    }

    /// Parse `a b a' b'`, `a^3 b^4`, or concatenated single-character labels (`aab`).
    pub fn parse(text: &str, labels: &[String], cyclic: bool) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if parse_token(token, labels, &mut letters).is_err() {
                // fall back to single-character labels glued together
                let mut chars = token.chars().peekable();
                let mut pieces = Vec::new();
                while let Some(c) = chars.next() {
                    let mut piece = c.to_string();
                    while let Some(&n) = chars.peek() {
                        if n == '\'' || n == '^' || n.is_ascii_digit() {
                            piece.push(n);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    pieces.push(piece);
                }
                for p in pieces {
                    parse_token(&p, labels, &mut letters)?;
                }
            }
        }
        Ok(Self::new(letters, cyclic))
    }

    pub fn format(&self, labels: &[String]) -> String {
        self.letters
            .iter()
            .map(|l| l.label(labels))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn parse_token(token: &str, labels: &[String], out: &mut Vec<Letter>) -> Result<()> {
    let (body, power) = match token.split_once('^') {
        Some((b, p)) => {
            let k: usize = p
                .parse()
                .map_err(|_| Error::Word(format!("bad power in `{token}`")))?;
            (b, k)
        }
        None => (token, 1),
    };
    let (name, inverse) = match body.strip_suffix('\'') {
        Some(n) => (n, true),
        None => (body, false),
    };
    let gluing = labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| Error::Word(format!("unknown gluing label `{name}`")))?;
    for _ in 0..power {
        out.push(Letter::new(gluing, inverse));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels() -> Vec<String> {
        (0..4).map(default_label).collect()
    }

    #[test]
    fn parses_primes_and_powers() {
        let w = HomotopyWord::parse("a^3 b' b' a", &labels(), false).unwrap();
        assert_eq!(w.format(&labels()), "a a a b' b' a");
        let w = HomotopyWord::parse("aab", &labels(), false).unwrap();
        assert_eq!(w.format(&labels()), "a a b");
        assert!(HomotopyWord::parse("z", &labels(), false).is_err());
    }

    #[test]
    fn free_and_cyclic_reduction() {
        let w = HomotopyWord::parse("a b b' c", &labels(), false).unwrap();
        assert_eq!(w.format(&labels()), "a c");
        let w = HomotopyWord::parse("a' b c a", &labels(), true).unwrap();
        assert_eq!(w.format(&labels()), "b c");
    }

    fn letter() -> impl Strategy<Value = Letter> {
        (0usize..3, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i))
    }

    proptest! {
        #[test]
        fn reduced_words_have_no_cancelling_pairs(ls in proptest::collection::vec(letter(), 0..30), cyc in any::<bool>()) {
            let w = HomotopyWord::new(ls, cyc);
            for pair in w.letters.windows(2) {
                prop_assert!(pair[0] != pair[1].inv());
            }
            if cyc && w.len() >= 2 {
                prop_assert!(w.letters[0] != w.letters[w.len() - 1].inv());
            }
            let inv = w.inverse();
            prop_assert!(w.as_linear().concat(&inv.as_linear()).is_empty());
        }
    }
}
