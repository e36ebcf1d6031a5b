//! Free-group words over a 1-based generator alphabet.
//!
//! A [`Word`] is always freely reduced. The textual form is a
//! whitespace-separated list of nonzero signed integers, so `"2 -1"` is the
//! word `x2 x1^-1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index 0 is not allowed")]
    ZeroGenerator,
    #[error("invalid letter {0:?}: expected a nonzero integer")]
    BadToken(String),
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    /// Positive letter `x_generator`.
    ///
    /// Panics if `generator` is zero.
    pub fn pos(generator: u32) -> Self {
        assert!(generator >= 1, "generator indices start at 1");
        Letter {
            generator,
            inverse: false,
        }
    }

    /// Inverse letter `x_generator^-1`.
    pub fn neg(generator: u32) -> Self {
        assert!(generator >= 1, "generator indices start at 1");
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn from_signed(value: i64) -> Result<Self, WordError> {
        if value == 0 {
            return Err(WordError::ZeroGenerator);
        }
        let generator = u32::try_from(value.unsigned_abs())
            .map_err(|_| WordError::BadToken(value.to_string()))?;
        Ok(Letter {
            generator,
            inverse: value < 0,
        })
    }

    pub fn generator(self) -> u32 {
        self.generator
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn to_signed(self) -> i64 {
        self.sign() * i64::from(self.generator)
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column index used by dense tables: `2(g-1)` for `x_g`, `2(g-1)+1` for its inverse.
    pub fn column(self) -> usize {
        2 * (self.generator as usize - 1) + usize::from(self.inverse)
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Freely reduces `raw` with a single stack pass.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            match letters.last() {
                Some(&top) if top.cancels(l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        Word { letters }
    }

    /// Builds a word from signed generator indices, e.g. `&[2, -1]`.
    pub fn from_signed(values: &[i64]) -> Result<Self, WordError> {
        let letters = values
            .iter()
            .map(|&v| Letter::from_signed(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::reduce(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, or 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `g a g^-1`, reduced.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.invert())
    }

    /// `self^k` for any integer `k`; negative powers invert first.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word::reduce(letters)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Strips matching inverse letters from both ends.
    pub fn cyclic_core(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: self.letters[lo..hi].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) => self.letters.len() == 1 || !a.cancels(*b),
            _ => true,
        }
    }

    /// All rotations of the cyclically reduced core.
    pub fn cyclic_conjugates(&self) -> BTreeSet<Word> {
        let core = self.cyclic_core();
        let n = core.len();
        if n == 0 {
            return BTreeSet::from([Word::identity()]);
        }
        (0..n)
            .map(|r| {
                let mut letters = core.letters[r..].to_vec();
                letters.extend_from_slice(&core.letters[..r]);
                Word { letters }
            })
            .collect()
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word { letters: vec![l] }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| WordError::BadToken(tok.to_string()))?;
            letters.push(Letter::from_signed(v)?);
        }
        Ok(Word::reduce(letters))
    }
}
