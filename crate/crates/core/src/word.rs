//! Positive words in the free semigroup on `a`, `b`, and their cyclic block
//! decomposition.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A non-empty word over `{a, b}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveWord {
    letters: Vec<Letter>,
}

impl PositiveWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(PositiveWord { letters })
    }

    /// Parses a lowercase string over `{a, b}`.
    pub fn parse(text: &str) -> Result<Self> {
        let letters = text
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::IllegalCharacter(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        PositiveWord::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Swaps the roles of the two generators.
    pub fn mirror(&self) -> PositiveWord {
        PositiveWord {
            letters: self.letters.iter().map(|l| l.swapped()).collect(),
        }
    }

    /// `(h_a, h_b)`: the number of `a`s and `b`s.
    pub fn letter_counts(&self) -> (u64, u64) {
        let h_a = self.letters.iter().filter(|&&l| l == Letter::A).count() as u64;
        (h_a, self.letters.len() as u64 - h_a)
    }

    /// The word read from position `shift` onwards, wrapping around.
    pub fn rotated(&self, shift: usize) -> PositiveWord {
        let shift = shift % self.letters.len();
        let mut letters = self.letters[shift..].to_vec();
        letters.extend_from_slice(&self.letters[..shift]);
        PositiveWord { letters }
    }

    /// Block decomposition `b^{β_n} a^{α_n} ⋯ b^{β_1} a^{α_1}` of a cyclic
    /// rotation of this word.
    ///
    /// The rotation used starts at the earliest index `i` with `w[i] = b` and
    /// `w[i-1] = a` (cyclically), so it begins with `b` and ends with `a`.
    pub fn block_form(&self) -> Result<BlockForm> {
        let n = self.letters.len();
        let start = (0..n)
            .find(|&i| self.letters[i] == Letter::B && self.letters[(i + n - 1) % n] == Letter::A)
            .ok_or(Error::PowerOfSingleLetter)?;
        let rotated = self.rotated(start);
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        // Right to left: a^{α_1} first, then b^{β_1}, a^{α_2}, ...
        let mut iter = rotated.letters.iter().rev().peekable();
        while let Some(&first) = iter.next() {
            let mut run = 1u64;
            while iter.peek() == Some(&&first) {
                iter.next();
                run += 1;
            }
            match first {
                Letter::A => alphas.push(run),
                Letter::B => betas.push(run),
            }
        }
        BlockForm::new(alphas, betas)
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for PositiveWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PositiveWord::parse(s)
    }
}

/// The word `b^{β_n} a^{α_n} ⋯ b^{β_1} a^{α_1}`, stored as the pairs
/// `(α_i, β_i)` for `i = 1..n`.
///
/// `β_i` is the `b`-run applied right after `a^{α_i}` when the word acts
/// right to left, so it pairs with the partial sum `A_i = α_1 + ⋯ + α_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockForm {
    alphas: Vec<u64>,
    betas: Vec<u64>,
}

impl BlockForm {
    pub fn new(alphas: Vec<u64>, betas: Vec<u64>) -> Result<Self> {
        if alphas.is_empty() || alphas.len() != betas.len() {
            return Err(Error::InvalidArgument(format!(
                "block form needs n >= 1 a-runs and b-runs, got {} and {}",
                alphas.len(),
                betas.len()
            )));
        }
        if alphas.iter().chain(&betas).any(|&x| x == 0) {
            return Err(Error::InvalidArgument("block exponents must be positive".into()));
        }
        Ok(BlockForm { alphas, betas })
    }

    /// Number of blocks `n`.
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[u64] {
        &self.betas
    }

    /// `α_i` for 1-based `i`, extended periodically with period `n`.
    pub fn alpha(&self, i: usize) -> u64 {
        self.alphas[(i - 1) % self.n()]
    }

    /// `β_i` for 1-based `i`, extended periodically with period `n`.
    pub fn beta(&self, i: usize) -> u64 {
        self.betas[(i - 1) % self.n()]
    }

    pub fn h_a(&self) -> u64 {
        self.alphas.iter().sum()
    }

    pub fn h_b(&self) -> u64 {
        self.betas.iter().sum()
    }

    pub fn max_beta(&self) -> u64 {
        *self.betas.iter().max().expect("n >= 1")
    }

    /// `A_1, …, A_{n·copies}` with `A_i = α_1 + ⋯ + α_i`.
    pub fn partial_sums(&self, copies: usize) -> Vec<u64> {
        (1..=self.n() * copies)
            .scan(0u64, |acc, i| {
                *acc += self.alpha(i);
                Some(*acc)
            })
            .collect()
    }

    /// The block form shifted so that block `shift + 1` becomes block 1.
    pub fn rotated(&self, shift: usize) -> BlockForm {
        let n = self.n();
        let pick = |v: &[u64]| (0..n).map(|i| v[(i + shift) % n]).collect();
        BlockForm {
            alphas: pick(&self.alphas),
            betas: pick(&self.betas),
        }
    }

    /// All `n` block rotations, starting with `self`.
    pub fn rotations(&self) -> Vec<BlockForm> {
        (0..self.n()).map(|s| self.rotated(s)).collect()
    }

    /// The string `b^{β_n} a^{α_n} ⋯ b^{β_1} a^{α_1}`.
    pub fn to_word(&self) -> PositiveWord {
        let mut letters = Vec::new();
        for i in (0..self.n()).rev() {
            letters.extend(std::iter::repeat_n(Letter::B, self.betas[i] as usize));
            letters.extend(std::iter::repeat_n(Letter::A, self.alphas[i] as usize));
        }
        PositiveWord { letters }
    }
}

/// True when `u` is a cyclic rotation of `v`.
pub fn is_cyclic_rotation(u: &PositiveWord, v: &PositiveWord) -> bool {
    u.len() == v.len() && (0..v.len()).any(|s| v.rotated(s) == *u)
}
