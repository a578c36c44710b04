//! Brute-force evaluation of `R(w; r, s)` through XY-words.
//!
//! An XY-word `W` of type `(q1, q2)` is a cyclic word with `q1` X's and `q2`
//! Y's. For rotation numbers `p1/q1` and `p2/q2` it induces an action of the
//! positive semigroup on ℤ: `a(i)` is the least `j ≥ i` such that
//! `W_i … W_j` holds exactly `p1 + 1` X's, and `b` is the analogue counting
//! `p2 + 1` Y's. `R(w; p1/q1, p2/q2)` is the maximum of the rotation number of
//! `w` over all such `W`.
//!
//! Indices are 1-based (`W_1` is the first symbol) and the bi-infinite
//! extension `W_{i + q1 + q2} = W_i` is evaluated by modular arithmetic.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::{Letter, PositiveWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    X,
    Y,
}

/// A cyclic word over `{X, Y}` with precomputed lookup tables for the
/// induced action.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XYWord {
    symbols: Vec<Symbol>,
    // 0-based positions of X and Y inside one period.
    x_pos: Vec<usize>,
    y_pos: Vec<usize>,
    // For each residue r, index into x_pos / y_pos of the first occurrence at
    // or after r (equal to the list length when it wraps to the next period).
    x_next: Vec<usize>,
    y_next: Vec<usize>,
}

impl XYWord {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("XY-word must be non-empty".into()));
        }
        let positions = |s: Symbol| -> Vec<usize> {
            symbols
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == s)
                .map(|(i, _)| i)
                .collect()
        };
        let next_table =
            |pos: &[usize]| -> Vec<usize> { (0..symbols.len()).map(|r| pos.partition_point(|&p| p < r)).collect() };
        let x_pos = positions(Symbol::X);
        let y_pos = positions(Symbol::Y);
        let x_next = next_table(&x_pos);
        let y_next = next_table(&y_pos);
        Ok(XYWord {
            symbols,
            x_pos,
            y_pos,
            x_next,
            y_next,
        })
    }

    /// Builds the word with X at the given 0-based positions.
    fn from_x_positions(len: usize, xs: &[usize]) -> XYWord {
        let mut symbols = vec![Symbol::Y; len];
        for &i in xs {
            symbols[i] = Symbol::X;
        }
        XYWord::new(symbols).expect("non-empty")
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Period `q1 + q2`.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// `(q1, q2)`.
    pub fn word_type(&self) -> (usize, usize) {
        (self.x_pos.len(), self.y_pos.len())
    }

    /// `W_i` for any integer `i` (1-based, periodic).
    pub fn at(&self, i: i64) -> Symbol {
        self.symbols[(i - 1).rem_euclid(self.len() as i64) as usize]
    }

    /// The cyclic shift starting at 0-based position `shift`.
    pub fn rotated(&self, shift: usize) -> XYWord {
        let n = self.len();
        XYWord::new((0..n).map(|i| self.symbols[(i + shift) % n]).collect()).expect("non-empty")
    }

    /// Image of `i` under a single generator.
    pub fn act_letter(&self, letter: Letter, p1: u64, p2: u64, i: i64) -> Result<i64> {
        let (pos, next, p, name) = match letter {
            Letter::A => (&self.x_pos, &self.x_next, p1, 'X'),
            Letter::B => (&self.y_pos, &self.y_next, p2, 'Y'),
        };
        if pos.is_empty() {
            return Err(Error::NoSuchLetter(name));
        }
        let len = self.len() as i64;
        let r = (i - 1).rem_euclid(len);
        let period_start = i - 1 - r;
        let m = pos.len() as u64;
        let k = next[r as usize] as u64 + p;
        let periods = (k / m) as i64;
        let j0 = period_start + periods * len + pos[(k % m) as usize] as i64;
        Ok(j0 + 1)
    }

    /// Image of `i` under `w`, letters applied right to left.
    pub fn act_word(&self, w: &PositiveWord, p1: u64, p2: u64, i: i64) -> Result<i64> {
        w.letters()
            .iter()
            .rev()
            .try_fold(i, |acc, &l| self.act_letter(l, p1, p2, acc))
    }

    /// Exact rotation number `lim wⁿ(1) / (n·(q1+q2))`.
    ///
    /// The action commutes with translation by the period, so the orbit of
    /// `1` is eventually periodic modulo the period; the first repeated residue
    /// closes the cycle.
    pub fn rot(&self, w: &PositiveWord, p1: u64, p2: u64) -> Result<Rational> {
        let len = self.len();
        let mut seen: Vec<Option<(u64, i64)>> = vec![None; len];
        let mut i = 1i64;
        let mut step = 0u64;
        loop {
            let r = (i - 1).rem_euclid(len as i64) as usize;
            if let Some((step0, i0)) = seen[r] {
                return Rational::new(i - i0, (step - step0) as i64 * len as i64);
            }
            seen[r] = Some((step, i));
            i = self.act_word(w, p1, p2, i)?;
            step += 1;
        }
    }
}

impl fmt::Display for XYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|s| {
            f.write_str(match s {
                Symbol::X => "X",
                Symbol::Y => "Y",
            })
        })
    }
}

impl fmt::Debug for XYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XYWord({self})")
    }
}

impl FromStr for XYWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                'X' => Ok(Symbol::X),
                'Y' => Ok(Symbol::Y),
                other => Err(Error::IllegalCharacter(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        XYWord::new(symbols)
    }
}

/// A request for `R(w; r, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationQuery {
    pub word: PositiveWord,
    pub r: Rational,
    pub s: Rational,
}

impl RotationQuery {
    pub fn new(word: PositiveWord, r: Rational, s: Rational) -> Self {
        RotationQuery { word, r, s }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Upper bound on `C(q1 + q2, q1)`.
    pub cap: u128,
    /// Enumerate every linear arrangement instead of necklace representatives.
    pub full_enumeration: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: 1_000_000,
            full_enumeration: false,
        }
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `visit` with the X-positions of one representative of every
/// cyclic class of binary words with `q1` X's and `q2` Y's.
///
/// Fixed-content variant of the FKM necklace recursion.
pub fn for_each_necklace(q1: usize, q2: usize, mut visit: impl FnMut(&[usize])) {
    let n = q1 + q2;
    if n == 0 {
        return;
    }
    // Symbol 0 is X, 1 is Y; a[0] is a sentinel.
    let mut a = vec![0u8; n + 1];
    let mut remaining = [q1, q2];
    let mut xs = Vec::with_capacity(q1);

    fn rec(
        t: usize,
        p: usize,
        n: usize,
        a: &mut [u8],
        remaining: &mut [usize; 2],
        xs: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if t > n {
            if n.is_multiple_of(p) {
                xs.clear();
                xs.extend((1..=n).filter(|&i| a[i] == 0).map(|i| i - 1));
                visit(xs);
            }
            return;
        }
        for j in a[t - p]..=1 {
            if remaining[j as usize] == 0 {
                continue;
            }
            a[t] = j;
            remaining[j as usize] -= 1;
            let next_p = if j == a[t - p] { p } else { t };
            rec(t + 1, next_p, n, a, remaining, xs, visit);
            remaining[j as usize] += 1;
        }
    }

    rec(1, 1, n, &mut a, &mut remaining, &mut xs, &mut visit);
}

/// Calls `visit` with every `q1`-subset of `0..q1+q2`, in lexicographic order.
pub fn for_each_arrangement(q1: usize, q2: usize, mut visit: impl FnMut(&[usize])) {
    let n = q1 + q2;
    let mut idx: Vec<usize> = (0..q1).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..q1).rev().find(|&i| idx[i] < n - q1 + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..q1 {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Splits `x` into `(floor(x), p, q)` with `x - floor(x) = p/q` reduced.
fn split_unit(x: &Rational) -> Result<(Rational, u64, u64)> {
    let shift = Rational::integer(x.floor());
    let frac = x - &shift;
    let p = frac.numer().to_u64().ok_or_else(|| Error::OutOfRange(x.to_string()))?;
    let q = frac.denom_u64()?;
    Ok((shift, p, q))
}

/// `R(w; r, s)`, the maximal rotation number of `w` given the rotation
/// numbers of the generators.
///
/// Arguments outside `[0, 1)` are reduced by periodicity and the integer
/// offset `m·h_a + n·h_b` is added back.
pub fn max_rot(query: &RotationQuery, config: &OracleConfig) -> Result<Rational> {
    let (r_shift, p1, q1) = split_unit(&query.r)?;
    let (s_shift, p2, q2) = split_unit(&query.s)?;
    let count = binomial(q1 + q2, q1);
    if count > config.cap {
        return Err(Error::EnumerationCapExceeded { count, cap: config.cap });
    }
    let (q1, q2) = (q1 as usize, q2 as usize);
    let len = q1 + q2;
    let w = &query.word;

    let mut best: Option<Rational> = None;
    let mut failure = None;
    let mut consider = |xs: &[usize]| {
        if failure.is_some() {
            return;
        }
        match XYWord::from_x_positions(len, xs).rot(w, p1, p2) {
            Ok(v) => {
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
            Err(e) => failure = Some(e),
        }
    };
    if config.full_enumeration {
        for_each_arrangement(q1, q2, &mut consider);
    } else {
        for_each_necklace(q1, q2, &mut consider);
    }
    if let Some(e) = failure {
        return Err(e);
    }

    let (h_a, h_b) = w.letter_counts();
    let best = best.expect("at least one XY-word of every type");
    Ok(best + r_shift * Rational::integer(h_a) + s_shift * Rational::integer(h_b))
}

/// The interval `X(w; r, s) = [-R(w; -r, -s), R(w; r, s)]`.
pub fn rot_interval(
    w: &PositiveWord,
    r: &Rational,
    s: &Rational,
    config: &OracleConfig,
) -> Result<(Rational, Rational)> {
    let hi = max_rot(&RotationQuery::new(w.clone(), r.clone(), s.clone()), config)?;
    let lo = -max_rot(&RotationQuery::new(w.clone(), -r, -s), config)?;
    Ok((lo, hi))
}
