//! Fringe lengths of `R(w; p/q, ·)`.
//!
//! The fringe at `p/q` is the longest interval `[s, 1)` on which
//! `R(w; p/q, ·)` equals `h_a·p/q + h_b`; its length is `1/Λ`, where `Λ` sums,
//! over the residue classes mod `q` hit by the partial sums `A_1, …, A_{n·q'}`,
//! the largest `β` in each class. Since `A_{k+n} = A_k + h_a`, those classes
//! are `q'` translates of the classes of `A_1, …, A_n` mod `g = gcd(q, h_a)`,
//! so `Λ = q'·S` and the fringe length is `1/(σ(g)·q)` with `σ(g) = S/g`
//! depending on `w` and `g` only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{gcd, Rational};
use crate::word::{BlockForm, PositiveWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Side {
    #[default]
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::InvalidArgument(format!(
                "side must be left or right, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// The arithmetic of one left-fringe query at `p/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FringeContext {
    pub h_a: u64,
    pub h_b: u64,
    pub p: u64,
    pub q: u64,
    /// `gcd(q, h_a)`.
    pub g: u64,
    /// `h_a / g`.
    pub h_prime: u64,
    /// `q / g`.
    pub q_prime: u64,
    /// The fringe value `(h_a·p + h_b·q)/q` in lowest terms is `c/d`.
    pub c: u64,
    pub d: u64,
}

impl FringeContext {
    pub fn new(w: &PositiveWord, pq: &Rational) -> Result<Self> {
        let (p, q) = unit_fraction_parts(pq)?;
        let (h_a, h_b) = w.letter_counts();
        let g = gcd(q, h_a);
        let (h_prime, q_prime) = (h_a / g, q / g);
        Ok(FringeContext {
            h_a,
            h_b,
            p,
            q,
            g,
            h_prime,
            q_prime,
            c: h_prime * p + h_b * q_prime,
            d: q_prime,
        })
    }

    pub fn target(&self) -> Rational {
        Rational::frac(self.c, self.d)
    }
}

fn unit_fraction_parts(pq: &Rational) -> Result<(u64, u64)> {
    if pq.is_negative() || *pq >= Rational::one() {
        return Err(Error::OutOfRange(format!("{pq} is not in [0, 1)")));
    }
    let q = pq.denom_u64()?;
    // 0 ≤ p < q, so p fits whenever q does.
    let p = pq.numer().try_into().expect("numerator below denominator");
    Ok((p, q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FringeResult {
    /// `Λ`, computed from the residue classes mod `q` directly.
    pub lambda_sum: u64,
    /// `S`, computed from the classes mod `g`.
    pub s: u64,
    pub sigma: Rational,
    pub fr: Rational,
    pub side: Side,
}

/// `Λ`: the sum over residue classes of `A_1, …, A_{n·q'}` mod `q` of the
/// largest `β` in each class.
pub fn lambda_sum(bf: &BlockForm, q: u64) -> u64 {
    assert!(q >= 1, "modulus must be positive");
    let q_prime = q / gcd(q, bf.h_a());
    let sums = bf.partial_sums(q_prime as usize);
    let mut best: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, &a) in sums.iter().enumerate() {
        let beta = bf.beta(i + 1);
        let slot = best.entry(a % q).or_insert(0);
        *slot = (*slot).max(beta);
    }
    best.values().sum()
}

/// `S = Σ_{i<g} 𝔅_i`, where `𝔅_i` is the largest `β_k` (`1 ≤ k ≤ n`) with
/// `A_k + m·g ≡ A_1 + i (mod q)` for some `|m| < min(h', q')`, or 0 when no
/// block qualifies.
///
/// Independent of [`lambda_sum`]; the two satisfy `Λ = q'·S`.
pub fn lambda_sum_g_blocks(bf: &BlockForm, q: u64) -> u64 {
    assert!(q >= 1, "modulus must be positive");
    let h_a = bf.h_a();
    let g = gcd(q, h_a);
    let (h_prime, q_prime) = ((h_a / g) as i128, (q / g) as i128);
    let reach = h_prime.min(q_prime);
    let (q, g) = (q as i128, g as i128);
    let sums = bf.partial_sums(1);
    let a1 = sums[0] as i128;
    (0..g)
        .map(|i| {
            sums.iter()
                .enumerate()
                .filter(|&(_, &a)| (1 - reach..reach).any(|m| (a as i128 + m * g - a1 - i).rem_euclid(q) == 0))
                .map(|(k, _)| bf.beta(k + 1))
                .max()
                .unwrap_or(0)
        })
        .sum()
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `σ(g)` for a divisor `g` of `h_a`, evaluated at `q = g`.
pub fn sigma(w: &PositiveWord, g: u64) -> Result<Rational> {
    let bf = w.block_form()?;
    let h_a = bf.h_a();
    if g == 0 || h_a % g != 0 {
        return Err(Error::NotADivisor { g, h_a });
    }
    Ok(Rational::frac(lambda_sum(&bf, g), g))
}

/// Left or right fringe at `p/q ∈ [0, 1)` with all intermediate quantities.
/// The right fringe of `w` is the left fringe of its mirror.
pub fn fringe(w: &PositiveWord, pq: &Rational, side: Side) -> Result<FringeResult> {
    let word = match side {
        Side::Left => w.clone(),
        Side::Right => w.mirror(),
    };
    let bf = word.block_form()?;
    let ctx = FringeContext::new(&word, pq)?;
    let lambda = lambda_sum(&bf, ctx.q);
    let s = lambda_sum_g_blocks(&bf, ctx.q);
    Ok(FringeResult {
        lambda_sum: lambda,
        s,
        sigma: Rational::frac(s, ctx.g),
        fr: Rational::frac(1, lambda),
        side,
    })
}

pub fn fringe_length(w: &PositiveWord, pq: &Rational, side: Side) -> Result<Rational> {
    Ok(fringe(w, pq, side)?.fr)
}

/// `(h_b/h_a, max β)`, between which every `σ(g)` lies.
pub fn sigma_bounds(w: &PositiveWord) -> Result<(Rational, Rational)> {
    let bf = w.block_form()?;
    Ok((Rational::frac(bf.h_b(), bf.h_a()), Rational::integer(bf.max_beta())))
}

/// Closed form for prime `h_a`: `h_a/(q·h_b)` when `h_a | q`, else
/// `1/(q·max β)`.
pub fn prime_case_fringe(w: &PositiveWord, pq: &Rational) -> Result<Rational> {
    let bf = w.block_form()?;
    let (h_a, h_b) = (bf.h_a(), bf.h_b());
    if !is_prime(h_a) {
        return Err(Error::NotPrime(h_a));
    }
    let (_, q) = unit_fraction_parts(pq)?;
    Ok(if q % h_a == 0 {
        Rational::frac(h_a, q * h_b)
    } else {
        Rational::frac(1, q * bf.max_beta())
    })
}
