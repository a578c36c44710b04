//! Least `t` with `R(w; p/q, t) ≥ c/d`, by partition enumeration and exact
//! linear programming.
//!
//! With `w = b^{β_n} a^{α_n} ⋯ b^{β_1} a^{α_1}` and `k = n·d`, every candidate
//! XY-word corresponds to a composition `l_1 + ⋯ + l_k` of the residual
//! `c·q − Σ(α_i·p + 1)`. Each composition fixes window offsets
//! `s_i ≡ Σ_{j≤i}(α_j·p + 1) + Σ_{j<i} l_j (mod q)` and the linear program
//!
//! ```text
//! minimise u  subject to  Σ t = 1,  t ≥ 0,
//!                         t_{s_i+1} + ⋯ + t_{s_i+l_i} ≤ u·β_i   (indices mod q)
//! ```
//!
//! The answer is the minimum of `u` over all compositions.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Outcome, Relation, Row};
use crate::rational::Rational;
use crate::word::{BlockForm, PositiveWord};

/// The data of one stairstep query: block form, `p/q` and target `c/d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StairstepProblem {
    blocks: BlockForm,
    p: u64,
    q: u64,
    c: u64,
    d: u64,
}

fn unsigned_parts(x: &Rational, what: &str) -> Result<(u64, u64)> {
    if x.is_negative() {
        return Err(Error::InvalidArgument(format!("{what} must be non-negative, got {x}")));
    }
    let num = x.numer().to_u64().ok_or_else(|| Error::OutOfRange(x.to_string()))?;
    Ok((num, x.denom_u64()?))
}

impl StairstepProblem {
    pub fn new(w: &PositiveWord, pq: &Rational, cd: &Rational) -> Result<Self> {
        StairstepProblem::from_blocks(w.block_form()?, pq, cd)
    }

    pub fn from_blocks(blocks: BlockForm, pq: &Rational, cd: &Rational) -> Result<Self> {
        let (p, q) = unsigned_parts(pq, "p/q")?;
        let (c, d) = unsigned_parts(cd, "c/d")?;
        Ok(StairstepProblem { blocks, p, q, c, d })
    }

    pub fn blocks(&self) -> &BlockForm {
        &self.blocks
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Number of blocks in `w^d`.
    pub fn k(&self) -> usize {
        self.blocks.n() * self.d as usize
    }

    /// `c·q − Σ_{i=1}^{k} (α_i·p + 1)`; may be negative.
    pub fn residual(&self) -> i128 {
        let covered: i128 = (1..=self.k())
            .map(|i| self.blocks.alpha(i) as i128 * self.p as i128 + 1)
            .sum();
        self.c as i128 * self.q as i128 - covered
    }

    /// `l_i ≤ q·β_i − 1`: any longer window forces `u ≥ 1`.
    pub fn fringe_caps(&self) -> Vec<u64> {
        (1..=self.k()).map(|i| self.q * self.blocks.beta(i) - 1).collect()
    }
}

/// `(h_a·p + h_b·q)/q`, the value of `R(w; p/q, ·)` on the fringe.
pub fn fringe_target(w: &PositiveWord, pq: &Rational) -> Rational {
    let (h_a, h_b) = w.letter_counts();
    pq * &Rational::integer(h_a) + Rational::integer(h_b)
}

/// A composition `(l_1, …, l_k)` of the residual.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(pub Vec<u64>);

impl Partition {
    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u128 {
        self.0.iter().map(|&x| x as u128).sum()
    }
}

/// Lexicographic enumeration of compositions with per-part upper bounds.
#[derive(Debug, Clone)]
pub struct Partitions {
    parts: Vec<u64>,
    caps: Vec<u64>,
    started: bool,
    done: bool,
}

impl Partitions {
    /// Lexicographically smallest composition of `total` into the tail
    /// `from..` (later parts absorb as much as their caps allow).
    fn fill_tail(&mut self, from: usize, mut total: u64) {
        for i in (from..self.parts.len()).rev() {
            let take = total.min(self.caps[i]);
            self.parts[i] = take;
            total -= take;
        }
        debug_assert_eq!(total, 0);
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Partition(self.parts.clone()));
        }
        let k = self.parts.len();
        let mut tail = 0u64;
        for i in (0..k.saturating_sub(1)).rev() {
            tail += self.parts[i + 1];
            if self.parts[i] < self.caps[i] && tail > 0 {
                self.parts[i] += 1;
                self.fill_tail(i + 1, tail - 1);
                return Some(Partition(self.parts.clone()));
            }
        }
        self.done = true;
        None
    }
}

/// All compositions of `residual` into `k` non-negative parts, optionally
/// bounded part-wise by `caps`, in lexicographic order.
pub fn partitions(residual: i128, k: usize, caps: Option<&[u64]>) -> Result<Partitions> {
    let infeasible = Error::NoFeasiblePartition { residual };
    if residual < 0 || k == 0 {
        return Err(infeasible);
    }
    let total = u64::try_from(residual).map_err(|_| Error::OutOfRange(residual.to_string()))?;
    let caps = match caps {
        Some(c) => {
            assert_eq!(c.len(), k, "one cap per part");
            c.to_vec()
        }
        None => vec![total; k],
    };
    if caps.iter().map(|&c| c as u128).sum::<u128>() < total as u128 {
        return Err(infeasible);
    }
    let mut it = Partitions {
        parts: vec![0; k],
        caps,
        started: false,
        done: false,
    };
    it.fill_tail(0, total);
    Ok(it)
}

/// One constraint `t_{s+1} + ⋯ + t_{s+len} ≤ u·β`, indices mod `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    /// `s_i mod q`, in `0..q`.
    pub start: u64,
    /// `l_i`.
    pub len: u64,
    pub beta: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    pub q: u64,
    pub windows: Vec<Window>,
}

impl ConstraintSet {
    /// Coefficients of `t_1, …, t_q` in window `i` (entry `j - 1` is `t_j`).
    pub fn coefficients(&self, i: usize) -> Vec<u64> {
        let w = self.windows[i];
        let q = self.q;
        let (full, partial) = (w.len / q, w.len % q);
        (0..q)
            .map(|idx| full + u64::from((idx + q - w.start) % q < partial))
            .collect()
    }
}

/// Builds the window constraints for a composition.
pub fn constraints(problem: &StairstepProblem, partition: &Partition) -> ConstraintSet {
    let q = problem.q as u128;
    let mut acc: u128 = 0;
    let windows = partition
        .parts()
        .iter()
        .enumerate()
        .map(|(idx, &len)| {
            let i = idx + 1;
            acc = (acc + problem.blocks.alpha(i) as u128 * problem.p as u128 + 1) % q;
            let start = acc as u64;
            acc = (acc + len as u128) % q;
            Window {
                start,
                len,
                beta: problem.blocks.beta(i),
            }
        })
        .collect();
    ConstraintSet { q: problem.q, windows }
}

/// Optimal `u` with a witness `t` and a dual certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub u: Rational,
    /// `t[j - 1]` is `t_j`.
    pub t: Vec<Rational>,
    /// Non-negative weight per window.
    pub multipliers: Vec<Rational>,
}

impl LpSolution {
    /// Exact check of primal feasibility and of the dual bound
    /// `u ≥ min_j Σ_i λ_i·C_ij` with `Σ λ_i·β_i ≤ 1`, which proves that no
    /// smaller `u` is feasible.
    pub fn verify(&self, cs: &ConstraintSet) -> bool {
        let q = cs.q as usize;
        if self.t.len() != q || self.multipliers.len() != cs.windows.len() {
            return false;
        }
        if self.t.iter().any(Rational::is_negative) || self.t.iter().sum::<Rational>() != Rational::one() {
            return false;
        }
        let rows: Vec<Vec<u64>> = (0..cs.windows.len()).map(|i| cs.coefficients(i)).collect();
        for (row, w) in rows.iter().zip(&cs.windows) {
            let lhs: Rational = row.iter().zip(&self.t).map(|(&c, t)| Rational::integer(c) * t).sum();
            if lhs > &self.u * &Rational::integer(w.beta) {
                return false;
            }
        }
        if self.multipliers.iter().any(Rational::is_negative) {
            return false;
        }
        let weight: Rational = self
            .multipliers
            .iter()
            .zip(&cs.windows)
            .map(|(l, w)| l * &Rational::integer(w.beta))
            .sum();
        if weight > Rational::one() {
            return false;
        }
        let dual_bound = (0..q)
            .map(|j| {
                rows.iter()
                    .zip(&self.multipliers)
                    .map(|(row, l)| Rational::integer(row[j]) * l)
                    .sum::<Rational>()
            })
            .min()
            .unwrap_or_else(Rational::zero);
        dual_bound == self.u
    }
}

/// Minimal `u` for one constraint set.
pub fn solve_min_u(cs: &ConstraintSet) -> LpSolution {
    let q = cs.q as usize;
    // Identical windows give identical rows; solve with one copy of each.
    let mut distinct: Vec<Window> = cs.windows.clone();
    distinct.sort_unstable();
    distinct.dedup();

    let mut rows: Vec<Row> = distinct
        .iter()
        .map(|w| {
            let mut coeffs: Vec<Rational> = ConstraintSet {
                q: cs.q,
                windows: vec![*w],
            }
            .coefficients(0)
            .into_iter()
            .map(Rational::integer)
            .collect();
            coeffs.push(-Rational::integer(w.beta));
            Row {
                coeffs,
                relation: Relation::Le,
                rhs: Rational::zero(),
            }
        })
        .collect();
    let mut simplex: Vec<Rational> = vec![Rational::one(); q];
    simplex.push(Rational::zero());
    rows.push(Row {
        coeffs: simplex,
        relation: Relation::Eq,
        rhs: Rational::one(),
    });
    let mut objective = vec![Rational::zero(); q];
    objective.push(Rational::one());

    let opt = match (LinearProgram { objective, rows }).solve() {
        Outcome::Optimal(opt) => opt,
        // t = e_1 with u = max window length is always feasible, and u ≥ 0.
        other => unreachable!("window LP is feasible and bounded, got {other:?}"),
    };
    let u = opt.x[q].clone();
    let t = opt.x[..q].to_vec();
    let mut multipliers = vec![Rational::zero(); cs.windows.len()];
    for (w, y) in distinct.iter().zip(&opt.duals) {
        let first = cs.windows.iter().position(|x| x == w).expect("window present");
        multipliers[first] = -y;
    }
    LpSolution { u, t, multipliers }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StairstepConfig {
    /// Bound every `l_i` by `q·β_i − 1`. Only sound on fringe targets, where
    /// the optimum is known to be below 1.
    pub fringe_caps: bool,
    /// Maximum number of compositions whose LP is solved.
    pub max_partitions: u64,
    /// Solve every composition instead of branch and bound.
    pub exhaustive: bool,
}

impl Default for StairstepConfig {
    fn default() -> Self {
        StairstepConfig {
            fringe_caps: false,
            max_partitions: 100_000,
            exhaustive: false,
        }
    }
}

impl StairstepConfig {
    pub fn fringe() -> Self {
        StairstepConfig {
            fringe_caps: true,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StairstepOutcome {
    pub u: Rational,
    pub partition: Partition,
    pub constraints: ConstraintSet,
    pub solution: LpSolution,
    /// Number of compositions whose LP was solved.
    pub evaluated: u64,
}

struct Search<'a> {
    problem: &'a StairstepProblem,
    base_caps: Vec<u64>,
    max_partitions: u64,
    evaluated: u64,
    best: Option<StairstepOutcome>,
    // Caps under which a composition can still beat `best`, and their suffix
    // sums; `None` once nothing can.
    live_caps: Option<(Vec<u64>, Vec<u128>)>,
}

impl Search<'_> {
    fn evaluate(&mut self, parts: &[u64]) -> Result<()> {
        self.evaluated += 1;
        if self.evaluated > self.max_partitions {
            return Err(Error::EnumerationCapExceeded {
                count: self.evaluated as u128,
                cap: self.max_partitions as u128,
            });
        }
        let partition = Partition(parts.to_vec());
        let cs = constraints(self.problem, &partition);
        let solution = solve_min_u(&cs);
        if self.best.as_ref().is_none_or(|b| solution.u < b.u) {
            self.best = Some(StairstepOutcome {
                u: solution.u.clone(),
                partition,
                constraints: cs,
                solution,
                evaluated: 0,
            });
            self.refresh_caps();
        }
        Ok(())
    }

    /// A window of length `l ≥ j·q` covers every `t` at least `j` times, so
    /// its row alone forces `u ≥ j/β`. Beating the incumbent `u*` therefore
    /// needs `⌊l/q⌋ < u*·β`, i.e. `l ≤ q·⌈u*·β⌉ − 1`.
    fn refresh_caps(&mut self) {
        let Some(best) = &self.best else {
            let caps = self.base_caps.clone();
            self.live_caps = Some(with_suffix(caps));
            return;
        };
        if best.u.is_zero() {
            self.live_caps = None;
            return;
        }
        let q = self.problem.q;
        let caps = self
            .base_caps
            .iter()
            .enumerate()
            .map(|(idx, &cap)| {
                let beta = Rational::integer(self.problem.blocks.beta(idx + 1));
                let ceil = -(-(&best.u * &beta)).floor();
                let bound = ceil.to_u64().map_or(u64::MAX, |c| (q * c).saturating_sub(1));
                cap.min(bound)
            })
            .collect();
        self.live_caps = Some(with_suffix(caps));
    }

    fn dfs(&mut self, parts: &mut Vec<u64>, remaining: u64) -> Result<()> {
        let i = parts.len();
        let k = self.base_caps.len();
        let Some((caps, _)) = &self.live_caps else {
            return Ok(());
        };
        if i + 1 == k {
            if remaining <= caps[i] {
                parts.push(remaining);
                let r = self.evaluate(parts);
                parts.pop();
                r?;
            }
            return Ok(());
        }
        let mut l = 0u64;
        loop {
            // The incumbent may improve inside the loop; reread the caps.
            let Some((caps, suffix)) = &self.live_caps else {
                return Ok(());
            };
            if l > remaining || l > caps[i] {
                return Ok(());
            }
            if ((remaining - l) as u128) <= suffix[i + 1] {
                parts.push(l);
                let r = self.dfs(parts, remaining - l);
                parts.pop();
                r?;
            }
            l += 1;
        }
    }

    /// A first incumbent: the composition whose largest ratio `⌊l_i/q⌋/β_i`
    /// is as small as possible, filled front to back.
    fn seed(&mut self, total: u64) -> Result<()> {
        let q = self.problem.q;
        let betas: Vec<u64> = (1..=self.base_caps.len())
            .map(|i| self.problem.blocks.beta(i))
            .collect();
        let mut level = Rational::zero();
        loop {
            let caps: Vec<u64> = betas
                .iter()
                .zip(&self.base_caps)
                .map(|(&beta, &cap)| {
                    let full = (&level * &Rational::integer(beta)).floor().to_u64().unwrap_or(u64::MAX);
                    cap.min(q.saturating_mul(full.saturating_add(1)).saturating_sub(1))
                })
                .collect();
            if caps.iter().map(|&c| c as u128).sum::<u128>() >= total as u128 {
                let mut rest = total;
                let parts: Vec<u64> = caps
                    .iter()
                    .map(|&c| {
                        let take = rest.min(c);
                        rest -= take;
                        take
                    })
                    .collect();
                return self.evaluate(&parts);
            }
            // Next breakpoint j/β above the current level.
            level = betas
                .iter()
                .map(|&beta| {
                    let b = Rational::integer(beta);
                    let j = (&level * &b).floor() + 1;
                    Rational::integer(j) / b
                })
                .min()
                .expect("k >= 1");
        }
    }
}

fn with_suffix(caps: Vec<u64>) -> (Vec<u64>, Vec<u128>) {
    let mut suffix = vec![0u128; caps.len() + 1];
    for i in (0..caps.len()).rev() {
        suffix[i] = suffix[i + 1] + caps[i] as u128;
    }
    (caps, suffix)
}

/// Minimal `u` over all compositions, with the optimal composition and its
/// certified LP solution.
pub fn stairstep(problem: &StairstepProblem, config: &StairstepConfig) -> Result<StairstepOutcome> {
    let residual = problem.residual();
    let k = problem.k();
    let caps = config.fringe_caps.then(|| problem.fringe_caps());
    // Validates feasibility and caps.
    let mut all = partitions(residual, k, caps.as_deref())?;
    let total = residual as u64;

    if config.exhaustive {
        let mut best: Option<StairstepOutcome> = None;
        let mut evaluated = 0u64;
        for partition in all.by_ref() {
            evaluated += 1;
            if evaluated > config.max_partitions {
                return Err(Error::EnumerationCapExceeded {
                    count: evaluated as u128,
                    cap: config.max_partitions as u128,
                });
            }
            let cs = constraints(problem, &partition);
            let solution = solve_min_u(&cs);
            if best.as_ref().is_none_or(|b| solution.u < b.u) {
                best = Some(StairstepOutcome {
                    u: solution.u.clone(),
                    partition,
                    constraints: cs,
                    solution,
                    evaluated: 0,
                });
            }
        }
        let mut best = best.expect("at least one composition");
        best.evaluated = evaluated;
        return Ok(best);
    }

    let base_caps = caps.unwrap_or_else(|| vec![total; k]);
    let mut search = Search {
        problem,
        base_caps,
        max_partitions: config.max_partitions,
        evaluated: 0,
        best: None,
        live_caps: None,
    };
    search.refresh_caps();
    search.seed(total)?;
    search.dfs(&mut Vec::with_capacity(k), total)?;
    let mut best = search.best.expect("seed always evaluates");
    best.evaluated = search.evaluated;
    Ok(best)
}

/// Least `t` with `R(w; p/q, t) ≥ c/d`.
pub fn stairstep_min_t(w: &PositiveWord, pq: &Rational, cd: &Rational, config: &StairstepConfig) -> Result<Rational> {
    Ok(stairstep(&StairstepProblem::new(w, pq, cd)?, config)?.u)
}
