//! Dense two-phase simplex over exact rationals.
//!
//! Problems are `minimize cᵀx subject to rows, x ≥ 0`. Pivoting follows
//! Bland's rule (lowest eligible index enters, ties in the ratio test leave by
//! lowest basic index), which cannot cycle. Every optimum comes with dual
//! multipliers so callers can check optimality without trusting the pivots.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// One multiplier per row: `≤ 0` for `Le`, `≥ 0` for `Ge`, free for `Eq`,
    /// with `Aᵀy ≤ c` and `bᵀy = value`.
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Optimal(Optimum),
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows × (cols + 1); the last column is the right-hand side.
    cells: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.cells[r][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize, obj: &mut [Rational]) {
        let inv = self.cells[row][col].recip().expect("pivot element is nonzero");
        for v in self.cells[row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = self.cells[row].clone();
        for (r, cells) in self.cells.iter_mut().enumerate() {
            if r == row || cells[col].is_zero() {
                continue;
            }
            let f = cells[col].clone();
            for (v, p) in cells.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &(&f * p);
                }
            }
        }
        if !obj[col].is_zero() {
            let f = obj[col].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &(&f * p);
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced-cost row for costs `c` (length `cols`) under the current basis;
    /// the final entry is `-(objective value)`.
    fn objective_row(&self, c: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = c.iter().cloned().chain([Rational::zero()]).collect();
        for (r, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for (v, t) in obj.iter_mut().zip(&self.cells[r]) {
                *v = &*v - &(&c[b] * t);
            }
        }
        obj
    }

    /// Runs Bland pivots until optimal. Returns false when unbounded.
    fn optimise(&mut self, obj: &mut [Rational], allowed: &[bool]) -> bool {
        loop {
            let Some(col) = (0..self.cols).find(|&j| allowed[j] && obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.cells.len() {
                let a = &self.cells[r][col];
                if a.is_zero() || a.is_negative() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col, obj);
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> Outcome {
        let n = self.objective.len();
        let m = self.rows.len();
        assert!(self.rows.iter().all(|r| r.coeffs.len() == n), "row width mismatch");

        // Normalise to non-negative right-hand sides.
        let mut signs = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        for row in &self.rows {
            if row.rhs.is_negative() {
                let relation = match row.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                rows.push((row.coeffs.iter().map(|c| -c).collect::<Vec<_>>(), relation, -&row.rhs));
                signs.push(-1i32);
            } else {
                rows.push((row.coeffs.clone(), row.relation, row.rhs.clone()));
                signs.push(1);
            }
        }

        // Column layout: originals, one slack/surplus per inequality, one
        // artificial per Ge/Eq row.
        let mut slack_col = vec![None; m];
        let mut art_col = vec![None; m];
        let mut cols = n;
        for (i, (_, rel, _)) in rows.iter().enumerate() {
            if *rel != Relation::Eq {
                slack_col[i] = Some(cols);
                cols += 1;
            }
        }
        for (i, (_, rel, _)) in rows.iter().enumerate() {
            if *rel != Relation::Le {
                art_col[i] = Some(cols);
                cols += 1;
            }
        }

        let mut cells = vec![vec![Rational::zero(); cols + 1]; m];
        let mut basis = vec![0; m];
        // Column of the initial identity basis for each row; B⁻¹eᵢ lives there.
        let mut unit_col = vec![0; m];
        for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
            cells[i][..n].clone_from_slice(coeffs);
            cells[i][cols] = rhs.clone();
            if let Some(s) = slack_col[i] {
                cells[i][s] = if *rel == Relation::Le {
                    Rational::one()
                } else {
                    -Rational::one()
                };
            }
            if let Some(a) = art_col[i] {
                cells[i][a] = Rational::one();
            }
            unit_col[i] = art_col[i].or(slack_col[i]).expect("every row has a basic column");
            basis[i] = unit_col[i];
        }
        let mut tab = Tableau { cells, basis, cols };
        let is_art: Vec<bool> = (0..cols).map(|j| art_col.contains(&Some(j))).collect();

        // Phase 1.
        if is_art.iter().any(|&a| a) {
            let c1: Vec<Rational> = is_art
                .iter()
                .map(|&a| if a { Rational::one() } else { Rational::zero() })
                .collect();
            let mut obj = tab.objective_row(&c1);
            let all = vec![true; cols];
            tab.optimise(&mut obj, &all);
            if !obj[cols].is_zero() {
                return Outcome::Infeasible;
            }
            // Drive zero-level artificials out of the basis where possible.
            for r in 0..m {
                if !is_art[tab.basis[r]] {
                    continue;
                }
                if let Some(col) = (0..cols).find(|&j| !is_art[j] && !tab.cells[r][j].is_zero()) {
                    tab.pivot(r, col, &mut obj);
                }
            }
        }

        // Phase 2.
        let mut c2 = vec![Rational::zero(); cols];
        c2[..n].clone_from_slice(&self.objective);
        let mut obj = tab.objective_row(&c2);
        let allowed: Vec<bool> = is_art.iter().map(|a| !a).collect();
        if !tab.optimise(&mut obj, &allowed) {
            return Outcome::Unbounded;
        }

        let mut x = vec![Rational::zero(); n];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = tab.rhs(r).clone();
            }
        }
        let duals = (0..m)
            .map(|i| {
                let y: Rational = tab
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(r, &b)| &c2[b] * &tab.cells[r][unit_col[i]])
                    .sum();
                if signs[i] < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Outcome::Optimal(Optimum {
            value: -obj[cols].clone(),
            x,
            duals,
        })
    }

    /// Checks that `opt` is primal feasible, dual feasible, and that both
    /// objectives agree.
    pub fn certifies(&self, opt: &Optimum) -> bool {
        let n = self.objective.len();
        if opt.x.len() != n || opt.duals.len() != self.rows.len() {
            return false;
        }
        if opt.x.iter().any(Rational::is_negative) {
            return false;
        }
        for (row, y) in self.rows.iter().zip(&opt.duals) {
            let lhs: Rational = row.coeffs.iter().zip(&opt.x).map(|(a, x)| a * x).sum();
            let ok = match row.relation {
                Relation::Le => lhs <= row.rhs && (y.is_negative() || y.is_zero()),
                Relation::Ge => lhs >= row.rhs && !y.is_negative(),
                Relation::Eq => lhs == row.rhs,
            };
            if !ok {
                return false;
            }
        }
        for j in 0..n {
            let aty: Rational = self.rows.iter().zip(&opt.duals).map(|(r, y)| &r.coeffs[j] * y).sum();
            if aty > self.objective[j] {
                return false;
            }
        }
        let primal: Rational = self.objective.iter().zip(&opt.x).map(|(c, x)| c * x).sum();
        let dual: Rational = self.rows.iter().zip(&opt.duals).map(|(r, y)| &r.rhs * y).sum();
        primal == opt.value && dual == opt.value
    }
}
