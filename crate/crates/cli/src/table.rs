//! σ(g) for seven words with `h_a = 6`, against the values printed in the
//! literature.

use std::fmt::Write as _;

use rayon::prelude::*;
use ziggurat::fringe::{sigma, Side};
use ziggurat::stairstep::{fringe_target, stairstep, StairstepConfig, StairstepProblem};
use ziggurat::{fringe_length, PositiveWord, Rational, Result};

/// The divisors of 6 and the `p/q` used for each.
pub const COLUMNS: [(u64, (i64, i64)); 4] = [(1, (1, 5)), (2, (1, 2)), (3, (1, 3)), (6, (1, 6))];

/// `(word, h_b, printed σ for g = 1, 2, 3, 6)`.
pub const PUBLISHED: [(&str, u64, [&str; 4]); 7] = [
    ("aaabaaabbbb", 5, ["4", "5/2", "4/3", "5/6"]),
    ("abaabaaabbbb", 6, ["4", "5/2", "5/3", "1"]),
    ("abbaabaaabbbb", 7, ["4", "3", "2", "7/6"]),
    ("abbbaabaaabbbb", 8, ["4", "7/2", "4/3", "7/3"]),
    ("abbbababaaabbbb", 9, ["4", "7/2", "8/3", "3/2"]),
    ("abbbaabbaaabbbb", 9, ["4", "7/3", "7/3", "3/2"]),
    ("abbbababbaaabbbb", 10, ["4", "7/2", "8/3", "5/3"]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub g: u64,
    pub pq: Rational,
    pub published: Rational,
    /// From the residue-class computation.
    pub sigma: Rational,
    /// `1/(fr·q)` with `fr = 1 − u` from the stairstep LP at `p/q`.
    pub stairstep: Rational,
    /// `1/(fr·q)` with `fr` from the fringe formula at `p/q`.
    pub fringe: Rational,
}

impl Cell {
    pub fn matches_published(&self) -> bool {
        self.sigma == self.published
    }

    /// The three computations agree and `g·σ` is an integer.
    pub fn consistent(&self) -> bool {
        self.sigma == self.stairstep
            && self.sigma == self.fringe
            && (&self.sigma * &Rational::integer(self.g)).is_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub word: PositiveWord,
    pub h_b: u64,
    pub cells: Vec<Cell>,
}

fn cell(w: &PositiveWord, g: u64, (p, q): (i64, i64), published: &str) -> Result<Cell> {
    let pq = Rational::new(p, q)?;
    let q = Rational::integer(q);
    let target = fringe_target(w, &pq);
    let u = stairstep(&StairstepProblem::new(w, &pq, &target)?, &StairstepConfig::fringe())?.u;
    let from_stairstep = (&(Rational::one() - u) * &q).recip()?;
    let from_fringe = (&fringe_length(w, &pq, Side::Left)? * &q).recip()?;
    Ok(Cell {
        g,
        pq,
        published: published.parse()?,
        sigma: sigma(w, g)?,
        stairstep: from_stairstep,
        fringe: from_fringe,
    })
}

pub fn compute() -> Result<Vec<Row>> {
    PUBLISHED
        .par_iter()
        .map(|&(word, h_b, printed)| {
            let w: PositiveWord = word.parse()?;
            let cells = COLUMNS
                .iter()
                .zip(printed)
                .map(|(&(g, pq), published)| cell(&w, g, pq, published))
                .collect::<Result<Vec<_>>>()?;
            Ok(Row { word: w, h_b, cells })
        })
        .collect()
}

/// Integers print without a denominator, as in the printed table.
fn compact(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        x.to_string()
    }
}

pub fn render(rows: &[Row]) -> String {
    let mut out = String::new();
    let header: Vec<String> = COLUMNS.iter().map(|(g, _)| format!("g={g}")).collect();
    writeln!(
        out,
        "{:<18} {:>3}  {}",
        "word",
        "h_b",
        header.iter().map(|h| format!("{h:<24}")).collect::<String>().trim_end()
    )
    .unwrap();
    for row in rows {
        let cells: Vec<String> = row
            .cells
            .iter()
            .map(|c| {
                let mut s = compact(&c.sigma);
                if !c.matches_published() {
                    write!(s, " [published: {}]", compact(&c.published)).unwrap();
                }
                if !c.consistent() {
                    write!(s, " [stairstep: {}]", compact(&c.stairstep)).unwrap();
                }
                format!("{s:<24}")
            })
            .collect();
        writeln!(
            out,
            "{:<18} {:>3}  {}",
            row.word.to_string(),
            row.h_b,
            cells.concat().trim_end()
        )
        .unwrap();
    }
    let total = rows.iter().map(|r| r.cells.len()).sum::<usize>();
    let matched = rows
        .iter()
        .flat_map(|r| &r.cells)
        .filter(|c| c.matches_published())
        .count();
    let consistent = rows.iter().flat_map(|r| &r.cells).filter(|c| c.consistent()).count();
    writeln!(
        out,
        "{matched}/{total} cells match the printed values; {consistent}/{total} agree with the stairstep LP"
    )
    .unwrap();
    out
}
