//! Batch evaluation over Farey grids and the CSV / SVG / PGM writers.

use std::fmt::Write as _;

use rayon::prelude::*;
use ziggurat::fringe::{fringe_length, Side};
use ziggurat::{farey, max_rot, OracleConfig, PositiveWord, Rational, Result, RotationQuery};

/// `R(w; r, s)` at every pair of reduced fractions in `[0, 1)` with
/// denominators at most `max_denom`, sorted by `(r, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigguratGrid {
    pub word: PositiveWord,
    pub max_denom: u64,
    pub entries: Vec<(Rational, Rational, Rational)>,
}

/// Fringe lengths at every reduced `p/q ∈ [0, 1)` with `q ≤ max_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FringeSeries {
    pub word: PositiveWord,
    pub side: Side,
    pub max_q: u64,
    pub points: Vec<(Rational, Rational)>,
}

pub fn grid(w: &PositiveWord, max_denom: u64, config: &OracleConfig) -> Result<ZigguratGrid> {
    let axis = farey(max_denom);
    let pairs: Vec<(&Rational, &Rational)> = axis.iter().flat_map(|r| axis.iter().map(move |s| (r, s))).collect();
    let entries = pairs
        .into_par_iter()
        .map(|(r, s)| {
            let value = max_rot(&RotationQuery::new(w.clone(), r.clone(), s.clone()), config)?;
            Ok((r.clone(), s.clone(), value))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZigguratGrid {
        word: w.clone(),
        max_denom,
        entries,
    })
}

pub fn fringe_series(w: &PositiveWord, max_q: u64, side: Side) -> Result<FringeSeries> {
    let points = farey(max_q)
        .into_par_iter()
        .map(|x| {
            let fr = fringe_length(w, &x, side)?;
            Ok((x, fr))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FringeSeries {
        word: w.clone(),
        side,
        max_q,
        points,
    })
}

impl FringeSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,fr_num,fr_den\n");
        for (x, fr) in &self.points {
            writeln!(out, "{},{},{},{}", x.numer(), x.denom(), fr.numer(), fr.denom()).unwrap();
        }
        out
    }

    /// Vertical impulses of height `fr(p/q)` at each `p/q`.
    pub fn to_svg(&self) -> String {
        const W: f64 = 800.0;
        const H: f64 = 400.0;
        const M: f64 = 40.0;
        let top = self
            .points
            .iter()
            .map(|(_, fr)| fr.to_f64())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut out = svg_header(W, H);
        writeln!(
            out,
            r#"<title>{} fringe of {}, q &lt;= {}</title>"#,
            self.side, self.word, self.max_q
        )
        .unwrap();
        writeln!(
            out,
            r#"<line x1="{M}" y1="{y}" x2="{x}" y2="{y}" stroke="black" stroke-width="1"/>"#,
            y = H - M,
            x = W - M
        )
        .unwrap();
        out.push_str("<g stroke=\"black\" stroke-width=\"1\">\n");
        for (x, fr) in &self.points {
            let px = M + x.to_f64() * (W - 2.0 * M);
            let py = H - M - fr.to_f64() / top * (H - 2.0 * M);
            writeln!(
                out,
                r#"<line x1="{px:.3}" y1="{:.3}" x2="{px:.3}" y2="{py:.3}"/>"#,
                H - M
            )
            .unwrap();
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

impl ZigguratGrid {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r_num,r_den,s_num,s_den,R_num,R_den\n");
        for (r, s, v) in &self.entries {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.numer(),
                r.denom(),
                s.numer(),
                s.denom(),
                v.numer(),
                v.denom()
            )
            .unwrap();
        }
        out
    }

    fn axis(&self) -> Vec<Rational> {
        farey(self.max_denom)
    }

    /// `R` scaled linearly so the grid's minimum is 0 and its maximum 255.
    fn levels(&self) -> Vec<u8> {
        let lo = self.entries.iter().map(|e| &e.2).min();
        let hi = self.entries.iter().map(|e| &e.2).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Vec::new();
        };
        let span = hi - lo;
        self.entries
            .iter()
            .map(|(_, _, v)| {
                if span.is_zero() {
                    0
                } else {
                    let level = ((v - lo) * Rational::integer(255) / &span).floor();
                    u8::try_from(level).expect("level within 0..=255")
                }
            })
            .collect()
    }

    /// Plain PGM: one column per `r`, one row per `s` with `s` increasing
    /// upwards.
    pub fn to_pgm(&self) -> String {
        let n = self.axis().len();
        let levels = self.levels();
        let mut out = format!(
            "P2\n# R(w; r, s) for w = {}, denominators <= {}\n{n} {n}\n255\n",
            self.word, self.max_denom
        );
        // Entries are r-major: entry (i, j) is at i·n + j.
        for row in (0..n).rev() {
            let line: Vec<String> = (0..n).map(|col| levels[col * n + row].to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Each value fills the cell from its `(r, s)` to the next grid point, so
    /// the picture shows the stairstep surface.
    pub fn to_svg(&self) -> String {
        const SIDE: f64 = 600.0;
        const M: f64 = 20.0;
        let axis = self.axis();
        let n = axis.len();
        let edges: Vec<f64> = axis.iter().map(Rational::to_f64).chain([1.0]).collect();
        let levels = self.levels();
        let mut out = svg_header(SIDE + 2.0 * M, SIDE + 2.0 * M);
        writeln!(
            out,
            r#"<title>R(w; r, s) for w = {}, denominators &lt;= {}</title>"#,
            self.word, self.max_denom
        )
        .unwrap();
        out.push_str("<g stroke=\"none\">\n");
        for i in 0..n {
            for j in 0..n {
                let level = levels[i * n + j];
                let x = M + edges[i] * SIDE;
                let w = (edges[i + 1] - edges[i]) * SIDE;
                let y = M + (1.0 - edges[j + 1]) * SIDE;
                let h = (edges[j + 1] - edges[j]) * SIDE;
                writeln!(
                    out,
                    r#"<rect x="{x:.3}" y="{y:.3}" width="{w:.3}" height="{h:.3}" fill="rgb({level},{level},{level})"/>"#
                )
                .unwrap();
            }
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

fn svg_header(width: f64, height: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}
