//! Superpotentials `W(x)` for the grid realization: polynomials parsed from
//! short expressions such as `x`, `-x`, `x^3` or `0.5*x^3 - 2*x`, or tabulated
//! values read from a two-column text file.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Superpotential {
    /// `sum c_k x^k`, stored as `(c_k, k)`.
    Polynomial { expr: String, terms: Vec<(f64, u32)> },
    /// Piecewise-linear interpolation of `(x, W)` samples sorted by `x`.
    Table { source: String, xs: Vec<f64>, ws: Vec<f64> },
}

impl Superpotential {
    /// `W(x) = x`, the harmonic oscillator.
    pub fn harmonic() -> Self {
        Superpotential::Polynomial {
            expr: "x".into(),
            terms: vec![(1.0, 1)],
        }
    }

    /// Parses a polynomial expression, or `table:<path>` for tabulated data.
    pub fn parse(expr: &str) -> Result<Self> {
        let trimmed = expr.trim();
        if let Some(path) = trimmed.strip_prefix("table:") {
            return Self::from_table_file(path.trim());
        }
        let terms = parse_polynomial(trimmed).map_err(|reason| Error::InvalidSuperpotential {
            expr: expr.to_string(),
            reason,
        })?;
        Ok(Superpotential::Polynomial {
            expr: trimmed.to_string(),
            terms,
        })
    }

    pub fn from_table_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let source = path.display().to_string();
        let bad = |reason: String| Error::InvalidSuperpotential {
            expr: source.clone(),
            reason,
        };
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .collect();
            if cols.len() != 2 {
                return Err(bad(format!("line {}: expected two columns", lineno + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| bad(format!("line {}: {e}", lineno + 1)))
            };
            rows.push((parse(cols[0])?, parse(cols[1])?));
        }
        if rows.len() < 2 {
            return Err(bad("need at least two samples".into()));
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        if rows.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(bad("duplicate abscissa".into()));
        }
        let (xs, ws) = rows.into_iter().unzip();
        Ok(Superpotential::Table { source, xs, ws })
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            Superpotential::Polynomial { terms, .. } => {
                terms.iter().map(|&(c, k)| c * x.powi(k as i32)).sum()
            }
            Superpotential::Table { xs, ws, .. } => interpolate(xs, ws, x),
        }
    }

    /// `W'(x)`: analytic for polynomials, central difference for tables.
    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            Superpotential::Polynomial { terms, .. } => terms
                .iter()
                .filter(|&&(_, k)| k > 0)
                .map(|&(c, k)| c * k as f64 * x.powi(k as i32 - 1))
                .sum(),
            Superpotential::Table { xs, ws, .. } => {
                let step = xs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min) / 2.0;
                (interpolate(xs, ws, x + step) - interpolate(xs, ws, x - step)) / (2.0 * step)
            }
        }
    }
}

impl fmt::Display for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Superpotential::Polynomial { expr, .. } => f.write_str(expr),
            Superpotential::Table { source, .. } => write!(f, "table:{source}"),
        }
    }
}

fn interpolate(xs: &[f64], ws: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&v| v <= x);
    let (lo, hi) = match i {
        0 => (0, 1),
        i if i >= xs.len() => (xs.len() - 2, xs.len() - 1),
        i => (i - 1, i),
    };
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ws[lo] + t * (ws[hi] - ws[lo])
}

fn parse_polynomial(expr: &str) -> std::result::Result<Vec<(f64, u32)>, String> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    // split into signed terms; a sign directly after `e`/`E` or `^` belongs to a number
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        let c = bytes[i];
        let prev = bytes[i - 1];
        if (c == b'+' || c == b'-') && !matches!(prev, b'e' | b'E' | b'^' | b'*') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let mut out: Vec<(f64, u32)> = Vec::new();
    for t in terms {
        let (coef, power) = parse_term(t).ok_or_else(|| format!("cannot parse term `{t}`"))?;
        match out.iter_mut().find(|(_, k)| *k == power) {
            Some(slot) => slot.0 += coef,
            None => out.push((coef, power)),
        }
    }
    out.sort_by_key(|&(_, k)| k);
    Ok(out)
}

fn parse_term(t: &str) -> Option<(f64, u32)> {
    let (sign, body) = match t.as_bytes().first()? {
        b'+' => (1.0, &t[1..]),
        b'-' => (-1.0, &t[1..]),
        _ => (1.0, t),
    };
    let Some(xpos) = body.find('x') else {
        return Some((sign * body.parse::<f64>().ok()?, 0));
    };
    let coef_part = body[..xpos].trim_end_matches('*');
    let coef = if coef_part.is_empty() {
        1.0
    } else {
        coef_part.parse::<f64>().ok()?
    };
    let rest = &body[xpos + 1..];
    let power = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.parse::<u32>().ok()?
    };
    Some((sign * coef, power))
}
