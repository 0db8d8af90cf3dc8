//! Line-oriented coefficient files.
//!
//! ```text
//! # comment
//! alpha_im -19.06739
//! beta_im 19.06739
//! gamma_im 0
//! c1 2 0.51 0.0        # A(1, n) rows, or
//! c2 2 3 0.12 -0.4     # A(m1, m2) rows (not both)
//! ```

use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::maass::{expand_coefficients, CoefficientTable};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Which body records a file holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// `c1 n re im`.
    Dirichlet,
    /// `c2 m1 m2 re im`.
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientFile {
    /// `(r_α, r_β, r_γ)` exactly as written.
    pub imag: [f64; 3],
    pub params: LanglandsParams,
    pub kind: RowKind,
    /// Full table; `c1` files are expanded on load.
    pub table: CoefficientTable,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse::<T>().map_err(|_| perr(line, format!("cannot parse {what} '{tok}'")))
}

impl CoefficientFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: [Option<f64>; 3] = [None; 3];
        let mut kind: Option<RowKind> = None;
        let mut c1: BTreeMap<u32, Complex64> = BTreeMap::new();
        let mut c2 = CoefficientTable::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let slot = match toks[0] {
                "alpha_im" => Some(0),
                "beta_im" => Some(1),
                "gamma_im" => Some(2),
                _ => None,
            };
            if let Some(s) = slot {
                if kind.is_some() {
                    return Err(perr(line, "header line after coefficient rows"));
                }
                if toks.len() != 2 {
                    return Err(perr(line, format!("expected '{} <value>'", toks[0])));
                }
                if header[s].is_some() {
                    return Err(perr(line, format!("duplicate {}", toks[0])));
                }
                header[s] = Some(num(toks[1], line, toks[0])?);
                continue;
            }
            let this = match toks[0] {
                "c1" => RowKind::Dirichlet,
                "c2" => RowKind::Full,
                other => return Err(perr(line, format!("unknown record '{other}'"))),
            };
            if header.iter().any(Option::is_none) {
                return Err(perr(line, "alpha_im, beta_im and gamma_im must precede coefficient rows"));
            }
            if kind.is_some_and(|k| k != this) {
                return Err(perr(line, "c1 and c2 rows cannot be mixed"));
            }
            kind = Some(this);
            let index = |tok: &str| -> Result<u32> {
                let v: u32 = num(tok, line, "index")?;
                if v == 0 {
                    return Err(perr(line, "indices start at 1"));
                }
                Ok(v)
            };
            match this {
                RowKind::Dirichlet => {
                    if toks.len() != 4 {
                        return Err(perr(line, "expected 'c1 <n> <re> <im>'"));
                    }
                    let n = index(toks[1])?;
                    let v = Complex64::new(num(toks[2], line, "real part")?, num(toks[3], line, "imaginary part")?);
                    if c1.insert(n, v).is_some() {
                        return Err(perr(line, format!("duplicate A(1, {n})")));
                    }
                }
                RowKind::Full => {
                    if toks.len() != 5 {
                        return Err(perr(line, "expected 'c2 <m1> <m2> <re> <im>'"));
                    }
                    let (m1, m2) = (index(toks[1])?, index(toks[2])?);
                    let v = Complex64::new(num(toks[3], line, "real part")?, num(toks[4], line, "imaginary part")?);
                    if c2.contains(m1, m2) {
                        return Err(perr(line, format!("duplicate A({m1}, {m2})")));
                    }
                    c2.insert(m1, m2, v)?;
                }
            }
        }
        let [Some(a), Some(b), Some(g)] = header else {
            return Err(perr(text.lines().count().max(1), "missing alpha_im, beta_im or gamma_im"));
        };
        let params = LanglandsParams::new(a, b, g)?;
        let kind = kind.ok_or_else(|| perr(text.lines().count().max(1), "no coefficient rows"))?;
        let table = match kind {
            RowKind::Full => c2,
            RowKind::Dirichlet => {
                let n = c1.keys().next_back().copied().unwrap_or(1);
                expand_coefficients(&c1, n)?
            }
        };
        Ok(Self {
            imag: [a, b, g],
            params,
            kind,
            table,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The full table as `c2` rows. Floats use the shortest round-trip form.
    pub fn export(imag: [f64; 3], table: &CoefficientTable) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "alpha_im {}", imag[0]);
        let _ = writeln!(s, "beta_im {}", imag[1]);
        let _ = writeln!(s, "gamma_im {}", imag[2]);
        for ((m1, m2), v) in table.iter() {
            let _ = writeln!(s, "c2 {m1} {m2} {:e} {:e}", v.re, v.im);
        }
        s
    }
}
