//! Tabular run reports.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::path::Path;
use std::time::Duration;

/// What a command did, in printable form.
#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub operation: String,
    /// Inputs and settings, in display order.
    pub settings: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(operation: &str) -> Self {
        Self {
            operation: operation.to_string(),
            ..Self::default()
        }
    }

    pub fn setting(&mut self, key: &str, value: impl ToString) {
        self.settings.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    /// Human-readable text. Wall time is left out so that output is reproducible.
    pub fn render(&self) -> String {
        let mut out = format!("# {}\n", self.operation);
        let kw = self.settings.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.settings {
            out.push_str(&format!("{k:<kw$}  {v}\n"));
        }
        if !self.columns.is_empty() {
            let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
            for r in &self.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: &[String]| -> String {
                let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                parts.join("  ").trim_end().to_string() + "\n"
            };
            out.push('\n');
            out.push_str(&line(&self.columns));
            for r in &self.rows {
                out.push_str(&line(r));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("{n}\n"));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let io = |e: csv::Error| Error::Io(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(path).map_err(io)?;
        w.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `x` with `digits` significant digits.
pub fn fmt_real(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}

pub fn fmt_complex(z: Complex64, digits: usize) -> String {
    let im = fmt_real(z.im.abs(), digits);
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {im}i", fmt_real(z.re, digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_real(-79.7799, 6), "-7.97799e1");
        assert_eq!(fmt_complex(Complex64::new(1.5, -0.25), 3), "1.50e0 - 2.50e-1i");
    }

    #[test]
    fn render_and_csv() {
        let mut r = RunReport::new("demo");
        r.setting("y1", 0.5);
        r.columns = vec!["a".into(), "bb".into()];
        r.row(vec!["1".into(), "2".into()]);
        let text = r.render();
        assert!(text.starts_with("# demo\ny1  0.5\n"));
        assert!(text.contains("\na  bb\n1   2\n"));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        r.write_csv(&path).unwrap();
        assert_eq!(std::fs::read_to_string(path).unwrap(), "a,bb\n1,2\n");
    }
}
