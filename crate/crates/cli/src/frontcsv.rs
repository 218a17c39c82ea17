//! Front files: header `x_0,…,x_{n-1},f_1,…,f_q,viol`, one row per point.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so
//! reading a file and writing it back reproduces it byte for byte.

use std::path::Path;

use crate::error::{CliError, Result};
use crate::io::write_atomic;

#[derive(Debug, Clone, PartialEq)]
pub struct FrontRow {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub viol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontTable {
    pub n: usize,
    pub q: usize,
    pub rows: Vec<FrontRow>,
}

impl FrontTable {
    pub fn new(n: usize, q: usize) -> Self {
        Self {
            n,
            q,
            rows: Vec::new(),
        }
    }

    pub fn header(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| format!("x_{i}"))
            .chain((1..=self.q).map(|j| format!("f_{j}")))
            .chain(std::iter::once("viol".to_string()))
            .collect()
    }

    pub fn render(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
            w.write_record(self.header())?;
            for r in &self.rows {
                let fields = r.x.iter().chain(&r.f).chain(std::iter::once(&r.viol));
                w.write_record(fields.map(|v| format!("{v:?}")))?;
            }
            w.flush()?;
            Ok(())
        };
        write(&mut w).expect("writing to memory cannot fail");
        String::from_utf8(w.into_inner().expect("flushed")).expect("ASCII output")
    }

    /// Parses a front file; `origin` only labels errors.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header = r.headers().map_err(|e| CliError::parse(origin, e))?.clone();
        let n = header.iter().take_while(|h| h.starts_with("x_")).count();
        let q = header.iter().skip(n).take_while(|h| h.starts_with("f_")).count();
        let mut table = Self::new(n, q);
        let expected = table.header();
        if header.iter().ne(expected.iter().map(String::as_str)) {
            return Err(CliError::parse(
                origin,
                format!(
                    "header must be {}, found {}",
                    expected.join(","),
                    header.iter().collect::<Vec<_>>().join(",")
                ),
            ));
        }
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| CliError::parse(origin, e))?;
            let vals = rec
                .iter()
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| CliError::parse(origin, format!("row {}: {e}", line + 1)))?;
            table.rows.push(FrontRow {
                x: vals[..n].to_vec(),
                f: vals[n..n + q].to_vec(),
                viol: vals[n + q],
            });
        }
        Ok(table)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.render().as_bytes())
    }
}
