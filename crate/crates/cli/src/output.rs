//! Tables rendered as aligned text or as CSV.

use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Right-aligned columns, 6 significant digits.
    Text,
    /// Comma-separated with a header row, 15 significant digits.
    Csv,
}

impl Format {
    fn digits(self) -> usize {
        match self {
            Format::Text => 6,
            Format::Csv => 15,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn render(&self, digits: usize) -> String {
        match self {
            Cell::Num(v) => format_general(*v, digits),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// `%g`-style formatting: `digits` significant digits, trailing zeros
/// dropped, scientific notation outside `1e-4 ≤ |v| < 10^digits`.
pub fn format_general(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One block of output: a header row, data rows and `#` note lines.
#[derive(Debug, Clone, Default)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<Cell>>,
    notes: Vec<String>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    fn write_csv(&self, out: &mut Vec<u8>) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(Format::Csv.digits())))?;
        }
        out.extend(w.into_inner().map_err(|e| e.into_error())?);
        Ok(())
    }

    fn write_text(&self, out: &mut Vec<u8>) -> io::Result<()> {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.render(Format::Text.digits())).collect())
            .collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([self.headers[j].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |fields: &[String]| {
            let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:>w$}")).collect();
            padded.join("  ")
        };
        writeln!(out, "{}", line(&self.headers))?;
        for row in &cells {
            writeln!(out, "{}", line(row))?;
        }
        Ok(())
    }

    pub fn render(&self, format: Format, out: &mut Vec<u8>) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out)?,
            Format::Text => self.write_text(out)?,
        }
        for note in &self.notes {
            writeln!(out, "# {note}")?;
        }
        Ok(())
    }
}

/// Tables separated by blank lines.
pub fn render(tables: &[Table], format: Format) -> io::Result<Vec<u8>> {
    let mut out = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push(b'\n');
        }
        t.render(format, &mut out)?;
    }
    Ok(out)
}
