//! Table model shared by the CSV and JSON emitters.
//!
//! CSV: header row, comma separator, LF line endings. JSON: an array of
//! objects, one per row, keys in column order. Exact integers are carried
//! as full decimal strings in both formats so no magnitude is ever rounded.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Index(usize),
    Text(String),
    Float(f64),
    Bool(bool),
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    write!(w, ",")?;
                }
                first = false;
                write!(w, "{}", cell.plain())?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "[")?;
        for (r, row) in self.rows.iter().enumerate() {
            write!(w, "  {{")?;
            for (c, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if c > 0 {
                    write!(w, ",")?;
                }
                write!(w, " \"{name}\": {}", cell.json())?;
            }
            let comma = if r + 1 < self.rows.len() { "," } else { "" };
            writeln!(w, " }}{comma}")?;
        }
        writeln!(w, "]")
    }
}

impl Cell {
    /// Bare CSV rendering. Floats use the shortest digits that round-trip.
    fn plain(&self) -> String {
        match self {
            Self::Index(v) => v.to_string(),
            Self::Text(s) => s.clone(),
            Self::Float(x) => x.to_string(),
            Self::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Self::Text(s) => {
                let mut out = String::with_capacity(s.len() + 2);
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
                out
            }
            other => other.plain(),
        }
    }
}
