use std::io::Write;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl Cell {
    /// 17 significant digits, enough to round-trip any `f64`.
    fn csv_field(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        w.flush()?;
        Ok(())
    }

    /// One object per row, keyed by the header.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.header.iter().cloned().zip(row.iter().map(Cell::json_value)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// What a command produces: always a table, optionally a richer JSON
/// document that replaces it in JSON mode.
pub struct Rendered {
    pub table: Table,
    pub json: Option<Value>,
}

impl From<Table> for Rendered {
    fn from(table: Table) -> Self {
        Self { table, json: None }
    }
}

impl Rendered {
    pub fn write<W: Write>(&self, mut out: W, format: Format) -> Result<(), CliError> {
        match format {
            Format::Csv => self.table.write_csv(out),
            Format::Json => {
                let value = self.json.clone().unwrap_or_else(|| self.table.to_json());
                serde_json::to_writer_pretty(&mut out, &value).map_err(|e| match e.io_error_kind() {
                    Some(std::io::ErrorKind::BrokenPipe) => CliError::BrokenPipe,
                    _ => CliError::Output(e.to_string()),
                })?;
                writeln!(out)?;
                Ok(())
            }
        }
    }
}
