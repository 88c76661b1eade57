//! Run configuration and deterministic tabular output.
//!
//! Every command produces a [`Report`] (one or more named column tables)
//! rendered to CSV or JSON. Numeric cells carry their own count of
//! reliable significant digits so nothing is printed beyond what the
//! tracked accumulation error supports. Identical configurations render
//! byte-identical output apart from the optional timestamp line.

use crate::error::{Error, Result};
use crate::precision::Ctx;
use crate::series::Model;
use chrono::{SecondsFormat, Utc};
use rug::{Float, Rational};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Serialization target for a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config {
                message: format!("unknown output format '{other}' (expected csv or json)"),
            }),
        }
    }
}

/// Everything a command run depends on.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Model,
    pub order: u32,
    pub beta: Rational,
    pub precision: u32,
    pub m2_list: Vec<Float>,
    pub output_format: OutputFormat,
    pub cache_path: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults: β = 2, precision 80, CSV, no masses, no cache.
    pub fn new(model: Model, order: u32) -> Self {
        RunConfig {
            model,
            order,
            beta: Rational::from(2),
            precision: 80,
            m2_list: Vec::new(),
            output_format: OutputFormat::Csv,
            cache_path: None,
        }
    }

    /// Checks the numeric invariants: precision at least 30 (60 beyond
    /// order 100) and positive β.
    pub fn validate(&self) -> Result<()> {
        if self.precision < 30 {
            return Err(Error::Config {
                message: format!("precision {} is below the minimum of 30", self.precision),
            });
        }
        if self.order > 100 && self.precision < 60 {
            return Err(Error::Config {
                message: format!(
                    "order {} needs precision of at least 60, got {}",
                    self.order, self.precision
                ),
            });
        }
        if self.beta <= 0 {
            return Err(Error::Config {
                message: format!("beta = {} must be positive", self.beta),
            });
        }
        Ok(())
    }

    /// Working precision context for this run.
    pub fn ctx(&self) -> Ctx {
        Ctx::new(self.precision)
    }
}

/// One output cell: verbatim text or a number with its reliable digits.
#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Number { value: Float, digits: usize },
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn integer(n: u64) -> Self {
        Cell::Text(n.to_string())
    }

    pub fn number(value: &Float, digits: usize) -> Self {
        Cell::Number { value: value.clone(), digits: digits.max(1) }
    }
}

/// A named column of cells.
#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub cells: Vec<Cell>,
}

/// A named table assembled column-wise.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
}

impl Table {
    pub fn new(name: impl Into<String>) -> Self {
        Table { name: name.into(), columns: Vec::new() }
    }

    pub fn add_column(&mut self, name: impl Into<String>, cells: Vec<Cell>) {
        self.columns.push(Column { name: name.into(), cells });
    }

    fn rows(&self) -> usize {
        self.columns.iter().map(|c| c.cells.len()).max().unwrap_or(0)
    }
}

/// A command's full output: one or more tables, rendered in order.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub tables: Vec<Table>,
}

impl Report {
    pub fn single(table: Table) -> Self {
        Report { tables: vec![table] }
    }
}

/// Reliable significant digits of a value given an absolute error bound,
/// clamped to what the working precision can honestly support.
pub fn reliable_digits(ctx: &Ctx, value: &Float, err: &Float) -> usize {
    let cap = ctx.digits().saturating_sub(10) as usize;
    if value.is_zero() {
        return 1;
    }
    if err.is_zero() || err.is_sign_negative() {
        return cap.max(1);
    }
    let ratio = value.clone().abs() / err;
    if ratio <= 1u32 {
        return 1;
    }
    let d = ratio.log10().to_f64().floor() as i64 - 1;
    d.clamp(1, cap.max(1) as i64) as usize
}

/// Formats a number with `digits` significant digits in the output
/// dialect: '.' decimal separator, plain notation for |v| in
/// [10⁻⁴, 10⁶), otherwise "dE±x" scientific.
pub fn format_number(value: &Float, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let digits = digits.max(1);
    // rug's exponential format takes total significant digits
    let sci = format!("{:.*e}", digits, value);
    let (mantissa, exp_str) = sci.split_once('e').expect("exponential form");
    let exp: i64 = exp_str.parse().expect("exponent");
    let neg = mantissa.starts_with('-');
    let digs: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if neg { "-" } else { "" };
    if (-4..6).contains(&exp) {
        let body = if exp >= 0 {
            let int_len = (exp + 1) as usize;
            if digs.len() <= int_len {
                let mut s = digs.clone();
                s.push_str(&"0".repeat(int_len - digs.len()));
                s
            } else {
                format!("{}.{}", &digs[..int_len], &digs[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digs)
        };
        format!("{sign}{body}")
    } else {
        let head = &digs[..1];
        let tail = &digs[1..];
        let mant = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
        format!("{sign}{mant}E{}{}", if exp < 0 { "-" } else { "+" }, exp.abs())
    }
}

fn format_cell(cell: &Cell) -> String {
    match cell {
        Cell::Text(s) => s.clone(),
        Cell::Number { value, digits } => format_number(value, *digits),
    }
}

fn timestamp_now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
}

fn render_csv(report: &Report, timestamp: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(ts) = timestamp {
        out.push_str(&format!("# generated: {ts}\n"));
    }
    for (i, table) in report.tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("# table: {}\n", table.name));
        let header: Vec<&str> = table.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in 0..table.rows() {
            let cells: Vec<String> = table
                .columns
                .iter()
                .map(|c| c.cells.get(row).map(format_cell).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }
    out
}

fn render_json(report: &Report, timestamp: Option<&str>) -> String {
    use serde_json::{Map, Value};
    let mut root = Map::new();
    if let Some(ts) = timestamp {
        root.insert("generated".into(), Value::String(ts.into()));
    }
    let tables: Vec<Value> = report
        .tables
        .iter()
        .map(|t| {
            let mut obj = Map::new();
            obj.insert("name".into(), Value::String(t.name.clone()));
            let mut cols = Map::new();
            for c in &t.columns {
                let cells: Vec<Value> =
                    c.cells.iter().map(|cell| Value::String(format_cell(cell))).collect();
                cols.insert(c.name.clone(), Value::Array(cells));
            }
            obj.insert("columns".into(), Value::Object(cols));
            Value::Object(obj)
        })
        .collect();
    root.insert("tables".into(), Value::Array(tables));
    let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json render");
    s.push('\n');
    s
}

/// Renders a report in the requested format; the timestamp line is
/// emitted only when `with_timestamp` is set.
pub fn render(report: &Report, format: OutputFormat, with_timestamp: bool) -> String {
    let ts = if with_timestamp { Some(timestamp_now()) } else { None };
    match format {
        OutputFormat::Csv => render_csv(report, ts.as_deref()),
        OutputFormat::Json => render_json(report, ts.as_deref()),
    }
}
