use std::io::{self, Write};

use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};
use stacky_core::exact::BigRational;

/// Significant digits for every decimal cell.
pub const SIG_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i128),
    Decimal(f64),
    Rational(BigRational),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Decimal(x) => decimal(*x),
            Cell::Rational(r) => decimal(r.to_f64().unwrap_or(f64::NAN)),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => number(&n.to_string()),
            Cell::Decimal(x) if x.is_finite() => number(&decimal(*x)),
            Cell::Decimal(_) | Cell::Empty => Value::Null,
            Cell::Rational(r) => {
                let mut m = Map::new();
                m.insert("num".into(), number(&r.numer().to_string()));
                m.insert("den".into(), number(&r.denom().to_string()));
                Value::Object(m)
            }
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

fn number(s: &str) -> Value {
    Value::Number(s.parse::<Number>().expect("formatted number"))
}

/// `x` rounded to [`SIG_DIGITS`] significant digits.
pub fn decimal(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&exp) {
        return format!("{:.*e}", SIG_DIGITS - 1, x);
    }
    let frac = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.frac$}");
    // rounding may carry into a new leading digit
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// A table with a fixed column order.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputRecord {
    pub schema: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Emit a single JSON object instead of an array.
    pub single: bool,
    /// Columns left out of JSON output.
    pub json_skip: Vec<&'static str>,
}

impl OutputRecord {
    pub fn new(schema: &'static str, columns: &[&'static str]) -> Self {
        OutputRecord {
            schema,
            columns: columns.to_vec(),
            rows: Vec::new(),
            single: false,
            json_skip: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width for {}",
            self.schema
        );
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let objects: Vec<Value> = self.rows.iter().map(|r| self.object(r)).collect();
                let v = match (self.single, objects.len()) {
                    (true, 1) => objects.into_iter().next().unwrap(),
                    _ => Value::Array(objects),
                };
                writeln!(out, "{v}")?;
            }
        }
        Ok(())
    }

    fn object(&self, row: &[Cell]) -> Value {
        let mut m = Map::new();
        for (c, cell) in self.columns.iter().zip(row) {
            if self.json_skip.contains(c) {
                continue;
            }
            m.insert((*c).to_string(), cell.json());
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(decimal(2.123302948723), "2.12330294872");
        assert_eq!(decimal(1.0), "1");
        assert_eq!(decimal(0.0275816494453843), "0.0275816494454");
        assert_eq!(decimal(1234567.0), "1234567");
        assert_eq!(decimal(99999.99999999999), "100000");
        assert_eq!(decimal(1e-9), "1.00000000000e-9");
        assert_eq!(decimal(-0.5), "-0.5");
        assert_eq!(decimal(f64::NAN), "");
    }

    #[test]
    fn csv_and_json() {
        let mut r = OutputRecord::new("demo", &["T", "x", "q"]);
        r.single = true;
        r.push(vec![
            Cell::Int(4),
            Cell::Decimal(0.5),
            Cell::Rational(BigRational::new(3.into(), 6.into())),
        ]);
        let mut buf = Vec::new();
        r.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "T,x,q\n4,0.5,0.5\n");
        let mut buf = Vec::new();
        r.write(Format::Json, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"T\":4,\"x\":0.5,\"q\":{\"num\":1,\"den\":2}}\n"
        );
    }
}
