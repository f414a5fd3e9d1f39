use serde_json::{Map, Value};

use super::config::{Format, Resolved};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    Text(&'static str),
    Count(usize),
    /// Not applicable for this row.
    Na,
}

/// Twelve significant digits, scientific notation.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        "nan".into()
    }
}

fn json_num(x: f64) -> Value {
    // Round through the fixed text form so JSON and CSV carry the same digits.
    fmt_num(x).parse::<f64>().ok().filter(|v| v.is_finite()).map_or(Value::Null, Value::from)
}

/// Column-oriented result with optional summary lines.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// `(key, value)` pairs written as `# key: value` comments in CSV and as
    /// top-level members in JSON.
    pub summary: Vec<(&'static str, Vec<(&'static str, Cell)>)>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new(), summary: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, config: &Resolved) -> String {
        match config.format {
            Format::Csv => self.csv(config),
            Format::Json => self.json(config),
        }
    }

    fn csv(&self, config: &Resolved) -> String {
        let cell = |c: &Cell| match c {
            Cell::Num(x) => fmt_num(*x),
            Cell::Flag(b) => b.to_string(),
            Cell::Text(s) => s.to_string(),
            Cell::Count(n) => n.to_string(),
            Cell::Na => "NA".into(),
        };
        let mut out = format!("# config: {}\n", serde_json::to_string(config).expect("config serializes"));
        for (key, fields) in &self.summary {
            let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
            out.push_str(&format!("# {key}: {}\n", body.join(",")));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(cell).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    fn json(&self, config: &Resolved) -> String {
        let cell = |c: &Cell| match c {
            Cell::Num(x) => json_num(*x),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Text(s) => Value::from(*s),
            Cell::Count(n) => Value::from(*n),
            Cell::Na => Value::Null,
        };
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().zip(row).map(|(k, v)| (k.to_string(), cell(v))).collect()))
            .collect();
        let value = if self.summary.is_empty() {
            Value::Array(records)
        } else {
            let mut obj = Map::new();
            obj.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
            for (key, fields) in &self.summary {
                let inner = fields.iter().map(|(k, v)| (k.to_string(), cell(v))).collect();
                obj.insert(key.to_string(), Value::Object(inner));
            }
            obj.insert("rows".into(), Value::Array(records));
            Value::Object(obj)
        };
        let mut s = serde_json::to_string_pretty(&value).expect("table serializes");
        s.push('\n');
        s
    }
}
