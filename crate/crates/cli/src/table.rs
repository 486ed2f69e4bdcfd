//! Row-oriented reports rendered as text, CSV or JSON.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Str(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // Rust's float Display is the shortest string that round-trips.
            Cell::Float(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Str(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::text).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([c.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:<w$}"))
                .collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        let mut out = line(self.columns.clone());
        for r in &cells {
            out += &line(r.iter().map(String::as_str).collect());
        }
        for note in &self.notes {
            out += &format!("# {note}\n");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let escape = |s: String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        };
        let mut out = self.columns.join(",") + "\n";
        for r in &self.rows {
            let fields: Vec<String> = r.iter().map(|c| escape(c.text())).collect();
            out += &(fields.join(",") + "\n");
        }
        out
    }

    pub fn to_json(&self, inputs: Value) -> String {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "inputs": inputs,
            "results": results,
            "notes": self.notes,
            "versions": {
                "library": env!("CARGO_PKG_VERSION"),
                "format": crate::REPORT_FORMAT_VERSION,
            },
        });
        serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["m", "p"]);
        t.push(vec![0usize.into(), "2/3".into()]);
        t.push(vec![1usize.into(), Cell::Float(0.1)]);
        t.notes.push("hello".into());
        t
    }

    #[test]
    fn text_layout() {
        assert_eq!(sample().to_text(), "m  p\n0  2/3\n1  0.1\n# hello\n");
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().to_csv(), "m,p\n0,2/3\n1,0.1\n");
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().to_json(json!({"seed": 0}))).unwrap();
        assert_eq!(v["results"][0]["p"], "2/3");
        assert_eq!(v["results"][1]["p"], 0.1);
        assert_eq!(v["inputs"]["seed"], 0);
        assert!(v["versions"]["library"].is_string());
    }
}
