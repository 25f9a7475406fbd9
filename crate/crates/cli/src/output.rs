use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Tabular part of a document, e.g. one row per twist.
pub struct Rows {
    pub key: &'static str,
    pub columns: Vec<&'static str>,
    pub data: Vec<Vec<Value>>,
}

/// An operation's result: ordered fields, where each number came from, and
/// which hypotheses were used and who supplied them.
pub struct Doc {
    command: &'static str,
    fields: Map<String, Value>,
    sources: Map<String, Value>,
    hypotheses: Map<String, Value>,
    rows: Option<Rows>,
}

impl Doc {
    pub fn new(command: &'static str) -> Self {
        Doc {
            command,
            fields: Map::new(),
            sources: Map::new(),
            hypotheses: Map::new(),
            rows: None,
        }
    }

    /// A computed value and the route that produced it.
    pub fn field(&mut self, key: &str, value: impl Into<Value>, source: &str) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self.sources.insert(key.into(), source.into());
        self
    }

    /// An input echoed back.
    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn hypothesis(&mut self, key: &str, value: impl Into<Value>, from: &str) -> &mut Self {
        self.hypotheses
            .insert(key.into(), json!({ "value": value.into(), "from": from }));
        self
    }

    pub fn rows(&mut self, rows: Rows, source: &str) -> &mut Self {
        self.sources.insert(rows.key.into(), source.into());
        self.rows = Some(rows);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Table => self.table(),
        }
    }

    fn json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), self.command.into());
        obj.extend(self.fields.clone());
        if let Some(rows) = &self.rows {
            let data = rows
                .data
                .iter()
                .map(|row| {
                    let cells = rows
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.clone()));
                    Value::Object(cells.collect())
                })
                .collect();
            obj.insert(rows.key.into(), Value::Array(data));
        }
        obj.insert("sources".into(), Value::Object(self.sources.clone()));
        obj.insert("hypotheses".into(), Value::Object(self.hypotheses.clone()));
        let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
        out.push('\n');
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.rows {
            Some(rows) => {
                w.write_record(&rows.columns).expect("csv");
                for row in &rows.data {
                    w.write_record(row.iter().map(cell)).expect("csv");
                }
            }
            None => {
                w.write_record(["key", "value", "source"]).expect("csv");
                for (k, v) in &self.fields {
                    w.write_record([k.as_str(), &cell(v), &source_of(&self.sources, k)])
                        .expect("csv");
                }
                for (k, h) in &self.hypotheses {
                    let from = format!("hypothesis: {}", cell(&h["from"]));
                    w.write_record([k.as_str(), &cell(&h["value"]), &from])
                        .expect("csv");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }

    fn table(&self) -> String {
        let mut lines: Vec<[String; 3]> = self
            .fields
            .iter()
            .map(|(k, v)| [k.clone(), cell(v), source_of(&self.sources, k)])
            .collect();
        for (k, h) in &self.hypotheses {
            lines.push([
                k.clone(),
                cell(&h["value"]),
                format!("hypothesis, {}", cell(&h["from"])),
            ]);
        }
        let mut out = String::new();
        out.push_str(&align(
            &lines.iter().map(|l| l.to_vec()).collect::<Vec<_>>(),
        ));
        if let Some(rows) = &self.rows {
            if !out.is_empty() {
                out.push('\n');
            }
            let mut grid = vec![rows.columns.iter().map(|c| c.to_string()).collect()];
            grid.extend(rows.data.iter().map(|r| r.iter().map(cell).collect()));
            out.push_str(&align(&grid));
        }
        out
    }
}

fn source_of(sources: &Map<String, Value>, key: &str) -> String {
    sources.get(key).map(cell).unwrap_or_default()
}

/// Cell text: strings bare, unknown values as `?`, the rest as compact JSON.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "?".into(),
        other => other.to_string(),
    }
}

fn align(grid: &[Vec<String>]) -> String {
    let ncols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| {
            grid.iter()
                .filter_map(|r| r.get(j))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in grid {
        let mut line = String::new();
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            line.push_str(c);
            line.extend(std::iter::repeat_n(' ', widths[j] - c.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
