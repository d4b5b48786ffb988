//! Report rendering shared by every subcommand.

use serde_json::{Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Identifies the run; printed at the top of every report.
#[derive(Clone, Debug)]
pub struct Header {
    pub seed: u64,
    pub config: Vec<String>,
}

impl Header {
    pub fn line(&self) -> String {
        format!("# taquin {} seed={} config={}", env!("CARGO_PKG_VERSION"), self.seed, self.config.join(" "))
    }

    fn json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("tool".into(), "taquin".into());
        m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        m.insert("seed".into(), self.seed.into());
        m.insert("config".into(), self.config.clone().into());
        m
    }
}

/// A report in all three shapes; the text lines and the JSON body are
/// built side by side by each command.
#[derive(Default, Debug)]
pub struct Report {
    pub text: Vec<String>,
    pub json: Map<String, Value>,
    /// Column names and rows, when the report is naturally a table.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.to_string(), v.into());
    }

    pub fn render(&self, header: &Header, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = header.line();
                out.push('\n');
                for l in &self.text {
                    out.push_str(l);
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut m = header.json();
                m.extend(self.json.clone());
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                match &self.table {
                    Some((cols, rows)) => {
                        w.write_record(cols).expect("in-memory write");
                        for r in rows {
                            w.write_record(r).expect("in-memory write");
                        }
                    }
                    None => {
                        w.write_record(["key", "value"]).expect("in-memory write");
                        for (k, v) in &self.json {
                            let v = match v {
                                Value::String(s) => s.clone(),
                                other => other.to_string(),
                            };
                            w.write_record([k.as_str(), v.as_str()]).expect("in-memory write");
                        }
                    }
                }
                let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8");
                format!("{}\n{}", header.line(), body)
            }
        }
    }
}
