use mintaylor::Format;
use serde_json::Value;

use crate::Status;

/// What `main` prints: the rendered document plus an exit status.
#[derive(Debug)]
pub struct Rendered {
    pub text: String,
    pub status: Status,
    pub warnings: Vec<String>,
}

/// One command result in all three shapes.
#[derive(Debug, Default)]
pub struct View {
    pub human: String,
    pub structured: Value,
    /// `# key: value` lines before the table.
    pub comments: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl View {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Structured => {
                let mut s =
                    serde_json::to_string_pretty(&self.structured).expect("value serializes");
                s.push('\n');
                s
            }
            Format::Tabular => {
                let mut out = String::new();
                for c in &self.comments {
                    out.push_str("# ");
                    out.push_str(c);
                    out.push('\n');
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
                out
            }
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; cols];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if i + 1 < row.len() {
                line.push_str(&" ".repeat(widths[i] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}
