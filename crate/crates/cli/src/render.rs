use serde_json::Value;

use crate::job::Format;

/// Everything a command emits: the JSON document and a flat table for the
/// `table` and `csv` formats.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub json: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Artifact {
    pub fn new(json: Value, columns: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self {
            json,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
            }
            Format::Table => table(&self.columns, &self.rows),
        }
    }
}

fn table(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(columns);
    out.push_str(&line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

/// Shortest decimal that parses back to the same `f64`.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn formats() {
        let a = Artifact::new(
            json!({"b": 1, "a": [0.5]}),
            &["n", "value"],
            vec![vec!["1".into(), "0.5".into()], vec!["10".into(), "2.0".into()]],
        );
        assert_eq!(a.render(Format::Json), "{\"b\":1,\"a\":[0.5]}\n");
        assert_eq!(a.render(Format::Csv), "n,value\n1,0.5\n10,2.0\n");
        assert_eq!(a.render(Format::Table), " n  value\n--  -----\n 1    0.5\n10    2.0\n");
        assert_eq!(real(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(real(2.0), "2.0");
    }
}
