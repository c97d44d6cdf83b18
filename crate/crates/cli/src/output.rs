use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// CSV number in scientific notation with `digits` significant digits.
pub fn sci(value: f64, digits: u8) -> String {
    format!("{:.*e}", usize::from(digits.max(1)) - 1, value)
}

/// Header plus rows, rendered with RFC 4180 quoting.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer
            .write_record(&self.header)
            .and_then(|_| self.rows.iter().try_for_each(|r| writer.write_record(r)))
            .expect("writing CSV to memory");
        String::from_utf8(writer.into_inner().expect("flushing CSV to memory"))
            .expect("CSV fields are UTF-8")
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report is serializable");
    text.push('\n');
    text
}

/// Writes `body` to `path`, or to standard output when no path is set.
pub fn emit(body: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, body).map_err(CliError::Output),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(CliError::Output)
        }
    }
}
