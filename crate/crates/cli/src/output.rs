//! Report emission: pretty JSON (the stable schema) and RFC 4180 CSV.

use std::fs;
use std::io::{self, Write};

use pdwbc_core::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{other}' (want json or csv)")),
        }
    }
}

/// Quote a CSV field per RFC 4180: wrap when it holds a comma, quote or
/// newline, doubling any interior quotes.
fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub fn csv_row(fields: &[&str]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text =
                serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&csv_row(&["name", "value", "status", "detail"]));
            out.push_str("\r\n");
            for r in &report.results {
                let status = match r.status {
                    pdwbc_core::report::CheckStatus::Ok => "ok",
                    pdwbc_core::report::CheckStatus::Fail => "fail",
                    pdwbc_core::report::CheckStatus::Info => "info",
                };
                out.push_str(&csv_row(&[&r.name, &r.value, status, &r.detail]));
                out.push_str("\r\n");
            }
            out
        }
    }
}

pub fn emit(text: &str, output: Option<&str>) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting_rules() {
        assert_eq!(csv_row(&["a", "b"]), "a,b");
        assert_eq!(csv_row(&["a,b", "c\"d"]), "\"a,b\",\"c\"\"d\"");
        assert_eq!(csv_row(&["line\nbreak"]), "\"line\nbreak\"");
    }
}
