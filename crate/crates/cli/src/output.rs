//! Output formatting: RFC-4180-style CSV with doubles at 17 significant
//! digits (round-trip exact), and JSON records.

/// 17 significant digits preserves every f64 exactly.
pub fn f64_field(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn opt_f64_field(x: Option<f64>) -> String {
    x.map(f64_field).unwrap_or_default()
}

pub fn opt_usize_field(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Quotes a field when it contains a comma, quote, or newline.
pub fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_escape(f))
        .collect::<Vec<_>>()
        .join(",")
}
