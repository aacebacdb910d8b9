use serde_json::Value;

use crate::OutFormat;

/// The outcome of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: Vec<String>,
    /// `Some(false)` when an identity that was checked does not hold.
    pub verified: Option<bool>,
}

impl Report {
    pub fn new(json: Value, text: Vec<String>) -> Self {
        Report { json, text, verified: None }
    }

    pub fn checked(json: Value, text: Vec<String>, holds: bool) -> Self {
        Report { json, text, verified: Some(holds) }
    }

    /// Compact JSON or the text lines, newline-terminated. Object keys are sorted, so the
    /// output is a function of the input alone.
    pub fn render(&self, format: OutFormat) -> String {
        match format {
            OutFormat::Json => format!("{}\n", self.json),
            OutFormat::Text => self.text.iter().map(|l| format!("{l}\n")).collect(),
        }
    }
}

pub fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "FAILS"
    }
}

/// `degrees 0..k` for a list of `k + 1` values.
pub fn degree_range(len: usize) -> String {
    match len {
        0 => "no degrees".into(),
        1 => "degree 0".into(),
        n => format!("degrees 0..{}", n - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn compact_json() {
        let r = Report::new(json!({"dims": [1, 3, 0]}), vec!["x".into()]);
        assert_eq!(r.render(OutFormat::Json), "{\"dims\":[1,3,0]}\n");
        assert_eq!(r.render(OutFormat::Text), "x\n");
        assert_eq!(degree_range(3), "degrees 0..2");
    }
}
