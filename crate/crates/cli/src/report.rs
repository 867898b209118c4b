//! Line-oriented `KEY=VALUE` reports with the shared exit-code contract:
//! 0 for pass/true, 1 for fail/false with a witness, 2 for usage or input
//! errors.

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    lines: Vec<(String, String)>,
}

impl RunReport {
    pub fn new() -> Self {
        RunReport::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, other: RunReport) {
        self.lines.extend(other.lines);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_key_value_lines() {
        let mut r = RunReport::new();
        r.push("verdict", "choosable");
        r.push("candidates", 7);
        assert_eq!(r.render(), "verdict=choosable\ncandidates=7\n");
        assert_eq!(r.get("candidates"), Some("7"));
        assert_eq!(r.get("missing"), None);
    }
}
