//! Resolved run configuration: an ordered key-value list that every command
//! echoes into its output and that round-trips losslessly through the text
//! form.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pairs: Vec<(String, String)>,
}

impl RunConfig {
    pub fn new(subcommand: &str) -> Self {
        let mut cfg = RunConfig { pairs: Vec::new() };
        cfg.set("subcommand", subcommand);
        cfg
    }

    pub fn set(&mut self, key: &str, value: impl std::fmt::Display) {
        let value = value.to_string();
        debug_assert!(!key.contains(" = ") && !key.contains('\n'));
        debug_assert!(!value.contains('\n'));
        self.pairs.push((key.to_string(), value));
    }

    pub fn set_opt(&mut self, key: &str, value: Option<impl std::fmt::Display>) {
        if let Some(v) = value {
            self.set(key, v);
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// One `key = value` line per entry.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.pairs {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped
    /// (so an echoed header pasted from a report works after stripping the
    /// leading `# `, and bare kv files work as-is).
    pub fn from_kv(text: &str) -> Result<Self, String> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
            pairs.push((k.to_string(), v.to_string()));
        }
        Ok(RunConfig { pairs })
    }

    /// The same lines prefixed with `# `, ready to embed in reports and
    /// generated files.
    pub fn echo_comments(&self) -> String {
        self.to_kv().lines().map(|l| format!("# {l}\n")).collect()
    }
}
