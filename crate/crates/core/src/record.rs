use std::fmt::Write as _;

/// Ordered name → value map produced by indicator operations.
///
/// Insertion order is serialization order. Inserting an existing name
/// overwrites its value in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IndicatorRecord {
    entries: Vec<(String, f64)>,
}

impl IndicatorRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, value: f64) {
        let name = name.into();
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), *v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn extend(&mut self, other: &IndicatorRecord) {
        for (n, v) in other.iter() {
            self.insert(n, v);
        }
    }

    /// Long format: a `name,value` header then one line per entry.
    pub fn to_long_csv(&self) -> String {
        let mut out = String::from("name,value\n");
        for (n, v) in self.iter() {
            let _ = writeln!(out, "{n},{}", format_value(v));
        }
        out
    }

    /// Wide format: one header line of names, one line of values.
    pub fn to_wide_csv(&self) -> String {
        let header: Vec<&str> = self.names().collect();
        let values: Vec<String> = self.iter().map(|(_, v)| format_value(v)).collect();
        format!("{}\n{}\n", header.join(","), values.join(","))
    }
}

impl FromIterator<(String, f64)> for IndicatorRecord {
    fn from_iter<I: IntoIterator<Item = (String, f64)>>(iter: I) -> Self {
        let mut r = IndicatorRecord::new();
        for (n, v) in iter {
            r.insert(n, v);
        }
        r
    }
}

/// Shortest round-trip decimal; `NaN`, `inf`, `-inf` for non-finite values.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v}")
    }
}
