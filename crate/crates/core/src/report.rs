//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub expected: Option<String>,
    pub got: String,
    pub pass: bool,
}

impl Item {
    /// Exact comparison; both sides are rendered canonically.
    pub fn compare<T: fmt::Display + PartialEq>(name: impl Into<String>, expected: &T, got: &T) -> Self {
        Item {
            name: name.into(),
            expected: Some(expected.to_string()),
            got: got.to_string(),
            pass: expected == got,
        }
    }

    /// An outcome without a single expected value.
    pub fn outcome(name: impl Into<String>, got: impl Into<String>, pass: bool) -> Self {
        Item {
            name: name.into(),
            expected: None,
            got: got.into(),
            pass,
        }
    }

    /// A list of failures; passes when empty.
    pub fn none_of(name: impl Into<String>, failures: &[String]) -> Self {
        let got = if failures.is_empty() {
            "no mismatches".to_string()
        } else {
            format!("{} mismatch(es): {}", failures.len(), failures.join("; "))
        };
        Item::outcome(name, got, failures.is_empty())
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            items: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, item: Item) {
        if !item.pass {
            self.status = Status::Fail;
        }
        self.items.push(item);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| !i.pass)
    }

    /// Merge several reports into one suite, prefixing item names.
    pub fn combine(suite: impl Into<String>, parts: Vec<Report>) -> Report {
        let mut r = Report::new(suite);
        for p in parts {
            for (k, v) in p.params {
                r.params.insert(format!("{}.{}", p.suite, k), v);
            }
            for mut it in p.items {
                it.name = format!("{}: {}", p.suite, it.name);
                r.push(it);
            }
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One line per item, then a status line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for it in &self.items {
            let mark = if it.pass { "ok  " } else { "FAIL" };
            match &it.expected {
                Some(e) if !it.pass => s.push_str(&format!("{} {}: expected {} got {}\n", mark, it.name, e, it.got)),
                _ => s.push_str(&format!("{} {}: {}\n", mark, it.name, it.got)),
            }
        }
        s.push_str(&format!("{} {}\n", self.suite, self.status));
        s
    }
}
