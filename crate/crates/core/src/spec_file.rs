//! JSON channel files:
//!
//! ```json
//! { "label": "weak", "q": 1,
//!   "n11": ["1/10", "9/10"], "n12": ["0.7", "0.3"],
//!   "n21": ["7/10", "3/10"], "n22": [0.1, 0.9] }
//! ```
//!
//! Entries are `"a/b"` strings, decimal strings or plain JSON numbers; all
//! are read exactly from their digits. Errors name the line and field.

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::channel::{ChannelSpec, FadingPmf, Link};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub label: Option<String>,
    pub spec: ChannelSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    label: Option<String>,
    q: usize,
    #[serde(deserialize_with = "entries_n11")]
    n11: Vec<Rational>,
    #[serde(deserialize_with = "entries_n12")]
    n12: Vec<Rational>,
    #[serde(deserialize_with = "entries_n21")]
    n21: Vec<Rational>,
    #[serde(deserialize_with = "entries_n22")]
    n22: Vec<Rational>,
}

fn entries<'de, D: Deserializer<'de>>(d: D, field: &str) -> std::result::Result<Vec<Rational>, D::Error> {
    use serde::de::Error as _;
    let values = Vec::<Value>::deserialize(d)?;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let text = match v {
                Value::String(s) => s.clone(),
                // literal digits are kept by the arbitrary-precision feature
                Value::Number(n) => n.to_string(),
                other => return Err(D::Error::custom(format!("field {field}[{i}]: expected a rational, got {other}"))),
            };
            rational::parse(&text).map_err(|e| D::Error::custom(format!("field {field}[{i}]: {e}")))
        })
        .collect()
}

macro_rules! entries_for {
    ($($name:ident => $field:literal),*) => {$(
        fn $name<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            entries(d, $field)
        }
    )*};
}

entries_for!(entries_n11 => "n11", entries_n12 => "n12", entries_n21 => "n21", entries_n22 => "n22");

/// 1-based line of the first `"key"` in `text`, if any.
fn line_of_key(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

fn field_error(text: &str, field: &str, msg: impl std::fmt::Display) -> Error {
    match line_of_key(text, field) {
        Some(line) => Error::Parse(format!("line {line}, field {field}: {msg}")),
        None => Error::Parse(format!("field {field}: {msg}")),
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut pmfs = Vec::with_capacity(4);
    for (link, mass) in [(Link::N11, raw.n11), (Link::N12, raw.n12), (Link::N21, raw.n21), (Link::N22, raw.n22)] {
        let field = link.name().to_lowercase();
        if mass.len() != raw.q + 1 {
            return Err(field_error(
                text,
                &field,
                format!("has {} entries, expected q + 1 = {}", mass.len(), raw.q + 1),
            ));
        }
        pmfs.push(FadingPmf::new(mass).map_err(|e| field_error(text, &field, e))?);
    }
    let [n11, n12, n21, n22]: [FadingPmf; 4] = pmfs.try_into().expect("four links");
    let spec = ChannelSpec::new(n11, n12, n21, n22).map_err(|e| field_error(text, "q", e))?;
    Ok(SpecFile { label: raw.label, spec })
}

pub fn read_spec(path: &std::path::Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

#[derive(Serialize)]
struct RawSpecOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    q: usize,
    n11: Vec<String>,
    n12: Vec<String>,
    n21: Vec<String>,
    n22: Vec<String>,
}

/// Pretty JSON with canonical `"a/b"` strings.
pub fn to_json(spec: &ChannelSpec, label: Option<&str>) -> String {
    let strs = |link| spec.link(link).mass().iter().map(rational::format).collect();
    let out = RawSpecOut {
        label,
        q: spec.q(),
        n11: strs(Link::N11),
        n12: strs(Link::N12),
        n21: strs(Link::N21),
        n22: strs(Link::N22),
    };
    serde_json::to_string_pretty(&out).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::ratio;

    #[test]
    fn mixed_entry_forms() {
        let text = r#"{ "label": "weak", "q": 1,
            "n11": ["1/10", "9/10"], "n12": ["0.7", "0.3"],
            "n21": ["7/10", 0.3], "n22": [0.1, "9e-1"] }"#;
        let f = parse_spec(text).unwrap();
        assert_eq!(f.label.as_deref(), Some("weak"));
        assert_eq!(f.spec, corpus::c_weak1());
        assert_eq!(f.spec.link(Link::N12).mass()[1], ratio(3, 10));
    }

    #[test]
    fn round_trip() {
        for spec in [corpus::c_det(), corpus::c_mod1(), corpus::mixed_layers()] {
            assert_eq!(parse_spec(&to_json(&spec, Some("x"))).unwrap().spec, spec);
        }
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let text = "{\n \"q\": 1,\n \"n11\": [\"1/2\", \"1/2\"],\n \"n12\": [\"1/2\", \"1/3\"],\n \"n21\": [\"1\", \"0\"],\n \"n22\": [\"0\", \"1\"]\n}";
        let msg = parse_spec(text).unwrap_err().to_string();
        assert!(msg.contains("line 4") && msg.contains("n12"), "{msg}");

        let bad = text.replace("\"1/3\"", "\"x/3\"");
        let msg = parse_spec(&bad).unwrap_err().to_string();
        assert!(msg.contains("n12[1]") && msg.contains("line 4"), "{msg}");

        let empty = r#"{"q": 0, "n11": [], "n12": [], "n21": [], "n22": []}"#;
        assert!(matches!(parse_spec(empty), Err(Error::Parse(_))));
        assert!(matches!(parse_spec("{"), Err(Error::Parse(_))));
    }
}
