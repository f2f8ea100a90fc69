//! Config files (JSON or `key = value` lines) and flag overrides.

use std::fs;
use std::path::Path;

use serde_json::{Map, Number, Value};
use subadd::geometry::SuiteConfig;

#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub p: Option<u32>,
    pub r: Option<u32>,
    pub base: Option<u32>,
    pub ext: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub corpus_size: Option<usize>,
    pub window: Option<[i32; 2]>,
    pub census_window: Option<[i32; 2]>,
    pub rgap: Option<usize>,
    pub sumcap: Option<usize>,
    pub max_dim: Option<usize>,
}

fn scalar(raw: &str) -> Result<Value, String> {
    let raw = raw.trim();
    if raw.is_empty() || raw == "none" || raw == "null" {
        return Ok(Value::Null);
    }
    if let Ok(v) = raw.parse::<i64>() {
        return Ok(Value::Number(Number::from(v)));
    }
    if let Ok(v) = raw.parse::<u64>() {
        return Ok(Value::Number(Number::from(v)));
    }
    Err(format!("not an integer: {raw:?}"))
}

fn value(raw: &str) -> Result<Value, String> {
    let raw = raw.trim().trim_start_matches('[').trim_end_matches(']');
    if raw.contains(',') {
        raw.split(',').map(scalar).collect::<Result<Vec<_>, _>>().map(Value::Array)
    } else {
        scalar(raw)
    }
}

/// `key = value` lines; `#` starts a comment; lists are comma separated.
pub fn parse_key_values(text: &str) -> Result<SuiteConfig, String> {
    let mut map = Map::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, raw) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
        let key = key.trim().replace('-', "_");
        let mut v = value(raw).map_err(|e| format!("line {}: {e}", n + 1))?;
        if key == "extension_degrees" && v.is_number() {
            v = Value::Array(vec![v]);
        }
        map.insert(key, v);
    }
    serde_json::from_value(Value::Object(map)).map_err(|e| e.to_string())
}

pub fn parse_config(text: &str) -> Result<SuiteConfig, String> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| e.to_string())
    } else {
        parse_key_values(text)
    }
}

pub fn load(path: Option<&Path>) -> Result<SuiteConfig, String> {
    match path {
        None => Ok(SuiteConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_config(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

pub fn apply(mut c: SuiteConfig, o: &Overrides) -> SuiteConfig {
    if let Some(v) = o.p {
        c.p = v;
    }
    if let Some(v) = o.r {
        c.r = v;
    }
    if let Some(v) = o.base {
        c.base_degree = v;
    }
    if let Some(v) = &o.ext {
        c.extension_degrees = v.clone();
    }
    if let Some(v) = o.seed {
        c.seed = v;
    }
    if let Some(v) = o.corpus_size {
        c.corpus_size = v;
    }
    if let Some(v) = o.window {
        c.window = v;
    }
    if let Some(v) = o.census_window {
        c.census_window = v;
    }
    if o.rgap.is_some() {
        c.r_gap = o.rgap;
    }
    if let Some(v) = o.sumcap {
        c.sum_cap = v;
    }
    if o.max_dim.is_some() {
        c.max_dim = o.max_dim;
    }
    c
}

/// `lo,hi` or `[lo,hi]`.
pub fn parse_window(s: &str) -> Result<[i32; 2], String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected lo,hi but got {s:?}"));
    }
    let lo = parts[0].trim().parse::<i32>().map_err(|e| e.to_string())?;
    let hi = parts[1].trim().parse::<i32>().map_err(|e| e.to_string())?;
    Ok([lo, hi])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_values() {
        let c = parse_config("p = 3\nr=2 # rank\nextension_degrees = 1\nwindow = -6,8\nr_gap = 6\n").unwrap();
        assert_eq!((c.p, c.r), (3, 2));
        assert_eq!(c.extension_degrees, vec![1]);
        assert_eq!(c.window, [-6, 8]);
        assert_eq!(c.r_gap, Some(6));
        assert_eq!(c.seed, 0);
    }

    #[test]
    fn json_and_unknown_keys() {
        let c = parse_config(r#"{"p": 2, "r": 3, "extension_degrees": [1]}"#).unwrap();
        assert_eq!(c.r, 3);
        assert!(parse_config("colour = 3").is_err());
        assert!(parse_config("p = two").is_err());
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("-3,3").unwrap(), [-3, 3]);
        assert_eq!(parse_window("[-6, 8]").unwrap(), [-6, 8]);
        assert!(parse_window("3").is_err());
    }

    #[test]
    fn overrides_win() {
        let o = Overrides { r: Some(3), ext: Some(vec![1]), ..Default::default() };
        let c = apply(SuiteConfig::default(), &o);
        assert_eq!(c.r, 3);
        assert_eq!(c.extension_degrees, vec![1]);
        assert_eq!(c.p, 2);
    }
}
