//! Line-oriented `key = value` fixture files.
//!
//! ```text
//! name = a1
//! p = 3
//! vars = [x, y, z]
//! ideal = [x*y - z^2]
//! divisor = [(1/2, z)]
//! point = [0, 0, 0]
//! expect.f_pure = true
//! expect.notes = rational double point
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{Engine, Ideal};
use crate::poly::{Polynomial, Ring};
use crate::rational::Exact;
use crate::signature::{DivisorSpec, RingPresentation};

use super::expr::parse_expression;

const KEYS: &[&str] = &["name", "p", "vars", "ideal", "divisor", "point", "expect.f_pure", "expect.notes"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub f_pure: Option<bool>,
    pub notes: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub ring: Arc<Ring>,
    pub ideal: Vec<Polynomial>,
    pub divisor: Vec<(Exact, Polynomial)>,
    pub point: Option<Vec<u32>>,
    pub expect: Expectations,
}

struct Value<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Splits `[a, b, (c, d)]` at top-level commas, returning `(item, column)`.
fn list_items<'a>(v: &Value<'a>) -> Result<Vec<Value<'a>>> {
    let t = v.text;
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(Error::parse(v.line, v.column, "expected a bracketed list"));
    }
    let inner = &t[1..t.len() - 1];
    let base = v.column + 1;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let push = |from: usize, to: usize, out: &mut Vec<Value<'a>>| {
        let raw = &inner[from..to];
        let lead = raw.len() - raw.trim_start().len();
        let item = raw.trim();
        if !item.is_empty() {
            out.push(Value { text: item, line: v.line, column: base + inner[..from + lead].chars().count() });
        }
    };
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                push(start, i, &mut out);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::parse(v.line, base + inner[..i].chars().count(), "unbalanced ')'"));
        }
    }
    if depth != 0 {
        return Err(Error::parse(v.line, v.column, "unbalanced '('"));
    }
    push(start, inner.len(), &mut out);
    Ok(out)
}

fn parse_rational(v: &Value, p: u32) -> Result<Exact> {
    let r: Exact = v.text.parse().map_err(|_| Error::parse(v.line, v.column, format!("malformed rational {:?}", v.text)))?;
    if r.numer() < 0 {
        return Err(Error::parse(v.line, v.column, "divisor coefficients must be non-negative"));
    }
    if r.denom() % p as i64 == 0 {
        return Err(Error::parse(v.line, v.column, format!("denominator divisible by p = {p}")));
    }
    Ok(r)
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut values: HashMap<&str, Value> = HashMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(Error::parse(line, 1 + raw.len() - raw.trim_start().len(), "expected `key = value`"));
        };
        let key = raw[..eq].trim();
        let key_col = 1 + raw.len() - raw.trim_start().len();
        let Some(&key) = KEYS.iter().find(|k| **k == key) else {
            return Err(Error::parse(line, key_col, format!("unknown key {key:?}")));
        };
        if values.contains_key(key) {
            return Err(Error::parse(line, key_col, format!("duplicate key {key:?}")));
        }
        let after = &raw[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let column = raw[..eq + 1 + lead].chars().count() + 1;
        values.insert(key, Value { text: after.trim(), line, column });
    }
    let missing = |key: &str| Error::parse(last_line + 1, 1, format!("missing required key {key:?}"));

    let p_val = values.get("p").ok_or_else(|| missing("p"))?;
    let p: u32 = p_val
        .text
        .parse()
        .map_err(|_| Error::parse(p_val.line, p_val.column, format!("malformed modulus {:?}", p_val.text)))?;
    let vars_val = values.get("vars").ok_or_else(|| missing("vars"))?;
    let mut names = Vec::new();
    for item in list_items(vars_val)? {
        let ok = item.text.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && item.text.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::parse(item.line, item.column, format!("invalid variable name {:?}", item.text)));
        }
        names.push(item.text.to_string());
    }
    let ring = Ring::from_names(p, names).map_err(|e| {
        let (line, column) = match &e {
            Error::Usage(msg) if msg.contains("prime") || msg.contains("modulus") => (p_val.line, p_val.column),
            _ => (vars_val.line, vars_val.column),
        };
        Error::parse(line, column, e.to_string())
    })?;

    let mut ideal = Vec::new();
    if let Some(v) = values.get("ideal") {
        for item in list_items(v)? {
            ideal.push(parse_expression(item.text, &ring, item.line, item.column)?);
        }
    }

    let mut divisor = Vec::new();
    if let Some(v) = values.get("divisor") {
        for item in list_items(v)? {
            let t = item.text;
            if !t.starts_with('(') || !t.ends_with(')') {
                return Err(Error::parse(item.line, item.column, "expected `(rational, expression)`"));
            }
            let pair_text = format!("[{}]", &t[1..t.len() - 1]);
            let pair = list_items(&Value { text: &pair_text, line: item.line, column: item.column })?;
            if pair.len() != 2 {
                return Err(Error::parse(item.line, item.column, "expected `(rational, expression)`"));
            }
            let coefficient = parse_rational(&pair[0], p)?;
            let g = parse_expression(pair[1].text, &ring, pair[1].line, pair[1].column)?;
            if g.is_zero() {
                return Err(Error::parse(pair[1].line, pair[1].column, "divisor of the zero element"));
            }
            divisor.push((coefficient, g));
        }
    }

    let point = match values.get("point") {
        None => None,
        Some(v) => {
            let items = list_items(v)?;
            if items.len() != ring.nvars() {
                return Err(Error::parse(v.line, v.column, format!("point needs {} coordinates", ring.nvars())));
            }
            let mut coords = Vec::new();
            for item in items {
                let a: i64 = item
                    .text
                    .parse()
                    .map_err(|_| Error::parse(item.line, item.column, format!("malformed coordinate {:?}", item.text)))?;
                coords.push(a.rem_euclid(p as i64) as u32);
            }
            Some(coords)
        }
    };

    let f_pure = match values.get("expect.f_pure") {
        None => None,
        Some(v) => Some(match v.text {
            "true" => true,
            "false" => false,
            other => return Err(Error::parse(v.line, v.column, format!("expected true or false, got {other:?}"))),
        }),
    };
    let notes = values.get("expect.notes").map(|v| v.text.to_string()).filter(|s| !s.is_empty());
    let name = values.get("name").map(|v| v.text.to_string()).unwrap_or_default();
    Ok(Fixture { name, ring, ideal, divisor, point, expect: Expectations { f_pure, notes } })
}

pub fn render_fixture(f: &Fixture) -> String {
    let mut out = String::new();
    let list = |items: Vec<String>| format!("[{}]", items.join(", "));
    if !f.name.is_empty() {
        let _ = writeln!(out, "name = {}", f.name);
    }
    let _ = writeln!(out, "p = {}", f.ring.p());
    let _ = writeln!(out, "vars = {}", list(f.ring.vars().to_vec()));
    let _ = writeln!(out, "ideal = {}", list(f.ideal.iter().map(|g| g.to_string()).collect()));
    if !f.divisor.is_empty() {
        let _ = writeln!(out, "divisor = {}", list(f.divisor.iter().map(|(t, g)| format!("({t}, {g})")).collect()));
    }
    if let Some(pt) = &f.point {
        let _ = writeln!(out, "point = {}", list(pt.iter().map(|a| a.to_string()).collect()));
    }
    if let Some(b) = f.expect.f_pure {
        let _ = writeln!(out, "expect.f_pure = {b}");
    }
    if let Some(notes) = &f.expect.notes {
        let _ = writeln!(out, "expect.notes = {notes}");
    }
    out
}

impl Fixture {
    /// The presentation localized at the fixture's point (origin by default).
    pub fn presentation(&self, engine: &Engine) -> Result<RingPresentation> {
        let ideal = Ideal::new(&self.ring, self.ideal.clone())?;
        match &self.point {
            Some(pt) => RingPresentation::at_point(ideal, pt, engine),
            None => RingPresentation::new(ideal, engine),
        }
    }

    /// `Δ` in the coordinates of [`Fixture::presentation`].
    pub fn divisor_spec(&self) -> Result<DivisorSpec> {
        let spec = DivisorSpec::new(&self.ring, self.divisor.clone())?;
        match &self.point {
            Some(pt) => spec.translate(&self.ring, pt),
            None => Ok(spec),
        }
    }
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        /// Fixtures shipped with the crate, by name.
        pub const BUNDLED_FIXTURES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../fixtures/", $name, ".fix")))),*
        ];
    };
}

bundled!("regular", "a1", "cusp", "quadric", "a1xline", "smooth");

pub fn bundled_fixture(name: &str) -> Option<Fixture> {
    let stem = name.strip_suffix(".fix").unwrap_or(name);
    BUNDLED_FIXTURES
        .iter()
        .find(|(n, _)| *n == stem)
        .map(|(_, text)| parse_fixture(text).expect("bundled fixtures parse"))
}
