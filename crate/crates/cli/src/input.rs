//! Line-oriented `key = value` input files.

use std::fmt;

use crjet_core::geometry::{Convention, Hypersurface};
use crjet_core::segre::BiholoMap;
use crjet_core::{parse_expr, Error, Expr, ParseError};

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
    /// 1-based column of the first character of the value.
    pub col: usize,
}

/// Malformed input, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Debug, PartialEq)]
pub struct InputFile {
    pub entries: Vec<Entry>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> InputError {
    InputError { line, col, msg: msg.into() }
}

pub fn parse_kv(text: &str) -> Result<InputFile, InputError> {
    let mut entries: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let Some(eq) = raw.find('=') else {
            return Err(err(line, indent + 1, "expected 'key = value'"));
        };
        let key = raw[..eq].trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(err(line, indent + 1, format!("invalid key '{key}'")));
        }
        let rest = &raw[eq + 1..];
        let lead = rest.len() - rest.trim_start().len();
        let mut col = eq + 2 + lead;
        let body = rest.trim();
        let value = if let Some(inner) = body.strip_prefix('"') {
            let Some(end) = inner.find('"') else {
                return Err(err(line, col, "unterminated string"));
            };
            if !inner[end + 1..].trim().is_empty() {
                return Err(err(line, col + end + 2, "unexpected text after closing quote"));
            }
            col += 1;
            inner[..end].to_string()
        } else {
            body.to_string()
        };
        if value.is_empty() {
            return Err(err(line, col, format!("empty value for '{key}'")));
        }
        if entries.iter().any(|e| e.key == key) {
            return Err(err(line, indent + 1, format!("duplicate key '{key}'")));
        }
        entries.push(Entry { key: key.to_string(), value, line, col });
    }
    Ok(InputFile { entries })
}

impl InputFile {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn only(&self, allowed: &[&str]) -> Result<(), InputError> {
        for e in &self.entries {
            if !allowed.contains(&e.key.as_str()) {
                return Err(err(e.line, 1, format!("unknown key '{}' (expected one of {})", e.key, allowed.join(", "))));
            }
        }
        Ok(())
    }

    fn require(&self, key: &str) -> Result<&Entry, InputError> {
        self.get(key).ok_or_else(|| err(self.entries.last().map_or(1, |e| e.line), 1, format!("missing key '{key}'")))
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        self.entries.iter().map(|e| (e.key.clone(), e.value.clone())).collect()
    }
}

/// Parses an expression value, relocating parse errors into the file.
pub fn expr_of(e: &Entry) -> anyhow::Result<Expr> {
    parse_expr(&e.value).map_err(|x| match &x {
        Error::Parse(p) => {
            let pos = match p {
                ParseError::Syntax { pos, .. } | ParseError::UnknownIdentifier { pos, .. } | ParseError::NonIntegerExponent { pos } => *pos,
            };
            anyhow::Error::new(err(e.line, e.col + pos, p.to_string()))
        }
        _ => anyhow::Error::new(x),
    })
}

pub fn hypersurface(file: &InputFile) -> anyhow::Result<Hypersurface> {
    file.only(&["type", "convention", "H", "F"])?;
    let kind = match file.get("type") {
        Some(e) => match e.value.as_str() {
            "rigid" | "general" => e.value.clone(),
            other => return Err(err(e.line, e.col, format!("type must be rigid or general, found '{other}'")).into()),
        },
        None if file.get("F").is_some() => "general".into(),
        None => "rigid".into(),
    };
    let convention = match file.get("convention") {
        Some(e) => match e.value.as_str() {
            "re" => Convention::Re,
            "im" => Convention::Im,
            other => return Err(err(e.line, e.col, format!("convention must be re or im, found '{other}'")).into()),
        },
        None => Convention::Re,
    };
    let m = if kind == "rigid" {
        let e = file.require("H")?;
        Hypersurface::rigid(expr_of(e)?, convention)?
    } else {
        let e = file.require("F")?;
        Hypersurface::general(expr_of(e)?, convention)?
    };
    Ok(m)
}

pub fn map(file: &InputFile) -> anyhow::Result<BiholoMap> {
    file.only(&["f", "g"])?;
    let f = expr_of(file.require("f")?)?;
    let g = expr_of(file.require("g")?)?;
    Ok(BiholoMap::new(f, g)?)
}

/// Right-hand side `phi` of a target equation `w'' = phi(z, w, wp)`.
pub fn ode(file: &InputFile) -> anyhow::Result<Expr> {
    file.only(&["phi"])?;
    let e = file.require("phi")?;
    let phi = expr_of(e)?;
    if let Some(v) = phi.variables().into_iter().find(|v| !["z", "w", "wp"].contains(&v.as_str())) {
        return Err(err(e.line, e.col, format!("phi may only involve z, w and wp, found {v}")).into());
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quoted_and_bare_values() {
        let f = parse_kv("# comment\ntype = rigid\nH = \"z*zb\"\n\nconvention=im\n").unwrap();
        assert_eq!(f.get("H").unwrap().value, "z*zb");
        assert_eq!(f.get("H").unwrap().col, 6);
        assert_eq!(f.get("convention").unwrap().value, "im");
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_kv("type rigid").unwrap_err().line, 1);
        let e = parse_kv("a = 1\nH = \"z*zb").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        let f = parse_kv("H = \"z*q\"").unwrap();
        let e = expr_of(f.get("H").unwrap()).unwrap_err();
        let ie = e.downcast_ref::<InputError>().unwrap();
        assert_eq!((ie.line, ie.col), (1, 8));
    }

    #[test]
    fn rejects_unknown_keys() {
        let f = parse_kv("H = z*zb\nfoo = 1").unwrap();
        assert!(hypersurface(&f).is_err());
    }
}
