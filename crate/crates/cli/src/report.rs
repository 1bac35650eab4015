//! Report tree and its text, JSON and LaTeX renderings.

use crjet_core::{Expr, Series};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub enum Node {
    Expr(Expr),
    Series(Series),
    Text(String),
    Bool(bool),
    Int(i64),
    List(Vec<Node>),
    Map(Vec<(String, Node)>),
}

impl From<Expr> for Node {
    fn from(e: Expr) -> Self {
        Node::Expr(e)
    }
}

impl From<&Expr> for Node {
    fn from(e: &Expr) -> Self {
        Node::Expr(e.clone())
    }
}

impl From<Series> for Node {
    fn from(s: Series) -> Self {
        Node::Series(s)
    }
}

impl From<bool> for Node {
    fn from(b: bool) -> Self {
        Node::Bool(b)
    }
}

impl From<&str> for Node {
    fn from(s: &str) -> Self {
        Node::Text(s.to_string())
    }
}

impl From<String> for Node {
    fn from(s: String) -> Self {
        Node::Text(s)
    }
}

impl From<usize> for Node {
    fn from(n: usize) -> Self {
        Node::Int(n as i64)
    }
}

impl From<u32> for Node {
    fn from(n: u32) -> Self {
        Node::Int(n as i64)
    }
}

/// Ordered map builder.
#[derive(Default)]
pub struct Obj(Vec<(String, Node)>);

impl Obj {
    pub fn new() -> Self {
        Obj(Vec::new())
    }

    pub fn put(mut self, k: &str, v: impl Into<Node>) -> Self {
        self.0.push((k.to_string(), v.into()));
        self
    }

    pub fn push(&mut self, k: &str, v: impl Into<Node>) {
        self.0.push((k.to_string(), v.into()));
    }
}

impl From<Obj> for Node {
    fn from(o: Obj) -> Self {
        Node::Map(o.0)
    }
}

pub struct Report {
    pub command: String,
    pub input_echo: Vec<(String, String)>,
    pub results: Node,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Latex,
}

pub fn emit_report(r: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(r)).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Text => to_text(r),
        OutputFormat::Latex => to_latex(r),
    }
}

// ---------------------------------------------------------------- json

fn series_json(s: &Series) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(m, c)| json!({ "exponents": m.iter().map(|&e| e as u64).collect::<Vec<_>>(), "coefficient": Expr::constant(c.clone()).to_text() }))
        .collect();
    json!({ "vars": s.vars(), "order": s.order(), "terms": terms })
}

fn node_json(n: &Node) -> Value {
    match n {
        Node::Expr(e) => Value::String(e.to_text()),
        Node::Series(s) => series_json(s),
        Node::Text(t) => Value::String(t.clone()),
        Node::Bool(b) => Value::Bool(*b),
        Node::Int(i) => json!(i),
        Node::List(v) => Value::Array(v.iter().map(node_json).collect()),
        Node::Map(kv) => {
            let mut m = Map::new();
            for (k, v) in kv {
                m.insert(k.clone(), node_json(v));
            }
            Value::Object(m)
        }
    }
}

pub fn to_json(r: &Report) -> Value {
    let mut echo = Map::new();
    for (k, v) in &r.input_echo {
        echo.insert(k.clone(), Value::String(v.clone()));
    }
    json!({
        "command": r.command,
        "input_echo": Value::Object(echo),
        "results": node_json(&r.results),
        "diagnostics": r.diagnostics,
    })
}

// ---------------------------------------------------------------- text

fn series_text(s: &Series) -> String {
    format!("{}  [order {} in {}]", s.to_expr().to_text(), s.order(), s.vars().join(", "))
}

/// Single-line form of scalars and of nested lists of scalars.
fn inline(n: &Node) -> Option<String> {
    match n {
        Node::Expr(e) => Some(e.to_text()),
        Node::Text(t) => Some(t.clone()),
        Node::Bool(b) => Some(b.to_string()),
        Node::Int(i) => Some(i.to_string()),
        Node::List(v) => {
            let parts: Option<Vec<String>> = v.iter().map(|x| if matches!(x, Node::Text(_)) { None } else { inline(x) }).collect();
            let joined = format!("[{}]", parts?.join(", "));
            (joined.len() <= 160).then_some(joined)
        }
        Node::Series(_) | Node::Map(_) => None,
    }
}

fn text_into(out: &mut String, key: Option<&str>, n: &Node, indent: usize) {
    let pad = "  ".repeat(indent);
    let label = key.map(|k| format!("{k}: ")).unwrap_or_else(|| "- ".to_string());
    match n {
        Node::Expr(e) => out.push_str(&format!("{pad}{label}{}\n", e.to_text())),
        Node::Series(s) => out.push_str(&format!("{pad}{label}{}\n", series_text(s))),
        Node::Text(t) => out.push_str(&format!("{pad}{label}{t}\n")),
        Node::Bool(b) => out.push_str(&format!("{pad}{label}{b}\n")),
        Node::Int(i) => out.push_str(&format!("{pad}{label}{i}\n")),
        Node::List(v) if !v.is_empty() && inline(n).is_some() => out.push_str(&format!("{pad}{label}{}\n", inline(n).unwrap())),
        Node::List(v) => {
            out.push_str(&format!("{pad}{}\n", label.trim_end()));
            for x in v {
                text_into(out, None, x, indent + 1);
            }
        }
        Node::Map(kv) => {
            if key.is_some() || indent > 0 {
                out.push_str(&format!("{pad}{}\n", label.trim_end()));
            }
            for (k, v) in kv {
                text_into(out, Some(k), v, indent + 1);
            }
        }
    }
}

pub fn to_text(r: &Report) -> String {
    let mut out = format!("command: {}\n", r.command);
    out.push_str("input:\n");
    for (k, v) in &r.input_echo {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    text_into(&mut out, Some("results"), &r.results, 0);
    if !r.diagnostics.is_empty() {
        out.push_str("diagnostics:\n");
        for d in &r.diagnostics {
            out.push_str(&format!("  - {d}\n"));
        }
    }
    out
}

// ---------------------------------------------------------------- latex

fn escape(s: &str) -> String {
    let mut o = String::new();
    for c in s.chars() {
        match c {
            '_' | '%' | '&' | '#' | '$' | '{' | '}' => {
                o.push('\\');
                o.push(c);
            }
            '\\' => o.push_str("\\textbackslash{}"),
            '^' => o.push_str("\\^{}"),
            '~' => o.push_str("\\~{}"),
            '<' => o.push_str("$<$"),
            '>' => o.push_str("$>$"),
            _ => o.push(c),
        }
    }
    o
}

fn series_latex(s: &Series) -> String {
    format!("{} + O({})", s.to_expr().to_latex(), s.order())
}

fn latex_into(out: &mut String, path: &str, n: &Node) {
    match n {
        Node::Expr(e) => out.push_str(&format!("\\noindent\\texttt{{{}}}\n\\begin{{dmath*}}\n{}\n\\end{{dmath*}}\n", escape(path), e.to_latex())),
        Node::Series(s) => out.push_str(&format!("\\noindent\\texttt{{{}}}\n\\begin{{dmath*}}\n{}\n\\end{{dmath*}}\n", escape(path), series_latex(s))),
        Node::Text(t) => out.push_str(&format!("\\noindent\\texttt{{{}}}: {}\\par\n", escape(path), escape(t))),
        Node::Bool(b) => out.push_str(&format!("\\noindent\\texttt{{{}}}: {}\\par\n", escape(path), b)),
        Node::Int(i) => out.push_str(&format!("\\noindent\\texttt{{{}}}: {}\\par\n", escape(path), i)),
        Node::List(v) => {
            for (i, x) in v.iter().enumerate() {
                latex_into(out, &format!("{path}[{i}]"), x);
            }
        }
        Node::Map(kv) => {
            for (k, v) in kv {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                latex_into(out, &p, v);
            }
        }
    }
}

pub fn to_latex(r: &Report) -> String {
    let mut out = String::from("\\documentclass{article}\n\\usepackage{amsmath}\n\\usepackage{breqn}\n\\begin{document}\n");
    out.push_str(&format!("\\section*{{crjet {}}}\n", escape(&r.command)));
    for (k, v) in &r.input_echo {
        out.push_str(&format!("\\noindent\\texttt{{{}}} = \\texttt{{{}}}\\par\n", escape(k), escape(v)));
    }
    latex_into(&mut out, "", &r.results);
    for d in &r.diagnostics {
        out.push_str(&format!("\\noindent Note: {}\\par\n", escape(d)));
    }
    out.push_str("\\end{document}\n");
    out
}
