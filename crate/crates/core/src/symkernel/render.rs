//! Text, LaTeX and JSON rendering. Terms are listed by ascending total degree.

use num_traits::{One, Zero};

use super::expr::{Atom, AtomKind, Expr};
use super::gcd::Poly;
use super::poly::{mono_degree, Mono};
use super::scalar::{GaussRat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl Expr {
    /// Canonical text; re-parses to an equal expression.
    pub fn to_text(&self) -> String {
        let n = poly_text(&self.num, &self.atoms);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        let d = poly_text(&self.den, &self.atoms);
        if is_bare_power(&self.den) {
            format!("{n}/{d}")
        } else {
            format!("{n}/({d})")
        }
    }

    pub fn to_latex(&self) -> String {
        let n = poly_latex(&self.num, &self.atoms);
        if self.den.is_one() {
            return n;
        }
        format!("\\frac{{{}}}{{{}}}", n, poly_latex(&self.den, &self.atoms))
    }

    /// JSON string literal holding the canonical text.
    pub fn to_json(&self) -> String {
        let mut out = String::from("\"");
        for ch in self.to_text().chars() {
            match ch {
                '"' => out.push_str("\\\""),
                '\\' => out.push_str("\\\\"),
                c => out.push(c),
            }
        }
        out.push('"');
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Latex => self.to_latex(),
            Format::Json => self.to_json(),
        }
    }
}

fn is_bare_power(p: &Poly) -> bool {
    if p.len() != 1 {
        return false;
    }
    let (m, c) = &p.terms()[0];
    c.is_one() && m.iter().filter(|&&e| e > 0).count() == 1
}

fn display_order(p: &Poly) -> Vec<&(Mono, GaussRat)> {
    let mut ts: Vec<&(Mono, GaussRat)> = p.terms().iter().collect();
    ts.sort_by(|a, b| mono_degree(&a.0).cmp(&mono_degree(&b.0)).then(b.0.cmp(&a.0)));
    ts
}

fn join_terms(parts: Vec<String>, spaced: bool) -> String {
    let mut out = String::new();
    for (k, t) in parts.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(if spaced { " - " } else { "-" });
            out.push_str(rest);
        } else {
            out.push_str(if spaced { " + " } else { "+" });
            out.push_str(&t);
        }
    }
    out
}

// ---------------------------------------------------------------- text

pub(crate) fn rat_text(r: &Rat) -> String {
    r.to_string()
}

fn coeff_text(c: &GaussRat) -> String {
    if c.im.is_zero() {
        return rat_text(&c.re);
    }
    let im = imag_text(&c.im);
    if c.re.is_zero() {
        return im;
    }
    if c.im.is_negative() {
        format!("({} - {})", rat_text(&c.re), &im[1..])
    } else {
        format!("({} + {})", rat_text(&c.re), im)
    }
}

fn imag_text(b: &Rat) -> String {
    if b.is_one() {
        "i".into()
    } else if (-b.clone()).is_one() {
        "-i".into()
    } else {
        format!("{}*i", rat_text(b))
    }
}

fn atom_text(a: &Atom) -> String {
    a.key().to_string()
}

fn mono_text(m: &[u16], atoms: &[Atom]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let a = atom_text(&atoms[k]);
        parts.push(if e == 1 { a } else { format!("{a}^{e}") });
    }
    parts.join("*")
}

fn term_text(m: &[u16], c: &GaussRat, atoms: &[Atom]) -> String {
    let mono = mono_text(m, atoms);
    if mono.is_empty() {
        return coeff_text(c);
    }
    if c.is_one() {
        return mono;
    }
    if (-c.clone()).is_one() {
        return format!("-{mono}");
    }
    format!("{}*{}", coeff_text(c), mono)
}

pub(crate) fn poly_text(p: &Poly, atoms: &[Atom]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts = display_order(p).into_iter().map(|(m, c)| term_text(m, c, atoms)).collect();
    join_terms(parts, true)
}

// ---------------------------------------------------------------- latex

fn rat_latex(r: &Rat) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        let a = r.abs();
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

fn coeff_latex(c: &GaussRat, standalone: bool) -> String {
    let unit = |r: &Rat, suffix: &str| -> String {
        if r.is_one() {
            suffix.to_string()
        } else if (-r.clone()).is_one() {
            format!("-{suffix}")
        } else {
            format!("{}{}", rat_latex(r), suffix)
        }
    };
    if c.im.is_zero() {
        if standalone {
            return rat_latex(&c.re);
        }
        return unit(&c.re, "");
    }
    if c.re.is_zero() {
        return unit(&c.im, "i");
    }
    let im = unit(&c.im, "i");
    let im = if im.starts_with('-') { im } else { format!("+{im}") };
    format!("\\left({}{}\\right)", rat_latex(&c.re), im)
}

fn var_latex(name: &str) -> String {
    match name {
        "zb" => "\\bar{z}".into(),
        "wb" => "\\bar{w}".into(),
        "wp" => "w'".into(),
        "wpp" => "w''".into(),
        other => other.into(),
    }
}

fn atom_latex(a: &Atom) -> String {
    match a.kind() {
        AtomKind::Variable => var_latex(a.name()),
        AtomKind::Sqrt => format!("\\sqrt{{{}}}", a.arg().unwrap().to_latex()),
        k => {
            let f = match k {
                AtomKind::Arctan => "\\arctan",
                AtomKind::Exp => "\\exp",
                _ => "\\log",
            };
            format!("{f}\\left({}\\right)", a.arg().unwrap().to_latex())
        }
    }
}

fn mono_latex(m: &[u16], atoms: &[Atom]) -> String {
    let mut out = String::new();
    for (k, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let a = atom_latex(&atoms[k]);
        if e == 1 {
            out.push_str(&a);
        } else if atoms[k].is_variable() && !a.contains('\'') {
            out.push_str(&format!("{a}^{{{e}}}"));
        } else {
            out.push_str(&format!("{{{a}}}^{{{e}}}"));
        }
    }
    out
}

fn poly_latex(p: &Poly, atoms: &[Atom]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts = display_order(p)
        .into_iter()
        .map(|(m, c)| {
            let mono = mono_latex(m, atoms);
            if mono.is_empty() {
                coeff_latex(c, true)
            } else {
                let cl = coeff_latex(c, false);
                format!("{cl}{mono}")
            }
        })
        .collect();
    join_terms(parts, false)
}

#[cfg(test)]
mod tests {
    use crate::parse_expr;

    #[test]
    fn text_forms() {
        assert_eq!(parse_expr("z*zb").unwrap().to_text(), "z*zb");
        assert_eq!(parse_expr("1/(1+z^2)").unwrap().to_text(), "1/(1 + z^2)");
        assert_eq!(parse_expr("-z/zb^2").unwrap().to_text(), "-z/zb^2");
        assert_eq!(parse_expr("0").unwrap().to_text(), "0");
        assert_eq!(parse_expr("i*z - 3/2").unwrap().to_text(), "-3/2 + i*z");
        assert_eq!(parse_expr("(1+2*i)*z").unwrap().to_text(), "(1 + 2*i)*z");
    }

    #[test]
    fn latex_forms() {
        assert_eq!(parse_expr("1/(1+z^2)").unwrap().to_latex(), "\\frac{1}{1+z^{2}}");
        assert_eq!(parse_expr("z*zb/2").unwrap().to_latex(), "\\frac{1}{2}z\\bar{z}");
        assert_eq!(parse_expr("wp^2").unwrap().to_latex(), "{w'}^{2}");
    }

    #[test]
    fn json_zero() {
        assert_eq!(parse_expr("z - z").unwrap().to_json(), "\"0\"");
    }
}
