//! Differentiation, substitution and formal conjugation.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use super::expr::{conjugate_var, merge_atoms, Atom, AtomKind, Expr};
use super::gcd::{gcd_cofactors, Poly};
use super::scalar::{Coeff, GaussRat};
use crate::error::Error;

impl Expr {
    /// Partial derivative with respect to the variable `v`.
    pub fn diff(&self, v: &str) -> Expr {
        if !self.depends_on(v) {
            return Expr::zero();
        }
        let n = self.atoms.len();
        // Constant derivatives of variable atoms act at polynomial level.
        let mut simple = true;
        let mut datoms: Vec<Option<Expr>> = Vec::with_capacity(n);
        for a in self.atoms.iter() {
            if !a.depends_on(v) {
                datoms.push(None);
            } else if a.is_variable() {
                datoms.push(Some(Expr::one()));
            } else {
                simple = false;
                datoms.push(Some(atom_derivative(a, v)));
            }
        }
        if simple {
            let k = datoms.iter().position(|d| d.is_some()).unwrap();
            let dn = self.num.deriv(k);
            if self.den.is_one() {
                return Expr::pruned(self.atoms.clone(), dn, self.den.clone());
            }
            let dd = self.den.deriv(k);
            return quotient_rule(&self.atoms, &self.num, &self.den, &dn, &dd);
        }
        let dpoly = |p: &Poly| -> Expr {
            let mut acc = Expr::zero();
            for (k, d) in datoms.iter().enumerate() {
                if let Some(d) = d {
                    let pk = p.deriv(k);
                    if pk.is_zero() {
                        continue;
                    }
                    let pe = Expr::build(self.atoms.clone(), pk, Poly::one(n)).expect("polynomial");
                    acc = acc + pe * d;
                }
            }
            acc
        };
        let dn = dpoly(&self.num);
        if self.den.is_one() {
            return dn;
        }
        let dd = dpoly(&self.den);
        let den = self.denominator_expr();
        // (n/d)' = (n' - e·d')/d
        let e = self;
        (dn - e * &dd).checked_div(&den).expect("nonzero denominator")
    }

    /// Iterated partial derivative, leftmost variable first.
    pub fn diff_seq(&self, vars: &[&str]) -> Expr {
        vars.iter().fold(self.clone(), |acc, v| acc.diff(v))
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, bindings: &[(&str, Expr)]) -> Result<Expr, Error> {
        let bound: HashMap<&str, &Expr> = bindings.iter().map(|(k, v)| (*k, v)).collect();
        if !self.atoms.iter().any(|a| bound.keys().any(|k| a.depends_on(k))) {
            return Ok(self.clone());
        }
        let mut images = Vec::with_capacity(self.atoms.len());
        for a in self.atoms.iter() {
            images.push(substitute_atom(a, &bound)?);
        }
        eval_at_images(self, &images, |c| c.clone())
    }

    /// Formal conjugation σ: swaps conjugate variables and conjugates coefficients.
    pub fn sigma(&self) -> Result<Expr, Error> {
        let mut images = Vec::with_capacity(self.atoms.len());
        for a in self.atoms.iter() {
            images.push(sigma_atom(a)?);
        }
        eval_at_images(self, &images, |c| c.conj())
    }
}

/// `(n'd − n d')/d²`, reduced.
fn quotient_rule(atoms: &Arc<[Atom]>, n: &Poly, d: &Poly, dn: &Poly, dd: &Poly) -> Expr {
    if dd.is_zero() {
        // d is constant in the variable; d stays the denominator.
        return Expr::build(atoms.clone(), dn.clone(), d.clone()).expect("nonzero denominator");
    }
    let (_, d1, dd1) = gcd_cofactors(d, dd);
    let num = dn.mul(&d1).sub(&n.mul(&dd1));
    let den = d.mul(&d1);
    Expr::build(atoms.clone(), num, den).expect("nonzero denominator")
}

fn atom_derivative(a: &Atom, v: &str) -> Expr {
    let arg = a.arg().expect("function atom");
    let da = arg.diff(v);
    if da.is_zero() {
        return Expr::zero();
    }
    let me = Expr::from_atom(a.clone());
    match a.kind() {
        AtomKind::Arctan => da.checked_div(&(Expr::one() + arg * arg)).expect("1+u^2 nonzero"),
        AtomKind::Exp => da * me,
        AtomKind::Log => da.checked_div(arg).expect("log argument nonzero"),
        AtomKind::Sqrt => da.checked_div(&me.scale(&GaussRat::int(2))).expect("sqrt nonzero"),
        AtomKind::Variable => unreachable!(),
    }
}

fn substitute_atom(a: &Atom, bound: &HashMap<&str, &Expr>) -> Result<Expr, Error> {
    if a.is_variable() {
        return Ok(match bound.get(a.name()) {
            Some(e) => (*e).clone(),
            None => Expr::from_atom(a.clone()),
        });
    }
    if !bound.keys().any(|k| a.depends_on(k)) {
        return Ok(Expr::from_atom(a.clone()));
    }
    let arg = a.arg().unwrap();
    let bindings: Vec<(&str, Expr)> = bound.iter().map(|(k, v)| (*k, (*v).clone())).collect();
    let new_arg = arg.substitute(&bindings)?;
    Expr::apply_kind(a.kind(), &new_arg)
}

fn sigma_atom(a: &Atom) -> Result<Expr, Error> {
    if a.is_variable() {
        let partner = conjugate_var(a.name()).ok_or_else(|| Error::NoConjugate(a.name().to_string()))?;
        return Ok(Expr::var(partner));
    }
    let arg = a.arg().unwrap().sigma()?;
    Expr::apply_kind(a.kind(), &arg)
}

/// Evaluates `e` with atom `k` replaced by `images[k]` and coefficients
/// mapped through `cmap`.
fn eval_at_images(e: &Expr, images: &[Expr], cmap: impl Fn(&GaussRat) -> GaussRat) -> Result<Expr, Error> {
    let num = e.num.map_coeffs(|c| cmap(c));
    let den = e.den.map_coeffs(|c| cmap(c));
    // Fast path: distinct bare atoms (a renaming).
    if let Some(targets) = as_renaming(images) {
        let mut sorted: Vec<Atom> = targets.clone();
        sorted.sort();
        let map: Vec<usize> = targets.iter().map(|t| sorted.iter().position(|s| s == t).unwrap()).collect();
        let n = sorted.len();
        let num = num.remap(n, &map);
        let den = den.remap(n, &map);
        let atoms: Arc<[Atom]> = sorted.into();
        let lc = den.leading_coeff();
        let inv = lc.inv();
        let (num, den) = if lc.is_one() { (num, den) } else { (num.scale(&inv), den.scale(&inv)) };
        return if atoms.iter().any(|a| a.kind() == AtomKind::Sqrt) {
            Expr::build(atoms, num, den)
        } else {
            Ok(Expr::pruned(atoms, num, den))
        };
    }
    let mut merged: Arc<[Atom]> = Arc::from(Vec::new());
    for im in images {
        merged = merge_atoms(&merged, &im.atoms).0;
    }
    let n = merged.len();
    let lifted: Vec<(Poly, Poly)> = images
        .iter()
        .map(|im| {
            let (_, _, m) = merge_atoms(&merged, &im.atoms);
            match m {
                None => (im.num.clone(), im.den.clone()),
                Some(m) => (im.num.remap(n, &m), im.den.remap(n, &m)),
            }
        })
        .collect();
    let k = images.len();
    let maxdeg: Vec<u32> = (0..k).map(|i| num.degree_in(i).max(den.degree_in(i))).collect();
    let mut cache = PowCache::new(&lifted);
    let new_num = cache.eval(&num, &maxdeg, n);
    let new_den = cache.eval(&den, &maxdeg, n);
    if new_den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Expr::build(merged, new_num, new_den)
}

fn as_renaming(images: &[Expr]) -> Option<Vec<Atom>> {
    let mut out = Vec::with_capacity(images.len());
    for im in images {
        if im.atoms.len() != 1 || !im.den.is_one() || im.num.len() != 1 {
            return None;
        }
        let (m, c) = &im.num.terms()[0];
        if !c.is_one() || m[0] != 1 {
            return None;
        }
        let a = im.atoms[0].clone();
        if out.contains(&a) {
            return None;
        }
        out.push(a);
    }
    Some(out)
}

struct PowCache<'a> {
    parts: &'a [(Poly, Poly)],
    npow: Vec<Vec<Poly>>,
    dpow: Vec<Vec<Poly>>,
}

impl<'a> PowCache<'a> {
    fn new(parts: &'a [(Poly, Poly)]) -> Self {
        let k = parts.len();
        PowCache { parts, npow: vec![Vec::new(); k], dpow: vec![Vec::new(); k] }
    }

    fn get(table: &mut Vec<Poly>, base: &Poly, e: usize) -> Poly {
        if table.is_empty() {
            table.push(Poly::one(base.nvars()));
        }
        while table.len() <= e {
            let next = table.last().unwrap().mul(base);
            table.push(next);
        }
        table[e].clone()
    }

    /// `Σ c · Π nᵢ^eᵢ · dᵢ^(Dᵢ−eᵢ)` over the terms of `p`.
    fn eval(&mut self, p: &Poly, maxdeg: &[u32], n: usize) -> Poly {
        let mut acc = Poly::zero(n);
        for (m, c) in p.terms() {
            let mut t = Poly::constant(n, c.clone());
            for (i, &e) in m.iter().enumerate() {
                let (pn, pd) = &self.parts[i];
                if e > 0 {
                    t = t.mul(&Self::get(&mut self.npow[i], pn, e as usize));
                }
                let r = maxdeg[i] - e as u32;
                if r > 0 && !pd.is_one() {
                    t = t.mul(&Self::get(&mut self.dpow[i], pd, r as usize));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

/// Convenience: evaluate at a point given as variable → constant pairs.
pub fn eval_constant(e: &Expr, point: &[(&str, GaussRat)]) -> Result<GaussRat, Error> {
    let b: Vec<(&str, Expr)> = point.iter().map(|(k, v)| (*k, Expr::constant(v.clone()))).collect();
    let r = e.substitute(&b)?;
    r.as_constant().ok_or_else(|| Error::Domain(format!("{} is not constant at the point", r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        crate::parse_expr(s).unwrap()
    }

    #[test]
    fn derivative_basic() {
        assert_eq!(p("atan(zb)").diff("zb"), p("1/(1+zb^2)"));
        assert_eq!(p("z^3*zb").diff("z"), p("3*z^2*zb"));
        assert_eq!(p("exp(z*zb)").diff("zb"), p("z*exp(z*zb)"));
        assert_eq!(p("log(1+z)").diff("z"), p("1/(1+z)"));
        assert_eq!(p("sqrt(1+z)").diff("z"), p("1/(2*sqrt(1+z))"));
    }

    #[test]
    fn derivative_rational() {
        let e = p("z/(1+z*zb)");
        assert_eq!(e.diff("z"), p("1/(1+z*zb)^2"));
        assert_eq!(e.diff("z").diff("zb"), e.diff("zb").diff("z"));
    }

    #[test]
    fn substitution() {
        assert_eq!(p("z*zb").substitute(&[("zb", p("wp/2"))]).unwrap(), p("z*wp/2"));
        assert_eq!(p("1/(1+z^2)").substitute(&[("z", Expr::zero())]).unwrap(), Expr::one());
        assert_eq!(p("atan(z)").substitute(&[("z", p("zb^2"))]).unwrap(), p("atan(zb^2)"));
        assert!(p("1/z").substitute(&[("z", Expr::zero())]).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("i*z").sigma().unwrap(), p("-i*zb"));
        let h = p("z*zb + z*atan(zb) + atan(z)*zb");
        assert_eq!(h.sigma().unwrap(), h);
        assert!(p("wp").sigma().is_err());
    }
}
