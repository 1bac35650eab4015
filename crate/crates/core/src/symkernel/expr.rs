//! Canonical rational expressions over a tower of atoms.
//!
//! An [`Expr`] is `num/den` with `num`, `den` polynomials in its own sorted
//! atom list. Canonical form: no unused atoms, `gcd(num, den) = 1`, `den`
//! monic in lex order, every `sqrt` atom occurs with exponent at most one in
//! `num` and not at all in `den`. Equality of canonical forms is equality of
//! functions under the convention that distinct atoms are independent.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::gcd::{gcd_cofactors, Poly};
use super::scalar::{Coeff, GaussRat, Rat};
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomKind {
    Variable,
    Arctan,
    Exp,
    Log,
    Sqrt,
}

impl AtomKind {
    pub fn name(self) -> &'static str {
        match self {
            AtomKind::Variable => "var",
            AtomKind::Arctan => "atan",
            AtomKind::Exp => "exp",
            AtomKind::Log => "log",
            AtomKind::Sqrt => "sqrt",
        }
    }

    pub fn is_transcendental(self) -> bool {
        matches!(self, AtomKind::Arctan | AtomKind::Exp | AtomKind::Log)
    }
}

pub(crate) struct AtomData {
    kind: AtomKind,
    name: String,
    arg: Option<Expr>,
    key: String,
    level: u32,
    rank: u32,
    deps: Vec<String>,
}

/// A generator of the expression field: a variable or a function applied to
/// an expression over lower atoms.
#[derive(Clone)]
pub struct Atom(Arc<AtomData>);

/// Variables with a fixed position in the monomial order.
const RANKED: [&str; 11] = ["z", "zb", "v", "w", "wb", "wp", "wpp", "t", "x", "y", "u"];

fn var_rank(name: &str) -> u32 {
    RANKED.iter().position(|&n| n == name).map(|p| p as u32).unwrap_or(64)
}

/// Conjugate partner of a variable under σ.
pub fn conjugate_var(name: &str) -> Option<&'static str> {
    match name {
        "z" => Some("zb"),
        "zb" => Some("z"),
        "w" => Some("wb"),
        "wb" => Some("w"),
        "v" => Some("v"),
        _ => None,
    }
}

impl Atom {
    pub fn variable(name: &str) -> Atom {
        Atom(Arc::new(AtomData {
            kind: AtomKind::Variable,
            name: name.to_string(),
            arg: None,
            key: name.to_string(),
            level: 0,
            rank: var_rank(name),
            deps: vec![name.to_string()],
        }))
    }

    fn function(kind: AtomKind, arg: Expr) -> Atom {
        let level = 1 + arg.atoms.iter().map(|a| a.0.level).max().unwrap_or(0);
        let mut deps: Vec<String> = arg.atoms.iter().flat_map(|a| a.0.deps.iter().cloned()).collect();
        deps.sort();
        deps.dedup();
        let key = format!("{}({})", kind.name(), arg.to_text());
        Atom(Arc::new(AtomData {
            kind,
            name: kind.name().to_string(),
            arg: Some(arg),
            key,
            level,
            rank: 0,
            deps,
        }))
    }

    pub fn kind(&self) -> AtomKind {
        self.0.kind
    }

    /// Variable name, or the function name for function atoms.
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn arg(&self) -> Option<&Expr> {
        self.0.arg.as_ref()
    }

    /// Canonical text of the atom.
    pub fn key(&self) -> &str {
        &self.0.key
    }

    pub fn level(&self) -> u32 {
        self.0.level
    }

    pub fn is_variable(&self) -> bool {
        self.0.kind == AtomKind::Variable
    }

    /// Whether the atom (through its tower) depends on variable `v`.
    pub fn depends_on(&self, v: &str) -> bool {
        self.0.deps.iter().any(|d| d == v)
    }

    pub fn variables(&self) -> &[String] {
        &self.0.deps
    }

    /// True if the atom or anything below it is `atan`, `exp` or `log`.
    pub fn has_transcendental(&self) -> bool {
        self.0.kind.is_transcendental()
            || self.0.arg.as_ref().is_some_and(|a| a.has_transcendental_atoms())
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}
impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        let a = &self.0;
        let b = &other.0;
        a.level
            .cmp(&b.level)
            .then(a.kind.cmp(&b.kind))
            .then(a.rank.cmp(&b.rank))
            .then_with(|| a.key.cmp(&b.key))
    }
}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state);
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.key)
    }
}

/// Canonical rational function over an atom tower. Cheap to clone.
#[derive(Clone)]
pub struct Expr {
    pub(crate) atoms: Arc<[Atom]>,
    pub(crate) num: Poly,
    pub(crate) den: Poly,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.atoms, &other.atoms) || self.atoms[..] == other.atoms[..])
            && self.num == other.num
            && self.den == other.den
    }
}
impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for a in self.atoms.iter() {
            a.hash(state);
        }
        for (m, c) in self.num.terms().iter().chain(self.den.terms()) {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Merged atom list plus index maps for both inputs.
pub(crate) fn merge_atoms(a: &Arc<[Atom]>, b: &Arc<[Atom]>) -> (Arc<[Atom]>, Option<Vec<usize>>, Option<Vec<usize>>) {
    if Arc::ptr_eq(a, b) || a[..] == b[..] {
        return (a.clone(), None, None);
    }
    if b.is_empty() {
        return (a.clone(), None, Some(Vec::new()));
    }
    if a.is_empty() {
        return (b.clone(), Some(Vec::new()), None);
    }
    let mut out: Vec<Atom> = Vec::with_capacity(a.len() + b.len());
    let mut ma = Vec::with_capacity(a.len());
    let mut mb = Vec::with_capacity(b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Greater
        } else if j == b.len() {
            Ordering::Less
        } else {
            a[i].cmp(&b[j])
        };
        match ord {
            Ordering::Less => {
                ma.push(out.len());
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                mb.push(out.len());
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                ma.push(out.len());
                mb.push(out.len());
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    let same_a = out.len() == a.len();
    let same_b = out.len() == b.len();
    let atoms: Arc<[Atom]> = out.into();
    (atoms, if same_a { None } else { Some(ma) }, if same_b { None } else { Some(mb) })
}

fn lift(p: &Poly, n: usize, map: &Option<Vec<usize>>) -> Poly {
    match map {
        None => p.clone(),
        Some(m) => p.remap(n, m),
    }
}

impl Expr {
    pub fn zero() -> Expr {
        Expr { atoms: Arc::from(Vec::new()), num: Poly::zero(0), den: Poly::one(0) }
    }

    pub fn one() -> Expr {
        Expr::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Expr {
        Expr { atoms: Arc::from(Vec::new()), num: Poly::constant(0, c), den: Poly::one(0) }
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(GaussRat::int(n))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::constant(GaussRat::frac(n, d))
    }

    pub fn i() -> Expr {
        Expr::constant(GaussRat::i())
    }

    pub fn var(name: &str) -> Expr {
        Expr::from_atom(Atom::variable(name))
    }

    pub(crate) fn from_atom(a: Atom) -> Expr {
        Expr { atoms: Arc::from(vec![a]), num: Poly::var(1, 0), den: Poly::one(1) }
    }

    /// Canonical expression from raw parts; the only fallible constructor.
    pub(crate) fn build(atoms: Arc<[Atom]>, num: Poly, den: Poly) -> Result<Expr, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut atoms, mut num, mut den) = (atoms, num, den);
        if atoms.iter().any(|a| a.kind() == AtomKind::Sqrt) {
            (atoms, num, den) = reduce_sqrt(atoms, num, den)?;
        }
        if num.is_zero() {
            return Ok(Expr::zero());
        }
        let (_, n, d) = gcd_cofactors(&num, &den);
        let lc = d.leading_coeff();
        let (n, d) = if lc.is_one() { (n, d) } else {
            let inv = lc.inv();
            (n.scale(&inv), d.scale(&inv))
        };
        Ok(Expr::pruned(atoms, n, d))
    }

    /// Drops unused atoms; parts must otherwise be canonical.
    pub(crate) fn pruned(atoms: Arc<[Atom]>, num: Poly, den: Poly) -> Expr {
        let n = atoms.len();
        let mut used = vec![false; n];
        for (m, _) in num.terms().iter().chain(den.terms()) {
            for (k, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[k] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return Expr { atoms, num, den };
        }
        let kept: Vec<Atom> = atoms.iter().zip(&used).filter(|(_, &u)| u).map(|(a, _)| a.clone()).collect();
        Expr { atoms: kept.into(), num: num.drop_vars(&used), den: den.drop_vars(&used) }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn numerator_expr(&self) -> Expr {
        Expr::pruned(self.atoms.clone(), self.num.clone(), Poly::one(self.atoms.len()))
    }

    pub fn denominator_expr(&self) -> Expr {
        Expr::pruned(self.atoms.clone(), self.den.clone(), Poly::one(self.atoms.len()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty() && self.num.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if the expression is a constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.atoms.is_empty() {
            let c = self.num.constant_term();
            Some(c)
        } else {
            None
        }
    }

    /// Whether any atom of the tower is `atan`, `exp` or `log`.
    pub fn has_transcendental_atoms(&self) -> bool {
        self.atoms.iter().any(|a| a.has_transcendental())
    }

    /// Names of all variables the expression depends on, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.atoms.iter().flat_map(|a| a.variables().iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn depends_on(&self, v: &str) -> bool {
        self.atoms.iter().any(|a| a.depends_on(v))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &GaussRat) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { atoms: self.atoms.clone(), num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add_ref(&self, o: &Expr) -> Expr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (atoms, ma, mb) = merge_atoms(&self.atoms, &o.atoms);
        let n = atoms.len();
        let an = lift(&self.num, n, &ma);
        let bn = lift(&o.num, n, &mb);
        let ad_one = self.den.is_one();
        let bd_one = o.den.is_one();
        if ad_one && bd_one {
            let num = an.add(&bn);
            if num.is_zero() {
                return Expr::zero();
            }
            return Expr::pruned(atoms, num, Poly::one(n));
        }
        let ad = lift(&self.den, n, &ma);
        let bd = lift(&o.den, n, &mb);
        if bd_one {
            let num = an.add(&bn.mul(&ad));
            return Expr::pruned(atoms, num, ad);
        }
        if ad_one {
            let num = bn.add(&an.mul(&bd));
            return Expr::pruned(atoms, num, bd);
        }
        if ad == bd {
            let num = an.add(&bn);
            return Expr::build(atoms, num, ad).expect("nonzero denominator");
        }
        let (g, a1, b1) = gcd_cofactors(&ad, &bd);
        if g.is_one() {
            let num = an.mul(&bd).add(&bn.mul(&ad));
            if num.is_zero() {
                return Expr::zero();
            }
            return Expr::pruned(atoms, num, ad.mul(&bd));
        }
        let num = an.mul(&b1).add(&bn.mul(&a1));
        if num.is_zero() {
            return Expr::zero();
        }
        let (_, num, g2) = gcd_cofactors(&num, &g);
        // g is monic, so the cofactor carries the ratio of leading coefficients.
        let den = a1.mul(&b1).mul(&g2);
        let lc = den.leading_coeff();
        let inv = lc.inv();
        Expr::pruned(atoms, num.scale(&inv), den.scale(&inv))
    }

    pub fn sub_ref(&self, o: &Expr) -> Expr {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Expr {
        Expr { atoms: self.atoms.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, o: &Expr) -> Expr {
        if self.is_zero() || o.is_zero() {
            return Expr::zero();
        }
        if self.atoms.is_empty() {
            return o.scale(&self.num.leading_coeff());
        }
        if o.atoms.is_empty() {
            return self.scale(&o.num.leading_coeff());
        }
        let (atoms, ma, mb) = merge_atoms(&self.atoms, &o.atoms);
        let n = atoms.len();
        let an = lift(&self.num, n, &ma);
        let bn = lift(&o.num, n, &mb);
        let ad = lift(&self.den, n, &ma);
        let bd = lift(&o.den, n, &mb);
        let needs_sqrt = atoms.iter().enumerate().any(|(k, a)| {
            a.kind() == AtomKind::Sqrt && an.uses_var(k) && bn.uses_var(k)
        });
        if needs_sqrt {
            return Expr::build(atoms, an.mul(&bn), ad.mul(&bd)).expect("nonzero denominator");
        }
        let (an, bd) = if bd.is_one() { (an, bd) } else {
            let (_, x, y) = gcd_cofactors(&an, &bd);
            (x, y)
        };
        let (bn, ad) = if ad.is_one() { (bn, ad) } else {
            let (_, x, y) = gcd_cofactors(&bn, &ad);
            (x, y)
        };
        let num = an.mul(&bn);
        let den = ad.mul(&bd);
        let lc = den.leading_coeff();
        if lc.is_one() {
            Expr::pruned(atoms, num, den)
        } else {
            let inv = lc.inv();
            Expr::pruned(atoms, num.scale(&inv), den.scale(&inv))
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Expr, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.atoms.iter().any(|a| a.kind() == AtomKind::Sqrt) {
            return Expr::build(self.atoms.clone(), self.den.clone(), self.num.clone());
        }
        let lc = self.num.leading_coeff().inv();
        Ok(Expr { atoms: self.atoms.clone(), num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    pub fn checked_div(&self, o: &Expr) -> Result<Expr, Error> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, k: i64) -> Result<Expr, Error> {
        if k < 0 {
            return self.inv()?.powi(-k);
        }
        let mut acc = Expr::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Expr {
        self.powi(k as i64).expect("nonnegative power")
    }

    // ------------------------------------------------------------ functions

    pub fn atan(arg: &Expr) -> Expr {
        if arg.is_zero() {
            return Expr::zero();
        }
        Expr::from_atom(Atom::function(AtomKind::Arctan, arg.clone()))
    }

    pub fn exp(arg: &Expr) -> Expr {
        if arg.is_zero() {
            return Expr::one();
        }
        Expr::from_atom(Atom::function(AtomKind::Exp, arg.clone()))
    }

    pub fn log(arg: &Expr) -> Result<Expr, Error> {
        if arg.is_zero() {
            return Err(Error::Domain("log(0)".into()));
        }
        if arg.is_one() {
            return Ok(Expr::zero());
        }
        Ok(Expr::from_atom(Atom::function(AtomKind::Log, arg.clone())))
    }

    pub fn sqrt(arg: &Expr) -> Expr {
        if arg.is_zero() || arg.is_one() {
            return arg.clone();
        }
        Expr::from_atom(Atom::function(AtomKind::Sqrt, arg.clone()))
    }

    pub(crate) fn apply_kind(kind: AtomKind, arg: &Expr) -> Result<Expr, Error> {
        Ok(match kind {
            AtomKind::Arctan => Expr::atan(arg),
            AtomKind::Exp => Expr::exp(arg),
            AtomKind::Log => Expr::log(arg)?,
            AtomKind::Sqrt => Expr::sqrt(arg),
            AtomKind::Variable => unreachable!("variables are not functions"),
        })
    }
}

/// Reduces `sqrt` atoms: exponents above one are folded into the argument and
/// the denominator is rationalized. Atoms are processed from the top of the
/// tower down, so lower relations introduced by the arguments are handled too.
fn reduce_sqrt(atoms: Arc<[Atom]>, num: Poly, den: Poly) -> Result<(Arc<[Atom]>, Poly, Poly), Error> {
    let mut atoms = atoms;
    let mut num = num;
    let mut den = den;
    let mut done: Vec<Atom> = Vec::new();
    loop {
        // Highest unprocessed sqrt atom that needs work.
        let pick = atoms
            .iter()
            .enumerate()
            .rev()
            .find(|(k, a)| {
                a.kind() == AtomKind::Sqrt
                    && !done.contains(a)
                    && (num.degree_in(*k) >= 2 || den.uses_var(*k))
            })
            .map(|(_, a)| a.clone());
        let Some(s) = pick else { break };
        done.push(s.clone());
        let g = s.arg().unwrap().clone();
        let (merged, m_self, m_g) = merge_atoms(&atoms, &g.atoms);
        let n = merged.len();
        num = lift(&num, n, &m_self);
        den = lift(&den, n, &m_self);
        let gn = lift(&g.num, n, &m_g);
        let gd = lift(&g.den, n, &m_g);
        atoms = merged;
        let k = atoms.iter().position(|a| *a == s).unwrap();
        // Fold s^2 -> gn/gd.
        let qmax = num.degree_in(k).max(den.degree_in(k)) / 2;
        if qmax > 0 {
            num = fold_square(&num, k, &gn, &gd, qmax);
            den = fold_square(&den, k, &gn, &gd, qmax);
        }
        if den.uses_var(k) {
            let (d0, d1) = split_linear(&den, k);
            let conj = d0.sub(&d1.mul(&Poly::var(n, k)));
            let prod = num.mul(&conj);
            let (m0, m1, m2) = split_quadratic(&prod, k);
            let sv = Poly::var(n, k);
            num = gd.mul(&m0).add(&gn.mul(&m2)).add(&gd.mul(&m1).mul(&sv));
            den = gd.mul(&d0.mul(&d0)).sub(&gn.mul(&d1.mul(&d1)));
            if den.is_zero() {
                return Err(Error::Domain(format!("{} satisfies a rational relation", s.key())));
            }
        }
    }
    Ok((atoms, num, den))
}

/// `p · gd^q` with every `s^(2j+r)` replaced by `gn^j gd^(q-j) s^r`.
fn fold_square(p: &Poly, k: usize, gn: &Poly, gd: &Poly, q: u32) -> Poly {
    let n = p.nvars();
    let mut out = Poly::zero(n);
    let mut gn_pows = vec![Poly::one(n)];
    let mut gd_pows = vec![Poly::one(n)];
    for j in 1..=q as usize {
        gn_pows.push(gn_pows[j - 1].mul(gn));
        gd_pows.push(gd_pows[j - 1].mul(gd));
    }
    for (e, c) in p.coefficients_in(k) {
        let j = (e / 2) as usize;
        let r = e % 2;
        let mut t = c.mul(&gn_pows[j]).mul(&gd_pows[q as usize - j]);
        if r == 1 {
            t = t.mul(&Poly::var(n, k));
        }
        out = out.add(&t);
    }
    out
}

fn split_linear(p: &Poly, k: usize) -> (Poly, Poly) {
    let (a, b, c) = split_quadratic(p, k);
    debug_assert!(c.is_zero());
    (a, b)
}

fn split_quadratic(p: &Poly, k: usize) -> (Poly, Poly, Poly) {
    let n = p.nvars();
    let mut parts = [Poly::zero(n), Poly::zero(n), Poly::zero(n)];
    for (e, c) in p.coefficients_in(k) {
        assert!(e <= 2, "sqrt exponent not reduced");
        parts[e as usize] = c;
    }
    let [a, b, c] = parts;
    (a, b, c)
}

macro_rules! expr_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a> $tr<&'a Expr> for &'a Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                self.$f(o)
            }
        }
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                self.$f(&o)
            }
        }
        impl<'a> $tr<&'a Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                self.$f(o)
            }
        }
        impl<'a> $tr<Expr> for &'a Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                self.$f(&o)
            }
        }
    };
}

expr_binop!(Add, add, add_ref);
expr_binop!(Sub, sub, sub_ref);
expr_binop!(Mul, mul, mul_ref);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.neg_ref()
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.neg_ref()
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<GaussRat> for Expr {
    fn from(c: GaussRat) -> Expr {
        Expr::constant(c)
    }
}

impl From<Rat> for Expr {
    fn from(c: Rat) -> Expr {
        Expr::constant(GaussRat::real(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Expr {
        Expr::var("z")
    }
    fn zb() -> Expr {
        Expr::var("zb")
    }

    #[test]
    fn cancellation() {
        let num = z().pow(2) - zb().pow(2);
        let den = z() - zb();
        assert_eq!(num.checked_div(&den).unwrap(), z() + zb());
    }

    #[test]
    fn inverse_product() {
        let a = Expr::one() + z().pow(2);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn atoms_pruned() {
        let e = (z() + zb()) - zb();
        assert_eq!(e.atoms().len(), 1);
        assert_eq!(e, z());
    }

    #[test]
    fn sqrt_relation() {
        let s = Expr::sqrt(&(Expr::one() + z()));
        assert_eq!(&s * &s, Expr::one() + z());
        let r = s.inv().unwrap();
        assert!(!r.is_polynomial());
        assert_eq!(&r * &s, Expr::one());
        let t = (Expr::one() + s.clone()).inv().unwrap();
        assert_eq!(t * (Expr::one() + s), Expr::one());
    }

    #[test]
    fn denominators_monic() {
        let e = Expr::one().checked_div(&(z().scale(&GaussRat::int(3)) + Expr::one())).unwrap();
        assert!(e.denominator().leading_coeff().is_one());
    }
}
