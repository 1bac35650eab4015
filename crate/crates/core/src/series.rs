//! Multivariate power series truncated at a total degree.
//!
//! A [`TruncSeries`] of order `Ω` stores the exact coefficients of every
//! monomial of total degree `< Ω`. Arithmetic is exact modulo degree `Ω`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::symkernel::expr::{Atom, AtomKind, Expr};
use crate::symkernel::gcd::Poly;
use crate::symkernel::poly::{mono_degree, mono_divides, mono_mul, MPoly, Mono};
use crate::symkernel::scalar::{Coeff, GaussRat};

#[derive(Clone, PartialEq)]
pub struct TruncSeries<C> {
    vars: Arc<[String]>,
    order: u32,
    /// Sorted by (total degree, exponent vector); no zeros, all degrees `< order`.
    terms: Vec<(Mono, C)>,
}

fn deg(m: &[u16]) -> u32 {
    mono_degree(m)
}

fn sort_terms<C>(terms: &mut [(Mono, C)]) {
    terms.sort_by(|a, b| deg(&a.0).cmp(&deg(&b.0)).then_with(|| a.0.cmp(&b.0)));
}

fn ratio<C: Coeff>(n: i64, d: i64) -> C {
    C::from_i64(n).mul_ref(&C::from_i64(d).inv())
}

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(vars: &[&str], order: u32) -> Self {
        TruncSeries { vars: vars.iter().map(|s| s.to_string()).collect(), order, terms: Vec::new() }
    }

    fn empty_like(&self, order: u32) -> Self {
        TruncSeries { vars: self.vars.clone(), order, terms: Vec::new() }
    }

    pub fn constant(vars: &[&str], order: u32, c: C) -> Self {
        let mut s = Self::zero(vars, order);
        if order > 0 && !c.is_zero() {
            s.terms.push((Mono::from_elem(0, vars.len()), c));
        }
        s
    }

    /// The series of the coordinate `name`; panics if `name` is not in `vars`.
    pub fn var(vars: &[&str], order: u32, name: &str) -> Self {
        let k = vars.iter().position(|v| *v == name).unwrap_or_else(|| panic!("unknown series variable {name}"));
        let mut s = Self::zero(vars, order);
        if order > 1 {
            let mut m = Mono::from_elem(0, vars.len());
            m[k] = 1;
            s.terms.push((m, C::one()));
        }
        s
    }

    /// Builds from arbitrary terms: merges duplicates, drops zeros and terms of degree `>= order`.
    pub fn from_terms<I: IntoIterator<Item = (Mono, C)>>(vars: &[&str], order: u32, terms: I) -> Self {
        let s = Self::zero(vars, order);
        s.with_terms(terms)
    }

    fn with_terms<I: IntoIterator<Item = (Mono, C)>>(&self, terms: I) -> Self {
        let mut acc: HashMap<Mono, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), self.vars.len(), "exponent vector length mismatch");
            if deg(&m) >= self.order {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = v.add_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        self.from_map(self.order, acc)
    }

    fn from_map(&self, order: u32, acc: HashMap<Mono, C>) -> Self {
        let mut terms: Vec<(Mono, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(&mut terms);
        TruncSeries { vars: self.vars.clone(), order, terms }
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u16]) -> C {
        self.terms.iter().find(|(t, _)| t.as_slice() == m).map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        match self.terms.first() {
            Some((m, c)) if deg(m) == 0 => c.clone(),
            _ => C::zero(),
        }
    }

    /// Lowest total degree present, `None` for the zero series.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| deg(m))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let terms = self.terms.iter().take_while(|(m, _)| deg(m) < order).cloned().collect();
        TruncSeries { vars: self.vars.clone(), order, terms }
    }

    /// Same coefficients, reinterpreted at a higher precision (treats the jet as exact).
    pub fn with_order(&self, order: u32) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        TruncSeries { vars: self.vars.clone(), order, terms: self.terms.clone() }
    }

    fn check_compatible(&self, o: &Self) {
        assert!(self.vars == o.vars, "series over different variables: {:?} vs {:?}", self.vars, o.vars);
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compatible(o);
        let order = self.order.min(o.order);
        let mut acc: HashMap<Mono, C> = HashMap::with_capacity(self.terms.len() + o.terms.len());
        for (m, c) in self.terms.iter().chain(&o.terms) {
            if deg(m) >= order {
                continue;
            }
            match acc.get_mut(m) {
                Some(v) => *v = v.add_ref(c),
                None => {
                    acc.insert(m.clone(), c.clone());
                }
            }
        }
        self.from_map(order, acc)
    }

    pub fn neg(&self) -> Self {
        TruncSeries { vars: self.vars.clone(), order: self.order, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return self.empty_like(self.order);
        }
        TruncSeries { vars: self.vars.clone(), order: self.order, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))).collect() }
    }

    pub fn add_constant(&self, c: &C) -> Self {
        self.add(&Self::constant(&self.vars(), self.order, c.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_to(o, self.order.min(o.order))
    }

    /// Product truncated at `order` (at most the inputs' orders).
    pub fn mul_to(&self, o: &Self, order: u32) -> Self {
        self.check_compatible(o);
        let order = order.min(self.order).min(o.order);
        let mut acc: HashMap<Mono, C> = HashMap::new();
        let bdeg: Vec<u32> = o.terms.iter().map(|(m, _)| deg(m)).collect();
        for (ma, ca) in &self.terms {
            let da = deg(ma);
            if da >= order {
                break;
            }
            for ((mb, cb), &db) in o.terms.iter().zip(&bdeg) {
                if da + db >= order {
                    break;
                }
                let m = mono_mul(ma, mb);
                let p = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add_ref(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        self.from_map(order, acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::constant(&self.vars(), self.order, C::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse by Newton iteration; fails on a zero constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotExpandable("inverse of a series vanishing at the origin".into()));
        }
        let two = C::from_i64(2);
        let mut g = Self::constant(&self.vars(), 1.min(self.order), c0.inv());
        let mut p = 1u32;
        while p < self.order {
            p = (2 * p).min(self.order);
            let g2 = g.with_order(p);
            let fg = self.truncate(p).mul(&g2);
            let corr = fg.neg().add_constant(&two);
            g = g2.mul(&corr);
        }
        Ok(g.truncate(self.order))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Partial derivative; the order drops by one.
    pub fn derivative(&self, k: usize) -> Self {
        let order = self.order.saturating_sub(1);
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m[k];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[k] -= 1;
            terms.push((m2, c.mul_ref(&C::from_i64(e as i64))));
        }
        sort_terms(&mut terms);
        TruncSeries { vars: self.vars.clone(), order, terms }
    }

    pub fn derivative_by(&self, name: &str) -> Self {
        let k = self.var_index(name).unwrap_or_else(|| panic!("unknown series variable {name}"));
        self.derivative(k)
    }

    /// Sets the coordinate `k` to zero.
    pub fn at_zero(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m[k] == 0).cloned().collect();
        TruncSeries { vars: self.vars.clone(), order: self.order, terms }
    }

    /// Same coefficients with the variables renamed positionally.
    pub fn rename(&self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.vars.len());
        TruncSeries { vars: names.iter().map(|s| s.to_string()).collect(), order: self.order, terms: self.terms.clone() }
    }

    /// Re-expresses the series over `vars`, which must contain every variable in use.
    pub fn embed(&self, vars: &[&str]) -> Result<Self> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (k, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.iter().any(|(m, _)| m[k] > 0) {
                        return Err(Error::Precondition(format!("series variable {v} is not in the target list")));
                    }
                    map.push(None);
                }
            }
        }
        let target = Self::zero(vars, self.order);
        Ok(target.with_terms(self.terms.iter().map(|(m, c)| {
            let mut out = Mono::from_elem(0, vars.len());
            for (k, &e) in m.iter().enumerate() {
                if let Some(j) = map[k] {
                    out[j] = e;
                }
            }
            (out, c.clone())
        })))
    }

    /// Substitutes `subs[i]` for the `i`-th variable. Substituted series must
    /// vanish at the origin; the result has the smaller of the input orders.
    pub fn compose(&self, subs: &[Self]) -> Result<Self> {
        assert_eq!(subs.len(), self.nvars(), "one substitution per variable");
        for (k, s) in subs.iter().enumerate() {
            if !s.constant_term().is_zero() && self.terms.iter().any(|(m, _)| m[k] > 0) {
                return Err(Error::Precondition(format!("substitution for {} does not vanish at the origin", self.vars[k])));
            }
        }
        let order = subs.iter().map(|s| s.order).min().unwrap_or(self.order).min(self.order);
        let Some(first) = subs.first() else {
            return Ok(self.clone());
        };
        Ok(eval_terms(&self.terms, subs, first, order))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        let mut terms: Vec<(Mono, D)> = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(&mut terms);
        TruncSeries { vars: self.vars.clone(), order: self.order, terms }
    }
}

/// Evaluates a polynomial given by `terms` at the series `subs` (recursive Horner).
fn eval_terms<C: Coeff>(terms: &[(Mono, C)], subs: &[TruncSeries<C>], like: &TruncSeries<C>, order: u32) -> TruncSeries<C> {
    let refs: Vec<(&[u16], &C)> = terms.iter().map(|(m, c)| (m.as_slice(), c)).collect();
    horner(&refs, 0, subs, like, order)
}

fn horner<C: Coeff>(terms: &[(&[u16], &C)], k: usize, subs: &[TruncSeries<C>], like: &TruncSeries<C>, order: u32) -> TruncSeries<C> {
    if terms.is_empty() {
        return like.empty_like(order);
    }
    if k == subs.len() {
        let mut c = C::zero();
        for (_, t) in terms {
            c = c.add_ref(t);
        }
        return TruncSeries::constant(&like.vars(), order, c);
    }
    let top = terms.iter().map(|(m, _)| m[k]).max().unwrap();
    if top == 0 {
        return horner(terms, k + 1, subs, like, order);
    }
    let mut groups: Vec<Vec<(&[u16], &C)>> = vec![Vec::new(); top as usize + 1];
    for &(m, c) in terms {
        groups[m[k] as usize].push((m, c));
    }
    let s = &subs[k];
    let val = s.valuation().unwrap_or(order).max(1);
    let mut acc = like.empty_like(order);
    for e in (0..=top as usize).rev() {
        // Terms multiplied by s^e only matter below degree order - e*val.
        let need = order.saturating_sub(e as u32 * val);
        if e < top as usize {
            acc = acc.mul_to(s, order);
        }
        if need > 0 && !groups[e].is_empty() {
            let part = horner(&groups[e], k + 1, subs, like, need).with_order(order);
            acc = acc.add(&part);
        }
    }
    acc
}

impl<C: Coeff + fmt::Display> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (j, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.vars[j])?,
                    _ => write!(f, "*{}^{}", self.vars[j], e)?,
                }
            }
        }
        write!(f, " + O(deg {})", self.order)
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncSeries").field("vars", &self.vars).field("order", &self.order).field("terms", &self.terms).finish()
    }
}

// ---------------------------------------------------------------- univariate kernels

/// Coefficients `c_k`, `k < n`, of a known univariate series.
fn known_series<C: Coeff>(kind: AtomKind, n: u32) -> Vec<C> {
    let mut out = Vec::with_capacity(n as usize);
    match kind {
        AtomKind::Arctan => {
            for k in 0..n as i64 {
                out.push(if k % 2 == 0 { C::zero() } else if k % 4 == 1 { ratio(1, k) } else { ratio(-1, k) });
            }
        }
        AtomKind::Exp => {
            let mut c = C::one();
            for k in 0..n as i64 {
                if k > 0 {
                    c = c.mul_ref(&ratio(1, k));
                }
                out.push(c.clone());
            }
        }
        AtomKind::Log => {
            // log(1 + s)
            for k in 0..n as i64 {
                out.push(if k == 0 { C::zero() } else if k % 2 == 1 { ratio(1, k) } else { ratio(-1, k) });
            }
        }
        AtomKind::Sqrt => {
            // sqrt(1 + s): c_{k+1} = c_k (1/2 - k) / (k + 1)
            let mut c = C::one();
            for k in 0..n as i64 {
                out.push(c.clone());
                c = c.mul_ref(&ratio(1 - 2 * k, 2 * (k + 1)));
            }
        }
        AtomKind::Variable => unreachable!("variables have no series kernel"),
    }
    out
}

/// `Σ c_k s^k` truncated at `order`; `s` must vanish at the origin.
pub fn apply_univariate<C: Coeff>(coeffs: &[C], s: &TruncSeries<C>, order: u32) -> TruncSeries<C> {
    let mut acc = s.empty_like(order);
    for c in coeffs.iter().rev() {
        acc = acc.mul_to(s, order).add_constant(c);
    }
    acc.truncate(order)
}

// ---------------------------------------------------------------- expand

pub type Series = TruncSeries<GaussRat>;

/// Taylor expansion of `e` at the origin in `vars`, exact below total degree `order`.
pub fn expand(e: &Expr, vars: &[&str], order: u32) -> Result<Series> {
    for v in e.variables() {
        if !vars.contains(&v.as_str()) {
            return Err(Error::Precondition(format!("variable {v} is not an expansion variable")));
        }
    }
    let mut cache = HashMap::new();
    expand_inner(e, vars, order, &mut cache)
}

fn expand_inner(e: &Expr, vars: &[&str], order: u32, cache: &mut HashMap<(String, u32), Series>) -> Result<Series> {
    let atoms: Vec<Series> = e.atoms().iter().map(|a| atom_series(a, vars, order, cache)).collect::<Result<_>>()?;
    let like = Series::zero(vars, order);
    let den = e.denominator();
    let d0 = eval_poly(den, &atoms, &like, order);
    if !d0.constant_term().is_zero() {
        let n0 = eval_poly(e.numerator(), &atoms, &like, order);
        return n0.div(&d0);
    }
    // Removable singularity: the denominator is a monomial times a unit.
    let Some((lead, _)) = d0.terms().first() else {
        return Err(Error::NotExpandable(format!("denominator of {e} vanishes identically in the expansion")));
    };
    let lead = lead.clone();
    let shift = deg(&lead);
    let wider: Vec<Series> = e.atoms().iter().map(|a| atom_series(a, vars, order + shift, cache)).collect::<Result<_>>()?;
    let like2 = Series::zero(vars, order + shift);
    let n = eval_poly(e.numerator(), &wider, &like2, order + shift);
    let d = eval_poly(den, &wider, &like2, order + shift);
    let divide = |s: &Series| -> Option<Series> {
        let mut terms = Vec::with_capacity(s.len());
        for (m, c) in s.terms() {
            if !mono_divides(&lead, m) {
                return None;
            }
            let q: Mono = m.iter().zip(&lead).map(|(a, b)| a - b).collect();
            terms.push((q, c.clone()));
        }
        Some(Series::from_terms(vars, order, terms))
    };
    match (divide(&n), divide(&d)) {
        (Some(nq), Some(dq)) if !dq.constant_term().is_zero() => nq.div(&dq),
        _ => Err(Error::NotExpandable(format!("{e} has a pole at the origin"))),
    }
}

fn eval_poly(p: &Poly, atoms: &[Series], like: &Series, order: u32) -> Series {
    if atoms.is_empty() {
        return Series::constant(&like.vars(), order, p.constant_term());
    }
    eval_terms(p.terms(), atoms, like, order)
}

fn atom_series(a: &Atom, vars: &[&str], order: u32, cache: &mut HashMap<(String, u32), Series>) -> Result<Series> {
    if a.is_variable() {
        return Ok(Series::var(vars, order, a.name()));
    }
    let key = (a.key().to_string(), order);
    if let Some(s) = cache.get(&key) {
        return Ok(s.clone());
    }
    let arg = expand_inner(a.arg().expect("function atom has an argument"), vars, order, cache)?;
    let c0 = arg.constant_term();
    let (base, shift) = match a.kind() {
        AtomKind::Arctan | AtomKind::Exp => (GaussRat::int(0), arg.clone()),
        _ => (GaussRat::int(1), arg.add_constant(&GaussRat::int(-1))),
    };
    if c0 != base {
        return Err(Error::NotExpandable(format!("{} is a branch point or has no exact value at the origin", a.key())));
    }
    let s = apply_univariate(&known_series::<GaussRat>(a.kind(), order), &shift, order);
    cache.insert(key, s.clone());
    Ok(s)
}

impl Series {
    /// The truncated jet as a polynomial expression.
    pub fn to_expr(&self) -> Expr {
        let mut atoms: Vec<(Atom, usize)> = self.vars.iter().enumerate().map(|(k, v)| (Atom::variable(v), k)).collect();
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        let n = atoms.len();
        let mut pos = vec![0usize; n];
        for (j, (_, k)) in atoms.iter().enumerate() {
            pos[*k] = j;
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Mono::from_elem(0, n);
            for (k, &e) in m.iter().enumerate() {
                out[pos[k]] = e;
            }
            (out, c.clone())
        });
        let num = MPoly::from_terms(n, terms.collect());
        let atoms: Arc<[Atom]> = atoms.into_iter().map(|(a, _)| a).collect();
        Expr::pruned(atoms, num, Poly::one(n))
    }

    pub fn sigma_coeffs(&self) -> Series {
        self.map_coeffs(|c| c.conj())
    }
}

// ---------------------------------------------------------------- implicit solving

/// Square matrix of series inverted by Gauss-Jordan elimination on unit pivots.
fn invert_matrix<C: Coeff>(m: &[Vec<TruncSeries<C>>]) -> Result<Vec<Vec<TruncSeries<C>>>> {
    let n = m.len();
    let like = &m[0][0];
    let order = like.order;
    let mut a: Vec<Vec<TruncSeries<C>>> = m.to_vec();
    let mut inv: Vec<Vec<TruncSeries<C>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { TruncSeries::constant(&like.vars(), order, C::one()) } else { like.empty_like(order) }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].constant_term().is_zero())
            .ok_or_else(|| Error::LeviDegenerate("singular Jacobian at the origin".into()))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&p);
            inv[col][j] = inv[col][j].mul(&p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Ok(inv)
}

/// Solves `F_j(x, u) = 0` for the `unknowns` as series in the remaining
/// variables, to total degree `order`, by Newton iteration with doubling.
///
/// All equations share one variable list and must vanish at the origin.
pub fn solve_implicit<C: Coeff>(equations: &[TruncSeries<C>], unknowns: &[&str], order: u32) -> Result<Vec<TruncSeries<C>>> {
    assert_eq!(equations.len(), unknowns.len(), "square system expected");
    let all = equations[0].vars();
    let uidx: Vec<usize> = unknowns
        .iter()
        .map(|u| all.iter().position(|v| v == u).ok_or_else(|| Error::Precondition(format!("unknown {u} is not a variable of the system"))))
        .collect::<Result<_>>()?;
    let params: Vec<&str> = all.iter().enumerate().filter(|(k, _)| !uidx.contains(k)).map(|(_, v)| *v).collect();
    for f in equations {
        if !f.constant_term().is_zero() {
            return Err(Error::Precondition("equation does not vanish at the origin".into()));
        }
    }
    let order = order.min(equations.iter().map(|f| f.order()).min().unwrap());
    let n = unknowns.len();
    let jac: Vec<Vec<TruncSeries<C>>> = equations.iter().map(|f| uidx.iter().map(|&k| f.derivative(k)).collect()).collect();
    let jac0: Vec<Vec<TruncSeries<C>>> = jac
        .iter()
        .map(|row| row.iter().map(|d| TruncSeries::constant(&params, 1, d.constant_term())).collect())
        .collect();
    invert_matrix(&jac0)?;

    let mut u: Vec<TruncSeries<C>> = vec![TruncSeries::zero(&params, 1); n];
    let mut p = 1u32;
    let subs_at = |u: &[TruncSeries<C>], prec: u32| -> Vec<TruncSeries<C>> {
        let mut subs = Vec::with_capacity(all.len());
        let mut ui = 0;
        for (k, v) in all.iter().enumerate() {
            if uidx.contains(&k) {
                let j = uidx.iter().position(|&x| x == k).unwrap();
                subs.push(u[j].with_order(prec));
                ui += 1;
            } else {
                subs.push(TruncSeries::var(&params, prec, v));
            }
        }
        debug_assert_eq!(ui, n);
        subs
    };
    while p < order {
        let p2 = (2 * p).min(order);
        let subs2 = subs_at(&u, p2);
        let fval: Vec<TruncSeries<C>> = equations.iter().map(|f| f.compose(&subs2)).collect::<Result<_>>()?;
        let subs1 = subs_at(&u, p);
        let jm: Vec<Vec<TruncSeries<C>>> =
            jac.iter().map(|row| row.iter().map(|d| d.compose(&subs1)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        let jinv = invert_matrix(&jm)?;
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut delta = TruncSeries::zero(&params, p2);
            for j in 0..n {
                delta = delta.add(&jinv[i][j].with_order(p2).mul_to(&fval[j], p2));
            }
            next.push(u[i].with_order(p2).sub(&delta));
        }
        u = next;
        p = p2;
    }
    Ok(u.into_iter().map(|s| s.with_order(order)).collect())
}

/// Compositional inverse of a univariate series with `f(0) = 0`, `f'(0) ≠ 0`.
pub fn invert_series<C: Coeff>(f: &TruncSeries<C>, order: u32) -> Result<TruncSeries<C>> {
    if f.nvars() != 1 {
        return Err(Error::Precondition("compositional inverse needs a univariate series".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Precondition("series does not vanish at the origin".into()));
    }
    let t = f.vars()[0].to_string();
    let g = format!("{t}#inv");
    let vars = [t.as_str(), g.as_str()];
    let order = order.min(f.order());
    let lifted = f.rename(&[g.as_str()]).embed(&vars)?;
    let eq = lifted.sub(&TruncSeries::var(&vars, order, &t));
    let mut sol = solve_implicit(&[eq], &[g.as_str()], order)?;
    Ok(sol.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_expr;
    use smallvec::smallvec;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::frac(n, d)
    }

    fn uni(coeffs: &[(i64, i64)], order: u32) -> Series {
        Series::from_terms(&["t"], order, coeffs.iter().enumerate().map(|(k, &(n, d))| (smallvec![k as u16], q(n, d))))
    }

    #[test]
    fn geometric() {
        let s = expand(&parse_expr("1/(1-z)").unwrap(), &["z"], 4).unwrap();
        assert_eq!(s, Series::from_terms(&["z"], 4, (0..4).map(|k| (smallvec![k], q(1, 1)))));
    }

    #[test]
    fn arctan_known() {
        let s = expand(&parse_expr("atan(zb)").unwrap(), &["zb"], 6).unwrap();
        assert_eq!(s, Series::from_terms(&["zb"], 6, [(smallvec![1], q(1, 1)), (smallvec![3], q(-1, 3)), (smallvec![5], q(1, 5))]));
    }

    #[test]
    fn removable_singularity() {
        let s = expand(&parse_expr("atan(z)/z").unwrap(), &["z"], 4).unwrap();
        assert_eq!(s, Series::from_terms(&["z"], 4, [(smallvec![0], q(1, 1)), (smallvec![2], q(-1, 3))]));
        assert!(expand(&parse_expr("1/z").unwrap(), &["z"], 4).is_err());
        assert!(expand(&parse_expr("log(z)").unwrap(), &["z"], 4).is_err());
    }

    #[test]
    fn inverse_examples() {
        let g = invert_series(&uni(&[(0, 1), (2, 1)], 6), 6).unwrap();
        assert_eq!(g, uni(&[(0, 1), (1, 2)], 6));
        let g = invert_series(&uni(&[(0, 1), (1, 1), (1, 1)], 5), 5).unwrap();
        assert_eq!(g, uni(&[(0, 1), (1, 1), (-1, 1), (2, 1), (-5, 1)], 5));
        assert!(matches!(invert_series(&uni(&[(0, 1), (0, 1), (1, 1)], 5), 5), Err(Error::LeviDegenerate(_))));
    }
}
