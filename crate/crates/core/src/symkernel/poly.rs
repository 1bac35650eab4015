//! Sparse multivariate polynomials over a [`Coeff`] field.
//!
//! Terms are kept strictly decreasing in lexicographic order of the dense
//! exponent vector, so variable 0 is the most significant and `terms[0]`
//! is the leading term.

use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use super::scalar::Coeff;

pub type Mono = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<C> {
    nvars: usize,
    terms: Vec<(Mono, C)>,
}

pub fn mono_mul(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_divides(d: &[u16], m: &[u16]) -> bool {
    d.iter().zip(m).all(|(x, y)| x <= y)
}

pub fn mono_div(m: &[u16], d: &[u16]) -> Mono {
    m.iter().zip(d).map(|(x, y)| x - y).collect()
}

pub fn mono_degree(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly { nvars, terms: vec![(SmallVec::from_elem(0, nvars), c)] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m: Mono = SmallVec::from_elem(0, nvars);
        m[i] = 1;
        MPoly { nvars, terms: vec![(m, C::one())] }
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let nvars = m.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly { nvars, terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: Vec<(Mono, C)>) -> Self {
        let mut map: BTreeMap<Mono, C> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), nvars);
            match map.get_mut(&m) {
                Some(x) => *x = x.add_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { nvars, terms }
    }

    /// Builds from terms already sorted strictly decreasing with no zeros.
    pub fn from_sorted_unchecked(nvars: usize, terms: Vec<(Mono, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
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

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.terms.is_empty() && self.terms[0].1.is_one()
    }

    pub fn constant_term(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.iter().all(|&e| e == 0) => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[i] as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| mono_degree(m)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[i] > 0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Mono {
        let mut out: Mono = SmallVec::from_elem(0, self.nvars);
        if let Some((first, _)) = self.terms.first() {
            out = first.clone();
            for (m, _) in &self.terms[1..] {
                for (o, &e) in out.iter_mut().zip(m.iter()) {
                    *o = (*o).min(e);
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_ref(c))).collect(),
        }
    }

    pub fn mul_term(&self, mono: &[u16], c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (mono_mul(m, mono), x.mul_ref(c))).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv()),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -t.1.clone() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Mono, C> = HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = mono_mul(ma, mb);
                let p = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add_ref(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { nvars: self.nvars, terms }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn deriv(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2[i];
                m2[i] -= 1;
                (m2, c.mul_ref(&C::from_i64(e as i64)))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        // Lowering one exponent on every surviving term keeps lex order.
        MPoly { nvars: self.nvars, terms }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let inv = dc.inv();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !mono_divides(dm, m) {
                    return None;
                }
                out.push((mono_div(m, dm), c.mul_ref(&inv)));
            }
            return Some(MPoly { nvars: self.nvars, terms: out });
        }
        let (dlm, dlc) = &d.terms[0];
        let dinv = dlc.inv();
        // Degree bound per variable for early failure.
        for i in 0..self.nvars {
            if d.degree_in(i) > self.degree_in(i) {
                return None;
            }
        }
        let mut rem: BTreeMap<Mono, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !mono_divides(dlm, &m) {
                return None;
            }
            let qm = mono_div(&m, dlm);
            let qc = c.mul_ref(&dinv);
            for (tm, tc) in &d.terms[1..] {
                let pm = mono_mul(&qm, tm);
                let pc = qc.mul_ref(tc);
                match rem.get_mut(&pm) {
                    Some(x) => {
                        let nx = x.sub_ref(&pc);
                        if nx.is_zero() {
                            rem.remove(&pm);
                        } else {
                            *x = nx;
                        }
                    }
                    None => {
                        rem.insert(pm, -pc);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(MPoly { nvars: self.nvars, terms: quot })
    }

    /// Substitutes the constant `val` for variable `i`.
    pub fn eval_var(&self, i: usize, val: &C) -> Self {
        let mut pows: Vec<C> = vec![C::one()];
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m[i] as usize;
            while pows.len() <= e {
                let next = pows.last().unwrap().mul_ref(val);
                pows.push(next);
            }
            let mut m2 = m.clone();
            m2[i] = 0;
            terms.push((m2, c.mul_ref(&pows[e])));
        }
        Self::from_terms(self.nvars, terms)
    }

    /// Re-indexes into `new_nvars` variables; old variable `k` becomes `map[k]`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Self {
        let mut terms: Vec<(Mono, C)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut nm: Mono = SmallVec::from_elem(0, new_nvars);
                for (k, &e) in m.iter().enumerate() {
                    if e > 0 {
                        nm[map[k]] += e;
                    }
                }
                (nm, c.clone())
            })
            .collect();
        let monotone = map.windows(2).all(|w| w[0] < w[1]);
        if !monotone {
            // A permutation or merge can collide or reorder monomials.
            return Self::from_terms(new_nvars, terms);
        }
        terms.shrink_to_fit();
        MPoly { nvars: new_nvars, terms }
    }

    /// Removes the variables with `keep[k] == false`; they must be unused.
    pub fn drop_vars(&self, keep: &[bool]) -> Self {
        let nvars = keep.iter().filter(|&&k| k).count();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(m.iter().zip(keep).all(|(&e, &k)| k || e == 0));
                let nm: Mono = m.iter().zip(keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
                (nm, c.clone())
            })
            .collect();
        MPoly { nvars, terms }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MPoly { nvars: self.nvars, terms }
    }

    /// Like [`map_coeffs`](Self::map_coeffs) but fails if any image fails.
    pub fn try_map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Option<D>) -> Option<MPoly<D>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((m.clone(), d));
            }
        }
        Some(MPoly { nvars: self.nvars, terms })
    }

    /// Groups terms by the exponent of variable `i`: returns `(e, coefficient poly)`
    /// pairs with the variable removed (exponent set to 0), descending in `e`.
    pub fn coefficients_in(&self, i: usize) -> Vec<(u16, Self)> {
        let mut groups: BTreeMap<u16, Vec<(Mono, C)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[i];
            m2[i] = 0;
            groups.entry(e).or_default().push((m2, c.clone()));
        }
        groups
            .into_iter()
            .rev()
            .map(|(e, ts)| {
                let mut ts = ts;
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                (e, MPoly { nvars: self.nvars, terms: ts })
            })
            .collect()
    }

    /// Multiplies by the monomial `x^m`.
    pub fn shift(&self, m: &[u16]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (mono_mul(t, m), c.clone())).collect(),
        }
    }

    /// Divides by the monomial `x^m`; every term must be divisible.
    pub fn unshift(&self, m: &[u16]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (mono_div(t, m), c.clone())).collect(),
        }
    }
}

/// Monic gcd of two univariate polynomials in variable `i` over a field.
pub fn univariate_gcd<C: Coeff>(a: &MPoly<C>, b: &MPoly<C>, i: usize) -> MPoly<C> {
    let to_dense = |p: &MPoly<C>| -> Vec<C> {
        let d = p.degree_in(i) as usize;
        let mut v = vec![C::zero(); d + 1];
        for (m, c) in p.terms() {
            v[m[i] as usize] = c.clone();
        }
        v
    };
    let mut x = to_dense(a);
    let mut y = to_dense(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    let n = a.nvars();
    if x.is_empty() {
        return MPoly::zero(n);
    }
    let inv = x.last().unwrap().inv();
    let terms = x
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let mut m: Mono = SmallVec::from_elem(0, n);
            m[i] = e as u16;
            (m, c.mul_ref(&inv))
        })
        .collect();
    MPoly::from_sorted_unchecked(n, terms)
}

pub(crate) fn trim<C: Coeff>(v: &mut Vec<C>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Remainder of dense univariate division (coefficients ascending).
pub(crate) fn dense_rem<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = b[db].inv();
    while r.len() > db {
        let k = r.len() - 1;
        let q = r[k].mul_ref(&inv);
        let off = k - db;
        for (j, bj) in b.iter().enumerate() {
            r[off + j] = r[off + j].sub_ref(&q.mul_ref(bj));
        }
        r.pop();
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::scalar::{Fp, Rat};

    type P = MPoly<Rat>;

    fn x(n: usize, i: usize) -> P {
        P::var(n, i)
    }

    #[test]
    fn ring_ops() {
        let a = x(2, 0).add(&x(2, 1));
        let b = x(2, 0).sub(&x(2, 1));
        let p = a.mul(&b);
        let expect = x(2, 0).pow(2).sub(&x(2, 1).pow(2));
        assert_eq!(p, expect);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&x(2, 0).add(&P::one(2))).is_none());
    }

    #[test]
    fn ordering_is_lex_descending() {
        let p = x(2, 1).pow(5).add(&x(2, 0)).add(&P::one(2));
        let ms: Vec<_> = p.terms().iter().map(|t| t.0.to_vec()).collect();
        assert_eq!(ms, vec![vec![1, 0], vec![0, 5], vec![0, 0]]);
    }

    #[test]
    fn derivative() {
        let p = x(2, 0).pow(3).mul(&x(2, 1)).scale(&Rat::from_int(2));
        let d = p.deriv(0);
        assert_eq!(d, x(2, 0).pow(2).mul(&x(2, 1)).scale(&Rat::from_int(6)));
    }

    #[test]
    fn univariate_gcd_fp() {
        const Q: u64 = 1_000_000_007;
        let t = MPoly::<Fp<Q>>::var(1, 0);
        let one = MPoly::<Fp<Q>>::one(1);
        let a = t.sub(&one).mul(&t.add(&one));
        let b = t.sub(&one).pow(2);
        assert_eq!(univariate_gcd(&a, &b, 0), t.sub(&one));
    }

    #[test]
    fn remap_permutation() {
        let p = x(2, 0).mul(&x(2, 1).pow(2));
        let q = p.remap(3, &[2, 0]);
        assert_eq!(q, x(3, 2).mul(&x(3, 0).pow(2)));
    }
}
