//! Bounded search for annihilating pseudo-polynomials of a series.
//!
//! A pseudo-polynomial is `P(x, y, u) = Σ_k a_k(x, y) u^k` with `a_k`
//! polynomial of degree `≤ d` in `y` and of total degree `≤ e` in `x`.
//! For each `N` the search forms one column per unknown coefficient,
//! holding the coefficients of `x^α y^j f^k` below the truncation order.
//!
//! Columns are ordered by `k`, then total degree, then exponent vector, so
//! the first dependent column determines the minimal annihilator. Ranks are
//! computed modulo a prime `p ≡ 1 (mod 4)`; full column rank modulo `p`
//! certifies an empty kernel over the Gaussian rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::Hypersurface;
use crate::linalg::{first_dependency, rank_profile};
use crate::segre::associated_ode;
use crate::series::Series;
use crate::symkernel::poly::Mono;
use crate::symkernel::{Expr, Fp, GaussRat, Rat};
use crate::with_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub n_max: u32,
    pub d_max: u32,
    pub e_max: u32,
    pub order: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { n_max: 4, d_max: 6, e_max: 6, order: 24 }
    }
}

impl SearchBounds {
    /// Order at which the system is overdetermined for a series in one variable.
    pub fn floor(&self) -> u32 {
        (self.n_max + 1) * (self.d_max + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.order == 0 {
            return Err(Error::Invalid("search bounds N and order must be positive".into()));
        }
        Ok(())
    }

    /// Unknowns and equations of the stage `N = n` for a series in `nx + 1` variables.
    pub fn system_size(&self, n: u32, nx: usize) -> (usize, usize) {
        let unknowns = (n as usize + 1) * (self.d_max as usize + 1) * binom(self.e_max as usize + nx, nx);
        (unknowns, binom(self.order as usize - 1 + nx + 1, nx + 1))
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// One coefficient `c · x^α y^j u^k` of a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessTerm {
    pub k: u32,
    pub x_exp: Vec<u32>,
    pub y_exp: u32,
    pub coeff: GaussRat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilatorWitness {
    pub n: u32,
    pub x_vars: Vec<String>,
    pub y_var: String,
    pub terms: Vec<WitnessTerm>,
    pub bounds: SearchBounds,
    pub verified_to: u32,
}

impl AnnihilatorWitness {
    /// The pseudo-polynomial as an expression in the series variables and `u`.
    pub fn to_expr(&self) -> Expr {
        let mut acc = Expr::zero();
        for t in &self.terms {
            let mut m = Expr::constant(t.coeff.clone()) * Expr::var("u").pow(t.k) * Expr::var(&self.y_var).pow(t.y_exp);
            for (v, e) in self.x_vars.iter().zip(&t.x_exp) {
                m = m * Expr::var(v).pow(*e);
            }
            acc = acc + m;
        }
        acc
    }

    /// `a_k` as a series over the variables of `f`.
    fn coefficient(&self, k: u32, f: &Series) -> Result<Series> {
        let vars = f.vars();
        let mut terms = Vec::new();
        for t in self.terms.iter().filter(|t| t.k == k) {
            let mut m = Mono::from_elem(0, vars.len());
            for (v, e) in self.x_vars.iter().zip(&t.x_exp) {
                let i = f.var_index(v).ok_or_else(|| Error::Invalid(format!("series lacks variable {v}")))?;
                m[i] = *e as u16;
            }
            let yi = f.var_index(&self.y_var).ok_or_else(|| Error::Invalid(format!("series lacks variable {}", self.y_var)))?;
            m[yi] = t.y_exp as u16;
            terms.push((m, t.coeff.clone()));
        }
        Ok(Series::from_terms(&vars, f.order(), terms))
    }
}

impl fmt::Display for AnnihilatorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Rank data of one stage, computed modulo `prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCertificate {
    pub n: u32,
    pub rows: usize,
    pub columns: usize,
    pub rank: usize,
    pub prime: u64,
}

impl StageCertificate {
    /// More unknowns than equations: a kernel exists for dimension reasons alone.
    pub fn underdetermined(&self) -> bool {
        self.columns > self.rows
    }
}

impl StageCertificate {
    /// Full column rank modulo a prime implies full rank over ℚ(i).
    pub fn is_empty_kernel(&self) -> bool {
        self.rank == self.columns
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Witness(AnnihilatorWitness),
    NoneUpTo { bounds: SearchBounds, certificates: Vec<StageCertificate> },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&AnnihilatorWitness> {
        match self {
            SearchOutcome::Witness(w) => Some(w),
            SearchOutcome::NoneUpTo { .. } => None,
        }
    }
}

/// A column label: `x^α y^j u^k` packed as a series monomial plus `k`.
struct Column {
    k: u32,
    mono: Mono,
}

fn columns(n: u32, nvars: usize, yi: usize, b: &SearchBounds) -> Vec<Column> {
    let mut monos: Vec<Mono> = Vec::new();
    let mut cur = Mono::from_elem(0, nvars);
    fn rec(i: usize, cur: &mut Mono, yi: usize, b: &SearchBounds, xdeg: u32, out: &mut Vec<Mono>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let cap = if i == yi { b.d_max } else { b.e_max - xdeg };
        for e in 0..=cap {
            cur[i] = e as u16;
            let nx = if i == yi { xdeg } else { xdeg + e };
            rec(i + 1, cur, yi, b, nx, out);
        }
        cur[i] = 0;
    }
    rec(0, &mut cur, yi, b, 0, &mut monos);
    monos.sort_by(|a, c| {
        let da: u32 = a.iter().map(|&e| e as u32).sum();
        let dc: u32 = c.iter().map(|&e| e as u32).sum();
        da.cmp(&dc).then_with(|| a.cmp(c))
    });
    (0..=n).flat_map(|k| monos.iter().map(move |m| Column { k, mono: m.clone() })).collect()
}

/// Dense row index over all monomials of degree `< order`.
fn row_index(nvars: usize, order: u32) -> std::collections::HashMap<Mono, usize> {
    let mut out = std::collections::HashMap::new();
    let mut cur = Mono::from_elem(0, nvars);
    fn rec(i: usize, left: u32, cur: &mut Mono, out: &mut std::collections::HashMap<Mono, usize>) {
        if i == cur.len() {
            let n = out.len();
            out.insert(cur.clone(), n);
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if order > 0 {
        rec(0, order - 1, &mut cur, &mut out);
    }
    out
}

fn build_columns<C: crate::symkernel::Coeff>(powers: &[crate::series::TruncSeries<C>], cols: &[Column], rows: &std::collections::HashMap<Mono, usize>, order: u32) -> Vec<Vec<C>> {
    cols.iter()
        .map(|c| {
            let mut v = vec![C::zero(); rows.len()];
            let shift: u32 = c.mono.iter().map(|&e| e as u32).sum();
            for (m, coef) in powers[c.k as usize].terms() {
                let deg: u32 = m.iter().map(|&e| e as u32).sum();
                if deg + shift >= order {
                    continue;
                }
                let prod: Mono = m.iter().zip(c.mono.iter()).map(|(a, b)| a + b).collect();
                v[rows[&prod]] = coef.clone();
            }
            v
        })
        .collect()
}

/// Pivot profile modulo `P`, or `None` when `f` has a coefficient with a
/// denominator divisible by `P`.
fn profile_mod<const P: u64>(f: &Series, n: u32, cols: &[Column], rows: &std::collections::HashMap<Mono, usize>) -> Option<Vec<usize>> {
    let s = Fp::<P>::sqrt_minus_one();
    if f.terms().iter().any(|(_, c)| Fp::<P>::from_gauss(c, s).is_none()) {
        return None;
    }
    let fp = f.map_coeffs(|c| Fp::<P>::from_gauss(c, s).unwrap_or_default());
    let mut powers = vec![crate::series::TruncSeries::constant(&f.vars(), f.order(), Fp::<P>(1))];
    for _ in 0..n {
        let next = powers.last().unwrap().mul(&fp);
        powers.push(next);
    }
    let m = build_columns(&powers, cols, rows, f.order());
    Some(rank_profile(rows.len(), &m))
}

fn profile_with_prime(idx: usize, f: &Series, n: u32, cols: &[Column], rows: &std::collections::HashMap<Mono, usize>) -> Option<Vec<usize>> {
    with_prime!(idx, profile_mod(f, n, cols, rows))
}

/// Clears denominators to coprime Gaussian integers, last entry normalized
/// to a positive real part when possible.
fn primitive(v: &[GaussRat]) -> Vec<GaussRat> {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(&c.re.denom()).lcm(&c.im.denom());
    }
    let lr = Rat::from_bigints(l, BigInt::one());
    let ints: Vec<(BigInt, BigInt)> = v.iter().map(|c| ((&c.re * &lr).numer(), (&c.im * &lr).numer())).collect();
    let gg = ints.iter().fold((BigInt::zero(), BigInt::zero()), |acc, x| gauss_gcd(&acc, x));
    let scaled: Vec<GaussRat> = ints.iter().map(|x| gauss_div_exact(x, &gg)).collect();
    // Orient: the last nonzero entry becomes a positive real when it is an associate of one.
    let lead = scaled.iter().rev().find(|c| !c.re.is_zero() || !c.im.is_zero()).cloned().unwrap_or(GaussRat::int(1));
    let unit = [GaussRat::int(1), GaussRat::int(-1), GaussRat::i(), -GaussRat::i()]
        .into_iter()
        .find(|u| {
            let p = lead.clone() * u.clone();
            p.re.signum() > 0 && p.im.signum() >= 0
        })
        .unwrap_or(GaussRat::int(1));
    scaled.into_iter().map(|c| c * unit.clone()).collect()
}

fn gauss_norm(a: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// Nearest-integer division `a / b` in ℤ[i], returning `(q, r)`.
fn gauss_divmod(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    let n = gauss_norm(b);
    // a · conj(b)
    let re = &a.0 * &b.0 + &a.1 * &b.1;
    let im = &a.1 * &b.0 - &a.0 * &b.1;
    let round = |x: &BigInt| -> BigInt {
        let two = BigInt::from(2);
        (x * &two + &n).div_floor(&(&n * &two))
    };
    let q = (round(&re), round(&im));
    let r = (&a.0 - (&q.0 * &b.0 - &q.1 * &b.1), &a.1 - (&q.0 * &b.1 + &q.1 * &b.0));
    (q, r)
}

fn gauss_gcd(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !(b.0.is_zero() && b.1.is_zero()) {
        let (_, r) = gauss_divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn gauss_div_exact(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> GaussRat {
    if b.0.is_zero() && b.1.is_zero() {
        return GaussRat::new(Rat::from_bigints(a.0.clone(), BigInt::one()), Rat::from_bigints(a.1.clone(), BigInt::one()));
    }
    let (q, _) = gauss_divmod(a, b);
    GaussRat::new(Rat::from_bigints(q.0, BigInt::one()), Rat::from_bigints(q.1, BigInt::one()))
}

fn x_names(f: &Series, yi: usize) -> Vec<String> {
    f.vars().iter().enumerate().filter(|(i, _)| *i != yi).map(|(_, v)| v.to_string()).collect()
}

/// Searches `N = 1..=N_max` for `P(x, y, f) ≡ 0` modulo the truncation order.
pub fn annihilator_search(f: &Series, y: &str, bounds: &SearchBounds) -> Result<SearchOutcome> {
    bounds.validate()?;
    if f.order() < bounds.order {
        return Err(Error::Precondition(format!("series known to order {} but the search needs {}", f.order(), bounds.order)));
    }
    let f = f.truncate(bounds.order);
    let yi = f.var_index(y).ok_or_else(|| Error::Invalid(format!("series has no variable {y}")))?;
    let rows = row_index(f.nvars(), bounds.order);
    let mut certificates = Vec::new();
    for n in 1..=bounds.n_max {
        let cols = columns(n, f.nvars(), yi, bounds);
        let (prime, profile) = (0..crate::symkernel::scalar::PRIMES.len())
            .find_map(|idx| profile_with_prime(idx, &f, n, &cols, &rows).map(|p| (crate::symkernel::scalar::PRIMES[idx], p)))
            .ok_or_else(|| Error::Domain("no usable prime for the modular rank".into()))?;
        if profile.len() == cols.len() {
            certificates.push(StageCertificate { n, rows: rows.len(), columns: cols.len(), rank: profile.len(), prime });
            continue;
        }
        // Candidate dependent columns in order; the first true dependency is among them.
        let mut powers = vec![Series::constant(&f.vars(), f.order(), GaussRat::int(1))];
        for _ in 0..n {
            let next = powers.last().unwrap().mul(&f);
            powers.push(next);
        }
        let pivots: std::collections::HashSet<usize> = profile.iter().copied().collect();
        for c in (0..cols.len()).filter(|c| !pivots.contains(c)) {
            let exact = build_columns(&powers, &cols[..=c], &rows, f.order());
            if let Some((dep, kernel)) = first_dependency(rows.len(), &exact) {
                let kernel = primitive(&kernel);
                let xv = x_names(&f, yi);
                let terms = kernel
                    .iter()
                    .zip(&cols[..=dep])
                    .filter(|(k, _)| !k.re.is_zero() || !k.im.is_zero())
                    .map(|(k, col)| WitnessTerm {
                        k: col.k,
                        x_exp: (0..f.nvars()).filter(|&i| i != yi).map(|i| col.mono[i] as u32).collect(),
                        y_exp: col.mono[yi] as u32,
                        coeff: k.clone(),
                    })
                    .collect();
                let top = cols[dep].k;
                return Ok(SearchOutcome::Witness(AnnihilatorWitness {
                    n: top,
                    x_vars: xv,
                    y_var: y.to_string(),
                    terms,
                    bounds: *bounds,
                    verified_to: bounds.order,
                }));
            }
        }
        certificates.push(StageCertificate { n, rows: rows.len(), columns: cols.len(), rank: profile.len(), prime });
    }
    Ok(SearchOutcome::NoneUpTo { bounds: *bounds, certificates })
}

/// True iff `P(x, y, f) ≡ 0` to the order of `f`.
pub fn verify_witness(w: &AnnihilatorWitness, f: &Series) -> Result<bool> {
    let mut acc = Series::zero(&f.vars(), f.order());
    let mut power = Series::constant(&f.vars(), f.order(), GaussRat::int(1));
    let top = w.terms.iter().map(|t| t.k).max().unwrap_or(0);
    for k in 0..=top {
        acc = acc.add(&w.coefficient(k, f)?.mul(&power));
        power = power.mul(f);
    }
    Ok(acc.is_zero())
}

/// One search round of a report.
#[derive(Clone, Debug, PartialEq)]
pub struct Attempt {
    pub order: u32,
    pub outcome: SearchOutcome,
    /// Re-check of a witness at twice `order`.
    pub verified_at_double: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranscendenceReport {
    pub rigid: bool,
    pub x_vars: Vec<String>,
    pub requested: SearchBounds,
    /// Every round, in order; the last one is the reported result.
    pub attempts: Vec<Attempt>,
}

impl TranscendenceReport {
    pub fn last(&self) -> &Attempt {
        self.attempts.last().expect("at least one attempt")
    }

    pub fn outcome(&self) -> &SearchOutcome {
        &self.last().outcome
    }

    /// A witness that survived re-verification at twice its search order.
    pub fn witness(&self) -> Option<&AnnihilatorWitness> {
        let a = self.last();
        match a.verified_at_double {
            Some(true) => a.outcome.witness(),
            _ => None,
        }
    }

    /// Rounds whose witness failed re-verification.
    pub fn rejected(&self) -> usize {
        self.attempts.iter().filter(|a| a.verified_at_double == Some(false)).count()
    }

    pub fn summary(&self) -> String {
        let a = self.last();
        match (&a.outcome, a.verified_at_double) {
            (SearchOutcome::Witness(w), Some(true)) => {
                format!("algebraic within bounds, witness degree N = {} (found at order {}, verified at order {})", w.n, a.order, 2 * a.order)
            }
            (SearchOutcome::Witness(w), _) => format!(
                "inconclusive: degree {} candidate at order {} failed re-verification at order {}; raise the order",
                w.n,
                a.order,
                2 * a.order
            ),
            (SearchOutcome::NoneUpTo { bounds: b, .. }, _) => format!(
                "no annihilator up to bounds (N <= {}, d <= {}, e <= {}, order {}); consistent with infinite jet transcendence degree",
                b.n_max, b.d_max, b.e_max, b.order
            ),
        }
    }
}

/// `Φ` of `M` as a series in `(z, wp)` for rigid data, `(z, w, wp)` otherwise.
pub fn ode_series_for_search(m: &Hypersurface, order: u32) -> Result<(Series, bool)> {
    let ode = associated_ode(m, order)?;
    if ode.is_w_free() {
        let terms = ode.phi.terms().iter().map(|(mono, c)| (Mono::from_slice(&[mono[0], mono[2]]), c.clone()));
        Ok((Series::from_terms(&["z", "wp"], order, terms), true))
    } else {
        Ok((ode.phi, false))
    }
}

/// Rounds of order doubling allowed after a rejected witness.
pub const DEFAULT_ESCALATIONS: u32 = 2;

pub fn jet_transcendence_report(m: &Hypersurface, bounds: &SearchBounds) -> Result<TranscendenceReport> {
    jet_transcendence_report_with(m, bounds, DEFAULT_ESCALATIONS)
}

/// Searches at the requested order; a witness failing the check at twice
/// the order triggers a new search at that doubled order, up to
/// `escalations` times.
pub fn jet_transcendence_report_with(m: &Hypersurface, bounds: &SearchBounds, escalations: u32) -> Result<TranscendenceReport> {
    bounds.validate()?;
    let (mut phi, rigid) = ode_series_for_search(m, bounds.order)?;
    let mut b = *bounds;
    let mut attempts = Vec::new();
    for round in 0..=escalations {
        let outcome = annihilator_search(&phi, "wp", &b)?;
        let Some(w) = outcome.witness() else {
            attempts.push(Attempt { order: b.order, outcome, verified_at_double: None });
            break;
        };
        let (high, _) = ode_series_for_search(m, 2 * b.order)?;
        let ok = verify_witness(w, &high)?;
        attempts.push(Attempt { order: b.order, outcome, verified_at_double: Some(ok) });
        if ok || round == escalations {
            break;
        }
        b.order *= 2;
        phi = high;
    }
    let x_vars = if rigid { vec!["z".to_string()] } else { vec!["z".to_string(), "w".to_string()] };
    Ok(TranscendenceReport { rigid, x_vars, requested: *bounds, attempts })
}

// ---------------------------------------------------------------- resultants

/// Coefficients of `p` as a polynomial in `var`, lowest first.
pub fn coefficients_in(p: &Expr, var: &str) -> Result<Vec<Expr>> {
    let mut out = Vec::new();
    let mut d = p.clone();
    let mut fact = Rat::from_int(1);
    let zero = [(var, Expr::zero())];
    let mut k = 0i64;
    while !d.is_zero() {
        if k > 0 {
            fact = fact * Rat::from_int(k);
        }
        out.push(d.substitute(&zero)?.scale(&GaussRat::real(fact.recip())));
        d = d.diff(var);
        k += 1;
        if k > 256 {
            return Err(Error::Domain(format!("not a polynomial in {var}")));
        }
    }
    Ok(out)
}

/// Determinant by fraction-carrying elimination.
fn det(mut m: Vec<Vec<Expr>>) -> Result<Expr> {
    let n = m.len();
    let mut acc = Expr::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Ok(Expr::zero()) };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let piv = m[c][c].clone();
        acc = acc * piv.clone();
        let inv = piv.inv()?;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].mul_ref(&inv);
            for j in c..n {
                let t = m[c][j].mul_ref(&f);
                m[r][j] = m[r][j].sub_ref(&t);
            }
        }
    }
    Ok(acc)
}

/// Sylvester resultant of `p` and `q` with respect to `var`.
pub fn resultant(p: &Expr, q: &Expr, var: &str) -> Result<Expr> {
    let a = coefficients_in(p, var)?;
    let b = coefficients_in(q, var)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Expr::zero());
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Ok(Expr::one());
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Expr::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Expr::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    det(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_expr;
    use crate::series::expand;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    fn small() -> SearchBounds {
        SearchBounds { n_max: 3, d_max: 4, e_max: 0, order: 20 }
    }

    #[test]
    fn polynomial_series() {
        let f = expand(&p("y^2"), &["y"], 20).unwrap();
        let w = annihilator_search(&f, "y", &small()).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.n, 1);
        assert_eq!(w.to_expr(), p("u - y^2"));
        assert!(verify_witness(w, &expand(&p("y^2"), &["y"], 40).unwrap()).unwrap());
    }

    #[test]
    fn square_root_series() {
        let f = expand(&p("sqrt(1 + y)"), &["y"], 20).unwrap();
        let out = annihilator_search(&f, "y", &small()).unwrap();
        assert_eq!(out.witness().unwrap().to_expr(), p("u^2 - 1 - y"));
    }

    #[test]
    fn arctan_has_no_small_annihilator() {
        let f = expand(&p("atan(y)"), &["y"], 30).unwrap();
        let b = SearchBounds { n_max: 2, d_max: 8, e_max: 0, order: 30 };
        match annihilator_search(&f, "y", &b).unwrap() {
            SearchOutcome::NoneUpTo { certificates, .. } => assert!(certificates.iter().all(|c| c.is_empty_kernel())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn underdetermined_stage_yields_only_spurious_witnesses() {
        // N = 3, d = 8 has 36 unknowns against 30 equations.
        let f = expand(&p("atan(y)"), &["y"], 30).unwrap();
        let b = SearchBounds { n_max: 4, d_max: 8, e_max: 0, order: 30 };
        let out = annihilator_search(&f, "y", &b).unwrap();
        let w = out.witness().expect("dimension count forces a kernel");
        assert_eq!(w.n, 3);
        assert!(b.system_size(3, 0).0 > b.system_size(3, 0).1);
        assert!(!verify_witness(w, &expand(&p("atan(y)"), &["y"], 60).unwrap()).unwrap());
    }

    #[test]
    fn spurious_low_order_witness_is_rejected() {
        let f = expand(&p("atan(y)"), &["y"], 4).unwrap();
        let b = SearchBounds { n_max: 2, d_max: 2, e_max: 0, order: 4 };
        let w = annihilator_search(&f, "y", &b).unwrap();
        let w = w.witness().expect("low order admits a spurious witness");
        assert!(!verify_witness(w, &expand(&p("atan(y)"), &["y"], 30).unwrap()).unwrap());
    }

    #[test]
    fn resultant_of_quadratics() {
        // Eliminating t from u = t^2 and t = y gives u − y^2.
        assert_eq!(resultant(&p("u - t^2"), &p("t - y"), "t").unwrap(), p("u - y^2"));
        assert_eq!(resultant(&p("t^2 + 1"), &p("t^2 - 1"), "t").unwrap(), p("4"));
    }
}
