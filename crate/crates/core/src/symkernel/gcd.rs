//! Multivariate gcd over the Gaussian rationals.
//!
//! Dense modular algorithm: images modulo primes `p ≡ 1 (mod 4)` are computed
//! by recursive evaluation/interpolation (Brown), combined by CRT and rational
//! reconstruction, and the candidate is accepted only after exact trial
//! division over `Q(i)`. Gaussian coefficients are handled through the two
//! embeddings `i ↦ ±s` with `s² = −1 (mod p)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::poly::{univariate_gcd, MPoly, Mono};
use super::scalar::{Coeff, Fp, GaussRat, Rat, PRIMES};

pub type Poly = MPoly<GaussRat>;

/// Monic gcd of `a` and `b`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_cofactors(a, b).0
}

/// Returns `(g, a/g, b/g)` with `g` monic (leading coefficient 1 in lex order).
pub fn gcd_cofactors(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let n = a.nvars();
    if a.is_zero() {
        if b.is_zero() {
            return (Poly::zero(n), Poly::zero(n), Poly::zero(n));
        }
        let lc = b.leading_coeff();
        return (b.monic(), Poly::zero(n), Poly::constant(n, lc));
    }
    if b.is_zero() {
        let lc = a.leading_coeff();
        return (a.monic(), Poly::constant(n, lc), Poly::zero(n));
    }
    if a.is_constant() || b.is_constant() {
        return (Poly::one(n), a.clone(), b.clone());
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let mg: Mono = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    let a1 = a.unshift(&ma);
    let b1 = b.unshift(&mb);
    let ra: Mono = ma.iter().zip(mg.iter()).map(|(x, y)| x - y).collect();
    let rb: Mono = mb.iter().zip(mg.iter()).map(|(x, y)| x - y).collect();
    let mono_g = Poly::monomial(mg, GaussRat::one());
    if a1.is_constant() || b1.is_constant() {
        return (mono_g, a1.shift(&ra), b1.shift(&rb));
    }
    if a1 == b1 {
        let lc = a1.leading_coeff();
        let g = a1.monic();
        let c = Poly::constant(n, lc);
        return (mono_g.mul(&g), c.shift(&ra), c.shift(&rb));
    }
    let g = primitive_gcd(&a1, &b1);
    if g.is_one() {
        return (mono_g, a1.shift(&ra), b1.shift(&rb));
    }
    let qa = a1.div_exact(&g).expect("verified divisor");
    let qb = b1.div_exact(&g).expect("verified divisor");
    (mono_g.mul(&g), qa.shift(&ra), qb.shift(&rb))
}

/// Gcd of two polynomials with no monomial content and positive degree.
fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    let real = a.terms().iter().chain(b.terms()).all(|(_, c)| c.is_real());
    let mut state = Crt::new(n, real);
    let mut last: Option<Poly> = None;
    for idx in 0..PRIMES.len() {
        let image = crate::with_prime!(idx, modular_image(a, b, real));
        let Some(image) = image else { continue };
        if image.is_one() {
            return Poly::one(n);
        }
        if !state.absorb(idx, image) {
            continue;
        }
        let Some((cand, height)) = state.reconstruct() else { continue };
        let stable = last.as_ref() == Some(&cand);
        if (stable || height + 40 < state.modulus_bits() / 2) && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return cand;
        }
        last = Some(cand);
    }
    panic!("modular gcd did not converge within {} primes", PRIMES.len());
}

/// Residue pair images `(re, im)` as `u64` keyed by monomial.
struct Image {
    lm: Mono,
    coeffs: BTreeMap<Mono, (u64, u64)>,
    one: bool,
}

impl Image {
    fn is_one(&self) -> bool {
        self.one
    }
}

fn modular_image<const P: u64>(a: &Poly, b: &Poly, real: bool) -> Option<Image> {
    let s = if real { Fp::<P>(0) } else { Fp::<P>::sqrt_minus_one() };
    let reduce = |p: &Poly, s: Fp<P>| -> Option<MPoly<Fp<P>>> {
        let img = p.try_map_coeffs(|c| Fp::<P>::from_gauss(c, s))?;
        // The leading monomial must survive reduction.
        if img.leading().map(|t| &t.0) != p.leading().map(|t| &t.0) {
            return None;
        }
        Some(img)
    };
    let ap = reduce(a, s)?;
    let bp = reduce(b, s)?;
    let vars: Vec<usize> = (0..a.nvars()).collect();
    let g1 = brown(&ap, &bp, &vars)?;
    if g1.is_constant() {
        return Some(Image { lm: SmallVec::new(), coeffs: BTreeMap::new(), one: true });
    }
    let lm = g1.leading().unwrap().0.clone();
    let mut coeffs = BTreeMap::new();
    if real {
        for (m, c) in g1.terms() {
            coeffs.insert(m.clone(), (c.0, 0));
        }
    } else {
        let an = reduce(a, -s)?;
        let bn = reduce(b, -s)?;
        let g2 = brown(&an, &bn, &vars)?;
        if g2.is_constant() {
            return Some(Image { lm: SmallVec::new(), coeffs: BTreeMap::new(), one: true });
        }
        if g2.leading().unwrap().0 != lm {
            return None;
        }
        let half = Fp::<P>(2).inv();
        let inv2s = (Fp::<P>(2) * s).inv();
        let mut all: BTreeMap<Mono, (Fp<P>, Fp<P>)> = BTreeMap::new();
        for (m, c) in g1.terms() {
            all.entry(m.clone()).or_insert((Fp(0), Fp(0))).0 = *c;
        }
        for (m, c) in g2.terms() {
            all.entry(m.clone()).or_insert((Fp(0), Fp(0))).1 = *c;
        }
        for (m, (p1, p2)) in all {
            let re = (p1 + p2) * half;
            let im = (p1 - p2) * inv2s;
            coeffs.insert(m, (re.0, im.0));
        }
    }
    Some(Image { lm, coeffs, one: false })
}

/// Monic gcd over `F_P` restricted to the variables in `vars`; `None` signals
/// an evaluation failure that the caller should treat as an unlucky prime.
fn brown<const P: u64>(a: &MPoly<Fp<P>>, b: &MPoly<Fp<P>>, vars: &[usize]) -> Option<MPoly<Fp<P>>> {
    let n = a.nvars();
    if a.is_zero() {
        return Some(b.monic());
    }
    if b.is_zero() {
        return Some(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Some(MPoly::one(n));
    }
    let vars: Vec<usize> = vars.iter().copied().filter(|&v| a.uses_var(v) || b.uses_var(v)).collect();
    if vars.len() == 1 {
        return Some(univariate_gcd(a, b, vars[0]));
    }
    let x = *vars.last().unwrap();
    let rest = &vars[..vars.len() - 1];
    let ux = a.uses_var(x);
    let vx = b.uses_var(x);
    if !ux || !vx {
        // gcd with a polynomial free of x divides every x-coefficient.
        let (free, other) = if !ux { (a, b) } else { (b, a) };
        let mut g = free.clone();
        for (_, c) in other.coefficients_in(x) {
            g = brown(&g, &c, rest)?;
            if g.is_constant() {
                break;
            }
        }
        return Some(g);
    }
    // Content with respect to the remaining variables (a univariate poly in x).
    let cont_a = content_in(a, x, rest);
    let cont_b = content_in(b, x, rest);
    let cont = univariate_gcd(&cont_a, &cont_b, x);
    let a1 = if cont_a.is_one() { a.clone() } else { a.div_exact(&cont_a)? };
    let b1 = if cont_b.is_one() { b.clone() } else { b.div_exact(&cont_b)? };
    let lca = lead_coeff_in(&a1, x);
    let lcb = lead_coeff_in(&b1, x);
    let gamma = univariate_gcd(&lca, &lcb, x);
    let bound = a1.degree_in(x).min(b1.degree_in(x)) + gamma.degree_in(x);

    let mut interp: Option<MPoly<Fp<P>>> = None;
    let mut lm: Option<Mono> = None;
    let mut modulus = MPoly::<Fp<P>>::one(n);
    let mut count = 0u32;
    let xpoly = MPoly::<Fp<P>>::var(n, x);
    let mut alpha = 0u64;
    let mut failures = 0u32;
    loop {
        alpha += 1;
        if failures > 2 * bound + 16 {
            return None;
        }
        let al = Fp::<P>(alpha);
        let ga = eval_univ(&gamma, x, al);
        if ga.is_zero() || eval_univ(&lca, x, al).is_zero() || eval_univ(&lcb, x, al).is_zero() {
            continue;
        }
        let ae = a1.eval_var(x, &al);
        let be = b1.eval_var(x, &al);
        let Some(g) = brown(&ae, &be, rest) else {
            failures += 1;
            continue;
        };
        if g.is_constant() {
            return Some(cont.monic());
        }
        let g = g.scale(&ga);
        let glm = g.leading().unwrap().0.clone();
        match &lm {
            Some(cur) if glm > *cur => {
                failures += 1;
                continue;
            }
            Some(cur) if glm == *cur => {}
            _ => {
                interp = None;
                modulus = MPoly::one(n);
                count = 0;
                lm = Some(glm);
            }
        }
        let h = interp.take().unwrap_or_else(|| MPoly::zero(n));
        let diff = g.sub(&h.eval_var(x, &al));
        let stable = diff.is_zero() && count > 0;
        let h = if diff.is_zero() {
            h
        } else {
            let mval = eval_univ(&modulus, x, al);
            h.add(&diff.mul(&modulus.scale(&mval.inv())))
        };
        modulus = modulus.mul(&xpoly.sub(&MPoly::constant(n, al)));
        count += 1;
        if stable || count > bound {
            let cand = primitive_part_in(&h, x, rest);
            if a1.div_exact(&cand).is_some() && b1.div_exact(&cand).is_some() {
                return Some(cand.mul(&cont).monic());
            }
            if count > bound + 1 {
                // Interpolation kept failing: restart from scratch.
                failures += count;
                lm = None;
                interp = None;
                modulus = MPoly::one(n);
                count = 0;
                continue;
            }
        }
        interp = Some(h);
    }
}

fn eval_univ<const P: u64>(p: &MPoly<Fp<P>>, x: usize, al: Fp<P>) -> Fp<P> {
    let mut acc = Fp::<P>(0);
    for (m, c) in p.terms() {
        acc = acc + *c * al.pow(m[x] as u64);
    }
    acc
}

/// Gcd (univariate in `x`) of the coefficients of `p` viewed in `rest`.
fn content_in<const P: u64>(p: &MPoly<Fp<P>>, x: usize, rest: &[usize]) -> MPoly<Fp<P>> {
    let groups = group_by_rest(p, x, rest);
    let mut g: Option<MPoly<Fp<P>>> = None;
    for c in groups.into_values() {
        g = Some(match g {
            None => c.monic(),
            Some(g) => univariate_gcd(&g, &c, x),
        });
        if g.as_ref().unwrap().is_one() {
            break;
        }
    }
    g.unwrap_or_else(|| MPoly::one(p.nvars()))
}

fn lead_coeff_in<const P: u64>(p: &MPoly<Fp<P>>, x: usize) -> MPoly<Fp<P>> {
    let n = p.nvars();
    let (lm, _) = p.leading().unwrap();
    let mut key = lm.clone();
    key[x] = 0;
    let terms: Vec<(Mono, Fp<P>)> = p
        .terms()
        .iter()
        .filter(|(m, _)| {
            m.iter().enumerate().all(|(i, &e)| i == x || e == key[i])
        })
        .map(|(m, c)| {
            let mut t: Mono = SmallVec::from_elem(0, n);
            t[x] = m[x];
            (t, *c)
        })
        .collect();
    MPoly::from_terms(n, terms)
}

fn group_by_rest<const P: u64>(
    p: &MPoly<Fp<P>>,
    x: usize,
    _rest: &[usize],
) -> BTreeMap<Mono, MPoly<Fp<P>>> {
    let n = p.nvars();
    let mut groups: BTreeMap<Mono, Vec<(Mono, Fp<P>)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut key = m.clone();
        key[x] = 0;
        let mut t: Mono = SmallVec::from_elem(0, n);
        t[x] = m[x];
        groups.entry(key).or_default().push((t, *c));
    }
    groups.into_iter().map(|(k, ts)| (k, MPoly::from_terms(n, ts))).collect()
}

fn primitive_part_in<const P: u64>(p: &MPoly<Fp<P>>, x: usize, rest: &[usize]) -> MPoly<Fp<P>> {
    let c = content_in(p, x, rest);
    if c.is_one() {
        p.clone()
    } else {
        p.div_exact(&c).expect("content divides")
    }
}

/// CRT accumulator over Gaussian residue pairs.
struct Crt {
    nvars: usize,
    real: bool,
    lm: Option<Mono>,
    modulus: BigInt,
    coeffs: BTreeMap<Mono, (BigInt, BigInt)>,
}

impl Crt {
    fn new(nvars: usize, real: bool) -> Self {
        Crt { nvars, real, lm: None, modulus: BigInt::one(), coeffs: BTreeMap::new() }
    }

    fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    /// Adds an image; returns false if it was discarded as unlucky.
    fn absorb(&mut self, idx: usize, img: Image) -> bool {
        let p = BigInt::from(PRIMES[idx]);
        match &self.lm {
            Some(cur) if img.lm > *cur => return false,
            Some(cur) if img.lm == *cur => {}
            _ => {
                self.lm = Some(img.lm.clone());
                self.modulus = BigInt::one();
                self.coeffs.clear();
            }
        }
        let m = self.modulus.clone();
        let minv = mod_inverse(&(&m % &p), &p);
        let mut keys: Vec<Mono> = self.coeffs.keys().cloned().collect();
        keys.extend(img.coeffs.keys().cloned());
        keys.sort();
        keys.dedup();
        for k in keys {
            let (r, i) = img.coeffs.get(&k).copied().unwrap_or((0, 0));
            let entry = self.coeffs.entry(k).or_insert((BigInt::zero(), BigInt::zero()));
            entry.0 = crt_step(&entry.0, &m, r, &p, &minv);
            if !self.real {
                entry.1 = crt_step(&entry.1, &m, i, &p, &minv);
            }
        }
        self.modulus = &m * &p;
        true
    }

    /// Rational reconstruction; also returns the max coefficient height in bits.
    fn reconstruct(&self) -> Option<(Poly, u64)> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        let mut height = 0u64;
        for (m, (r, i)) in &self.coeffs {
            let re = rat_reconstruct(r, &self.modulus)?;
            let im = if self.real { Rat::zero() } else { rat_reconstruct(i, &self.modulus)? };
            height = height.max(re.bits()).max(im.bits());
            let c = GaussRat::new(re, im);
            if !c.is_zero() {
                terms.push((m.clone(), c));
            }
        }
        let p = Poly::from_terms(self.nvars, terms);
        if !p.leading_coeff().is_one() {
            return None;
        }
        Some((p, height))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Combines `x ≡ r0 (mod m)` with `x ≡ r (mod p)`.
fn crt_step(r0: &BigInt, m: &BigInt, r: u64, p: &BigInt, minv: &BigInt) -> BigInt {
    let r = BigInt::from(r);
    let t = ((&r - r0) * minv).mod_floor(p);
    r0 + m * t
}

/// Rational with `|n|, d ≤ sqrt(m/2)` congruent to `u`, if one exists.
pub(crate) fn rat_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rat> {
    let u = u.mod_floor(m);
    if u.is_zero() {
        return Some(Rat::zero());
    }
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.abs() > bound || t1.is_zero() {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::from_bigints(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }
    fn c(x: i64) -> GaussRat {
        GaussRat::int(x)
    }

    #[test]
    fn simple_common_factor() {
        let (x, y) = (var(2, 0), var(2, 1));
        let f = x.add(&y).add(&Poly::one(2));
        let a = f.mul(&x.sub(&y));
        let b = f.mul(&x.add(&y.scale(&c(3))));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gaussian_factor() {
        let (x, y) = (var(2, 0), var(2, 1));
        let i = GaussRat::i();
        let f = x.add(&y.scale(&i)).add(&Poly::constant(2, GaussRat::frac(1, 2)));
        let a = f.mul(&f).mul(&y.add(&Poly::one(2)));
        let b = f.mul(&x.scale(&i).sub(&Poly::one(2)));
        let (g, qa, qb) = gcd_cofactors(&a, &b);
        assert_eq!(g, f.monic());
        assert_eq!(g.mul(&qa), a);
        assert_eq!(g.mul(&qb), b);
    }

    #[test]
    fn coprime() {
        let (x, y) = (var(2, 0), var(2, 1));
        let a = x.pow(2).add(&y);
        let b = y.pow(2).add(&x).add(&Poly::one(2));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_content() {
        let (x, y) = (var(2, 0), var(2, 1));
        let a = x.pow(3).mul(&y);
        let b = x.mul(&y.pow(2)).add(&x.pow(2).mul(&y));
        assert_eq!(gcd(&a, &b), x.mul(&y));
    }

    #[test]
    fn big_coefficients() {
        let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
        let big = GaussRat::new(Rat::from_bigints(BigInt::from(10).pow(40) + 7, BigInt::from(3).pow(30)), Rat::new(5, 7));
        let f = x.mul(&y).add(&z.scale(&big)).add(&Poly::constant(3, c(11)));
        let g1 = x.add(&z.pow(2)).sub(&Poly::one(3));
        let g2 = y.pow(3).add(&x.mul(&z));
        let (g, _, _) = gcd_cofactors(&f.mul(&g1), &f.mul(&g2).mul(&f));
        assert_eq!(g, f.monic());
    }

    #[test]
    fn reconstruct_small() {
        let m = BigInt::from(PRIMES[0]);
        let inv3 = mod_inverse(&BigInt::from(3), &m);
        let u = (BigInt::from(-2) * inv3).mod_floor(&m);
        assert_eq!(rat_reconstruct(&u, &m), Some(Rat::new(-2, 3)));
    }
}
