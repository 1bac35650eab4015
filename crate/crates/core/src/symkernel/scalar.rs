//! Exact coefficient fields.
//!
//! [`Coeff`] is the field interface the generic polynomial, series and
//! linear-algebra code is written against. Three implementations ship:
//! [`Rat`] (rationals with an inline small-integer fast path), [`GaussRat`]
//! (the Gaussian rationals `Q(i)`) and [`Fp`] (a prime field with a
//! compile-time modulus, used for modular certificates).

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field.
///
/// `inv` panics on zero; callers test `is_zero` first.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn inv(&self) -> Self;
    /// Field conjugation; the identity on real fields.
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_i64(n: i64) -> Self;
    fn is_one_value(&self) -> bool {
        self.is_one()
    }
}

// ---------------------------------------------------------------- Rat

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced fraction, `d > 0`, `n != i64::MIN`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(x: i128) -> bool {
    x > i64::MIN as i128 && x <= i64::MAX as i128
}

impl Rat {
    pub fn from_int(n: i64) -> Rat {
        if n == i64::MIN {
            Rat::from_big(BigRational::from_integer(BigInt::from(n)))
        } else {
            Rat(Repr::Small(n, 1))
        }
    }

    /// `n/d`; panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Rat {
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        assert!(d != 0, "zero denominator");
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if fits(n) && fits(d) {
            Rat(Repr::Small(n as i64, d as i64))
        } else {
            Rat(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            ))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rat(Repr::Small(n, d));
            }
        }
        Rat(Repr::Big(Box::new(r)))
    }

    /// `n/d` from big integers, reducing.
    pub fn from_bigints(n: BigInt, d: BigInt) -> Rat {
        Rat::from_big(BigRational::new(n, d))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn recip(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                if *n < 0 {
                    Rat(Repr::Small(-d, -n))
                } else {
                    Rat(Repr::Small(*d, *n))
                }
            }
            Repr::Big(b) => Rat::from_big(b.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Rat {
        let mut acc = Rat::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Bit size of numerator plus denominator; a height measure.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(n, d) => {
                (64 - n.unsigned_abs().leading_zeros() as u64) + (64 - d.leading_zeros() as u64)
            }
            Repr::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let s = *a as i128 + *c as i128;
                    if fits(s) {
                        return Rat(Repr::Small(s as i64, 1));
                    }
                }
                Rat::from_i128(
                    *a as i128 * *d as i128 + *c as i128 * *b as i128,
                    *b as i128 * *d as i128,
                )
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => Rat::from_i128(
                *a as i128 * *d as i128 - *c as i128 * *b as i128,
                *b as i128 * *d as i128,
            ),
            _ => Rat::from_big(self.to_big() - o.to_big()),
        }
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let p = *a as i128 * *c as i128;
                    if fits(p) {
                        return Rat(Repr::Small(p as i64, 1));
                    }
                    return Rat::from_i128(p, 1);
                }
                let g1 = (*a).gcd(d);
                let g2 = (*c).gcd(b);
                let (a1, d1) = if g1 > 1 { (a / g1, d / g1) } else { (*a, *d) };
                let (c1, b1) = if g2 > 1 { (c / g2, b / g2) } else { (*c, *b) };
                let n = a1 as i128 * c1 as i128;
                let m = b1 as i128 * d1 as i128;
                if fits(n) && fits(m) {
                    Rat(Repr::Small(n as i64, m as i64))
                } else {
                    Rat(Repr::Big(Box::new(BigRational::new_raw(
                        BigInt::from(n),
                        BigInt::from(m),
                    ))))
                }
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        self * &o.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-n, d)),
            Repr::Big(b) => Rat::from_big(-*b),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -self.clone()
    }
}

macro_rules! by_value_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                &self / &o
            }
        }
    };
}

by_value_ops!(Rat);

impl Zero for Rat {
    fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl Coeff for Rat {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }
}

// ---------------------------------------------------------------- GaussRat

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }
    pub fn real(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }
    pub fn int(n: i64) -> Self {
        GaussRat::real(Rat::from_int(n))
    }
    pub fn frac(n: i64, d: i64) -> Self {
        GaussRat::real(Rat::new(n, d))
    }
    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn norm(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }
    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussRat::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "({} - {}*i)", self.re, -self.im.clone())
        } else {
            write!(f, "({} + {}*i)", self.re, self.im)
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        self.add_ref(&o)
    }
}
impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        self.sub_ref(&o)
    }
}
impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        self.mul_ref(&o)
    }
}
impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, o: GaussRat) -> GaussRat {
        self.mul_ref(&o.inv())
    }
}
impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat { re: Rat::one(), im: Rat::zero() }
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::real(r)
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::int(n)
    }
}

impl Coeff for GaussRat {
    fn add_ref(&self, o: &Self) -> Self {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat { re: &self.re * &o.re, im: Rat::zero() };
        }
        GaussRat {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
    fn inv(&self) -> Self {
        if self.im.is_zero() {
            return GaussRat::real(self.re.recip());
        }
        let n = self.norm().recip();
        GaussRat { re: &self.re * &n, im: -(&self.im * &n) }
    }
    fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
    fn from_i64(n: i64) -> Self {
        GaussRat::int(n)
    }
}

// ---------------------------------------------------------------- Fp

/// Element of the prime field `Z/PZ`, `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(x: u64) -> Self {
        Fp(x % P)
    }

    pub fn from_i128(x: i128) -> Self {
        Fp(x.rem_euclid(P as i128) as u64)
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let r = x.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits"))
    }

    /// Reduction of a rational; `None` when the denominator vanishes mod `P`.
    pub fn from_rat(r: &Rat) -> Option<Self> {
        let (n, d) = match r.as_small() {
            Some((n, d)) => (Fp::from_i128(n as i128), Fp::from_i128(d as i128)),
            None => (Fp::from_bigint(&r.numer()), Fp::from_bigint(&r.denom())),
        };
        if d.0 == 0 {
            None
        } else {
            Some(n * d.inv())
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = Fp::<P>(1 % P);
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    /// A square root of −1. Requires `P ≡ 1 (mod 4)`.
    pub fn sqrt_minus_one() -> Self {
        assert!(P % 4 == 1, "no square root of -1 modulo {P}");
        let mut c = 2u64;
        loop {
            let s = Fp::<P>(c).pow((P - 1) / 4);
            if (s * s).0 == P - 1 {
                return s;
            }
            c += 1;
        }
    }

    /// Image of a Gaussian rational under `i ↦ s`.
    pub fn from_gauss(g: &GaussRat, s: Self) -> Option<Self> {
        let re = Fp::from_rat(&g.re)?;
        if g.im.is_zero() {
            return Some(re);
        }
        Some(re + Fp::from_rat(&g.im)? * s)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 as u128 + o.0 as u128;
        Fp((s % P as u128) as u64)
    }
}
impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(P - (o.0 - self.0))
        }
    }
}
impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}
impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}
impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}
impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Coeff for Fp<P> {
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in Fp");
        self.pow(P - 2)
    }
    fn from_i64(n: i64) -> Self {
        Fp::from_i128(n as i128)
    }
}

/// Primes `p ≡ 1 (mod 4)` just below `2^62`, in decreasing order.
pub const PRIMES: [u64; 32] = [
    4611686018427387817,
    4611686018427387761,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387617,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387301,
    4611686018427387241,
    4611686018427387113,
    4611686018427387073,
    4611686018427386981,
    4611686018427386897,
    4611686018427386389,
    4611686018427386329,
    4611686018427386309,
    4611686018427386201,
    4611686018427386081,
    4611686018427385993,
    4611686018427385981,
    4611686018427385861,
    4611686018427385801,
    4611686018427385717,
    4611686018427385657,
    4611686018427385553,
    4611686018427385537,
    4611686018427385529,
    4611686018427385393,
];

/// Calls `$f::<P>($args)` for the prime `PRIMES[$idx]`.
#[macro_export]
#[doc(hidden)]
macro_rules! with_prime {
    ($idx:expr, $f:ident ( $($args:expr),* )) => {{
        use $crate::symkernel::scalar::PRIMES as __P;
        match $idx {
            0 => $f::<{ __P[0] }>($($args),*),
            1 => $f::<{ __P[1] }>($($args),*),
            2 => $f::<{ __P[2] }>($($args),*),
            3 => $f::<{ __P[3] }>($($args),*),
            4 => $f::<{ __P[4] }>($($args),*),
            5 => $f::<{ __P[5] }>($($args),*),
            6 => $f::<{ __P[6] }>($($args),*),
            7 => $f::<{ __P[7] }>($($args),*),
            8 => $f::<{ __P[8] }>($($args),*),
            9 => $f::<{ __P[9] }>($($args),*),
            10 => $f::<{ __P[10] }>($($args),*),
            11 => $f::<{ __P[11] }>($($args),*),
            12 => $f::<{ __P[12] }>($($args),*),
            13 => $f::<{ __P[13] }>($($args),*),
            14 => $f::<{ __P[14] }>($($args),*),
            15 => $f::<{ __P[15] }>($($args),*),
            16 => $f::<{ __P[16] }>($($args),*),
            17 => $f::<{ __P[17] }>($($args),*),
            18 => $f::<{ __P[18] }>($($args),*),
            19 => $f::<{ __P[19] }>($($args),*),
            20 => $f::<{ __P[20] }>($($args),*),
            21 => $f::<{ __P[21] }>($($args),*),
            22 => $f::<{ __P[22] }>($($args),*),
            23 => $f::<{ __P[23] }>($($args),*),
            24 => $f::<{ __P[24] }>($($args),*),
            25 => $f::<{ __P[25] }>($($args),*),
            26 => $f::<{ __P[26] }>($($args),*),
            27 => $f::<{ __P[27] }>($($args),*),
            28 => $f::<{ __P[28] }>($($args),*),
            29 => $f::<{ __P[29] }>($($args),*),
            30 => $f::<{ __P[30] }>($($args),*),
            _ => $f::<{ __P[31] }>($($args),*),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overflow_promotes() {
        let a = Rat::from_int(i64::MAX);
        let b = &a + &a;
        assert_eq!(b.numer(), BigInt::from(i64::MAX) * 2);
        let c = &b - &a;
        assert_eq!(c, a);
        assert!(c.as_small().is_some());
    }

    #[test]
    fn rat_arith() {
        let a = Rat::new(3, 4);
        let b = Rat::new(-5, 6);
        assert_eq!(&a + &b, Rat::new(-1, 12));
        assert_eq!(&a * &b, Rat::new(-5, 8));
        assert_eq!(&a / &b, Rat::new(-9, 10));
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!(Rat::new(2, 3).pow(3), Rat::new(8, 27));
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
    }

    #[test]
    fn gauss_i_squared() {
        let i = GaussRat::i();
        assert_eq!(i.mul_ref(&i), GaussRat::int(-1));
        let z = GaussRat::new(Rat::new(1, 2), Rat::from_int(3));
        assert_eq!(z.mul_ref(&z.inv()), GaussRat::one());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn fp_sqrt_minus_one() {
        const P: u64 = PRIMES[0];
        let s = Fp::<P>::sqrt_minus_one();
        assert_eq!((s * s).0, P - 1);
        let x = Fp::<P>(123456789);
        assert_eq!((x * x.inv()).0, 1);
        assert_eq!(Fp::<P>::from_rat(&Rat::new(1, 2)).unwrap() * Fp(2), Fp(1));
    }

    #[test]
    fn primes_are_1_mod_4() {
        assert!(PRIMES.iter().all(|p| p % 4 == 1));
    }
}
