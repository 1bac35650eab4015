#![allow(dead_code)]

use crjet_core::{Expr, GaussRat, Rat};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn p(s: &str) -> Expr {
    crjet_core::parse_expr(s).unwrap()
}

fn small_gauss(rng: &mut ChaCha8Rng, real_only: bool) -> GaussRat {
    let re = rng.gen_range(-3i64..=3);
    let im = if real_only { 0 } else { rng.gen_range(-2i64..=2) };
    GaussRat::new(Rat::from_int(re), Rat::from_int(im))
}

fn mono(z: &str, zb: &str, j: u32, k: u32) -> Expr {
    Expr::var(z).pow(j) * Expr::var(zb).pow(k)
}

/// Real polynomial `H(z, zb)` of degree at most `deg` with `H_{z zb}(0) ≠ 0`.
pub fn random_hermitian(rng: &mut ChaCha8Rng, deg: u32) -> Expr {
    let mut h = Expr::zero();
    for j in 0..=deg {
        for k in j..=deg - j {
            if j + k < 2 {
                continue;
            }
            if rng.gen_bool(0.5) && !(j == 1 && k == 1) {
                continue;
            }
            let mut c = small_gauss(rng, j == k);
            if j == 1 && k == 1 && c == GaussRat::int(0) {
                c = GaussRat::int(1);
            }
            if c == GaussRat::int(0) {
                continue;
            }
            let t = Expr::constant(c.clone()) * mono("z", "zb", j, k);
            h = if j == k { h + t } else {
                let conj = GaussRat::new(c.re.clone(), -c.im.clone());
                h + t + Expr::constant(conj) * mono("z", "zb", k, j)
            };
        }
    }
    h
}

/// Polynomial in `(z, w)` with no constant term; `linear` fixes the degree-one part.
fn random_component(rng: &mut ChaCha8Rng, deg: u32, linear: Expr) -> Expr {
    let mut e = linear;
    for j in 0..=deg {
        for k in 0..=deg - j {
            if j + k < 2 || rng.gen_bool(0.6) {
                continue;
            }
            e = e + Expr::constant(small_gauss(rng, false)) * mono("z", "w", j, k);
        }
    }
    e
}

fn nonzero(rng: &mut ChaCha8Rng) -> GaussRat {
    loop {
        let c = small_gauss(rng, false);
        if c != GaussRat::int(0) {
            return c;
        }
    }
}

/// Origin-preserving map with invertible linear part and `g_z(0) = 0`.
pub fn random_map(rng: &mut ChaCha8Rng, deg: u32) -> crjet_core::segre::BiholoMap {
    let a = Expr::constant(nonzero(rng));
    let b = Expr::constant(small_gauss(rng, false));
    let c = Expr::constant(nonzero(rng));
    let f = random_component(rng, deg, a * Expr::var("z") + b * Expr::var("w"));
    let g = random_component(rng, deg, c * Expr::var("w"));
    crjet_core::segre::BiholoMap::new(f, g).unwrap()
}
