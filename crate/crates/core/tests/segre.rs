mod common;

use common::*;
use crjet_core::geometry::{Convention, Hypersurface};
use crjet_core::segre::*;
use crjet_core::series::{expand, Series};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn q2_first_conjugate_parameter() {
    let m = Hypersurface::rigid(p("z*zb + z^2*zb^2"), Convention::Re).unwrap();
    let s = solve_segre(&m, 4).unwrap();
    assert_eq!(s.a.to_expr(), p("wp/2 - z*wp^2/2"));
}

#[test]
fn arctan_segre_identity() {
    let h = p("z*zb + z*atan(zb) + atan(z)*zb");
    let m = Hypersurface::rigid(h.clone(), Convention::Re).unwrap();
    let n = 7;
    let ode = associated_ode(&m, n).unwrap();
    let tv = ["z", "t"];
    let two = crjet_core::Expr::int(2);
    let hz = expand(&(two.clone() * h.diff("z")), &["z", "zb"], n).unwrap().rename(&tv);
    let hzz = expand(&(two * h.diff("z").diff("z")), &["z", "zb"], n).unwrap().rename(&tv);
    let lhs = ode.phi.compose(&[Series::var(&tv, n, "z"), Series::zero(&tv, n), hz]).unwrap();
    assert_eq!(lhs, hzz);
}

#[test]
fn general_path_matches_rigid_path() {
    let rigid = Hypersurface::rigid(p("z*zb + z^2*zb^2 + z^3*zb + z*zb^3"), Convention::Re).unwrap();
    let general = Hypersurface::general(p("z*zb + z^2*zb^2 + z^3*zb + z*zb^3"), Convention::Re).unwrap();
    let a = associated_ode(&rigid, 7).unwrap();
    let b = associated_ode(&general, 7).unwrap();
    assert_eq!(a.phi, b.phi);
    assert!(b.rigid);
}

#[test]
fn general_rho_residual_and_reality() {
    let m = Hypersurface::general(p("z*zb + v*z^2*zb^2"), Convention::Re).unwrap();
    let rho = complex_defining(&m, 8).unwrap();
    assert!(rho.reality_residual().unwrap().is_zero());
    // (w + wb)/2 − F(z, zb, (w − wb)/(2i)) at w = ρ.
    let vars = ["z", "zb", "wb"];
    let n = rho.order();
    let w = rho.rho.clone();
    let wb = Series::var(&vars, n, "wb");
    let v = w.sub(&wb).scale(&crjet_core::GaussRat::new(0.into(), crjet_core::Rat::new(-1, 2)));
    let z = Series::var(&vars, n, "z");
    let zb = Series::var(&vars, n, "zb");
    let f = z.mul(&zb).add(&v.mul(&z.pow(2)).mul(&zb.pow(2)));
    assert!(w.add(&wb).scale(&crjet_core::GaussRat::frac(1, 2)).sub(&f).is_zero());
    assert!(!associated_ode(&m, 6).unwrap().is_w_free());
}

#[test]
fn ode_transforms_under_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 6;
    for _ in 0..2 {
        let h = random_hermitian(&mut rng, 4);
        let map = random_map(&mut rng, 2);
        let m = Hypersurface::rigid(h, Convention::Re).unwrap();
        let rho = complex_defining(&m, n + 2).unwrap();
        let image = image_defining(&map, &rho).unwrap();
        assert!(image.reality_residual().unwrap().is_zero());
        let target = associated_ode_rho(&image).unwrap();
        let back = transform_phi(&target, &map).unwrap();
        let direct = associated_ode(&m, n).unwrap();
        assert_eq!(back.phi, direct.phi);
    }
}
