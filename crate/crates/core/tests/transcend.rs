mod common;

use common::p;
use crjet_core::geometry::{Convention, Hypersurface};
use crjet_core::series::Series;
use crjet_core::transcend::*;

#[test]
fn quadric_is_annihilated_by_u() {
    let m = Hypersurface::rigid(p("z*zb"), Convention::Re).unwrap();
    let r = jet_transcendence_report(&m, &SearchBounds { n_max: 2, d_max: 2, e_max: 2, order: 8 }).unwrap();
    assert_eq!(r.witness().unwrap().to_expr(), p("u"));
    assert_eq!(r.attempts.len(), 1);
}

#[test]
fn rigid_search_drops_w() {
    let m = Hypersurface::rigid(p("z*zb + z^2*zb^2"), Convention::Re).unwrap();
    let (f, rigid) = ode_series_for_search(&m, 6).unwrap();
    assert!(rigid);
    assert_eq!(f.vars(), ["z", "wp"]);
    let g = Hypersurface::general(p("z*zb + v*z^2*zb^2"), Convention::Re).unwrap();
    let (f, rigid) = ode_series_for_search(&g, 6).unwrap();
    assert!(!rigid);
    assert_eq!(f.vars(), ["z", "w", "wp"]);
}

#[test]
fn perturbed_witness_fails_verification() {
    let vars = ["z", "wp"];
    let n = 16;
    // u = wp/(1 - z) is annihilated by (1 - z)u - wp.
    let f = Series::var(&vars, n, "wp").div(&Series::var(&vars, n, "z").neg().add_constant(&1.into())).unwrap();
    let out = annihilator_search(&f, "wp", &SearchBounds { n_max: 1, d_max: 1, e_max: 1, order: n }).unwrap();
    let w = out.witness().unwrap().clone();
    assert!(verify_witness(&w, &f).unwrap());
    let mut bad = w.clone();
    bad.terms[0].coeff = bad.terms[0].coeff.clone() + 1.into();
    assert!(!verify_witness(&bad, &f).unwrap());
}

#[test]
fn bounds_are_validated() {
    assert!(SearchBounds { n_max: 0, ..SearchBounds::default() }.validate().is_err());
    assert_eq!(SearchBounds::default().floor(), 35);
}

#[test]
fn resultant_eliminates_parameter() {
    // t^2 = z and u = t give u^2 - z up to sign.
    let r = resultant(&p("t^2 - z"), &p("u - t"), "t").unwrap();
    assert!(r == p("u^2 - z") || r == p("z - u^2"), "{r}");
}
