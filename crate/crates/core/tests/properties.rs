use crjet_core::cartan::{basis_element, borel_action_curvature, CurvatureData};
use crjet_core::linalg::{apply, first_dependency, rank_profile};
use crjet_core::matrix::Mat3;
use crjet_core::series::{expand, Series};
use crjet_core::transcend::{annihilator_search, verify_witness, SearchBounds};
use crjet_core::{parse_expr, Expr, GaussRat, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn cases() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

/// Sparse polynomial in `z, zb, w` with small Gaussian coefficients.
fn poly() -> impl Strategy<Value = Expr> {
    prop::collection::vec((-4i64..=4, -2i64..=2, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Expr::zero(), |acc, (re, im, a, b, c)| {
            let k = Expr::constant(GaussRat::new(Rat::from_int(re), Rat::from_int(im)));
            acc + k * Expr::var("z").pow(a) * Expr::var("zb").pow(b) * Expr::var("w").pow(c)
        })
    })
}

fn nonzero_poly() -> impl Strategy<Value = Expr> {
    poly().prop_filter("nonzero", |e| !e.is_zero())
}

fn rational() -> impl Strategy<Value = Expr> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| n.checked_div(&d).unwrap())
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn partials_commute(a in rational()) {
        prop_assert_eq!(a.diff("z").diff("zb"), a.diff("zb").diff("z"));
        prop_assert_eq!(a.diff("w").diff("z"), a.diff("z").diff("w"));
    }

    #[test]
    fn leibniz_rule(a in rational(), b in rational()) {
        prop_assert_eq!((a.clone() * b.clone()).diff("z"), a.diff("z") * b.clone() + a.clone() * b.diff("z"));
    }

    #[test]
    fn conjugation_swaps_partials(a in rational()) {
        let s = a.sigma().unwrap();
        prop_assert_eq!(a.diff("z").sigma().unwrap(), s.diff("zb"));
        prop_assert_eq!(s.sigma().unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in rational(), k in 0usize..3) {
        let e = match k {
            0 => a,
            1 => Expr::atan(&Expr::var("z")) * a,
            _ => Expr::exp(&(Expr::var("z") * Expr::var("zb"))) + a,
        };
        prop_assert_eq!(parse_expr(&e.to_text()).unwrap(), e);
    }
}

fn series_of(e: &Expr, order: u32) -> Series {
    expand(&e.substitute(&[("w", Expr::var("zb"))]).unwrap(), &["z", "zb"], order).unwrap()
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn series_ring_laws(a in poly(), b in poly(), c in poly()) {
        let n = 6;
        let (a, b, c) = (series_of(&a, n), series_of(&b, n), series_of(&c, n));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).derivative(0), a.derivative(0).mul(&b).add(&a.mul(&b.derivative(0))).truncate(n - 1));
    }

    #[test]
    fn series_inverse(a in poly(), k in 1i64..4) {
        let n = 7;
        let s = series_of(&a, n);
        let s = s.add_constant(&(-s.constant_term() + GaussRat::int(k)));
        let one = s.mul(&s.inv().unwrap());
        prop_assert_eq!(one, Series::constant(&["z", "zb"], n, GaussRat::int(1)));
    }

    #[test]
    fn composition_matches_substitution(a in poly(), b in poly()) {
        // a(z, zb) evaluated at z -> z*(1 + b), zb -> zb.
        let n = 6;
        let inner = Expr::var("z") * (Expr::one() + b.substitute(&[("w", Expr::var("zb"))]).unwrap());
        let direct = series_of(&a.substitute(&[("z", inner.clone())]).unwrap(), n);
        let vars = ["z", "zb"];
        let composed = series_of(&a, n).compose(&[expand(&inner, &vars, n).unwrap(), Series::var(&vars, n, "zb")]).unwrap();
        prop_assert_eq!(composed, direct);
    }
}

fn small() -> impl Strategy<Value = GaussRat> {
    (-3i64..=3, -1i64..=1).prop_map(|(r, i)| GaussRat::new(Rat::from_int(r), Rat::from_int(i)))
}

fn borel() -> impl Strategy<Value = Mat3> {
    prop::collection::vec(small(), 5).prop_map(|c| {
        (3..8).zip(c).fold(Mat3::zero(), |acc, (k, x)| acc.add(&basis_element(k).scale(&Expr::constant(x))))
    })
}

fn curvature() -> impl Strategy<Value = CurvatureData> {
    prop::collection::vec(small(), 24).prop_map(|c| {
        let mats: Vec<Mat3> = c.chunks(8).map(|ch| (0..8).fold(Mat3::zero(), |acc, k| acc.add(&basis_element(k).scale(&Expr::constant(ch[k].clone()))))).collect();
        CurvatureData { kappa: [mats[0].clone(), mats[1].clone(), mats[2].clone()] }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn borel_action_is_a_representation(b1 in borel(), b2 in borel(), t in curvature()) {
        let act = |b: &Mat3, t: &CurvatureData| borel_action_curvature(b, t).unwrap();
        let lhs = act(&b1.commutator(&b2), &t);
        let r12 = act(&b1, &act(&b2, &t));
        let r21 = act(&b2, &act(&b1, &t));
        let rhs: [Mat3; 3] = std::array::from_fn(|k| r12.kappa[k].sub(&r21.kappa[k]));
        prop_assert_eq!(lhs.kappa, rhs);
    }
}

fn rat_columns() -> impl Strategy<Value = (usize, Vec<Vec<Rat>>)> {
    (1usize..5).prop_flat_map(|rows| (Just(rows), prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(Rat::from_int), rows), 1..7)))
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn kernel_vectors_are_sound((rows, cols) in rat_columns()) {
        let profile = rank_profile(rows, &cols);
        prop_assert!(profile.len() <= rows);
        match first_dependency(rows, &cols) {
            Some((i, k)) => {
                prop_assert!(!profile.contains(&i));
                prop_assert_eq!(k.len(), i + 1);
                prop_assert!(apply(rows, &cols[..=i], &k).iter().all(|x| x.is_zero()));
                prop_assert_eq!(profile.iter().take_while(|&&p| p < i).count(), i);
            }
            None => prop_assert_eq!(profile.len(), cols.len()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    /// A polynomial jet is annihilated in degree one; widening the bounds keeps a witness.
    #[test]
    fn search_finds_polynomials_and_is_monotone(a in poly()) {
        let vars = ["z", "wp"];
        let e = a.substitute(&[("zb", Expr::var("wp")), ("w", Expr::var("z"))]).unwrap();
        let f = expand(&e, &vars, 12).unwrap();
        let small = SearchBounds { n_max: 1, d_max: 4, e_max: 4, order: 12 };
        let w = annihilator_search(&f, "wp", &small).unwrap().witness().cloned();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert_eq!(w.n, 1);
        prop_assert!(verify_witness(&w, &expand(&e, &vars, 24).unwrap()).unwrap());
        let wide = SearchBounds { n_max: 2, d_max: 5, e_max: 5, order: 12 };
        let w2 = annihilator_search(&f, "wp", &wide).unwrap().witness().cloned();
        prop_assert!(w2.is_some_and(|w2| w2.n <= w.n));
    }
}
