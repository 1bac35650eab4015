//! Segre family, associated second-order ODE and point transformations.
//!
//! Segre graphs are `w(z) = ρ(z, ā, b̄)`; for a rigid `Re w = H` this is
//! `w = 2H(z, ā) − b̄`, so `w' = 2H_z(z, ā)` and `w'' = 2H_zz(z, ā)`.
//! ODE right-hand sides are series in `(z, w, wp)`.

use crate::error::{Error, Result};
use crate::geometry::{Defining, Hypersurface};
use crate::series::{expand, solve_implicit, Series};
use num_traits::Zero;

use crate::symkernel::{Expr, GaussRat};

pub const RHO_VARS: [&str; 3] = ["z", "zb", "wb"];
pub const ODE_VARS: [&str; 3] = ["z", "w", "wp"];

fn expand_as(e: &Expr, from: &[&str], to: &[&str], order: u32) -> Result<Series> {
    Ok(expand(e, from, order)?.rename(to))
}

/// `w = ρ(z, zb, wb)` as a jet; rigid inputs also keep the closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexDefiningEq {
    pub rho: Series,
    pub exact: Option<Expr>,
}

impl ComplexDefiningEq {
    pub fn from_series(rho: Series) -> Result<Self> {
        let rho = rho.embed(&RHO_VARS)?;
        Ok(ComplexDefiningEq { rho, exact: None })
    }

    pub fn order(&self) -> u32 {
        self.rho.order()
    }

    /// `ρ(z, zb, σρ(zb, z, w)) − w`; vanishes for a real hypersurface.
    pub fn reality_residual(&self) -> Result<Series> {
        let vars = ["z", "zb", "w"];
        let conj = self.rho.sigma_coeffs().rename(&["zb", "z", "w"]).embed(&vars)?;
        let n = self.order();
        let subs = [Series::var(&vars, n, "z"), Series::var(&vars, n, "zb"), conj];
        Ok(self.rho.rename(&vars).compose(&subs)?.sub(&Series::var(&vars, n, "w")))
    }
}

/// Complex defining equation to order `order`.
pub fn complex_defining(m: &Hypersurface, order: u32) -> Result<ComplexDefiningEq> {
    match m.defining() {
        Defining::Rigid(h) => {
            let exact = Expr::int(2) * h.clone() - Expr::var("wb");
            let rho = expand(&exact, &RHO_VARS, order)?;
            Ok(ComplexDefiningEq { rho, exact: Some(exact) })
        }
        Defining::General(f) => {
            // (w + wb)/2 = F(z, zb, (w − wb)/(2i)), solved for w.
            let vars = ["z", "zb", "wb", "w"];
            let fs = expand(f, &["z", "zb", "v"], order)?.rename(&["z", "zb", "v"]);
            let two_i_inv = GaussRat::new(crate::Rat::from_int(0), crate::Rat::new(-1, 2));
            let v = Series::var(&vars, order, "w").sub(&Series::var(&vars, order, "wb")).scale(&two_i_inv);
            let fv = fs.compose(&[Series::var(&vars, order, "z"), Series::var(&vars, order, "zb"), v])?;
            let lhs = Series::var(&vars, order, "w").add(&Series::var(&vars, order, "wb")).scale(&GaussRat::frac(1, 2));
            let eq = lhs.sub(&fv);
            let mut sol = solve_implicit(&[eq], &["w"], order)
                .map_err(|e| if matches!(e, Error::LeviDegenerate(_)) { Error::LeviDegenerate("1 + i F_v vanishes at the origin".into()) } else { e })?;
            Ok(ComplexDefiningEq { rho: sol.pop().unwrap(), exact: None })
        }
    }
}

/// `ā = A(z, w, w')`, `b̄ = B(z, w, w')`.
#[derive(Clone, Debug, PartialEq)]
pub struct SegreSolveData {
    pub a: Series,
    pub b: Series,
}

/// `w'' = Φ(z, w, w')` as a jet in [`ODE_VARS`].
#[derive(Clone, Debug, PartialEq)]
pub struct OdeFunc {
    pub phi: Series,
    pub rigid: bool,
}

impl OdeFunc {
    pub fn order(&self) -> u32 {
        self.phi.order()
    }

    /// True when `Φ` does not involve `w`.
    pub fn is_w_free(&self) -> bool {
        self.phi.derivative_by("w").is_zero()
    }
}

fn levi(e: Error) -> Error {
    match e {
        Error::LeviDegenerate(_) => Error::LeviDegenerate("singular Levi determinant in the Segre system".into()),
        other => other,
    }
}

fn rigid_h(m: &Hypersurface) -> Option<&Expr> {
    match m.defining() {
        Defining::Rigid(h) => Some(h),
        Defining::General(_) => None,
    }
}

/// Rigid path: `A` from `w' = 2H_z(z, A)` by series inversion, `B = 2H(z, A) − w`.
fn solve_rigid(h: &Expr, order: u32) -> Result<SegreSolveData> {
    let vars = ["z", "w", "wp", "a"];
    let hz = expand_as(&(Expr::int(2) * h.diff("z")), &["z", "zb"], &["z", "a"], order)?.embed(&vars)?;
    let eq = hz.sub(&Series::var(&vars, order, "wp"));
    let a = solve_implicit(&[eq], &["a"], order).map_err(levi)?.pop().unwrap();
    let hs = expand_as(&(Expr::int(2) * h.clone()), &["z", "zb"], &["z", "a"], order)?;
    let b = hs.compose(&[Series::var(&ODE_VARS, order, "z"), a.clone()])?.sub(&Series::var(&ODE_VARS, order, "w"));
    Ok(SegreSolveData { a, b })
}

/// Solves `w = ρ(z, ā, b̄)`, `w' = ρ_z(z, ā, b̄)`; the result is exact below `ρ.order() − 1`.
pub fn solve_segre_rho(rho: &ComplexDefiningEq) -> Result<SegreSolveData> {
    let order = rho.order();
    let vars = ["z", "w", "wp", "a", "b"];
    let r = rho.rho.rename(&["z", "a", "b"]).embed(&vars)?;
    let eq1 = r.sub(&Series::var(&vars, order, "w"));
    let eq2 = r.derivative_by("z").sub(&Series::var(&vars, order - 1, "wp"));
    let mut sol = solve_implicit(&[eq1, eq2], &["a", "b"], order - 1).map_err(levi)?;
    let b = sol.pop().unwrap();
    let a = sol.pop().unwrap();
    Ok(SegreSolveData { a, b })
}

pub fn solve_segre(m: &Hypersurface, order: u32) -> Result<SegreSolveData> {
    match rigid_h(m) {
        Some(h) => solve_rigid(h, order),
        None => {
            let rho = complex_defining(m, order + 1)?;
            let s = solve_segre_rho(&rho)?;
            Ok(SegreSolveData { a: s.a.truncate(order), b: s.b.truncate(order) })
        }
    }
}

/// `Φ = ρ_zz(z, A, B)`; exact below `ρ.order() − 2`.
pub fn associated_ode_rho(rho: &ComplexDefiningEq) -> Result<OdeFunc> {
    let s = solve_segre_rho(rho)?;
    let order = rho.order() - 2;
    let rzz = rho.rho.derivative_by("z").derivative_by("z");
    let phi = rzz.compose(&[Series::var(&ODE_VARS, order, "z"), s.a.truncate(order), s.b.truncate(order)])?;
    let rigid = phi.derivative_by("w").is_zero();
    Ok(OdeFunc { phi, rigid })
}

pub fn associated_ode(m: &Hypersurface, order: u32) -> Result<OdeFunc> {
    match rigid_h(m) {
        Some(h) => {
            let s = solve_rigid(h, order)?;
            let hzz = expand_as(&(Expr::int(2) * h.diff("z").diff("z")), &["z", "zb"], &["z", "a"], order)?;
            let phi = hzz.compose(&[Series::var(&ODE_VARS, order, "z"), s.a])?;
            Ok(OdeFunc { phi, rigid: true })
        }
        None => associated_ode_rho(&complex_defining(m, order + 2)?),
    }
}

// ---------------------------------------------------------------- jets and maps

/// `D e = e_z + w'·e_w + w''·e_w'`.
pub fn total_derivative(e: &Expr) -> Expr {
    let mut acc = e.diff("z");
    if e.depends_on("w") {
        acc = acc + Expr::var("wp") * e.diff("w");
    }
    if e.depends_on("wp") {
        acc = acc + Expr::var("wpp") * e.diff("wp");
    }
    acc
}

/// Holomorphic map `(z, w) ↦ (f, g)` with `J = f_z g_w − f_w g_z ≢ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiholoMap {
    pub f: Expr,
    pub g: Expr,
}

impl BiholoMap {
    pub fn new(f: Expr, g: Expr) -> Result<BiholoMap> {
        for e in [&f, &g] {
            for v in e.variables() {
                if v != "z" && v != "w" {
                    return Err(Error::Invalid(format!("map components may only involve z and w, found {v}")));
                }
            }
        }
        let m = BiholoMap { f, g };
        if m.jacobian().is_zero() {
            return Err(Error::NonInvertible("Jacobian determinant vanishes identically".into()));
        }
        Ok(m)
    }

    pub fn identity() -> BiholoMap {
        BiholoMap { f: Expr::var("z"), g: Expr::var("w") }
    }

    pub fn jacobian(&self) -> Expr {
        self.f.diff("z") * self.g.diff("w") - self.f.diff("w") * self.g.diff("z")
    }

    pub fn preserves_origin(&self) -> bool {
        let at0 = |e: &Expr| e.substitute(&[("z", Expr::zero()), ("w", Expr::zero())]).map(|r| r.is_zero()).unwrap_or(false);
        at0(&self.f) && at0(&self.g)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &BiholoMap) -> Result<BiholoMap> {
        let b = [("z", inner.f.clone()), ("w", inner.g.clone())];
        BiholoMap::new(self.f.substitute(&b)?, self.g.substitute(&b)?)
    }

    /// Coefficients of the transformation rule: `I0 + I1 w' + I2 w'^2 + I3 w'^3`.
    pub fn prolongation_coefficients(&self) -> [Expr; 4] {
        let (f, g) = (&self.f, &self.g);
        let d = |e: &Expr, s: &[&str]| e.diff_seq(s);
        let two = Expr::int(2);
        let i0 = d(g, &["z"]) * d(f, &["z", "z"]) - d(f, &["z"]) * d(g, &["z", "z"]);
        let i1 = d(g, &["w"]) * d(f, &["z", "z"]) - d(f, &["w"]) * d(g, &["z", "z"])
            + two.clone() * (d(g, &["z"]) * d(f, &["z", "w"]) - d(f, &["z"]) * d(g, &["z", "w"]));
        let i2 = d(g, &["z"]) * d(f, &["w", "w"]) - d(f, &["z"]) * d(g, &["w", "w"])
            + two * (d(g, &["w"]) * d(f, &["z", "w"]) - d(f, &["w"]) * d(g, &["z", "w"]));
        let i3 = d(g, &["w"]) * d(f, &["w", "w"]) - d(f, &["w"]) * d(g, &["w", "w"]);
        [i0, i1, i2, i3]
    }
}

/// Second prolongation `(f, g, g1, g2)` of a point map.
#[derive(Clone, Debug, PartialEq)]
pub struct Prolonged2Jet {
    pub f: Expr,
    pub g: Expr,
    pub g1: Expr,
    pub g2: Expr,
}

pub fn prolong_map(m: &BiholoMap) -> Result<Prolonged2Jet> {
    let c = total_derivative(&m.f);
    if c.is_zero() {
        return Err(Error::Precondition("D f vanishes identically".into()));
    }
    let g1 = total_derivative(&m.g).checked_div(&c)?;
    let g2 = total_derivative(&g1).checked_div(&c)?;
    Ok(Prolonged2Jet { f: m.f.clone(), g: m.g.clone(), g1, g2 })
}

impl Prolonged2Jet {
    /// `self ∘ inner` as maps of `(z, w, w', w'')`.
    pub fn compose(&self, inner: &Prolonged2Jet) -> Result<Prolonged2Jet> {
        let b = [("z", inner.f.clone()), ("w", inner.g.clone()), ("wp", inner.g1.clone()), ("wpp", inner.g2.clone())];
        Ok(Prolonged2Jet { f: self.f.substitute(&b)?, g: self.g.substitute(&b)?, g1: self.g1.substitute(&b)?, g2: self.g2.substitute(&b)? })
    }

    /// `g1` is a Möbius function of `w'` and `g2` is affine in `w''` with nonzero slope.
    pub fn structure_ok(&self) -> bool {
        let deg_le1 = |e: &Expr, v: &str| e.diff(v).diff(v).is_zero();
        let n = self.g1.numerator_expr();
        let d = self.g1.denominator_expr();
        let mobius = deg_le1(&n, "wp") && deg_le1(&d, "wp") && !self.g1.depends_on("wpp");
        let slope = self.g2.diff("wpp");
        mobius && !slope.is_zero() && slope.diff("wpp").is_zero()
    }
}

/// Pulls back a target equation `w'' = Φ̃` along `m` (closed form).
pub fn transform_phi_expr(phi: &Expr, m: &BiholoMap) -> Result<Expr> {
    let wp = Expr::var("wp");
    let c = m.f.diff("z") + wp.clone() * m.f.diff("w");
    let r = (m.g.diff("z") + wp.clone() * m.g.diff("w")).checked_div(&c)?;
    let moved = phi.substitute(&[("z", m.f.clone()), ("w", m.g.clone()), ("wp", r)])?;
    let [i0, i1, i2, i3] = m.prolongation_coefficients();
    let poly = i0 + i1 * wp.clone() + i2 * wp.pow(2) + i3 * wp.pow(3);
    (c.pow(3) * moved + poly).checked_div(&m.jacobian())
}

/// Series form of [`transform_phi_expr`]; needs `m(0) = 0`, `g_z(0) = 0` and `J(0) ≠ 0`.
pub fn transform_phi(target: &OdeFunc, m: &BiholoMap) -> Result<OdeFunc> {
    if !m.preserves_origin() {
        return Err(Error::Precondition("map must fix the origin".into()));
    }
    let n = target.order();
    let wp = Expr::var("wp");
    let c = m.f.diff("z") + wp.clone() * m.f.diff("w");
    let r = (m.g.diff("z") + wp.clone() * m.g.diff("w")).checked_div(&c)?;
    let fs = expand(&m.f, &ODE_VARS, n)?;
    let gs = expand(&m.g, &ODE_VARS, n)?;
    let rs = expand(&r, &ODE_VARS, n)?;
    if !rs.constant_term().is_zero() {
        return Err(Error::Precondition("the prolonged map must fix w' = 0 (g_z(0) = 0)".into()));
    }
    let moved = target.phi.compose(&[fs, gs, rs])?;
    let [i0, i1, i2, i3] = m.prolongation_coefficients();
    let poly = i0 + i1 * wp.clone() + i2 * wp.pow(2) + i3 * wp.pow(3);
    let jinv = expand(&m.jacobian(), &ODE_VARS, n)?.inv()?;
    let phi = expand(&c.pow(3), &ODE_VARS, n)?.mul(&moved).add(&expand(&poly, &ODE_VARS, n)?).mul(&jinv);
    let rigid = phi.derivative_by("w").is_zero();
    Ok(OdeFunc { phi, rigid })
}

/// Complex defining equation of `m(M)` from that of `M`, to the order of `rho`.
pub fn image_defining(m: &BiholoMap, rho: &ComplexDefiningEq) -> Result<ComplexDefiningEq> {
    if !m.preserves_origin() {
        return Err(Error::Precondition("map must fix the origin".into()));
    }
    let order = rho.order();
    // Inverse map (F, G) as series in target coordinates.
    let ivars = ["z", "w", "F", "G"];
    let f_s = expand_as(&m.f, &["z", "w"], &["F", "G"], order)?.embed(&ivars)?;
    let g_s = expand_as(&m.g, &["z", "w"], &["F", "G"], order)?.embed(&ivars)?;
    let eqs = [f_s.sub(&Series::var(&ivars, order, "z")), g_s.sub(&Series::var(&ivars, order, "w"))];
    let mut inv = solve_implicit(&eqs, &["F", "G"], order).map_err(|e| match e {
        Error::LeviDegenerate(_) => Error::NonInvertible("map is not invertible at the origin".into()),
        other => other,
    })?;
    let big_g = inv.pop().unwrap();
    let big_f = inv.pop().unwrap();
    // G(z, w) = ρ(F(z, w), σF(zb, wb), σG(zb, wb)), solved for w.
    let vars = ["z", "zb", "wb", "w"];
    let lift = |s: &Series| s.embed(&vars);
    let conj = |s: &Series| s.sigma_coeffs().rename(&["zb", "wb"]).embed(&vars);
    let rhs = rho.rho.compose(&[lift(&big_f)?, conj(&big_f)?, conj(&big_g)?])?;
    let eq = lift(&big_g)?.sub(&rhs);
    let mut sol = solve_implicit(&[eq], &["w"], order).map_err(levi)?;
    Ok(ComplexDefiningEq { rho: sol.pop().unwrap(), exact: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Convention;
    use crate::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn quadric_segre() {
        let m = Hypersurface::rigid(p("z*zb"), Convention::Re).unwrap();
        let s = solve_segre(&m, 6).unwrap();
        assert_eq!(s.a.to_expr(), p("wp/2"));
        assert_eq!(s.b.to_expr(), p("z*wp - w"));
        assert!(associated_ode(&m, 12).unwrap().phi.is_zero());
        assert_eq!(complex_defining(&m, 4).unwrap().exact.unwrap(), p("2*z*zb - wb"));
    }

    #[test]
    fn prolongation_examples() {
        let j = prolong_map(&BiholoMap::identity()).unwrap();
        assert_eq!((j.g1, j.g2), (p("wp"), p("wpp")));
        let j = prolong_map(&BiholoMap::new(p("z"), p("2*w")).unwrap()).unwrap();
        assert_eq!((j.g1, j.g2), (p("2*wp"), p("2*wpp")));
        let j = prolong_map(&BiholoMap::new(p("w"), p("z")).unwrap()).unwrap();
        assert_eq!((j.g1.clone(), j.g2.clone()), (p("1/wp"), p("-wpp/wp^3")));
        assert!(j.structure_ok());
    }

    #[test]
    fn transform_examples() {
        let m = BiholoMap::new(p("z"), p("w + z^2")).unwrap();
        assert!(transform_phi_expr(&p("2"), &m).unwrap().is_zero());
        let m = BiholoMap::new(p("z"), p("2*w")).unwrap();
        assert_eq!(transform_phi_expr(&p("z*w*wp^2"), &m).unwrap(), p("z*(2*w)*(2*wp)^2/2"));
        assert_eq!(transform_phi_expr(&p("wp^2 + z"), &BiholoMap::identity()).unwrap(), p("wp^2 + z"));
    }
}
