//! Adapted frames, coframes and the structure function of a hypersurface.
//!
//! Coordinates are `(z, zb, v)`; a rigid hypersurface is `Re w = H(z, zb)`,
//! a general one is `u = F(z, zb, v)` with `w = u + i v`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::symkernel::{eval_constant, Expr, GaussRat};

pub const COORDS: [&str; 3] = ["z", "zb", "v"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Re,
    Im,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Defining {
    /// `Re w = H(z, zb)`.
    Rigid(Expr),
    /// `u = F(z, zb, v)`.
    General(Expr),
}

/// A real hypersurface through the origin, Levi-nondegenerate there.
///
/// Inputs in the `Im` convention are rewritten by `w → i w` at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypersurface {
    defining: Defining,
    convention: Convention,
}

fn check_vars(e: &Expr, allowed: &[&str]) -> Result<()> {
    for v in e.variables() {
        if !allowed.contains(&v.as_str()) {
            return Err(Error::Invalid(format!("variable {v} is not allowed here (expected one of {allowed:?})")));
        }
    }
    Ok(())
}

fn at_origin(e: &Expr) -> Result<GaussRat> {
    eval_constant(e, &[("z", GaussRat::int(0)), ("zb", GaussRat::int(0)), ("v", GaussRat::int(0))])
        .map_err(|_| Error::NotExpandable(format!("{e} is not defined at the origin")))
}

impl Hypersurface {
    pub fn rigid(h: Expr, convention: Convention) -> Result<Hypersurface> {
        check_vars(&h, &["z", "zb"])?;
        // For rigid data the rewrite w → i w leaves H unchanged.
        let m = Hypersurface { defining: Defining::Rigid(h), convention };
        m.validate()?;
        Ok(m)
    }

    pub fn general(f: Expr, convention: Convention) -> Result<Hypersurface> {
        check_vars(&f, &COORDS)?;
        // Im w = F(z, zb, Re w) becomes Re w = F(z, zb, -Im w) after w → i w.
        let f = match convention {
            Convention::Re => f,
            Convention::Im => f.substitute(&[("v", -Expr::var("v"))])?,
        };
        let m = Hypersurface { defining: Defining::General(f), convention };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let f = self.defining_function();
        if f.sigma()? != *f {
            return Err(Error::NotReal(format!("sigma({}) differs from the input", f)));
        }
        if !at_origin(f)?.is_zero_value() {
            return Err(Error::Precondition(format!("{f} does not vanish at the origin")));
        }
        match &self.defining {
            Defining::Rigid(h) => {
                if at_origin(&h.diff("z").diff("zb"))?.is_zero_value() {
                    return Err(Error::LeviDegenerate("H_{z zb}(0) = 0".into()));
                }
            }
            Defining::General(f) => {
                let d = Expr::one() + Expr::i() * f.diff("v");
                if at_origin(&d)?.is_zero_value() {
                    return Err(Error::LeviDegenerate("1 + i F_v vanishes at the origin".into()));
                }
                let fr = build_frame(self)?;
                if at_origin(&fr.y.c[2])?.is_zero_value() {
                    return Err(Error::LeviDegenerate("[X, Xb] vanishes at the origin".into()));
                }
            }
        }
        Ok(())
    }

    pub fn defining(&self) -> &Defining {
        &self.defining
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn is_rigid(&self) -> bool {
        matches!(self.defining, Defining::Rigid(_))
    }

    /// `H` or `F` in the Re convention.
    pub fn defining_function(&self) -> &Expr {
        match &self.defining {
            Defining::Rigid(h) | Defining::General(h) => h,
        }
    }
}

trait IsZeroValue {
    fn is_zero_value(&self) -> bool;
}

impl IsZeroValue for GaussRat {
    fn is_zero_value(&self) -> bool {
        *self == GaussRat::int(0)
    }
}

// ---------------------------------------------------------------- fields and forms

/// `c[0] ∂_z + c[1] ∂_zb + c[2] ∂_v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    pub c: [Expr; 3],
}

impl VectorField {
    pub fn new(a: Expr, b: Expr, c: Expr) -> Self {
        VectorField { c: [a, b, c] }
    }

    pub fn coordinate(k: usize) -> Self {
        let mut c: [Expr; 3] = std::array::from_fn(|_| Expr::zero());
        c[k] = Expr::one();
        VectorField { c }
    }

    pub fn apply(&self, f: &Expr) -> Expr {
        let mut acc = Expr::zero();
        for (k, name) in COORDS.iter().enumerate() {
            if self.c[k].is_zero() || !f.depends_on(name) {
                continue;
            }
            let d = f.diff(name);
            acc = acc.add_ref(&self.c[k].mul_ref(&d));
        }
        acc
    }

    pub fn scale(&self, k: &Expr) -> Self {
        VectorField { c: std::array::from_fn(|i| self.c[i].mul_ref(k)) }
    }

    pub fn add(&self, o: &Self) -> Self {
        VectorField { c: std::array::from_fn(|i| self.c[i].add_ref(&o.c[i])) }
    }

    pub fn neg(&self) -> Self {
        VectorField { c: std::array::from_fn(|i| self.c[i].neg_ref()) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|e| e.is_zero())
    }

    /// Conjugate field: swaps the `z` and `zb` slots and conjugates coefficients.
    pub fn sigma(&self) -> Result<Self> {
        Ok(VectorField::new(self.c[1].sigma()?, self.c[0].sigma()?, self.c[2].sigma()?))
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})∂z + ({})∂zb + ({})∂v", self.c[0], self.c[1], self.c[2])
    }
}

/// Coordinate Lie bracket `[U, V]`.
pub fn lie_bracket(u: &VectorField, v: &VectorField) -> VectorField {
    VectorField { c: std::array::from_fn(|k| u.apply(&v.c[k]).sub_ref(&v.apply(&u.c[k]))) }
}

/// `c[0] dz + c[1] dzb + c[2] dv`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OneForm {
    pub c: [Expr; 3],
}

impl OneForm {
    pub fn pair(&self, u: &VectorField) -> Expr {
        let mut acc = Expr::zero();
        for k in 0..3 {
            acc = acc.add_ref(&self.c[k].mul_ref(&u.c[k]));
        }
        acc
    }

    /// Exterior derivative in holonomic coordinates.
    pub fn d(&self) -> TwoForm {
        let [a, b, c] = &self.c;
        TwoForm {
            zzb: b.diff("z").sub_ref(&a.diff("zb")),
            zv: c.diff("z").sub_ref(&a.diff("v")),
            zbv: c.diff("zb").sub_ref(&b.diff("v")),
        }
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})dz + ({})dzb + ({})dv", self.c[0], self.c[1], self.c[2])
    }
}

/// `zzb dz∧dzb + zv dz∧dv + zbv dzb∧dv`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm {
    pub zzb: Expr,
    pub zv: Expr,
    pub zbv: Expr,
}

impl TwoForm {
    pub fn eval(&self, u: &VectorField, v: &VectorField) -> Expr {
        let w = |a: usize, b: usize| u.c[a].mul_ref(&v.c[b]).sub_ref(&u.c[b].mul_ref(&v.c[a]));
        self.zzb.mul_ref(&w(0, 1)).add_ref(&self.zv.mul_ref(&w(0, 2))).add_ref(&self.zbv.mul_ref(&w(1, 2)))
    }
}

// ---------------------------------------------------------------- frame

#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub y: VectorField,
    pub x: VectorField,
    pub xb: VectorField,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coframe {
    pub j: OneForm,
    pub l: OneForm,
    pub lb: OneForm,
}

/// `X`, `Xb` adapted to the hypersurface and `Y = −[X, Xb]`.
pub fn build_frame(m: &Hypersurface) -> Result<Frame> {
    let (x, xb) = match m.defining() {
        Defining::Rigid(h) => {
            let i = Expr::i();
            let x = VectorField::new(Expr::one(), Expr::zero(), -(i.clone() * h.diff("z")));
            let xb = VectorField::new(Expr::zero(), Expr::one(), i * h.diff("zb"));
            (x, xb)
        }
        Defining::General(f) => {
            let i = Expr::i();
            let den = Expr::one() + i.clone() * f.diff("v");
            let a = (-(i * f.diff("z"))).checked_div(&den)?;
            let ab = a.sigma()?;
            (VectorField::new(Expr::one(), Expr::zero(), a), VectorField::new(Expr::zero(), Expr::one(), ab))
        }
    };
    let y = lie_bracket(&x, &xb).neg();
    if y.is_zero() {
        return Err(Error::LeviDegenerate("[X, Xb] vanishes identically".into()));
    }
    Ok(Frame { y, x, xb })
}

impl Frame {
    /// Columns `Y, X, Xb` in the basis `∂_z, ∂_zb, ∂_v`.
    pub fn matrix(&self) -> crate::matrix::Mat3 {
        let cols = [&self.y, &self.x, &self.xb];
        crate::matrix::Mat3::from_fn(|i, j| cols[j].c[i].clone())
    }

    pub fn field(&self, d: Dir) -> &VectorField {
        match d {
            Dir::X => &self.x,
            Dir::Xb => &self.xb,
            Dir::Y => &self.y,
        }
    }
}

/// Coframe `(j, l, lb)` dual to `(Y, X, Xb)`.
pub fn dual_coframe(fr: &Frame) -> Result<Coframe> {
    let inv = fr.matrix().inverse().map_err(|_| Error::NonInvertible("frame matrix is singular".into()))?;
    let row = |i: usize| OneForm { c: std::array::from_fn(|k| inv.0[i][k].clone()) };
    Ok(Coframe { j: row(0), l: row(1), lb: row(2) })
}

/// `⟨coframe_a, frame_b⟩ − δ_ab`; zero for a dual pair.
pub fn duality_residual(fr: &Frame, co: &Coframe) -> crate::matrix::Mat3 {
    let forms = [&co.j, &co.l, &co.lb];
    let fields = [&fr.y, &fr.x, &fr.xb];
    crate::matrix::Mat3::from_fn(|a, b| {
        let p = forms[a].pair(fields[b]);
        if a == b { p - Expr::one() } else { p }
    })
}

// ---------------------------------------------------------------- structure function

/// Frame directions for derivative words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    X,
    Xb,
    Y,
}

impl Dir {
    pub fn parse(s: &str) -> Option<Dir> {
        match s {
            "X" => Some(Dir::X),
            "Xb" => Some(Dir::Xb),
            "Y" => Some(Dir::Y),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dir::X => "X",
            Dir::Xb => "Xb",
            Dir::Y => "Y",
        }
    }
}

/// Which scalar a derivative word acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    P,
    Pbar,
}

/// `P` with `[X, Y] = P·Y`, `Pbar` with `[Xb, Y] = Pbar·Y`, and a cache of frame derivatives.
pub struct StructureFunction {
    frame: Frame,
    p: Expr,
    pbar: Expr,
    cache: Mutex<HashMap<(Base, Vec<Dir>), Expr>>,
}

impl Clone for StructureFunction {
    fn clone(&self) -> Self {
        StructureFunction {
            frame: self.frame.clone(),
            p: self.p.clone(),
            pbar: self.pbar.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for StructureFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureFunction").field("p", &self.p).field("pbar", &self.pbar).finish()
    }
}

fn proportionality(b: &VectorField, y: &VectorField) -> Result<Expr> {
    let k = (0..3).find(|&k| !y.c[k].is_zero()).ok_or_else(|| Error::LeviDegenerate("Y vanishes".into()))?;
    let p = b.c[k].checked_div(&y.c[k])?;
    if !b.add(&y.scale(&p).neg()).is_zero() {
        return Err(Error::Precondition("bracket with Y is not proportional to Y".into()));
    }
    Ok(p)
}

pub fn compute_p(fr: &Frame) -> Result<StructureFunction> {
    let p = proportionality(&lie_bracket(&fr.x, &fr.y), &fr.y)?;
    let pbar = proportionality(&lie_bracket(&fr.xb, &fr.y), &fr.y)?;
    Ok(StructureFunction { frame: fr.clone(), p, pbar, cache: Mutex::new(HashMap::new()) })
}

impl StructureFunction {
    pub fn p(&self) -> &Expr {
        &self.p
    }

    pub fn pbar(&self) -> &Expr {
        &self.pbar
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Applies one frame field.
    pub fn apply(&self, d: Dir, e: &Expr) -> Expr {
        self.frame.field(d).apply(e)
    }

    /// Applies a word left to right: `[X, Xb]` means `Xb(X(e))`.
    pub fn apply_word(&self, word: &[Dir], e: &Expr) -> Expr {
        word.iter().fold(e.clone(), |acc, &d| self.apply(d, &acc))
    }

    /// Frame derivative `P_{A B …}` of `P` (or `Pbar`), cached. The subscript
    /// acts as a composition: `P_{A B} = A(B(P))`, rightmost letter first.
    /// Only this ordering makes the connection normal for non-rigid data.
    pub fn derivative(&self, base: Base, word: &[Dir]) -> Expr {
        if word.is_empty() {
            return match base {
                Base::P => self.p.clone(),
                Base::Pbar => self.pbar.clone(),
            };
        }
        let key = (base, word.to_vec());
        if let Some(e) = self.cache.lock().unwrap().get(&key) {
            return e.clone();
        }
        let (first, rest) = word.split_first().unwrap();
        let inner = self.derivative(base, rest);
        let value = self.apply(*first, &inner);
        self.cache.lock().unwrap().insert(key, value.clone());
        value
    }

    pub fn frame_derivative(&self, word: &[Dir]) -> Expr {
        self.derivative(Base::P, word)
    }
}

// ---------------------------------------------------------------- structure equations

/// Residuals of `dj = P j∧l + σ(P) j∧lb + l∧lb`, `dl = 0`, `dlb = 0`,
/// evaluated on the pairs `(Y, X)`, `(Y, Xb)`, `(X, Xb)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub dj: [Expr; 3],
    pub dl: [Expr; 3],
    pub dlb: [Expr; 3],
}

impl StructureReport {
    pub fn all_zero(&self) -> bool {
        self.dj.iter().chain(&self.dl).chain(&self.dlb).all(|e| e.is_zero())
    }
}

/// `[X,[Xb,Y]] + [Xb,[Y,X]] + [Y,[X,Xb]]`.
pub fn jacobi_residual(fr: &Frame) -> VectorField {
    let b = lie_bracket;
    b(&fr.x, &b(&fr.xb, &fr.y)).add(&b(&fr.xb, &b(&fr.y, &fr.x))).add(&b(&fr.y, &b(&fr.x, &fr.xb)))
}

pub fn verify_structure_equations(fr: &Frame, co: &Coframe, sf: &StructureFunction) -> Result<StructureReport> {
    let pairs = [(&fr.y, &fr.x), (&fr.y, &fr.xb), (&fr.x, &fr.xb)];
    let sp = sf.p().sigma()?;
    let expected_dj = [sf.p().clone(), sp, Expr::one()];
    let eval_all = |w: &TwoForm| -> [Expr; 3] { std::array::from_fn(|k| w.eval(pairs[k].0, pairs[k].1)) };
    let dj = eval_all(&co.j.d());
    Ok(StructureReport {
        dj: std::array::from_fn(|k| dj[k].sub_ref(&expected_dj[k])),
        dl: eval_all(&co.l.d()),
        dlb: eval_all(&co.lb.d()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    fn rigid(s: &str) -> Hypersurface {
        Hypersurface::rigid(p(s), Convention::Re).unwrap()
    }

    #[test]
    fn quadric_frame() {
        let fr = build_frame(&rigid("z*zb")).unwrap();
        assert_eq!(fr.x, VectorField::new(p("1"), p("0"), p("-i*zb")));
        assert_eq!(fr.y, VectorField::new(p("0"), p("0"), p("-2*i")));
        let co = dual_coframe(&fr).unwrap();
        assert_eq!(co.l.c, [p("1"), p("0"), p("0")]);
        assert_eq!(co.j.c, [p("-zb/2"), p("z/2"), p("i/2")]);
        assert!(compute_p(&fr).unwrap().p().is_zero());
    }

    #[test]
    fn exponential_structure_function() {
        let fr = build_frame(&rigid("exp(z*zb) - 1")).unwrap();
        assert_eq!(*compute_p(&fr).unwrap().p(), p("zb*(2 + z*zb)/(1 + z*zb)"));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(Hypersurface::rigid(p("z^2 + zb^2"), Convention::Re), Err(Error::LeviDegenerate(_))));
        assert!(matches!(Hypersurface::rigid(p("i*z*zb^2"), Convention::Re), Err(Error::NotReal(_))));
        assert!(matches!(Hypersurface::rigid(p("z*zb + 1"), Convention::Re), Err(Error::Precondition(_))));
        assert!(matches!(Hypersurface::rigid(p("z*w"), Convention::Re), Err(Error::Invalid(_))));
    }

    #[test]
    fn general_specializes_to_rigid() {
        let h = "z*zb + z^2*zb^2";
        let a = build_frame(&rigid(h)).unwrap();
        let b = build_frame(&Hypersurface::general(p(h), Convention::Re).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
