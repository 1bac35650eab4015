//! Pulled-back Cartan connection, curvature and its fundamental derivatives.
//!
//! The complement of the Borel subalgebra is spanned by `e_X = E21`,
//! `e_Y = E31`, `e_Xb = E32`; the connection satisfies `ω(X) ≡ e_X`,
//! `ω(Y) ≡ e_Y`, `ω(Xb) ≡ e_Xb` modulo upper-triangular matrices.

use crate::error::{Error, Result};
use crate::geometry::{Base, Dir, StructureFunction};
use crate::matrix::Mat3;
use crate::symkernel::{Expr, GaussRat};

use Dir::{Xb, X, Y};

fn q(n: i64, d: i64) -> Expr {
    Expr::constant(GaussRat::frac(n, d))
}

/// `s*ω = j·M_j + l·M_l + lb·M_lb`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionForm {
    pub mj: Mat3,
    pub ml: Mat3,
    pub mlb: Mat3,
}

impl ConnectionForm {
    /// `ω` evaluated on a frame field.
    pub fn on(&self, d: Dir) -> &Mat3 {
        match d {
            Dir::Y => &self.mj,
            Dir::X => &self.ml,
            Dir::Xb => &self.mlb,
        }
    }

    pub fn traces(&self) -> [Expr; 3] {
        [self.mj.trace(), self.ml.trace(), self.mlb.trace()]
    }
}

pub fn assemble_connection(sf: &StructureFunction) -> ConnectionForm {
    let d = |w: &[Dir]| sf.derivative(Base::P, w);
    let db = |w: &[Dir]| sf.derivative(Base::Pbar, w);
    let p = d(&[]);
    let pb = db(&[]);
    let p_xb = d(&[Xb]);
    let p_y = d(&[Y]);
    let p_xxb = d(&[X, Xb]);
    let p_xbxb = d(&[Xb, Xb]);
    let pb_y = db(&[Y]);

    let mut mj = Mat3::zero();
    mj.0[0][0] = p_xb.scale(&GaussRat::frac(-1, 12));
    mj.0[0][1] = (p.clone() * p_xb.clone() + q(2, 1) * p_y.clone() - p_xxb.clone()) * q(1, 6);
    mj.0[0][2] = (p.clone() * p_xbxb.clone() - p.clone() * pb.clone() * p_xb.clone() + q(11, 8) * p_xb.pow(2)
        - d(&[X, Xb, Xb])
        + pb.clone() * p_xxb.clone()
        - d(&[Y, Xb]) * q(1, 2))
        * q(1, 6);
    mj.0[1][1] = p_xb.clone() * q(1, 6);
    mj.0[1][2] = -(pb.clone() * p_xb.clone() - q(2, 1) * pb_y.clone() - p_xbxb.clone()) * q(1, 6);
    mj.0[2][0] = Expr::one();
    mj.0[2][2] = p_xb.clone() * q(-1, 12);

    let mut ml = Mat3::zero();
    ml.0[0][0] = p.clone() * q(-2, 3);
    ml.0[0][2] = (p.clone() * p_xb.clone() - q(4, 1) * p_y - p_xxb) * q(1, 12);
    ml.0[1][0] = Expr::one();
    ml.0[1][1] = p.clone() * q(1, 3);
    ml.0[1][2] = p_xb.clone() * q(1, 4);
    ml.0[2][2] = p * q(1, 3);

    let mut mlb = Mat3::zero();
    mlb.0[0][0] = pb.clone() * q(-1, 3);
    mlb.0[0][1] = p_xb.clone() * q(1, 4);
    mlb.0[0][2] = (-(pb.clone() * p_xb) - q(4, 1) * pb_y + p_xbxb) * q(1, 12);
    mlb.0[1][1] = pb.clone() * q(-1, 3);
    mlb.0[2][1] = Expr::one();
    mlb.0[2][2] = pb * q(2, 3);

    ConnectionForm { mj, ml, mlb }
}

// ---------------------------------------------------------------- sl(3) bookkeeping

/// Basis order: `e_X, e_Y, e_Xb, H1, H2, E12, E13, E23` with `H1 = E11 − E22`, `H2 = E22 − E33`.
pub const BASIS_NAMES: [&str; 8] = ["eX", "eY", "eXb", "H1", "H2", "E12", "E13", "E23"];

pub fn basis_element(k: usize) -> Mat3 {
    match k {
        0 => Mat3::unit(1, 0),
        1 => Mat3::unit(2, 0),
        2 => Mat3::unit(2, 1),
        3 => Mat3::unit(0, 0).sub(&Mat3::unit(1, 1)),
        4 => Mat3::unit(1, 1).sub(&Mat3::unit(2, 2)),
        5 => Mat3::unit(0, 1),
        6 => Mat3::unit(0, 2),
        7 => Mat3::unit(1, 2),
        _ => panic!("sl3 basis index {k} out of range"),
    }
}

/// Coordinates of a traceless matrix in the basis above.
pub fn basis_coords(m: &Mat3) -> [Expr; 8] {
    let e = |i: usize, j: usize| m.0[i][j].clone();
    [e(1, 0), e(2, 0), e(2, 1), e(0, 0), e(2, 2).neg_ref(), e(0, 1), e(0, 2), e(1, 2)]
}

/// Complement directions in basis order, identified with frame fields.
pub const COMPLEMENT: [Dir; 3] = [Dir::X, Dir::Y, Dir::Xb];

fn complement_index(d: Dir) -> usize {
    match d {
        Dir::X => 0,
        Dir::Y => 1,
        Dir::Xb => 2,
    }
}

pub fn is_borel(b: &Mat3) -> bool {
    b.is_upper_triangular() && b.trace().is_zero()
}

// ---------------------------------------------------------------- curvature

/// Stored pairs: `(X, Y)`, `(Xb, Y)`, `(X, Xb)`.
pub const PAIRS: [(Dir, Dir); 3] = [(Dir::X, Dir::Y), (Dir::Xb, Dir::Y), (Dir::X, Dir::Xb)];

/// Looks up an antisymmetric pair value; `None` for the diagonal.
fn pair_slot(u: Dir, v: Dir) -> Option<(usize, bool)> {
    PAIRS.iter().enumerate().find_map(|(k, &(a, b))| {
        if (a, b) == (u, v) {
            Some((k, false))
        } else if (b, a) == (u, v) {
            Some((k, true))
        } else {
            None
        }
    })
}

fn lookup(vals: &[Mat3; 3], u: Dir, v: Dir) -> Mat3 {
    match pair_slot(u, v) {
        None => Mat3::zero(),
        Some((k, false)) => vals[k].clone(),
        Some((k, true)) => vals[k].neg(),
    }
}

/// Curvature function on complement pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureData {
    /// Indexed like [`PAIRS`].
    pub kappa: [Mat3; 3],
}

impl CurvatureData {
    pub fn get(&self, u: Dir, v: Dir) -> Mat3 {
        lookup(&self.kappa, u, v)
    }

    pub fn i1(&self) -> &Expr {
        &self.kappa[0].0[0][1]
    }

    pub fn i2(&self) -> &Expr {
        &self.kappa[0].0[0][2]
    }

    pub fn i3(&self) -> &Expr {
        &self.kappa[1].0[1][2]
    }

    pub fn i4(&self) -> &Expr {
        &self.kappa[1].0[0][2]
    }

    pub fn invariants(&self) -> [&Expr; 4] {
        [self.i1(), self.i2(), self.i3(), self.i4()]
    }

    fn from_slots(i1: Expr, i2: Expr, i3: Expr, i4: Expr) -> CurvatureData {
        let mut kxy = Mat3::zero();
        kxy.0[0][1] = i1;
        kxy.0[0][2] = i2;
        let mut kxby = Mat3::zero();
        kxby.0[0][2] = i4;
        kxby.0[1][2] = i3;
        CurvatureData { kappa: [kxy, kxby, Mat3::zero()] }
    }

    /// Entries outside the slots of `I1..I4` vanish and `κ(X, Xb) = 0`.
    pub fn sparsity_ok(&self) -> bool {
        let only = |m: &Mat3, allowed: &[(usize, usize)]| (0..3).all(|i| (0..3).all(|j| allowed.contains(&(i, j)) || m.0[i][j].is_zero()));
        only(&self.kappa[0], &[(0, 1), (0, 2)]) && only(&self.kappa[1], &[(0, 2), (1, 2)]) && self.kappa[2].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.kappa.iter().all(|m| m.is_zero())
    }
}

/// `I1`, `I3` from their closed formulas; `I2 = Xb(I1) − Pbar·I1`, `I4 = P·I3 − X(I3)`.
pub fn curvature_closed_form(sf: &StructureFunction) -> CurvatureData {
    let d = |w: &[Dir]| sf.derivative(Base::P, w);
    let db = |w: &[Dir]| sf.derivative(Base::Pbar, w);
    let p = d(&[]);
    let pb = db(&[]);
    let p_xb = d(&[Xb]);
    let i1 = (-d(&[X, X, Xb]) + q(3, 1) * p.clone() * d(&[X, Xb]) + q(2, 1) * d(&[Y, X]) + d(&[X]) * p_xb.clone()
        - q(2, 1) * p.pow(2) * p_xb.clone()
        - q(2, 1) * p.clone() * d(&[Y]))
        * q(1, 6);
    let i3 = (d(&[Xb, Xb, Xb]) + q(2, 1) * db(&[Y, Xb]) - q(3, 1) * d(&[Xb, Xb]) * pb.clone() - db(&[Xb]) * p_xb.clone()
        + q(2, 1) * pb.pow(2) * p_xb
        - q(2, 1) * pb.clone() * db(&[Y]))
        * q(1, 6);
    let i2 = sf.apply(Xb, &i1) - pb * i1.clone();
    let i4 = p * i3.clone() - sf.apply(X, &i3);
    CurvatureData::from_slots(i1, i2, i3, i4)
}

/// Bracket of frame fields expressed through `Y`: `[X,Y] = P·Y`, `[Xb,Y] = Pbar·Y`, `[X,Xb] = −Y`.
fn frame_bracket_coeff(sf: &StructureFunction, u: Dir, v: Dir) -> Expr {
    match (u, v) {
        (Dir::X, Dir::Y) => sf.p().clone(),
        (Dir::Xb, Dir::Y) => sf.pbar().clone(),
        (Dir::X, Dir::Xb) => -Expr::one(),
        _ => unreachable!("only stored pairs are bracketed"),
    }
}

/// `κ(U,V) = U(ω(V)) − V(ω(U)) − ω([U,V]) + [ω(U), ω(V)]` on frame fields, then
/// rewritten on the complement basis through the soldering part of `ω`.
pub fn curvature_structural(conn: &ConnectionForm, sf: &StructureFunction) -> Result<CurvatureData> {
    let frame_vals: [Mat3; 3] = std::array::from_fn(|k| {
        let (u, v) = PAIRS[k];
        let wu = conn.on(u);
        let wv = conn.on(v);
        let du = wv.map(|e| sf.apply(u, e));
        let dv = wu.map(|e| sf.apply(v, e));
        du.sub(&dv).sub(&conn.mj.scale(&frame_bracket_coeff(sf, u, v))).add(&wu.commutator(wv))
    });
    // Soldering: row a holds the complement coordinates of ω(frame field a).
    let solder = Mat3::from_fn(|a, c| {
        let coords = basis_coords(conn.on(COMPLEMENT[a]));
        coords[c].clone()
    });
    if solder == Mat3::identity() {
        return Ok(CurvatureData { kappa: frame_vals });
    }
    let inv = solder.inverse().map_err(|_| Error::NonInvertible("soldering part of the connection is singular".into()))?;
    let kappa = std::array::from_fn(|k| {
        let (u, v) = PAIRS[k];
        let (cu, cv) = (complement_index(u), complement_index(v));
        let mut acc = Mat3::zero();
        for a in 0..3 {
            for b in 0..3 {
                let w = inv.0[cu][a].mul_ref(&inv.0[cv][b]);
                if w.is_zero() {
                    continue;
                }
                acc = acc.add(&lookup(&frame_vals, COMPLEMENT[a], COMPLEMENT[b]).scale(&w));
            }
        }
        acc
    });
    Ok(CurvatureData { kappa })
}

// ---------------------------------------------------------------- derived invariants

/// `T(A_1, …, A_k; u, v)` for basis directions `A_i`; slot sequences are
/// encoded base 8 with `A_1` most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedInvariant {
    order: usize,
    values: Vec<[Mat3; 3]>,
}

impl From<&CurvatureData> for DerivedInvariant {
    fn from(c: &CurvatureData) -> Self {
        DerivedInvariant { order: 0, values: vec![c.kappa.clone()] }
    }
}

fn encode(seq: &[usize]) -> usize {
    seq.iter().fold(0, |acc, &s| acc * 8 + s)
}

fn decode(mut idx: usize, order: usize) -> Vec<usize> {
    let mut seq = vec![0; order];
    for k in (0..order).rev() {
        seq[k] = idx % 8;
        idx /= 8;
    }
    seq
}

impl DerivedInvariant {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, seq: &[usize], u: Dir, v: Dir) -> Mat3 {
        assert_eq!(seq.len(), self.order);
        lookup(&self.values[encode(seq)], u, v)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &[Mat3; 3])> {
        self.values.iter().enumerate().map(move |(k, v)| (decode(k, self.order), v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|m| m.is_zero())
    }

    pub fn all_exprs(&self) -> impl Iterator<Item = &Expr> {
        self.values.iter().flatten().flat_map(|m| m.0.iter().flatten())
    }

    fn zeros(order: usize) -> Self {
        DerivedInvariant { order, values: vec![std::array::from_fn(|_| Mat3::zero()); 8usize.pow(order as u32)] }
    }
}

/// Induced action of `b ∈ 𝔟` on curvature-type values:
/// `[b, T] − Σ_i T(…, [b, A_i], …) − T(π[b, u], v) − T(u, π[b, v])`.
pub fn borel_action(b: &Mat3, t: &DerivedInvariant) -> Result<DerivedInvariant> {
    if !is_borel(b) {
        return Err(Error::NotInBorel);
    }
    Ok(action(b, t))
}

pub fn borel_action_curvature(b: &Mat3, c: &CurvatureData) -> Result<CurvatureData> {
    let r = borel_action(b, &DerivedInvariant::from(c))?;
    Ok(CurvatureData { kappa: r.values.into_iter().next().unwrap() })
}

fn action(b: &Mat3, t: &DerivedInvariant) -> DerivedInvariant {
    let ad: Vec<[Expr; 8]> = (0..8).map(|m| basis_coords(&b.commutator(&basis_element(m)))).collect();
    let mut out = DerivedInvariant::zeros(t.order);
    for (idx, vals) in t.values.iter().enumerate() {
        let seq = decode(idx, t.order);
        for (k, &(u, v)) in PAIRS.iter().enumerate() {
            let mut acc = b.commutator(&vals[k]);
            for i in 0..t.order {
                for (m, c) in ad[seq[i]].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut s2 = seq.clone();
                    s2[i] = m;
                    acc = acc.sub(&t.values[encode(&s2)][k].scale(c));
                }
            }
            for (slot, other, first) in [(u, v, true), (v, u, false)] {
                let coords = &ad[match slot {
                    Dir::X => 0,
                    Dir::Y => 1,
                    Dir::Xb => 2,
                }];
                for (w, c) in coords.iter().take(3).enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let val = if first { lookup(vals_at(t, idx), COMPLEMENT[w], other) } else { lookup(vals_at(t, idx), other, COMPLEMENT[w]) };
                    acc = acc.sub(&val.scale(c));
                }
            }
            out.values[idx][k] = acc;
        }
    }
    out
}

fn vals_at(t: &DerivedInvariant, idx: usize) -> &[Mat3; 3] {
    &t.values[idx]
}

/// `D_A T = x·X(T) + xb·Xb(T) + y·Y(T) − b'.T` with
/// `b' = A − x·ω(X) − xb·ω(Xb) − y·ω(Y) ∈ 𝔟`.
pub fn derivative_along(t: &DerivedInvariant, a: &Mat3, conn: &ConnectionForm, sf: &StructureFunction) -> Result<DerivedInvariant> {
    let coords = basis_coords(a);
    let (x, y, xb) = (&coords[0], &coords[1], &coords[2]);
    let mut bprime = a.clone();
    let mut result = DerivedInvariant::zeros(t.order);
    for (c, d) in [(x, Dir::X), (xb, Dir::Xb), (y, Dir::Y)] {
        if c.is_zero() {
            continue;
        }
        bprime = bprime.sub(&conn.on(d).scale(c));
        for (idx, vals) in t.values.iter().enumerate() {
            for k in 0..3 {
                let dv = vals[k].map(|e| sf.apply(d, e)).scale(c);
                result.values[idx][k] = result.values[idx][k].add(&dv);
            }
        }
    }
    if !is_borel(&bprime) {
        return Err(Error::Precondition("connection is not soldered to the complement basis".into()));
    }
    let act = action(&bprime, t);
    for (r, s) in result.values.iter_mut().zip(act.values) {
        for k in 0..3 {
            r[k] = r[k].sub(&s[k]);
        }
    }
    Ok(result)
}

/// Full fundamental derivative: the new direction is appended as the last slot.
pub fn fundamental_derivative(t: &DerivedInvariant, conn: &ConnectionForm, sf: &StructureFunction) -> Result<DerivedInvariant> {
    let parts: Vec<DerivedInvariant> = (0..8).map(|m| derivative_along(t, &basis_element(m), conn, sf)).collect::<Result<_>>()?;
    let mut out = DerivedInvariant::zeros(t.order + 1);
    for idx in 0..t.values.len() {
        for (m, part) in parts.iter().enumerate() {
            out.values[idx * 8 + m] = part.values[idx].clone();
        }
    }
    Ok(out)
}

/// Derived invariants of orders `0..=depth`.
pub fn derived_invariants(curv: &CurvatureData, conn: &ConnectionForm, sf: &StructureFunction, depth: usize) -> Result<Vec<DerivedInvariant>> {
    let mut out = vec![DerivedInvariant::from(curv)];
    for _ in 0..depth {
        let next = fundamental_derivative(out.last().unwrap(), conn, sf)?;
        out.push(next);
    }
    Ok(out)
}

// ---------------------------------------------------------------- gauge

/// `M'_a = φ⁻¹ M_a φ + φ⁻¹ F_a(φ)` for the frame field `F_a` dual to each coframe component.
pub fn gauge_transform(conn: &ConnectionForm, phi: &Mat3, sf: &StructureFunction) -> Result<ConnectionForm> {
    if !phi.is_upper_triangular() {
        return Err(Error::NotInBorel);
    }
    let inv = phi.inverse().map_err(|_| Error::NonInvertible("gauge matrix is singular".into()))?;
    let one = |d: Dir| -> Mat3 {
        let adj = inv.mul(conn.on(d)).mul(phi);
        let dphi = phi.map(|e| sf.apply(d, e));
        adj.add(&inv.mul(&dphi))
    };
    Ok(ConnectionForm { mj: one(Dir::Y), ml: one(Dir::X), mlb: one(Dir::Xb) })
}

/// Curvature expected after a constant diagonal gauge `φ = diag(φ_1, φ_2, φ_3)`:
/// entry `(i, j)` scales by `φ_j/φ_i` and a slot `E_rc` by `φ_r/φ_c`.
pub fn diagonal_gauge_rescaling(curv: &CurvatureData, phi: [&Expr; 3]) -> Result<CurvatureData> {
    let slot = |d: Dir| -> Result<Expr> {
        let (r, c) = match d {
            Dir::X => (1, 0),
            Dir::Y => (2, 0),
            Dir::Xb => (2, 1),
        };
        phi[r].checked_div(phi[c])
    };
    let mut kappa = curv.kappa.clone();
    for (k, &(u, v)) in PAIRS.iter().enumerate() {
        let w = slot(u)?.mul_ref(&slot(v)?);
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let e = &curv.kappa[k].0[i][j];
                if !e.is_zero() {
                    m.0[i][j] = e.mul_ref(&w).mul_ref(&phi[j].checked_div(phi[i])?);
                }
            }
        }
        kappa[k] = m;
    }
    Ok(CurvatureData { kappa })
}

// ---------------------------------------------------------------- real form

#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Whether the relation is expected to hold on real inputs.
    pub expected: bool,
}

/// Real-structure relations. `I3 = −σ(I1)` and `I4 = σ(I2)` are the identities for the
/// connection above; the unsigned `I3 = σ(I1)` is reported as an expected failure.
pub fn real_form_check(sf: &StructureFunction, curv: &CurvatureData) -> Result<Vec<RelationCheck>> {
    let sp = sf.p().sigma()?;
    let p_xb = sf.derivative(Base::P, &[Xb]);
    let sp_x = sf.apply(X, &sp);
    let s1 = curv.i1().sigma()?;
    let s2 = curv.i2().sigma()?;
    Ok(vec![
        RelationCheck { name: "Pbar = sigma(P)", holds: *sf.pbar() == sp, expected: true },
        RelationCheck { name: "P_Xb = sigma(P)_X", holds: p_xb == sp_x, expected: true },
        RelationCheck { name: "I3 = -sigma(I1)", holds: *curv.i3() == -s1.clone(), expected: true },
        RelationCheck { name: "I4 = sigma(I2)", holds: *curv.i4() == s2, expected: true },
        RelationCheck { name: "I3 = sigma(I1)", holds: *curv.i3() == s1, expected: curv.i1().is_zero() },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_frame, compute_p, Convention, Hypersurface};
    use crate::parse_expr;

    fn sf(h: &str) -> StructureFunction {
        let m = Hypersurface::rigid(parse_expr(h).unwrap(), Convention::Re).unwrap();
        compute_p(&build_frame(&m).unwrap()).unwrap()
    }

    #[test]
    fn quadric_connection_is_constant() {
        let s = sf("z*zb");
        let c = assemble_connection(&s);
        assert_eq!(c.mj, Mat3::unit(2, 0));
        assert_eq!(c.ml, Mat3::unit(1, 0));
        assert_eq!(c.mlb, Mat3::unit(2, 1));
        assert!(curvature_structural(&c, &s).unwrap().is_zero());
    }

    #[test]
    fn traces_vanish() {
        let s = sf("z*zb + z^2*zb^2");
        let c = assemble_connection(&s);
        assert!(c.traces().iter().all(|t| t.is_zero()));
    }

    #[test]
    fn borel_membership() {
        let k = CurvatureData { kappa: std::array::from_fn(|_| Mat3::zero()) };
        assert!(matches!(borel_action_curvature(&Mat3::unit(1, 0), &k), Err(Error::NotInBorel)));
        assert!(borel_action_curvature(&Mat3::unit(0, 2), &k).unwrap().is_zero());
    }

    #[test]
    fn diagonal_action_weights() {
        // b = diag(a, d, -a-d) on a single slot κ(e_X, e_Y) = E12.
        let (a, d) = (Expr::int(2), Expr::int(5));
        let b = Mat3::diag(a.clone(), d.clone(), -(a.clone() + d.clone()));
        let mut k = CurvatureData { kappa: std::array::from_fn(|_| Mat3::zero()) };
        k.kappa[0] = Mat3::unit(0, 1);
        let out = borel_action_curvature(&b, &k).unwrap();
        // [b, E12] = (a − d)E12; e_X = E21 has weight d − a, e_Y = E31 has weight −2a − d.
        let w = (a.clone() - d.clone()) - (d.clone() - a.clone()) - (-(Expr::int(2) * a) - d);
        assert_eq!(out.kappa[0], Mat3::unit(0, 1).scale(&w));
        assert!(out.kappa[1].is_zero() && out.kappa[2].is_zero());
    }

    #[test]
    fn second_slot_is_not_the_plain_x_derivative() {
        // κ(X, Y)₁₃ carries the weight of an Xb-derivative of κ(X, Y)₁₂.
        let s = sf("z*zb + z^2*zb^2");
        let structural = curvature_structural(&assemble_connection(&s), &s).unwrap();
        let i1 = structural.i1();
        assert_eq!(*structural.i2(), s.apply(Xb, i1) - s.pbar().clone() * i1.clone());
        assert_ne!(*structural.i2(), s.apply(X, i1));
    }
}
