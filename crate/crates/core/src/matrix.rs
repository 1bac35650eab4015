//! 3×3 matrices of expressions, used for frames and sl(3) values.

use std::fmt;

use crate::error::{Error, Result};
use crate::symkernel::Expr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[Expr; 3]; 3]);

impl Mat3 {
    pub fn zero() -> Mat3 {
        Mat3(std::array::from_fn(|_| std::array::from_fn(|_| Expr::zero())))
    }

    pub fn identity() -> Mat3 {
        Mat3::from_fn(|i, j| if i == j { Expr::one() } else { Expr::zero() })
    }

    /// Matrix unit with a single 1 at zero-based `(i, j)`.
    pub fn unit(i: usize, j: usize) -> Mat3 {
        let mut m = Mat3::zero();
        m.0[i][j] = Expr::one();
        m
    }

    pub fn diag(a: Expr, b: Expr, c: Expr) -> Mat3 {
        let mut m = Mat3::zero();
        m.0[0][0] = a;
        m.0[1][1] = b;
        m.0[2][2] = c;
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> Expr) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn get(&self, i: usize, j: usize) -> &Expr {
        &self.0[i][j]
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Mat3 {
        Mat3::from_fn(|i, j| f(&self.0[i][j]))
    }

    pub fn try_map(&self, f: impl Fn(&Expr) -> Result<Expr>) -> Result<Mat3> {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(&self.0[i][j])?;
            }
        }
        Ok(m)
    }

    pub fn add(&self, o: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j].add_ref(&o.0[i][j]))
    }

    pub fn sub(&self, o: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j].sub_ref(&o.0[i][j]))
    }

    pub fn neg(&self) -> Mat3 {
        self.map(|e| e.neg_ref())
    }

    pub fn scale(&self, k: &Expr) -> Mat3 {
        if k.is_zero() {
            return Mat3::zero();
        }
        self.map(|e| e.mul_ref(k))
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            let mut acc = Expr::zero();
            for k in 0..3 {
                if self.0[i][k].is_zero() || o.0[k][j].is_zero() {
                    continue;
                }
                acc = acc.add_ref(&self.0[i][k].mul_ref(&o.0[k][j]));
            }
            acc
        })
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, o: &Mat3) -> Mat3 {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Expr {
        self.0[0][0].add_ref(&self.0[1][1]).add_ref(&self.0[2][2])
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|e| e.is_zero())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..3).all(|i| (0..i).all(|j| self.0[i][j].is_zero()))
    }

    pub fn det(&self) -> Expr {
        let m = &self.0;
        let minor = |a: usize, b: usize, c: usize, d: usize| m[1][a].mul_ref(&m[2][b]).sub_ref(&m[1][c].mul_ref(&m[2][d]));
        m[0][0].mul_ref(&minor(1, 2, 2, 1)).sub_ref(&m[0][1].mul_ref(&minor(0, 2, 2, 0))).add_ref(&m[0][2].mul_ref(&minor(0, 1, 1, 0)))
    }

    /// Exact inverse by the adjugate formula.
    pub fn inverse(&self) -> Result<Mat3> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::NonInvertible("matrix determinant is identically zero".into()));
        }
        let dinv = d.inv()?;
        let m = &self.0;
        let cof = |r: usize, c: usize| -> Expr {
            let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let v = m[rows[0]][cols[0]].mul_ref(&m[rows[1]][cols[1]]).sub_ref(&m[rows[0]][cols[1]].mul_ref(&m[rows[1]][cols[0]]));
            if (r + c) % 2 == 0 { v } else { v.neg_ref() }
        };
        Ok(Mat3::from_fn(|i, j| cof(j, i).mul_ref(&dinv)))
    }

    /// Entrywise formal conjugation.
    pub fn sigma(&self) -> Result<Mat3> {
        self.try_map(|e| e.sigma())
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = row.iter().map(|e| e.to_text()).collect();
            write!(f, "{}", r.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_expr;

    #[test]
    fn inverse_roundtrip() {
        let m = Mat3::from_fn(|i, j| parse_expr(&format!("z^{} + {}*zb", i + j, (i * 3 + j) % 4 + 1)).unwrap());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat3::identity());
    }

    #[test]
    fn singular_rejected() {
        let m = Mat3::from_fn(|_, j| Expr::int(j as i64));
        assert!(m.inverse().is_err());
    }
}
