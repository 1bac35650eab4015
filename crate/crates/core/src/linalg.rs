//! Column-incremental elimination over any coefficient field.
//!
//! Columns are processed in the given order, so the first column that is
//! dependent on its predecessors is found directly; together with the
//! combination that expresses it, this gives the minimal kernel vector.

use crate::symkernel::Coeff;

/// Reduced columns seen so far, each with its pivot row and its combination
/// of original columns.
pub struct ColumnEliminator<C> {
    rows: usize,
    basis: Vec<(usize, Vec<C>, Vec<C>)>,
    seen: usize,
    track: bool,
}

/// Outcome of feeding one column.
#[derive(Clone, Debug, PartialEq)]
pub enum Fed<C> {
    Pivot,
    /// Kernel vector over all columns fed so far; the last entry is one.
    Dependent(Vec<C>),
}

impl<C: Coeff> ColumnEliminator<C> {
    /// `track` keeps combinations so dependencies can be reported.
    pub fn new(rows: usize, track: bool) -> Self {
        ColumnEliminator { rows, basis: Vec::new(), seen: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn columns_seen(&self) -> usize {
        self.seen
    }

    pub fn feed(&mut self, col: &[C]) -> Fed<C> {
        assert_eq!(col.len(), self.rows, "column length mismatch");
        let idx = self.seen;
        self.seen += 1;
        let mut v = col.to_vec();
        let mut comb = if self.track {
            let mut c = vec![C::zero(); idx + 1];
            c[idx] = C::one();
            c
        } else {
            Vec::new()
        };
        for (r, b, bc) in &self.basis {
            let f = v[*r].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
            if self.track {
                for (x, y) in comb.iter_mut().zip(bc) {
                    if !y.is_zero() {
                        *x = x.sub_ref(&f.mul_ref(y));
                    }
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(r) => {
                let inv = v[r].inv();
                for x in v.iter_mut() {
                    *x = x.mul_ref(&inv);
                }
                for x in comb.iter_mut() {
                    *x = x.mul_ref(&inv);
                }
                self.basis.push((r, v, comb));
                Fed::Pivot
            }
            None => {
                // A dependent column contributes nothing new; keep combinations aligned.
                if self.track {
                    Fed::Dependent(comb)
                } else {
                    Fed::Dependent(Vec::new())
                }
            }
        }
    }
}

/// Indices of pivot columns (the rank profile) of a column list.
pub fn rank_profile<C: Coeff>(rows: usize, cols: &[Vec<C>]) -> Vec<usize> {
    let mut e = ColumnEliminator::new(rows, false);
    cols.iter().enumerate().filter_map(|(i, c)| matches!(e.feed(c), Fed::Pivot).then_some(i)).collect()
}

/// First column dependent on its predecessors, with the kernel vector.
pub fn first_dependency<C: Coeff>(rows: usize, cols: &[Vec<C>]) -> Option<(usize, Vec<C>)> {
    let mut e = ColumnEliminator::new(rows, true);
    for (i, c) in cols.iter().enumerate() {
        if let Fed::Dependent(k) = e.feed(c) {
            return Some((i, k));
        }
    }
    None
}

/// Applies a column list (as a matrix) to a vector.
pub fn apply<C: Coeff>(rows: usize, cols: &[Vec<C>], x: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); rows];
    for (c, xi) in cols.iter().zip(x) {
        if xi.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(c) {
            *o = o.add_ref(&v.mul_ref(xi));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    use crate::symkernel::{Fp, Rat};

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn dependency_is_minimal() {
        let cols = vec![vec![r(1), r(0), r(1)], vec![r(0), r(1), r(1)], vec![r(2), r(3), r(5)], vec![r(0), r(0), r(1)]];
        let (c, k) = first_dependency(3, &cols).unwrap();
        assert_eq!(c, 2);
        assert_eq!(k, vec![r(-2), r(-3), r(1)]);
        assert!(apply(3, &cols[..3], &k).iter().all(|x| x.is_zero()));
        assert_eq!(rank_profile(3, &cols), vec![0, 1, 3]);
    }

    #[test]
    fn modular_rank() {
        type F = Fp<7>;
        let cols = vec![vec![F::new(1), F::new(2)], vec![F::new(3), F::new(6)]];
        assert_eq!(rank_profile(2, &cols), vec![0]);
    }
}
