//! Exact linear algebra over any [`Scalar`] field: incremental row spaces in
//! reduced echelon form, ranks, nullspaces, and small solves.
//!
//! Rows are kept sparse and fully back-substituted, so inserting a vector
//! into an almost-full space touches only the few non-pivot coordinates.
//! That keeps the big evaluation-rank computations cheap even over
//! arbitrary-precision fields.

use crate::scalars::Scalar;


/// A growing subspace of `K^n`, maintained in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct RowSpace<K: Scalar> {
    ambient: usize,
    /// Sparse rows `(index, coefficient)` sorted by index; the first entry is
    /// the pivot and has coefficient 1. Rows are kept mutually reduced.
    rows: Vec<Vec<(u32, K)>>,
    /// pivot_of[j] = row index with pivot j, or usize::MAX.
    pivot_of: Vec<usize>,
}

impl<K: Scalar> RowSpace<K> {
    pub fn new(ambient: usize) -> Self {
        RowSpace { ambient, rows: Vec::new(), pivot_of: vec![usize::MAX; ambient] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduce `v` against the space in place.
    pub fn reduce(&self, v: &mut [K]) {
        assert_eq!(v.len(), self.ambient);
        for row in &self.rows {
            let pivot = row[0].0 as usize;
            if v[pivot].is_zero() {
                continue;
            }
            let coef = v[pivot].clone();
            for (j, c) in row {
                let j = *j as usize;
                let delta = coef.clone() * c.clone();
                v[j] = std::mem::replace(&mut v[j], K::zero()) - delta;
            }
        }
    }

    /// Insert `v`; returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<K>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let lead_inv = v[pivot].inv().expect("nonzero lead");
        let mut row: Vec<(u32, K)> = Vec::new();
        for (j, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                row.push((j as u32, c * lead_inv.clone()));
            }
        }
        // Back-substitute the new pivot out of the existing rows.
        for r in 0..self.rows.len() {
            let Some(k) = self.rows[r].iter().position(|(j, _)| *j as usize == pivot) else {
                continue;
            };
            let coef = self.rows[r][k].1.clone();
            let mut merged: Vec<(u32, K)> = Vec::with_capacity(self.rows[r].len() + row.len());
            let (mut a, mut b) = (self.rows[r].iter().peekable(), row.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (Some((ja, ca)), Some((jb, cb))) => {
                        if ja < jb {
                            merged.push((*ja, ca.clone()));
                            a.next();
                        } else if jb < ja {
                            merged.push((*jb, K::zero() - coef.clone() * cb.clone()));
                            b.next();
                        } else {
                            let c = ca.clone() - coef.clone() * cb.clone();
                            if !c.is_zero() {
                                merged.push((*ja, c));
                            }
                            a.next();
                            b.next();
                        }
                    }
                    (Some((ja, ca)), None) => {
                        merged.push((*ja, ca.clone()));
                        a.next();
                    }
                    (None, Some((jb, cb))) => {
                        merged.push((*jb, K::zero() - coef.clone() * cb.clone()));
                        b.next();
                    }
                    (None, None) => break,
                }
            }
            self.rows[r] = merged;
        }
        self.pivot_of[pivot] = self.rows.len();
        self.rows.push(row);
        true
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut ps: Vec<usize> = self.rows.iter().map(|r| r[0].0 as usize).collect();
        ps.sort_unstable();
        ps
    }

    /// Dense copies of the reduced rows, sorted by pivot.
    pub fn dense_rows(&self) -> Vec<Vec<K>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        order
            .into_iter()
            .map(|r| {
                let mut v = vec![K::zero(); self.ambient];
                for (j, c) in &self.rows[r] {
                    v[*j as usize] = c.clone();
                }
                v
            })
            .collect()
    }
}

/// Rank of a dense matrix given as a list of rows.
pub fn rank<K: Scalar>(rows: &[Vec<K>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut space = RowSpace::new(rows[0].len());
    for r in rows {
        space.insert(r.clone());
    }
    space.rank()
}

/// Basis of `{v : M v = 0}` for a dense matrix (rows are equations).
/// Deterministic: one basis vector per free column in increasing column
/// order, with the free coordinate set to 1.
pub fn nullspace<K: Scalar>(rows: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let mut space = RowSpace::new(ncols);
    for r in rows {
        assert_eq!(r.len(), ncols);
        space.insert(r.clone());
    }
    let reduced = space.dense_rows();
    let pivots = space.pivots();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for p in &pivots {
            v[*p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut vec = vec![K::zero(); ncols];
        vec[free] = K::one();
        for (row, &p) in reduced.iter().zip(pivots.iter()) {
            // row: x_p + sum_{j>p, non-pivot} row[j] x_j = 0.
            if !row[free].is_zero() {
                vec[p] = K::zero() - row[free].clone();
            }
        }
        basis.push(vec);
    }
    basis
}

/// Solve `M x = b` for dense `M` (rows are equations). Returns one solution
/// if consistent.
pub fn solve<K: Scalar>(rows: &[Vec<K>], b: &[K]) -> Option<Vec<K>> {
    assert_eq!(rows.len(), b.len());
    let ncols = rows.first().map_or(0, |r| r.len());
    // RREF the augmented matrix [M | b].
    let mut space = RowSpace::new(ncols + 1);
    for (r, rhs) in rows.iter().zip(b.iter()) {
        let mut aug = r.clone();
        aug.push(rhs.clone());
        space.insert(aug);
    }
    let reduced = space.dense_rows();
    let pivots = space.pivots();
    if pivots.contains(&ncols) {
        return None; // inconsistent: pivot in the augmented column
    }
    let mut x = vec![K::zero(); ncols];
    for (row, &p) in reduced.iter().zip(pivots.iter()) {
        // Free variables are all zero, so x_p = rhs.
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix; `None` when singular.
pub fn invert<K: Scalar>(m: &[Vec<K>]) -> Option<Vec<Vec<K>>> {
    let n = m.len();
    let mut space = RowSpace::new(2 * n);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n);
        let mut aug = row.clone();
        aug.extend((0..n).map(|j| if j == i { K::one() } else { K::zero() }));
        space.insert(aug);
    }
    let reduced = space.dense_rows();
    let pivots = space.pivots();
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(reduced.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a 3x3 matrix by cofactor expansion.
pub fn det3<K: Scalar>(m: &[[K; 3]; 3]) -> K {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].clone() * m[r2][c2].clone() - m[r1][c2].clone() * m[r2][c1].clone()
    };
    m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
        + m[0][2].clone() * minor(1, 2, 0, 1)
}

/// True when two row lists span the same subspace.
pub fn same_row_span<K: Scalar>(a: &[Vec<K>], b: &[Vec<K>]) -> bool {
    let ncols = match (a.first(), b.first()) {
        (None, None) => return true,
        (Some(r), _) | (None, Some(r)) => r.len(),
    };
    let mut sa = RowSpace::new(ncols);
    for r in a {
        sa.insert(r.clone());
    }
    let mut sb = RowSpace::new(ncols);
    for r in b {
        sb.insert(r.clone());
    }
    if sa.rank() != sb.rank() {
        return false;
    }
    sa.dense_rows() == sb.dense_rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot = r
                .iter()
                .zip(&ns[0])
                .fold(BigRational::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_and_invert() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&m, &[q(5), q(10)]).unwrap();
        assert_eq!(
            vec![
                m[0][0].clone() * x[0].clone() + m[0][1].clone() * x[1].clone(),
                m[1][0].clone() * x[0].clone() + m[1][1].clone() * x[1].clone()
            ],
            vec![q(5), q(10)]
        );
        let inv = invert(&m).unwrap();
        // m * inv = id
        for i in 0..2 {
            for j in 0..2 {
                let mut s = BigRational::zero();
                for k in 0..2 {
                    s += m[i][k].clone() * inv[k][j].clone();
                }
                assert_eq!(s, if i == j { q(1) } else { q(0) });
            }
        }
        assert!(invert(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
        assert!(solve(&m.clone(), &[q(0), q(0)]).is_some());
        let inconsistent = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(solve(&inconsistent, &[q(1), q(2)]).is_none());
    }

    #[test]
    fn row_span_comparison() {
        let a = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let b = vec![vec![q(1), q(1), q(2)], vec![q(1), q(-1), q(0)]];
        assert!(same_row_span(&a, &b));
        let c = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(1)]];
        assert!(!same_row_span(&a, &c));
    }

    #[test]
    fn rank_matches_over_fp() {
        let rows: Vec<Vec<Fp>> = vec![
            vec![Fp::new(7, 1), Fp::new(7, 2), Fp::new(7, 3)],
            vec![Fp::new(7, 2), Fp::new(7, 4), Fp::new(7, 6)],
            vec![Fp::new(7, 0), Fp::new(7, 1), Fp::new(7, 1)],
        ];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn det3_examples() {
        let m = [
            [q(3), q(1), q(2)],
            [q(2), q(3), q(1)],
            [q(1), q(2), q(3)],
        ];
        assert_eq!(det3(&m), q(18));
    }
}
