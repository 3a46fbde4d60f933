//! Exact linear algebra over the rationals.
//!
//! Sparse row echelon forms are used for the larger systems (graded pieces
//! of Koszul complexes, the functional-equation oracle); small dense helpers
//! serve the weight solver, arrangements and Lie algebra cohomology.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Sparse row: `(column, value)` pairs with strictly increasing columns and
/// no zero values.
pub type SparseRow = Vec<(usize, Rational)>;

pub fn sparse_from_dense(row: &[Rational]) -> SparseRow {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

/// `a + c*b`.
fn axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row echelon form; pivot rows are normalized to a
/// leading 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.pivots.iter()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut row = row;
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if let Some(p) = self.pivots.get(&col) {
                let c = -row[k].1.clone();
                row = axpy(&row, &c, p);
            } else {
                k += 1;
            }
        }
        row
    }

    /// Adds a row; returns its pivot column when it is independent.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let mut row = row;
        loop {
            let (col, lead) = match row.first() {
                None => return None,
                Some((c, v)) => (*c, v.clone()),
            };
            match self.pivots.get(&col) {
                Some(p) => row = axpy(&row, &-lead, p),
                None => {
                    let inv = lead.recip();
                    for e in row.iter_mut() {
                        e.1 *= &inv;
                    }
                    self.pivots.insert(col, row);
                    return Some(col);
                }
            }
        }
    }

    /// Reduced row echelon form (every pivot column cleared in other rows).
    pub fn into_rref(self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (col, row) in self.pivots.into_iter().rev() {
            let mut row = row;
            let mut k = 1;
            while k < row.len() {
                let c = row[k].0;
                if let Some(p) = done.get(&c) {
                    let coef = -row[k].1.clone();
                    row = axpy(&row, &coef, p);
                } else {
                    k += 1;
                }
            }
            done.insert(col, row);
        }
        done
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn rank_dense(rows: &[Vec<Rational>]) -> usize {
    rank(rows.iter().map(|r| sparse_from_dense(r)))
}

/// Basis of `{v : A v = 0}` for the dense `rows x ncols` matrix `A`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(sparse_from_dense(r));
    }
    let rref = e.into_rref();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !rref.contains_key(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (&pc, row) in &rref {
            if let Some((_, val)) = row.iter().find(|(c, _)| *c == free) {
                v[pc] = -val.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b`, if any.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut e = Echelon::new();
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        aug.push(b.clone());
        e.insert(sparse_from_dense(&aug));
    }
    if e.pivot_columns().any(|c| c == ncols) {
        return None;
    }
    let rref = e.into_rref();
    let mut x = vec![Rational::zero(); ncols];
    for (&pc, row) in &rref {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == ncols) {
            x[pc] = v.clone();
        }
    }
    Some(x)
}

/// Solution of a sparse system whose rows are `[A | b]` (the right-hand side
/// sits in column `ncols`); free variables are set to zero.
pub fn solve_sparse(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Option<Vec<Rational>> {
    let mut e = Echelon::new();
    for r in rows {
        if e.insert(r) == Some(ncols) {
            return None;
        }
    }
    let rref = e.into_rref();
    let mut x = vec![Rational::zero(); ncols];
    for (&pc, row) in &rref {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == ncols) {
            x[pc] = v.clone();
        }
    }
    Some(x)
}

/// Basis of the kernel of a sparse `rows x ncols` matrix.
pub fn nullspace_sparse(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let rref = e.into_rref();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !rref.contains_key(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (&pc, row) in &rref {
            if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v[pc] = -row[k].1.clone();
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_dense(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[rat(1), rat(3)]).is_none());
    }
}
