//! Dense exact linear algebra over the rationals: reduced row echelon
//! form, particular solutions and incremental span tracking. Sizes here are
//! small (degree slices of graded polynomial spaces), so dense Gaussian
//! elimination with exact arithmetic is the right tool.

use num_traits::Zero;

use crate::poly::Rational;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in row order.
pub fn rref(mat: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                let pivot_row = mat[r].clone();
                for (x, pj) in mat[i].iter_mut().zip(&pivot_row) {
                    let delta = pj * &f;
                    *x = &*x - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Solves `A x = b` where `A` is given by columns. Returns the particular
/// solution with every free variable set to zero (pivot columns are the
/// lexicographically earliest independent set), or `None` if inconsistent.
pub fn solve_particular(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = columns.len();
    let nrows = rhs.len();
    if ncols == 0 {
        return if rhs.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    debug_assert!(columns.iter().all(|c| c.len() == nrows));
    let mut aug: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some(x)
}

/// A growing linear span with exact membership tests.
#[derive(Debug, Clone, Default)]
pub struct Span {
    /// Rows in reduced echelon form.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span; the remainder is zero iff `v` is in it.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                for j in 0..w.len() {
                    let delta = &row[j] * &f;
                    w[j] = &w[j] - &delta;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pc].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // keep earlier rows reduced against the new one
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for j in 0..row.len() {
                    let delta = &w[j] * &f;
                    row[j] = &row[j] - &delta;
                }
            }
        }
        let at = self.pivots.iter().position(|&p| p > pc).unwrap_or(self.pivots.len());
        self.rows.insert(at, w);
        self.pivots.insert(at, pc);
        true
    }
}

/// Basis of the null space of `A` (given by columns), one vector per free
/// column, in ascending free-column order.
pub fn kernel_basis(columns: &[Vec<Rational>], nrows: usize) -> Vec<Vec<Rational>> {
    let ncols = columns.len();
    let mut mat: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let pivots = rref(&mut mat);
    let mut out = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::from_integer(1.into());
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -mat[row][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn solves_square_system() {
        let cols = vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        let rhs = vec![rat(3), rat(2)];
        let x = solve_particular(&cols, &rhs).unwrap();
        assert_eq!(x, vec![rat(1), rat(2)]);
    }

    #[test]
    fn detects_inconsistency() {
        let cols = vec![vec![rat(1), rat(2)]];
        let rhs = vec![rat(1), rat(1)];
        assert!(solve_particular(&cols, &rhs).is_none());
    }

    #[test]
    fn free_variables_are_zero() {
        // two identical columns: pivot on the first, second stays free
        let cols = vec![vec![rat(2)], vec![rat(2)]];
        let rhs = vec![rat(4)];
        let x = solve_particular(&cols, &rhs).unwrap();
        assert_eq!(x, vec![rat(2), rat(0)]);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let cols = vec![vec![rat(1)], vec![rat(1)], vec![rat(0)]];
        let k = kernel_basis(&cols, 1);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![rat(-1), rat(1), rat(0)]);
        assert_eq!(k[1], vec![rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        assert!(s.insert(&[rat(1), rat(1), rat(0)]));
        assert!(s.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!s.insert(&[rat(1), rat(2), rat(1)]));
        assert!(s.contains(&[rat(2), rat(3), rat(1)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(s.dim(), 2);
    }
}
