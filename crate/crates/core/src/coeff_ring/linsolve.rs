//! Gauss–Jordan elimination over the rationals.

use num_traits::{One, Zero};

use super::Rational;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| !self.get(r, c).is_zero() && !x[c].is_zero())
                    .map(|c| self.get(r, c) * &x[c])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }
}

/// Result of [`solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Particular solution with all free variables set to zero, if the system
    /// is consistent.
    pub particular: Option<Vec<Rational>>,
    /// Basis of the null space of the coefficient matrix, one vector per free
    /// column in increasing column order.
    pub nullspace: Vec<Vec<Rational>>,
}

/// Solves `a · x = b` exactly.
///
/// Columns are scanned left to right and the pivot for each column is the
/// first remaining row with a nonzero entry, so the result is deterministic.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Solution {
    assert_eq!(b.len(), a.rows, "right-hand side length must match rows");
    let (rows, cols) = (a.rows, a.cols);
    // augmented matrix
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = (0..cols).map(|c| a.get(r, c).clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        if next_row == rows {
            break;
        }
        let Some(p) = (next_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, p);
        let inv = Rational::one() / &m[next_row][col];
        for v in m[next_row].iter_mut() {
            *v *= &inv;
        }
        let pivot = m[next_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != next_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }

    let consistent = m[next_row..].iter().all(|row| row[cols].is_zero());
    let particular = consistent.then(|| {
        let mut x = vec![Rational::zero(); cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = m[i][cols].clone();
        }
        x
    });

    let nullspace = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][free].clone();
            }
            v
        })
        .collect();

    Solution {
        particular,
        nullspace,
    }
}
