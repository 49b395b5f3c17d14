//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Reduced row echelon form of a set of row vectors.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    width: usize,
}

impl Echelon {
    pub fn new(rows: &[Vec<Scalar>], width: usize) -> Self {
        let mut m: Vec<Vec<Scalar>> = rows.to_vec();
        for r in &m {
            assert_eq!(r.len(), width, "ragged matrix");
        }
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..width {
            let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(top, p);
            let inv = Scalar::one() / &m[top][col];
            for v in m[top].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[top].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != top && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (v, p) in row.iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *v -= &f * p;
                        }
                    }
                }
            }
            pivots.push(col);
            top += 1;
            if top == m.len() {
                break;
            }
        }
        m.truncate(top);
        Echelon {
            rows: m,
            pivots,
            width,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Remainder of `v` after elimination against the pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.width);
        let mut r = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        r
    }
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    Echelon::new(rows, width).rank()
}

/// Solves `A x = b` for `A` given by rows. Returns one solution if any.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], unknowns: usize) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), b.len());
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = Echelon::new(&aug, unknowns + 1);
    if ech.pivots.contains(&unknowns) {
        return None;
    }
    let mut x = vec![Scalar::zero(); unknowns];
    for (row, &col) in ech.rows.iter().zip(&ech.pivots) {
        x[col] = row[unknowns].clone();
    }
    Some(x)
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &[Vec<Scalar>], unknowns: usize) -> Vec<Vec<Scalar>> {
    let ech = Echelon::new(a, unknowns);
    let free: Vec<usize> = (0..unknowns).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); unknowns];
            x[f] = Scalar::one();
            for (row, &col) in ech.rows.iter().zip(&ech.pivots) {
                x[col] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Determinant by elimination.
pub fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let pivot = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (v, p) in row.iter_mut().zip(&pivot) {
                *v -= &f * p;
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let aug: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            r
        })
        .collect();
    let ech = Echelon::new(&aug, 2 * n);
    if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(ech.rows.iter().take(n).map(|r| r[n..].to_vec()).collect())
}
