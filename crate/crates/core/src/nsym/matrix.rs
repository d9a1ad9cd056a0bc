use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(crate) type Matrix = Vec<Vec<BigInt>>;

/// Square matrix stored by rows as (column, nonzero value) pairs.
#[derive(Clone, Debug)]
pub(crate) struct Sparse {
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl Sparse {
    pub(crate) fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> BigInt) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).filter_map(|j| Some((j, entry(i, j))).filter(|(_, x)| !x.is_zero())).collect())
            .collect();
        Sparse { rows }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|row| row.iter().filter(|(j, _)| !v[*j].is_zero()).map(|(j, a)| a * &v[*j]).sum())
            .collect()
    }

    pub(crate) fn to_dense(&self) -> Matrix {
        let n = self.dim();
        self.rows
            .iter()
            .map(|row| {
                let mut r = vec![BigInt::zero(); n];
                for (j, a) in row {
                    r[*j] = a.clone();
                }
                r
            })
            .collect()
    }

    /// An order in which `x_i = b_i - Σ_{j≠i} a_ij x_j` can be evaluated,
    /// if the diagonal is all ones and the off-diagonal support is acyclic.
    fn substitution_order(&self) -> Option<Vec<usize>> {
        let n = self.dim();
        let mut pending = vec![0usize; n];
        let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, row) in self.rows.iter().enumerate() {
            let mut unit = false;
            for (j, a) in row {
                if *j == i {
                    unit = a.is_one();
                } else {
                    pending[i] += 1;
                    dependents[*j].push(i);
                }
            }
            if !unit {
                return None;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(j) = ready.pop() {
            order.push(j);
            for &i in &dependents[j] {
                pending[i] -= 1;
                if pending[i] == 0 {
                    ready.push(i);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// Exact solver for `A x = b` with `A` invertible over the integers.
#[derive(Clone, Debug)]
pub(crate) enum Solver {
    Substitution { matrix: Sparse, order: Vec<usize> },
    Inverse(Matrix),
}

impl Solver {
    pub(crate) fn new(matrix: Sparse) -> Result<Self> {
        match matrix.substitution_order() {
            Some(order) => Ok(Solver::Substitution { matrix, order }),
            None => Ok(Solver::Inverse(invert_integral(&matrix.to_dense())?)),
        }
    }

    pub(crate) fn solve(&self, b: &[BigInt]) -> Vec<BigInt> {
        match self {
            Solver::Inverse(inv) => apply(inv, b),
            Solver::Substitution { matrix, order } => {
                let mut x = vec![BigInt::zero(); b.len()];
                for &i in order {
                    let mut v = b[i].clone();
                    for (j, a) in &matrix.rows[i] {
                        if *j != i && !x[*j].is_zero() {
                            v -= a * &x[*j];
                        }
                    }
                    x[i] = v;
                }
                x
            }
        }
    }

    pub(crate) fn is_substitution(&self) -> bool {
        matches!(self, Solver::Substitution { .. })
    }
}

/// Inverts a square integer matrix over the rationals and checks that the
/// inverse is integral.
pub(crate) fn invert_integral(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal(format!("singular matrix (column {col})")))?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        if !p.is_one() {
            for x in a[col].iter_mut() {
                *x /= &p;
            }
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Internal(format!("inverse has non-integral entry {x}")))
                    }
                })
                .collect()
        })
        .collect()
}

pub(crate) fn apply(m: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_identity(m: &Matrix) -> bool {
        m.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }
    
    fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        row.iter()
                            .zip(b)
                            .filter(|(x, _)| !x.is_zero())
                            .map(|(x, brow)| x * &brow[j])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn inverts_unimodular() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = invert_integral(&m).unwrap();
        assert_eq!(inv, mat(&[&[1, -1], &[-1, 2]]));
        assert!(is_identity(&multiply(&m, &inv)));
    }

    #[test]
    fn solvers_agree() {
        let m = mat(&[&[1, 0, 2], &[3, 1, -1], &[0, 0, 1]]);
        let sparse = Sparse::from_fn(3, |i, j| m[i][j].clone());
        let sub = Solver::new(sparse.clone()).unwrap();
        assert!(sub.is_substitution());
        let dense = Solver::Inverse(invert_integral(&m).unwrap());
        let b: Vec<BigInt> = [4, -2, 7].iter().map(|&x| BigInt::from(x)).collect();
        let x = sub.solve(&b);
        assert_eq!(x, dense.solve(&b));
        assert_eq!(sparse.apply(&x), b);
        let cyclic = mat(&[&[1, 1], &[1, 2]]);
        assert!(!Solver::new(Sparse::from_fn(2, |i, j| cyclic[i][j].clone())).unwrap().is_substitution());
    }

    #[test]
    fn rejects_fractional_and_singular() {
        assert!(invert_integral(&mat(&[&[2, 0], &[0, 1]])).is_err());
        assert!(invert_integral(&mat(&[&[1, 1], &[1, 1]])).is_err());
    }
}
