//! Small dense matrices and the exact linear algebra used by the pipeline:
//! fraction-free determinants over `Q[t]` and Gaussian nullspace/rank over
//! `Q[x]/(f)` with dynamic splitting.

use crate::numfield::{run_with_splitting, BranchOutcome, NFElement, NumberField, SplitEvent};
use crate::poly::{Poly, Rat};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows_vec: Vec<Vec<T>>) -> Self {
        let rows = rows_vec.len();
        let cols = rows_vec.first().map_or(0, Vec::len);
        assert!(
            rows_vec.iter().all(|r| r.len() == cols),
            "ragged matrix rows"
        );
        Mat {
            rows,
            cols,
            data: rows_vec.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Mat<T>
    where
        T: Clone,
    {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + PartialEq,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul_mat(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * rhs.at(k, j));
            }
            acc
        })
    }
}

/// Fraction-free (Bareiss) determinant over an integral domain with exact
/// division. The empty matrix has determinant one.
pub fn det_bareiss(m: &Mat<Poly>) -> Poly {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Poly::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(a.at(i, j) * a.at(k, k)) - &(a.at(i, k) * a.at(k, j));
                *a.at_mut(i, j) = num.div_exact(&prev);
            }
            *a.at_mut(i, k) = Poly::zero();
        }
        prev = a.at(k, k).clone();
    }
    let det = a.at(n - 1, n - 1).clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Determinant of a rational matrix (used for evaluation cross-checks).
pub fn det_rat(m: &Mat<Rat>) -> Rat {
    det_bareiss(&m.map(|c| Poly::constant(c.clone())))
        .coeffs()
        .first()
        .cloned()
        .unwrap_or_else(Rat::zero)
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_rat(m: &Mat<Rat>) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(piv) = (rank..a.rows).find(|&i| !a.at(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(rank, piv);
        let inv = a.at(rank, col).recip();
        for j in col..a.cols {
            let v = a.at(rank, j) * &inv;
            *a.at_mut(rank, j) = v;
        }
        for i in 0..a.rows {
            if i == rank || a.at(i, col).is_zero() {
                continue;
            }
            let f = a.at(i, col).clone();
            for j in col..a.cols {
                let v = a.at(i, j) - &(&f * a.at(rank, j));
                *a.at_mut(i, j) = v;
            }
        }
        rank += 1;
        if rank == a.rows {
            break;
        }
    }
    rank
}

fn check_entries(field: &NumberField, m: &Mat<NFElement>) {
    for e in &m.data {
        assert!(e.field() == field, "mixed moduli in matrix");
    }
}

fn reduce_mat(m: &Mat<NFElement>, field: &NumberField) -> Mat<NFElement> {
    m.map(|e| e.reduce_into(field))
}

/// Reduced row echelon form. Pivots take the lowest-index nonzero entry of
/// each column; a zero-divisor pivot aborts with the split it exposed.
fn try_rref(m: &Mat<NFElement>) -> Result<(Mat<NFElement>, Vec<usize>), SplitEvent> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        let Some(piv) = (r..a.rows).find(|&i| !a.at(i, col).is_zero()) else {
            continue;
        };
        let inv = a.at(piv, col).invert()?;
        a.swap_rows(r, piv);
        for j in col..a.cols {
            let v = a.at(r, j) * &inv;
            *a.at_mut(r, j) = v;
        }
        for i in 0..a.rows {
            if i == r || a.at(i, col).is_zero() {
                continue;
            }
            let f = a.at(i, col).clone();
            for j in col..a.cols {
                let v = a.at(i, j) - &(&f * a.at(r, j));
                *a.at_mut(i, j) = v;
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.rows {
            break;
        }
    }
    Ok((a, pivots))
}

/// Nullspace basis within one branch field; errors carry the split exposed.
pub fn try_nullspace(
    field: &NumberField,
    m: &Mat<NFElement>,
) -> Result<Vec<Vec<NFElement>>, SplitEvent> {
    let (rref, pivots) = try_rref(m)?;
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rref.at(row, free);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Rank within one branch field; errors carry the split exposed.
pub fn try_rank(m: &Mat<NFElement>) -> Result<usize, SplitEvent> {
    if m.rows == 0 || m.cols == 0 {
        return Ok(0);
    }
    Ok(try_rref(m)?.1.len())
}

/// Exact nullspace of `m` over `Q[x]/(modulus of field)`, re-run per branch
/// whenever a pivot inversion splits the modulus. Entries must all live in
/// `field`.
pub fn nf_nullspace(
    field: &NumberField,
    m: &Mat<NFElement>,
) -> Vec<BranchOutcome<Vec<Vec<NFElement>>>> {
    check_entries(field, m);
    run_with_splitting::<_, std::convert::Infallible>(field, |f| {
        let local = if f == field {
            m.clone()
        } else {
            reduce_mat(m, f)
        };
        Ok(try_nullspace(f, &local))
    })
    .unwrap()
}

/// Per-branch rank, same splitting discipline as [`nf_nullspace`].
pub fn nf_rank(field: &NumberField, m: &Mat<NFElement>) -> Vec<BranchOutcome<usize>> {
    check_entries(field, m);
    run_with_splitting::<_, std::convert::Infallible>(field, |f| {
        let local = if f == field {
            m.clone()
        } else {
            reduce_mat(m, f)
        };
        Ok(try_rank(&local))
    })
    .unwrap()
}

/// Matrix-vector product over a number field.
pub fn nf_mat_vec(m: &Mat<NFElement>, v: &[NFElement], field: &NumberField) -> Vec<NFElement> {
    assert_eq!(m.cols, v.len());
    (0..m.rows)
        .map(|i| {
            let mut acc = field.zero();
            for (j, vj) in v.iter().enumerate() {
                acc = &acc + &(m.at(i, j) * vj);
            }
            acc
        })
        .collect()
}

impl Mat<Poly> {
    /// Evaluate every entry at a rational point.
    pub fn eval(&self, x: &Rat) -> Mat<Rat> {
        self.map(|p| p.eval(x))
    }
}

impl<T> Neg for &Mat<T>
where
    for<'a> &'a T: Neg<Output = T>,
{
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        self.map(|e| -e)
    }
}

impl<T> Sub for &Mat<T>
where
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }
}
