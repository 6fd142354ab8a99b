//! Exact determinants over integral domains with exact division.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::AlphaPoly;
use crate::kernel::{Field, XPoly, XRat};

/// Commutative ring elements the determinant engines can work with.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync
where
    for<'a> &'a Self: Add<&'a Self, Output = Self>
        + Sub<&'a Self, Output = Self>
        + Mul<&'a Self, Output = Self>
        + Neg<Output = Self>,
{
    fn zero(field: Field) -> Self;
    fn one(field: Field) -> Self;
    fn is_zero(&self) -> bool;
    /// `self / d` when `d` divides `self` exactly.
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

impl Ring for XPoly {
    fn zero(field: Field) -> Self {
        XPoly::zero(field)
    }
    fn one(field: Field) -> Self {
        XPoly::one(field)
    }
    fn is_zero(&self) -> bool {
        XPoly::is_zero(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        XPoly::exact_div(self, d)
    }
}

impl Ring for XRat {
    fn zero(field: Field) -> Self {
        XRat::zero(field)
    }
    fn one(field: Field) -> Self {
        XRat::one(field)
    }
    fn is_zero(&self) -> bool {
        XRat::is_zero(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div(d)
    }
}

impl Ring for AlphaPoly {
    fn zero(field: Field) -> Self {
        AlphaPoly::zero(field)
    }
    fn one(field: Field) -> Self {
        AlphaPoly::one(field)
    }
    fn is_zero(&self) -> bool {
        AlphaPoly::is_zero(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        AlphaPoly::exact_div(self, d)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Clone> Matrix<R> {
    pub fn from_rows(field: Field, rows: Vec<Vec<R>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        Matrix {
            field,
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix with `rows` rows and `cols` columns and no entries required when either is zero.
    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn without_column(&self, c: usize) -> Matrix<R> {
        Matrix::from_fn(self.field, self.rows, self.cols - 1, |i, j| {
            self.get(i, if j < c { j } else { j + 1 }).clone()
        })
    }

    pub fn without_row(&self, r: usize) -> Matrix<R> {
        Matrix::from_fn(self.field, self.rows - 1, self.cols, |i, j| {
            self.get(if i < r { i } else { i + 1 }, j).clone()
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Laplace expansion along the first row. Exponential; used for small sizes and as a test oracle.
pub fn det_cofactor<R: Ring>(m: &Matrix<R>) -> R
where
    for<'a> &'a R:
        Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    match m.rows() {
        0 => R::one(m.field()),
        1 => m.get(0, 0).clone(),
        2 => &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0)),
        n => {
            let top = m.without_row(0);
            let mut acc = R::zero(m.field());
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let term = a * &det_cofactor(&top.without_column(j));
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting on nonzero entries.
pub fn det_bareiss<R: Ring>(m: &Matrix<R>) -> R
where
    for<'a> &'a R:
        Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return R::one(m.field());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = R::one(m.field());
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return R::zero(m.field()),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let lead = a.get(i, k).clone();
            for j in k + 1..n {
                let num = &(&pivot * a.get(i, j)) - &(&lead * a.get(k, j));
                let v = num
                    .exact_div(&prev)
                    .expect("Bareiss intermediate is divisible by the previous pivot");
                a.data[i * n + j] = v;
            }
            a.data[i * n + k] = R::zero(m.field());
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Exact determinant: cofactor expansion up to dimension 4, Bareiss beyond.
pub fn det_fraction_free<R: Ring>(m: &Matrix<R>) -> R
where
    for<'a> &'a R:
        Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    if m.rows() <= 4 {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

/// For an `(n-1) x n` matrix, entry `c` (0-based) is `(-1)^c * det(M without column c)`.
///
/// The result `t` satisfies `M t = 0`.
pub fn signed_maximal_minors<R: Ring>(m: &Matrix<R>) -> Vec<R>
where
    for<'a> &'a R:
        Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    assert_eq!(
        m.rows() + 1,
        m.cols(),
        "need exactly one more column than rows"
    );
    let minor = |c: usize| {
        let d = det_fraction_free(&m.without_column(c));
        if c.is_multiple_of(2) {
            d
        } else {
            -&d
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..m.cols()).into_par_iter().map(minor).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..m.cols()).map(minor).collect()
    }
}

/// `M t` as a column vector.
pub fn mat_vec<R: Ring>(m: &Matrix<R>, t: &[R]) -> Vec<R>
where
    for<'a> &'a R:
        Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    assert_eq!(m.cols(), t.len());
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(t)
                .fold(R::zero(m.field()), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}
