use std::fmt;

use super::ring::Scalar;
use super::CoeffError;

/// Dense matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::nil(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::unit());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Scalar, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        let data: Result<Vec<G>, E> = self.data.iter().map(f).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = F::nil();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_nil() || b.is_nil() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).plus(o.get(i, j)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).minus(o.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_nil())
    }

    /// Row echelon reduction of `[self | rhs]`; returns the solution `X` of
    /// `self · X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Self) -> Result<Self, CoeffError> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, rhs.rows, "shape mismatch");
        let n = self.rows;
        let m = rhs.cols;
        let mut a: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut r: Vec<F> = (0..n).map(|j| self.get(i, j).clone()).collect();
                r.extend((0..m).map(|j| rhs.get(i, j).clone()));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a[r][col].is_nil())
                .min_by_key(|&r| a[r][col].complexity())
                .ok_or(CoeffError::Singular)?;
            a.swap(col, piv);
            let inv = a[col][col].inverse().ok_or(CoeffError::Singular)?;
            let prow: Vec<F> = a[col].iter().map(|x| x.times(&inv)).collect();
            a[col] = prow;
            for r in 0..n {
                if r == col || a[r][col].is_nil() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in col..n + m {
                    if a[col][c].is_nil() {
                        continue;
                    }
                    let t = a[col][c].times(&f);
                    a[r][c] = a[r][c].minus(&t);
                }
            }
        }
        Ok(Self::from_fn(n, m, |i, j| a[i][n + j].clone()))
    }

    pub fn inverse(&self) -> Result<Self, CoeffError> {
        self.solve(&Self::identity(self.rows))
    }

    /// Rank by fraction-carrying Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<F>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let piv = (rank..self.rows)
                .filter(|&r| !a[r][col].is_nil())
                .min_by_key(|&r| a[r][col].complexity());
            let Some(piv) = piv else { continue };
            a.swap(rank, piv);
            let inv = a[rank][col].inverse().expect("nonzero pivot");
            for r in rank + 1..self.rows {
                if a[r][col].is_nil() {
                    continue;
                }
                let f = a[r][col].times(&inv);
                for c in col..self.cols {
                    if a[rank][c].is_nil() {
                        continue;
                    }
                    let t = a[rank][c].times(&f);
                    a[r][c] = a[r][c].minus(&t);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<F>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut det = F::unit();
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a[r][col].is_nil())
                .min_by_key(|&r| a[r][col].complexity());
            let Some(piv) = piv else { return F::nil() };
            if piv != col {
                a.swap(col, piv);
                det = det.negated();
            }
            det = det.times(&a[col][col]);
            let inv = a[col][col].inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_nil() {
                    continue;
                }
                let f = a[r][col].times(&inv);
                for c in col..n {
                    if a[col][c].is_nil() {
                        continue;
                    }
                    let t = a[col][c].times(&f);
                    a[r][c] = a[r][c].minus(&t);
                }
            }
        }
        det
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
