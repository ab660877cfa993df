//! Dense matrices at desk scale.
//!
//! Everything here is row-major `Vec` storage with straightforward loops.
//! Problem sizes are a few hundred at most, so no sparsity or blocking.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense square matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<F: Real> {
    dim: usize,
    data: Vec<F>,
}

impl<F: Real> SquareMatrix<F> {
    /// Build from row-major entries, validating length and finiteness.
    pub fn new(dim: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![F::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Constant matrix with every entry equal to `v`.
    pub fn filled(dim: usize, v: F) -> Self {
        Self {
            dim,
            data: vec![v; dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Build from nested rows (mostly for tests and file parsing).
    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let arow = self.row(i);
            for (k, &aik) in arow.iter().enumerate() {
                if aik == F::zero() {
                    continue;
                }
                let brow = rhs.row(k);
                let orow = out.row_mut(i);
                for j in 0..n {
                    orow[j] += aik * brow[j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, s: F) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        debug_assert_eq!(self.dim, rhs.dim);
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }

    pub fn scale_assign(&mut self, s: F) {
        for a in self.data.iter_mut() {
            *a *= s;
        }
    }

    pub fn trace(&self) -> F {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius inner product `⟨A,B⟩ = Σᵢⱼ AᵢⱼBᵢⱼ` (equivalently `trace(AᵀB)`).
    pub fn frobenius_inner(&self, rhs: &Self) -> Result<F> {
        self.check_dim(rhs)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a * b)
            .sum())
    }

    pub fn max_abs(&self) -> F {
        self.data
            .iter()
            .fold(F::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> F {
        debug_assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(F::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    pub fn row_sums(&self) -> Vec<F> {
        (0..self.dim)
            .map(|i| self.row(i).iter().copied().sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<F> {
        let mut sums = vec![F::zero(); self.dim];
        for i in 0..self.dim {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += self[(i, j)];
            }
        }
        sums
    }

    /// Nonnegative entries (within `tol`) with all row and column sums within
    /// `tol` of 1.
    pub fn is_doubly_stochastic(&self, tol: F) -> bool {
        if self.data.iter().any(|&v| v < -tol) {
            return false;
        }
        let one = F::one();
        self.row_sums().iter().all(|&s| (s - one).abs() <= tol)
            && self.col_sums().iter().all(|&s| (s - one).abs() <= tol)
    }

    /// `‖A − Aᵀ‖_max`.
    pub fn asymmetry(&self) -> F {
        let mut worst = F::zero();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// `A^(2^log2k)` by repeated squaring.
    pub fn power_of_two_pow(&self, log2k: u32) -> Result<Self> {
        let mut acc = self.clone();
        for _ in 0..log2k {
            acc = acc.matmul(&acc)?;
        }
        Ok(acc)
    }

    /// Upper-triangular Cholesky factor `R` with `RᵀR = A`.
    ///
    /// Reads only the upper triangle. Fails on a non-positive pivot, which
    /// signals a (numerically) rank-deficient input.
    pub fn cholesky_upper(&self) -> Result<Self> {
        let n = self.dim;
        let mut r = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = self[(i, j)];
                for k in 0..i {
                    s -= r[(k, i)] * r[(k, j)];
                }
                if i == j {
                    if s <= F::zero() || !s.is_finite() {
                        return Err(Error::RankDeficient(format!(
                            "Cholesky pivot {} is not positive",
                            i
                        )));
                    }
                    r[(i, i)] = s.sqrt();
                } else {
                    r[(i, j)] = s / r[(i, i)];
                }
            }
        }
        Ok(r)
    }

    /// Solve `X · R = B` for `X`, with `R = self` upper triangular.
    pub fn solve_right_upper_triangular(&self, b: &Self) -> Result<Self> {
        self.check_dim(b)?;
        let n = self.dim;
        let mut x = Self::zeros(n);
        for r in 0..n {
            for j in 0..n {
                let mut s = b[(r, j)];
                for k in 0..j {
                    s -= x[(r, k)] * self[(k, j)];
                }
                x[(r, j)] = s / self[(j, j)];
            }
        }
        Ok(x)
    }

    /// LU decomposition with partial pivoting.
    pub fn lu(&self) -> Lu<F> {
        let n = self.dim;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = F::one();
        let mut rank = 0usize;
        let mut pivots = Vec::with_capacity(n);
        for col in 0..n {
            // pick the largest remaining pivot in this column
            let mut best = rank;
            let mut best_val = a[(rank, col)].abs();
            for r in (rank + 1)..n {
                let v = a[(r, col)].abs();
                if v > best_val {
                    best = r;
                    best_val = v;
                }
            }
            if rank >= n || best_val == F::zero() {
                pivots.push(F::zero());
                continue;
            }
            if best != rank {
                for j in 0..n {
                    let tmp = a[(rank, j)];
                    a[(rank, j)] = a[(best, j)];
                    a[(best, j)] = tmp;
                }
                perm.swap(rank, best);
                sign = -sign;
            }
            let piv = a[(rank, col)];
            pivots.push(piv);
            for r in (rank + 1)..n {
                let factor = a[(r, col)] / piv;
                a[(r, col)] = factor;
                for j in (col + 1)..n {
                    let sub = factor * a[(rank, j)];
                    a[(r, j)] -= sub;
                }
            }
            rank += 1;
            if rank == n {
                break;
            }
        }
        Lu {
            factors: a,
            perm,
            sign,
            pivots,
        }
    }

    /// Numerical rank: the number of pivots with magnitude above `tol`.
    pub fn rank(&self, tol: F) -> usize {
        self.lu().pivots.iter().filter(|p| p.abs() > tol).count()
    }

    /// Determinant via LU.
    pub fn det(&self) -> F {
        let lu = self.lu();
        if lu.pivots.len() < self.dim || lu.pivots.iter().any(|p| *p == F::zero()) {
            return F::zero();
        }
        lu.pivots.iter().fold(lu.sign, |acc, &p| acc * p)
    }
}

impl<F: Real> std::ops::Index<(usize, usize)> for SquareMatrix<F> {
    type Output = F;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.dim + j]
    }
}

impl<F: Real> std::ops::IndexMut<(usize, usize)> for SquareMatrix<F> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.dim + j]
    }
}

/// LU factorization result (internal detail of rank/det/solve).
pub struct Lu<F: Real> {
    factors: SquareMatrix<F>,
    perm: Vec<usize>,
    sign: F,
    pivots: Vec<F>,
}

impl<F: Real> Lu<F> {
    /// Solve `A x = b` for a single right-hand side. Fails when a pivot is zero.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        let n = self.factors.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        if self.pivots.len() < n || self.pivots.iter().any(|p| *p == F::zero()) {
            return Err(Error::RankDeficient("singular system in LU solve".into()));
        }
        let mut y: Vec<F> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for k in 0..i {
                let sub = self.factors[(i, k)] * y[k];
                y[i] = y[i] - sub;
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let sub = self.factors[(i, k)] * y[k];
                y[i] = y[i] - sub;
            }
            y[i] = y[i] / self.factors[(i, i)];
        }
        Ok(y)
    }
}

/// Dense rectangular matrix; used for stacked iterates and the centralized
/// reference routines.
#[derive(Debug, Clone, PartialEq)]
pub struct RectMatrix<F: Real> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Real> RectMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `self · rhs` with a square right factor.
    pub fn matmul_square(&self, rhs: &SquareMatrix<F>) -> Result<Self> {
        if self.cols != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.dim(),
            });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.row(i)[k];
                if aik == F::zero() {
                    continue;
                }
                let brow = rhs.row(k);
                let orow = out.row_mut(i);
                for j in 0..self.cols {
                    orow[j] += aik * brow[j];
                }
            }
        }
        Ok(out)
    }

    /// `lhs · self` with a square left factor of size `rows`.
    pub fn left_mul_square(&self, lhs: &SquareMatrix<F>) -> Result<Self> {
        if lhs.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: lhs.dim(),
            });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let arow = lhs.row(i);
            for (k, &aik) in arow.iter().enumerate() {
                if aik == F::zero() {
                    continue;
                }
                let brow = self.row(k);
                let orow = out.row_mut(i);
                for j in 0..self.cols {
                    orow[j] += aik * brow[j];
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix `AᵀA` (cols × cols).
    pub fn gram(&self) -> SquareMatrix<F> {
        let mut g = SquareMatrix::zeros(self.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            for i in 0..self.cols {
                let vi = row[i];
                if vi == F::zero() {
                    continue;
                }
                for j in 0..self.cols {
                    g[(i, j)] += vi * row[j];
                }
            }
        }
        g
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> F {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(F::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }
}

/// A square matrix validated to be doubly stochastic at tolerance `tol`.
#[derive(Debug, Clone)]
pub struct DoublyStochasticMatrix<F: Real> {
    matrix: SquareMatrix<F>,
    tol: F,
}

/// Default validation tolerance: accumulated rounding over thousands of
/// convex combinations stays well inside this at desk-scale dimensions.
pub const DEFAULT_DS_TOL: f64 = 1e-9;

impl<F: Real> DoublyStochasticMatrix<F> {
    pub fn new(matrix: SquareMatrix<F>, tol: F) -> Result<Self> {
        if !matrix.is_doubly_stochastic(tol) {
            return Err(Error::NotRowStochastic {
                tol: tol.to_f64_lossy(),
                detail: "row or column sums deviate from 1".into(),
            });
        }
        Ok(Self { matrix, tol })
    }

    pub fn with_default_tol(matrix: SquareMatrix<F>) -> Result<Self> {
        Self::new(matrix, F::of(DEFAULT_DS_TOL))
    }

    pub fn tol(&self) -> F {
        self.tol
    }

    pub fn into_inner(self) -> SquareMatrix<F> {
        self.matrix
    }
}

impl<F: Real> std::ops::Deref for DoublyStochasticMatrix<F> {
    type Target = SquareMatrix<F>;
    fn deref(&self) -> &SquareMatrix<F> {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = SquareMatrix<f64>;

    #[test]
    fn new_rejects_nan_and_bad_length() {
        assert!(matches!(
            M::new(2, vec![1.0, 0.0, 0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            M::new(2, vec![1.0, 0.0, f64::NAN, 1.0]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn matmul_identity() {
        let a = M::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let i = M::identity(2);
        assert_eq!(a.matmul(&i).unwrap(), a);
        assert_eq!(i.matmul(&a).unwrap(), a);
    }

    #[test]
    fn frobenius_inner_is_elementwise_sum() {
        let a = M::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = M::from_rows(&[vec![5.0, 6.0], vec![7.0, 8.0]]).unwrap();
        assert_eq!(a.frobenius_inner(&b).unwrap(), 5.0 + 12.0 + 21.0 + 32.0);
    }

    #[test]
    fn doubly_stochastic_checks() {
        assert!(M::identity(4).is_doubly_stochastic(1e-12));
        let uniform = M::filled(5, 1.0 / 5.0);
        assert!(uniform.is_doubly_stochastic(1e-12));
        let not = M::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.6]]).unwrap();
        assert!(!not.is_doubly_stochastic(1e-9));
        let negative = M::from_rows(&[vec![1.5, -0.5], vec![-0.5, 1.5]]).unwrap();
        assert!(!negative.is_doubly_stochastic(1e-9));
    }

    #[test]
    fn cholesky_round_trip() {
        // A = RᵀR for a hand-picked SPD matrix
        let a = M::from_rows(&[
            vec![4.0, 2.0, 0.6],
            vec![2.0, 5.0, 1.0],
            vec![0.6, 1.0, 3.0],
        ])
        .unwrap();
        let r = a.cholesky_upper().unwrap();
        let back = r.transpose().matmul(&r).unwrap();
        assert!(back.max_abs_diff(&a) < 1e-12);
        for i in 0..3 {
            assert!(r[(i, i)] > 0.0);
            for j in 0..i {
                assert_eq!(r[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = M::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(a.cholesky_upper().is_err());
    }

    #[test]
    fn triangular_solve_inverts() {
        let r = M::from_rows(&[
            vec![2.0, 1.0, 0.5],
            vec![0.0, 3.0, 1.0],
            vec![0.0, 0.0, 1.5],
        ])
        .unwrap();
        let y = M::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![0.0, 1.0, -1.0],
            vec![2.0, 2.0, 2.0],
        ])
        .unwrap();
        let x = r.solve_right_upper_triangular(&y).unwrap();
        assert!(x.matmul(&r).unwrap().max_abs_diff(&y) < 1e-12);
    }

    #[test]
    fn lu_rank_and_det() {
        let a = M::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(a.rank(1e-12), 2);
        assert!((a.det() - 3.0).abs() < 1e-12);

        let singular = M::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(singular.rank(1e-12), 1);
        assert_eq!(singular.det().abs(), 0.0);
    }

    #[test]
    fn lu_solve_matches_direct() {
        let a = M::from_rows(&[
            vec![3.0, 1.0, 0.0],
            vec![1.0, 4.0, 1.0],
            vec![0.0, 1.0, 5.0],
        ])
        .unwrap();
        let b = vec![1.0, 2.0, 3.0];
        let x = a.lu().solve(&b).unwrap();
        for i in 0..3 {
            let ax: f64 = (0..3).map(|j| a[(i, j)] * x[j]).sum();
            assert!((ax - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn repeated_squaring_matches_naive_power() {
        let a = M::from_rows(&[vec![0.9, 0.1], vec![0.2, 0.8]]).unwrap();
        let p8 = a.power_of_two_pow(3).unwrap();
        let mut naive = M::identity(2);
        for _ in 0..8 {
            naive = naive.matmul(&a).unwrap();
        }
        assert!(p8.max_abs_diff(&naive) < 1e-14);
    }

    #[test]
    fn ds_wrapper_validates() {
        assert!(DoublyStochasticMatrix::with_default_tol(M::identity(3)).is_ok());
        let bad = M::from_rows(&[vec![0.9, 0.0], vec![0.0, 0.9]]).unwrap();
        assert!(DoublyStochasticMatrix::with_default_tol(bad).is_err());
    }
}
