//! Permutations of `{0..m-1}` and their matrix representation.
//!
//! The matrix convention is `[Π]_{π(j), j} = 1`, i.e. `Π e_j = e_{π(j)}`, so
//! that the representation is a homomorphism: the matrix of `p ∘ q` is the
//! product of the matrices of `p` and `q`.

use rand::Rng;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Real;

/// A bijection on `{0..m-1}`, stored as its image list (`map[l] = π(l)`).
///
/// Indices are 0-based internally; all file formats and the CLI present
/// 1-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self {
            map: (0..m).collect(),
        }
    }

    /// Validate that `map` is a bijection of `{0..m-1}`.
    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let m = map.len();
        if m == 0 {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        let mut seen = vec![false; m];
        for &v in &map {
            if v >= m {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for size {}",
                    v, m
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("image {} repeated", v)));
            }
            seen[v] = true;
        }
        Ok(Self { map })
    }

    /// Uniform draw by Fisher–Yates shuffle; deterministic given the RNG state.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Self {
        let mut map: Vec<usize> = (0..m).collect();
        map.shuffle(rng);
        Self { map }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn image(&self, l: usize) -> usize {
        self.map[l]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(l, &v)| l == v)
    }

    /// Composition `(self ∘ other)(l) = self(other(l))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                got: other.size(),
            });
        }
        Ok(Self {
            map: other.map.iter().map(|&v| self.map[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (l, &v) in self.map.iter().enumerate() {
            inv[v] = l;
        }
        Self { map: inv }
    }

    /// Number of points assigned differently by the two permutations.
    ///
    /// This equals `m − ⟨Π₁,Π₂⟩` for the matrix representations, which makes
    /// it a metric on the symmetric group.
    pub fn distance(&self, other: &Self) -> Result<usize> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                got: other.size(),
            });
        }
        Ok(self
            .map
            .iter()
            .zip(&other.map)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// The representing matrix: 1 at `(π(j), j)`, 0 elsewhere.
    pub fn matrix<F: Real>(&self) -> SquareMatrix<F> {
        let m = self.size();
        let mut out = SquareMatrix::zeros(m);
        for (j, &i) in self.map.iter().enumerate() {
            out[(i, j)] = F::one();
        }
        out
    }

    /// Recover the permutation from an exact permutation matrix.
    ///
    /// Entries must be 0 or 1 within `tol`, one 1 per row and column.
    pub fn try_from_matrix<F: Real>(m: &SquareMatrix<F>, tol: F) -> Result<Self> {
        let dim = m.dim();
        let mut map = vec![usize::MAX; dim];
        for j in 0..dim {
            let mut hit = None;
            for i in 0..dim {
                let v = m[(i, j)];
                if (v - F::one()).abs() <= tol {
                    if hit.is_some() {
                        return Err(Error::NotPermutationMatrix(format!(
                            "column {} has multiple unit entries",
                            j
                        )));
                    }
                    hit = Some(i);
                } else if v.abs() > tol {
                    return Err(Error::NotPermutationMatrix(format!(
                        "entry ({}, {}) = {} is neither 0 nor 1",
                        i, j, v
                    )));
                }
            }
            map[j] = hit.ok_or_else(|| {
                Error::NotPermutationMatrix(format!("column {} has no unit entry", j))
            })?;
        }
        Self::from_map(map)
    }

    /// Row-permute a matrix: `Π · M`, computed as a row shuffle in `O(m²)`.
    ///
    /// Bit-identical to the dense product for nonnegative inputs, since the
    /// dense sum only ever adds exact zeros to the selected entry.
    pub fn permute_rows<F: Real>(&self, m: &SquareMatrix<F>) -> Result<SquareMatrix<F>> {
        if self.size() != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                got: m.dim(),
            });
        }
        let mut out = SquareMatrix::zeros(m.dim());
        for (src, &dst) in self.map.iter().enumerate() {
            out.row_mut(dst).copy_from_slice(m.row(src));
        }
        Ok(out)
    }
}

/// Operation-style alias: `compose(p, q)(l) = p(q(l))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

/// Operation-style alias for [`Permutation::inverse`].
pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

/// Operation-style alias for [`Permutation::matrix`].
pub fn matrix_of<F: Real>(p: &Permutation) -> SquareMatrix<F> {
    p.matrix()
}

/// Operation-style alias for [`Permutation::distance`].
pub fn perm_distance(p1: &Permutation, p2: &Permutation) -> Result<usize> {
    p1.distance(p2)
}

/// Operation-style alias for [`Permutation::random`].
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Permutation {
    Permutation::random(rng, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn compose_identity_cases() {
        let id = Permutation::identity(3);
        let q = Permutation::from_map(vec![2, 0, 1]).unwrap();
        assert_eq!(id.compose(&q).unwrap(), q);
        assert_eq!(q.compose(&q.inverse()).unwrap(), id);
    }

    #[test]
    fn compose_enumerated_case() {
        // p=(1,2,0), q=(2,0,1): p(q(l)) enumerates to the identity
        let p = Permutation::from_map(vec![1, 2, 0]).unwrap();
        let q = Permutation::from_map(vec![2, 0, 1]).unwrap();
        assert_eq!(p.compose(&q).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn compose_size_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(
            p.compose(&q),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        let p = Permutation::from_map(vec![1, 2, 0]).unwrap();
        assert_eq!(p.inverse(), Permutation::from_map(vec![2, 0, 1]).unwrap());
    }

    #[test]
    fn inverse_is_involutive() {
        let mut rng = seeded(7);
        for _ in 0..100 {
            let p = Permutation::random(&mut rng, 10);
            assert_eq!(p.inverse().inverse(), p);
        }
    }

    #[test]
    fn matrix_of_identity_and_swap() {
        let id2: SquareMatrix<f64> = Permutation::identity(2).matrix();
        assert_eq!(id2, SquareMatrix::identity(2));
        let swap = Permutation::from_map(vec![1, 0]).unwrap();
        let m: SquareMatrix<f64> = swap.matrix();
        assert_eq!(
            m,
            SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
        );
    }

    #[test]
    fn permutation_matrices_are_doubly_stochastic() {
        let mut rng = seeded(3);
        for _ in 0..20 {
            let p = Permutation::random(&mut rng, 9);
            let m: SquareMatrix<f64> = p.matrix();
            assert!(m.is_doubly_stochastic(0.0));
        }
    }

    #[test]
    fn distance_cases() {
        let id = Permutation::identity(3);
        assert_eq!(id.distance(&id).unwrap(), 0);
        let p = Permutation::from_map(vec![1, 0, 2]).unwrap();
        assert_eq!(id.distance(&p).unwrap(), 2);
    }

    #[test]
    fn distance_matches_matrix_formula() {
        // d = m − ⟨Π₁,Π₂⟩, checked against the direct mismatch count
        let mut rng = seeded(11);
        for _ in 0..200 {
            let p1 = Permutation::random(&mut rng, 8);
            let p2 = Permutation::random(&mut rng, 8);
            let m1: SquareMatrix<f64> = p1.matrix();
            let m2: SquareMatrix<f64> = p2.matrix();
            let inner = m1.frobenius_inner(&m2).unwrap();
            let by_formula = 8.0 - inner;
            assert_eq!(by_formula as usize, p1.distance(&p2).unwrap());
        }
    }

    #[test]
    fn frobenius_examples() {
        let im: SquareMatrix<f64> = SquareMatrix::identity(6);
        assert_eq!(im.frobenius_inner(&im).unwrap(), 6.0);
        let p: SquareMatrix<f64> = Permutation::from_map(vec![2, 0, 3, 1]).unwrap().matrix();
        assert_eq!(p.frobenius_inner(&p).unwrap(), 4.0);
    }

    #[test]
    fn frobenius_matches_trace_of_product() {
        let mut rng = seeded(13);
        let a = SquareMatrix::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
        let b = SquareMatrix::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
        let via_trace = a.transpose().matmul(&b).unwrap().trace();
        assert!((a.frobenius_inner(&b).unwrap() - via_trace).abs() < 1e-12);
    }

    #[test]
    fn random_permutation_determinism_and_degenerate_size() {
        assert_eq!(
            Permutation::random(&mut seeded(9), 1),
            Permutation::identity(1)
        );
        let a = Permutation::random(&mut seeded(42), 12);
        let b = Permutation::random(&mut seeded(42), 12);
        assert_eq!(a, b);
    }

    #[test]
    fn random_permutation_is_uniform_at_m4() {
        use std::collections::HashMap;
        let mut rng = seeded(20240517);
        let draws = 24_000usize;
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for _ in 0..draws {
            let p = Permutation::random(&mut rng, 4);
            *counts.entry(p.images().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 24);
        for (_, &c) in &counts {
            let freq = c as f64 / draws as f64;
            assert!(
                (freq - 1.0 / 24.0).abs() < 0.01,
                "frequency {} outside 1/24 ± 0.01",
                freq
            );
        }
    }

    #[test]
    fn from_matrix_round_trip_and_rejection() {
        let p = Permutation::from_map(vec![3, 1, 0, 2]).unwrap();
        let m: SquareMatrix<f64> = p.matrix();
        assert_eq!(Permutation::try_from_matrix(&m, 1e-12).unwrap(), p);
        let ds = SquareMatrix::filled(3, 1.0 / 3.0);
        assert!(Permutation::try_from_matrix(&ds, 1e-12).is_err());
    }

    #[test]
    fn permute_rows_matches_dense_product() {
        let mut rng = seeded(5);
        let p = Permutation::random(&mut rng, 6);
        let m = SquareMatrix::from_fn(6, |_, _| rng.gen_range(0.0..1.0));
        let fast = p.permute_rows(&m).unwrap();
        let dense = p.matrix::<f64>().matmul(&m).unwrap();
        assert_eq!(fast, dense);
    }
}
