//! Linear subspaces of `F^n` in canonical reduced form.

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::LinalgError;

/// A subspace of `F^ambient`, stored as the nonzero rows of the reduced
/// row-echelon form of any spanning set. Two subspaces are equal iff their
/// stored bases are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, &(0..ambient).collect::<Vec<_>>())
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vectors: Vec<Vec<F>> = indices.iter().map(|&i| unit(ambient, i)).collect();
        Self::span(ambient, &vectors).expect("coordinate vectors have the ambient length")
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Result<Self, LinalgError> {
        for v in vectors {
            if v.len() != ambient {
                return Err(LinalgError::DimensionMismatch {
                    left: ambient,
                    right: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = Matrix::from_rows(vectors.to_vec())?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Ok(Subspace {
            ambient,
            basis,
            pivots,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating the pivot coordinates; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(F::is_zero)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn with_vector(&self, v: &[F]) -> Result<Self, LinalgError> {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Self::span(self.ambient, &vs)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // x·A = y·B  <=>  (x, y) in ker [A^T | -B^T]
        let a = Matrix::from_columns(self.ambient, &self.basis)?;
        let neg_b: Vec<Vec<F>> = other
            .basis
            .iter()
            .map(|v| v.iter().map(|x| -x.clone()).collect())
            .collect();
        let b = Matrix::from_columns(self.ambient, &neg_b)?;
        let kernel = a.hstack(&b)?.kernel_basis();
        let vectors: Vec<Vec<F>> = kernel
            .iter()
            .map(|k| a.mul_vec(&k[..self.dim()]))
            .collect::<Result<_, _>>()?;
        Self::span(self.ambient, &vectors)
    }

    /// Rows spanning the annihilator: `q · v = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        if self.is_zero() {
            return (0..self.ambient).map(|i| unit(self.ambient, i)).collect();
        }
        Matrix::from_rows(self.basis.clone())
            .expect("basis rows share the ambient length")
            .kernel_basis()
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &Matrix<F>) -> Result<Self, LinalgError> {
        if map.cols() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                left: map.cols(),
                right: self.ambient,
            });
        }
        let vs: Vec<Vec<F>> = self
            .basis
            .iter()
            .map(|v| map.mul_vec(v))
            .collect::<Result<_, _>>()?;
        Self::span(map.rows(), &vs)
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

pub fn unit<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Right kernel of `m` as a canonical subspace.
pub fn nullspace<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(m.cols(), &m.kernel_basis()).expect("kernel vectors have the column length")
}

pub fn span_intersect<F: Scalar>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
    a.intersect(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{q, Q};

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[2, 1, -1]), v(&[1, 0, -1])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[v(&[1, 0, -1]), v(&[0, 1, 1])]);
    }

    #[test]
    fn intersection_examples() {
        let a = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(span_intersect(&a, &a).unwrap(), a);
        let b = Subspace::span(4, &[v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        assert!(span_intersect(&a, &b).unwrap().is_zero());
        let c = Subspace::span(4, &[v(&[1, 1, 1, 0])]).unwrap();
        assert!(span_intersect(&a.sum(&b).unwrap(), &c).unwrap() == c);
        assert!(span_intersect(&a, &Subspace::<Q>::zero(3)).is_err());
    }

    #[test]
    fn annihilator_kills_span() {
        let a = Subspace::span(4, &[v(&[1, 2, 0, 1]), v(&[0, 1, 1, 1])]).unwrap();
        let ann = a.annihilator();
        assert_eq!(ann.len(), 2);
        for r in &ann {
            for b in a.basis() {
                let dot = r.iter().zip(b).fold(q(0), |s, (x, y)| s + x * y);
                assert_eq!(dot, q(0));
            }
        }
    }
}
