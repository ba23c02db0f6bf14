//! Affine vector fields, affine maps and exact flows of nilpotent fields.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::poly::{Poly, PolyMap};
use super::scalar::{factorial, Scalar, QI};
use super::LinalgError;

/// The vector field `p ↦ linear·p + constant` on `ℂ^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineField {
    linear: Matrix<QI>,
    constant: Vec<QI>,
}

impl AffineField {
    pub fn new(linear: Matrix<QI>, constant: Vec<QI>) -> Result<Self, LinalgError> {
        if !linear.is_square() {
            return Err(LinalgError::NotSquare(linear.rows(), linear.cols()));
        }
        if constant.len() != linear.rows() {
            return Err(LinalgError::DimensionMismatch {
                left: linear.rows(),
                right: constant.len(),
            });
        }
        Ok(AffineField { linear, constant })
    }

    pub fn zero(n: usize) -> Self {
        AffineField {
            linear: Matrix::zeros(n, n),
            constant: vec![QI::zero(); n],
        }
    }

    /// The constant field `∂/∂x_i` scaled by `c`.
    pub fn coordinate(n: usize, i: usize, c: QI) -> Self {
        let mut f = Self::zero(n);
        f.constant[i] = c;
        f
    }

    /// Builds a field from `(target, source, coefficient)` triples, meaning
    /// `coefficient · x_source · ∂/∂x_target`, plus constant terms `(target, c)`.
    pub fn from_terms(n: usize, linear: &[(usize, usize, QI)], constant: &[(usize, QI)]) -> Self {
        let mut f = Self::zero(n);
        for (t, s, c) in linear {
            f.linear[(*t, *s)] = f.linear[(*t, *s)].clone() + c.clone();
        }
        for (t, c) in constant {
            f.constant[*t] = f.constant[*t].clone() + c.clone();
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.constant.len()
    }

    pub fn linear(&self) -> &Matrix<QI> {
        &self.linear
    }

    pub fn constant(&self) -> &[QI] {
        &self.constant
    }

    pub fn eval(&self, p: &[QI]) -> Result<Vec<QI>, LinalgError> {
        let lp = self.linear.mul_vec(p)?;
        Ok(lp.into_iter().zip(&self.constant).map(|(a, b)| a + b.clone()).collect())
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(AffineField {
            linear: self.linear.add(&other.linear)?,
            constant: self.constant.iter().zip(&other.constant).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn scale(&self, c: &QI) -> Self {
        AffineField {
            linear: self.linear.scale(c),
            constant: self.constant.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Commutator of the fields as derivations, `[X, Y] = X∘Y − Y∘X`.
    /// For `X = A·p + a`, `Y = B·p + b` this is `(BA − AB)·p + (B·a − A·b)`.
    pub fn bracket(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let (a, b) = (&self.linear, &other.linear);
        let linear = b.mul(a)?.sub(&a.mul(b)?)?;
        let ba = b.mul_vec(&self.constant)?;
        let ab = a.mul_vec(&other.constant)?;
        let constant = ba.into_iter().zip(ab).map(|(x, y)| x - y).collect();
        Ok(AffineField { linear, constant })
    }

    pub fn is_nilpotent(&self) -> bool {
        self.linear
            .pow(self.dim() as u32)
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }

    /// Components as degree-one polynomials in the `N` coordinates.
    pub fn to_polys(&self) -> Vec<Poly> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut p = Poly::constant(n, self.constant[i].clone());
                for j in 0..n {
                    if !self.linear[(i, j)].is_zero() {
                        p = &p + &Poly::var(n, j).scale(&self.linear[(i, j)]);
                    }
                }
                p
            })
            .collect()
    }

    /// Augmented `(N+1)×(N+1)` matrix `[[A, a], [0, 0]]`.
    fn augmented(&self) -> Matrix<QI> {
        let n = self.dim();
        let mut m = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.linear[(i, j)].clone();
            }
            m[(i, n)] = self.constant[i].clone();
        }
        m
    }
}

pub fn field_bracket(f: &AffineField, g: &AffineField) -> Result<AffineField, LinalgError> {
    f.bracket(g)
}

/// The affine transformation `p ↦ linear·p + translation`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    linear: Matrix<QI>,
    translation: Vec<QI>,
}

impl AffineMap {
    pub fn new(linear: Matrix<QI>, translation: Vec<QI>) -> Result<Self, LinalgError> {
        if !linear.is_square() {
            return Err(LinalgError::NotSquare(linear.rows(), linear.cols()));
        }
        if translation.len() != linear.rows() {
            return Err(LinalgError::DimensionMismatch {
                left: linear.rows(),
                right: translation.len(),
            });
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: Matrix::identity(n),
            translation: vec![QI::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &Matrix<QI> {
        &self.linear
    }

    pub fn translation(&self) -> &[QI] {
        &self.translation
    }

    pub fn apply(&self, p: &[QI]) -> Result<Vec<QI>, LinalgError> {
        let lp = self.linear.mul_vec(p)?;
        Ok(lp.into_iter().zip(&self.translation).map(|(a, b)| a + b.clone()).collect())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, LinalgError> {
        let linear = self.linear.mul(&inner.linear)?;
        let translation = self.apply(&inner.translation)?;
        Ok(AffineMap { linear, translation })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn jacobian_det(&self) -> QI {
        self.linear.det().expect("linear part is square")
    }
}

/// Exact time-`t` flow of an affine field whose linear part is nilpotent.
pub fn exp_nilpotent_affine(field: &AffineField, t: &QI) -> Result<AffineMap, LinalgError> {
    if !field.is_nilpotent() {
        return Err(LinalgError::NotNilpotent);
    }
    let n = field.dim();
    let m = field.augmented();
    let mut acc = Matrix::<QI>::identity(n + 1);
    let mut power = Matrix::<QI>::identity(n + 1);
    let mut tk = QI::one();
    for k in 1..=(n as u32 + 1) {
        power = power.mul(&m)?;
        if power.is_zero() {
            break;
        }
        tk *= t.clone();
        let c = tk.clone() / QI::from_q(factorial(k));
        acc = acc.add(&power.scale(&c))?;
    }
    let mut linear = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            linear[(i, j)] = acc[(i, j)].clone();
        }
    }
    let translation = (0..n).map(|i| acc[(i, n)].clone()).collect();
    AffineMap::new(linear, translation)
}

/// The flow as a polynomial map in the variables `(t, x_1, …, x_N)`.
pub fn flow_polymap(field: &AffineField) -> Result<PolyMap, LinalgError> {
    if !field.is_nilpotent() {
        return Err(LinalgError::NotNilpotent);
    }
    let n = field.dim();
    let nv = n + 1;
    let t = Poly::var(nv, 0);
    // homogeneous coordinates (x_1, …, x_N, 1)
    let mut current: Vec<Poly> = (0..n).map(|i| Poly::var(nv, i + 1)).collect();
    current.push(Poly::one(nv));
    let m = field.augmented();
    let mut out: Vec<Poly> = current[..n].to_vec();
    let mut tk = Poly::one(nv);
    for k in 1..=(n as u32 + 1) {
        current = (0..=n)
            .map(|i| {
                (0..=n).fold(Poly::zero(nv), |acc, j| {
                    if m[(i, j)].is_zero() {
                        acc
                    } else {
                        &acc + &current[j].scale(&m[(i, j)])
                    }
                })
            })
            .collect();
        if current.iter().all(Poly::is_zero) {
            break;
        }
        tk = &tk * &t;
        let c = QI::one() / QI::from_q(factorial(k));
        for i in 0..n {
            out[i] = &out[i] + &(&tk * &current[i]).scale(&c);
        }
    }
    PolyMap::new(nv, out)
}
