//! Finite-dimensional real Lie algebras given by structure constants.
//!
//! Elements are coordinate columns in the algebra's fixed basis. Because
//! every operation here is (bi)linear, checks on basis pairs suffice.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{unit, LinalgError, Matrix, Subspace, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("bracket of `{0}` with itself must vanish")]
    DiagonalBracket(String),
    #[error("bracket [{0}, {1}] given twice")]
    DuplicateBracket(String, String),
    #[error("Jacobi identity fails on ({}, {}, {})", .0.labels[0], .0.labels[1], .0.labels[2])]
    Jacobi(Box<JacobiDefect>),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A basis triple on which `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiDefect {
    pub indices: [usize; 3],
    pub labels: [String; 3],
    pub value: Vec<Q>,
}

type Sparse = Vec<(usize, Q)>;

#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `table[i * dim + j]` holds `[e_i, e_j]` for all ordered pairs.
    table: Vec<Sparse>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("labels", &self.labels)
            .field("nonzero_brackets", &self.structure_constants().count())
            .finish()
    }
}

/// Accumulates structure constants by label before validation.
#[derive(Clone, Debug)]
pub struct LieAlgebraBuilder {
    labels: Vec<String>,
    entries: BTreeMap<(usize, usize), BTreeMap<usize, Q>>,
}

impl LieAlgebraBuilder {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self, LieError> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        Ok(LieAlgebraBuilder {
            labels,
            entries: BTreeMap::new(),
        })
    }

    pub fn index(&self, label: &str) -> Result<usize, LieError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LieError::UnknownLabel(label.to_string()))
    }

    /// Records `[x, y] = Σ c·z`. The pair may be given in either order.
    pub fn bracket(mut self, x: &str, y: &str, terms: &[(Q, &str)]) -> Result<Self, LieError> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        let terms = terms
            .iter()
            .map(|(c, l)| Ok((self.index(l)?, c.clone())))
            .collect::<Result<Vec<_>, LieError>>()?;
        self.set_indexed(i, j, &terms)?;
        Ok(self)
    }

    pub fn set_indexed(&mut self, i: usize, j: usize, terms: &[(usize, Q)]) -> Result<(), LieError> {
        if i == j {
            if terms.iter().all(|(_, c)| c.is_zero()) {
                return Ok(());
            }
            return Err(LieError::DiagonalBracket(self.labels[i].clone()));
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        if self.entries.contains_key(&(a, b)) {
            return Err(LieError::DuplicateBracket(self.labels[a].clone(), self.labels[b].clone()));
        }
        let mut row = BTreeMap::new();
        for (k, c) in terms {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            let e = row.entry(*k).or_insert_with(Q::zero);
            *e += c;
        }
        row.retain(|_, c: &mut Q| !c.is_zero());
        self.entries.insert((a, b), row);
        Ok(())
    }

    pub fn build(self) -> Result<LieAlgebra, LieError> {
        let alg = self.build_unchecked();
        match alg.jacobi_defect() {
            None => Ok(alg),
            Some(d) => Err(LieError::Jacobi(Box::new(d))),
        }
    }

    /// Builds without checking the Jacobi identity. Used to inspect invalid
    /// tables with [`LieAlgebra::jacobi_defect`].
    pub fn build_unchecked(self) -> LieAlgebra {
        let d = self.labels.len();
        let mut table = vec![Vec::new(); d * d];
        for ((i, j), row) in self.entries {
            let pos: Sparse = row.into_iter().collect();
            let neg: Sparse = pos.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[i * d + j] = pos;
            table[j * d + i] = neg;
        }
        LieAlgebra {
            labels: self.labels,
            table,
        }
    }
}

impl LieAlgebra {
    pub fn builder<S: AsRef<str>>(labels: &[S]) -> Result<LieAlgebraBuilder, LieError> {
        LieAlgebraBuilder::new(labels)
    }

    /// The abelian algebra with the given basis labels.
    pub fn abelian<S: AsRef<str>>(labels: &[S]) -> Result<Self, LieError> {
        LieAlgebraBuilder::new(labels)?.build()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize, LieError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LieError::UnknownLabel(label.to_string()))
    }

    /// Coordinate vector of a basis element.
    pub fn basis_vector(&self, label: &str) -> Result<Vec<Q>, LieError> {
        Ok(unit(self.dim(), self.index(label)?))
    }

    /// Vector `Σ c·e_label`.
    pub fn vector(&self, terms: &[(Q, &str)]) -> Result<Vec<Q>, LieError> {
        let mut v = vec![Q::zero(); self.dim()];
        for (c, l) in terms {
            let i = self.index(l)?;
            v[i] += c;
        }
        Ok(v)
    }

    /// Nonzero structure constants `[e_i, e_j] = Σ c_k e_k` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Q)])> + '_ {
        let d = self.dim();
        (0..d).flat_map(move |i| {
            (i + 1..d).filter_map(move |j| {
                let row = &self.table[i * d + j];
                (!row.is_empty()).then_some((i, j, row.as_slice()))
            })
        })
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (k, c) in &self.table[i * self.dim() + j] {
            v[*k] = c.clone();
        }
        v
    }

    fn check_vec(&self, v: &[Q]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim(),
                right: v.len(),
            }
            .into());
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>, LieError> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let row = &self.table[i * d + j];
                if row.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in row {
                    out[*k] += &c * s;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`, acting on column vectors.
    pub fn ad(&self, x: &[Q]) -> Result<Matrix<Q>, LieError> {
        let d = self.dim();
        let cols = (0..d)
            .map(|j| self.bracket(x, &unit(d, j)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(d, &cols)?)
    }

    /// First basis triple violating the Jacobi identity, scanning `i < j < k`.
    pub fn jacobi_defect(&self) -> Option<JacobiDefect> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                let eij = self.basis_bracket(i, j);
                for k in j + 1..d {
                    let ek = unit(d, k);
                    let ei = unit(d, i);
                    let ej = unit(d, j);
                    let a = self.bracket(&eij, &ek).expect("basis vectors");
                    let b = self.bracket(&self.basis_bracket(j, k), &ei).expect("basis vectors");
                    let c = self.bracket(&self.basis_bracket(k, i), &ej).expect("basis vectors");
                    let value: Vec<Q> = a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect();
                    if value.iter().any(|x| !x.is_zero()) {
                        return Some(JacobiDefect {
                            indices: [i, j, k],
                            labels: [self.labels[i].clone(), self.labels[j].clone(), self.labels[k].clone()],
                            value,
                        });
                    }
                }
            }
        }
        None
    }

    /// Copy with the bracket `[e_i, e_j]` replaced, without revalidation.
    pub fn with_bracket_unchecked(&self, i: usize, j: usize, value: &[Q]) -> LieAlgebra {
        let d = self.dim();
        let mut out = self.clone();
        let pos: Sparse = value.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        out.table[j * d + i] = pos.iter().map(|(k, c)| (*k, -c.clone())).collect();
        out.table[i * d + j] = pos;
        out
    }

    fn span_of_brackets(&self, a: &Subspace<Q>, b: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket(x, y)?);
            }
        }
        Ok(Subspace::span(self.dim(), &vs)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace<Q>) -> bool {
        self.brackets_land_in(s, s, s)
    }

    /// `[s, s] = 0`.
    pub fn is_abelian_subspace(&self, s: &Subspace<Q>) -> bool {
        self.brackets_land_in(s, s, &Subspace::zero(self.dim()))
    }

    /// `[g, s] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace<Q>) -> bool {
        self.brackets_land_in(&Subspace::full(self.dim()), s, s)
    }

    fn brackets_land_in(&self, a: &Subspace<Q>, b: &Subspace<Q>, target: &Subspace<Q>) -> bool {
        if a.ambient() != self.dim() || b.ambient() != self.dim() {
            return false;
        }
        for (i, x) in a.basis().iter().enumerate() {
            for (j, y) in b.basis().iter().enumerate() {
                if std::ptr::eq(a, b) && j <= i {
                    continue;
                }
                match self.bracket(x, y) {
                    Ok(z) if target.contains(&z) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Smallest subalgebra containing `gens`: iterate span plus pairwise
    /// brackets until the dimension stops growing.
    pub fn lie_generate(&self, gens: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
        let mut current = gens.clone();
        loop {
            let brackets = self.span_of_brackets(&current, &current)?;
            let next = current.sum(&brackets)?;
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }

    /// `{ y ∈ within : [y, s] ⊆ s }`.
    pub fn normalizer_within(&self, within: &Subspace<Q>, s: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotSubalgebra);
        }
        let ann = s.annihilator();
        self.solve_within(within, s, Some(&ann))
    }

    /// `{ y ∈ within : [y, s] = 0 }`.
    pub fn centralizer_within(&self, within: &Subspace<Q>, s: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
        self.solve_within(within, s, None)
    }

    /// Solves `P · [y, s_i] = 0` for `y = W·c`, where `P` projects onto the
    /// quotient by `s` (or is the identity when `ann` is `None`).
    fn solve_within(&self, within: &Subspace<Q>, s: &Subspace<Q>, ann: Option<&[Vec<Q>]>) -> Result<Subspace<Q>, LieError> {
        let d = self.dim();
        if within.ambient() != d || s.ambient() != d {
            return Err(LinalgError::DimensionMismatch {
                left: d,
                right: within.ambient().max(s.ambient()),
            }
            .into());
        }
        if within.is_zero() {
            return Ok(within.clone());
        }
        if s.is_zero() {
            return Ok(within.clone());
        }
        let w = Matrix::from_columns(d, within.basis())?;
        let proj = match ann {
            Some([]) => return Ok(within.clone()),
            Some(rows) => Matrix::from_rows(rows.to_vec())?,
            None => Matrix::identity(d),
        };
        let mut stacked: Option<Matrix<Q>> = None;
        for si in s.basis() {
            // [y, s_i] = -ad(s_i) y
            let block = proj.mul(&self.ad(si)?)?.mul(&w)?;
            stacked = Some(match stacked {
                None => block,
                Some(m) => m.vstack(&block)?,
            });
        }
        let m = stacked.expect("s is nonzero");
        let coeffs = m.kernel_basis();
        let vs = coeffs.iter().map(|c| w.mul_vec(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::span(d, &vs)?)
    }

    pub fn normalizer(&self, s: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
        self.normalizer_within(&Subspace::full(self.dim()), s)
    }

    pub fn centralizer(&self, s: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
        self.centralizer_within(&Subspace::full(self.dim()), s)
    }

    /// Lower central series `C¹ = h, C^{k+1} = [h, C^k]` of a subalgebra `h`,
    /// stopping at zero or when it stabilizes.
    pub fn lower_central_series(&self, h: &Subspace<Q>) -> Result<Vec<Subspace<Q>>, LieError> {
        if !self.is_subalgebra(h) {
            return Err(LieError::NotSubalgebra);
        }
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                return Ok(series);
            }
            let next = self.span_of_brackets(h, last)?;
            if next == *last {
                return Ok(series);
            }
            series.push(next);
        }
    }

    /// Nilpotency class of the subalgebra `h`: the number of nonzero terms
    /// of its lower central series, or `None` if the series stalls.
    pub fn nilpotency_class_of(&self, h: &Subspace<Q>) -> Result<Option<usize>, LieError> {
        let series = self.lower_central_series(h)?;
        let last = series.last().expect("nonempty");
        Ok(last.is_zero().then(|| series.len() - 1))
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        self.nilpotency_class_of(&Subspace::full(self.dim()))
            .expect("the full algebra is a subalgebra")
    }

    /// The subalgebra spanned by the listed basis elements, as an algebra in its own right.
    pub fn restrict(&self, indices: &[usize]) -> Result<LieAlgebra, LieError> {
        let d = self.dim();
        let sub = Subspace::coordinate(d, indices);
        if !self.is_subalgebra(&sub) {
            return Err(LieError::NotSubalgebra);
        }
        let labels: Vec<&str> = indices.iter().map(|&i| self.label(i)).collect();
        let mut b = LieAlgebraBuilder::new(&labels)?;
        for (a, &i) in indices.iter().enumerate() {
            for (c, &j) in indices.iter().enumerate().skip(a + 1) {
                let terms: Vec<(usize, Q)> = self.table[i * d + j]
                    .iter()
                    .map(|(k, v)| (indices.iter().position(|x| x == k).expect("closed"), v.clone()))
                    .collect();
                if !terms.is_empty() {
                    b.set_indexed(a, c, &terms)?;
                }
            }
        }
        Ok(b.build_unchecked())
    }
}

pub fn bracket(alg: &LieAlgebra, x: &[Q], y: &[Q]) -> Result<Vec<Q>, LieError> {
    alg.bracket(x, y)
}

pub fn jacobi_defect(alg: &LieAlgebra) -> Option<JacobiDefect> {
    alg.jacobi_defect()
}

pub fn is_subalgebra(alg: &LieAlgebra, s: &Subspace<Q>) -> bool {
    alg.is_subalgebra(s)
}

pub fn lie_generate(alg: &LieAlgebra, gens: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
    alg.lie_generate(gens)
}

pub fn normalizer(alg: &LieAlgebra, s: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
    alg.normalizer(s)
}

pub fn centralizer(alg: &LieAlgebra, s: &Subspace<Q>) -> Result<Subspace<Q>, LieError> {
    alg.centralizer(s)
}

pub fn nilpotency_class(alg: &LieAlgebra) -> Option<usize> {
    alg.nilpotency_class()
}
