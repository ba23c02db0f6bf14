//! Unipotent group actions on Siegel-domain coordinates: orbit tests at
//! points, the three-parameter group acting on `Sym(3, ℂ)`, its freeness,
//! and the polynomial trivialization of the quotient.

pub mod chain;
pub mod examples;
pub mod sample;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::jalgebra::{JAlgebraError, NormalJAlgebra};
use crate::linalg::poly::univariate as uni;
use crate::linalg::scalar::{fmt_qi, gi, real};
use crate::linalg::{poly_det, AffineField, AffineMap, LinalgError, Matrix, Poly, PolyMap, Q, QI};

pub use chain::{bezout_trivialize, verify_trivialization_chain, Bezout, ChainPart, TrivializationChain};
pub use examples::{b3_example_fields, gamma_b2_group_law_check, GammaElement};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SiegelError {
    #[error("f and g share a root: gcd = {0}")]
    CommonRoot(String),
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("algebra `{0}` has no vector-field realization")]
    NoRealization(String),
    #[error("elimination does not apply: {0}")]
    Elimination(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    JAlgebra(#[from] JAlgebraError),
}

/// Coordinate names on `Sym(3, ℂ)`, in the order used by every point and field.
pub const SYM3_COORDS: [&str; 6] = ["z11", "z12", "z13", "z22", "z23", "z33"];

pub fn field_eval(f: &AffineField, p: &[QI]) -> Result<Vec<QI>, SiegelError> {
    Ok(f.eval(p)?)
}

/// `N × k` matrix whose columns are the field values at `p`.
pub fn field_value_matrix(fields: &[AffineField], p: &[QI]) -> Result<Matrix<QI>, SiegelError> {
    let cols = fields.iter().map(|f| f.eval(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_columns(p.len(), &cols)?)
}

/// The orbit through `p` of the group generated by `fields` is totally real
/// iff the values are ℂ-linearly independent.
pub fn orbit_totally_real_at(fields: &[AffineField], p: &[QI]) -> Result<bool, SiegelError> {
    if fields.is_empty() {
        return Ok(true);
    }
    Ok(field_value_matrix(fields, p)?.rank() == fields.len())
}

/// Realization fields of the basis vectors of `s`.
pub fn fields_of(a: &NormalJAlgebra, vectors: &[Vec<Q>]) -> Result<Vec<AffineField>, SiegelError> {
    let r = a.realization().ok_or_else(|| SiegelError::NoRealization(a.name().to_string()))?;
    Ok(vectors.iter().map(|v| r.field_of(v)).collect())
}

/// All nonzero `k × k` minors of the field matrix, as polynomials in the
/// coordinates that remain after fixing `fixed = [(index, value)]`.
/// Returns the minors and the names of the remaining variables.
pub fn field_minors(fields: &[AffineField], coord_names: &[&str], fixed: &[(usize, QI)]) -> (Vec<Poly>, Vec<String>) {
    let n = fields.first().map_or(0, AffineField::dim);
    let free: Vec<usize> = (0..n).filter(|i| !fixed.iter().any(|(j, _)| j == i)).collect();
    let nv = free.len();
    let subs: Vec<Poly> = (0..n)
        .map(|i| match fixed.iter().find(|(j, _)| *j == i) {
            Some((_, c)) => Poly::constant(nv, c.clone()),
            None => Poly::var(nv, free.iter().position(|&f| f == i).expect("free")),
        })
        .collect();
    let cols: Vec<Vec<Poly>> = fields
        .iter()
        .map(|f| f.to_polys().iter().map(|p| p.compose(&subs).expect("chart dimension")).collect())
        .collect();
    let k = fields.len();
    let mut minors = Vec::new();
    for rows in combinations(n, k) {
        let m: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let d = poly_det(&m, nv);
        if !d.is_zero() {
            minors.push(d);
        }
    }
    let names = free.iter().map(|&i| coord_names.get(i).map_or_else(|| format!("x{}", i + 1), |s| s.to_string())).collect();
    (minors, names)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Symmetric `3 × 3` matrix from its six upper-triangular entries.
pub fn sym3_matrix(z: &[QI]) -> Matrix<QI> {
    let idx = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
    let mut m = Matrix::zeros(3, 3);
    for i in 0..3 {
        for k in 0..3 {
            m[(i, k)] = z[idx[i][k]].clone();
        }
    }
    m
}

pub fn sym3_entries(m: &Matrix<QI>) -> Vec<QI> {
    [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)].iter().map(|&p| m[p].clone()).collect()
}

/// `Z₀(τ, α)`: the point of the fiber at which the orbit of the extended
/// group fails to be totally real.
pub fn z0(tau: &Q, alpha: &Q) -> Vec<QI> {
    let den = Q::one() + tau * tau;
    let z12 = QI::new(tau / &den, Q::one() / &den);
    vec![
        gi(0, 1),
        z12,
        QI::zero(),
        QI::new(Q::zero(), alpha.clone()),
        QI::zero(),
        gi(0, 1),
    ]
}

/// `x₁, x₂, x₃` of the fiber-domain counterexample, as coordinate vectors.
pub fn d5_gamma_vectors(a: &NormalJAlgebra) -> Result<[Vec<Q>; 3], SiegelError> {
    let one = Q::one;
    let x1 = a.vector(&[(one(), "xi31p"), (one(), "zeta3"), (one(), "xi21")])?;
    let x2 = a.vector(&[(-one(), "xi31"), (one(), "xi21p")])?;
    let x3 = a.vector(&[(one(), "zeta3"), (one(), "zeta2")])?;
    Ok([x1, x2, x3])
}

/// `y_τ = ξ₃₂ + τ ζ₃`.
pub fn y_tau(a: &NormalJAlgebra, tau: &Q) -> Result<Vec<Q>, SiegelError> {
    Ok(a.vector(&[(Q::one(), "xi32"), (tau.clone(), "zeta3")])?)
}

fn pvar(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

fn pint(n: usize, c: i64) -> Poly {
    Poly::constant(n, gi(c, 0))
}

/// Entries of the `6 × 6` group matrix as polynomials in `(a, b, c)`.
pub fn group_matrix_poly() -> Vec<Vec<Poly>> {
    let n = 3;
    let (a, b, c) = (pvar(n, 0), pvar(n, 1), pvar(n, 2));
    let z = Poly::zero(n);
    let one = Poly::one(n);
    let half_sq = (&a.pow(2) + &b.pow(2)).scale(&real(Q::new(1.into(), 2.into())));
    vec![
        vec![one.clone(), z.clone(), z.clone(), z.clone(), a.clone(), -&b],
        vec![b.clone(), one.clone(), z.clone(), a.clone(), c.scale(&gi(-2, 0)), -&half_sq],
        vec![a.clone(), z.clone(), one.clone(), -&b, half_sq.clone(), (&a + &c).scale(&gi(-2, 0))],
        vec![z.clone(), z.clone(), z.clone(), one.clone(), -&b, -&a],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), one.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z, one],
    ]
}

fn poly_mat_mul(x: &[Vec<Poly>], y: &[Vec<Poly>], nv: usize) -> Vec<Vec<Poly>> {
    let (r, k, c) = (x.len(), y.len(), y[0].len());
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).fold(Poly::zero(nv), |acc, t| &acc + &(&x[i][t] * &y[t][j])))
                .collect()
        })
        .collect()
}

fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// The action `Z ↦ (AZ + B)Aᵗ` read off the group matrix `[[A, B], [0, A⁻ᵗ]]`,
/// as a polynomial map in `(a, b, c, z11, z12, z13, z22, z23, z33)`.
pub fn sym_action_block() -> PolyMap {
    let nv = 9;
    let g: Vec<Vec<Poly>> = group_matrix_poly()
        .iter()
        .map(|row| row.iter().map(|p| p.embed(nv, &[0, 1, 2])).collect())
        .collect();
    let a: Vec<Vec<Poly>> = g[..3].iter().map(|r| r[..3].to_vec()).collect();
    let b: Vec<Vec<Poly>> = g[..3].iter().map(|r| r[3..].to_vec()).collect();
    let zi = [[3, 4, 5], [4, 6, 7], [5, 7, 8]];
    let z: Vec<Vec<Poly>> = zi.iter().map(|r| r.iter().map(|&i| pvar(nv, i)).collect()).collect();
    let az = poly_mat_mul(&a, &z, nv);
    let azb: Vec<Vec<Poly>> = az.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect();
    let w = poly_mat_mul(&azb, &transpose(&a), nv);
    let comps = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)].iter().map(|&(i, k)| w[i][k].clone()).collect();
    PolyMap::new(nv, comps).expect("nine variables")
}

/// The action formula entry by entry, as displayed for the group, in
/// `(a, b, c, z11, z12, z13, z22, z23, z33)`.
pub fn sym_action_displayed() -> PolyMap {
    let nv = 9;
    let v = |i| pvar(nv, i);
    let k = |c| pint(nv, c);
    let half = |p: Poly| p.scale(&real(Q::new(1.into(), 2.into())));
    let (a, b, c) = (v(0), v(1), v(2));
    let (z11, z12, z13, z22, z23, z33) = (v(3), v(4), v(5), v(6), v(7), v(8));
    let ab = &a * &b;
    let comps = vec![
        z11.clone(),
        &(&z12 + &(&b * &z11)) + &a,
        &(&z13 + &(&a * &z11)) - &b,
        &(&(&(&z22 + &(&k(2) * &(&b * &z12))) + &(&b.pow(2) * &z11)) + &ab) - &(&k(2) * &c),
        &(&(&(&z23 + &(&a * &z12)) + &(&b * &z13)) + &(&ab * &z11)) + &half(&a.pow(2) - &b.pow(2)),
        &(&(&(&z33 + &(&k(2) * &(&a * &z13))) + &(&a.pow(2) * &z11)) - &ab) - &(&k(2) * &(&a + &c)),
    ];
    PolyMap::new(nv, comps).expect("nine variables")
}

/// An element of the complexified three-parameter group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement5 {
    pub a: QI,
    pub b: QI,
    pub c: QI,
}

impl GroupElement5 {
    pub fn new(a: QI, b: QI, c: QI) -> Self {
        GroupElement5 { a, b, c }
    }

    pub fn identity() -> Self {
        Self::new(QI::zero(), QI::zero(), QI::zero())
    }

    fn params(&self) -> [QI; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn matrix(&self) -> Matrix<QI> {
        let p = self.params();
        let rows = group_matrix_poly()
            .iter()
            .map(|r| r.iter().map(|e| e.eval(&p).expect("three parameters")).collect())
            .collect();
        Matrix::from_rows(rows).expect("6x6")
    }

    /// Reads `(a, b, c)` back from a matrix, provided it belongs to the family.
    pub fn from_matrix(m: &Matrix<QI>) -> Option<Self> {
        if m.rows() != 6 || m.cols() != 6 {
            return None;
        }
        let g = GroupElement5::new(m[(2, 0)].clone(), m[(1, 0)].clone(), m[(1, 4)].clone() / gi(-2, 0));
        (g.matrix() == *m).then_some(g)
    }

    /// `self · other`, if the product stays in the family.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        Self::from_matrix(&self.matrix().mul(&other.matrix()).expect("6x6"))
    }

    pub fn is_unipotent(&self) -> bool {
        let n = self.matrix().sub(&Matrix::identity(6)).expect("6x6");
        n.pow(6).expect("square").is_zero()
    }

    fn point(&self, z: &[QI]) -> Vec<QI> {
        let mut p = self.params().to_vec();
        p.extend_from_slice(z);
        p
    }

    /// The displayed action formula.
    pub fn apply(&self, z: &[QI]) -> Result<Vec<QI>, SiegelError> {
        Ok(sym_action_displayed().eval(&self.point(z))?)
    }

    /// `Z ↦ (AZ + B)Aᵗ` computed from the blocks of the group matrix.
    pub fn apply_block(&self, z: &[QI]) -> Result<Vec<QI>, SiegelError> {
        let m = self.matrix();
        let block = |r0: usize, c0: usize| {
            let mut b = Matrix::zeros(3, 3);
            for i in 0..3 {
                for k in 0..3 {
                    b[(i, k)] = m[(r0 + i, c0 + k)].clone();
                }
            }
            b
        };
        let (a, b) = (block(0, 0), block(0, 3));
        let w = a.mul(&sym3_matrix(z))?.add(&b)?.mul(&a.transpose())?;
        Ok(sym3_entries(&w))
    }

    /// The action as an affine map of the six coordinates.
    pub fn affine_map(&self) -> Result<AffineMap, SiegelError> {
        let zero = vec![QI::zero(); 6];
        let t = self.apply_block(&zero)?;
        let cols = (0..6)
            .map(|k| {
                let mut e = zero.clone();
                e[k] = QI::one();
                let v = self.apply_block(&e)?;
                Ok(v.iter().zip(&t).map(|(x, y)| x.clone() - y.clone()).collect())
            })
            .collect::<Result<Vec<Vec<QI>>, SiegelError>>()?;
        Ok(AffineMap::new(Matrix::from_columns(6, &cols)?, t)?)
    }
}

pub fn apply_group(g: &GroupElement5, z: &[QI]) -> Result<Vec<QI>, SiegelError> {
    g.apply(z)
}

/// Outcome of solving `g · Z = Z` for `g = (a, b, c)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Stabilizer {
    /// Only the identity fixes `Z`. `special_direction` is set when the
    /// linear equations alone leave a line `(a, b) = t·v` that the remaining
    /// equations then cut down to `t = 0`.
    Trivial { special_direction: Option<[QI; 2]> },
    /// Nonzero solutions exist; `residual` is the gcd of the remaining
    /// univariate equations (dense, low degree first).
    NonTrivial { direction: Option<[QI; 2]>, residual: Vec<QI> },
}

impl Stabilizer {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Stabilizer::Trivial { .. })
    }
}

/// The stabilizer equations `g · Z - Z` as polynomials in `(a, b, c)`.
pub fn stabilizer_equations(z: &[QI]) -> Result<Vec<Poly>, SiegelError> {
    let mut subs: Vec<Poly> = (0..3).map(|i| pvar(3, i)).collect();
    subs.extend(z.iter().map(|c| Poly::constant(3, c.clone())));
    let act = sym_action_displayed();
    Ok(act
        .components()
        .iter()
        .zip(z)
        .map(|(p, zi)| Ok(&p.compose(&subs)? - &Poly::constant(3, zi.clone())))
        .collect::<Result<Vec<_>, LinalgError>>()?)
}

/// Exact elimination on the six entry equations.
///
/// The equations that are linear in `(a, b)` and free of `c` are solved
/// first. If they force `a = b = 0` the rest is univariate in `c`; otherwise
/// `(a, b) = t·v`, an equation with constant `c`-coefficient is solved for
/// `c`, and the remaining univariate equations in `t` are reduced to their gcd.
pub fn stabilizer_solve(z: &[QI]) -> Result<Stabilizer, SiegelError> {
    if z.len() != 6 {
        return Err(LinalgError::DimensionMismatch { left: 6, right: z.len() }.into());
    }
    let eqs = stabilizer_equations(z)?;
    let lin: Vec<Vec<QI>> = eqs
        .iter()
        .filter(|e| !e.is_zero() && e.total_degree() <= 1 && e.degree_in(2) == 0 && e.constant_term().is_zero())
        .map(|e| vec![e.coeff(&[1, 0, 0]), e.coeff(&[0, 1, 0])])
        .collect();
    if lin.is_empty() {
        return Err(SiegelError::Elimination("no equation is linear in (a, b)".into()));
    }
    let kernel = Matrix::from_rows(lin)?.kernel_basis();
    match kernel.len() {
        0 => {
            // a = b = 0: equations in c alone
            let t = pvar(1, 0);
            let subs = [Poly::zero(1), Poly::zero(1), t];
            let residual = univariate_gcd(&eqs, &subs)?;
            Ok(classify(residual, None))
        }
        1 => {
            let v = [kernel[0][0].clone(), kernel[0][1].clone()];
            let (t, c) = (pvar(2, 0), pvar(2, 1));
            let subs2 = [t.scale(&v[0]), t.scale(&v[1]), c];
            let in_tc: Vec<Poly> = eqs.iter().map(|e| e.compose(&subs2)).collect::<Result<_, _>>()?;
            let solver = in_tc
                .iter()
                .find(|e| {
                    e.degree_in(1) == 1
                        && e.terms().all(|(m, _)| m[1] == 0 || m == &vec![0, 1])
                })
                .ok_or_else(|| SiegelError::Elimination("no equation determines c".into()))?;
            // solver = k·c + r(t)  =>  c = -r(t)/k
            let k = solver.coeff(&[0, 1]);
            let r = solver - &Poly::var(2, 1).scale(&k);
            let c_of_t = r.scale(&(-QI::one() / k)).embed(1, &[0, 0]);
            let t1 = pvar(1, 0);
            let subs_t = [t1.clone(), c_of_t];
            let residual = univariate_gcd(&in_tc, &subs_t)?;
            Ok(classify(residual, Some(v)))
        }
        _ => Err(SiegelError::Elimination("linear equations leave a plane of (a, b)".into())),
    }
}

fn univariate_gcd(eqs: &[Poly], subs: &[Poly]) -> Result<Vec<QI>, SiegelError> {
    let mut g: Vec<QI> = Vec::new();
    for e in eqs {
        let u = e.compose(subs)?.to_dense()?;
        g = uni::gcd(&g, &u)?;
    }
    Ok(g)
}

fn classify(residual: Vec<QI>, direction: Option<[QI; 2]>) -> Stabilizer {
    // the identity always solves, so the gcd is divisible by t; trivial iff it is exactly t
    if residual == vec![QI::zero(), QI::one()] {
        Stabilizer::Trivial {
            special_direction: direction,
        }
    } else {
        Stabilizer::NonTrivial { direction, residual }
    }
}

pub fn format_point(z: &[QI]) -> String {
    let parts: Vec<String> = z.iter().map(fmt_qi).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::q;

    #[test]
    fn identity_element_acts_trivially() {
        let z: Vec<QI> = (0..6).map(|i| gi(i, 1 - i)).collect();
        let g = GroupElement5::identity();
        assert_eq!(g.apply(&z).unwrap(), z);
        assert_eq!(g.apply_block(&z).unwrap(), z);
        assert_eq!(g.matrix(), Matrix::identity(6));
    }

    #[test]
    fn z0_entries() {
        let p = z0(&q(0), &q(2));
        assert_eq!(p[1], gi(0, 1));
        assert_eq!(p[3], gi(0, 2));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
