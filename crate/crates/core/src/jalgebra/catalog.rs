//! Exact constructors for the unit ball, the Lie ball, Siegel's upper
//! half-space of degree 3 and the five-dimensional fiber domain.

use num_traits::{One, Zero};

use super::{check_axioms, DomainKind, JAlgebraError, NormalJAlgebra, Realization};
use crate::lie::LieAlgebraBuilder;
use crate::linalg::scalar::{q, qf, Q, QI};
use crate::linalg::{AffineField, Matrix, Subspace};

/// Measured sign between brackets of the vector fields `Z ↦ AZ + ZAᵗ + B`
/// and matrix commutators in the Siegel model: the action is on the left,
/// so fields bracket as an anti-homomorphism.
pub const MATRIX_TO_FIELD_BRACKET_SIGN: i64 = -1;

/// Parses `ball:n`, `lieball:n`, `siegel:3` or `d5`.
pub fn parse_catalog_spec(spec: &str) -> Result<(DomainKind, usize), JAlgebraError> {
    let bad = || JAlgebraError::Unsupported(spec.to_string());
    if spec == "d5" {
        return Ok((DomainKind::D5, 0));
    }
    let (kind, n) = spec.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let kind = match kind {
        "ball" => DomainKind::Ball(n),
        "lieball" => DomainKind::LieBall(n),
        "siegel" => DomainKind::Siegel3,
        _ => return Err(bad()),
    };
    Ok((kind, n))
}

/// Builds a catalog algebra and validates it with [`check_axioms`].
pub fn catalog_make(kind: DomainKind, n: usize) -> Result<NormalJAlgebra, JAlgebraError> {
    let a = match kind {
        DomainKind::Ball(_) => ball(n)?,
        DomainKind::LieBall(_) => lie_ball(n)?,
        DomainKind::Siegel3 if n == 3 => siegel(3)?,
        DomainKind::D5 => d5()?,
        k => return Err(JAlgebraError::Unsupported(format!("{k} with n = {n}"))),
    };
    let report = check_axioms(&a);
    if !report.all_passed() {
        return Err(JAlgebraError::AxiomsFailed {
            name: a.name().to_string(),
            failed: report.failed_names().join(", "),
        });
    }
    Ok(a)
}

pub fn ball_labels(n: usize) -> Vec<String> {
    let mut l = vec!["alpha".to_string()];
    l.extend((1..n).map(|k| format!("xi{k}")));
    l.extend((1..n).map(|k| format!("xi{k}p")));
    l.push("zeta".to_string());
    l
}

fn one() -> Q {
    Q::one()
}

fn gi(re: Q, im: Q) -> QI {
    QI::new(re, im)
}

/// The normal j-algebra `b_n` of the n-dimensional unit ball.
pub fn ball(n: usize) -> Result<NormalJAlgebra, JAlgebraError> {
    if n < 2 {
        return Err(JAlgebraError::Unsupported(format!("ball:{n} (need n >= 2)")));
    }
    let labels = ball_labels(n);
    let mut b = LieAlgebraBuilder::new(&labels)?;
    for k in 1..n {
        let (x, xp) = (format!("xi{k}"), format!("xi{k}p"));
        b = b
            .bracket(&x, &xp, &[(one(), "zeta")])?
            .bracket("alpha", &x, &[(-one(), &x)])?
            .bracket("alpha", &xp, &[(-one(), &xp)])?;
    }
    let alg = b.bracket("alpha", "zeta", &[(q(-2), "zeta")])?.build()?;
    let d = alg.dim();
    let idx = |l: &str| alg.index(l).expect("catalog label");
    let mut j = Matrix::zeros(d, d);
    // J(zeta) = alpha, J(alpha) = -zeta, J(xi) = xi', J(xi') = -xi
    j[(idx("alpha"), idx("zeta"))] = one();
    j[(idx("zeta"), idx("alpha"))] = -one();
    for k in 1..n {
        let (x, xp) = (idx(&format!("xi{k}")), idx(&format!("xi{k}p")));
        j[(xp, x)] = one();
        j[(x, xp)] = -one();
    }
    let mut lambda = vec![Q::zero(); d];
    lambda[idx("zeta")] = -one();
    let nil = Subspace::coordinate(d, &(1..d).collect::<Vec<_>>());
    let abel = Subspace::coordinate(d, &[0]);

    // chart (z, w_1, ..., w_{n-1}) of Im z > |w|^2, base point (i/2, 0)
    let mut coords = vec!["z".to_string()];
    coords.extend((1..n).map(|k| format!("w{k}")));
    let mut fields = vec![AffineField::zero(n); d];
    let mut alpha_terms = vec![(0, 0, gi(q(2), q(0)))];
    for k in 1..n {
        fields[idx(&format!("xi{k}"))] = AffineField::from_terms(n, &[(0, k, gi(q(0), q(1)))], &[(k, gi(qf(1, 2), q(0)))]);
        fields[idx(&format!("xi{k}p"))] = AffineField::from_terms(n, &[(0, k, gi(q(1), q(0)))], &[(k, gi(q(0), qf(1, 2)))]);
        alpha_terms.push((k, k, gi(q(1), q(0))));
    }
    fields[idx("alpha")] = AffineField::from_terms(n, &alpha_terms, &[]);
    fields[idx("zeta")] = AffineField::coordinate(n, 0, gi(q(1), q(0)));
    let mut base_point = vec![gi(q(0), q(0)); n];
    base_point[0] = gi(q(0), qf(1, 2));

    Ok(NormalJAlgebra::new(format!("ball{n}"), DomainKind::Ball(n), alg, j, lambda, nil, abel)?.with_realization(Realization {
        coords,
        fields,
        base_point,
        bracket_sign: 1,
    }))
}

pub fn lie_ball_labels(n: usize) -> Vec<String> {
    let mut l = vec!["delta".to_string(), "alpha".to_string()];
    l.extend((1..=n - 2).map(|k| format!("xi{k}")));
    l.extend((1..=n - 2).map(|k| format!("xi{k}p")));
    l.push("zeta".to_string());
    l.push("eta".to_string());
    l
}

/// The normal j-algebra `l_n` of the n-dimensional Lie ball, `n >= 3`.
pub fn lie_ball(n: usize) -> Result<NormalJAlgebra, JAlgebraError> {
    if n < 3 {
        return Err(JAlgebraError::Unsupported(format!("lieball:{n} (need n >= 3)")));
    }
    let labels = lie_ball_labels(n);
    let mut b = LieAlgebraBuilder::new(&labels)?;
    for k in 1..=n - 2 {
        let (x, xp) = (format!("xi{k}"), format!("xi{k}p"));
        b = b
            .bracket(&x, &xp, &[(one(), "zeta")])?
            .bracket("eta", &xp, &[(q(2), &x)])?
            .bracket("delta", &x, &[(-one(), &x)])?
            .bracket("alpha", &xp, &[(-one(), &xp)])?;
    }
    let alg = b
        .bracket("delta", "zeta", &[(-one(), "zeta")])?
        .bracket("delta", "eta", &[(-one(), "eta")])?
        .bracket("alpha", "zeta", &[(-one(), "zeta")])?
        .bracket("alpha", "eta", &[(one(), "eta")])?
        .build()?;
    let d = alg.dim();
    let idx = |l: &str| alg.index(l).expect("catalog label");
    let (de, al, ze, et) = (idx("delta"), idx("alpha"), idx("zeta"), idx("eta"));
    let mut j = Matrix::zeros(d, d);
    // J(zeta) = alpha + delta, J(eta) = delta - alpha,
    // hence J(delta) = -(zeta + eta)/2 and J(alpha) = (eta - zeta)/2
    j[(al, ze)] = one();
    j[(de, ze)] = one();
    j[(de, et)] = one();
    j[(al, et)] = -one();
    j[(ze, de)] = qf(-1, 2);
    j[(et, de)] = qf(-1, 2);
    j[(ze, al)] = qf(-1, 2);
    j[(et, al)] = qf(1, 2);
    for k in 1..=n - 2 {
        let (x, xp) = (idx(&format!("xi{k}")), idx(&format!("xi{k}p")));
        j[(xp, x)] = one();
        j[(x, xp)] = -one();
    }
    let mut lambda = vec![Q::zero(); d];
    lambda[ze] = -one();
    lambda[et] = -one();
    let nil = Subspace::coordinate(d, &(2..d).collect::<Vec<_>>());
    let abel = Subspace::coordinate(d, &[0, 1]);

    // tube chart z_1..z_n, base point i e_n
    let coords: Vec<String> = (1..=n).map(|k| format!("z{k}")).collect();
    let (zm, zn) = (n - 2, n - 1);
    let c1 = gi(q(1), q(0));
    let mut fields = vec![AffineField::zero(n); d];
    fields[de] = AffineField::from_terms(n, &(0..n).map(|i| (i, i, c1.clone())).collect::<Vec<_>>(), &[]);
    fields[al] = AffineField::from_terms(n, &[(zm, zn, c1.clone()), (zn, zm, c1.clone())], &[]);
    for k in 0..n - 2 {
        fields[idx(&format!("xi{}", k + 1))] = AffineField::coordinate(n, k, c1.clone());
        fields[idx(&format!("xi{}p", k + 1))] = AffineField::from_terms(
            n,
            &[(k, zn, c1.clone()), (k, zm, -c1.clone()), (zm, k, c1.clone()), (zn, k, c1.clone())],
            &[],
        );
    }
    fields[ze] = AffineField::from_terms(n, &[], &[(zm, c1.clone()), (zn, c1.clone())]);
    fields[et] = AffineField::from_terms(n, &[], &[(zm, -c1.clone()), (zn, c1)]);
    let mut base_point = vec![gi(q(0), q(0)); n];
    base_point[zn] = gi(q(0), q(1));

    Ok(NormalJAlgebra::new(format!("lieball{n}"), DomainKind::LieBall(n), alg, j, lambda, nil, abel)?.with_realization(
        Realization {
            coords,
            fields,
            base_point,
            bracket_sign: 1,
        },
    ))
}

/// Basis element of the Siegel model `[[A, B], [0, -Aᵗ]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiegelBasis {
    /// `A = E_kk`
    Alpha(usize),
    /// `B = E_kl + E_lk`, `k > l`
    Xi(usize, usize),
    /// `A = E_kl`, `k > l`
    XiPrime(usize, usize),
    /// `B = -2 E_kk`
    Zeta(usize),
}

impl SiegelBasis {
    pub fn label(&self) -> String {
        match *self {
            SiegelBasis::Alpha(k) => format!("alpha{k}"),
            SiegelBasis::Xi(k, l) => format!("xi{k}{l}"),
            SiegelBasis::XiPrime(k, l) => format!("xi{k}{l}p"),
            SiegelBasis::Zeta(k) => format!("zeta{k}"),
        }
    }
}

/// Basis in block order `b_n, b_{n-1}, …, b_1`, each as `α, ξ, ξ', ζ`.
pub fn siegel_basis(n: usize) -> Vec<SiegelBasis> {
    let mut out = Vec::new();
    for k in (1..=n).rev() {
        out.push(SiegelBasis::Alpha(k));
        out.extend((1..k).map(|l| SiegelBasis::Xi(k, l)));
        out.extend((1..k).map(|l| SiegelBasis::XiPrime(k, l)));
        out.push(SiegelBasis::Zeta(k));
    }
    out
}

/// The `(A, B)` blocks of a basis element, 0-based `n×n` matrices.
pub fn siegel_blocks(n: usize, e: SiegelBasis) -> (Matrix<Q>, Matrix<Q>) {
    let mut a = Matrix::zeros(n, n);
    let mut b = Matrix::zeros(n, n);
    match e {
        SiegelBasis::Alpha(k) => a[(k - 1, k - 1)] = one(),
        SiegelBasis::Xi(k, l) => {
            b[(k - 1, l - 1)] = one();
            b[(l - 1, k - 1)] = one();
        }
        SiegelBasis::XiPrime(k, l) => a[(k - 1, l - 1)] = one(),
        SiegelBasis::Zeta(k) => b[(k - 1, k - 1)] = q(-2),
    }
    (a, b)
}

/// `[[A, B], [0, -Aᵗ]]`.
pub fn siegel_matrix(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    let n = a.rows();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for k in 0..n {
            m[(i, k)] = a[(i, k)].clone();
            m[(i, n + k)] = b[(i, k)].clone();
            m[(n + i, n + k)] = -a[(k, i)].clone();
        }
    }
    m
}

/// Coordinates of `(A, B)` in [`siegel_basis`]; `A` lower triangular, `B` symmetric.
pub fn siegel_decode(n: usize, a: &Matrix<Q>, b: &Matrix<Q>) -> Vec<Q> {
    siegel_basis(n)
        .iter()
        .map(|e| match *e {
            SiegelBasis::Alpha(k) => a[(k - 1, k - 1)].clone(),
            SiegelBasis::Xi(k, l) => b[(k - 1, l - 1)].clone(),
            SiegelBasis::XiPrime(k, l) => a[(k - 1, l - 1)].clone(),
            SiegelBasis::Zeta(k) => b[(k - 1, k - 1)].clone() / q(-2),
        })
        .collect()
}

fn blocks_of(n: usize, m: &Matrix<Q>) -> (Matrix<Q>, Matrix<Q>) {
    let mut a = Matrix::zeros(n, n);
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            a[(i, k)] = m[(i, k)].clone();
            b[(i, k)] = m[(i, n + k)].clone();
        }
    }
    (a, b)
}

/// `φ⁻¹` of `φ(A) = A + Aᵗ`: lower triangular with half the diagonal.
fn phi_inverse(s: &Matrix<Q>) -> Matrix<Q> {
    let n = s.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        l[(i, i)] = s[(i, i)].clone() / q(2);
        for k in 0..i {
            l[(i, k)] = s[(i, k)].clone();
        }
    }
    l
}

/// Symmetric-matrix coordinates `z_kl`, `k <= l`, in row order.
pub fn sym_coords(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |k| (i, k))).collect()
}

fn sym_index(n: usize, i: usize, k: usize) -> usize {
    let (i, k) = if i <= k { (i, k) } else { (k, i) };
    sym_coords(n).iter().position(|&p| p == (i, k)).expect("in range")
}

/// The field `Z ↦ AZ + ZAᵗ + B` on `Sym(n, ℂ)`.
pub fn siegel_field(a: &Matrix<Q>, b: &Matrix<Q>) -> AffineField {
    let n = a.rows();
    let coords = sym_coords(n);
    let mut lin = Vec::new();
    let mut cst = Vec::new();
    for (t, &(p, r)) in coords.iter().enumerate() {
        for s in 0..n {
            if !a[(p, s)].is_zero() {
                lin.push((t, sym_index(n, s, r), QI::new(a[(p, s)].clone(), Q::zero())));
            }
            if !a[(r, s)].is_zero() {
                lin.push((t, sym_index(n, p, s), QI::new(a[(r, s)].clone(), Q::zero())));
            }
        }
        if !b[(p, r)].is_zero() {
            cst.push((t, QI::new(b[(p, r)].clone(), Q::zero())));
        }
    }
    AffineField::from_terms(coords.len(), &lin, &cst)
}

/// Siegel's upper half-space of degree `n` (only `n = 3` is catalogued).
pub fn siegel(n: usize) -> Result<NormalJAlgebra, JAlgebraError> {
    let basis = siegel_basis(n);
    let labels: Vec<String> = basis.iter().map(|e| e.label()).collect();
    let blocks: Vec<(Matrix<Q>, Matrix<Q>)> = basis.iter().map(|&e| siegel_blocks(n, e)).collect();
    let mats: Vec<Matrix<Q>> = blocks.iter().map(|(a, b)| siegel_matrix(a, b)).collect();
    let mut builder = LieAlgebraBuilder::new(&labels)?;
    for i in 0..mats.len() {
        for k in i + 1..mats.len() {
            let c = mats[i].mul(&mats[k])?.sub(&mats[k].mul(&mats[i])?)?;
            let (a, b) = blocks_of(n, &c);
            let coeffs = siegel_decode(n, &a, &b);
            let terms: Vec<(usize, Q)> = coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                builder.set_indexed(i, k, &terms)?;
            }
        }
    }
    let alg = builder.build()?;
    let d = alg.dim();
    let mut j = Matrix::zeros(d, d);
    let mut lambda = Vec::with_capacity(d);
    for (col, (a, b)) in blocks.iter().enumerate() {
        // J(A, B) = (φ⁻¹(B), -φ(A))
        let ja = phi_inverse(b);
        let jb = a.add(&a.transpose())?.scale(&-one());
        for (row, c) in siegel_decode(n, &ja, &jb).into_iter().enumerate() {
            j[(row, col)] = c;
        }
        lambda.push((0..n).fold(Q::zero(), |s, i| s + b[(i, i)].clone()));
    }
    let alphas: Vec<usize> = (0..d).filter(|&i| matches!(basis[i], SiegelBasis::Alpha(_))).collect();
    let rest: Vec<usize> = (0..d).filter(|i| !alphas.contains(i)).collect();
    let nil = Subspace::coordinate(d, &rest);
    let abel = Subspace::coordinate(d, &alphas);

    let coords = sym_coords(n).iter().map(|(i, k)| format!("z{}{}", i + 1, k + 1)).collect();
    let fields = blocks.iter().map(|(a, b)| siegel_field(a, b)).collect();
    let base_point = sym_coords(n)
        .iter()
        .map(|(i, k)| if i == k { QI::new(q(0), q(1)) } else { QI::new(q(0), q(0)) })
        .collect();
    let kind = if n == 3 { DomainKind::Siegel3 } else { DomainKind::Custom };
    Ok(NormalJAlgebra::new(format!("siegel{n}"), kind, alg, j, lambda, nil, abel)?.with_realization(Realization {
        coords,
        fields,
        base_point,
        bracket_sign: MATRIX_TO_FIELD_BRACKET_SIGN,
    }))
}

/// The fiber domain over `z₁₁ = i`: the j-subalgebra `b_3 + b_2` of the
/// degree-3 Siegel algebra, i.e. its first ten basis elements.
pub fn d5() -> Result<NormalJAlgebra, JAlgebraError> {
    let s = siegel(3)?;
    let keep: Vec<usize> = (0..10).collect();
    let alg = s.alg().restrict(&keep)?;
    let d = keep.len();
    let mut j = Matrix::zeros(d, d);
    for (c, &kc) in keep.iter().enumerate() {
        for (r, &kr) in keep.iter().enumerate() {
            j[(r, c)] = s.j()[(kr, kc)].clone();
        }
        // J must not leave the subalgebra
        for row in 10..s.dim() {
            if !s.j()[(row, kc)].is_zero() {
                return Err(JAlgebraError::Unsupported("d5 is not J-invariant".to_string()));
            }
        }
    }
    let lambda = s.lambda()[..d].to_vec();
    let alphas: Vec<usize> = (0..d).filter(|&i| alg.label(i).starts_with("alpha")).collect();
    let rest: Vec<usize> = (0..d).filter(|i| !alphas.contains(i)).collect();
    let real = s.realization().expect("siegel has a realization");
    let realization = Realization {
        coords: real.coords.clone(),
        fields: real.fields[..d].to_vec(),
        base_point: real.base_point.clone(),
        bracket_sign: real.bracket_sign,
    };
    Ok(NormalJAlgebra::new(
        "d5",
        DomainKind::D5,
        alg,
        j,
        lambda,
        Subspace::coordinate(d, &rest),
        Subspace::coordinate(d, &alphas),
    )?
    .with_realization(realization))
}
