//! Normal j-algebras: a split solvable Lie algebra together with a complex
//! structure `J` and an admissible linear form `λ`.

pub mod catalog;

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::scalar::fmt_q;
use crate::linalg::{unit, AffineField, LinalgError, Matrix, Subspace, Q, QI};

pub use catalog::{catalog_make, parse_catalog_spec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JAlgebraError {
    #[error("unsupported catalog entry: {0}")]
    Unsupported(String),
    #[error("{what} has dimension {found}, expected {expected}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("catalog algebra `{name}` fails its axioms: {failed}")]
    AxiomsFailed { name: String, failed: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    Ball(usize),
    LieBall(usize),
    Siegel3,
    D5,
    Custom,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainKind::Ball(n) => write!(f, "ball {n}"),
            DomainKind::LieBall(n) => write!(f, "lieball {n}"),
            DomainKind::Siegel3 => f.write_str("siegel3"),
            DomainKind::D5 => f.write_str("d5"),
            DomainKind::Custom => f.write_str("custom"),
        }
    }
}

/// Vector-field model of an algebra on an affine chart: one affine field per
/// basis element, a base point, and the sign relating field brackets to the
/// algebra's brackets (`[field(x), field(y)] = sign · field([x, y])`).
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub coords: Vec<String>,
    pub fields: Vec<AffineField>,
    pub base_point: Vec<QI>,
    pub bracket_sign: i64,
}

impl Realization {
    /// Field of the element with the given coordinates in the algebra basis.
    pub fn field_of(&self, v: &[Q]) -> AffineField {
        let n = self.coords.len();
        v.iter().zip(&self.fields).fold(AffineField::zero(n), |acc, (c, f)| {
            if c.is_zero() {
                acc
            } else {
                acc.add(&f.scale(&QI::new(c.clone(), Q::zero()))).expect("fields share the chart")
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalJAlgebra {
    name: String,
    kind: DomainKind,
    alg: LieAlgebra,
    j: Matrix<Q>,
    lambda: Vec<Q>,
    nilradical: Subspace<Q>,
    abelian: Subspace<Q>,
    realization: Option<Realization>,
}

impl NormalJAlgebra {
    /// Assembles the data after shape checks only; use [`check_axioms`] to validate.
    pub fn new(
        name: impl Into<String>,
        kind: DomainKind,
        alg: LieAlgebra,
        j: Matrix<Q>,
        lambda: Vec<Q>,
        nilradical: Subspace<Q>,
        abelian: Subspace<Q>,
    ) -> Result<Self, JAlgebraError> {
        let d = alg.dim();
        let shape = |what, found| {
            if found == d {
                Ok(())
            } else {
                Err(JAlgebraError::Shape { what, expected: d, found })
            }
        };
        shape("J rows", j.rows())?;
        shape("J columns", j.cols())?;
        shape("lambda", lambda.len())?;
        shape("nilradical ambient", nilradical.ambient())?;
        shape("abelian part ambient", abelian.ambient())?;
        Ok(NormalJAlgebra {
            name: name.into(),
            kind,
            alg,
            j,
            lambda,
            nilradical,
            abelian,
            realization: None,
        })
    }

    pub fn with_realization(mut self, r: Realization) -> Self {
        self.realization = Some(r);
        self
    }

    pub fn with_lambda(&self, lambda: Vec<Q>) -> Self {
        NormalJAlgebra {
            lambda,
            ..self.clone()
        }
    }

    pub fn with_algebra(&self, alg: LieAlgebra) -> Self {
        NormalJAlgebra { alg, ..self.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Complex dimension of the domain, which is also the dimension of a
    /// maximal totally real subalgebra.
    pub fn complex_dim(&self) -> usize {
        self.dim() / 2
    }

    pub fn j(&self) -> &Matrix<Q> {
        &self.j
    }

    pub fn lambda(&self) -> &[Q] {
        &self.lambda
    }

    pub fn nilradical(&self) -> &Subspace<Q> {
        &self.nilradical
    }

    pub fn abelian_part(&self) -> &Subspace<Q> {
        &self.abelian
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn apply_j(&self, v: &[Q]) -> Vec<Q> {
        self.j.mul_vec(v).expect("J is square of the algebra dimension")
    }

    pub fn lambda_of(&self, v: &[Q]) -> Q {
        self.lambda.iter().zip(v).fold(Q::zero(), |s, (a, b)| s + a * b)
    }

    pub fn omega(&self, x: &[Q], y: &[Q]) -> Result<Q, JAlgebraError> {
        Ok(self.lambda_of(&self.alg.bracket(x, y)?))
    }

    /// Matrix of `ω(e_i, e_j) = λ([e_i, e_j])`.
    pub fn omega_form(&self) -> Matrix<Q> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for k in i + 1..d {
                let w = self.lambda_of(&self.alg.basis_bracket(i, k));
                m[(k, i)] = -w.clone();
                m[(i, k)] = w;
            }
        }
        m
    }

    /// Gram matrix of `B(x, y) = λ([Jx, y])`.
    pub fn metric_form(&self) -> Matrix<Q> {
        let d = self.dim();
        let js: Vec<Vec<Q>> = (0..d).map(|i| self.apply_j(&unit(d, i))).collect();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for k in 0..d {
                let b = self.alg.bracket(&js[i], &unit(d, k)).expect("basis vectors");
                m[(i, k)] = self.lambda_of(&b);
            }
        }
        m
    }

    pub fn vector(&self, terms: &[(Q, &str)]) -> Result<Vec<Q>, JAlgebraError> {
        Ok(self.alg.vector(terms)?)
    }

    pub fn basis_vector(&self, label: &str) -> Result<Vec<Q>, JAlgebraError> {
        Ok(self.alg.basis_vector(label)?)
    }

    /// Span of vectors given by label combinations.
    pub fn span(&self, vectors: &[&[(Q, &str)]]) -> Result<Subspace<Q>, JAlgebraError> {
        let vs = vectors.iter().map(|t| self.vector(t)).collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::span(self.dim(), &vs)?)
    }

    /// Span of basis elements named by label.
    pub fn span_labels(&self, labels: &[&str]) -> Result<Subspace<Q>, JAlgebraError> {
        let vs = labels.iter().map(|l| self.basis_vector(l)).collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::span(self.dim(), &vs)?)
    }

    /// Human-readable `c*label + ...` form of a vector.
    pub fn format_vector(&self, v: &[Q]) -> String {
        format_combination(self.alg.labels(), v)
    }
}

pub fn format_combination(labels: &[String], v: &[Q]) -> String {
    let mut out = String::new();
    for (c, l) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if a.is_one() {
            out.push_str(l);
        } else {
            out.push_str(&format!("{}*{}", fmt_q(&a), l));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn omega(a: &NormalJAlgebra, x: &[Q], y: &[Q]) -> Result<Q, JAlgebraError> {
    a.omega(x, y)
}

/// One line of an axiom report.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    fn push(&mut self, name: &'static str, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            name,
            passed: witness.is_none(),
            witness,
        });
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "AXIOM {} {}", c.name, if c.passed { "PASS" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, "  ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Verifies every structural axiom of a normal j-algebra and reports each
/// with a witness on failure.
pub fn check_axioms(a: &NormalJAlgebra) -> AxiomReport {
    let mut r = AxiomReport::default();
    let d = a.dim();
    let labels = a.alg.labels();
    let pair = |i: usize, k: usize| format!("({}, {})", labels[i], labels[k]);

    r.push("even-dimension", (!d.is_multiple_of(2)).then(|| format!("dimension {d} is odd")));

    r.push(
        "jacobi",
        a.alg.jacobi_defect().map(|def| {
            format!(
                "({}, {}, {}) -> {}",
                def.labels[0],
                def.labels[1],
                def.labels[2],
                format_combination(labels, &def.value)
            )
        }),
    );

    let j2 = a.j.mul(&a.j).expect("square");
    let minus_id = Matrix::<Q>::identity(d).scale(&-Q::one());
    r.push(
        "j-squared",
        (0..d).find(|&i| j2.column(i) != minus_id.column(i)).map(|i| {
            format!("J^2 {} = {}", labels[i], format_combination(labels, &j2.column(i)))
        }),
    );

    let js: Vec<Vec<Q>> = (0..d).map(|i| a.apply_j(&unit(d, i))).collect();
    let br = |x: &[Q], y: &[Q]| a.alg.bracket(x, y).expect("same dimension");
    let mut integrable = None;
    'outer: for i in 0..d {
        for k in i + 1..d {
            let (ei, ek) = (unit(d, i), unit(d, k));
            let lhs = br(&js[i], &js[k]);
            let t1 = br(&ei, &ek);
            let t2 = a.apply_j(&br(&js[i], &ek));
            let t3 = a.apply_j(&br(&ei, &js[k]));
            let rhs: Vec<Q> = t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x + y + z).collect();
            if lhs != rhs {
                let diff: Vec<Q> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                integrable = Some(format!("{} defect {}", pair(i, k), format_combination(labels, &diff)));
                break 'outer;
            }
        }
    }
    r.push("j-integrable", integrable);

    let omega = a.omega_form();
    let mut lambda_inv = None;
    'outer2: for i in 0..d {
        for k in i + 1..d {
            let lhs = a.lambda_of(&br(&js[i], &js[k]));
            if lhs != omega[(i, k)] {
                lambda_inv = Some(format!(
                    "{}: lambda[Jx,Jy] = {}, lambda[x,y] = {}",
                    pair(i, k),
                    fmt_q(&lhs),
                    fmt_q(&omega[(i, k)])
                ));
                break 'outer2;
            }
        }
    }
    r.push("lambda-j-invariant", lambda_inv);

    let b = a.metric_form();
    r.push(
        "metric-symmetric",
        (0..d)
            .flat_map(|i| (i + 1..d).map(move |k| (i, k)))
            .find(|&(i, k)| b[(i, k)] != b[(k, i)])
            .map(|(i, k)| format!("B{} != B{}", pair(i, k), pair(k, i))),
    );
    r.push("metric-positive", positivity_witness(a, &b).map(|w| format!("B(x, x) <= 0 at x = {w}")));

    let n = &a.nilradical;
    r.push("nilradical-ideal", (!a.alg.is_ideal(n)).then(|| "[g, n] is not contained in n".to_string()));
    r.push(
        "nilradical-nilpotent",
        match a.alg.nilpotency_class_of(n) {
            Ok(Some(_)) => None,
            Ok(None) => Some("lower central series stalls".to_string()),
            Err(e) => Some(e.to_string()),
        },
    );
    let split = {
        let sum = n.sum(&a.abelian).map(|s| s.dim()).unwrap_or(0);
        if sum != d || n.dim() + a.abelian.dim() != d {
            Some(format!("dim a = {}, dim n = {}, dim(a + n) = {sum}", a.abelian.dim(), n.dim()))
        } else if !a.alg.is_abelian_subspace(&a.abelian) {
            Some("a is not abelian".to_string())
        } else {
            None
        }
    };
    r.push("a-n-split", split);

    if let DomainKind::Ball(_) = a.kind {
        r.push("heisenberg", heisenberg_witness(a));
    }
    r
}

/// Some `x` with `B(x, x) <= 0`, or `None` if `B` is positive definite.
///
/// Diagonal entries are scanned with nilradical basis vectors first, then an
/// exact symmetric elimination produces a witness from the first non-positive pivot.
pub fn positivity_witness(a: &NormalJAlgebra, b: &Matrix<Q>) -> Option<String> {
    let d = a.dim();
    let mut order: Vec<usize> = (0..d).filter(|&i| a.nilradical.contains(&unit(d, i))).collect();
    let rest: Vec<usize> = (0..d).filter(|i| !order.contains(i)).collect();
    order.extend(rest);
    if let Some(&i) = order.iter().find(|&&i| !b[(i, i)].is_positive()) {
        return Some(a.alg.label(i).to_string());
    }
    // symmetric Gaussian elimination; row k of `t` expresses the current pivot direction
    let mut m: Vec<Vec<Q>> = (0..d).map(|i| b.row(i)).collect();
    let mut t: Vec<Vec<Q>> = (0..d).map(|i| unit(d, i)).collect();
    for k in 0..d {
        if !m[k][k].is_positive() {
            return Some(a.format_vector(&t[k]));
        }
        for i in k + 1..d {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for c in 0..d {
                let v = &m[k][c] * &f;
                m[i][c] -= v;
                let w = &t[k][c] * &f;
                t[i][c] -= w;
            }
            for row in m.iter_mut() {
                let v = &row[k] * &f;
                row[i] -= v;
            }
        }
    }
    None
}

/// For the ball: every bracket of nilradical basis elements equals `ω(x, y) ζ̂`
/// with `ζ̂ = ζ / λ(ζ)`.
fn heisenberg_witness(a: &NormalJAlgebra) -> Option<String> {
    let zeta = match a.basis_vector("zeta") {
        Ok(z) => z,
        Err(_) => return Some("no basis element `zeta`".to_string()),
    };
    let lz = a.lambda_of(&zeta);
    if lz.is_zero() {
        return Some("lambda(zeta) = 0".to_string());
    }
    let nb = a.nilradical.basis().to_vec();
    for (i, x) in nb.iter().enumerate() {
        for y in &nb[i + 1..] {
            let lhs = a.alg.bracket(x, y).expect("same dimension");
            let w = a.omega(x, y).expect("same dimension");
            let rhs: Vec<Q> = zeta.iter().map(|z| z * &w / &lz).collect();
            if lhs != rhs {
                return Some(format!(
                    "[{}, {}] = {} but omega * zeta_hat = {}",
                    a.format_vector(x),
                    a.format_vector(y),
                    a.format_vector(&lhs),
                    a.format_vector(&rhs)
                ));
            }
        }
    }
    None
}

/// Checks of the fibration `l_n = b_{n-1} + b_1`: `b_{n-1}` is a J-invariant
/// ideal and `span{α₂, η}` is a J-invariant subalgebra.
pub fn lieball_fibration_checks(a: &NormalJAlgebra) -> Result<AxiomReport, JAlgebraError> {
    let n = match a.kind {
        DomainKind::LieBall(n) => n,
        k => return Err(JAlgebraError::Unsupported(format!("fibration check needs a Lie ball, got {k}"))),
    };
    let one = Q::one();
    let mut ideal: Vec<Vec<Q>> = vec![a.vector(&[(one.clone(), "alpha"), (one.clone(), "delta")])?];
    for k in 1..=n - 2 {
        ideal.push(a.basis_vector(&format!("xi{k}"))?);
        ideal.push(a.basis_vector(&format!("xi{k}p"))?);
    }
    ideal.push(a.basis_vector("zeta")?);
    let b_big = Subspace::span(a.dim(), &ideal)?;
    let b_one = a.span(&[&[(one.clone(), "delta"), (-one.clone(), "alpha")], &[(one, "eta")]])?;
    let j_invariant = |s: &Subspace<Q>| s.basis().iter().all(|v| s.contains(&a.apply_j(v)));
    let mut r = AxiomReport::default();
    r.push("fibration-ideal", (!a.alg.is_ideal(&b_big)).then(|| "b_{n-1} is not an ideal".to_string()));
    r.push("fibration-ideal-j-invariant", (!j_invariant(&b_big)).then(|| "J(b_{n-1}) leaves b_{n-1}".to_string()));
    r.push("fibration-quotient-subalgebra", (!a.alg.is_subalgebra(&b_one)).then(|| "span{alpha2, eta} not closed".to_string()));
    r.push("fibration-quotient-j-invariant", (!j_invariant(&b_one)).then(|| "J(b_1) leaves b_1".to_string()));
    let complement = b_big.sum(&b_one)?.dim() == a.dim() && b_big.dim() + b_one.dim() == a.dim();
    r.push("fibration-complement", (!complement).then(|| "b_{n-1} + b_1 is not a direct sum".to_string()));
    Ok(r)
}

/// Checks that a realization represents the algebra: field brackets match
/// algebra brackets up to the recorded sign, and `field(Jx)(p₀) = i · field(x)(p₀)`.
pub fn realization_checks(a: &NormalJAlgebra) -> AxiomReport {
    let mut r = AxiomReport::default();
    let Some(real) = a.realization() else {
        r.push("realization-present", Some("no realization".to_string()));
        return r;
    };
    let d = a.dim();
    let sign = QI::new(Q::from_integer(real.bracket_sign.into()), Q::zero());
    let mut bracket_fail = None;
    'outer: for i in 0..d {
        for k in i + 1..d {
            let lhs = real.fields[i].bracket(&real.fields[k]).expect("same chart");
            let rhs = real.field_of(&a.alg.basis_bracket(i, k)).scale(&sign);
            if lhs != rhs {
                bracket_fail = Some(format!("[{}, {}]", a.alg.label(i), a.alg.label(k)));
                break 'outer;
            }
        }
    }
    r.push("realization-brackets", bracket_fail);
    let iu = QI::new(Q::zero(), Q::one());
    let j_fail = (0..d).find_map(|i| {
        let x = real.fields[i].eval(&real.base_point).expect("chart dimension");
        let jx = real.field_of(&a.apply_j(&unit(d, i))).eval(&real.base_point).expect("chart dimension");
        let ix: Vec<QI> = x.iter().map(|z| z * &iu).collect();
        (jx != ix).then(|| a.alg.label(i).to_string())
    });
    r.push("realization-complex-structure", j_fail);
    r
}
