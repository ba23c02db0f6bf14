//! Totally real subalgebras of the nilradical: the test, the two completion
//! procedures and the Stein decision.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::jalgebra::{DomainKind, JAlgebraError, NormalJAlgebra};
use crate::lie::LieError;
use crate::linalg::{LinalgError, Matrix, Subspace, Q};
use crate::random::rng;
use crate::siegel::sample::{d5_point, siegel3_point};
use crate::siegel::{fields_of, orbit_totally_real_at, z0, SiegelError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TotallyRealError {
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("subspace is not contained in the nilradical")]
    NotInNilradical,
    #[error("subspace is not totally real")]
    NotTotallyReal,
    #[error("{op} needs a {expected} algebra, got {found}")]
    WrongKind {
        op: &'static str,
        expected: &'static str,
        found: DomainKind,
    },
    #[error(transparent)]
    JAlgebra(#[from] JAlgebraError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Siegel(#[from] SiegelError),
}

type Result<T> = std::result::Result<T, TotallyRealError>;

/// `s ∩ J(s) = 0`, tested as `rank [s | Js] = 2 dim s`.
pub fn is_totally_real(a: &NormalJAlgebra, s: &Subspace<Q>) -> bool {
    if s.is_zero() {
        return true;
    }
    let mut cols: Vec<Vec<Q>> = s.basis().to_vec();
    cols.extend(s.basis().iter().map(|v| a.apply_j(v)));
    Matrix::from_columns(a.dim(), &cols).expect("algebra dimension").rank() == 2 * s.dim()
}

fn check_input(a: &NormalJAlgebra, s: &Subspace<Q>) -> Result<()> {
    if !a.nilradical().contains_subspace(s) {
        return Err(TotallyRealError::NotInNilradical);
    }
    if !a.alg().is_subalgebra(s) {
        return Err(TotallyRealError::NotSubalgebra);
    }
    if !is_totally_real(a, s) {
        return Err(TotallyRealError::NotTotallyReal);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// isotropic extension inside the ω-orthogonal complement
    Isotropic,
    /// totally real extension of a span containing the center
    Greedy,
    /// an element with η-coefficient one
    Normalize,
    /// the center ζ
    AddCenter,
    /// the least ξ_k missed by the projection
    MissingXi,
    /// generated subalgebra stays totally real
    Generated,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Isotropic => "isotropic",
            Rule::Greedy => "greedy",
            Rule::Normalize => "normalize",
            Rule::AddCenter => "add-center",
            Rule::MissingXi => "missing-xi",
            Rule::Generated => "generated",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub vector: Vec<Q>,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CompletionStatus {
    Completed(Subspace<Q>),
    NotApplicable(String),
    Failed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionResult {
    pub status: CompletionStatus,
    pub trace: Vec<Step>,
}

impl CompletionResult {
    pub fn result(&self) -> Option<&Subspace<Q>> {
        match &self.status {
            CompletionStatus::Completed(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_completed(&self) -> bool {
        self.result().is_some()
    }

    /// Trace and outcome, one line each, vectors written with `a`'s labels.
    pub fn display(&self, a: &NormalJAlgebra) -> String {
        let mut out = String::new();
        for (k, s) in self.trace.iter().enumerate() {
            out.push_str(&format!("STEP {} {} {}\n", k + 1, s.rule, a.format_vector(&s.vector)));
        }
        match &self.status {
            CompletionStatus::Completed(s) => {
                out.push_str(&format!("COMPLETED dim {}\n", s.dim()));
                for v in s.basis() {
                    out.push_str(&format!("vector = {}\n", a.format_vector(v)));
                }
            }
            CompletionStatus::NotApplicable(why) => out.push_str(&format!("NOT-APPLICABLE {why}\n")),
            CompletionStatus::Failed(why) => out.push_str(&format!("FAILED {why}\n")),
        }
        out
    }
}

/// The invariants every completed result must satisfy.
pub fn completion_postconditions(a: &NormalJAlgebra, input: &Subspace<Q>, out: &Subspace<Q>) -> Vec<&'static str> {
    let mut bad = Vec::new();
    if !out.contains_subspace(input) {
        bad.push("contains-input");
    }
    if !a.alg().is_subalgebra(out) {
        bad.push("subalgebra");
    }
    if !is_totally_real(a, out) {
        bad.push("totally-real");
    }
    if out.dim() * 2 != a.dim() {
        bad.push("dimension");
    }
    if !a.nilradical().contains_subspace(out) {
        bad.push("in-nilradical");
    }
    bad
}

fn finish(a: &NormalJAlgebra, input: &Subspace<Q>, cur: Subspace<Q>, trace: Vec<Step>) -> CompletionResult {
    let bad = completion_postconditions(a, input, &cur);
    let status = if bad.is_empty() {
        CompletionStatus::Completed(cur)
    } else {
        CompletionStatus::Failed(format!("postconditions violated: {}", bad.join(", ")))
    };
    CompletionResult { status, trace }
}

fn omega_isotropic(a: &NormalJAlgebra, s: &Subspace<Q>) -> Result<bool> {
    let b = s.basis();
    for i in 0..b.len() {
        for k in i + 1..b.len() {
            if !a.omega(&b[i], &b[k])?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vectors of the nilradical ω-orthogonal to all of `s`.
fn omega_complement(a: &NormalJAlgebra, s: &Subspace<Q>) -> Result<Subspace<Q>> {
    let nil = a.nilradical().basis();
    let w = a.omega_form();
    // coefficients c with ω(Σ c_k n_k, v) = 0 for every basis vector v of s
    let rows: Vec<Vec<Q>> = s
        .basis()
        .iter()
        .map(|v| {
            let wv = w.mul_vec(v).expect("square");
            nil.iter().map(|n| n.iter().zip(&wv).fold(Q::zero(), |acc, (x, y)| acc + x * y)).collect()
        })
        .collect();
    let coeffs = if rows.is_empty() {
        (0..nil.len()).map(|i| crate::linalg::unit(nil.len(), i)).collect()
    } else {
        Matrix::from_rows(rows)?.kernel_basis()
    };
    let vs: Vec<Vec<Q>> = coeffs
        .iter()
        .map(|c| {
            (0..a.dim())
                .map(|t| c.iter().zip(nil).fold(Q::zero(), |acc, (x, n)| acc + x * &n[t]))
                .collect()
        })
        .collect();
    Ok(Subspace::span(a.dim(), &vs)?)
}

/// Greedy extension of a totally real subalgebra of the ball nilradical
/// to one of dimension `n`.
pub fn complete_ball(a: &NormalJAlgebra, s: &Subspace<Q>) -> Result<CompletionResult> {
    let DomainKind::Ball(n) = a.kind() else {
        return Err(TotallyRealError::WrongKind {
            op: "complete_ball",
            expected: "ball",
            found: a.kind(),
        });
    };
    check_input(a, s)?;
    let mut cur = s.clone();
    let mut trace = Vec::new();
    if omega_isotropic(a, s)? {
        while cur.dim() < n {
            let mut candidates: Vec<Vec<Q>> = a.nilradical().basis().to_vec();
            let comp = omega_complement(a, &cur)?;
            candidates.retain(|v| comp.contains(v));
            candidates.extend(comp.basis().iter().cloned());
            let next = candidates.into_iter().find_map(|v| {
                if cur.contains(&v) {
                    return None;
                }
                let ext = cur.with_vector(&v).ok()?;
                is_totally_real(a, &ext).then_some((v, ext))
            });
            match next {
                Some((v, ext)) => {
                    trace.push(Step { vector: v, rule: Rule::Isotropic });
                    cur = ext;
                }
                None => {
                    return Ok(CompletionResult {
                        status: CompletionStatus::Failed("no isotropic extension keeps the span totally real".into()),
                        trace,
                    })
                }
            }
        }
    } else {
        while cur.dim() < n {
            let next = a.nilradical().basis().iter().find_map(|v| {
                if cur.contains(v) {
                    return None;
                }
                let ext = cur.with_vector(v).ok()?;
                (is_totally_real(a, &ext) && a.alg().is_subalgebra(&ext)).then(|| (v.clone(), ext))
            });
            match next {
                Some((v, ext)) => {
                    trace.push(Step { vector: v, rule: Rule::Greedy });
                    cur = ext;
                }
                None => {
                    return Ok(CompletionResult {
                        status: CompletionStatus::Failed("no basis vector extends the span".into()),
                        trace,
                    })
                }
            }
        }
    }
    Ok(finish(a, s, cur, trace))
}

fn lie_ball_n(a: &NormalJAlgebra, op: &'static str) -> Result<usize> {
    match a.kind() {
        DomainKind::LieBall(n) => Ok(n),
        k => Err(TotallyRealError::WrongKind {
            op,
            expected: "lieball",
            found: k,
        }),
    }
}

/// The completion for the Lie ball, following the fibration over the
/// lower-dimensional nilradical.
pub fn complete_lie_ball(a: &NormalJAlgebra, s: &Subspace<Q>) -> Result<CompletionResult> {
    let n = lie_ball_n(a, "complete_lie_ball")?;
    check_input(a, s)?;
    let d = a.dim();
    let eta = a.alg().index("eta")?;
    let zeta = a.basis_vector("zeta")?;
    let xis: Vec<Vec<Q>> = (1..n - 1).map(|k| a.basis_vector(&format!("xi{k}"))).collect::<std::result::Result<_, _>>()?;
    let mut trace = Vec::new();

    let Some(x0) = s.basis().iter().find(|v| !v[eta].is_zero()) else {
        return Ok(CompletionResult {
            status: CompletionStatus::NotApplicable("subalgebra lies in the smaller nilradical".into()),
            trace,
        });
    };
    let c = x0[eta].clone();
    let x0: Vec<Q> = x0.iter().map(|x| x / &c).collect();
    trace.push(Step {
        vector: x0,
        rule: Rule::Normalize,
    });

    let mut cur = s.clone();
    if !cur.contains(&zeta) {
        cur = cur.with_vector(&zeta)?;
        trace.push(Step {
            vector: zeta.clone(),
            rule: Rule::AddCenter,
        });
        if !a.alg().is_subalgebra(&cur) || !is_totally_real(a, &cur) {
            return Ok(CompletionResult {
                status: CompletionStatus::Failed("adding the center broke the invariants".into()),
                trace,
            });
        }
    }

    // the η-free part projected to span{ξ_k, ζ} along the ξ'_k
    let small: Vec<usize> = (0..d).filter(|&i| i != eta).collect();
    let mut keep: Vec<usize> = xis.iter().map(|x| x.iter().position(|c| !c.is_zero()).expect("basis")).collect();
    keep.push(zeta.iter().position(|c| !c.is_zero()).expect("basis"));
    while cur.dim() < n {
        let eta_free = cur.intersect(&Subspace::coordinate(d, &small))?;
        let proj: Vec<Vec<Q>> = eta_free
            .basis()
            .iter()
            .map(|v| (0..d).map(|i| if keep.contains(&i) { v[i].clone() } else { Q::zero() }).collect())
            .collect();
        let proj = Subspace::span(d, &proj)?;
        let Some(missing) = xis.iter().find(|x| !proj.contains(x)) else {
            return Ok(CompletionResult {
                status: CompletionStatus::Failed("projection already contains every ξ_k".into()),
                trace,
            });
        };
        cur = cur.with_vector(missing)?;
        trace.push(Step {
            vector: missing.clone(),
            rule: Rule::MissingXi,
        });
        if !a.alg().is_subalgebra(&cur) || !is_totally_real(a, &cur) {
            return Ok(CompletionResult {
                status: CompletionStatus::Failed("extension by ξ broke the invariants".into()),
                trace,
            });
        }
    }
    Ok(finish(a, s, cur, trace))
}

/// Greedy completion for any kind: add the subalgebra generated by a basis
/// vector of the nilradical whenever it stays totally real.
pub fn complete_generic(a: &NormalJAlgebra, s: &Subspace<Q>) -> Result<CompletionResult> {
    check_input(a, s)?;
    let half = a.dim() / 2;
    let mut cur = s.clone();
    let mut trace = Vec::new();
    while cur.dim() < half {
        let mut next = None;
        for v in a.nilradical().basis() {
            if cur.contains(v) {
                continue;
            }
            let ext = a.alg().lie_generate(&cur.with_vector(v)?)?;
            if is_totally_real(a, &ext) {
                next = Some((v.clone(), ext));
                break;
            }
        }
        match next {
            Some((v, ext)) => {
                trace.push(Step {
                    vector: v,
                    rule: Rule::Generated,
                });
                cur = ext;
            }
            None => {
                return Ok(CompletionResult {
                    status: CompletionStatus::Failed("no basis vector generates a totally real extension".into()),
                    trace,
                })
            }
        }
    }
    Ok(finish(a, s, cur, trace))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stein,
    NotStein,
    Advisory,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Stein => "STEIN",
            Verdict::NotStein => "NOT-STEIN",
            Verdict::Advisory => "ADVISORY",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    ThmMain,
    PropNecViolated,
    PropSuffHolds,
    Inconclusive,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::ThmMain => "thm-main",
            Reason::PropNecViolated => "prop-nec-violated",
            Reason::PropSuffHolds => "prop-suff-holds",
            Reason::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteinVerdict {
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
    pub notes: Vec<String>,
}

impl fmt::Display for SteinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.verdict)?;
        let tags: Vec<String> = self.reasons.iter().map(ToString::to_string).collect();
        writeln!(f, "reasons: {}", tags.join(", "))?;
        for n in &self.notes {
            writeln!(f, "# {n}")?;
        }
        Ok(())
    }
}

/// Number of random domain points tried by the advisory orbit test.
pub const ORBIT_SAMPLES: usize = 40;

/// Points at which the advisory test evaluates the orbit: seeded random
/// domain points, and for the fiber domain the `Z₀(τ, α)` grid.
pub fn advisory_points(kind: DomainKind, seed: u64) -> Vec<Vec<crate::linalg::QI>> {
    let mut r = rng(seed);
    let mut pts = Vec::new();
    match kind {
        DomainKind::D5 => {
            for t in [-2i64, -1, 0, 1, 2] {
                let tau = Q::from_integer(t.into());
                let s = Q::one() + &tau * &tau;
                let alpha = Q::one() / (&s * &s) + Q::one();
                pts.push(z0(&tau, &alpha));
            }
            pts.extend((0..ORBIT_SAMPLES).map(|_| d5_point(&mut r)));
        }
        DomainKind::Siegel3 => pts.extend((0..ORBIT_SAMPLES).map(|_| siegel3_point(&mut r))),
        _ => {}
    }
    pts
}

/// Steinness of the quotient by a lattice in `exp(s)`: decided for the ball
/// and the Lie ball, advisory otherwise.
pub fn stein_decide(a: &NormalJAlgebra, s: &Subspace<Q>) -> Result<SteinVerdict> {
    if !a.nilradical().contains_subspace(s) {
        return Err(TotallyRealError::NotInNilradical);
    }
    let tr = is_totally_real(a, s);
    // a non totally real span stays so in every subalgebra containing it,
    // so only totally real input has to be closed already
    if tr && !a.alg().is_subalgebra(s) {
        return Err(TotallyRealError::NotSubalgebra);
    }
    match a.kind() {
        DomainKind::Ball(_) | DomainKind::LieBall(_) => Ok(SteinVerdict {
            verdict: if tr { Verdict::Stein } else { Verdict::NotStein },
            reasons: vec![Reason::ThmMain],
            notes: vec![format!("totally real: {tr}")],
        }),
        kind => {
            let mut notes = vec![format!("totally real: {tr}")];
            if tr && complete_generic(a, s)?.is_completed() {
                notes.push("greedy completion reached a maximal totally real subalgebra".into());
                return Ok(SteinVerdict {
                    verdict: Verdict::Advisory,
                    reasons: vec![Reason::PropSuffHolds],
                    notes,
                });
            }
            if a.realization().is_some() {
                let fields = fields_of(a, s.basis())?;
                for p in advisory_points(kind, 1) {
                    if !orbit_totally_real_at(&fields, &p)? {
                        notes.push(format!("orbit through {} is not totally real", crate::siegel::format_point(&p)));
                        return Ok(SteinVerdict {
                            verdict: Verdict::Advisory,
                            reasons: vec![Reason::PropNecViolated],
                            notes,
                        });
                    }
                }
            }
            Ok(SteinVerdict {
                verdict: Verdict::Advisory,
                reasons: vec![Reason::Inconclusive],
                notes,
            })
        }
    }
}
