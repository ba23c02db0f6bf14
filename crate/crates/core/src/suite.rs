//! The full verification report.
//!
//! Check ids start with a numeric group (`3.2-brackets-ball4`,
//! `5.2-normalizer`), so `filter` can select a group by prefix. Every
//! randomized sweep draws from its own stream derived from the seed.

use num_traits::{One, Zero};
use rand::Rng;

use crate::jalgebra::catalog::{ball, d5, lie_ball, siegel, MATRIX_TO_FIELD_BRACKET_SIGN};
use crate::jalgebra::{check_axioms, lieball_fibration_checks, realization_checks, NormalJAlgebra};
use crate::linalg::scalar::{gi, q, real};
use crate::linalg::{exp_nilpotent_affine, AffineField, Subspace, Q, QI};
use crate::random::{rand_nonzero_q, rand_q, rand_qi, rng, SeededRng};
use crate::report::Report;
use crate::siegel::chain::{trivialization_report, ChainPart, TrivializationChain};
use crate::siegel::sample::{ball_point, d5_point, rand_tau_alpha, sym3_point, z0_in_domain};
use crate::siegel::{
    b3_example_fields, d5_gamma_vectors, fields_of, gamma_b2_group_law_check, orbit_totally_real_at, stabilizer_solve,
    verify_trivialization_chain, y_tau, z0, GroupElement5, Stabilizer,
};
use crate::totally_real::{
    complete_ball, complete_lie_ball, completion_postconditions, is_totally_real, stein_decide, CompletionStatus, Reason,
    Verdict,
};

pub const DEFAULT_SEED: u64 = 1;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Independent stream for sweep `k`.
fn stream(seed: u64, k: u64) -> SeededRng {
    rng(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k))
}

/// `filter` is an id prefix (`5`, `5.2`) or one full check id.
pub fn matches_filter(id: &str, filter: &str) -> bool {
    if filter.contains('-') {
        return id == filter;
    }
    id.strip_prefix(filter)
        .is_some_and(|rest| rest.is_empty() || rest.starts_with('.') || rest.starts_with('-'))
}

struct Builder<'f> {
    report: Report,
    filter: Option<&'f str>,
}

impl Builder<'_> {
    fn wants(&self, section: &str) -> bool {
        self.filter
            .is_none_or(|f| matches_filter(section, f) || f.starts_with(&format!("{section}-")))
    }

    fn check(&mut self, id: impl Into<String>, f: impl FnOnce() -> Outcome) {
        let id = id.into();
        if self.filter.is_some_and(|flt| !matches_filter(&id, flt)) {
            return;
        }
        match f() {
            Ok(()) => self.report.push(id, true, ""),
            Err(w) => self.report.push(id, false, w),
        }
    }

    fn absorb(&mut self, r: Result<Report, String>, fallback_id: &str) {
        match r {
            Ok(r) => {
                for c in r.checks {
                    self.check(c.id, || if c.passed { Ok(()) } else { Err(c.detail) });
                }
            }
            Err(e) => self.check(fallback_id, || Err(e)),
        }
    }
}

/// Runs every check (or those matching `filter`) and returns the report
/// sorted by id.
pub fn paper_suite(seed: u64, filter: Option<&str>) -> Report {
    let mut b = Builder {
        report: Report::default(),
        filter,
    };
    if b.wants("3.1") {
        unit_ball_examples(&mut b, seed);
    }
    if b.wants("3.2") {
        unit_ball_algebra(&mut b);
    }
    if b.wants("3.3") {
        unit_ball_completion(&mut b, seed);
    }
    if b.wants("4.1") || b.wants("4.2") {
        lie_ball_algebra(&mut b);
    }
    if b.wants("4.3") {
        lie_ball_completion(&mut b, seed);
    }
    if b.wants("5.1") {
        siegel_algebra(&mut b);
    }
    if b.wants("5.2") {
        counterexample(&mut b, seed);
    }
    let mut r = b.report;
    r.checks.sort_by(|x, y| x.id.cmp(&y.id));
    r
}

// ---------------------------------------------------------------- tables

/// `[x, y] = Σ c z` relations as displayed, plus "all other brackets zero".
pub type Table = Vec<(String, String, Vec<(i64, String)>)>;

fn rel(x: &str, y: &str, rhs: &[(i64, &str)]) -> (String, String, Vec<(i64, String)>) {
    (x.into(), y.into(), rhs.iter().map(|(c, l)| (*c, l.to_string())).collect())
}

pub fn ball_table(n: usize) -> Table {
    let mut t = vec![rel("alpha", "zeta", &[(-2, "zeta")])];
    for k in 1..n {
        let (x, xp) = (format!("xi{k}"), format!("xi{k}p"));
        t.push(rel(&x, &xp, &[(1, "zeta")]));
        t.push(rel("alpha", &x, &[(-1, &x)]));
        t.push(rel("alpha", &xp, &[(-1, &xp)]));
    }
    t
}

pub fn lie_ball_table(n: usize) -> Table {
    let mut t = vec![
        rel("delta", "zeta", &[(-1, "zeta")]),
        rel("delta", "eta", &[(-1, "eta")]),
        rel("alpha", "zeta", &[(-1, "zeta")]),
        rel("alpha", "eta", &[(1, "eta")]),
    ];
    for k in 1..=n - 2 {
        let (x, xp) = (format!("xi{k}"), format!("xi{k}p"));
        t.push(rel(&x, &xp, &[(1, "zeta")]));
        t.push(rel("eta", &xp, &[(2, &x)]));
        t.push(rel("delta", &x, &[(-1, &x)]));
        t.push(rel("alpha", &xp, &[(-1, &xp)]));
    }
    t
}

/// The seven relations of the b2-representation on b3.
pub fn d5_cross_table() -> Table {
    vec![
        rel("alpha2", "xi32", &[(1, "xi32")]),
        rel("alpha2", "xi32p", &[(-1, "xi32p")]),
        rel("xi21", "xi31p", &[(-1, "xi32")]),
        rel("xi21", "xi32p", &[(-1, "xi31")]),
        rel("xi21p", "xi31", &[(1, "xi32")]),
        rel("xi21p", "xi32p", &[(-1, "xi31p")]),
        rel("zeta2", "xi32p", &[(2, "xi32")]),
    ]
}

/// Compares the listed relations, and zero for every other pair among `scope`
/// (all labels when `None`).
pub fn compare_table(a: &NormalJAlgebra, table: &Table, scope: Option<(&[&str], &[&str])>) -> Outcome {
    let vec_of = |terms: &[(i64, String)]| {
        let t: Vec<(Q, &str)> = terms.iter().map(|(c, l)| (q(*c), l.as_str())).collect();
        a.vector(&t).map_err(e2s)
    };
    let br = |x: &str, y: &str| -> Result<Vec<Q>, String> {
        a.alg()
            .bracket(&a.basis_vector(x).map_err(e2s)?, &a.basis_vector(y).map_err(e2s)?)
            .map_err(e2s)
    };
    for (x, y, rhs) in table {
        let got = br(x, y)?;
        if got != vec_of(rhs)? {
            return Err(format!("[{x}, {y}] = {}", a.format_vector(&got)));
        }
    }
    let listed = |x: &str, y: &str| table.iter().any(|(p, r, _)| (p == x && r == y) || (p == y && r == x));
    let labels: Vec<String> = a.alg().labels().to_vec();
    let (left, right): (Vec<&str>, Vec<&str>) = match scope {
        Some((l, r)) => (l.to_vec(), r.to_vec()),
        None => (labels.iter().map(String::as_str).collect(), labels.iter().map(String::as_str).collect()),
    };
    for x in &left {
        for y in &right {
            if x == y || listed(x, y) {
                continue;
            }
            let v = br(x, y)?;
            if !v.iter().all(Zero::is_zero) {
                return Err(format!("[{x}, {y}] = {} should vanish", a.format_vector(&v)));
            }
        }
    }
    Ok(())
}

/// Flips the sign of each nonzero structure constant in turn; every flip
/// must break Jacobi or another axiom.
pub fn sign_flips_caught(a: &NormalJAlgebra) -> Outcome {
    let pairs: Vec<(usize, usize)> = a.alg().structure_constants().map(|(i, j, _)| (i, j)).collect();
    for (i, j) in pairs {
        let neg: Vec<Q> = a.alg().basis_bracket(i, j).iter().map(|x| -x.clone()).collect();
        let bad = a.with_algebra(a.alg().with_bracket_unchecked(i, j, &neg));
        if check_axioms(&bad).all_passed() {
            return Err(format!("flipping [{}, {}] went unnoticed", a.alg().label(i), a.alg().label(j)));
        }
    }
    Ok(())
}

/// `[x, y] = ω(x, y) ζ / λ(ζ)` for all nilradical basis pairs.
pub fn heisenberg_relation(a: &NormalJAlgebra) -> Outcome {
    let zeta = a.basis_vector("zeta").map_err(e2s)?;
    let lz = a.lambda_of(&zeta);
    for x in a.nilradical().basis() {
        for y in a.nilradical().basis() {
            let w = a.omega(x, y).map_err(e2s)?;
            let rhs: Vec<Q> = zeta.iter().map(|z| z * &w / &lz).collect();
            let lhs = a.alg().bracket(x, y).map_err(e2s)?;
            if lhs != rhs {
                return Err(format!("[{}, {}] = {}", a.format_vector(x), a.format_vector(y), a.format_vector(&lhs)));
            }
        }
    }
    Ok(())
}

fn axioms(a: &NormalJAlgebra) -> Outcome {
    let r = check_axioms(a);
    ensure(r.all_passed(), || r.to_string().trim_end().replace('\n', "; "))
}

fn realization(a: &NormalJAlgebra) -> Outcome {
    let r = realization_checks(a);
    ensure(r.all_passed(), || r.to_string().trim_end().replace('\n', "; "))
}

// ---------------------------------------------------------------- unit ball

/// The nonabelian Heisenberg subalgebra of the b3 example.
pub fn heisenberg_example(b3: &NormalJAlgebra) -> Result<Subspace<Q>, String> {
    b3.span(&[&[(q(2), "xi1")], &[(q(2), "xi1p"), (q(2), "xi2p")], &[(q(1), "zeta")]])
        .map_err(e2s)
}

fn unit_ball_examples(b: &mut Builder, seed: u64) {
    let fs = b3_example_fields();
    b.check("3.1-b3-bracket", || {
        let [x1, x2, x3] = &fs;
        let l = x1.bracket(x2).map_err(e2s)?;
        ensure(l == x3.scale(&gi(4, 0)), || "[x1, x2] != 4 x3".into())?;
        let z = AffineField::zero(3);
        ensure(x1.bracket(x3).map_err(e2s)? == z && x2.bracket(x3).map_err(e2s)? == z, || "x3 not central".into())
    });
    b.check("3.1-b3-fields-from-algebra", || {
        let b3 = ball(3).map_err(e2s)?;
        let r = b3.realization().ok_or("ball 3 has no realization")?;
        let v1 = b3.vector(&[(q(2), "xi1")]).map_err(e2s)?;
        let v2 = b3.vector(&[(q(2), "xi1p"), (q(2), "xi2p")]).map_err(e2s)?;
        let v3 = b3.basis_vector("zeta").map_err(e2s)?;
        ensure(
            [r.field_of(&v1), r.field_of(&v2), r.field_of(&v3)] == fs,
            || "catalog fields differ from the example".into(),
        )
    });
    b.check("3.1-b3-totally-real", || {
        let mut g = stream(seed, 1);
        for _ in 0..100 {
            let p = ball_point(&mut g, 3);
            if !orbit_totally_real_at(&fs, &p).map_err(e2s)? {
                return Err(format!("dependent at {}", crate::siegel::format_point(&p)));
            }
        }
        Ok(())
    });
    let gamma = gamma_b2_group_law_check(seed, 50);
    b.absorb(Ok(gamma), "3.1-gamma");
    b.check("3.1-stein-heisenberg", || {
        let b3 = ball(3).map_err(e2s)?;
        let h = heisenberg_example(&b3)?;
        ensure(!b3.alg().is_abelian_subspace(&h), || "example is abelian".into())?;
        let v = stein_decide(&b3, &h).map_err(e2s)?;
        ensure(v.verdict == Verdict::Stein, || format!("verdict {}", v.verdict))
    });
}

fn unit_ball_algebra(b: &mut Builder) {
    for n in 2..=8 {
        b.check(format!("3.2-axioms-ball{n}"), || axioms(&ball(n).map_err(e2s)?));
    }
    for n in 2..=6 {
        b.check(format!("3.2-brackets-ball{n}"), || compare_table(&ball(n).map_err(e2s)?, &ball_table(n), None));
        b.check(format!("3.2-heisenberg-ball{n}"), || heisenberg_relation(&ball(n).map_err(e2s)?));
    }
    for n in 2..=5 {
        b.check(format!("3.2-realization-ball{n}"), || realization(&ball(n).map_err(e2s)?));
    }
    b.check("3.2-sign-flips-ball4", || sign_flips_caught(&ball(4).map_err(e2s)?));
}

fn random_nil_vector(a: &NormalJAlgebra, r: &mut SeededRng, only: &[usize]) -> Vec<Q> {
    let mut v = vec![Q::zero(); a.dim()];
    for &i in only {
        if r.gen_bool(0.6) {
            v[i] = rand_q(r, 3);
        }
    }
    v
}

/// A random totally real subalgebra of the nilradical of the ball algebra,
/// generated by one to three small vectors. About a third of the draws use
/// only the ξ's and so come out abelian.
pub fn random_totally_real_subalgebra(a: &NormalJAlgebra, r: &mut SeededRng) -> Subspace<Q> {
    let nil: Vec<usize> = (1..a.dim()).collect();
    let xis: Vec<usize> = (1..a.dim() / 2).collect();
    loop {
        let k = r.gen_range(1..=3);
        let pool = if r.gen_bool(0.3) { &xis } else { &nil };
        let gens: Vec<Vec<Q>> = (0..k).map(|_| random_nil_vector(a, r, pool)).collect();
        let s = Subspace::span(a.dim(), &gens).expect("dimension");
        let s = a.alg().lie_generate(&s).expect("dimension");
        if is_totally_real(a, &s) {
            return s;
        }
    }
}

pub const COMPLETION_SEEDS: usize = 200;

fn unit_ball_completion(b: &mut Builder, seed: u64) {
    for n in 2..=6 {
        b.check(format!("3.3-completion-ball{n}"), || {
            let a = ball(n).map_err(e2s)?;
            let mut g = stream(seed, 100 + n as u64);
            for _ in 0..COMPLETION_SEEDS {
                let s = random_totally_real_subalgebra(&a, &mut g);
                let res = complete_ball(&a, &s).map_err(e2s)?;
                let out = res.result().ok_or_else(|| format!("{:?} on {}", res.status, fmt_span(&a, &s)))?;
                let bad = completion_postconditions(&a, &s, out);
                ensure(bad.is_empty(), || format!("{} on {}", bad.join(", "), fmt_span(&a, &s)))?;
                if a.alg().is_abelian_subspace(&s) && !a.alg().is_abelian_subspace(out) {
                    return Err(format!("abelian input {} completed to a nonabelian algebra", fmt_span(&a, &s)));
                }
            }
            Ok(())
        });
    }
    b.check("3.3-not-stein-xi1-xi1p", || {
        let b2 = ball(2).map_err(e2s)?;
        let v = stein_decide(&b2, &b2.span_labels(&["xi1", "xi1p"]).map_err(e2s)?).map_err(e2s)?;
        ensure(v.verdict == Verdict::NotStein, || format!("verdict {}", v.verdict))
    });
}

fn fmt_span(a: &NormalJAlgebra, s: &Subspace<Q>) -> String {
    let vs: Vec<String> = s.basis().iter().map(|v| a.format_vector(v)).collect();
    format!("span{{{}}}", vs.join(", "))
}

// ---------------------------------------------------------------- Lie ball

fn lie_ball_algebra(b: &mut Builder) {
    for n in 3..=8 {
        b.check(format!("4.1-axioms-lieball{n}"), || axioms(&lie_ball(n).map_err(e2s)?));
    }
    for n in 3..=6 {
        b.check(format!("4.1-brackets-lieball{n}"), || {
            compare_table(&lie_ball(n).map_err(e2s)?, &lie_ball_table(n), None)
        });
    }
    for n in 3..=5 {
        b.check(format!("4.1-realization-lieball{n}"), || realization(&lie_ball(n).map_err(e2s)?));
    }
    b.check("4.1-sign-flips-lieball4", || sign_flips_caught(&lie_ball(4).map_err(e2s)?));
    for n in 3..=6 {
        b.check(format!("4.2-fibration-lieball{n}"), || {
            let r = lieball_fibration_checks(&lie_ball(n).map_err(e2s)?).map_err(e2s)?;
            ensure(r.all_passed(), || r.to_string().trim_end().replace('\n', "; "))
        });
    }
}

fn lie_ball_completion(b: &mut Builder, seed: u64) {
    let l3 = match lie_ball(3) {
        Ok(a) => a,
        Err(e) => return b.check("4.3-catalog", || Err(e.to_string())),
    };
    let v = |terms: &[(Q, &str)]| l3.vector(terms).map_err(e2s);
    let trace = |input: Vec<Q>| -> Outcome {
        let s = Subspace::span(l3.dim(), &[input]).map_err(e2s)?;
        let r = complete_lie_ball(&l3, &s).map_err(e2s)?;
        let out = r.result().ok_or_else(|| format!("{:?}", r.status))?;
        ensure(out.dim() == 3, || format!("stopped at dimension {}", out.dim()))?;
        let bad = completion_postconditions(&l3, &s, out);
        ensure(bad.is_empty(), || bad.join(", "))
    };
    b.check("4.3-completion-eta", || trace(v(&[(q(1), "eta")])?));
    b.check("4.3-completion-xi1p-eta", || trace(v(&[(q(1), "xi1p"), (q(1), "eta")])?));
    b.check("4.3-completion-xi1p-not-applicable", || {
        let r = complete_lie_ball(&l3, &l3.span_labels(&["xi1p"]).map_err(e2s)?).map_err(e2s)?;
        ensure(matches!(r.status, CompletionStatus::NotApplicable(_)), || format!("{:?}", r.status))
    });
    b.check("4.3-obstruction", || {
        let xi1p = v(&[(q(1), "xi1p")])?;
        let zeta = v(&[(q(1), "zeta")])?;
        let xi1 = v(&[(q(1), "xi1")])?;
        let mut g = stream(seed, 43);
        for _ in 0..50 {
            let (p, r, c, d) = (rand_q(&mut g, 5), rand_q(&mut g, 5), rand_q(&mut g, 5), rand_nonzero_q(&mut g, 5));
            let x = v(&[(p, "xi1"), (r, "xi1p"), (c, "zeta"), (d, "eta")])?;
            let s = Subspace::span(l3.dim(), &[xi1p.clone(), x.clone()]).map_err(e2s)?;
            let gen = l3.alg().lie_generate(&s).map_err(e2s)?;
            ensure(gen.contains(&zeta) && gen.contains(&xi1), || {
                format!("generated algebra of xi1p, {} misses zeta or xi1", l3.format_vector(&x))
            })?;
            ensure(!is_totally_real(&l3, &gen), || "generated algebra is totally real".into())?;
        }
        Ok(())
    });
    b.check("4.3-stein-xi1p", || {
        let r = stein_decide(&l3, &l3.span_labels(&["xi1p"]).map_err(e2s)?).map_err(e2s)?;
        ensure(r.verdict == Verdict::Stein && r.reasons == [Reason::ThmMain], || r.to_string())
    });
    b.check("4.3-not-stein-xi1-xi1p", || {
        let r = stein_decide(&l3, &l3.span_labels(&["xi1", "xi1p"]).map_err(e2s)?).map_err(e2s)?;
        ensure(r.verdict == Verdict::NotStein, || r.to_string())
    });
}

// ---------------------------------------------------------------- Siegel

/// Fields of the D₅ basis as displayed, in the coordinates
/// (z11, z12, z13, z22, z23, z33).
pub fn d5_field_table(label: &str) -> Option<AffineField> {
    type Terms = (Vec<(usize, usize, QI)>, Vec<(usize, QI)>);
    let one = gi(1, 0);
    let two = gi(2, 0);
    let (lin, cst): Terms = match label {
        "zeta3" => (vec![], vec![(5, gi(-2, 0))]),
        "alpha3" => (vec![(2, 2, one.clone()), (4, 4, one), (5, 5, two)], vec![]),
        "xi31" => (vec![], vec![(2, one)]),
        "xi31p" => (vec![(2, 0, one.clone()), (4, 1, one), (5, 2, two)], vec![]),
        "xi32" => (vec![], vec![(4, one)]),
        "xi32p" => (vec![(2, 1, one.clone()), (4, 3, one), (5, 4, two)], vec![]),
        "zeta2" => (vec![], vec![(3, gi(-2, 0))]),
        "alpha2" => (vec![(1, 1, one.clone()), (3, 3, two), (4, 4, one)], vec![]),
        "xi21" => (vec![], vec![(1, one)]),
        "xi21p" => (vec![(1, 0, one.clone()), (3, 1, two), (4, 2, one)], vec![]),
        _ => return None,
    };
    Some(AffineField::from_terms(6, &lin, &cst))
}

const B3_LABELS: [&str; 6] = ["alpha3", "xi31", "xi32", "xi31p", "xi32p", "zeta3"];
const B2_LABELS: [&str; 4] = ["alpha2", "xi21", "xi21p", "zeta2"];

fn siegel_algebra(b: &mut Builder) {
    b.check("5.1-axioms-siegel3", || axioms(&siegel(3).map_err(e2s)?));
    b.check("5.1-axioms-d5", || axioms(&d5().map_err(e2s)?));
    b.check("5.1-realization-siegel3", || realization(&siegel(3).map_err(e2s)?));
    b.check("5.1-realization-d5", || realization(&d5().map_err(e2s)?));
    b.check("5.1-brackets-d5", || {
        compare_table(&d5().map_err(e2s)?, &d5_cross_table(), Some((&B2_LABELS, &B3_LABELS)))
    });
    b.check("5.1-fields-d5", || {
        let a = d5().map_err(e2s)?;
        let r = a.realization().ok_or("d5 has no realization")?;
        for (i, l) in a.alg().labels().iter().enumerate() {
            let want = d5_field_table(l).ok_or_else(|| format!("unexpected label {l}"))?;
            ensure(r.fields[i] == want, || format!("field of {l} differs"))?;
        }
        Ok(())
    });
    b.check("5.1-field-bracket-sign", || {
        let a = d5().map_err(e2s)?;
        let r = a.realization().ok_or("d5 has no realization")?;
        let sign = gi(MATRIX_TO_FIELD_BRACKET_SIGN, 0);
        for i in 0..a.dim() {
            for j in i + 1..a.dim() {
                let m = a.alg().basis_bracket(i, j);
                let f = r.fields[i].bracket(&r.fields[j]).map_err(e2s)?;
                ensure(f == r.field_of(&m).scale(&sign), || {
                    format!("[{}, {}]", a.alg().label(i), a.alg().label(j))
                })?;
            }
        }
        Ok(())
    });
    b.check("5.1-sign-flips-siegel3", || sign_flips_caught(&siegel(3).map_err(e2s)?));
    b.check("5.1-sign-flips-d5", || sign_flips_caught(&d5().map_err(e2s)?));
}

/// The five-dimensional normalizer of n_Γ + ℝ y_τ inside the nilradical.
pub fn displayed_normalizer(a: &NormalJAlgebra) -> Result<Subspace<Q>, String> {
    a.span(&[
        &[(q(1), "xi31p"), (q(1), "xi21")],
        &[(q(-1), "xi31"), (q(1), "xi21p")],
        &[(q(1), "xi32")],
        &[(q(1), "zeta3")],
        &[(q(1), "zeta2")],
    ])
    .map_err(e2s)
}

fn rand_group<R: Rng>(g: &mut R) -> GroupElement5 {
    GroupElement5::new(rand_qi(g, 5), rand_qi(g, 5), rand_qi(g, 5))
}

fn counterexample(b: &mut Builder, seed: u64) {
    let a = match d5() {
        Ok(a) => a,
        Err(e) => return b.check("5.2-catalog", || Err(e.to_string())),
    };
    let xs = match d5_gamma_vectors(&a) {
        Ok(x) => x,
        Err(e) => return b.check("5.2-generators", || Err(e.to_string())),
    };
    let ng = Subspace::span(a.dim(), &xs).expect("dimension");

    b.check("5.2-generator-bracket", || {
        ensure(a.alg().bracket(&xs[0], &xs[1]).map_err(e2s)? == xs[2], || "[x1, x2] != x3".into())?;
        let f = fields_of(&a, &xs).map_err(e2s)?;
        let sign = gi(MATRIX_TO_FIELD_BRACKET_SIGN, 0);
        ensure(f[0].bracket(&f[1]).map_err(e2s)? == f[2].scale(&sign), || "field bracket sign".into())
    });
    b.check("5.2-generators-totally-real", || {
        ensure(is_totally_real(&a, &ng) && a.alg().is_subalgebra(&ng), || "n_Gamma".into())
    });
    b.check("5.2-centralizer", || {
        let mut g = stream(seed, 52);
        for _ in 0..20 {
            let tau = rand_q(&mut g, 9);
            let y = y_tau(&a, &tau).map_err(e2s)?;
            let c = a.alg().centralizer_within(a.nilradical(), &ng).map_err(e2s)?;
            ensure(c.contains(&y), || format!("y_tau not central at tau = {tau}"))?;
        }
        Ok(())
    });
    b.check("5.2-normalizer", || {
        let want = displayed_normalizer(&a)?;
        let mut g = stream(seed, 53);
        for _ in 0..20 {
            let tau = rand_q(&mut g, 9);
            let ext = ng.with_vector(&y_tau(&a, &tau).map_err(e2s)?).map_err(e2s)?;
            ensure(is_totally_real(&a, &ext) && a.alg().is_subalgebra(&ext), || format!("extension at tau = {tau}"))?;
            let n = a.alg().normalizer_within(a.nilradical(), &ext).map_err(e2s)?;
            ensure(n == want, || format!("normalizer at tau = {tau} is {}", fmt_span(&a, &n)))?;
        }
        Ok(())
    });
    b.check("5.2-normalizer-not-totally-real", || {
        ensure(!is_totally_real(&a, &displayed_normalizer(&a)?), || "normalizer is totally real".into())
    });
    b.check("5.2-z0-dependent", || {
        let mut g = stream(seed, 54);
        let f3 = fields_of(&a, &xs).map_err(e2s)?;
        for _ in 0..20 {
            let (tau, alpha) = rand_tau_alpha(&mut g);
            ensure(z0_in_domain(&tau, &alpha), || "Z0 outside the domain".into())?;
            let mut vs = xs.to_vec();
            vs.push(y_tau(&a, &tau).map_err(e2s)?);
            let f4 = fields_of(&a, &vs).map_err(e2s)?;
            let p = z0(&tau, &alpha);
            ensure(!orbit_totally_real_at(&f4, &p).map_err(e2s)?, || {
                format!("independent at tau = {tau}, alpha = {alpha}")
            })?;
            ensure(orbit_totally_real_at(&f3, &p).map_err(e2s)?, || "x1, x2, x3 dependent at Z0".into())?;
        }
        Ok(())
    });
    b.check("5.2-orbits-totally-real", || {
        let f3 = fields_of(&a, &xs).map_err(e2s)?;
        let mut g = stream(seed, 55);
        for _ in 0..100 {
            let z = d5_point(&mut g);
            ensure(orbit_totally_real_at(&f3, &z).map_err(e2s)?, || {
                format!("dependent at {}", crate::siegel::format_point(&z))
            })?;
        }
        Ok(())
    });
    b.check("5.2-group-closure", || {
        let mut g = stream(seed, 56);
        for _ in 0..50 {
            let (s, t) = (rand_group(&mut g), rand_group(&mut g));
            let st = s.compose(&t).ok_or("product leaves the family")?;
            let z = sym3_point(&mut g);
            ensure(st.apply(&z).map_err(e2s)? == s.apply(&t.apply(&z).map_err(e2s)?).map_err(e2s)?, || {
                "action of the product".into()
            })?;
        }
        Ok(())
    });
    b.check("5.2-group-unipotent", || {
        let mut g = stream(seed, 57);
        (0..50).try_for_each(|_| ensure(rand_group(&mut g).is_unipotent(), || "not unipotent".into()))
    });
    b.check("5.2-group-det", || {
        let mut g = stream(seed, 58);
        for _ in 0..50 {
            let s = rand_group(&mut g);
            ensure(s.matrix().det().map_err(e2s)? == QI::one(), || "det != 1".into())?;
            ensure(s.affine_map().map_err(e2s)?.jacobian_det() == QI::one(), || "jacobian != 1".into())?;
        }
        Ok(())
    });
    b.check("5.2-group-action", || {
        ensure(crate::siegel::sym_action_displayed() == crate::siegel::sym_action_block(), || {
            "displayed action differs from A Z A^t + translation".into()
        })?;
        let mut g = stream(seed, 59);
        for _ in 0..50 {
            let s = rand_group(&mut g);
            let z = sym3_point(&mut g);
            ensure(s.apply(&z).map_err(e2s)? == s.apply_block(&z).map_err(e2s)?, || "pointwise mismatch".into())?;
        }
        Ok(())
    });
    b.check("5.2-group-flows", || {
        let f = fields_of(&a, &xs).map_err(e2s)?;
        let mut g = stream(seed, 60);
        for (k, field) in f.iter().enumerate() {
            let t = real(rand_nonzero_q(&mut g, 5));
            let mut p = [QI::zero(), QI::zero(), QI::zero()];
            p[k] = t.clone();
            let flow = exp_nilpotent_affine(field, &t).map_err(e2s)?;
            let s = GroupElement5::new(p[0].clone(), p[1].clone(), p[2].clone());
            let z = sym3_point(&mut g);
            ensure(flow.apply(&z).map_err(e2s)? == s.apply(&z).map_err(e2s)?, || format!("direction {}", k + 1))?;
        }
        Ok(())
    });
    b.check("5.2-freeness-z0", || {
        let s = stabilizer_solve(&z0(&q(0), &q(2))).map_err(e2s)?;
        ensure(matches!(s, Stabilizer::Trivial { .. }), || format!("{s:?}"))
    });
    b.check("5.2-freeness-samples", || {
        let mut g = stream(seed, 61);
        for _ in 0..100 {
            let z = sym3_point(&mut g);
            let s = stabilizer_solve(&z).map_err(e2s)?;
            ensure(s.is_trivial(), || format!("{s:?} at {}", crate::siegel::format_point(&z)))?;
        }
        Ok(())
    });
    b.absorb(trivialization_report().map_err(e2s), "5.2-chain");
    b.check("5.2-chain-mutations", || {
        let chain = TrivializationChain::displayed();
        let mut g = stream(seed, 62);
        for part in ChainPart::ALL {
            let delta = rand_nonzero_q(&mut g, 7);
            let r = verify_trivialization_chain(&chain.mutated(part, &delta)).map_err(e2s)?;
            let c = r.get(part.check_id()).ok_or_else(|| format!("no check {}", part.check_id()))?;
            ensure(!c.passed, || format!("mutation of {part:?} went unnoticed"))?;
        }
        Ok(())
    });
    b.check("5.2-stein-advisory", || {
        let v = stein_decide(&a, &ng).map_err(e2s)?;
        ensure(v.verdict == Verdict::Advisory && v.reasons == [Reason::Inconclusive], || v.to_string())?;
        let ext = ng.with_vector(&y_tau(&a, &q(0)).map_err(e2s)?).map_err(e2s)?;
        let v = stein_decide(&a, &ext).map_err(e2s)?;
        ensure(v.verdict == Verdict::Advisory && v.reasons == [Reason::PropNecViolated], || v.to_string())
    });
}
