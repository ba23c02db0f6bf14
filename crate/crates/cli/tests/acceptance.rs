//! Acceptance criteria, one line per criterion:
//! `ACCEPTANCE <k> <PASS|FAIL> <title>`, followed by the reason on failure.
//! Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jalg::jalgebra::catalog::{ball, catalog_make, d5, lie_ball, parse_catalog_spec, siegel};
use jalg::jalgebra::{check_axioms, NormalJAlgebra};
use jalg::linalg::scalar::{gi, q, qf, real};
use jalg::linalg::{AffineField, Matrix, Poly, Subspace, Q, QI};
use jalg::random::{rand_nonzero_q, rand_q, rand_qi, rng, SeededRng};
use jalg::siegel::chain::{ChainPart, TrivializationChain};
use jalg::siegel::sample::{ball_point, in_ball, rand_tau_alpha, sym3_point, z0_in_domain};
use jalg::siegel::{
    b3_example_fields, bezout_trivialize, d5_gamma_vectors, fields_of, stabilizer_solve, verify_trivialization_chain, y_tau, z0,
    GroupElement5,
};
use jalg::totally_real::{complete_ball, complete_lie_ball, stein_decide, CompletionStatus, Verdict};
use num_traits::{One, Zero};
use rand::Rng;

type Outcome = Result<(), String>;
type Criterion = fn() -> Outcome;
/// `(x, y, [x, y])` as integer combinations of labels.
type Entry<'a> = (&'a str, &'a str, &'a [(i64, &'a str)]);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sp(a: &NormalJAlgebra, vs: &[Vec<Q>]) -> Subspace<Q> {
    Subspace::span(a.dim(), vs).unwrap()
}

// independent oracles

fn tr_oracle(a: &NormalJAlgebra, x: &Subspace<Q>) -> bool {
    let js: Vec<Vec<Q>> = x.basis().iter().map(|v| a.apply_j(v)).collect();
    x.intersect(&sp(a, &js)).unwrap().is_zero()
}

fn closed_oracle(a: &NormalJAlgebra, x: &Subspace<Q>) -> bool {
    let b = x.basis();
    b.iter().all(|u| b.iter().all(|v| x.contains(&a.alg().bracket(u, v).unwrap())))
}

fn abelian_oracle(a: &NormalJAlgebra, x: &Subspace<Q>) -> bool {
    let b = x.basis();
    b.iter().all(|u| b.iter().all(|v| a.alg().bracket(u, v).unwrap().iter().all(Zero::is_zero)))
}

/// Rank of field values at `p` via Gaussian elimination on the complex matrix.
fn field_rank(fields: &[AffineField], p: &[QI]) -> usize {
    let cols: Vec<Vec<QI>> = fields.iter().map(|f| f.eval(p).unwrap()).collect();
    Matrix::from_columns(p.len(), &cols).unwrap().rank()
}

// 1

fn criterion_1() -> Outcome {
    let mut specs: Vec<String> = (2..=8).map(|n| format!("ball:{n}")).collect();
    specs.extend((3..=8).map(|n| format!("lieball:{n}")));
    specs.extend(["siegel:3".to_string(), "d5".to_string()]);
    for spec in specs {
        let t = Instant::now();
        let (k, n) = parse_catalog_spec(&spec).map_err(s)?;
        let a = catalog_make(k, n).map_err(s)?;
        let r = check_axioms(&a);
        let dt = t.elapsed();
        ensure(r.all_passed(), || format!("{spec}: {:?}", r.failed_names()))?;
        ensure(dt < Duration::from_secs(1), || format!("{spec} took {dt:?}"))?;
    }
    Ok(())
}

// 2

fn bracket_is(a: &NormalJAlgebra, x: &str, y: &str, rhs: &[(i64, &str)]) -> Outcome {
    let lhs = a.alg().bracket(&a.basis_vector(x).map_err(s)?, &a.basis_vector(y).map_err(s)?).map_err(s)?;
    let t: Vec<(Q, &str)> = rhs.iter().map(|(c, l)| (q(*c), *l)).collect();
    ensure(lhs == a.vector(&t).map_err(s)?, || format!("{}: [{x}, {y}] = {}", a.name(), a.format_vector(&lhs)))
}

fn rest_vanishes(a: &NormalJAlgebra, left: &[String], right: &[String], listed: &[(String, String)]) -> Outcome {
    for x in left {
        for y in right {
            if x == y || listed.iter().any(|(p, r)| (p == x && r == y) || (p == y && r == x)) {
                continue;
            }
            let v = a.alg().bracket(&a.basis_vector(x).unwrap(), &a.basis_vector(y).unwrap()).unwrap();
            ensure(v.iter().all(Zero::is_zero), || format!("{}: [{x}, {y}] should vanish", a.name()))?;
        }
    }
    Ok(())
}

fn flips_caught(a: &NormalJAlgebra) -> Outcome {
    let d = a.dim();
    for i in 0..d {
        for j in i + 1..d {
            let v = a.alg().basis_bracket(i, j);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let neg: Vec<Q> = v.iter().map(|x| -x.clone()).collect();
            let bad = a.with_algebra(a.alg().with_bracket_unchecked(i, j, &neg));
            let caught = bad.alg().jacobi_defect().is_some() || !check_axioms(&bad).all_passed();
            ensure(caught, || format!("{}: flipped [{}, {}] undetected", a.name(), a.alg().label(i), a.alg().label(j)))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for n in 2..=6 {
        let a = ball(n).map_err(s)?;
        let mut listed = vec![("alpha".to_string(), "zeta".to_string())];
        bracket_is(&a, "alpha", "zeta", &[(-2, "zeta")])?;
        for k in 1..n {
            let (x, xp) = (format!("xi{k}"), format!("xi{k}p"));
            bracket_is(&a, &x, &xp, &[(1, "zeta")])?;
            bracket_is(&a, "alpha", &x, &[(-1, &x)])?;
            bracket_is(&a, "alpha", &xp, &[(-1, &xp)])?;
            listed.extend([(x.clone(), xp.clone()), ("alpha".into(), x), ("alpha".into(), xp)]);
        }
        let all = a.alg().labels().to_vec();
        rest_vanishes(&a, &all, &all, &listed)?;
    }
    for n in 3..=6 {
        let a = lie_ball(n).map_err(s)?;
        bracket_is(&a, "delta", "zeta", &[(-1, "zeta")])?;
        bracket_is(&a, "delta", "eta", &[(-1, "eta")])?;
        bracket_is(&a, "alpha", "zeta", &[(-1, "zeta")])?;
        bracket_is(&a, "alpha", "eta", &[(1, "eta")])?;
        let mut listed: Vec<(String, String)> =
            [("delta", "zeta"), ("delta", "eta"), ("alpha", "zeta"), ("alpha", "eta")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        for k in 1..=n - 2 {
            let (x, xp) = (format!("xi{k}"), format!("xi{k}p"));
            bracket_is(&a, &x, &xp, &[(1, "zeta")])?;
            bracket_is(&a, "eta", &xp, &[(2, &x)])?;
            bracket_is(&a, "delta", &x, &[(-1, &x)])?;
            bracket_is(&a, "alpha", &xp, &[(-1, &xp)])?;
            listed.extend([(x.clone(), xp.clone()), ("eta".into(), xp.clone()), ("delta".into(), x), ("alpha".into(), xp)]);
        }
        let all = a.alg().labels().to_vec();
        rest_vanishes(&a, &all, &all, &listed)?;
    }
    let a = d5().map_err(s)?;
    let seven: [Entry; 7] = [
        ("alpha2", "xi32", &[(1, "xi32")]),
        ("alpha2", "xi32p", &[(-1, "xi32p")]),
        ("xi21", "xi31p", &[(-1, "xi32")]),
        ("xi21", "xi32p", &[(-1, "xi31")]),
        ("xi21p", "xi31", &[(1, "xi32")]),
        ("xi21p", "xi32p", &[(-1, "xi31p")]),
        ("zeta2", "xi32p", &[(2, "xi32")]),
    ];
    for (x, y, rhs) in seven {
        bracket_is(&a, x, y, rhs)?;
    }
    let b2: Vec<String> = ["alpha2", "xi21", "xi21p", "zeta2"].iter().map(|x| x.to_string()).collect();
    let b3: Vec<String> = ["alpha3", "xi31", "xi32", "xi31p", "xi32p", "zeta3"].iter().map(|x| x.to_string()).collect();
    let listed: Vec<(String, String)> = seven.iter().map(|(x, y, _)| (x.to_string(), y.to_string())).collect();
    rest_vanishes(&a, &b2, &b3, &listed)?;
    for a in [ball(4).map_err(s)?, lie_ball(4).map_err(s)?, siegel(3).map_err(s)?, d5().map_err(s)?] {
        flips_caught(&a)?;
    }
    Ok(())
}

// 3

fn criterion_3() -> Outcome {
    for n in 2..=6 {
        let a = ball(n).map_err(s)?;
        let zeta = a.basis_vector("zeta").map_err(s)?;
        let lz = a.lambda_of(&zeta);
        for x in a.nilradical().basis() {
            for y in a.nilradical().basis() {
                let br = a.alg().bracket(x, y).map_err(s)?;
                // ω(x, y) = λ([x, y]) read off directly
                let w = a.lambda_of(&br);
                ensure(a.omega(x, y).map_err(s)? == w, || "omega differs from lambda of the bracket".into())?;
                let rhs: Vec<Q> = zeta.iter().map(|z| z * &w / &lz).collect();
                ensure(br == rhs, || format!("ball{n}: [{}, {}]", a.format_vector(x), a.format_vector(y)))?;
            }
        }
    }
    Ok(())
}

// 4

fn random_tr_subalgebra(a: &NormalJAlgebra, r: &mut SeededRng) -> Subspace<Q> {
    let xis: Vec<usize> = (1..a.dim() / 2).collect();
    let nil: Vec<usize> = (1..a.dim()).collect();
    loop {
        let pool = if r.gen_bool(0.3) { &xis } else { &nil };
        let k = r.gen_range(1..=3);
        let gens: Vec<Vec<Q>> = (0..k)
            .map(|_| {
                let mut v = vec![Q::zero(); a.dim()];
                for &i in pool {
                    if r.gen_bool(0.6) {
                        v[i] = rand_q(r, 3);
                    }
                }
                v
            })
            .collect();
        let x = a.alg().lie_generate(&sp(a, &gens)).unwrap();
        if tr_oracle(a, &x) {
            return x;
        }
    }
}

fn criterion_4() -> Outcome {
    let mut r = rng(404);
    for n in 2..=6 {
        let a = ball(n).map_err(s)?;
        for _ in 0..200 {
            let x = random_tr_subalgebra(&a, &mut r);
            let res = complete_ball(&a, &x).map_err(s)?;
            let out = res.result().ok_or_else(|| format!("ball{n}: {:?}", res.status))?;
            ensure(closed_oracle(&a, out), || format!("ball{n}: not a subalgebra"))?;
            ensure(tr_oracle(&a, out), || format!("ball{n}: not totally real"))?;
            ensure(out.dim() == n, || format!("ball{n}: dimension {}", out.dim()))?;
            ensure(out.contains_subspace(&x), || format!("ball{n}: lost the input"))?;
            if abelian_oracle(&a, &x) {
                ensure(abelian_oracle(&a, out), || format!("ball{n}: abelian input, nonabelian output"))?;
            }
        }
    }
    Ok(())
}

// 5

fn criterion_5() -> Outcome {
    let l3 = lie_ball(3).map_err(s)?;
    let v = |t: &[(Q, &str)]| l3.vector(t).unwrap();
    for input in [v(&[(q(1), "eta")]), v(&[(q(1), "xi1p"), (q(1), "eta")])] {
        let x = sp(&l3, &[input]);
        let res = complete_lie_ball(&l3, &x).map_err(s)?;
        let out = res.result().ok_or_else(|| format!("{:?}", res.status))?;
        ensure(out.dim() == 3 && closed_oracle(&l3, out) && tr_oracle(&l3, out) && out.contains_subspace(&x), || {
            format!("trace for {} ended badly", l3.format_vector(&x.basis()[0]))
        })?;
        ensure(!res.trace.is_empty(), || "empty trace".into())?;
    }
    let res = complete_lie_ball(&l3, &l3.span_labels(&["xi1p"]).unwrap()).map_err(s)?;
    ensure(matches!(res.status, CompletionStatus::NotApplicable(_)), || format!("{:?}", res.status))?;
    let (xi1p, zeta, xi1) = (v(&[(q(1), "xi1p")]), v(&[(q(1), "zeta")]), v(&[(q(1), "xi1")]));
    let mut r = rng(505);
    for _ in 0..50 {
        let d = rand_nonzero_q(&mut r, 6);
        let x = v(&[(rand_q(&mut r, 6), "xi1"), (rand_q(&mut r, 6), "xi1p"), (rand_q(&mut r, 6), "zeta"), (d, "eta")]);
        let g = l3.alg().lie_generate(&sp(&l3, &[xi1p.clone(), x])).map_err(s)?;
        ensure(g.contains(&zeta) && g.contains(&xi1), || "replay: zeta or xi1 missing".into())?;
    }
    Ok(())
}

// 6

fn criterion_6() -> Outcome {
    let b3 = ball(3).map_err(s)?;
    let h = b3
        .span(&[&[(q(2), "xi1")], &[(q(2), "xi1p"), (q(2), "xi2p")], &[(q(1), "zeta")]])
        .map_err(s)?;
    let v = stein_decide(&b3, &h).map_err(s)?;
    ensure(v.verdict == Verdict::Stein, || format!("Heisenberg example: {}", v.verdict))?;
    let l3 = lie_ball(3).map_err(s)?;
    let v = stein_decide(&l3, &l3.span_labels(&["xi1p"]).unwrap()).map_err(s)?;
    ensure(v.verdict == Verdict::Stein, || format!("xi1p: {}", v.verdict))?;
    let v = stein_decide(&l3, &l3.span_labels(&["xi1", "xi1p"]).unwrap()).map_err(s)?;
    ensure(v.verdict == Verdict::NotStein, || format!("xi1, xi1p: {}", v.verdict))
}

// 7

fn criterion_7() -> Outcome {
    let a = d5().map_err(s)?;
    let xs = d5_gamma_vectors(&a).map_err(s)?;
    ensure(a.alg().bracket(&xs[0], &xs[1]).map_err(s)? == xs[2], || "[x1, x2] != x3".into())?;
    let ng = sp(&a, &xs);
    let nil = a.nilradical().clone();
    let displayed = a
        .span(&[
            &[(q(1), "xi31p"), (q(1), "xi21")],
            &[(q(-1), "xi31"), (q(1), "xi21p")],
            &[(q(1), "xi32")],
            &[(q(1), "zeta3")],
            &[(q(1), "zeta2")],
        ])
        .map_err(s)?;
    ensure(!tr_oracle(&a, &displayed), || "displayed normalizer is totally real".into())?;
    let mut r = rng(707);
    for _ in 0..20 {
        let tau = rand_q(&mut r, 9);
        let y = y_tau(&a, &tau).map_err(s)?;
        // centralizer by brute force: y commutes with each generator
        for x in &xs {
            ensure(a.alg().bracket(&y, x).unwrap().iter().all(Zero::is_zero), || format!("y_tau not central, tau = {tau}"))?;
        }
        let ext = ng.with_vector(&y).map_err(s)?;
        let n = a.alg().normalizer_within(&nil, &ext).map_err(s)?;
        ensure(n == displayed, || format!("normalizer at tau = {tau}"))?;
    }
    let mut vs = xs.to_vec();
    for _ in 0..20 {
        let (tau, alpha) = rand_tau_alpha(&mut r);
        let s1 = Q::one() + &tau * &tau;
        ensure(alpha > Q::one() / (&s1 * &s1), || "alpha below the threshold".into())?;
        ensure(z0_in_domain(&tau, &alpha), || "Z0 outside D".into())?;
        vs.truncate(3);
        vs.push(y_tau(&a, &tau).map_err(s)?);
        let f = fields_of(&a, &vs).map_err(s)?;
        let rank = field_rank(&f, &z0(&tau, &alpha));
        ensure(rank < 4, || format!("independent at Z0, tau = {tau}, alpha = {alpha}"))?;
    }
    Ok(())
}

// 8

fn criterion_8() -> Outcome {
    let mut r = rng(808);
    let half = real(qf(1, 2));
    for _ in 0..50 {
        let g = GroupElement5::new(rand_qi(&mut r, 5), rand_qi(&mut r, 5), rand_qi(&mut r, 5));
        let h = GroupElement5::new(rand_qi(&mut r, 5), rand_qi(&mut r, 5), rand_qi(&mut r, 5));
        // the product read off from the matrices must be the family member with
        // c'' = c + c' + (a b' - a' b) / 2
        let m = g.matrix().mul(&h.matrix()).map_err(s)?;
        let gh = GroupElement5::from_matrix(&m).ok_or("product leaves the family")?;
        let c = &g.c + &h.c + (&g.a * &h.b - &h.a * &g.b) * &half;
        ensure(gh == GroupElement5::new(&g.a + &h.a, &g.b + &h.b, c), || "parameter law".into())?;
        // unipotent: (M - I)^6 = 0
        let n = g.matrix().sub(&Matrix::identity(6)).map_err(s)?;
        ensure(n.pow(6).map_err(s)?.is_zero(), || "not unipotent".into())?;
        ensure(g.matrix().det().map_err(s)? == QI::one(), || "det != 1".into())?;
        let z = sym3_point(&mut r);
        ensure(g.apply(&z).map_err(s)? == g.apply_block(&z).map_err(s)?, || "formula differs from the block action".into())?;
    }
    Ok(())
}

// 9

fn criterion_9() -> Outcome {
    let z = z0(&q(0), &q(2));
    ensure(stabilizer_solve(&z).map_err(s)?.is_trivial(), || "nontrivial at Z0".into())?;
    let mut r = rng(909);
    for _ in 0..100 {
        let z = sym3_point(&mut r);
        ensure(stabilizer_solve(&z).map_err(s)?.is_trivial(), || "nontrivial stabilizer".into())?;
        // cross-check: a random nonidentity element moves z
        let g = GroupElement5::new(rand_qi(&mut r, 3), rand_qi(&mut r, 3), rand_qi(&mut r, 3));
        if g != GroupElement5::identity() {
            ensure(g.apply(&z).map_err(s)? != z, || "a group element fixes a sample".into())?;
        }
    }
    Ok(())
}

// 10

fn criterion_10() -> Outcome {
    let chain = TrivializationChain::displayed();
    let rep = verify_trivialization_chain(&chain).map_err(s)?;
    ensure(rep.all_passed(), || rep.to_string())?;
    ensure(rep.len() >= 5, || "fewer than five identities".into())?;
    let f = vec![gi(-1, 0), QI::zero(), gi(-1, 0)];
    let g = vec![QI::zero(), gi(-2, 0)];
    let b = bezout_trivialize(&f, &g).map_err(s)?;
    // φ f + ψ g = 1 recomputed by hand as dense polynomials
    let mul = |p: &[QI], r: &[QI]| {
        let mut out = vec![QI::zero(); p.len() + r.len()];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in r.iter().enumerate() {
                out[i + j] = &out[i + j] + x * y;
            }
        }
        out
    };
    let (pf, qg) = (mul(&b.phi, &f), mul(&b.psi, &g));
    let sum: Vec<QI> = (0..pf.len().max(qg.len())).map(|i| pf.get(i).cloned().unwrap_or_default() + qg.get(i).cloned().unwrap_or_default()).collect();
    ensure(sum[0] == QI::one() && sum[1..].iter().all(Zero::is_zero), || "phi f + psi g != 1".into())?;
    ensure(b.phi == vec![gi(-1, 0)] && b.psi == vec![QI::zero(), real(qf(1, 2))], || "not the degree-minimal pair (-1, w/2)".into())?;
    ensure(b.det() == Poly::one(1), || "det != 1".into())?;
    let mut r = rng(1010);
    for part in ChainPart::ALL {
        let rep = verify_trivialization_chain(&chain.mutated(part, &rand_nonzero_q(&mut r, 7))).map_err(s)?;
        ensure(!rep.all_passed(), || format!("mutation of {part:?} undetected"))?;
    }
    Ok(())
}

// 11

fn criterion_11() -> Outcome {
    let [x1, x2, x3] = b3_example_fields();
    ensure(x1.bracket(&x2).map_err(s)? == x3.scale(&gi(4, 0)), || "[x1, x2] != 4 x3".into())?;
    let fs = [x1, x2, x3];
    let mut r = rng(1111);
    for _ in 0..100 {
        let p = ball_point(&mut r, 3);
        ensure(in_ball(&p), || "sample outside the ball".into())?;
        let cols: Vec<Vec<QI>> = fs.iter().map(|f| f.eval(&p).unwrap()).collect();
        let det = Matrix::from_columns(3, &cols).map_err(s)?.det().map_err(s)?;
        ensure(!det.is_zero(), || "dependent values".into())?;
    }
    Ok(())
}

// 12

fn criterion_12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_jalg");
    let run = || -> Result<(Vec<u8>, Duration), String> {
        let t = Instant::now();
        let o = Command::new(bin).args(["paper-suite", "--seed", "1"]).output().map_err(s)?;
        let dt = t.elapsed();
        ensure(o.status.code() == Some(0), || String::from_utf8_lossy(&o.stdout).into_owned())?;
        Ok((o.stdout, dt))
    };
    let (a, ta) = run()?;
    let (b, tb) = run()?;
    ensure(a == b, || "reports differ between runs".into())?;
    ensure(ta < Duration::from_secs(60) && tb < Duration::from_secs(60), || format!("runs took {ta:?} and {tb:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("axiom suite on every catalog entry, each under 1 s", criterion_1),
        ("bracket tables match and sign flips are caught", criterion_2),
        ("Heisenberg relation on ball nilradicals", criterion_3),
        ("ball completion on 200 random seeds per n", criterion_4),
        ("Lie ball completion traces and obstruction replay", criterion_5),
        ("Stein decisions on the three examples", criterion_6),
        ("D5 counterexample: bracket, centralizer, normalizer, Z0", criterion_7),
        ("group family closure, unipotence, determinant, action", criterion_8),
        ("free action at Z0 and at 100 samples", criterion_9),
        ("trivialization chain, Bezout instance and mutations", criterion_10),
        ("B3 example bracket and independence at 100 points", criterion_11),
        ("paper-suite determinism and running time", criterion_12),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed().as_secs_f64();
        match res {
            Ok(()) => println!("ACCEPTANCE {:>2} PASS {title} ({dt:.1} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("ACCEPTANCE {:>2} FAIL {title} ({dt:.1} s)", k + 1);
                println!("    {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
