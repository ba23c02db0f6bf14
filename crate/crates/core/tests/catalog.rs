use jalg::jalgebra::catalog::{self, MATRIX_TO_FIELD_BRACKET_SIGN};
use jalg::jalgebra::{check_axioms, lieball_fibration_checks, realization_checks, DomainKind, NormalJAlgebra};
use jalg::linalg::scalar::{gi, q};
use jalg::linalg::{AffineField, Q, QI};
use num_traits::Zero;

type Entry<'a> = (&'a str, &'a str, &'a [(i64, &'a str)]);
type Terms = (Vec<(usize, usize, QI)>, Vec<(usize, QI)>);

fn make(kind: DomainKind, n: usize) -> NormalJAlgebra {
    catalog::catalog_make(kind, n).unwrap()
}

/// Asserts `[x, y] = Σ c·z` in the catalog.
fn assert_bracket(a: &NormalJAlgebra, x: &str, y: &str, rhs: &[(i64, &str)]) {
    let lhs = a.alg().bracket(&a.basis_vector(x).unwrap(), &a.basis_vector(y).unwrap()).unwrap();
    let terms: Vec<(Q, &str)> = rhs.iter().map(|(c, l)| (q(*c), *l)).collect();
    assert_eq!(lhs, a.vector(&terms).unwrap(), "[{x}, {y}]");
}

/// Every basis pair not listed (in either order) brackets to zero.
fn assert_table_complete(a: &NormalJAlgebra, listed: &[(&str, &str)]) {
    let labels = a.alg().labels().to_vec();
    for (i, x) in labels.iter().enumerate() {
        for y in &labels[i + 1..] {
            if listed.iter().any(|(p, r)| (p == x && r == y) || (p == y && r == x)) {
                continue;
            }
            let b = a.alg().bracket(&a.basis_vector(x).unwrap(), &a.basis_vector(y).unwrap()).unwrap();
            assert!(b.iter().all(Q::is_zero), "[{x}, {y}] should vanish");
        }
    }
}

#[test]
fn every_catalog_entry_passes_its_axioms() {
    for n in 2..=8 {
        assert!(check_axioms(&make(DomainKind::Ball(n), n)).all_passed());
    }
    for n in 3..=8 {
        assert!(check_axioms(&make(DomainKind::LieBall(n), n)).all_passed());
    }
    assert!(check_axioms(&make(DomainKind::Siegel3, 3)).all_passed());
    assert!(check_axioms(&make(DomainKind::D5, 0)).all_passed());
}

#[test]
fn unsupported_sizes_are_rejected() {
    assert!(catalog::catalog_make(DomainKind::Ball(1), 1).is_err());
    assert!(catalog::catalog_make(DomainKind::LieBall(2), 2).is_err());
    assert!(catalog::catalog_make(DomainKind::Siegel3, 4).is_err());
    assert!(catalog::parse_catalog_spec("torus:3").is_err());
    assert!(catalog::parse_catalog_spec("ball:x").is_err());
    assert_eq!(catalog::parse_catalog_spec("lieball:5").unwrap(), (DomainKind::LieBall(5), 5));
}

#[test]
fn ball_bracket_table() {
    for n in 2..=5 {
        let a = make(DomainKind::Ball(n), n);
        assert_eq!(a.dim(), 2 * n);
        let mut listed = vec![("alpha", "zeta")];
        let names: Vec<(String, String)> = (1..n).map(|k| (format!("xi{k}"), format!("xi{k}p"))).collect();
        for (x, xp) in &names {
            assert_bracket(&a, x, xp, &[(1, "zeta")]);
            assert_bracket(&a, "alpha", x, &[(-1, x)]);
            assert_bracket(&a, "alpha", xp, &[(-1, xp)]);
            listed.extend([(x.as_str(), xp.as_str()), ("alpha", x.as_str()), ("alpha", xp.as_str())]);
        }
        assert_bracket(&a, "alpha", "zeta", &[(-2, "zeta")]);
        assert_table_complete(&a, &listed);
        assert_eq!(a.apply_j(&a.basis_vector("zeta").unwrap()), a.basis_vector("alpha").unwrap());
        assert_eq!(a.apply_j(&a.basis_vector("xi1").unwrap()), a.basis_vector("xi1p").unwrap());
    }
}

#[test]
fn lie_ball_bracket_table() {
    for n in 3..=6 {
        let a = make(DomainKind::LieBall(n), n);
        assert_eq!(a.dim(), 2 * n);
        let mut listed = vec![("delta", "zeta"), ("delta", "eta"), ("alpha", "zeta"), ("alpha", "eta")];
        let names: Vec<(String, String)> = (1..=n - 2).map(|k| (format!("xi{k}"), format!("xi{k}p"))).collect();
        for (x, xp) in &names {
            assert_bracket(&a, x, xp, &[(1, "zeta")]);
            assert_bracket(&a, "eta", xp, &[(2, x)]);
            assert_bracket(&a, "delta", x, &[(-1, x)]);
            assert_bracket(&a, "alpha", xp, &[(-1, xp)]);
            listed.extend([(x.as_str(), xp.as_str()), ("eta", xp.as_str()), ("delta", x.as_str()), ("alpha", xp.as_str())]);
        }
        assert_bracket(&a, "delta", "zeta", &[(-1, "zeta")]);
        assert_bracket(&a, "delta", "eta", &[(-1, "eta")]);
        assert_bracket(&a, "alpha", "zeta", &[(-1, "zeta")]);
        assert_bracket(&a, "alpha", "eta", &[(1, "eta")]);
        assert_table_complete(&a, &listed);
        let j = |l: &str| a.apply_j(&a.basis_vector(l).unwrap());
        assert_eq!(j("zeta"), a.vector(&[(q(1), "alpha"), (q(1), "delta")]).unwrap());
        assert_eq!(j("eta"), a.vector(&[(q(1), "delta"), (q(-1), "alpha")]).unwrap());
        assert_eq!(j("xi1"), a.basis_vector("xi1p").unwrap());
    }
}

#[test]
fn d5_cross_brackets_match_the_displayed_table() {
    let a = make(DomainKind::D5, 0);
    assert_eq!(a.dim(), 10);
    let cross: &[Entry] = &[
        ("alpha2", "xi32", &[(1, "xi32")]),
        ("alpha2", "xi32p", &[(-1, "xi32p")]),
        ("xi21", "xi31p", &[(-1, "xi32")]),
        ("xi21", "xi32p", &[(-1, "xi31")]),
        ("xi21p", "xi31", &[(1, "xi32")]),
        ("xi21p", "xi32p", &[(-1, "xi31p")]),
        ("zeta2", "xi32p", &[(2, "xi32")]),
    ];
    for (x, y, rhs) in cross {
        assert_bracket(&a, x, y, rhs);
    }
    let b3 = ["alpha3", "xi31", "xi32", "xi31p", "xi32p", "zeta3"];
    let b2 = ["alpha2", "xi21", "xi21p", "zeta2"];
    for x in b2 {
        for y in b3 {
            if cross.iter().any(|(p, r, _)| *p == x && *r == y) {
                continue;
            }
            let v = a.alg().bracket(&a.basis_vector(x).unwrap(), &a.basis_vector(y).unwrap()).unwrap();
            assert!(v.iter().all(Q::is_zero), "[{x}, {y}] should vanish");
        }
    }
}

#[test]
fn siegel_internal_blocks_are_unit_balls_up_to_the_alpha_sign() {
    // In the matrix model the block b_3 is b_3 of the ball with alpha replaced by -alpha3.
    let s = make(DomainKind::Siegel3, 3);
    assert_bracket(&s, "xi31", "xi31p", &[(1, "zeta3")]);
    assert_bracket(&s, "xi32", "xi32p", &[(1, "zeta3")]);
    assert_bracket(&s, "alpha3", "xi31", &[(1, "xi31")]);
    assert_bracket(&s, "alpha3", "zeta3", &[(2, "zeta3")]);
    assert_bracket(&s, "xi21", "xi21p", &[(1, "zeta2")]);
    assert_bracket(&s, "alpha1", "zeta1", &[(2, "zeta1")]);
    let j = |l: &str| s.apply_j(&s.basis_vector(l).unwrap());
    assert_eq!(j("alpha3"), s.basis_vector("zeta3").unwrap());
    assert_eq!(j("xi31"), s.basis_vector("xi31p").unwrap());
    assert_eq!(j("zeta2"), s.vector(&[(q(-1), "alpha2")]).unwrap());
}

#[test]
fn siegel_lambda_is_trace_of_b() {
    let s = make(DomainKind::Siegel3, 3);
    for l in ["zeta1", "zeta2", "zeta3"] {
        assert_eq!(s.lambda_of(&s.basis_vector(l).unwrap()), q(-2));
    }
    for l in ["xi31", "xi21p", "alpha2"] {
        assert_eq!(s.lambda_of(&s.basis_vector(l).unwrap()), q(0));
    }
    // omega agrees with the trace of the B block of matrix commutators
    let x = s.basis_vector("xi31").unwrap();
    let y = s.basis_vector("xi31p").unwrap();
    assert_eq!(s.omega(&x, &y).unwrap(), q(-2));
}

/// Field table of the Siegel model transcribed by hand, coordinates
/// (z11, z12, z13, z22, z23, z33).
fn siegel_field_oracle(label: &str) -> AffineField {
    let one = gi(1, 0);
    let two = gi(2, 0);
    let (lin, cst): Terms = match label {
        "zeta3" => (vec![], vec![(5, gi(-2, 0))]),
        "alpha3" => (vec![(2, 2, one.clone()), (4, 4, one.clone()), (5, 5, two.clone())], vec![]),
        "xi31" => (vec![], vec![(2, one.clone())]),
        "xi31p" => (vec![(2, 0, one.clone()), (4, 1, one.clone()), (5, 2, two.clone())], vec![]),
        "xi32" => (vec![], vec![(4, one.clone())]),
        "xi32p" => (vec![(2, 1, one.clone()), (4, 3, one.clone()), (5, 4, two.clone())], vec![]),
        "zeta2" => (vec![], vec![(3, gi(-2, 0))]),
        "alpha2" => (vec![(1, 1, one.clone()), (3, 3, two.clone()), (4, 4, one.clone())], vec![]),
        "xi21" => (vec![], vec![(1, one.clone())]),
        "xi21p" => (vec![(1, 0, one.clone()), (3, 1, two.clone()), (4, 2, one.clone())], vec![]),
        _ => unreachable!(),
    };
    AffineField::from_terms(6, &lin, &cst)
}

#[test]
fn d5_fields_match_the_table_and_bracket_with_the_recorded_sign() {
    let a = make(DomainKind::D5, 0);
    let r = a.realization().unwrap();
    for (i, l) in a.alg().labels().iter().enumerate() {
        assert_eq!(r.fields[i], siegel_field_oracle(l), "{l}");
    }
    assert_eq!(r.bracket_sign, MATRIX_TO_FIELD_BRACKET_SIGN);
    assert_eq!(MATRIX_TO_FIELD_BRACKET_SIGN, -1);
    // measured directly: [ζ₂, ξ′₃₂] = 2ξ₃₂ as matrices, -2ξ₃₂ as fields
    let f = siegel_field_oracle("zeta2").bracket(&siegel_field_oracle("xi32p")).unwrap();
    assert_eq!(f, siegel_field_oracle("xi32").scale(&gi(-2, 0)));
}

#[test]
fn realizations_represent_their_algebras() {
    let mut all = vec![make(DomainKind::Siegel3, 3), make(DomainKind::D5, 0)];
    all.extend((2..=5).map(|n| make(DomainKind::Ball(n), n)));
    all.extend((3..=5).map(|n| make(DomainKind::LieBall(n), n)));
    for a in &all {
        let r = realization_checks(a);
        assert!(r.all_passed(), "{}:\n{r}", a.name());
    }
}

#[test]
fn lie_ball_fibration() {
    for n in 3..=6 {
        let r = lieball_fibration_checks(&make(DomainKind::LieBall(n), n)).unwrap();
        assert!(r.all_passed(), "{r}");
    }
    assert!(lieball_fibration_checks(&make(DomainKind::Ball(3), 3)).is_err());
}

#[test]
fn flipped_lambda_fails_positivity_at_xi1() {
    let a = make(DomainKind::Ball(3), 3);
    let mut lam = vec![Q::zero(); a.dim()];
    lam[a.alg().index("zeta").unwrap()] = q(1);
    let flipped = a.with_lambda(lam);
    let r = check_axioms(&flipped);
    let pos = r.get("metric-positive").unwrap();
    assert!(!pos.passed);
    assert!(pos.witness.as_deref().unwrap().ends_with("x = xi1"));
    // the witness really is one: B(ξ₁, ξ₁) = λ([Jξ₁, ξ₁]) < 0
    let x = flipped.basis_vector("xi1").unwrap();
    let b = flipped.lambda_of(&flipped.alg().bracket(&flipped.apply_j(&x), &x).unwrap());
    assert!(b < q(0));
}

#[test]
fn corrupted_bracket_is_caught() {
    let a = make(DomainKind::Ball(3), 3);
    let (al, ze) = (a.alg().index("alpha").unwrap(), a.alg().index("zeta").unwrap());
    let mut v = vec![Q::zero(); a.dim()];
    v[ze] = q(2);
    let bad = a.with_algebra(a.alg().with_bracket_unchecked(al, ze, &v));
    assert!(!check_axioms(&bad).all_passed());

    // one flipped sign in each table is caught by Jacobi or the axioms
    for spec in ["ball:4", "lieball:4", "siegel:3", "d5"] {
        let (k, n) = catalog::parse_catalog_spec(spec).unwrap();
        let a = make(k, n);
        let pairs: Vec<(usize, usize, Vec<Q>)> = a
            .alg()
            .structure_constants()
            .map(|(i, j, _)| (i, j, a.alg().basis_bracket(i, j)))
            .collect();
        for (i, j, v) in pairs {
            let neg: Vec<Q> = v.iter().map(|x| -x.clone()).collect();
            let bad = a.with_algebra(a.alg().with_bracket_unchecked(i, j, &neg));
            assert!(!check_axioms(&bad).all_passed(), "{spec}: flipping [{}, {}] undetected", a.alg().label(i), a.alg().label(j));
        }
    }
}

#[test]
fn heisenberg_relation_on_ball_nilradicals() {
    for n in 2..=6 {
        let a = make(DomainKind::Ball(n), n);
        let zeta = a.basis_vector("zeta").unwrap();
        let lz = a.lambda_of(&zeta);
        for x in a.nilradical().basis() {
            for y in a.nilradical().basis() {
                let w = a.omega(x, y).unwrap();
                let rhs: Vec<Q> = zeta.iter().map(|z| z * &w / &lz).collect();
                assert_eq!(a.alg().bracket(x, y).unwrap(), rhs);
            }
        }
    }
}

#[test]
fn omega_examples() {
    let a = make(DomainKind::Ball(2), 2);
    let (x, xp) = (a.basis_vector("xi1").unwrap(), a.basis_vector("xi1p").unwrap());
    assert_eq!(a.omega(&x, &xp).unwrap(), q(-1));
    assert_eq!(a.omega(&x, &x).unwrap(), q(0));
    let w = a.omega_form();
    assert_eq!(w.transpose(), w.scale(&q(-1)));
    // nondegenerate on the whole algebra for the ball
    assert_eq!(w.rank(), a.dim());
}
