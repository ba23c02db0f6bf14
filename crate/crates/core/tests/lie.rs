use jalg::jalgebra::catalog::{ball, d5, lie_ball};
use jalg::lie::{lie_generate, nilpotency_class, LieAlgebra, LieAlgebraBuilder, LieError};
use jalg::linalg::scalar::{q, qf};
use jalg::linalg::{Subspace, Q};
use jalg::siegel::{d5_gamma_vectors, y_tau};
use num_traits::Zero;
use proptest::prelude::*;

fn sp(n: usize, vs: &[Vec<Q>]) -> Subspace<Q> {
    Subspace::span(n, vs).unwrap()
}

#[test]
fn bracket_examples() {
    let b = ball(4).unwrap();
    let v = b.alg().bracket(&b.basis_vector("xi1").unwrap(), &b.basis_vector("xi1p").unwrap()).unwrap();
    assert_eq!(v, b.basis_vector("zeta").unwrap());
    let l = lie_ball(4).unwrap();
    let v = l.alg().bracket(&l.basis_vector("eta").unwrap(), &l.basis_vector("xi1p").unwrap()).unwrap();
    assert_eq!(v, l.vector(&[(q(2), "xi1")]).unwrap());
    let x: Vec<Q> = (0..l.dim()).map(|i| qf(i as i64 - 2, 3)).collect();
    assert!(l.alg().bracket(&x, &x).unwrap().iter().all(Zero::is_zero));
    assert!(matches!(l.alg().bracket(&x, &[q(1)]), Err(LieError::Linalg(_))));
}

#[test]
fn jacobi_examples() {
    assert!(ball(5).unwrap().alg().jacobi_defect().is_none());
    assert!(lie_ball(4).unwrap().alg().jacobi_defect().is_none());
    let b3 = ball(3).unwrap();
    let (al, ze) = (b3.alg().index("alpha").unwrap(), b3.alg().index("zeta").unwrap());
    let mut val = vec![Q::zero(); b3.dim()];
    val[ze] = q(2);
    let bad = b3.alg().with_bracket_unchecked(al, ze, &val);
    assert!(bad.jacobi_defect().is_some());
}

#[test]
fn builder_rejects_jacobi_failure() {
    let labels = ["a", "b", "c"];
    let r = LieAlgebraBuilder::new(&labels)
        .unwrap()
        .bracket("a", "b", &[(q(1), "c")])
        .unwrap()
        .bracket("a", "c", &[(q(1), "a")])
        .unwrap()
        .build();
    assert!(matches!(r, Err(LieError::Jacobi(_))));
    assert!(matches!(LieAlgebraBuilder::new(&["a", "a"]), Err(LieError::DuplicateLabel(_))));
}

#[test]
fn subalgebra_examples() {
    let b2 = ball(2).unwrap();
    assert!(b2.alg().is_subalgebra(&Subspace::full(b2.dim())));
    assert!(b2.alg().is_subalgebra(&b2.span_labels(&["xi1"]).unwrap()));
    assert!(!b2.alg().is_subalgebra(&b2.span_labels(&["xi1", "xi1p"]).unwrap()));
}

#[test]
fn generate_examples() {
    let d = d5().unwrap();
    let [x1, x2, x3] = d5_gamma_vectors(&d).unwrap();
    let g = lie_generate(d.alg(), &sp(d.dim(), &[x1.clone(), x2.clone()])).unwrap();
    assert_eq!(g, sp(d.dim(), &[x1, x2, x3]));
    assert_eq!(lie_generate(d.alg(), &g).unwrap(), g);
    let b2 = ball(2).unwrap();
    let g = b2.alg().lie_generate(&b2.span_labels(&["xi1", "xi1p"]).unwrap()).unwrap();
    assert_eq!(&g, b2.nilradical());
}

#[test]
fn normalizer_examples() {
    let b3 = ball(3).unwrap();
    let z = b3.span_labels(&["zeta"]).unwrap();
    assert_eq!(b3.alg().normalizer(&z).unwrap(), Subspace::full(b3.dim()));

    let d = d5().unwrap();
    let mut vs = d5_gamma_vectors(&d).unwrap().to_vec();
    vs.push(y_tau(&d, &q(0)).unwrap());
    let s = sp(d.dim(), &vs);
    let n = d.alg().normalizer_within(d.nilradical(), &s).unwrap();
    let expect = d
        .span(&[
            &[(q(1), "xi31p"), (q(1), "xi21")],
            &[(q(-1), "xi31"), (q(1), "xi21p")],
            &[(q(1), "xi32")],
            &[(q(1), "zeta3")],
            &[(q(1), "zeta2")],
        ])
        .unwrap();
    assert_eq!(n, expect);
    assert!(matches!(
        d.alg().normalizer(&d.span_labels(&["xi31", "xi31p"]).unwrap()),
        Err(LieError::NotSubalgebra)
    ));

    // a central line is normalized by everything
    let nil_alg = b3.alg().restrict(&(1..b3.dim()).collect::<Vec<_>>()).unwrap();
    let c = nil_alg.centralizer(&Subspace::full(nil_alg.dim())).unwrap();
    let line = sp(nil_alg.dim(), &[c.basis()[0].iter().map(|x| x * q(-3)).collect()]);
    assert_eq!(nil_alg.normalizer(&line).unwrap(), Subspace::full(nil_alg.dim()));
}

#[test]
fn centralizer_examples() {
    let b2 = ball(2).unwrap();
    let c = b2.alg().centralizer(b2.nilradical()).unwrap();
    assert_eq!(c, b2.span_labels(&["zeta"]).unwrap());
    let d = d5().unwrap();
    let g = sp(d.dim(), &d5_gamma_vectors(&d).unwrap());
    assert!(d.alg().centralizer(&g).unwrap().contains(&y_tau(&d, &q(0)).unwrap()));
    assert_eq!(b2.alg().centralizer(&Subspace::zero(b2.dim())).unwrap(), Subspace::full(b2.dim()));
}

#[test]
fn nilpotency_examples() {
    for n in 2..=6 {
        let b = ball(n).unwrap();
        let nil = b.alg().restrict(&(1..b.dim()).collect::<Vec<_>>()).unwrap();
        assert_eq!(nilpotency_class(&nil), Some(2));
        assert_eq!(b.alg().nilpotency_class_of(b.nilradical()).unwrap(), Some(2));
    }
    assert_eq!(LieAlgebra::abelian(&["u", "v"]).unwrap().nilpotency_class(), Some(1));
    assert_eq!(ball(2).unwrap().alg().nilpotency_class(), None);
}

#[test]
fn codimension_one_subalgebras_are_ideals() {
    let d = d5().unwrap();
    let idx: Vec<usize> = (0..d.dim()).filter(|&i| d.nilradical().contains(&d.alg().basis_vector(d.alg().label(i)).unwrap())).collect();
    let nil = d.alg().restrict(&idx).unwrap();
    let n = nil.dim();
    let mut seen = 0;
    for drop in 0..n {
        let vs: Vec<Vec<Q>> = (0..n).filter(|&i| i != drop).map(|i| jalg::linalg::unit(n, i)).collect();
        let s = sp(n, &vs);
        if nil.is_subalgebra(&s) {
            assert_eq!(nil.normalizer(&s).unwrap(), Subspace::full(n));
            assert!(nil.is_ideal(&s));
            seen += 1;
        }
    }
    assert!(seen > 0);
}

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec((-4i64..=4, 1i64..=3).prop_map(|(a, b)| qf(a, b)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_bilinear_antisymmetric(x in vec_strategy(10), y in vec_strategy(10), z in vec_strategy(10), c in -3i64..=3) {
        let a = lie_ball(5).unwrap();
        let alg = a.alg();
        let xy = alg.bracket(&x, &y).unwrap();
        let yx = alg.bracket(&y, &x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(p, q)| (p + q).is_zero()));
        let xcz: Vec<Q> = x.iter().zip(&z).map(|(p, r)| p + q(c) * r).collect();
        let lhs = alg.bracket(&xcz, &y).unwrap();
        let zy = alg.bracket(&z, &y).unwrap();
        prop_assert!(lhs.iter().zip(xy.iter().zip(&zy)).all(|(l, (p, r))| *l == p + q(c) * r));
    }

    #[test]
    fn normalizer_contains_centralizer_and_s(x in vec_strategy(7), y in vec_strategy(7)) {
        let b = ball(4).unwrap();
        let mut x = x; let mut y = y;
        x.insert(0, Q::zero()); y.insert(0, Q::zero());
        let s = b.alg().lie_generate(&sp(b.dim(), &[x.clone(), y])).unwrap();
        let nz = b.alg().normalizer(&s).unwrap();
        let cz = b.alg().centralizer(&s).unwrap();
        prop_assert!(nz.contains_subspace(&s));
        prop_assert!(nz.contains_subspace(&cz));
        // monotone and idempotent
        let s1 = b.alg().lie_generate(&sp(b.dim(), &[x])).unwrap();
        prop_assert!(s.contains_subspace(&s1));
        prop_assert_eq!(b.alg().lie_generate(&s).unwrap(), s);
    }
}
