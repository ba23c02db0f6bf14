//! The chain of polynomial maps trivializing the quotient of `Sym(3, ℂ)` by
//! the free three-parameter action, and the Bézout step at its end.

use num_traits::One;

use super::{sym_action_displayed, SiegelError};
use crate::linalg::poly::univariate as uni;
use crate::linalg::scalar::{gi, real};
use crate::linalg::{poly_det, Poly, PolyMap, Q, QI};
use crate::report::Report;

/// Which displayed formula a mutation corrupts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainPart {
    Pi,
    InducedAction,
    Phi,
    BAction,
    F,
}

impl ChainPart {
    pub const ALL: [ChainPart; 5] = [
        ChainPart::Pi,
        ChainPart::InducedAction,
        ChainPart::Phi,
        ChainPart::BAction,
        ChainPart::F,
    ];

    /// The check that must fail once this part is corrupted.
    pub fn check_id(self) -> &'static str {
        match self {
            ChainPart::Pi => "5.2-chain-center",
            ChainPart::InducedAction => "5.2-chain-induced-action",
            ChainPart::Phi => "5.2-chain-phi-translation",
            ChainPart::BAction => "5.2-chain-b-action",
            ChainPart::F => "5.2-chain-c3-action",
        }
    }
}

/// The displayed maps, each stored as a polynomial map.
///
/// * `pi`: ℂ⁶ → ℂ⁵ on `(z11, z12, z13, z22, z23, z33)`;
/// * `a2`: the induced action, variables `(a, b, z1, …, z5)`;
/// * `phi`, `phi_inv`: ℂ⁵ → ℂ⁵;
/// * `b4`: the induced ℂ_b action on ℂ⁴, variables `(b, w1, …, w4)`;
/// * `f`, `g`: univariate in `w1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrivializationChain {
    pub pi: PolyMap,
    pub a2: PolyMap,
    pub phi: PolyMap,
    pub phi_inv: PolyMap,
    pub b4: PolyMap,
    pub f: Poly,
    pub g: Poly,
}

fn v(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

fn k(n: usize, c: i64) -> Poly {
    Poly::constant(n, gi(c, 0))
}

fn half(p: &Poly) -> Poly {
    p.scale(&real(Q::new(1.into(), 2.into())))
}

impl TrivializationChain {
    pub fn displayed() -> Self {
        let pi = {
            let n = 6;
            PolyMap::new(n, vec![v(n, 0), v(n, 1), v(n, 2), &v(n, 3) - &v(n, 5), v(n, 4)]).expect("six")
        };
        let a2 = {
            let n = 7;
            let (a, b) = (v(n, 0), v(n, 1));
            let z: Vec<Poly> = (2..7).map(|i| v(n, i)).collect();
            let ab = &a * &b;
            PolyMap::new(
                n,
                vec![
                    z[0].clone(),
                    &(&z[1] + &(&b * &z[0])) + &a,
                    &(&z[2] + &(&a * &z[0])) - &b,
                    &(&(&(&(&z[3] + &(&k(n, 2) * &(&b * &z[1]))) - &(&k(n, 2) * &(&a * &z[2])))
                        + &(&(&b.pow(2) - &a.pow(2)) * &z[0]))
                        + &(&k(n, 2) * &ab))
                        + &(&k(n, 2) * &a),
                    &(&(&(&z[4] + &(&a * &z[1])) + &(&b * &z[2])) + &(&ab * &z[0])) + &half(&(&a.pow(2) - &b.pow(2))),
                ],
            )
            .expect("seven")
        };
        let phi = {
            let n = 5;
            let z: Vec<Poly> = (0..5).map(|i| v(n, i)).collect();
            PolyMap::new(
                n,
                vec![
                    z[1].clone(),
                    z[0].clone(),
                    &z[2] - &(&z[0] * &z[1]),
                    &(&(&z[3] + &(&k(n, 2) * &(&z[1] * &z[2]))) - &(&k(n, 2) * &(&z[0] * &z[4]))) - &(&k(n, 2) * &z[1]),
                    &z[1].pow(2) - &(&k(n, 2) * &z[4]),
                ],
            )
            .expect("five")
        };
        let phi_inv = {
            let n = 5;
            let u: Vec<Poly> = (0..5).map(|i| v(n, i)).collect();
            let u3 = &u[2] + &(&u[0] * &u[1]);
            let d = &u[0].pow(2) - &u[4];
            PolyMap::new(
                n,
                vec![
                    u[1].clone(),
                    u[0].clone(),
                    u3.clone(),
                    &(&(&u[3] - &(&k(n, 2) * &(&u[0] * &u3))) + &(&u[1] * &d)) + &(&k(n, 2) * &u[0]),
                    half(&d),
                ],
            )
            .expect("five")
        };
        let b4 = {
            let n = 5;
            let b = v(n, 0);
            let w: Vec<Poly> = (1..5).map(|i| v(n, i)).collect();
            let q = &w[0].pow(2) + &k(n, 1);
            PolyMap::new(
                n,
                vec![
                    w[0].clone(),
                    &w[1] - &(&b * &q),
                    &w[2] - &(&k(n, 2) * &(&b * &w[0])),
                    &(&w[3] - &(&k(n, 2) * &(&b * &w[1]))) + &(&b.pow(2) * &q),
                ],
            )
            .expect("five")
        };
        let x = v(1, 0);
        TrivializationChain {
            pi,
            a2,
            phi,
            phi_inv,
            b4,
            f: -(&x.pow(2) + &k(1, 1)),
            g: x.scale(&gi(-2, 0)),
        }
    }

    /// Adds `delta` times one monomial to the formula of `part`:
    /// the `z22` term of π₄, the `ab` term of the induced action's fourth
    /// entry, the `z2` term of Φ₄, the `b²w1²` term of the ℂ_b action, or a
    /// `w1` term of `f`. With `delta = 2` on Φ the `-2 z2` term disappears.
    pub fn mutated(&self, part: ChainPart, delta: &Q) -> Self {
        let d = real(delta.clone());
        let bump = |m: &PolyMap, comp: usize, mono: &[u32]| -> PolyMap {
            let n = m.source_dim();
            let extra = Poly::from_terms(n, [(mono.to_vec(), d.clone())]).expect("monomial");
            let mut comps = m.components().to_vec();
            comps[comp] = &comps[comp] + &extra;
            PolyMap::new(n, comps).expect("same shape")
        };
        let mut out = self.clone();
        match part {
            ChainPart::Pi => out.pi = bump(&self.pi, 3, &[0, 0, 0, 1, 0, 0]),
            ChainPart::InducedAction => out.a2 = bump(&self.a2, 3, &[1, 1, 0, 0, 0, 0, 0]),
            ChainPart::Phi => out.phi = bump(&self.phi, 3, &[0, 1, 0, 0, 0]),
            ChainPart::BAction => out.b4 = bump(&self.b4, 3, &[2, 2, 0, 0, 0]),
            ChainPart::F => out.f = &self.f + &Poly::var(1, 0).scale(&d),
        }
        out
    }

    /// The ℂ_b action on ℂ³ built from `f` and `g`: `(w1, w2 + b f, w3 + b g)`
    /// in variables `(b, w1, …, w4)`.
    fn c3_action(&self) -> Vec<Poly> {
        let n = 5;
        let b = v(n, 0);
        let f = self.f.embed(n, &[1]);
        let g = self.g.embed(n, &[1]);
        vec![v(n, 1), &v(n, 2) + &(&b * &f), &v(n, 3) + &(&b * &g)]
    }
}

fn map_of(n: usize, comps: Vec<Poly>) -> PolyMap {
    PolyMap::new(n, comps).expect("component count")
}

fn compare(report: &mut Report, id: &str, lhs: &PolyMap, rhs: &PolyMap, names: &[&str]) {
    let ok = lhs == rhs;
    let detail = if ok {
        String::new()
    } else {
        format!("lhs = {} ; rhs = {}", lhs.display_with(names), rhs.display_with(names))
    };
    report.push(id, ok, detail);
}

/// Checks every map of the chain as an exact polynomial identity.
pub fn verify_trivialization_chain(chain: &TrivializationChain) -> Result<Report, SiegelError> {
    let mut r = Report::default();
    let s = sym_action_displayed();
    let names9 = ["a", "b", "c", "z11", "z12", "z13", "z22", "z23", "z33"];

    // (1) π is invariant under the center: variables (c, z)
    let center = map_of(7, {
        let mut c = vec![Poly::zero(7), Poly::zero(7)];
        c.extend((0..7).map(|i| v(7, i)));
        c
    });
    let lhs = chain.pi.compose(&s.compose(&center)?)?;
    let rhs = chain.pi.embed(7, &[1, 2, 3, 4, 5, 6]);
    compare(&mut r, "5.2-chain-center", &lhs, &rhs, &names9[2..]);

    // only the center: with a = c = 0 and b free, π moves
    let b_only = map_of(7, {
        let mut c = vec![Poly::zero(7), v(7, 0), Poly::zero(7)];
        c.extend((1..7).map(|i| v(7, i)));
        c
    });
    let moved = chain.pi.compose(&s.compose(&b_only)?)?;
    let fixed = chain.pi.embed(7, &[1, 2, 3, 4, 5, 6]);
    r.push(
        "5.2-chain-center-only",
        moved != fixed,
        "π is invariant under b as well",
    );

    // (2) π ∘ S = A2(a, b, π(z))
    let lhs = chain.pi.compose(&s)?;
    let inner = {
        let mut c = vec![v(9, 0), v(9, 1)];
        c.extend(chain.pi.embed(9, &[3, 4, 5, 6, 7, 8]).components().iter().cloned());
        map_of(9, c)
    };
    let rhs = chain.a2.compose(&inner)?;
    compare(&mut r, "5.2-chain-induced-action", &lhs, &rhs, &names9);

    // (3) Φ ∘ A2(a, 0, ·) = Φ + a e1, variables (a, z1..z5)
    let names6 = ["t", "z1", "z2", "z3", "z4", "z5"];
    let a_only = map_of(6, {
        let mut c = vec![v(6, 0), Poly::zero(6)];
        c.extend((1..6).map(|i| v(6, i)));
        c
    });
    let lhs = chain.phi.compose(&chain.a2.compose(&a_only)?)?;
    let phi6 = chain.phi.embed(6, &[1, 2, 3, 4, 5]);
    let mut shifted = phi6.components().to_vec();
    shifted[0] = &shifted[0] + &v(6, 0);
    compare(&mut r, "5.2-chain-phi-translation", &lhs, &map_of(6, shifted), &names6);

    // (4) Φ₂..₅ ∘ A2(0, b, ·) = B4(b, Φ₂..₅), variables (b, z1..z5)
    let b_only5 = map_of(6, {
        let mut c = vec![Poly::zero(6), v(6, 0)];
        c.extend((1..6).map(|i| v(6, i)));
        c
    });
    let tail = chain.phi.select(&[1, 2, 3, 4]);
    let lhs = tail.compose(&chain.a2.compose(&b_only5)?)?;
    let inner = {
        let mut c = vec![v(6, 0)];
        c.extend(tail.embed(6, &[1, 2, 3, 4, 5]).components().iter().cloned());
        map_of(6, c)
    };
    let rhs = chain.b4.compose(&inner)?;
    compare(&mut r, "5.2-chain-b-action", &lhs, &rhs, &names6);

    // (5) the first three entries of B4 are (w1, w2 + b f, w3 + b g)
    let names5 = ["b", "w1", "w2", "w3", "w4"];
    compare(
        &mut r,
        "5.2-chain-c3-action",
        &chain.b4.select(&[0, 1, 2]),
        &map_of(5, chain.c3_action()),
        &names5,
    );

    // Φ is biregular
    let id5 = PolyMap::identity(5);
    let ok = chain.phi.compose(&chain.phi_inv)? == id5 && chain.phi_inv.compose(&chain.phi)? == id5;
    r.push("5.2-phi-biregular", ok, "Φ ∘ Φ⁻¹ or Φ⁻¹ ∘ Φ differs from the identity");
    Ok(r)
}

/// A solution of `φ f + ψ g = 1` and the induced polynomial automorphism of ℂ³.
#[derive(Clone, Debug, PartialEq)]
pub struct Bezout {
    pub f: Vec<QI>,
    pub g: Vec<QI>,
    pub phi: Vec<QI>,
    pub psi: Vec<QI>,
}

/// Extended Euclid on `f, g` (dense, low degree first).
pub fn bezout_trivialize(f: &[QI], g: &[QI]) -> Result<Bezout, SiegelError> {
    let (d, s, t) = uni::ext_gcd(f, g)?;
    if d != vec![QI::one()] {
        return Err(SiegelError::CommonRoot(Poly::from_dense(&d).display_with(&["w"])));
    }
    Ok(Bezout {
        f: uni::trim(f.to_vec()),
        g: uni::trim(g.to_vec()),
        phi: s,
        psi: t,
    })
}

impl Bezout {
    /// `[[1, 0, 0], [0, φ, ψ], [0, -g, f]]` with entries in `w1`.
    pub fn matrix(&self) -> Vec<Vec<Poly>> {
        let p = |c: &[QI]| Poly::from_dense(c);
        let (zero, one) = (Poly::zero(1), Poly::one(1));
        vec![
            vec![one, zero.clone(), zero.clone()],
            vec![zero.clone(), p(&self.phi), p(&self.psi)],
            vec![zero, -p(&self.g), p(&self.f)],
        ]
    }

    /// `[[f, g], [-ψ, φ]]`, the matrix as printed next to the Bézout identity.
    pub fn displayed_block(&self) -> Vec<Vec<Poly>> {
        let p = |c: &[QI]| Poly::from_dense(c);
        vec![vec![p(&self.f), p(&self.g)], vec![-p(&self.psi), p(&self.phi)]]
    }

    pub fn identity_holds(&self) -> bool {
        uni::add(&uni::mul(&self.phi, &self.f), &uni::mul(&self.psi, &self.g)) == vec![QI::one()]
    }

    pub fn det(&self) -> Poly {
        poly_det(&self.matrix(), 1)
    }

    /// The map `w ↦ (w1, φ w2 + ψ w3, -g w2 + f w3)` in variables `(w1, w2, w3)`.
    pub fn map(&self) -> PolyMap {
        let m = self.matrix();
        let n = 3;
        let lift = |p: &Poly| p.embed(n, &[0]);
        let comps = (0..3)
            .map(|i| {
                let mut acc = Poly::zero(n);
                for (j, e) in m[i].iter().enumerate() {
                    acc = &acc + &(&lift(e) * &v(n, j));
                }
                acc
            })
            .collect();
        PolyMap::new(n, comps).expect("three")
    }

    /// Conjugates `t·w = (w1, w2 + t f, w3 + t g)` to `w + (0, t, 0)`.
    pub fn conjugates_to_translation(&self) -> Result<bool, SiegelError> {
        let n = 4; // (t, w1, w2, w3)
        let t = v(n, 0);
        let f = Poly::from_dense(&self.f).embed(n, &[1]);
        let g = Poly::from_dense(&self.g).embed(n, &[1]);
        let act = PolyMap::new(n, vec![v(n, 1), &v(n, 2) + &(&t * &f), &v(n, 3) + &(&t * &g)])?;
        let m = self.map();
        let lhs = m.compose(&act)?;
        let mut rhs = m.embed(n, &[1, 2, 3]).components().to_vec();
        rhs[1] = &rhs[1] + &t;
        Ok(lhs == PolyMap::new(n, rhs)?)
    }

    /// `displayedᵗ · [[φ, ψ], [-g, f]] = I`: the printed matrix is the
    /// inverse transpose of the block used here.
    pub fn displayed_is_inverse_transpose(&self) -> bool {
        let d = self.displayed_block();
        let m = self.matrix();
        let block = [[&m[1][1], &m[1][2]], [&m[2][1], &m[2][2]]];
        (0..2).all(|i| {
            (0..2).all(|j| {
                let e = &(&d[0][i] * block[0][j]) + &(&d[1][i] * block[1][j]);
                e == if i == j { Poly::one(1) } else { Poly::zero(1) }
            })
        })
    }

    /// Degree bounds of the minimal Bézout pair: `deg φ < deg g`, `deg ψ < deg f`.
    pub fn is_degree_minimal(&self) -> bool {
        let deg = |p: &[QI]| uni::degree(p).map_or(-1, |d| d as i64);
        let (df, dg) = (deg(&self.f), deg(&self.g));
        if df <= 0 || dg <= 0 {
            return true;
        }
        deg(&self.phi) < dg && deg(&self.psi) < df
    }

    /// Runs the Bézout checks on the chain's `f, g`.
    pub fn checks(&self) -> Result<Report, SiegelError> {
        let mut r = Report::default();
        r.push("5.2-bezout-identity", self.identity_holds(), "φ f + ψ g differs from 1");
        r.push("5.2-bezout-degree-minimal", self.is_degree_minimal(), "Bézout pair is not degree minimal");
        let det = self.det();
        r.push("5.2-bezout-det", det == Poly::one(1), format!("det = {}", det.display_with(&["w"])));
        r.push(
            "5.2-bezout-translation",
            self.conjugates_to_translation()?,
            "the map does not conjugate the action to a translation",
        );
        r.push(
            "5.2-bezout-displayed-inverse-transpose",
            self.displayed_is_inverse_transpose(),
            "printed matrix is not the inverse transpose",
        );
        Ok(r)
    }
}

/// Chain identities and Bézout checks together.
pub fn trivialization_report() -> Result<Report, SiegelError> {
    let chain = TrivializationChain::displayed();
    let mut r = verify_trivialization_chain(&chain)?;
    let f = chain.f.to_dense()?;
    let g = chain.g.to_dense()?;
    r.extend(bezout_trivialize(&f, &g)?.checks()?);
    Ok(r)
}
