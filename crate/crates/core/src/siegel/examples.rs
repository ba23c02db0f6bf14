//! The two ball examples: a Heisenberg group of fields on the three-ball
//! and the discrete group of affine maps of the two-ball.

use num_traits::{One, Zero};
use crate::linalg::scalar::{gi, q, real};
use crate::linalg::{AffineField, AffineMap, Matrix, QI};
use crate::random::{rand_int, rng};
use crate::report::Report;

/// `x₁ = 2i w₁∂z + ∂w₁`, `x₂ = 2(w₁ + w₂)∂z + i∂w₁ + i∂w₂`, `x₃ = ∂z` on `(z, w₁, w₂)`.
pub fn b3_example_fields() -> [AffineField; 3] {
    let x1 = AffineField::from_terms(3, &[(0, 1, gi(0, 2))], &[(1, gi(1, 0))]);
    let x2 = AffineField::from_terms(3, &[(0, 1, gi(2, 0)), (0, 2, gi(2, 0))], &[(1, gi(0, 1)), (2, gi(0, 1))]);
    let x3 = AffineField::from_terms(3, &[], &[(0, gi(1, 0))]);
    [x1, x2, x3]
}

/// `φ_{2k, m+in}(z, w) = (z + 2(n + im)w + i(m² + n²) + 2k, w + m + in)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaElement {
    pub k: i64,
    pub m: i64,
    pub n: i64,
}

impl GammaElement {
    pub fn new(k: i64, m: i64, n: i64) -> Self {
        GammaElement { k, m, n }
    }

    pub fn affine_map(&self) -> AffineMap {
        let (k, m, n) = (self.k, self.m, self.n);
        let lin = Matrix::from_rows(vec![vec![QI::one(), gi(2 * n, 2 * m)], vec![QI::zero(), QI::one()]]).expect("2x2");
        AffineMap::new(lin, vec![gi(2 * k, m * m + n * n), gi(m, n)]).expect("2x2")
    }

    /// Reads the parameters off an affine map and checks membership.
    pub fn from_affine(f: &AffineMap) -> Option<Self> {
        if f.dim() != 2 {
            return None;
        }
        let t = f.translation();
        let as_int = |x: &crate::linalg::Q| x.is_integer().then(|| x.to_integer()).and_then(|v| i64::try_from(v).ok());
        let m = as_int(&t[1].re)?;
        let n = as_int(&t[1].im)?;
        let two_k = as_int(&t[0].re)?;
        if two_k % 2 != 0 {
            return None;
        }
        let g = GammaElement::new(two_k / 2, m, n);
        (g.affine_map() == *f).then_some(g)
    }

    /// `k'' = k + k' - (m n' - n m')`.
    pub fn compose(&self, o: &Self) -> Self {
        GammaElement::new(self.k + o.k - (self.m * o.n - self.n * o.m), self.m + o.m, self.n + o.n)
    }
}

/// Closure of the family under composition and inverses, and unit Jacobian.
pub fn gamma_b2_group_law_check(seed: u64, pairs: usize) -> Report {
    let mut r = Report::default();
    let id = GammaElement::new(0, 0, 0).affine_map();
    r.push("3.1-gamma-identity", id.is_identity(), "φ_{0,0} is not the identity");
    let mut rng = rng(seed);
    let mut closure = Vec::new();
    let mut det = Vec::new();
    for _ in 0..pairs {
        let g = GammaElement::new(rand_int(&mut rng, 9), rand_int(&mut rng, 9), rand_int(&mut rng, 9));
        let h = GammaElement::new(rand_int(&mut rng, 9), rand_int(&mut rng, 9), rand_int(&mut rng, 9));
        let gh = g.affine_map().compose(&h.affine_map()).expect("2x2");
        match GammaElement::from_affine(&gh) {
            Some(p) if p == g.compose(&h) => {}
            other => closure.push(format!("{g:?} ∘ {h:?} -> {other:?}")),
        }
        let inv = GammaElement::new(-g.k, -g.m, -g.n);
        if !g.affine_map().compose(&inv.affine_map()).expect("2x2").is_identity() {
            closure.push(format!("{g:?} has no inverse in the family"));
        }
        if g.affine_map().jacobian_det() != real(q(1)) {
            det.push(format!("{g:?}"));
        }
    }
    r.push("3.1-gamma-closure", closure.is_empty(), closure.join("; "));
    r.push("3.1-gamma-det", det.is_empty(), det.join("; "));
    r
}
