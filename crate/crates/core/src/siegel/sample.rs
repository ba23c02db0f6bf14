//! Gaussian-rational points of the domains, built inside by construction.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{sym3_matrix, z0};
use crate::linalg::scalar::norm_sqr;
use crate::linalg::{Matrix, Q, QI};
use crate::random::{rand_pos_q, rand_q};

/// Lower-triangular `L` with positive diagonal; `L Lᵗ` is positive definite.
fn rand_spd<R: Rng>(rng: &mut R, fix_l11: bool) -> Matrix<Q> {
    let mut l = Matrix::<Q>::zeros(3, 3);
    for i in 0..3 {
        for k in 0..i {
            l[(i, k)] = rand_q(rng, 4);
        }
        l[(i, i)] = rand_pos_q(rng, 4);
    }
    if fix_l11 {
        l[(0, 0)] = Q::one();
    }
    l.mul(&l.transpose()).expect("3x3")
}

fn sym_point(re: &Matrix<Q>, im: &Matrix<Q>) -> Vec<QI> {
    [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
        .iter()
        .map(|&p| QI::new(re[p].clone(), im[p].clone()))
        .collect()
}

fn rand_sym_re<R: Rng>(rng: &mut R) -> Matrix<Q> {
    let mut m = Matrix::<Q>::zeros(3, 3);
    for i in 0..3 {
        for k in i..3 {
            let x = rand_q(rng, 4);
            m[(i, k)] = x.clone();
            m[(k, i)] = x;
        }
    }
    m
}

/// A point of the Siegel upper half space of degree 3.
pub fn siegel3_point<R: Rng>(rng: &mut R) -> Vec<QI> {
    let re = rand_sym_re(rng);
    sym_point(&re, &rand_spd(rng, false))
}

/// A point of the fiber `z11 = i` of the Siegel upper half space.
pub fn d5_point<R: Rng>(rng: &mut R) -> Vec<QI> {
    let mut re = rand_sym_re(rng);
    re[(0, 0)] = Q::zero();
    sym_point(&re, &rand_spd(rng, true))
}

/// Any Gaussian-rational point of `Sym(3, ℂ)`.
pub fn sym3_point<R: Rng>(rng: &mut R) -> Vec<QI> {
    (0..6).map(|_| QI::new(rand_q(rng, 6), rand_q(rng, 6))).collect()
}

/// A point `(z, w)` of `Im z > |w|²`, with `n - 1` coordinates `w`.
pub fn ball_point<R: Rng>(rng: &mut R, n: usize) -> Vec<QI> {
    let w: Vec<QI> = (1..n).map(|_| QI::new(rand_q(rng, 4), rand_q(rng, 4))).collect();
    let r: Q = w.iter().map(norm_sqr).fold(Q::zero(), |a, b| a + b);
    let mut p = vec![QI::new(rand_q(rng, 4), r + rand_pos_q(rng, 4))];
    p.extend(w);
    p
}

pub fn in_ball(p: &[QI]) -> bool {
    let r: Q = p[1..].iter().map(norm_sqr).fold(Q::zero(), |a, b| a + b);
    p[0].im > r
}

/// `Im Z` positive definite, by leading principal minors.
pub fn in_siegel3(z: &[QI]) -> bool {
    let im = sym3_matrix(z).map(|c| c.im.clone());
    im.leading_minors().expect("square").iter().all(Q::is_positive)
}

pub fn in_d5(z: &[QI]) -> bool {
    z[0] == QI::new(Q::zero(), Q::one()) && in_siegel3(z)
}

/// `Z₀(τ, α)` lies in the fiber iff `α > (1 + τ²)⁻²`.
pub fn z0_in_domain(tau: &Q, alpha: &Q) -> bool {
    in_d5(&z0(tau, alpha))
}

/// A random `(τ, α)` with `α > (1 + τ²)⁻²`.
pub fn rand_tau_alpha<R: Rng>(rng: &mut R) -> (Q, Q) {
    let tau = rand_q(rng, 5);
    let s = Q::one() + &tau * &tau;
    let alpha = Q::one() / (&s * &s) + rand_pos_q(rng, 5);
    (tau, alpha)
}
