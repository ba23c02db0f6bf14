//! Seeded generation of small exact scalars for sampled checks.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Q, QI};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn rand_q<R: Rng>(rng: &mut R, bound: i64) -> Q {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound.max(1));
    Q::new(BigInt::from(p), BigInt::from(q))
}

pub fn rand_nonzero_q<R: Rng>(rng: &mut R, bound: i64) -> Q {
    loop {
        let x = rand_q(rng, bound);
        if x != Q::from_integer(0.into()) {
            return x;
        }
    }
}

/// Strictly positive `p/q` with `1 <= p, q <= bound`.
pub fn rand_pos_q<R: Rng>(rng: &mut R, bound: i64) -> Q {
    let p = rng.gen_range(1..=bound.max(1));
    let q = rng.gen_range(1..=bound.max(1));
    Q::new(BigInt::from(p), BigInt::from(q))
}

pub fn rand_qi<R: Rng>(rng: &mut R, bound: i64) -> QI {
    QI::new(rand_q(rng, bound), rand_q(rng, bound))
}

pub fn rand_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}
