//! Benchmark fixtures shared by the criterion harness.

use jalg::jalgebra::catalog::{ball, d5, lie_ball};
use jalg::jalgebra::NormalJAlgebra;
use jalg::linalg::{Matrix, Subspace, Q, QI};
use jalg::random::{rand_q, rng};
use jalg::siegel::sample::sym3_point;
use jalg::siegel::{d5_gamma_vectors, y_tau};

pub struct Fixtures {
    pub ball6: NormalJAlgebra,
    pub lieball8: NormalJAlgebra,
    pub d5: NormalJAlgebra,
    /// n_Γ + ℝ y₀ in D₅.
    pub d5_ext: Subspace<Q>,
    pub dense: Matrix<Q>,
    pub points: Vec<Vec<QI>>,
}

impl Fixtures {
    pub fn new() -> Self {
        let d5 = d5().expect("catalog");
        let mut vs = d5_gamma_vectors(&d5).expect("generators").to_vec();
        vs.push(y_tau(&d5, &Q::from_integer(0.into())).expect("y_0"));
        let d5_ext = Subspace::span(d5.dim(), &vs).expect("dimension");
        let mut g = rng(7);
        let rows: Vec<Vec<Q>> = (0..12).map(|_| (0..12).map(|_| rand_q(&mut g, 9)).collect()).collect();
        Fixtures {
            ball6: ball(6).expect("catalog"),
            lieball8: lie_ball(8).expect("catalog"),
            d5,
            d5_ext,
            dense: Matrix::from_rows(rows).expect("rectangular"),
            points: (0..16).map(|_| sym3_point(&mut g)).collect(),
        }
    }
}

impl Default for Fixtures {
    fn default() -> Self {
        Self::new()
    }
}
