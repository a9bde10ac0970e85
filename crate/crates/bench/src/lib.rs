//! Shared fixtures for the benchmark suite.

use morita::algebra::Algebra;
use morita::bimodule::Bimodule;
use morita::corpus::random_bimodule;
use morita::mat::Mat;
use morita::scalar::{ratio, Scalar};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Dense random rational matrix with denominators up to 6.
pub fn random_mat(n: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Mat::from_fn(n, n, |_, _| -> Scalar {
        ratio(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=6))
    })
}

/// A composable pair of seeded random bimodules over `M₂(Q)` legs.
pub fn composable_pair(seed: u64) -> (Bimodule, Bimodule) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = Arc::new(Algebra::matrix_algebra(2));
    let b = Arc::new(Algebra::product(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(1)));
    let c = Arc::new(Algebra::group_algebra_elementary_2(1));
    let m = random_bimodule(&a, &b, 8, "bench-m", &mut rng);
    let n = random_bimodule(&b, &c, 8, "bench-n", &mut rng);
    (m, n)
}
