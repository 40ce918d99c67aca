use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::matrix::ExactMatrix;
use crate::scalar::{GaussianRational, Rational};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_scalar(r: &mut StdRng, bound: i64) -> GaussianRational {
    let mut part = || Rational::new(r.gen_range(-bound..=bound).into(), r.gen_range(1..=bound).into());
    GaussianRational::new(part(), part())
}

pub fn random_matrix(r: &mut StdRng, n: usize, bound: i64) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |_, _| random_scalar(r, bound))
}
