#![allow(dead_code)]

use kgsys_core::{ExactMatrix, GaussianRational, Rational};
use proptest::prelude::*;

pub fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=bound).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn positive_rational(bound: i64) -> impl Strategy<Value = Rational> {
    (1..=bound, 1..=bound).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn gauss(bound: i64) -> impl Strategy<Value = GaussianRational> {
    (rational(bound), rational(bound)).prop_map(|(re, im)| GaussianRational::new(re, im))
}

pub fn square(n: usize, bound: i64) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(gauss(bound), n * n).prop_map(move |e| ExactMatrix::new(n, n, e).unwrap())
}

/// Extent 1..=4 (d <= 3) matrix with a degree 0..=max_degree.
pub fn matrix_and_degree(max_degree: u32) -> impl Strategy<Value = (ExactMatrix, u32)> {
    (1usize..=4, 0..=max_degree).prop_flat_map(|(n, deg)| (square(n, 5), Just(deg)))
}

pub fn pair_and_degree(max_degree: u32) -> impl Strategy<Value = (ExactMatrix, ExactMatrix, u32)> {
    (1usize..=4, 0..=max_degree).prop_flat_map(|(n, deg)| (square(n, 5), square(n, 5), Just(deg)))
}

/// Rank-deficient matrix: the last row is a combination of the others.
pub fn singular(n: usize) -> impl Strategy<Value = ExactMatrix> {
    (square(n, 5), proptest::collection::vec(gauss(3), n)).prop_map(move |(m, coeffs)| {
        let mut m = m;
        for c in 0..n {
            let acc = (0..n - 1).fold(GaussianRational::default(), |acc, r| &acc + &(&coeffs[r] * m.get(r, c)));
            m.set(n - 1, c, acc);
        }
        m
    })
}
