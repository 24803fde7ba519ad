//! Deterministic inputs shared by the benchmarks.

use luroth::exactalg::{Matrix, PrimeField};
use luroth::relfind::{eval_matrix, weighted_monomials};
use luroth::sampling::{random_generic, rng_for};
use luroth::DixmierOhno;
use rand::Rng;

pub const P: u64 = 10007;

pub fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

/// A `rows x cols` matrix of rank at most `rank`, built as a product of random factors.
pub fn low_rank_matrix(rows: usize, cols: usize, rank: usize, seed: u64) -> Matrix<u64> {
    let k = field();
    let mut rng = rng_for(seed, 0);
    let mut draw = |r: usize, c: usize| Matrix::from_flat(r, c, (0..r * c).map(|_| rng.gen_range(0..P)).collect()).unwrap();
    let a = draw(rows, rank);
    let b = draw(rank, cols);
    a.mul(&k, &b).unwrap()
}

/// Generic evaluation matrix of the given weighted degree, with the usual row margin.
pub fn evaluation_matrix(degree: u32, seed: u64) -> Matrix<u64> {
    let k = field();
    let d = DixmierOhno::new(k).unwrap();
    let mons = weighted_monomials(degree);
    let n = mons.len() + luroth::relfind::margin(mons.len());
    eval_matrix(&d, &random_generic(&k, seed, n), &mons)
}
