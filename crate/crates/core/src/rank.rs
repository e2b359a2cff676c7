//! Exact matrix rank over the rationals.
//!
//! The primary path is fraction-free (Bareiss) elimination on big integers.
//! Every result is re-derived modulo a random prime in `[2^60, 2^61)`; a rank
//! mod `p` can only be smaller than the rational rank, so agreement confirms
//! it and disagreement is reported as an internal inconsistency.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMethod {
    FractionFree,
    ModularVerified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    /// Prime used for the cross-check.
    pub prime: Option<u64>,
    /// Pivot rows and columns of the fraction-free elimination; the submatrix
    /// they select is nonsingular.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^60, 2^61)`.
pub fn random_prime(seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c = rng.gen_range(1u64 << 60..1u64 << 61) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Rank modulo a prime `p < 2^63`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for i in rank + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let f = mul_mod(a[i][c], inv, p);
            let (lo, hi) = a.split_at_mut(i);
            let (pivot, row) = (&lo[rank], &mut hi[0]);
            for (x, &y) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free elimination. Pivot in each column is the first nonzero
/// remaining row; columns without one are skipped.
pub fn rank_bareiss(rows: &[Vec<i64>]) -> (usize, Vec<usize>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut ids: Vec<usize> = (0..a.len()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let (mut rank, mut prow, mut pcol) = (0, Vec::new(), Vec::new());
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, piv);
        ids.swap(rank, piv);
        for i in rank + 1..a.len() {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        prow.push(ids[rank]);
        pcol.push(c);
        rank += 1;
    }
    (rank, prow, pcol)
}

/// Exact rank with a modular cross-check.
pub fn rank_exact(rows: &[Vec<i64>], seed: u64) -> Result<RankResult> {
    let (rank, pivot_rows, pivot_cols) = rank_bareiss(rows);
    let p = random_prime(seed);
    let modular = rank_mod_p(rows, p);
    if modular != rank {
        return Err(Error::Inconsistent(format!(
            "exact rank {rank} disagrees with rank {modular} modulo {p}"
        )));
    }
    Ok(RankResult { rank, method: RankMethod::ModularVerified, prime: Some(p), pivot_rows, pivot_cols })
}
