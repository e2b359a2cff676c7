//! Binomial coefficients: exact integer ones, and the real polynomial
//! `C(x, r) = x(x-1)...(x-r+1)/r!` with its inverse and derivative.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Exact `C(n, k)` for integers. Saturates at `u128::MAX` (never reached at
/// the sizes used here).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = match acc.checked_mul((n - i) as u128) {
            Some(p) => p / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Signed-index version with `C(n, k) = 0` for negative `k`.
pub fn binomial_i(n: u64, k: i64) -> u128 {
    if k < 0 {
        0
    } else {
        binomial(n, k as u64)
    }
}

/// `r!` as a float.
pub fn factorial(r: usize) -> f64 {
    (1..=r).map(|i| i as f64).product()
}

/// The binomial polynomial evaluated at a real point.
pub fn gbinom(x: f64, r: usize) -> f64 {
    let mut num = 1.0;
    for i in 0..r {
        num *= x - i as f64;
    }
    num / factorial(r)
}

/// `C(y, r)` on the increasing branch and 0 below it (`y < r - 1`), for
/// thresholds written as binomials of possibly small real arguments.
pub fn gbinom_branch(y: f64, r: usize) -> f64 {
    if r > 0 && y < r as f64 - 1.0 {
        0.0
    } else {
        gbinom(y, r)
    }
}

/// A record of one evaluation of the binomial polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GBinom {
    pub x: f64,
    pub r: usize,
    pub value: f64,
}

impl GBinom {
    pub fn eval(x: f64, r: usize) -> Self {
        GBinom { x, r, value: gbinom(x, r) }
    }

    /// The real `x >= r - 1` with `C(x, r) = m`.
    pub fn solve(m: u64, r: usize) -> Result<Self> {
        let x = solve_x(m, r)?;
        Ok(GBinom { x, r, value: m as f64 })
    }
}

/// Derivative of `C(x, r)` in `x`, as `Σ_{i=1..r} C(x-i, r-i) / i`.
pub fn gbinom_derivative(x: f64, r: usize) -> f64 {
    (1..=r).map(|i| gbinom(x - i as f64, r - i) / i as f64).sum()
}

/// The integer `k >= r` with `C(k, r) = m`, if one exists.
pub fn integer_root(m: u64, r: usize) -> Option<u64> {
    if r == 0 {
        return None;
    }
    let (k, m) = (r as u64, m as u128);
    let (mut lo, mut hi) = (k, k + 1);
    while binomial(hi, k) <= m {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if binomial(mid, k) <= m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (binomial(lo, k) == m).then_some(lo)
}

/// Solves `C(x, r) = m` on the increasing branch `x >= r - 1`.
///
/// Exact integers are detected with integer arithmetic first; otherwise the
/// root is bracketed in `[r-1, r-1+m+r]` and bisected to full precision.
pub fn solve_x(m: u64, r: usize) -> Result<f64> {
    if r == 0 {
        return domain("C(x, 0) = 1 is constant; solve_x needs r >= 1");
    }
    if m == 0 {
        return Ok(r as f64 - 1.0);
    }
    if let Some(k) = integer_root(m, r) {
        return Ok(k as f64);
    }
    inverse(m as f64, r)
}

/// Solves `C(x, r) = target` for a real target `>= 0` on `x >= r - 1`.
pub fn inverse(target: f64, r: usize) -> Result<f64> {
    if r == 0 {
        return domain("C(x, 0) = 1 is constant; inverse needs r >= 1");
    }
    if target < 0.0 || !target.is_finite() {
        return domain(format!("inverse needs a finite target >= 0, got {target}"));
    }
    let lo0 = r as f64 - 1.0;
    let mut lo = lo0;
    let mut hi = lo0 + target + r as f64;
    while gbinom(hi, r) < target {
        hi = lo0 + 2.0 * (hi - lo0);
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gbinom(mid, r) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
