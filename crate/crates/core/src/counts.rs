//! Sizes of the objects the isomorphism search ranges over.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

/// Checks `0 <= t0 < t <= n` and `(t - t0) | (n - t0)`; returns `mu`.
fn rays(n: usize, t: usize, t0: usize) -> Result<u64> {
    if !(t0 < t && t <= n) || n > 62 {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= t0 < t <= n, got n={n}, t={t}, t0={t0}"
        )));
    }
    let (u, h) = (n - t0, t - t0);
    if u % h != 0 {
        return Err(Error::InvalidParameters(format!(
            "{h} does not divide {u}: no balanced covering star"
        )));
    }
    Ok(((1u64 << u) - 1) / ((1u64 << h) - 1))
}

/// Size of an equivalence class: `mu! * ((2^t - 1)!)^mu`.
pub fn count_equiv_class(n: usize, t: usize, t0: usize) -> Result<BigUint> {
    let mu = rays(n, t, t0)?;
    let per_ray = factorial((1u64 << t) - 1);
    Ok(factorial(mu) * per_ray.pow(mu as u32))
}

/// Number of invertible `n x n` matrices over GF(2): `prod_{i=1..n} (2^n - 2^(i-1))`.
pub fn count_collineations(n: usize) -> BigUint {
    (0..n).map(|i| pow2(n) - pow2(i)).product()
}

/// Size of the pruned relabelling set: `C(mu, r) * r! * |C_h|^r`, `r = u / h`.
pub fn count_search_space(u: usize, h: usize) -> Result<BigUint> {
    if h == 0 || u == 0 || !u.is_multiple_of(h) || u > 62 {
        return Err(Error::NoBalancedSpread { u, h });
    }
    let mu = ((1u64 << u) - 1) / ((1u64 << h) - 1);
    let r = (u / h) as u64;
    // C(mu, r) * r! = mu! / (mu - r)!
    let ordered: BigUint = (mu - r + 1..=mu).fold(BigUint::one(), |acc, i| acc * i);
    Ok(ordered * count_collineations(h).pow(r as u32))
}

/// Worst-case comparisons of the unpruned method: `|C_n| * |E|`.
pub fn count_naive(n: usize, t: usize, t0: usize) -> Result<BigUint> {
    Ok(count_collineations(n) * count_equiv_class(n, t, t0)?)
}
