//! Integer-exact `f(n)` (chromatic number of `D(C_n)` for `n` points in
//! convex position) and `g(n) = max { i >= 1 : C(i, 2) <= n }`.
//!
//! `f(n) = n - ⌊√(2n + ¼) - ½⌋` is evaluated as `n - ⌊(isqrt(8n + 1) - 1) / 2⌋`,
//! which is the same number for every integer `n` and never touches floating
//! point. `f(n)` is defined here for every `n >= 1`; it equals
//! `χ(D(C_n))` from `n = 3` on.

use alloc::format;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormulaResult {
    pub n: u64,
    pub g: u64,
    pub f: u64,
}

impl FormulaResult {
    pub fn of(n: u64) -> Result<Self> {
        Ok(Self { n, g: g_of(n)?, f: f_of(n)? })
    }
}

// Largest n for which 8n + 1 is computed in u64 without overflow.
const N_MAX: u64 = (u64::MAX - 1) / 8;

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameters("n must be at least 1".into()))
    } else if n > N_MAX {
        Err(Error::InvalidParameters(format!("n = {n} is too large")))
    } else {
        Ok(())
    }
}

pub const fn binom2(i: u64) -> u64 {
    i * i.saturating_sub(1) / 2
}

pub fn g_of(n: u64) -> Result<u64> {
    check_n(n)?;
    // C(i, 2) <= n  <=>  (2i - 1)² <= 8n + 1.
    let g = (8 * n + 1).isqrt().div_ceil(2);
    assert!(binom2(g) <= n && n < binom2(g + 1), "g({n}) = {g} fails its bracket");
    Ok(g)
}

/// `n - ⌊√(2n + ¼) - ½⌋`, checked against `n - g(n) + 1`.
pub fn f_of(n: u64) -> Result<u64> {
    let direct = f_closed_form(n)?;
    let via_g = n + 1 - g_of(n)?;
    assert_eq!(direct, via_g, "closed form and n - g(n) + 1 disagree at n = {n}");
    Ok(direct)
}

/// Only the closed form, without the `g` cross-check.
pub fn f_closed_form(n: u64) -> Result<u64> {
    check_n(n)?;
    Ok(n - ((8 * n + 1).isqrt() - 1) / 2)
}

/// `f(n + 1) - f(n)`; zero exactly when `n + 1` is a triangular number
/// `C(i, 2)`.
pub fn f_step(n: u64) -> Result<u64> {
    check_n(n + 1)?;
    Ok(f_of(n + 1)? - f_of(n)?)
}

/// Whether `n = C(i, 2) - 1` for some positive integer `i`.
pub fn is_binom2_minus_one(n: u64) -> bool {
    let m = n + 1;
    let r = (8 * m + 1).isqrt();
    r * r == 8 * m + 1
}

/// Predicted `χ(D(C_{k,l})) = k + f(l)`, for `1 <= k <= l` and `l >= 3`.
pub fn theorem_value(k: u64, l: u64) -> Result<u64> {
    if l < 3 {
        return Err(Error::InvalidParameters(format!("need l >= 3, got l = {l}")));
    }
    if k < 1 || k > l {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= l, got k = {k}, l = {l}")));
    }
    Ok(k + f_of(l)?)
}
