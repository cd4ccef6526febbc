//! p-adic valuations, the `alpha`/`beta` exponent functions, falling factorials
//! and inverses modulo a prime.
//!
//! Everything that counts polynomial functions on `Z/p^nZ` is expressed through
//! `alpha(p, k) = v_p(k!)` and its "inverse" `beta(p, n) = min { m : alpha(p, m) >= n }`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted by [`PrimeLevel`].
pub const MAX_PRIME: u32 = 7;

/// Largest modulus `p^n` accepted by [`PrimeLevel`]; every table fits comfortably in memory.
pub const MAX_MODULUS: u32 = 1 << 16;

/// A residue in `[0, p^n)`.
pub type Residue = u32;

pub fn is_prime(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is a prime this crate handles.
pub fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::PrimeOutOfRange(p));
    }
    Ok(())
}

/// The fixed prime `p` and level `n`, i.e. the ring `Z/p^nZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLevel", into = "RawLevel")]
pub struct PrimeLevel {
    p: u32,
    n: u32,
    modulus: u32,
}

#[derive(Serialize, Deserialize)]
struct RawLevel {
    p: u32,
    n: u32,
}

impl TryFrom<RawLevel> for PrimeLevel {
    type Error = Error;

    fn try_from(raw: RawLevel) -> Result<Self> {
        PrimeLevel::new(raw.p, raw.n)
    }
}

impl From<PrimeLevel> for RawLevel {
    fn from(level: PrimeLevel) -> Self {
        RawLevel { p: level.p, n: level.n }
    }
}

impl PrimeLevel {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        check_prime(p)?;
        if n == 0 {
            return Err(Error::InvalidLevel(n));
        }
        let modulus = p
            .checked_pow(n)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or(Error::ModulusTooLarge { p, n })?;
        Ok(PrimeLevel { p, n, modulus })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`.
    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The same prime at level `m`.
    pub fn with_level(&self, m: u32) -> Result<Self> {
        PrimeLevel::new(self.p, m)
    }

    /// `Z/pZ`.
    pub fn base(&self) -> Self {
        PrimeLevel { p: self.p, n: 1, modulus: self.p }
    }

    /// The level one below, or `None` at level 1.
    pub fn lower(&self) -> Option<Self> {
        (self.n > 1).then(|| PrimeLevel { p: self.p, n: self.n - 1, modulus: self.modulus / self.p })
    }

    pub fn higher(&self) -> Result<Self> {
        PrimeLevel::new(self.p, self.n + 1)
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> Residue {
        (x % self.modulus as u64) as Residue
    }

    /// Reduces a signed integer into `[0, p^n)`.
    #[inline]
    pub fn reduce_signed(&self, x: i64) -> Residue {
        x.rem_euclid(self.modulus as i64) as Residue
    }

    /// `beta(p, n)`: the length of a canonical coefficient vector at this level.
    pub fn beta(&self) -> u32 {
        beta(self.p, self.n)
    }
}

impl fmt::Display for PrimeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}Z", self.p, self.n)
    }
}

/// `v_p(m)`.
pub fn vp(p: u32, m: u64) -> Result<u32> {
    if m == 0 {
        return Err(Error::ZeroValuation);
    }
    let p = p as u64;
    let mut m = m;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    Ok(e)
}

/// `v_p` of a big integer; used by the factorial oracles.
pub fn vp_big(p: u32, m: &BigUint) -> Result<u32> {
    if *m == BigUint::default() {
        return Err(Error::ZeroValuation);
    }
    let zero = BigUint::default();
    let p = BigUint::from(p);
    let mut m = m.clone();
    let mut e = 0;
    while &m % &p == zero {
        m /= &p;
        e += 1;
    }
    Ok(e)
}

/// `alpha(p, n) = sum_{k>=1} floor(n / p^k)`, which is `v_p(n!)`.
pub fn alpha(p: u32, n: u64) -> u64 {
    let p = p as u64;
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// `beta(p, n) = min { m : alpha(p, m) >= n }`.
///
/// Linear scan from `n` upward: `alpha(p, m) < m` for every `m >= 1`, so the
/// answer is never below `n`, and `alpha` only moves at multiples of `p`.
pub fn beta(p: u32, n: u32) -> u32 {
    if n == 0 {
        return 0;
    }
    let mut m = n;
    while alpha(p, m as u64) < n as u64 {
        m += 1;
    }
    m
}

/// `sum_{k=from}^{to} beta(p, k)`; zero for an empty range.
pub fn beta_sum(p: u32, from: u32, to: u32) -> u64 {
    (from..=to).map(|k| beta(p, k) as u64).sum()
}

/// The falling factorial `(x)_k = x (x-1) ... (x-k+1)` reduced mod `modulus`.
pub fn falling_eval(x: u64, k: u32, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    for i in 0..k as u64 {
        if acc == 0 {
            break;
        }
        let factor = (x + modulus - i % modulus) % modulus;
        acc = acc * factor % modulus;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue mod `p`.
pub fn inv_mod_p(a: u32, p: u32) -> Result<u32> {
    let a = a % p;
    if a == 0 {
        return Err(Error::NotInvertible { value: a, modulus: p });
    }
    // Fermat: a^(p-2).
    Ok(pow_mod(a as u64, (p - 2) as u64, p as u64) as u32)
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

pub fn big_pow(base: u32, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

/// The `p`-part of `m`: the largest power of `p` dividing it.
pub fn p_part(p: u32, m: &BigUint) -> BigUint {
    big_pow(p, vp_big(p, m).unwrap_or(0) as u64)
}
