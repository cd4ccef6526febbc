//! Polynomial functions on `Z/p^nZ`.
//!
//! Polynomials enter in the monomial basis ([`MonomialPoly`]). The functions they
//! induce are stored extensionally as [`FunctionTable`]s. Two derived normal forms
//! are available: the canonical falling-factorial coefficient vector
//! ([`CanonicalForm`]) that identifies a polynomial function uniquely, and the
//! `(x^p - x)`-adic layers ([`CarlitzForm`]).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::{alpha, falling_eval, PrimeLevel, Residue};
use crate::error::{Error, Result};

fn check_same(a: &PrimeLevel, b: &PrimeLevel) -> Result<()> {
    if a != b {
        return Err(Error::ContextMismatch { left: a.to_string(), right: b.to_string() });
    }
    Ok(())
}

/// A polynomial with coefficients in `Z/p^nZ`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialPoly {
    coeffs: Vec<Residue>,
    level: PrimeLevel,
}

impl MonomialPoly {
    /// Builds a polynomial from integer coefficients, reducing them mod `p^n`.
    pub fn new<I>(coeffs: I, level: PrimeLevel) -> Self
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let coeffs = coeffs.into_iter().map(|c| level.reduce_signed(c.into())).collect();
        Self::from_residues(coeffs, level)
    }

    fn from_residues(mut coeffs: Vec<Residue>, level: PrimeLevel) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        MonomialPoly { coeffs, level }
    }

    pub fn zero(level: PrimeLevel) -> Self {
        MonomialPoly { coeffs: Vec::new(), level }
    }

    /// The polynomial `x`.
    pub fn x(level: PrimeLevel) -> Self {
        Self::from_residues(vec![0, 1], level)
    }

    /// `c x^k`.
    pub fn monomial(c: i64, k: usize, level: PrimeLevel) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = level.reduce_signed(c);
        Self::from_residues(coeffs, level)
    }

    /// Parses comma-separated coefficients, constant term first: `"0,0,1"` is `x^2`.
    pub fn parse(text: &str, level: PrimeLevel) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::zero(level));
        }
        let coeffs = text
            .split(',')
            .map(|tok| i64::from_str(tok.trim()).map_err(|_| Error::ParsePoly(text.to_string())))
            .collect::<Result<Vec<i64>>>()?;
        Ok(Self::new(coeffs, level))
    }

    /// Comma-separated coefficients, the inverse of [`MonomialPoly::parse`].
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn coeffs(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn level(&self) -> PrimeLevel {
        self.level
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation mod `p^n`.
    pub fn eval(&self, x: Residue) -> Residue {
        let m = self.level.modulus() as u64;
        let x = x as u64 % m;
        self.coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c as u64) % m) as Residue
    }

    /// The induced function `[f]_{p^n}`.
    pub fn table(&self) -> FunctionTable {
        let values = (0..self.level.modulus()).map(|x| self.eval(x)).collect();
        FunctionTable { values, level: self.level }
    }

    /// The same integer coefficients read at another level of the same prime.
    pub fn at_level(&self, level: PrimeLevel) -> Result<Self> {
        if level.p() != self.level.p() {
            return Err(Error::ContextMismatch { left: self.level.to_string(), right: level.to_string() });
        }
        if level.n() > self.level.n() {
            return Err(Error::ContextMismatch { left: self.level.to_string(), right: level.to_string() });
        }
        Ok(Self::new(self.coeffs.iter().map(|&c| c as i64), level))
    }

    /// The formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| self.level.reduce(j as u64 * c as u64))
            .collect();
        Self::from_residues(coeffs, self.level)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.level, &other.level)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0) as u64;
                let b = other.coeffs.get(i).copied().unwrap_or(0) as u64;
                self.level.reduce(a + b)
            })
            .collect();
        Ok(Self::from_residues(coeffs, self.level))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.level, &other.level)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.level));
        }
        let m = self.level.modulus() as u64;
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a as u64 * b as u64) % m;
            }
        }
        Ok(Self::from_residues(coeffs.into_iter().map(|c| c as Residue).collect(), self.level))
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = self.level.reduce_signed(c) as u64;
        let coeffs = self.coeffs.iter().map(|&a| self.level.reduce(a as u64 * c)).collect();
        Self::from_residues(coeffs, self.level)
    }

    /// Composition `self(other(x))` as polynomials.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same(&self.level, &other.level)?;
        let mut acc = Self::zero(self.level);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(other)?.add(&Self::new([c as i64], self.level))?;
        }
        Ok(acc)
    }

    /// `(x^p - x)`.
    pub fn fermat(level: PrimeLevel) -> Self {
        Self::monomial(1, level.p() as usize, level).add(&Self::monomial(-1, 1, level)).expect("same level")
    }
}

impl fmt::Display for MonomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A function `Z/p^nZ -> Z/p^nZ` stored as its value table.
///
/// Ordering and hashing are by level first, then values, so sorted vectors of
/// tables support binary-search membership.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionTable {
    level: PrimeLevel,
    values: Vec<Residue>,
}

impl Serialize for FunctionTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl FunctionTable {
    pub fn new(values: Vec<Residue>, level: PrimeLevel) -> Result<Self> {
        let modulus = level.modulus();
        if values.len() != modulus as usize {
            return Err(Error::BadTableLength { len: values.len(), modulus });
        }
        if let Some(&value) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::ValueOutOfRange { value, modulus });
        }
        Ok(FunctionTable { values, level })
    }

    pub(crate) fn from_raw(values: Vec<Residue>, level: PrimeLevel) -> Self {
        debug_assert_eq!(values.len(), level.modulus() as usize);
        FunctionTable { values, level }
    }

    pub fn from_fn(level: PrimeLevel, f: impl Fn(Residue) -> Residue) -> Self {
        let values = (0..level.modulus()).map(|x| f(x) % level.modulus()).collect();
        FunctionTable { values, level }
    }

    pub fn identity(level: PrimeLevel) -> Self {
        Self::from_fn(level, |x| x)
    }

    pub fn constant(level: PrimeLevel, c: Residue) -> Self {
        Self::from_fn(level, |_| c)
    }

    pub fn level(&self) -> PrimeLevel {
        self.level
    }

    pub fn values(&self) -> &[Residue] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: Residue) -> Residue {
        self.values[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| i as Residue == v)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.values.len()];
        for &v in &self.values {
            if std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        true
    }

    pub fn has_zero(&self) -> bool {
        self.values.contains(&0)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same(&self.level, &other.level)?;
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &Self) -> Self {
        let values = other.values.iter().map(|&y| self.values[y as usize]).collect();
        FunctionTable { values, level: self.level }
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_bijective() {
            return Err(Error::NotPermutation);
        }
        let mut values = vec![0; self.values.len()];
        for (x, &y) in self.values.iter().enumerate() {
            values[y as usize] = x as Residue;
        }
        Ok(FunctionTable { values, level: self.level })
    }

    /// Pointwise product mod `p^n`.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.level, &other.level)?;
        let m = self.level.modulus() as u64;
        let values =
            self.values.iter().zip(&other.values).map(|(&a, &b)| (a as u64 * b as u64 % m) as Residue).collect();
        Ok(FunctionTable { values, level: self.level })
    }

    /// Checks that `x = y mod p^m` implies `f(x) = f(y) mod p^m` for the level `m` below.
    pub fn preserves_congruences(&self) -> bool {
        match self.level.lower() {
            None => true,
            Some(lower) => self.check_projectable(lower).is_ok(),
        }
    }

    fn check_projectable(&self, lower: PrimeLevel) -> Result<()> {
        let small = lower.modulus();
        for x in 0..small {
            let image = self.values[x as usize] % small;
            let mut lift = x + small;
            while lift < self.level.modulus() {
                if self.values[lift as usize] % small != image {
                    return Err(Error::NotCongruencePreserving(small));
                }
                lift += small;
            }
        }
        Ok(())
    }

    /// The induced function one level down (`pi_{n-1}`).
    pub fn project(&self) -> Result<Self> {
        let lower = self.level.lower().ok_or(Error::LevelTooLow { min: 2, n: self.level.n() })?;
        self.project_to(lower)
    }

    /// The induced function at any lower level of the same prime.
    pub fn project_to(&self, lower: PrimeLevel) -> Result<Self> {
        if lower.p() != self.level.p() || lower.n() > self.level.n() {
            return Err(Error::ContextMismatch { left: self.level.to_string(), right: lower.to_string() });
        }
        self.check_projectable(lower)?;
        Ok(self.project_unchecked(lower))
    }

    pub(crate) fn project_unchecked(&self, lower: PrimeLevel) -> Self {
        let small = lower.modulus();
        let values = self.values[..small as usize].iter().map(|&v| v % small).collect();
        FunctionTable { values, level: lower }
    }
}

/// The unique representative `sum a_k (x)_k` with `0 <= a_k < p^(n - alpha(k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    #[serde(skip)]
    level: PrimeLevel,
    coeffs: Vec<Residue>,
}

/// The bound `p^(n - alpha(k))` on each canonical coefficient, `k < beta(n)`.
pub fn canonical_bounds(level: PrimeLevel) -> Vec<u32> {
    (0..level.beta())
        .map(|k| level.p().pow(level.n() - alpha(level.p(), k as u64) as u32))
        .collect()
}

/// Stirling numbers of the second kind `S(j, k)` mod `modulus` for `j <= max_degree`.
fn stirling2_rows(max_degree: usize, modulus: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = vec![vec![1 % modulus]];
    for j in 1..=max_degree {
        let prev = &rows[j - 1];
        let mut row = vec![0u64; j + 1];
        for k in 1..=j {
            let stay = if k < prev.len() { k as u64 * prev[k] % modulus } else { 0 };
            row[k] = (stay + prev[k - 1]) % modulus;
        }
        rows.push(row);
    }
    rows
}

fn inverse_mod(a: u64, modulus: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(modulus as i128) as u64)
}

impl CanonicalForm {
    /// Validates a coefficient vector against the canonical bounds.
    pub fn new(coeffs: Vec<Residue>, level: PrimeLevel) -> Result<Self> {
        let bounds = canonical_bounds(level);
        if coeffs.len() != bounds.len() {
            return Err(Error::BadTableLength { len: coeffs.len(), modulus: level.modulus() });
        }
        for (&a, &bound) in coeffs.iter().zip(&bounds) {
            if a >= bound {
                return Err(Error::ValueOutOfRange { value: a, modulus: bound });
            }
        }
        Ok(CanonicalForm { level, coeffs })
    }

    pub(crate) fn from_raw(coeffs: Vec<Residue>, level: PrimeLevel) -> Self {
        CanonicalForm { level, coeffs }
    }

    /// Canonical form of the function induced by `f`.
    ///
    /// Rewrites `f` in the falling-factorial basis via Stirling numbers of the
    /// second kind, drops the terms with `k >= beta(n)` (they vanish identically)
    /// and reduces each remaining `a_k` mod `p^(n - alpha(k))`.
    pub fn from_poly(f: &MonomialPoly) -> Self {
        let level = f.level();
        let modulus = level.modulus() as u64;
        let bounds = canonical_bounds(level);
        let mut acc = vec![0u64; bounds.len()];
        if let Some(deg) = f.degree() {
            let rows = stirling2_rows(deg, modulus);
            for (j, &c) in f.coeffs().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (k, &s) in rows[j].iter().enumerate().take(bounds.len()) {
                    acc[k] = (acc[k] + c as u64 * s) % modulus;
                }
            }
        }
        let coeffs = acc.iter().zip(&bounds).map(|(&a, &b)| (a % b as u64) as Residue).collect();
        CanonicalForm { level, coeffs }
    }

    /// Recovers the canonical form from a value table, or reports that the table
    /// is not a polynomial function.
    ///
    /// Solves `f(m) = sum_{k<=m} a_k (m)_k` for `m = 0, 1, ...` in turn: the
    /// residual at `m` must be divisible by `p^alpha(m)`, and `a_m` is the
    /// quotient times the inverse of the unit part of `m!`.
    pub fn from_table(table: &FunctionTable) -> Result<Self> {
        let level = table.level();
        let p = level.p() as u64;
        let modulus = level.modulus() as u64;
        let bounds = canonical_bounds(level);
        let mut coeffs: Vec<Residue> = Vec::with_capacity(bounds.len());
        for m in 0..bounds.len() {
            let mut residual = table.get(m as Residue) as u64;
            for (k, &a) in coeffs.iter().enumerate() {
                let term = a as u64 * falling_eval(m as u64, k as u32, modulus) % modulus;
                residual = (residual + modulus - term) % modulus;
            }
            let e = alpha(level.p(), m as u64) as u32;
            let pe = p.pow(e);
            if !residual.is_multiple_of(pe) {
                return Err(Error::NotPolynomial);
            }
            let bound = bounds[m] as u64;
            let unit = (1..=m as u64).fold(1u64, |acc, i| {
                let mut i = i;
                while i % p == 0 {
                    i /= p;
                }
                acc * i % bound
            });
            let inv = inverse_mod(unit, bound).expect("unit part of m! is coprime to p");
            coeffs.push(((residual / pe) % bound * inv % bound) as Residue);
        }
        let form = CanonicalForm { level, coeffs };
        if form.table() != *table {
            return Err(Error::NotPolynomial);
        }
        Ok(form)
    }

    pub fn coeffs(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn level(&self) -> PrimeLevel {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    /// The representative `sum a_k (x)_k` expanded into the monomial basis.
    pub fn to_monomial(&self) -> MonomialPoly {
        let level = self.level;
        let modulus = level.modulus() as u64;
        let mut result = vec![0u64; self.coeffs.len().max(1)];
        // falling holds the monomial coefficients of (x)_k.
        let mut falling = vec![1 % modulus];
        for (k, &a) in self.coeffs.iter().enumerate() {
            for (i, &c) in falling.iter().enumerate() {
                result[i] = (result[i] + a as u64 * c) % modulus;
            }
            // (x)_{k+1} = (x)_k * (x - k)
            let shift = (modulus - k as u64 % modulus) % modulus;
            let mut next = vec![0u64; falling.len() + 1];
            for (i, &c) in falling.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % modulus;
                next[i] = (next[i] + c * shift) % modulus;
            }
            falling = next;
        }
        MonomialPoly::from_residues(result.into_iter().map(|c| c as Residue).collect(), level)
    }

    /// Evaluates `sum a_k (x)_k` at every point.
    pub fn table(&self) -> FunctionTable {
        let modulus = self.level.modulus() as u64;
        let values = (0..modulus)
            .map(|x| {
                let mut acc = 0u64;
                let mut falling = 1 % modulus;
                for (k, &a) in self.coeffs.iter().enumerate() {
                    acc = (acc + a as u64 * falling) % modulus;
                    falling = falling * ((x + modulus - k as u64 % modulus) % modulus) % modulus;
                }
                acc as Residue
            })
            .collect();
        FunctionTable::from_raw(values, self.level)
    }
}

/// True iff `f` induces the zero function, read off the canonical coefficients.
pub fn is_zero_function(f: &MonomialPoly) -> bool {
    CanonicalForm::from_poly(f).is_zero()
}

/// The layers `f_0, f_1, ...` of `f = sum f_m (x^p - x)^m` with `deg f_m < p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzForm {
    layers: Vec<MonomialPoly>,
    level: PrimeLevel,
}

impl CarlitzForm {
    /// Repeated division with remainder by the monic polynomial `x^p - x`.
    pub fn decompose(f: &MonomialPoly) -> Self {
        let level = f.level();
        let p = level.p() as usize;
        let modulus = level.modulus() as u64;
        let mut current: Vec<u64> = f.coeffs().iter().map(|&c| c as u64).collect();
        let mut layers = Vec::new();
        loop {
            let mut quotient = vec![0u64; current.len().saturating_sub(p - 1)];
            for i in (p..current.len()).rev() {
                let t = current[i];
                if t == 0 {
                    continue;
                }
                current[i] = 0;
                current[i - p + 1] = (current[i - p + 1] + t) % modulus;
                quotient[i - p] = t;
            }
            current.truncate(p);
            layers.push(MonomialPoly::from_residues(current.iter().map(|&c| c as Residue).collect(), level));
            while quotient.last() == Some(&0) {
                quotient.pop();
            }
            if quotient.is_empty() {
                break;
            }
            current = quotient;
        }
        CarlitzForm { layers, level }
    }

    pub fn layers(&self) -> &[MonomialPoly] {
        &self.layers
    }

    /// Layer `k`, zero past the end.
    pub fn layer(&self, k: usize) -> MonomialPoly {
        self.layers.get(k).cloned().unwrap_or_else(|| MonomialPoly::zero(self.level))
    }

    /// `sum f_m (x^p - x)^m`.
    pub fn reconstruct(&self) -> MonomialPoly {
        let fermat = MonomialPoly::fermat(self.level);
        let mut acc = MonomialPoly::zero(self.level);
        for layer in self.layers.iter().rev() {
            acc = acc.mul(&fermat).and_then(|a| a.add(layer)).expect("same level");
        }
        acc
    }
}

/// Decides `[f]_{p^n} = [g]_{p^n}` layerwise: `f_k = g_k mod p^(n-k)` for `k < n`.
/// Only valid for `n <= p`.
pub fn carlitz_equal(f: &MonomialPoly, g: &MonomialPoly) -> Result<bool> {
    check_same(&f.level(), &g.level())?;
    let level = f.level();
    let (p, n) = (level.p(), level.n());
    if n > p {
        return Err(Error::LevelAbovePrime { p, n });
    }
    let cf = CarlitzForm::decompose(f);
    let cg = CarlitzForm::decompose(g);
    for k in 0..n as usize {
        let modulus = p.pow(n - k as u32);
        let (a, b) = (cf.layer(k), cg.layer(k));
        for i in 0..p as usize {
            let x = a.coeffs().get(i).copied().unwrap_or(0) % modulus;
            let y = b.coeffs().get(i).copied().unwrap_or(0) % modulus;
            if x != y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[f']_p`, the formal derivative read as a function on `Z/pZ`.
pub fn deriv_table_mod_p(f: &MonomialPoly) -> FunctionTable {
    let base = f.level().base();
    f.derivative().at_level(base).expect("base level of the same prime").table()
}

/// Whether `f` induces a permutation of `Z/p^nZ`.
///
/// At level 1 this is plain bijectivity. From level 2 on it is bijectivity mod `p`
/// together with a derivative that has no zero mod `p`.
pub fn is_permutation(f: &MonomialPoly) -> bool {
    let level = f.level();
    if level.n() == 1 {
        return f.table().is_bijective();
    }
    let base_poly = f.at_level(level.base()).expect("base level of the same prime");
    base_poly.table().is_bijective() && !deriv_table_mod_p(f).has_zero()
}
