//! The monoid `E` of pairs `(f, f')` of functions on `Z/pZ` and its unit group `H`.
//!
//! The law is the chain rule, `(f, f') ∘ (g, g') = (f ∘ g, (f' ∘ g) · g')`; the
//! second component is data, not a derivative. `theta` maps a polynomial function
//! mod `p^2` to its reduction mod `p` paired with its derivative mod `p`, and
//! `psi` forgets the second component.

use std::fmt;

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{big_pow, check_prime, factorial, inv_mod_p, PrimeLevel, Residue};
use crate::error::{Error, Result};
use crate::fgroup::FnMonoid;
use crate::group::GroupElement;
use crate::polyfun::{deriv_table_mod_p, FunctionTable, MonomialPoly};
use std::collections::BTreeMap;

fn base_level(p: u32) -> Result<PrimeLevel> {
    PrimeLevel::new(p, 1)
}

/// An element `(f, f')` of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EElement {
    f: FunctionTable,
    fprime: FunctionTable,
}

impl EElement {
    pub fn new(f: FunctionTable, fprime: FunctionTable) -> Result<Self> {
        let level = f.level();
        if level.n() != 1 {
            return Err(Error::ContextMismatch { left: level.to_string(), right: format!("Z/{}Z", level.p()) });
        }
        if fprime.level() != level {
            return Err(Error::ContextMismatch { left: level.to_string(), right: fprime.level().to_string() });
        }
        Ok(EElement { f, fprime })
    }

    pub fn from_values(p: u32, f: Vec<Residue>, fprime: Vec<Residue>) -> Result<Self> {
        let level = base_level(p)?;
        Self::new(FunctionTable::new(f, level)?, FunctionTable::new(fprime, level)?)
    }

    /// `(id, 1)`.
    pub fn identity(p: u32) -> Result<Self> {
        let level = base_level(p)?;
        Ok(EElement { f: FunctionTable::identity(level), fprime: FunctionTable::constant(level, 1) })
    }

    pub fn f(&self) -> &FunctionTable {
        &self.f
    }

    pub fn fprime(&self) -> &FunctionTable {
        &self.fprime
    }

    pub fn p(&self) -> u32 {
        self.f.level().p()
    }

    /// `(f ∘ g, (f' ∘ g) · g')`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let f = self.f.compose(&other.f)?;
        let fprime = self.fprime.compose(&other.f)?.pointwise_mul(&other.fprime)?;
        Ok(EElement { f, fprime })
    }

    /// Units are exactly the pairs with bijective `f` and nonvanishing `f'`.
    pub fn is_unit(&self) -> bool {
        self.f.is_bijective() && !self.fprime.has_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.f.is_identity() && self.fprime.values().iter().all(|&v| v == 1)
    }
}

/// `e_compose(a, b) = a ∘ b` in `E`.
pub fn e_compose(a: &EElement, b: &EElement) -> Result<EElement> {
    a.compose(b)
}

/// A unit of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HElement(EElement);

impl TryFrom<EElement> for HElement {
    type Error = Error;

    fn try_from(e: EElement) -> Result<Self> {
        if !e.is_unit() {
            return Err(Error::NotAUnit);
        }
        Ok(HElement(e))
    }
}

impl HElement {
    pub fn from_values(p: u32, perm: Vec<Residue>, deriv: Vec<Residue>) -> Result<Self> {
        EElement::from_values(p, perm, deriv)?.try_into()
    }

    pub fn identity(p: u32) -> Result<Self> {
        Ok(HElement(EElement::identity(p)?))
    }

    pub fn as_e(&self) -> &EElement {
        &self.0
    }

    pub fn into_e(self) -> EElement {
        self.0
    }

    pub fn perm(&self) -> &FunctionTable {
        &self.0.f
    }

    pub fn deriv(&self) -> &FunctionTable {
        &self.0.fprime
    }

    pub fn p(&self) -> u32 {
        self.0.p()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(HElement(self.0.compose(&other.0)?))
    }

    /// `(g, g')^-1 = (g^-1, 1 / (g' ∘ g^-1))`.
    pub fn inverse(&self) -> Self {
        let p = self.p();
        let ginv = self.0.f.inverse().expect("unit has bijective first component");
        let level = ginv.level();
        let values = ginv
            .values()
            .iter()
            .map(|&y| inv_mod_p(self.0.fprime.get(y), p).expect("unit has nonvanishing second component"))
            .collect();
        HElement(EElement { f: ginv, fprime: FunctionTable::from_raw(values, level) })
    }

    /// `h^-1 ∘ self ∘ h` from the closed formula
    /// `(g^-1 f g, x -> f'(g x) · g'(x) / g'(g^-1 f g x))` for `h = (g, g')`.
    pub fn conjugate_by(&self, h: &HElement) -> Self {
        let p = self.p();
        let level = self.perm().level();
        let (f, fprime) = (self.perm(), self.deriv());
        let (g, gprime) = (h.perm(), h.deriv());
        let ginv = g.inverse().expect("unit has bijective first component");
        let first = ginv.then_unchecked(&f.then_unchecked(g));
        let values = (0..p)
            .map(|x| {
                let gx = g.get(x);
                let num = fprime.get(gx) as u64 * gprime.get(x) as u64 % p as u64;
                let den = inv_mod_p(gprime.get(first.get(x)), p).expect("nonvanishing");
                (num * den as u64 % p as u64) as Residue
            })
            .collect();
        HElement(EElement { f: first, fprime: FunctionTable::from_raw(values, level) })
    }
}

/// `h_inverse(a)`.
pub fn h_inverse(a: &HElement) -> HElement {
    a.inverse()
}

impl GroupElement for HElement {
    fn op(&self, other: &Self) -> Self {
        self.compose(other).expect("same prime")
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }
}

impl Serialize for EElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EElement", 2)?;
        s.serialize_field("perm", self.f.values())?;
        s.serialize_field("deriv", self.fprime.values())?;
        s.end()
    }
}

impl Serialize for HElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl fmt::Display for EElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.f.values(), self.fprime.values())
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `theta([g]_{p^2}) = ([g]_p, [g']_p)`; `g` may live at any level `n >= 2`.
pub fn theta(g: &MonomialPoly) -> Result<EElement> {
    let level = g.level();
    if level.n() < 2 {
        return Err(Error::LevelTooLow { min: 2, n: level.n() });
    }
    let base = level.base();
    Ok(EElement { f: g.at_level(base)?.table(), fprime: deriv_table_mod_p(g) })
}

/// `theta` computed from the value table alone.
///
/// For a polynomial `g`, `g(x + p) = g(x) + p g'(x) mod p^2`, so the derivative
/// mod `p` is read off the difference quotient of the table mod `p^2`.
pub fn theta_of_table(table: &FunctionTable) -> Result<EElement> {
    let level = table.level();
    if level.n() < 2 {
        return Err(Error::LevelTooLow { min: 2, n: level.n() });
    }
    let p = level.p();
    let p2 = p * p;
    let base = level.base();
    let f = FunctionTable::from_raw((0..p).map(|x| table.get(x) % p).collect(), base);
    let mut fprime = Vec::with_capacity(p as usize);
    for x in 0..p {
        let diff = (table.get(x + p) % p2 + p2 - table.get(x) % p2) % p2;
        if !diff.is_multiple_of(p) {
            return Err(Error::NotCongruencePreserving(p));
        }
        fprime.push(diff / p);
    }
    Ok(EElement { f, fprime: FunctionTable::from_raw(fprime, base) })
}

/// `psi(f, f') = f`.
pub fn psi(e: &EElement) -> FunctionTable {
    e.f.clone()
}

/// `|H| = p! (p-1)^p`.
pub fn order_h(p: u32) -> BigUint {
    factorial(p) * big_pow(p - 1, p as u64)
}

/// All permutations of `0..p` as tables, sorted.
pub(crate) fn permutations(level: PrimeLevel) -> Vec<FunctionTable> {
    fn rec(v: &mut Vec<Residue>, k: usize, level: PrimeLevel, out: &mut Vec<FunctionTable>) {
        if k == v.len() {
            out.push(FunctionTable::from_raw(v.clone(), level));
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            rec(v, k + 1, level, out);
            v.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..level.modulus()).collect(), 0, level, &mut out);
    out.sort();
    out
}

/// All functions `Z/pZ -> Z/pZ \ {0}`, in lexicographic order.
pub(crate) fn nonvanishing_functions(level: PrimeLevel) -> Vec<FunctionTable> {
    let p = level.p();
    let mut out = Vec::new();
    let mut digits = vec![1 as Residue; p as usize];
    loop {
        out.push(FunctionTable::from_raw(digits.clone(), level));
        let mut i = digits.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 1;
        }
    }
}

/// Enumerates `H`, sorted.
pub fn enumerate_h(p: u32, budget: u64) -> Result<Vec<HElement>> {
    check_prime(p)?;
    let order = order_h(p);
    if order > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { needed: order.to_string(), budget });
    }
    let level = base_level(p)?;
    let derivs = nonvanishing_functions(level);
    let mut out = Vec::new();
    for f in permutations(level) {
        for d in &derivs {
            out.push(HElement(EElement { f: f.clone(), fprime: d.clone() }));
        }
    }
    out.sort();
    Ok(out)
}

/// Fibers of `theta` over an enumerated `F_2`.
#[derive(Clone, Debug)]
pub struct ThetaFibers {
    /// Preimage counts for every pair hit by `theta`.
    pub fiber_sizes: BTreeMap<EElement, usize>,
    /// `theta^-1(H)`, sorted.
    pub unit_preimage: Vec<FunctionTable>,
}

impl ThetaFibers {
    /// The common fiber size when all fibers agree.
    pub fn uniform_size(&self) -> Option<usize> {
        let mut sizes = self.fiber_sizes.values();
        let first = *sizes.next()?;
        sizes.all(|&s| s == first).then_some(first)
    }

    /// `ker(theta|G_2)`: the fiber over `(id, 1)`.
    pub fn kernel_size(&self) -> usize {
        self.fiber_sizes.iter().find(|(e, _)| e.is_identity()).map_or(0, |(_, &s)| s)
    }
}

pub fn theta_fibers(f2: &FnMonoid) -> Result<ThetaFibers> {
    let level = f2.level();
    if level.n() != 2 {
        return Err(Error::ContextMismatch { left: level.to_string(), right: format!("Z/{}^2Z", level.p()) });
    }
    let elements = f2
        .elements()
        .ok_or_else(|| Error::BudgetExceeded { needed: f2.order().to_string(), budget: 0 })?;
    let mut fiber_sizes = BTreeMap::new();
    let mut unit_preimage = Vec::new();
    for t in elements {
        let e = theta_of_table(t)?;
        if e.is_unit() {
            unit_preimage.push(t.clone());
        }
        *fiber_sizes.entry(e).or_insert(0) += 1;
    }
    unit_preimage.sort();
    Ok(ThetaFibers { fiber_sizes, unit_preimage })
}
