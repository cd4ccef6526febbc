//! The monoid `F_n` of polynomial functions on `Z/p^nZ` and its unit group `G_n`
//! of polynomial permutations.
//!
//! Orders always come from the closed formulas. Element sets are produced by
//! walking every canonical coefficient vector when the monoid is small enough,
//! and serve as the oracle for those formulas.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{beta, beta_sum, big_pow, factorial, falling_eval, PrimeLevel, Residue};
use crate::error::{Error, Result};
use crate::polyfun::{canonical_bounds, is_permutation, CanonicalForm, FunctionTable};

/// Default cap on the number of elements an enumeration may produce.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// `|F_n| = p^(beta(1) + ... + beta(n))`.
pub fn order_f(p: u32, n: u32) -> BigUint {
    big_pow(p, beta_sum(p, 1, n))
}

/// `|G_n|`: `p!` at level 1, `p! (p-1)^p p^p p^(beta(3) + ... + beta(n))` from level 2 on.
pub fn order_g(p: u32, n: u32) -> BigUint {
    if n <= 1 {
        return factorial(p);
    }
    factorial(p) * big_pow(p - 1, p as u64) * big_pow(p, p as u64 + beta_sum(p, 3, n))
}

/// `|ker(G_{n+1} -> G_n)| = p^beta(n+1)` for `n >= 2`.
pub fn kernel_order(p: u32, n: u32) -> BigUint {
    big_pow(p, beta(p, n + 1) as u64)
}

/// Indices in `Z[x]` of the ideal `I_n` of polynomials vanishing mod `p^n` and of
/// `J_n = (p^(n-k) (x^p - x)^k : 0 <= k <= n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdealIndices {
    #[serde(serialize_with = "crate::serialize_big")]
    pub index_i: BigUint,
    #[serde(serialize_with = "crate::serialize_big")]
    pub index_j: BigUint,
}

impl IdealIndices {
    /// `J_n = I_n` exactly when the indices agree (since `J_n ⊆ I_n`).
    pub fn equal(&self) -> bool {
        self.index_i == self.index_j
    }
}

pub fn ideal_indices(p: u32, n: u32) -> IdealIndices {
    let j_exponent: u64 = (1..=n as u64).map(|k| k * p as u64).sum();
    IdealIndices { index_i: order_f(p, n), index_j: big_pow(p, j_exponent) }
}

fn within_budget(order: &BigUint, budget: u64) -> bool {
    *order <= BigUint::from(budget)
}

/// `F_n`, with its element set when enumerated.
#[derive(Clone, Debug)]
pub struct FnMonoid {
    level: PrimeLevel,
    order: BigUint,
    elements: Option<Vec<FunctionTable>>,
}

/// `G_n`, with its element set when enumerated.
#[derive(Clone, Debug)]
pub struct GnGroup {
    level: PrimeLevel,
    order: BigUint,
    elements: Option<Vec<FunctionTable>>,
}

/// Calls `visit` on every canonical coefficient vector of `level`, in
/// lexicographic order with the last coefficient varying fastest.
pub fn for_each_canonical(level: PrimeLevel, mut visit: impl FnMut(&[Residue])) {
    let bounds = canonical_bounds(level);
    let mut digits = vec![0 as Residue; bounds.len()];
    loop {
        visit(&digits);
        let mut i = digits.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < bounds[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Value tables of `(x)_k` for `k < beta(n)`.
fn falling_basis(level: PrimeLevel) -> Vec<Vec<u64>> {
    let modulus = level.modulus() as u64;
    (0..level.beta())
        .map(|k| (0..modulus).map(|x| falling_eval(x, k, modulus)).collect())
        .collect()
}

fn table_from_basis(basis: &[Vec<u64>], coeffs: &[Residue], level: PrimeLevel) -> FunctionTable {
    let modulus = level.modulus() as u64;
    let mut values = vec![0u64; modulus as usize];
    for (column, &a) in basis.iter().zip(coeffs) {
        if a == 0 {
            continue;
        }
        for (v, &b) in values.iter_mut().zip(column) {
            *v = (*v + a as u64 * b) % modulus;
        }
    }
    FunctionTable::from_raw(values.into_iter().map(|v| v as Residue).collect(), level)
}

/// Enumerates `F_n`, one table per canonical vector; order-only past `budget`.
pub fn enumerate_f(level: PrimeLevel, budget: u64) -> FnMonoid {
    let order = order_f(level.p(), level.n());
    if !within_budget(&order, budget) {
        return FnMonoid { level, order, elements: None };
    }
    let basis = falling_basis(level);
    let mut elements = Vec::new();
    for_each_canonical(level, |coeffs| elements.push(table_from_basis(&basis, coeffs, level)));
    elements.sort();
    FnMonoid { level, order, elements: Some(elements) }
}

/// Enumerates `G_n` as the members of `F_n` passing [`is_permutation`].
pub fn enumerate_g(level: PrimeLevel, budget: u64) -> GnGroup {
    let order = order_g(level.p(), level.n());
    if !within_budget(&order_f(level.p(), level.n()), budget) {
        return GnGroup { level, order, elements: None };
    }
    let basis = falling_basis(level);
    let mut elements = Vec::new();
    for_each_canonical(level, |coeffs| {
        let table = table_from_basis(&basis, coeffs, level);
        // At level 1 bijectivity of the table is the whole test; skip the polynomial.
        let keep = if level.n() == 1 {
            table.is_bijective()
        } else {
            is_permutation(&CanonicalForm::from_raw(coeffs.to_vec(), level).to_monomial())
        };
        if keep {
            elements.push(table);
        }
    });
    elements.sort();
    GnGroup { level, order, elements: Some(elements) }
}

fn contains(elements: &Option<Vec<FunctionTable>>, f: &FunctionTable) -> Option<bool> {
    elements.as_ref().map(|els| els.binary_search(f).is_ok())
}

impl FnMonoid {
    pub fn level(&self) -> PrimeLevel {
        self.level
    }

    /// Formula order.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn elements(&self) -> Option<&[FunctionTable]> {
        self.elements.as_deref()
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    /// Number of distinct enumerated tables.
    pub fn distinct_count(&self) -> Option<usize> {
        self.elements.as_ref().map(|els| {
            let mut count = usize::from(!els.is_empty());
            count += els.windows(2).filter(|w| w[0] != w[1]).count();
            count
        })
    }

    pub fn contains(&self, f: &FunctionTable) -> Option<bool> {
        contains(&self.elements, f)
    }

    fn require(&self) -> Result<&[FunctionTable]> {
        self.elements.as_deref().ok_or_else(|| Error::BudgetExceeded { needed: self.order.to_string(), budget: 0 })
    }

    /// The sizes of the fibers of `pi_{n-1}: F_n -> F_{n-1}`, keyed by the image.
    pub fn projection_fibers(&self) -> Result<BTreeMap<FunctionTable, usize>> {
        let lower = self.level.lower().ok_or(Error::LevelTooLow { min: 2, n: self.level.n() })?;
        let mut fibers = BTreeMap::new();
        for f in self.require()? {
            *fibers.entry(f.project_to(lower)?).or_insert(0) += 1;
        }
        Ok(fibers)
    }
}

impl GnGroup {
    pub fn level(&self) -> PrimeLevel {
        self.level
    }

    /// Formula order.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn elements(&self) -> Option<&[FunctionTable]> {
        self.elements.as_deref()
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    pub fn contains(&self, f: &FunctionTable) -> Option<bool> {
        contains(&self.elements, f)
    }

    pub(crate) fn require(&self) -> Result<&[FunctionTable]> {
        self.elements.as_deref().ok_or_else(|| Error::BudgetExceeded { needed: self.order.to_string(), budget: 0 })
    }

    /// `ker(pi_{n-1}: G_n -> G_{n-1})`: the elements that reduce to the identity one level down.
    pub fn kernel_of_projection(&self) -> Result<Vec<FunctionTable>> {
        let lower = self.level.lower().ok_or(Error::LevelTooLow { min: 2, n: self.level.n() })?;
        Ok(self.require()?.iter().filter(|g| g.project_unchecked(lower).is_identity()).cloned().collect())
    }
}

/// Machine-readable summary of one level.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelSummary {
    pub p: u32,
    pub n: u32,
    #[serde(serialize_with = "crate::serialize_big")]
    pub order_f: BigUint,
    #[serde(serialize_with = "crate::serialize_big")]
    pub order_g: BigUint,
    pub enumerated: bool,
    /// Enumerated sizes of `ker(G_n -> G_{n-1})`, present for `n >= 2` when enumerated.
    pub kernel_sizes: Vec<usize>,
}

impl LevelSummary {
    pub fn build(level: PrimeLevel, budget: u64) -> Result<Self> {
        Self::from_group(&enumerate_g(level, budget))
    }

    pub fn from_group(g: &GnGroup) -> Result<Self> {
        let level = g.level();
        let kernel_sizes = if g.is_enumerated() && level.n() >= 2 { vec![g.kernel_of_projection()?.len()] } else { Vec::new() };
        Ok(LevelSummary {
            p: level.p(),
            n: level.n(),
            order_f: order_f(level.p(), level.n()),
            order_g: g.order.clone(),
            enumerated: g.is_enumerated(),
            kernel_sizes,
        })
    }

    /// Formula-only summary for levels whose modulus is too large to tabulate.
    pub fn formula_only(p: u32, n: u32) -> Self {
        LevelSummary { p, n, order_f: order_f(p, n), order_g: order_g(p, n), enumerated: false, kernel_sizes: Vec::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_subgroup;

    fn lv(p: u32, n: u32) -> PrimeLevel {
        PrimeLevel::new(p, n).unwrap()
    }

    #[test]
    fn order_formulas() {
        assert_eq!(order_f(2, 2), BigUint::from(64u32));
        assert_eq!(order_f(3, 2), BigUint::from(19683u32));
        assert_eq!(order_g(2, 2), BigUint::from(8u32));
        assert_eq!(order_g(3, 2), BigUint::from(1296u32));
        assert_eq!(order_g(2, 3), BigUint::from(128u32));
        assert_eq!(order_g(5, 1), BigUint::from(120u32));
        assert_eq!(order_g(5, 2), BigUint::from(384_000_000u64));
        assert_eq!(kernel_order(2, 2), BigUint::from(16u32));
    }

    #[test]
    fn group_order_ratios() {
        for p in [2, 3, 5, 7] {
            for n in 2..8 {
                assert_eq!(order_g(p, n + 1), order_g(p, n) * kernel_order(p, n));
            }
        }
    }

    #[test]
    fn ideal_index_examples() {
        let i = ideal_indices(2, 2);
        assert_eq!((i.index_i.clone(), i.index_j.clone()), (BigUint::from(64u32), BigUint::from(64u32)));
        let i = ideal_indices(2, 3);
        assert_eq!(i.index_i, BigUint::from(1u32 << 10));
        assert_eq!(i.index_j, BigUint::from(1u32 << 12));
        assert!(!i.equal());
        assert!(ideal_indices(3, 3).equal());
        for p in [2, 3, 5, 7] {
            for n in 1..12 {
                assert_eq!(ideal_indices(p, n).equal(), n <= p);
            }
        }
    }

    #[test]
    fn enumerate_small_monoids() {
        let f = enumerate_f(lv(2, 1), DEFAULT_BUDGET);
        assert_eq!(f.elements().unwrap().len(), 4);
        assert_eq!(f.distinct_count(), Some(4));
        let f = enumerate_f(lv(2, 2), DEFAULT_BUDGET);
        assert_eq!(f.distinct_count(), Some(64));
        let f = enumerate_f(lv(2, 2), 63);
        assert!(!f.is_enumerated());
        assert_eq!(f.order(), &BigUint::from(64u32));
    }

    #[test]
    fn enumerate_small_groups() {
        let g = enumerate_g(lv(2, 2), DEFAULT_BUDGET);
        let els = g.elements().unwrap();
        assert_eq!(els.len(), 8);
        assert!(els.iter().all(FunctionTable::is_bijective));
        assert!(is_subgroup(els));
        let g = enumerate_g(lv(2, 3), DEFAULT_BUDGET);
        assert_eq!(g.elements().unwrap().len(), 128);
        let kernel = g.kernel_of_projection().unwrap();
        assert_eq!(kernel.len(), 16);
        assert!(kernel.iter().any(FunctionTable::is_identity));
    }

    #[test]
    fn monoid_fibers() {
        let f = enumerate_f(lv(2, 2), DEFAULT_BUDGET);
        let fibers = f.projection_fibers().unwrap();
        assert_eq!(fibers.len(), 4);
        assert!(fibers.values().all(|&s| s == 16));
    }

    #[test]
    fn canonical_walk_matches_from_table() {
        let level = lv(3, 1);
        let basis = falling_basis(level);
        let mut count = 0;
        for_each_canonical(level, |coeffs| {
            let table = table_from_basis(&basis, coeffs, level);
            assert_eq!(CanonicalForm::from_table(&table).unwrap().coeffs(), coeffs);
            count += 1;
        });
        assert_eq!(count, 27);
    }

    #[test]
    fn summary_json() {
        let s = LevelSummary::build(lv(2, 3), DEFAULT_BUDGET).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"p":2,"n":3,"orderF":1024,"orderG":128,"enumerated":true,"kernelSizes":[16]}"#);
    }
}
