//! Sylow `p`-subgroups of `H` and of `G_n`.
//!
//! A Sylow `p`-subgroup of `H` is determined by a pair `(C, [phi])`: a cyclic
//! subgroup `C` of order `p` of the symmetric group on `Z/pZ`, and a nonvanishing
//! function `phi` up to a nonzero scalar. The subgroup is
//! `{ (f, x -> phi(f x) / phi(x)) : f in C }`. Its preimage under the projection
//! `G_n -> H` is a Sylow `p`-subgroup of `G_n`, for every `n >= 2`.

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{beta_sum, big_pow, check_prime, factorial, inv_mod_p, PrimeLevel, Residue};
use crate::error::{Error, Result};
use crate::fgroup::GnGroup;
use crate::group::intersect_all;
use crate::hgroup::{nonvanishing_functions, order_h, theta_of_table, EElement, HElement};
use crate::polyfun::{FunctionTable, MonomialPoly};

fn base_level(p: u32) -> Result<PrimeLevel> {
    PrimeLevel::new(p, 1)
}

/// A cyclic subgroup of order `p` of `Sym(Z/pZ)`, identified by its unique
/// generator sending `0` to `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicSubgroup {
    generator: FunctionTable,
    elements: Vec<FunctionTable>,
}

impl CyclicSubgroup {
    /// The subgroup generated by a `p`-cycle; any generator is accepted.
    pub fn new(generator: FunctionTable) -> Result<Self> {
        let level = generator.level();
        if level.n() != 1 {
            return Err(Error::InvalidDescriptor(format!("generator must act on Z/{}Z", level.p())));
        }
        let p = level.p();
        // A p-cycle: the orbit of 0 has length p.
        let mut x = 0;
        for step in 1..=p {
            x = generator.get(x);
            if x == 0 && step != p {
                return Err(Error::InvalidDescriptor("generator is not a p-cycle".into()));
            }
        }
        if x != 0 || !generator.is_bijective() {
            return Err(Error::InvalidDescriptor("generator is not a p-cycle".into()));
        }
        let mut elements = Vec::with_capacity(p as usize);
        let mut power = FunctionTable::identity(level);
        for _ in 0..p {
            elements.push(power.clone());
            power = generator.then_unchecked(&power);
        }
        let generator = elements.iter().find(|g| g.get(0) == 1).cloned().expect("orbit of 0 covers 1");
        elements.sort();
        Ok(CyclicSubgroup { generator, elements })
    }

    /// `C_0`, generated by `x -> x + 1`.
    pub fn standard(p: u32) -> Result<Self> {
        let level = base_level(p)?;
        Self::new(FunctionTable::from_fn(level, |x| (x + 1) % p))
    }

    /// All `(p-2)!` cyclic subgroups of order `p`, ordered by canonical generator.
    ///
    /// Each is listed once through its generator `0 -> 1 -> a_2 -> ... -> a_{p-1} -> 0`
    /// with `a_2..a_{p-1}` running over the permutations of `2..p`.
    pub fn all(p: u32) -> Result<Vec<Self>> {
        let level = base_level(p)?;
        let mut out = Vec::new();
        let mut rest: Vec<Residue> = (2..p).collect();
        let mut emit = |order: &[Residue]| {
            let mut cycle = vec![0, 1];
            cycle.extend_from_slice(order);
            let mut values = vec![0; p as usize];
            for i in 0..p as usize {
                values[cycle[i] as usize] = cycle[(i + 1) % p as usize];
            }
            out.push(Self::new(FunctionTable::from_raw(values, level)).expect("p-cycle"));
        };
        permute_slice(&mut rest, 0, &mut emit);
        out.sort();
        Ok(out)
    }

    pub fn generator(&self) -> &FunctionTable {
        &self.generator
    }

    /// The `p` powers of the generator, sorted.
    pub fn elements(&self) -> &[FunctionTable] {
        &self.elements
    }

    pub fn contains(&self, f: &FunctionTable) -> bool {
        self.elements.binary_search(f).is_ok()
    }
}

fn permute_slice(v: &mut [Residue], k: usize, emit: &mut dyn FnMut(&[Residue])) {
    if k == v.len() {
        emit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_slice(v, k + 1, emit);
        v.swap(k, i);
    }
}

/// A class of nonvanishing functions modulo nonzero scalars, stored with `phi(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiClass {
    phi: FunctionTable,
}

impl PhiClass {
    /// The class of `phi`; the representative is rescaled so that `phi(0) = 1`.
    pub fn new(phi: FunctionTable) -> Result<Self> {
        let level = phi.level();
        if level.n() != 1 {
            return Err(Error::InvalidDescriptor(format!("phi must be a function on Z/{}Z", level.p())));
        }
        if phi.has_zero() {
            return Err(Error::InvalidDescriptor("phi must not vanish".into()));
        }
        let p = level.p();
        let scale = inv_mod_p(phi.get(0), p)?;
        let phi = FunctionTable::from_fn(level, |x| phi.get(x) * scale % p);
        Ok(PhiClass { phi })
    }

    pub fn constant(p: u32) -> Result<Self> {
        Ok(PhiClass { phi: FunctionTable::constant(base_level(p)?, 1) })
    }

    /// All `(p-1)^(p-1)` classes.
    pub fn all(p: u32) -> Result<Vec<Self>> {
        let level = base_level(p)?;
        Ok(nonvanishing_functions(level)
            .into_iter()
            .filter(|phi| phi.get(0) == 1)
            .map(|phi| PhiClass { phi })
            .collect())
    }

    pub fn phi(&self) -> &FunctionTable {
        &self.phi
    }

    /// The second component `x -> phi(f x) / phi(x)` attached to `f`.
    pub fn cocycle(&self, f: &FunctionTable) -> FunctionTable {
        let p = self.phi.level().p();
        FunctionTable::from_fn(self.phi.level(), |x| {
            self.phi.get(f.get(x)) * inv_mod_p(self.phi.get(x), p).expect("nonvanishing") % p
        })
    }
}

/// The pair `(C, [phi])` naming one Sylow `p`-subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SylowDescriptor {
    pub cyclic: CyclicSubgroup,
    pub phi: PhiClass,
}

impl SylowDescriptor {
    pub fn new(cyclic: CyclicSubgroup, phi: PhiClass) -> Result<Self> {
        if cyclic.generator.level() != phi.phi.level() {
            return Err(Error::InvalidDescriptor("cyclic subgroup and phi act on different rings".into()));
        }
        Ok(SylowDescriptor { cyclic, phi })
    }

    /// `(C_0, [1])`.
    pub fn standard(p: u32) -> Result<Self> {
        Self::new(CyclicSubgroup::standard(p)?, PhiClass::constant(p)?)
    }

    pub fn p(&self) -> u32 {
        self.phi.phi.level().p()
    }

    /// Membership of an `H` element: `f in C` and `f' = phi(f x) / phi(x)`.
    pub fn contains(&self, e: &EElement) -> bool {
        self.cyclic.contains(e.f()) && self.phi.cocycle(e.f()) == *e.fprime()
    }
}

impl Serialize for SylowDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SylowDescriptor", 2)?;
        s.serialize_field("generator", self.cyclic.generator.values())?;
        s.serialize_field("phi", self.phi.phi.values())?;
        s.end()
    }
}

/// `S = { (f, 1) : f in C_0 }`.
pub fn standard_sylow(p: u32) -> Result<Vec<HElement>> {
    descriptor_subgroup(&SylowDescriptor::standard(p)?)
}

/// The subgroup named by a descriptor, sorted.
pub fn descriptor_subgroup(d: &SylowDescriptor) -> Result<Vec<HElement>> {
    let mut out = d
        .cyclic
        .elements
        .iter()
        .map(|f| HElement::try_from(EElement::new(f.clone(), d.phi.cocycle(f))?))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `N_H(S)`: affine `g(x) = k x + c` with `k != 0`, paired with a nonzero constant.
pub fn normalizer_in_h(p: u32) -> Result<Vec<HElement>> {
    let level = base_level(p)?;
    let mut out = Vec::with_capacity((p * (p - 1) * (p - 1)) as usize);
    for k in 1..p {
        for c in 0..p {
            let g = FunctionTable::from_fn(level, |x| (k * x + c) % p);
            for d in 1..p {
                out.push(HElement::try_from(EElement::new(g.clone(), FunctionTable::constant(level, d))?)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `|N_H(S)| = p (p-1)^2`.
pub fn normalizer_order(p: u32) -> BigUint {
    BigUint::from(p) * big_pow(p - 1, 2)
}

/// `(p-1)! (p-1)^(p-2)`.
pub fn sylow_count(p: u32) -> BigUint {
    factorial(p - 1) * big_pow(p - 1, p.saturating_sub(2) as u64)
}

/// All descriptors, `(p-2)! (p-1)^(p-1)` of them.
pub fn enumerate_descriptors(p: u32, budget: u64) -> Result<Vec<SylowDescriptor>> {
    check_prime(p)?;
    let count = sylow_count(p);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { needed: count.to_string(), budget });
    }
    let classes = PhiClass::all(p)?;
    let mut out = Vec::new();
    for c in CyclicSubgroup::all(p)? {
        for phi in &classes {
            out.push(SylowDescriptor { cyclic: c.clone(), phi: phi.clone() });
        }
    }
    Ok(out)
}

/// The intersection of all Sylow `p`-subgroups of `H`, by intersecting every
/// descriptor subgroup (all of `H` at `p = 2`, where `H` has order 2).
pub fn sylow_intersection_h(p: u32, budget: u64) -> Result<Vec<HElement>> {
    let subgroups = enumerate_descriptors(p, budget)?
        .iter()
        .map(descriptor_subgroup)
        .collect::<Result<Vec<_>>>()?;
    Ok(intersect_all(&subgroups))
}

/// For `p >= 5` there are several cyclic subgroups of order `p` and they meet only
/// in the identity, so the intersection is `{(id, 1)}` without looking at `phi`.
pub fn sylow_intersection_h_via_cyclic(p: u32) -> Result<Vec<HElement>> {
    if p < 5 {
        return Err(Error::InvalidDescriptor("the cyclic-subgroup argument needs p >= 5".into()));
    }
    let cyclics: Vec<Vec<FunctionTable>> = CyclicSubgroup::all(p)?.into_iter().map(|c| c.elements).collect();
    let common = intersect_all(&cyclics);
    // Only the identity permutation survives, and phi(x)/phi(x) = 1.
    common
        .into_iter()
        .map(|f| HElement::try_from(EElement::new(f.clone(), FunctionTable::constant(f.level(), 1))?))
        .collect()
}

/// Two descriptors whose subgroups cannot both contain `h`, for `h != (id, 1)` and odd `p`.
///
/// If `f` lies in no cyclic subgroup of order `p`, one descriptor already excludes it.
/// Otherwise pick `k` with `f(k) != k` and two classes that agree at `k` but not at
/// `f(k)`; they prescribe different values of `f'(k)`.
pub fn exclusion_witness(h: &HElement) -> Result<Option<(SylowDescriptor, SylowDescriptor)>> {
    let p = h.p();
    if h.as_e().is_identity() || p == 2 {
        return Ok(None);
    }
    let level = base_level(p)?;
    let f = h.perm();
    let cyclics = CyclicSubgroup::all(p)?;
    let constant = PhiClass::constant(p)?;
    let Some(cyclic) = cyclics.iter().find(|c| c.contains(f)).cloned() else {
        let d = SylowDescriptor { cyclic: cyclics[0].clone(), phi: constant };
        return Ok(Some((d.clone(), d)));
    };
    let Some(k) = (0..p).find(|&k| f.get(k) != k) else {
        // f is the identity but f' is not 1; every descriptor forces f' = 1 there.
        let d = SylowDescriptor { cyclic, phi: constant };
        return Ok(Some((d.clone(), d)));
    };
    let fk = f.get(k);
    let eta = PhiClass::new(FunctionTable::from_fn(level, |x| if x == fk { 2 } else { 1 }))?;
    Ok(Some((SylowDescriptor { cyclic: cyclic.clone(), phi: constant }, SylowDescriptor { cyclic, phi: eta })))
}

/// `pi: G_n -> H`, read from a value table at level `n >= 2`.
pub fn project_to_h(table: &FunctionTable) -> Result<HElement> {
    theta_of_table(table)?.try_into()
}

/// The preimage in `G_n` of the descriptor subgroup, as a membership predicate.
#[derive(Clone, Debug)]
pub struct SylowLift {
    descriptor: SylowDescriptor,
    level: PrimeLevel,
}

/// `lift_to_Gn(d, level)`.
pub fn lift_to_gn(d: &SylowDescriptor, level: PrimeLevel) -> Result<SylowLift> {
    if level.n() < 2 {
        return Err(Error::LevelTooLow { min: 2, n: level.n() });
    }
    if level.p() != d.p() {
        return Err(Error::ContextMismatch { left: level.to_string(), right: format!("Z/{}Z", d.p()) });
    }
    Ok(SylowLift { descriptor: d.clone(), level })
}

/// The order of a Sylow `p`-subgroup of `G_n`: `p^(1 + p + beta(3) + ... + beta(n))`.
pub fn sylow_order_gn(p: u32, n: u32) -> BigUint {
    big_pow(p, 1 + p as u64 + beta_sum(p, 3, n))
}

impl SylowLift {
    pub fn descriptor(&self) -> &SylowDescriptor {
        &self.descriptor
    }

    pub fn level(&self) -> PrimeLevel {
        self.level
    }

    /// `[f]_p in C` and `[f']_p(x) = phi([f]_p x) / phi(x)`, read from the table.
    pub fn contains(&self, table: &FunctionTable) -> Result<bool> {
        if table.level() != self.level {
            return Err(Error::ContextMismatch { left: self.level.to_string(), right: table.level().to_string() });
        }
        Ok(self.descriptor.contains(&theta_of_table(table)?))
    }

    /// The same predicate evaluated on a polynomial through its formal derivative.
    pub fn contains_poly(&self, f: &MonomialPoly) -> Result<bool> {
        if f.level() != self.level {
            return Err(Error::ContextMismatch { left: self.level.to_string(), right: f.level().to_string() });
        }
        Ok(self.descriptor.contains(&crate::hgroup::theta(f)?))
    }

    pub fn order(&self) -> BigUint {
        sylow_order_gn(self.level.p(), self.level.n())
    }

    /// The explicit element set, filtered out of an enumerated `G_n`.
    pub fn elements(&self, group: &GnGroup) -> Result<Vec<FunctionTable>> {
        filter_group(group, self.level, |t| self.contains(t))
    }
}

fn filter_group(
    group: &GnGroup,
    level: PrimeLevel,
    keep: impl Fn(&FunctionTable) -> Result<bool>,
) -> Result<Vec<FunctionTable>> {
    if group.level() != level {
        return Err(Error::ContextMismatch { left: level.to_string(), right: group.level().to_string() });
    }
    let mut out = Vec::new();
    for t in group.require()? {
        if keep(t)? {
            out.push(t.clone());
        }
    }
    Ok(out)
}

/// `N = { f in G_n : [f]_p = id, [f']_p = 1 }`, the kernel of `G_n -> H`.
#[derive(Clone, Debug)]
pub struct CoreN {
    level: PrimeLevel,
}

pub fn core_n(level: PrimeLevel) -> Result<CoreN> {
    if level.n() < 2 {
        return Err(Error::LevelTooLow { min: 2, n: level.n() });
    }
    Ok(CoreN { level })
}

impl CoreN {
    pub fn level(&self) -> PrimeLevel {
        self.level
    }

    pub fn contains(&self, table: &FunctionTable) -> Result<bool> {
        if table.level() != self.level {
            return Err(Error::ContextMismatch { left: self.level.to_string(), right: table.level().to_string() });
        }
        Ok(theta_of_table(table)?.is_identity())
    }

    /// `p^p p^(beta(3) + ... + beta(n))`.
    pub fn order(&self) -> BigUint {
        let p = self.level.p();
        big_pow(p, p as u64 + beta_sum(p, 3, self.level.n()))
    }

    /// `[G_n : N] = p! (p-1)^p`.
    pub fn index(&self) -> BigUint {
        order_h(self.level.p())
    }

    pub fn elements(&self, group: &GnGroup) -> Result<Vec<FunctionTable>> {
        filter_group(group, self.level, |t| self.contains(t))
    }
}

/// Counts and orders for the Sylow analysis at one level.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SylowReport {
    pub p: u32,
    pub n: u32,
    pub descriptors: Vec<SylowDescriptor>,
    #[serde(serialize_with = "crate::serialize_big")]
    pub sylow_count: BigUint,
    #[serde(serialize_with = "crate::serialize_big")]
    pub subgroup_order: BigUint,
    pub intersection_order: usize,
    #[serde(serialize_with = "crate::serialize_big")]
    pub core_order: BigUint,
    #[serde(serialize_with = "crate::serialize_big")]
    pub core_index: BigUint,
}

impl SylowReport {
    /// Built from formulas and descriptor enumeration; `n = 1` reports on `H` itself.
    pub fn build(level: PrimeLevel, budget: u64) -> Result<Self> {
        let (p, n) = (level.p(), level.n());
        let descriptors = enumerate_descriptors(p, budget)?;
        let intersection_order = sylow_intersection_h(p, budget)?.len();
        let (subgroup_order, core_order, core_index) = if n >= 2 {
            let core = core_n(level)?;
            (sylow_order_gn(p, n), core.order(), core.index())
        } else {
            (BigUint::from(p), BigUint::from(1u32), order_h(p))
        };
        Ok(SylowReport {
            p,
            n,
            sylow_count: sylow_count(p),
            descriptors,
            subgroup_order,
            intersection_order,
            core_order,
            core_index,
        })
    }
}
