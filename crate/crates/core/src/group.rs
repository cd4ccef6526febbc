//! Brute-force finite group routines over explicitly enumerated elements.
//!
//! These are the independent oracles the closed formulas are checked against:
//! subgroup closure, normalizers, order-`p` subgroups and Sylow subgroups found
//! by growing a `p`-subgroup inside its normalizer and taking the conjugation orbit.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;

use crate::arith::{p_part, vp};
use crate::error::{Error, Result};
use crate::polyfun::FunctionTable;

/// An element of a finite group; `op` is `self ∘ other`.
pub trait GroupElement: Clone + Ord + Hash + Debug {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;
}

/// Permutation tables under composition.
impl GroupElement for FunctionTable {
    fn op(&self, other: &Self) -> Self {
        self.then_unchecked(other)
    }

    fn inv(&self) -> Self {
        self.inverse().expect("group elements are permutations")
    }

    fn is_identity(&self) -> bool {
        FunctionTable::is_identity(self)
    }
}

/// `h^-1 a h`.
pub fn conjugate<T: GroupElement>(a: &T, h: &T) -> T {
    h.inv().op(&a.op(h))
}

pub fn element_order<T: GroupElement>(g: &T) -> u64 {
    let mut power = g.clone();
    let mut k = 1;
    while !power.is_identity() {
        power = power.op(g);
        k += 1;
    }
    k
}

/// The subgroup generated by `generators`, as a sorted vector.
pub fn generate<T: GroupElement>(identity: &T, generators: &[T]) -> Vec<T> {
    let mut seen: HashSet<T> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity.clone()];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = x.op(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<T> = seen.into_iter().collect();
    out.sort();
    out
}

/// Checks closure under `op` and inverses, and the presence of an identity.
pub fn is_subgroup<T: GroupElement>(sorted: &[T]) -> bool {
    if !sorted.iter().any(|x| x.is_identity()) {
        return false;
    }
    sorted.iter().all(|a| {
        sorted.binary_search(&a.inv()).is_ok() && sorted.iter().all(|b| sorted.binary_search(&a.op(b)).is_ok())
    })
}

/// `{ g in group : g^-1 S g = S }` by brute force.
pub fn normalizer<T: GroupElement>(group: &[T], subgroup: &[T]) -> Vec<T> {
    let target: BTreeSet<&T> = subgroup.iter().collect();
    let mut out: Vec<T> = group
        .iter()
        .filter(|g| subgroup.iter().all(|s| target.contains(&conjugate(s, g))))
        .cloned()
        .collect();
    out.sort();
    out
}

/// All subgroups of prime order `p`, each as a sorted vector.
pub fn order_p_subgroups<T: GroupElement>(group: &[T], p: u64) -> Vec<Vec<T>> {
    let mut found: BTreeSet<Vec<T>> = BTreeSet::new();
    let mut covered: HashSet<T> = HashSet::new();
    for g in group {
        if covered.contains(g) || element_order(g) != p {
            continue;
        }
        let mut cyclic = Vec::with_capacity(p as usize);
        let mut power = g.clone();
        for _ in 0..p {
            cyclic.push(power.clone());
            power = power.op(g);
        }
        cyclic.sort();
        covered.extend(cyclic.iter().cloned());
        found.insert(cyclic);
    }
    found.into_iter().collect()
}

/// Intersection of sorted subgroups.
pub fn intersect_all<T: GroupElement>(subgroups: &[Vec<T>]) -> Vec<T> {
    let Some((first, rest)) = subgroups.split_first() else {
        return Vec::new();
    };
    first.iter().filter(|x| rest.iter().all(|s| s.binary_search(x).is_ok())).cloned().collect()
}

/// One Sylow `p`-subgroup, grown from the trivial group.
///
/// While `P` is not yet of full `p`-part order, `N(P)/P` has order divisible by `p`,
/// so some element of `p`-power order normalizes `P` without lying in it.
/// Adjoining it keeps `P` a `p`-group.
pub fn find_sylow<T: GroupElement>(group: &[T], p: u32) -> Result<Vec<T>> {
    let target = p_part(p, &BigUint::from(group.len()));
    let identity = group.iter().find(|g| g.is_identity()).cloned().ok_or_else(|| Error::SylowNotFound(target.to_string()))?;
    let p_elements: Vec<&T> = group
        .iter()
        .filter(|g| {
            let ord = element_order(*g);
            ord == 1 || vp(p, ord).map(|e| p.pow(e) as u64 == ord).unwrap_or(false)
        })
        .collect();
    let mut current = vec![identity.clone()];
    let mut generators: Vec<T> = Vec::new();
    while BigUint::from(current.len()) < target {
        let set: BTreeSet<&T> = current.iter().collect();
        let next = p_elements
            .iter()
            .find(|x| !set.contains(**x) && current.iter().all(|s| set.contains(&conjugate(s, **x))))
            .ok_or_else(|| Error::SylowNotFound(target.to_string()))?;
        generators.push((*next).clone());
        current = generate(&identity, &generators);
    }
    if BigUint::from(current.len()) != target {
        return Err(Error::SylowNotFound(target.to_string()));
    }
    Ok(current)
}

/// All Sylow `p`-subgroups: the conjugation orbit of one of them.
pub fn brute_force_sylow<T: GroupElement>(group: &[T], p: u32) -> Result<Vec<Vec<T>>> {
    let sylow = find_sylow(group, p)?;
    let mut orbit: BTreeSet<Vec<T>> = BTreeSet::new();
    for g in group {
        let mut conj: Vec<T> = sylow.iter().map(|s| conjugate(s, g)).collect();
        conj.sort();
        orbit.insert(conj);
    }
    Ok(orbit.into_iter().collect())
}
