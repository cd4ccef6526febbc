//! The `verify` command: runs the invariant suites within the enumeration budget.
//!
//! A check that cannot run within budget is reported as SKIP, never FAIL.

use std::fmt::Write as _;

use num_bigint::BigUint;
use polyperm_core::arith::{alpha, big_pow, factorial, vp, vp_big, PrimeLevel};
use polyperm_core::fgroup::{enumerate_f, enumerate_g, ideal_indices, order_f, GnGroup};
use polyperm_core::group::{
    brute_force_sylow, intersect_all, is_subgroup, normalizer, order_p_subgroups, GroupElement,
};
use polyperm_core::hgroup::{enumerate_h, psi, theta_fibers, theta_of_table, EElement, HElement};
use polyperm_core::polyfun::{
    carlitz_equal, is_permutation, is_zero_function, CanonicalForm, CarlitzForm, FunctionTable, MonomialPoly,
};
use polyperm_core::sylow::{
    core_n, descriptor_subgroup, enumerate_descriptors, lift_to_gn, normalizer_in_h, standard_sylow,
    SylowDescriptor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::claims::Claims;
use crate::config::{CliError, Format, RunConfig};
use crate::report::BRUTE_FORCE_CAP;

pub const CHECK_NAMES: &[&str] = &[
    "valuations",
    "canonical",
    "carlitz",
    "permutation",
    "orders",
    "projection",
    "ideals",
    "theta",
    "h-group",
    "sylow-h",
    "sylow-gn",
];

/// Random samples drawn when a corpus is too large to walk.
const SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub schema: u32,
    pub p: u32,
    pub n_max: u32,
    pub results: Vec<CheckResult>,
}

impl VerifyOutcome {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.status == Status::Fail).count()
    }

    /// 0 iff no check failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failures() > 0)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => {
                let mut out = String::from("check,status,detail\n");
                for r in &self.results {
                    let _ = writeln!(out, "{},{},\"{}\"", r.check, r.status.as_str(), r.detail.replace('"', "'"));
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                for r in &self.results {
                    let _ = writeln!(out, "{} {:<12} {}", r.status.as_str(), r.check, r.detail);
                }
                let passed = self.results.iter().filter(|r| r.status == Status::Pass).count();
                let skipped = self.results.iter().filter(|r| r.status == Status::Skip).count();
                let _ = writeln!(out, "{passed} passed, {} failed, {skipped} skipped", self.failures());
                out
            }
        })
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type CheckFn = fn(&Ctx) -> Result<Outcome, CliError>;

struct Ctx<'a> {
    cfg: &'a RunConfig,
    claims: Claims,
}

impl Ctx<'_> {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// Levels `1..=n_max` that can be tabulated.
    fn levels(&self) -> Vec<PrimeLevel> {
        (1..=self.cfg.n_max).filter_map(|n| PrimeLevel::new(self.cfg.p, n).ok()).collect()
    }

    fn fits(&self, count: &BigUint) -> bool {
        *count <= BigUint::from(self.cfg.budget)
    }
}

fn ensure(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn finish(failures: Vec<String>, skipped: Vec<String>, passed: String) -> Outcome {
    if let Some(first) = failures.first() {
        return Outcome::Fail(format!("{} failure(s); first: {first}", failures.len()));
    }
    if passed.is_empty() {
        return Outcome::Skip(skipped.join("; "));
    }
    if skipped.is_empty() {
        Outcome::Pass(passed)
    } else {
        Outcome::Pass(format!("{passed}; skipped {}", skipped.join(", ")))
    }
}

fn check_valuations(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let mut failures = Vec::new();
    for n in 1..=30u32 {
        let truth = vp_big(p, &factorial(n))? as u64;
        ensure(&mut failures, alpha(p, n as u64) == truth, || format!("alpha({p}, {n}) != v_p({n}!)"));
    }
    for k in 1..=20u32 {
        let b = ctx.claims.beta(p, k);
        if k <= p {
            ensure(&mut failures, b == k * p, || format!("beta({p}, {k}) = {b}, expected {}", k * p));
        } else {
            ensure(&mut failures, b < k * p, || format!("beta({p}, {k}) = {b} is not below {}", k * p));
        }
    }
    let mut expected = Vec::new();
    for m in 1..=50u32 {
        for _ in 0..vp(p, m as u64)? {
            expected.push(m);
        }
    }
    for (i, &m) in expected.iter().enumerate() {
        let k = i as u32 + 1;
        let b = ctx.claims.beta(p, k);
        ensure(&mut failures, b == m, || format!("beta({p}, {k}) = {b}, sequence says {m}"));
    }
    Ok(finish(failures, vec![], format!("alpha to 30, beta to {}", expected.len())))
}

/// Calls `visit` on every polynomial with `len` coefficients below `p^n`.
fn for_each_poly(level: PrimeLevel, len: usize, mut visit: impl FnMut(&MonomialPoly)) {
    let m = level.modulus() as i64;
    let mut digits = vec![0i64; len];
    loop {
        visit(&MonomialPoly::new(digits.iter().copied(), level));
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, level: PrimeLevel, max_len: usize) -> MonomialPoly {
    let len = rng.gen_range(0..=max_len);
    MonomialPoly::new((0..len).map(|_| rng.gen_range(0..level.modulus() as i64)), level)
}

/// Walks the polynomial corpus for `level`: exhaustive when it fits the budget,
/// otherwise a seeded random sample. Returns whether the walk was exhaustive.
fn walk_corpus(ctx: &Ctx, level: PrimeLevel, salt: u64, mut visit: impl FnMut(&MonomialPoly)) -> bool {
    let len = level.beta() as usize;
    let count = big_pow(level.modulus(), len as u64);
    if ctx.fits(&count) {
        for_each_poly(level, len, visit);
        true
    } else {
        let mut rng = ctx.rng(salt);
        for _ in 0..SAMPLES {
            visit(&random_poly(&mut rng, level, 2 * len));
        }
        false
    }
}

fn corpus_label(level: PrimeLevel, exhaustive: bool) -> String {
    format!("{level} {}", if exhaustive { "exhaustive" } else { "sampled" })
}

fn check_canonical(ctx: &Ctx) -> Result<Outcome, CliError> {
    let mut failures = Vec::new();
    let mut passed = Vec::new();
    for level in ctx.levels() {
        let exhaustive = walk_corpus(ctx, level, 1, |f| {
            let table = f.table();
            let canon = CanonicalForm::from_poly(f);
            ensure(&mut failures, canon.to_monomial().table() == table, || format!("round trip fails for {f} on {level}"));
            ensure(&mut failures, CanonicalForm::from_table(&table).as_ref() == Ok(&canon), || {
                format!("canonical form of the table of {f} differs on {level}")
            });
            let zero = table.values().iter().all(|&v| v == 0);
            ensure(&mut failures, is_zero_function(f) == zero, || format!("zero-function test wrong for {f} on {level}"));
        });
        // Uniqueness: distinct canonical vectors give distinct tables.
        let monoid = enumerate_f(level, ctx.cfg.budget);
        if let Some(distinct) = monoid.distinct_count() {
            ensure(&mut failures, BigUint::from(distinct) == order_f(level.p(), level.n()), || {
                format!("{distinct} distinct tables from canonical vectors on {level}")
            });
        }
        passed.push(corpus_label(level, exhaustive));
    }
    Ok(finish(failures, vec![], passed.join(", ")))
}

fn check_carlitz(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let mut failures = Vec::new();
    let mut passed = Vec::new();
    for level in ctx.levels() {
        let mut rng = ctx.rng(2 + level.n() as u64);
        let exhaustive = walk_corpus(ctx, level, 3, |f| {
            let c = CarlitzForm::decompose(f);
            ensure(&mut failures, c.reconstruct() == *f, || format!("reconstruction fails for {f}"));
            ensure(&mut failures, c.layers().iter().all(|l| l.degree().is_none_or(|d| d < p as usize)), || {
                format!("layer of degree >= p for {f}")
            });
            if level.n() <= p {
                let partner = if rng.gen_bool(0.5) {
                    CanonicalForm::from_poly(f).to_monomial()
                } else {
                    random_poly(&mut rng, level, level.beta() as usize)
                };
                let same = f.table() == partner.table();
                ensure(&mut failures, carlitz_equal(f, &partner) == Ok(same), || {
                    format!("layerwise comparison of {f} and {partner} disagrees with tables")
                });
            }
        });
        passed.push(corpus_label(level, exhaustive));
    }
    Ok(finish(failures, vec![], passed.join(", ")))
}

fn check_permutation(ctx: &Ctx) -> Result<Outcome, CliError> {
    let mut failures = Vec::new();
    let mut passed = Vec::new();
    for level in ctx.levels() {
        let exhaustive = walk_corpus(ctx, level, 4, |f| {
            ensure(&mut failures, is_permutation(f) == f.table().is_bijective(), || {
                format!("permutation criterion wrong for {f} on {level}")
            });
        });
        passed.push(corpus_label(level, exhaustive));
    }
    Ok(finish(failures, vec![], passed.join(", ")))
}

fn check_orders(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let mut failures = Vec::new();
    let mut passed = Vec::new();
    let mut skipped = Vec::new();
    for level in ctx.levels() {
        let n = level.n();
        let f = enumerate_f(level, ctx.cfg.budget);
        let g = enumerate_g(level, ctx.cfg.budget);
        match (f.distinct_count(), g.elements()) {
            (Some(fc), Some(ge)) => {
                let (cf, cg) = (ctx.claims.order_f(p, n), ctx.claims.order_g(p, n));
                ensure(&mut failures, BigUint::from(fc) == cf, || format!("|F_{n}| = {fc}, formula {cf}"));
                ensure(&mut failures, BigUint::from(ge.len()) == cg, || format!("|G_{n}| = {}, formula {cg}", ge.len()));
                ensure(&mut failures, ge.iter().all(FunctionTable::is_bijective), || format!("non-bijective element in G_{n}"));
                if ge.len() as u64 <= BRUTE_FORCE_CAP {
                    ensure(&mut failures, is_subgroup(ge), || format!("G_{n} is not closed"));
                }
                passed.push(format!("n={n}"));
            }
            _ => skipped.push(format!("n={n}")),
        }
    }
    Ok(finish(failures, skipped, passed.join(", ")))
}

fn check_projection(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let mut failures = Vec::new();
    let mut passed = Vec::new();
    let mut skipped = Vec::new();
    let levels = ctx.levels();
    let groups: Vec<GnGroup> = levels.iter().map(|&l| enumerate_g(l, ctx.cfg.budget)).collect();
    for (i, &level) in levels.iter().enumerate().skip(1) {
        let n = level.n();
        let f = enumerate_f(level, ctx.cfg.budget);
        let Ok(fibers) = f.projection_fibers() else {
            skipped.push(format!("n={n}"));
            continue;
        };
        let expected = ctx.claims.kernel_order(p, n);
        ensure(&mut failures, BigUint::from(fibers.len()) == order_f(p, n - 1), || format!("F_{n} does not cover F_{}", n - 1));
        ensure(&mut failures, fibers.values().all(|&s| BigUint::from(s) == expected), || {
            format!("fiber of F_{n} -> F_{} differs from {expected}", n - 1)
        });
        let (lower, upper) = (&groups[i - 1], &groups[i]);
        if let (Some(lo), Some(up)) = (lower.elements(), upper.elements()) {
            for g in up {
                ensure(&mut failures, lower.contains(&g.project().expect("polynomial")) == Some(true), || {
                    format!("projection of a G_{n} element leaves G_{}", n - 1)
                });
            }
            if n >= 3 {
                let kernel = upper.kernel_of_projection()?;
                ensure(&mut failures, BigUint::from(kernel.len()) == expected, || {
                    format!("|ker(G_{n} -> G_{})| = {}, formula {expected}", n - 1, kernel.len())
                });
                // Every preimage in F_n of an element of G_{n-1} is a permutation.
                for t in f.elements().unwrap_or_default() {
                    let image = t.project().expect("polynomial");
                    let in_lower = lo.binary_search(&image).is_ok();
                    ensure(&mut failures, in_lower == upper.contains(t).unwrap_or(false), || {
                        format!("preimage of G_{} in F_{n} is not G_{n}", n - 1)
                    });
                }
            }
        }
        passed.push(format!("n={n}"));
    }
    if levels.len() < 2 {
        skipped.push("needs level >= 2".into());
    }
    Ok(finish(failures, skipped, passed.join(", ")))
}

fn check_ideals(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let mut failures = Vec::new();
    for n in 1..=ctx.cfg.n_max.max(p + 1) {
        let idx = ideal_indices(p, n);
        ensure(&mut failures, idx.index_i == ctx.claims.order_f(p, n), || format!("[Z[x] : I_{n}] disagrees with |F_{n}|"));
        ensure(&mut failures, idx.equal() == (n <= p), || format!("I_{n} = J_{n} should hold iff {n} <= {p}"));
        ensure(&mut failures, idx.index_j >= idx.index_i, || format!("J_{n} is not contained in I_{n}"));
    }
    Ok(finish(failures, vec![], format!("n <= {}", ctx.cfg.n_max.max(p + 1))))
}

fn check_theta(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let Ok(level) = PrimeLevel::new(p, 2) else {
        return Ok(Outcome::Skip("Z/p^2Z not tabulated".into()));
    };
    let f2 = enumerate_f(level, ctx.cfg.budget);
    let Some(elements) = f2.elements() else {
        return Ok(Outcome::Skip(format!("|F_2| = {} exceeds budget", f2.order())));
    };
    let mut failures = Vec::new();
    let fibers = theta_fibers(&f2)?;
    let expected = p.pow(p) as usize;
    ensure(&mut failures, fibers.uniform_size() == Some(expected), || format!("theta fibers are not all of size {expected}"));
    ensure(&mut failures, fibers.fiber_sizes.len() == (p.pow(2 * p)) as usize, || "theta is not onto E".into());
    let g2 = enumerate_g(level, ctx.cfg.budget);
    ensure(&mut failures, Some(fibers.unit_preimage.as_slice()) == g2.elements(), || "theta^-1(H) differs from G_2".into());
    for t in elements {
        let e = theta_of_table(t)?;
        ensure(&mut failures, psi(&e) == t.project().expect("polynomial"), || "psi . theta differs from pi_1".into());
    }
    let pair_cap = ctx.cfg.budget.saturating_mul(2) as usize;
    let hom = |a: &FunctionTable, b: &FunctionTable| -> Result<bool, CliError> {
        let lhs = theta_of_table(&a.compose(b)?)?;
        let rhs = theta_of_table(a)?.compose(&theta_of_table(b)?)?;
        Ok(lhs == rhs)
    };
    let mut detail = String::new();
    if elements.len().saturating_mul(elements.len()) <= pair_cap {
        for a in elements {
            for b in elements {
                ensure(&mut failures, hom(a, b)?, || "theta is not multiplicative".into());
            }
        }
        detail.push_str("homomorphism exhaustive on F_2");
    } else {
        let mut rng = ctx.rng(5);
        for _ in 0..SAMPLES {
            let a = &elements[rng.gen_range(0..elements.len())];
            let b = &elements[rng.gen_range(0..elements.len())];
            ensure(&mut failures, hom(a, b)?, || "theta is not multiplicative".into());
        }
        detail.push_str("homomorphism sampled on F_2");
        if let Some(g) = g2.elements().filter(|g| g.len() * g.len() <= pair_cap) {
            for a in g {
                for b in g {
                    ensure(&mut failures, hom(a, b)?, || "theta is not multiplicative on G_2".into());
                }
            }
            detail.push_str(", exhaustive on G_2");
        }
    }
    Ok(finish(failures, vec![], format!("fibers of size {expected}; {detail}")))
}

fn check_h_group(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let order = ctx.claims.order_h(p);
    if !ctx.fits(&order) {
        return Ok(Outcome::Skip(format!("|H| = {order} exceeds budget")));
    }
    let h = enumerate_h(p, ctx.cfg.budget)?;
    let mut failures = Vec::new();
    ensure(&mut failures, BigUint::from(h.len()) == order, || format!("|H| = {}, formula {order}", h.len()));
    let id = HElement::identity(p)?;
    for a in &h {
        let inv = a.inverse();
        ensure(&mut failures, a.compose(&inv)? == id && inv.compose(a)? == id, || format!("inverse law fails at {a}"));
        ensure(&mut failures, a.compose(&id)? == *a && id.compose(a)? == *a, || format!("identity law fails at {a}"));
    }
    let pair_cap = ctx.cfg.budget.saturating_mul(2) as usize;
    let closure = |a: &HElement, b: &HElement| -> Result<bool, CliError> {
        let c = a.compose(b)?;
        Ok(h.binary_search(&c).is_ok() && EElement::is_unit(c.as_e()))
    };
    let detail = if h.len() * h.len() <= pair_cap {
        for a in &h {
            for b in &h {
                ensure(&mut failures, closure(a, b)?, || "H is not closed".into());
            }
        }
        "closure exhaustive"
    } else {
        let mut rng = ctx.rng(6);
        for _ in 0..100 * SAMPLES {
            let (a, b) = (&h[rng.gen_range(0..h.len())], &h[rng.gen_range(0..h.len())]);
            ensure(&mut failures, closure(a, b)?, || "H is not closed".into());
        }
        "closure sampled"
    };
    Ok(finish(failures, vec![], format!("|H| = {}, {detail}", h.len())))
}

fn check_sylow_h(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let mut failures = Vec::new();
    let mut passed = Vec::new();
    let mut skipped = Vec::new();
    let count = ctx.claims.sylow_count(p);
    match enumerate_descriptors(p, ctx.cfg.budget) {
        Ok(descriptors) => {
            ensure(&mut failures, BigUint::from(descriptors.len()) == count, || {
                format!("{} descriptors, formula {count}", descriptors.len())
            });
            let mut subgroups = descriptors.iter().map(descriptor_subgroup).collect::<Result<Vec<_>, _>>()?;
            for s in &subgroups {
                ensure(&mut failures, s.len() == p as usize && is_subgroup(s), || "descriptor subgroup is not of order p".into());
            }
            let intersection = intersect_all(&subgroups);
            ensure(&mut failures, BigUint::from(intersection.len()) == ctx.claims.intersection_order(p), || {
                format!("intersection of Sylow subgroups has order {}", intersection.len())
            });
            subgroups.sort();
            subgroups.dedup();
            ensure(&mut failures, subgroups.len() == descriptors.len(), || "descriptors are not injective".into());
            passed.push(format!("{} descriptors", descriptors.len()));
            if ctx.fits(&ctx.claims.order_h(p)) {
                let h = enumerate_h(p, ctx.cfg.budget)?;
                let brute = order_p_subgroups(&h, p as u64);
                ensure(&mut failures, brute == subgroups, || "descriptor subgroups differ from the order-p subgroups of H".into());
                let affine = normalizer_in_h(p)?;
                let norm = normalizer(&h, &standard_sylow(p)?);
                ensure(&mut failures, affine == norm, || "affine normalizer differs from brute force".into());
                ensure(&mut failures, BigUint::from(norm.len()) == ctx.claims.normalizer_order(p), || {
                    format!("|N_H(S)| = {}", norm.len())
                });
                passed.push("brute force on H".into());
            } else {
                skipped.push("brute force on H".into());
            }
        }
        Err(_) => skipped.push(format!("{count} descriptors exceed budget")),
    }
    Ok(finish(failures, skipped, passed.join(", ")))
}

fn check_sylow_gn(ctx: &Ctx) -> Result<Outcome, CliError> {
    let p = ctx.cfg.p;
    let mut failures = Vec::new();
    let mut passed = Vec::new();
    let mut skipped = Vec::new();
    let descriptors = enumerate_descriptors(p, ctx.cfg.budget).ok();
    for level in ctx.levels().into_iter().filter(|l| l.n() >= 2) {
        let n = level.n();
        let g = enumerate_g(level, ctx.cfg.budget);
        let (Some(elements), Some(descriptors)) = (g.elements(), descriptors.as_ref()) else {
            skipped.push(format!("n={n}"));
            continue;
        };
        let order = ctx.claims.sylow_order_gn(p, n);
        let mut lifts = Vec::new();
        for d in descriptors {
            let lift = lift_to_gn(d, level)?.elements(&g)?;
            ensure(&mut failures, BigUint::from(lift.len()) == order, || format!("lift of size {} at n={n}, formula {order}", lift.len()));
            lifts.push(lift);
        }
        let core = core_n(level)?.elements(&g)?;
        ensure(&mut failures, BigUint::from(core.len()) == ctx.claims.core_order(p, n), || format!("|N| = {} at n={n}", core.len()));
        ensure(&mut failures, BigUint::from(elements.len() / core.len().max(1)) == ctx.claims.core_index(p), || {
            format!("[G_{n} : N] wrong")
        });
        if p != 2 {
            ensure(&mut failures, intersect_all(&lifts) == core, || format!("Sylow intersection differs from N at n={n}"));
        }
        if elements.len() as u64 <= BRUTE_FORCE_CAP {
            let mut orbit = brute_force_sylow(elements, p)?;
            orbit.sort();
            let mut sorted = lifts.clone();
            sorted.sort();
            ensure(&mut failures, orbit == sorted, || format!("lifts differ from the conjugation orbit at n={n}"));
        }
        // The lift of (C_0, [1]) is cut out by the two conditions on f mod p and f' mod p.
        let standard = lift_to_gn(&SylowDescriptor::standard(p)?, level)?.elements(&g)?;
        let shift = FunctionTable::from_fn(level.base(), |x| (x + 1) % p);
        let powers = polyperm_core::group::generate(&FunctionTable::identity(level.base()), &[shift]);
        let double: Vec<FunctionTable> = elements
            .iter()
            .filter(|t| {
                let e = theta_of_table(t).expect("polynomial");
                e.fprime().values().iter().all(|&v| v == 1) && powers.binary_search(e.f()).is_ok()
            })
            .cloned()
            .collect();
        ensure(&mut failures, double == standard, || "standard lift differs from the double filter".into());
        ensure(&mut failures, core.iter().any(GroupElement::is_identity), || "N misses the identity".into());
        passed.push(format!("n={n}"));
    }
    Ok(finish(failures, skipped, passed.join(", ")))
}

fn check_fn(name: &str) -> CheckFn {
    match name {
        "valuations" => check_valuations,
        "canonical" => check_canonical,
        "carlitz" => check_carlitz,
        "permutation" => check_permutation,
        "orders" => check_orders,
        "projection" => check_projection,
        "ideals" => check_ideals,
        "theta" => check_theta,
        "h-group" => check_h_group,
        "sylow-h" => check_sylow_h,
        "sylow-gn" => check_sylow_gn,
        other => unreachable!("unknown check {other}"),
    }
}

pub fn run_verify(cfg: &RunConfig) -> Result<VerifyOutcome, CliError> {
    cfg.validate()?;
    let ctx = Ctx { cfg, claims: Claims::new(cfg.fault) };
    let selected: Vec<&str> = if cfg.checks.is_empty() {
        CHECK_NAMES.to_vec()
    } else {
        CHECK_NAMES.iter().copied().filter(|c| cfg.checks.iter().any(|s| s == c)).collect()
    };
    let mut results = Vec::new();
    for name in selected {
        let (status, detail) = match check_fn(name)(&ctx) {
            Ok(Outcome::Pass(d)) => (Status::Pass, d),
            Ok(Outcome::Fail(d)) => (Status::Fail, d),
            Ok(Outcome::Skip(d)) => (Status::Skip, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        results.push(CheckResult { check: name.to_string(), status, detail });
    }
    Ok(VerifyOutcome { schema: 1, p: cfg.p, n_max: cfg.n_max, results })
}
