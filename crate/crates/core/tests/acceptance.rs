//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every count here comes from an enumeration that does not consult the closed
//! formula it is compared against.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use polyperm_core::arith::{beta, big_pow, factorial, PrimeLevel};
use polyperm_core::fgroup::{enumerate_f, enumerate_g, for_each_canonical, order_f, order_g, DEFAULT_BUDGET};
use polyperm_core::group::{brute_force_sylow, intersect_all, normalizer, order_p_subgroups};
use polyperm_core::hgroup::{e_compose, enumerate_h, order_h, theta_fibers, theta_of_table, EElement};
use polyperm_core::polyfun::{canonical_bounds, is_permutation, CanonicalForm, FunctionTable, MonomialPoly};
use polyperm_core::sylow::{
    core_n, descriptor_subgroup, enumerate_descriptors, lift_to_gn, normalizer_in_h, normalizer_order,
    standard_sylow, sylow_count, sylow_order_gn, SylowDescriptor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn level(p: u32, n: u32) -> PrimeLevel {
    PrimeLevel::new(p, n).expect("valid level")
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn threads() -> usize {
    thread::available_parallelism().map_or(4, |n| n.get()).min(16)
}

fn orders_by_enumeration() -> Outcome {
    let mut seen = Vec::new();
    for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
        let f = enumerate_f(level(p, n), DEFAULT_BUDGET);
        let tables = f.elements().ok_or("F_n not enumerated")?;
        let distinct: BTreeSet<&FunctionTable> = tables.iter().collect();
        let bijective = distinct.iter().filter(|t| t.is_bijective()).count();
        require!(big(distinct.len()) == order_f(p, n), "|F_{n}| at p={p}: {} tables", distinct.len());
        require!(big(bijective) == order_g(p, n), "|G_{n}| at p={p}: {bijective} bijections");
        let g = enumerate_g(level(p, n), DEFAULT_BUDGET);
        require!(g.elements().map(|e| e.len()) == Some(bijective), "enumerate_g disagrees at p={p}, n={n}");
        seen.push(format!("|G_{n}|={bijective}@p={p}"));
    }
    Ok(seen.join(" "))
}

fn kernel_sizes() -> Outcome {
    let mut seen = Vec::new();
    for (n, expected) in [(2u32, 16usize), (3, 64)] {
        let g = enumerate_g(level(2, n + 1), DEFAULT_BUDGET);
        let kernel = g.kernel_of_projection().map_err(|e| e.to_string())?;
        require!(kernel.len() == expected, "ker pi_{n} at p=2 has {} elements", kernel.len());
        require!(big(kernel.len()) == big_pow(2, beta(2, n + 1) as u64), "formula disagrees at n={n}");
        seen.push(format!("ker pi_{n}={}", kernel.len()));
    }
    let f = enumerate_f(level(3, 2), DEFAULT_BUDGET);
    let fibers = f.projection_fibers().map_err(|e| e.to_string())?;
    require!(fibers.len() == 27, "F_2 -> F_1 at p=3 hits {} functions", fibers.len());
    require!(fibers.values().all(|&s| s == 729), "F_2 -> F_1 fibers at p=3 are not all 729");
    seen.push("F_2->F_1 fibers=729@p=3".into());
    Ok(seen.join(" "))
}

/// All of `E` at `p`, built value by value.
fn all_e(p: u32) -> Vec<EElement> {
    let size = p.pow(2 * p) as usize;
    (0..size)
        .map(|mut code| {
            let mut digits = Vec::with_capacity(2 * p as usize);
            for _ in 0..2 * p {
                digits.push((code % p as usize) as u32);
                code /= p as usize;
            }
            let (f, d) = digits.split_at(p as usize);
            EElement::from_values(p, f.to_vec(), d.to_vec()).expect("in range")
        })
        .collect()
}

fn order_of_h() -> Outcome {
    let mut seen = Vec::new();
    for p in [2u32, 3, 5] {
        let e = all_e(p);
        let units = if p <= 3 {
            // Two-sided inverses found by search.
            let id = EElement::identity(p).unwrap();
            e.iter()
                .filter(|a| e.iter().any(|b| e_compose(a, b).unwrap() == id && e_compose(b, a).unwrap() == id))
                .count()
        } else {
            e.iter().filter(|a| a.is_unit()).count()
        };
        let expected = factorial(p) * big_pow(p - 1, p as u64);
        require!(big(units) == expected && order_h(p) == expected, "|H| at p={p}: counted {units}");
        let h = enumerate_h(p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        require!(h.len() == units, "enumerate_h gives {} at p={p}", h.len());
        seen.push(format!("|H|={units}@p={p}"));
    }
    Ok(seen.join(" "))
}

fn e_code(p: usize, f: impl Iterator<Item = u32>, d: impl Iterator<Item = u32>) -> usize {
    let mut code = 0;
    let mut scale = 1;
    for v in f.chain(d) {
        code += v as usize * scale;
        scale *= p;
    }
    code
}

/// Checks `theta(a ∘ b) = theta(a) ∘ theta(b)` for every pair in `F_2`.
fn theta_homomorphism(p: u32) -> Result<usize, String> {
    let f2 = enumerate_f(level(p, 2), DEFAULT_BUDGET);
    let tables = f2.elements().ok_or("F_2 not enumerated")?;
    let (pu, m) = (p as usize, (p * p) as usize);
    let e = all_e(p);
    let code_of = |x: &EElement| e_code(pu, x.f().values().iter().copied(), x.fprime().values().iter().copied());
    let size = e.len();
    let mut mult = vec![0u32; size * size];
    for (i, a) in e.iter().enumerate() {
        for (j, b) in e.iter().enumerate() {
            mult[i * size + j] = code_of(&e_compose(a, b).unwrap()) as u32;
        }
    }
    let raw: Vec<Vec<u32>> = tables.iter().map(|t| t.values().to_vec()).collect();
    let raw_theta = |c: &[u32]| -> usize {
        e_code(
            pu,
            (0..pu).map(|x| c[x] % p),
            (0..pu).map(|x| (((c[x + pu] as usize + m - c[x] as usize) % m / pu) % pu) as u32),
        )
    };
    let mut codes = Vec::with_capacity(raw.len());
    for (t, r) in tables.iter().zip(&raw) {
        let code = code_of(&theta_of_table(t).map_err(|e| e.to_string())?);
        require!(code == raw_theta(r), "difference quotient disagrees with theta_of_table");
        codes.push(code);
    }
    let workers = threads();
    let chunk = raw.len().div_ceil(workers);
    let bad: usize = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (raw, codes, mult) = (&raw, &codes, &mult);
                s.spawn(move || {
                    let mut bad = 0;
                    let mut c = vec![0u32; m];
                    for ai in (w * chunk)..((w + 1) * chunk).min(raw.len()) {
                        let a = &raw[ai];
                        let row = codes[ai] * size;
                        for (bi, b) in raw.iter().enumerate() {
                            for x in 0..m {
                                c[x] = a[b[x] as usize];
                            }
                            if raw_theta(&c) != mult[row + codes[bi]] as usize {
                                bad += 1;
                            }
                        }
                    }
                    bad
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    });
    require!(bad == 0, "{bad} pairs violate the homomorphism law at p={p}");
    Ok(raw.len() * raw.len())
}

fn theta_fibers_and_hom() -> Outcome {
    let mut seen = Vec::new();
    for (p, fiber) in [(2u32, 4usize), (3, 27)] {
        let f2 = enumerate_f(level(p, 2), DEFAULT_BUDGET);
        let fibers = theta_fibers(&f2).map_err(|e| e.to_string())?;
        require!(fibers.uniform_size() == Some(fiber), "theta fibers at p={p} are not all {fiber}");
        require!(fibers.fiber_sizes.len() == p.pow(2 * p) as usize, "theta is not onto E at p={p}");
        let pairs = theta_homomorphism(p)?;
        seen.push(format!("fiber={fiber}@p={p} ({pairs} pairs)"));
    }
    Ok(seen.join(" "))
}

fn sylow_count_h() -> Outcome {
    let h = enumerate_h(3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let brute = order_p_subgroups(&h, 3).len();
    require!(brute == 4 && sylow_count(3) == big(4), "brute-force count at p=3 is {brute}");
    let d = enumerate_descriptors(5, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let expected = factorial(4) * big_pow(4, 3);
    require!(big(d.len()) == expected && sylow_count(5) == expected, "descriptor count at p=5 is {}", d.len());
    Ok(format!("brute force {brute}@p=3, descriptors {}@p=5", d.len()))
}

fn normalizers() -> Outcome {
    let mut seen = Vec::new();
    for (p, expected) in [(2u32, 2usize), (3, 12), (5, 80)] {
        let h = enumerate_h(p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let s = standard_sylow(p).map_err(|e| e.to_string())?;
        let brute = normalizer(&h, &s);
        let affine = normalizer_in_h(p).map_err(|e| e.to_string())?;
        require!(brute == affine, "affine normalizer differs from brute force at p={p}");
        require!(brute.len() == expected && normalizer_order(p) == big(expected), "|N_H(S)| = {} at p={p}", brute.len());
        seen.push(format!("{expected}@p={p}"));
    }
    Ok(seen.join(" "))
}

fn descriptor_bijection() -> Outcome {
    let h = enumerate_h(3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let brute: BTreeSet<_> = order_p_subgroups(&h, 3).into_iter().collect();
    let d = enumerate_descriptors(3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let ours: BTreeSet<_> = d.iter().map(|d| descriptor_subgroup(d).unwrap()).collect();
    require!(ours.len() == d.len(), "descriptor subgroups are not pairwise distinct");
    require!(ours == brute, "descriptor subgroups differ from the order-3 subgroups of H");
    Ok(format!("{} descriptors, {} subgroups", d.len(), brute.len()))
}

fn intersections() -> Outcome {
    let mut seen = Vec::new();
    for p in [2u32, 3, 5] {
        let d = enumerate_descriptors(p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let subgroups: Vec<_> = d.iter().map(|d| descriptor_subgroup(d).unwrap()).collect();
        let meet = intersect_all(&subgroups);
        let ok = if p == 2 {
            meet == enumerate_h(2, DEFAULT_BUDGET).unwrap()
        } else {
            meet.len() == 1 && meet[0].as_e().is_identity()
        };
        require!(ok, "intersection at p={p} has {} elements", meet.len());
        seen.push(format!("{}@p={p}", meet.len()));
    }
    Ok(seen.join(" "))
}

fn lifts_at_p3() -> Outcome {
    let lv = level(3, 2);
    let g = enumerate_g(lv, DEFAULT_BUDGET);
    let elements = g.elements().ok_or("G_2 not enumerated")?;
    require!(elements.len() == 1296, "|G_2| = {}", elements.len());
    let d = enumerate_descriptors(3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mut lifts = Vec::new();
    for desc in &d {
        let lift = lift_to_gn(desc, lv).and_then(|l| l.elements(&g)).map_err(|e| e.to_string())?;
        require!(lift.len() == 81, "a lift has {} elements", lift.len());
        lifts.push(lift);
    }
    let orbit: BTreeSet<_> = brute_force_sylow(elements, 3).map_err(|e| e.to_string())?.into_iter().collect();
    let ours: BTreeSet<_> = lifts.iter().cloned().collect();
    require!(orbit == ours, "lifts differ from the conjugation orbit ({} vs {})", ours.len(), orbit.len());
    let core = core_n(lv).and_then(|c| c.elements(&g)).map_err(|e| e.to_string())?;
    require!(intersect_all(&lifts) == core, "intersection of lifts differs from N");
    require!(core.len() == 27 && elements.len() / core.len() == 48, "|N| = {}", core.len());
    Ok("4 lifts of order 81, |N|=27, [G_2:N]=48".into())
}

fn random_poly(rng: &mut ChaCha8Rng, lv: PrimeLevel, max_len: usize) -> MonomialPoly {
    let len = rng.gen_range(0..=max_len);
    MonomialPoly::new((0..len).map(|_| rng.gen_range(0..lv.modulus() as i64)), lv)
}

/// Round trip for every polynomial with `beta(n)` coefficients below `p^n`.
fn exhaustive_round_trip(lv: PrimeLevel) -> Result<usize, String> {
    let len = lv.beta() as usize;
    let m = lv.modulus() as u64;
    let total = m.pow(len as u32);
    let workers = threads() as u64;
    let chunk = total.div_ceil(workers);
    let bad: usize = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut bad = 0;
                    for code in (w * chunk)..((w + 1) * chunk).min(total) {
                        let mut c = code;
                        let coeffs: Vec<i64> = (0..len)
                            .map(|_| {
                                let d = c % m;
                                c /= m;
                                d as i64
                            })
                            .collect();
                        let f = MonomialPoly::new(coeffs, lv);
                        let table = f.table();
                        let canon = CanonicalForm::from_poly(&f);
                        let ok = canon.to_monomial().table() == table
                            && CanonicalForm::from_table(&table).as_ref() == Ok(&canon);
                        bad += usize::from(!ok);
                    }
                    bad
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    });
    require!(bad == 0, "{bad} round-trip failures on {lv}");
    Ok(total as usize)
}

fn canonical_soundness() -> Outcome {
    let mut checked = 0usize;
    for (p, n) in [(2u32, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let lv = level(p, n);
        if p <= 3 {
            checked += exhaustive_round_trip(lv)?;
        }
        // Uniqueness: distinct canonical vectors give distinct tables.
        let mut tables = BTreeSet::new();
        let mut vectors = 0usize;
        for_each_canonical(lv, |c| {
            vectors += 1;
            tables.insert(CanonicalForm::new(c.to_vec(), lv).expect("in bounds").table());
        });
        let expected: u64 = canonical_bounds(lv).iter().map(|&b| b as u64).product();
        require!(vectors as u64 == expected && tables.len() == vectors, "uniqueness fails on {lv}");
    }
    let lv = level(3, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let f = random_poly(&mut rng, lv, 24);
        let canon = CanonicalForm::from_poly(&f);
        require!(canon.to_monomial().table() == f.table(), "random round trip fails for {f}");
        require!(CanonicalForm::from_table(&f.table()).as_ref() == Ok(&canon), "from_table differs for {f}");
    }
    Ok(format!("{checked} exhaustive polynomials, 10000 random at p=3 n=2"))
}

fn desk_scale_substitutes() -> Outcome {
    let mut notes = 0;
    for p in [5u32, 7] {
        let g2 = order_g(p, 2);
        // |G_2| = |H| * p^p and each further level multiplies by the kernel.
        require!(g2 == order_h(p) * big_pow(p, p as u64), "|G_2| != |H| p^p at p={p}");
        for n in 3..=6 {
            let step = order_g(p, n) / order_g(p, n - 1);
            require!(step == big_pow(p, beta(p, n) as u64), "|G_{n}|/|G_{}| at p={p}", n - 1);
            // A Sylow p-subgroup has p-power order with p-free index.
            let s = sylow_order_gn(p, n);
            let index = order_g(p, n) / &s;
            let rem = (&index % BigUint::from(p)).to_u32().unwrap();
            require!(rem != 0 && &index * &s == order_g(p, n), "Sylow order not maximal at p={p}, n={n}");
            notes += 1;
        }
        if p == 5 {
            require!(g2 == BigUint::from(384_000_000u32), "|G_2| at p=5 is {g2}");
        }
        // Membership spot checks against explicit tables on Z/p^2Z and Z/p^3Z.
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        for n in [2u32, 3] {
            let lv = level(p, n);
            let standard = lift_to_gn(&SylowDescriptor::standard(p).unwrap(), lv).unwrap();
            for _ in 0..2_000 {
                let f = random_poly(&mut rng, lv, 2 * p as usize + 2);
                let t = f.table();
                require!(is_permutation(&f) == t.is_bijective(), "permutation test wrong for {f}");
                if t.is_bijective() {
                    let e = theta_of_table(&t).unwrap();
                    let shift_power = (0..p).any(|s| e.f().values().iter().enumerate().all(|(x, &v)| v == (x as u32 + s) % p));
                    let in_lift = shift_power && e.fprime().values().iter().all(|&v| v == 1);
                    require!(standard.contains_poly(&f) == Ok(in_lift), "lift membership wrong for {f}");
                }
                let lower = level(p, n - 1);
                require!(
                    CanonicalForm::from_poly(&f).table().project_to(lower).unwrap() == f.at_level(lower).unwrap().table(),
                    "canonical forms do not project compatibly for {f}"
                );
            }
            notes += 1;
        }
    }
    Ok(format!("{notes} formula/membership consistency groups at p=5,7"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("order formulas by exhaustive enumeration", orders_by_enumeration),
        ("kernel and fiber sizes", kernel_sizes),
        ("order of H", order_of_h),
        ("theta homomorphism and fibers", theta_fibers_and_hom),
        ("Sylow count of H", sylow_count_h),
        ("normalizer of a Sylow subgroup", normalizers),
        ("descriptor bijection at p=3", descriptor_bijection),
        ("intersection of Sylow subgroups of H", intersections),
        ("lifts, orbit and core at p=3, n=2", lifts_at_p3),
        ("canonical-form soundness", canonical_soundness),
        ("desk-scale substitutes for large p", desk_scale_substitutes),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
