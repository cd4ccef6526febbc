//! The `export` command: flat listings of group elements and Sylow descriptors.
//!
//! JSON output is an array with one compact record per line, so files diff cleanly.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use polyperm_core::arith::PrimeLevel;
use polyperm_core::fgroup::enumerate_g;
use polyperm_core::hgroup::{enumerate_h, order_h, HElement};
use polyperm_core::polyfun::FunctionTable;
use polyperm_core::sylow::{descriptor_subgroup, enumerate_descriptors, lift_to_gn, sylow_count, sylow_order_gn};
use serde::Serialize;

use crate::config::{CliError, Format, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    H,
    G,
    Sylow,
    Descriptors,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(Target::H),
            "g" => Ok(Target::G),
            "sylow" => Ok(Target::Sylow),
            "descriptors" => Ok(Target::Descriptors),
            other => Err(format!("unknown export target {other:?}; expected H, G, sylow or descriptors")),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::H => "H",
            Target::G => "G",
            Target::Sylow => "sylow",
            Target::Descriptors => "descriptors",
        })
    }
}

fn join(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn refuse(what: Target, needed: &BigUint, budget: u64) -> CliError {
    CliError::Refused(format!(
        "exporting {what} needs {needed} records, over the budget of {budget}; raise --budget or lower --level"
    ))
}

fn json_lines<T: Serialize>(records: &[T]) -> Result<String, CliError> {
    if records.is_empty() {
        return Ok("[]\n".into());
    }
    let mut out = String::from("[\n");
    for (i, r) in records.iter().enumerate() {
        out.push_str(&serde_json::to_string(r)?);
        out.push_str(if i + 1 < records.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    Ok(out)
}

fn h_csv(elements: &[HElement]) -> String {
    let mut out = String::from("perm,deriv\n");
    for h in elements {
        let _ = writeln!(out, "{},{}", join(h.perm().values()), join(h.deriv().values()));
    }
    out
}

#[derive(Serialize)]
struct SylowRecord<'a, T: Serialize> {
    generator: &'a [u32],
    phi: &'a [u32],
    elements: Vec<T>,
}

/// Renders the requested listing. Text format falls back to CSV.
pub fn run_export(cfg: &RunConfig, what: Target) -> Result<String, CliError> {
    cfg.validate()?;
    let (p, budget) = (cfg.p, cfg.budget);
    let csv = cfg.format != Format::Json;
    match what {
        Target::H => {
            let order = order_h(p);
            if order > BigUint::from(budget) {
                return Err(refuse(what, &order, budget));
            }
            let h = enumerate_h(p, budget)?;
            if csv {
                Ok(h_csv(&h))
            } else {
                json_lines(&h)
            }
        }
        Target::G => {
            let level = PrimeLevel::new(p, cfg.n_max)?;
            let g = enumerate_g(level, budget);
            let Some(elements) = g.elements() else {
                return Err(refuse(what, g.order(), budget));
            };
            if csv {
                let mut out = String::new();
                for t in elements {
                    let _ = writeln!(out, "{}", t.values().iter().map(u32::to_string).collect::<Vec<_>>().join(","));
                }
                Ok(out)
            } else {
                json_lines(elements)
            }
        }
        Target::Descriptors => {
            let descriptors = enumerate_descriptors(p, budget).map_err(|_| refuse(what, &sylow_count(p), budget))?;
            if csv {
                let mut out = String::from("generator,phi\n");
                for d in &descriptors {
                    let _ = writeln!(out, "{},{}", join(d.cyclic.generator().values()), join(d.phi.phi().values()));
                }
                Ok(out)
            } else {
                json_lines(&descriptors)
            }
        }
        Target::Sylow => {
            // Subgroups of H at level 1, lifts into G_n above it.
            let per_group = if cfg.n_max == 1 { BigUint::from(p) } else { sylow_order_gn(p, cfg.n_max) };
            let needed = sylow_count(p) * per_group;
            if needed > BigUint::from(budget) {
                return Err(refuse(what, &needed, budget));
            }
            let descriptors = enumerate_descriptors(p, budget)?;
            if cfg.n_max == 1 {
                let mut records = Vec::new();
                for d in &descriptors {
                    let elements = descriptor_subgroup(d)?;
                    records.push((d, elements));
                }
                if csv {
                    let mut out = String::from("generator,phi,perm,deriv\n");
                    for (d, elements) in &records {
                        for h in elements {
                            let _ = writeln!(
                                out,
                                "{},{},{},{}",
                                join(d.cyclic.generator().values()),
                                join(d.phi.phi().values()),
                                join(h.perm().values()),
                                join(h.deriv().values())
                            );
                        }
                    }
                    return Ok(out);
                }
                let records: Vec<SylowRecord<'_, HElement>> = records
                    .iter()
                    .map(|(d, e)| SylowRecord { generator: d.cyclic.generator().values(), phi: d.phi.phi().values(), elements: e.clone() })
                    .collect();
                json_lines(&records)
            } else {
                let level = PrimeLevel::new(p, cfg.n_max)?;
                let g = enumerate_g(level, budget);
                if !g.is_enumerated() {
                    return Err(refuse(what, g.order(), budget));
                }
                let mut records = Vec::new();
                for d in &descriptors {
                    let elements: Vec<FunctionTable> = lift_to_gn(d, level)?.elements(&g)?;
                    records.push(SylowRecord { generator: d.cyclic.generator().values(), phi: d.phi.phi().values(), elements });
                }
                if csv {
                    let mut out = String::from("generator,phi,table\n");
                    for r in &records {
                        for t in &r.elements {
                            let _ = writeln!(out, "{},{},{}", join(r.generator), join(r.phi), join(t.values()));
                        }
                    }
                    return Ok(out);
                }
                json_lines(&records)
            }
        }
    }
}
