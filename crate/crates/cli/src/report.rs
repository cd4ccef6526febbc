//! The `report` command: every order and count at one prime, each given by its
//! closed formula and, when the enumeration budget allows, by an independent count.

use std::fmt::Write as _;

use num_bigint::BigUint;
use polyperm_core::fgroup::{enumerate_f, enumerate_g, GnGroup, LevelSummary};
use polyperm_core::group::{brute_force_sylow, intersect_all, normalizer, order_p_subgroups};
use polyperm_core::hgroup::enumerate_h;
use polyperm_core::sylow::{core_n, enumerate_descriptors, lift_to_gn, standard_sylow, SylowDescriptor, SylowReport};
use polyperm_core::{serialize_big, PrimeLevel};
use serde::Serialize;

use crate::claims::Claims;
use crate::config::{CliError, Format, RunConfig};

/// Largest group on which the conjugation-orbit Sylow oracle is run.
pub const BRUTE_FORCE_CAP: u64 = 1500;

#[derive(Clone, Debug, Serialize)]
pub struct Quantity {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(serialize_with = "serialize_big")]
    pub formula: BigUint,
    #[serde(serialize_with = "serialize_opt_big")]
    pub oracle: Option<BigUint>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

fn serialize_opt_big<S: serde::Serializer>(value: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serialize_big(v, s),
        None => s.serialize_none(),
    }
}

impl Quantity {
    fn new(name: &str, n: Option<u32>, formula: BigUint, oracle: Option<BigUint>) -> Self {
        let matches = oracle.as_ref().map(|o| *o == formula);
        Quantity { name: name.to_string(), n, formula, oracle, matches }
    }

    fn label(&self) -> String {
        match self.n {
            Some(n) => format!("{}[n={}]", self.name, n),
            None => self.name.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema: u32,
    pub p: u32,
    pub n_max: u32,
    pub budget: u64,
    pub quantities: Vec<Quantity>,
    pub levels: Vec<LevelSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sylow: Option<SylowReport>,
}

impl Report {
    pub fn quantity(&self, name: &str, n: Option<u32>) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.name == name && q.n == n)
    }

    /// True when no oracle disagrees with its formula.
    pub fn consistent(&self) -> bool {
        self.quantities.iter().all(|q| q.matches != Some(false))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => {
                let mut out = String::from("quantity,n,formula,oracle,match\n");
                for q in &self.quantities {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        q.name,
                        q.n.map(|n| n.to_string()).unwrap_or_default(),
                        q.formula,
                        q.oracle.as_ref().map(|o| o.to_string()).unwrap_or_default(),
                        q.matches.map(|m| m.to_string()).unwrap_or_default()
                    );
                }
                out
            }
            Format::Text => {
                let mut out = format!("p = {}, levels 1..={}, budget {}\n", self.p, self.n_max, self.budget);
                for q in &self.quantities {
                    let oracle = match (&q.oracle, q.matches) {
                        (Some(o), Some(true)) => format!("enumerated {o}, match"),
                        (Some(o), _) => format!("enumerated {o}, MISMATCH"),
                        (None, _) => "formula only".to_string(),
                    };
                    let _ = writeln!(out, "{:<24} {:>24}  ({oracle})", q.label(), q.formula.to_string());
                }
                out
            }
        })
    }
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn fits(order: &BigUint, cap: u64) -> bool {
    *order <= BigUint::from(cap)
}

pub fn run_report(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let claims = Claims::new(cfg.fault);
    let p = cfg.p;
    let mut quantities = Vec::new();
    let mut levels = Vec::new();
    let mut groups: Vec<Option<GnGroup>> = Vec::new();

    for n in 1..=cfg.n_max {
        let Ok(level) = PrimeLevel::new(p, n) else {
            quantities.push(Quantity::new("orderF", Some(n), claims.order_f(p, n), None));
            quantities.push(Quantity::new("orderG", Some(n), claims.order_g(p, n), None));
            levels.push(LevelSummary::formula_only(p, n));
            groups.push(None);
            continue;
        };
        let f = enumerate_f(level, cfg.budget);
        quantities.push(Quantity::new("orderF", Some(n), claims.order_f(p, n), f.distinct_count().map(big)));
        let g = enumerate_g(level, cfg.budget);
        quantities.push(Quantity::new("orderG", Some(n), claims.order_g(p, n), g.elements().map(|e| big(e.len()))));
        if n >= 3 {
            let oracle = if g.is_enumerated() { Some(big(g.kernel_of_projection()?.len())) } else { None };
            quantities.push(Quantity::new("kernel", Some(n), claims.kernel_order(p, n), oracle));
        }
        levels.push(LevelSummary::from_group(&g)?);
        groups.push(Some(g));
    }

    let h = if fits(&claims.order_h(p), cfg.budget) { Some(enumerate_h(p, cfg.budget)?) } else { None };
    quantities.push(Quantity::new("orderH", None, claims.order_h(p), h.as_ref().map(|h| big(h.len()))));

    let order_p = h.as_ref().map(|h| order_p_subgroups(h, p as u64));
    let descriptors = enumerate_descriptors(p, cfg.budget).ok();
    let count_oracle = order_p
        .as_ref()
        .map(|s| big(s.len()))
        .or_else(|| descriptors.as_ref().map(|d| big(d.len())));
    quantities.push(Quantity::new("sylowCount", None, claims.sylow_count(p), count_oracle));

    let normalizer_oracle = h.as_ref().map(|h| -> Result<BigUint, CliError> {
        Ok(big(normalizer(h, &standard_sylow(p)?).len()))
    });
    quantities.push(Quantity::new("normalizerOrder", None, claims.normalizer_order(p), normalizer_oracle.transpose()?));

    let intersection_oracle = order_p.as_ref().map(|s| big(intersect_all(s).len()));
    quantities.push(Quantity::new("intersectionOrder", None, claims.intersection_order(p), intersection_oracle));

    for (idx, g) in groups.iter().enumerate() {
        let n = idx as u32 + 1;
        if n < 2 {
            continue;
        }
        let enumerated = g.as_ref().filter(|g| g.is_enumerated());
        let (core_oracle, index_oracle, sylow_oracle) = match enumerated {
            Some(g) => {
                let core = core_n(g.level())?.elements(g)?;
                let index = g.elements().map(|e| big(e.len() / core.len().max(1)));
                let lift = lift_to_gn(&SylowDescriptor::standard(p)?, g.level())?.elements(g)?;
                (Some(big(core.len())), index, Some(big(lift.len())))
            }
            None => (None, None, None),
        };
        quantities.push(Quantity::new("coreOrder", Some(n), claims.core_order(p, n), core_oracle));
        quantities.push(Quantity::new("coreIndex", Some(n), claims.core_index(p), index_oracle));
        quantities.push(Quantity::new("sylowOrder", Some(n), claims.sylow_order_gn(p, n), sylow_oracle));
        let orbit_oracle = match enumerated {
            Some(g) if fits(&BigUint::from(g.elements().map_or(0, |e| e.len())), BRUTE_FORCE_CAP) => {
                Some(big(brute_force_sylow(g.elements().unwrap_or_default(), p)?.len()))
            }
            _ => None,
        };
        quantities.push(Quantity::new("sylowCountGn", Some(n), claims.sylow_count(p), orbit_oracle));
    }

    let sylow = match PrimeLevel::new(p, cfg.n_max) {
        Ok(level) if descriptors.is_some() => Some(SylowReport::build(level, cfg.budget)?),
        _ => None,
    };

    Ok(Report { schema: 1, p, n_max: cfg.n_max, budget: cfg.budget, quantities, levels, sylow })
}
