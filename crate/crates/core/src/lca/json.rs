//! The `lca/1` JSON interchange format for algebra presentations.
//! Weights appear as exact fraction strings, the bracket table as
//! nested maps keyed by generator ids and integer strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::{parse_rat, rat_to_string, PolyScalar, Symbol};
use crate::twist::CosetZ;
use crate::{Error, Result};

use super::{Central, Generator, LcaElement, LcaSpec, Parity};

pub const LCA_FORMAT: &str = "lca/1";

#[derive(Serialize, Deserialize)]
struct JsonSpec {
    format: String,
    name: String,
    generators: Vec<JsonGenerator>,
    #[serde(default)]
    centrals: Vec<JsonCentral>,
    /// brackets[a][b][j] = value of a_(j) b
    brackets: BTreeMap<String, BTreeMap<String, BTreeMap<String, JsonElement>>>,
}

#[derive(Serialize, Deserialize)]
struct JsonGenerator {
    id: String,
    delta: String,
    #[serde(default = "default_parity")]
    parity: String,
    #[serde(default = "default_coset")]
    coset: String,
}

fn default_parity() -> String {
    "even".to_string()
}

fn default_coset() -> String {
    "0".to_string()
}

#[derive(Serialize, Deserialize)]
struct JsonCentral {
    id: String,
    symbol: String,
}

#[derive(Serialize, Deserialize, Default)]
struct JsonElement {
    #[serde(default)]
    terms: Vec<JsonTerm>,
    #[serde(default)]
    centrals: Vec<JsonCentralTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    tpow: u32,
    gen: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct JsonCentralTerm {
    id: String,
    coeff: String,
}

pub fn from_json(text: &str) -> Result<LcaSpec> {
    let js: JsonSpec =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if js.format != LCA_FORMAT {
        return Err(Error::SpecError(format!(
            "unsupported format `{}` (expected `{LCA_FORMAT}`)",
            js.format
        )));
    }
    let generators = js
        .generators
        .iter()
        .map(|g| {
            Ok(Generator {
                id: g.id.clone(),
                weight: parse_rat(&g.delta)?,
                parity: match g.parity.as_str() {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    other => {
                        return Err(Error::SpecError(format!("unknown parity `{other}`")))
                    }
                },
                coset: CosetZ::new(parse_rat(&g.coset)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let centrals = js
        .centrals
        .iter()
        .map(|c| {
            let symbol = Symbol::from_name(&c.symbol).ok_or_else(|| {
                Error::SpecError(format!("unknown central symbol `{}`", c.symbol))
            })?;
            Ok(Central { id: c.id.clone(), symbol })
        })
        .collect::<Result<Vec<_>>>()?;
    let gen_index = |id: &str| -> Result<usize> {
        generators
            .iter()
            .position(|g| g.id == id)
            .ok_or_else(|| Error::SpecError(format!("unknown generator `{id}` in brackets")))
    };
    let central_index = |id: &str| -> Result<usize> {
        centrals
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::SpecError(format!("unknown central `{id}` in brackets")))
    };
    let mut bracket = BTreeMap::new();
    for (aid, inner) in &js.brackets {
        for (bid, by_j) in inner {
            for (jtxt, val) in by_j {
                let j: i64 = jtxt.parse().map_err(|_| {
                    Error::SpecError(format!("bracket index `{jtxt}` is not an integer"))
                })?;
                let mut elem = LcaElement::zero();
                for t in &val.terms {
                    elem.add_term(
                        t.tpow,
                        gen_index(&t.gen)?,
                        PolyScalar::from_rat(parse_rat(&t.coeff)?),
                    );
                }
                for c in &val.centrals {
                    elem.add_central(
                        central_index(&c.id)?,
                        PolyScalar::from_rat(parse_rat(&c.coeff)?),
                    );
                }
                if !elem.is_zero() {
                    bracket.insert((gen_index(aid)?, gen_index(bid)?, j), elem);
                }
            }
        }
    }
    LcaSpec::new(js.name, generators, centrals, bracket)
}

pub fn to_json(spec: &LcaSpec) -> String {
    let generators = spec
        .generators
        .iter()
        .map(|g| JsonGenerator {
            id: g.id.clone(),
            delta: rat_to_string(&g.weight),
            parity: match g.parity {
                Parity::Even => "even".to_string(),
                Parity::Odd => "odd".to_string(),
            },
            coset: rat_to_string(g.coset.representative()),
        })
        .collect();
    let centrals = spec
        .centrals
        .iter()
        .map(|c| JsonCentral { id: c.id.clone(), symbol: c.symbol.name().to_string() })
        .collect();
    let mut brackets: BTreeMap<String, BTreeMap<String, BTreeMap<String, JsonElement>>> =
        BTreeMap::new();
    for (a, b, j, e) in spec.bracket_entries() {
        let mut val = JsonElement::default();
        for (t, g, c) in e.iter_terms() {
            val.terms.push(JsonTerm {
                tpow: t,
                gen: spec.generators[g].id.clone(),
                coeff: rat_to_string(&c.as_rat().expect("table coefficients are rational")),
            });
        }
        for (i, c) in e.iter_centrals() {
            val.centrals.push(JsonCentralTerm {
                id: spec.centrals[i].id.clone(),
                coeff: rat_to_string(&c.as_rat().expect("table coefficients are rational")),
            });
        }
        brackets
            .entry(spec.generators[a].id.clone())
            .or_default()
            .entry(spec.generators[b].id.clone())
            .or_default()
            .insert(j.to_string(), val);
    }
    let js = JsonSpec {
        format: LCA_FORMAT.to_string(),
        name: spec.name.clone(),
        generators,
        centrals,
        brackets,
    };
    serde_json::to_string_pretty(&js).expect("lca spec serializes")
}
