//! JSON model files.
//!
//! ```json
//! {
//!   "atoms": ["p", "q"],
//!   "states": [{"id": "s0", "valuation": {"p": false, "q": false}}],
//!   "actual": "s0",
//!   "belief": {"s0": ["s0"]},
//!   "selection": {"preorder": {"shared": [["s0"]]}},
//!   "bridge": {}
//! }
//! ```
//!
//! `selection` is either `{"table": [{"state", "event", "selected"}]}` or
//! `{"preorder": {"shared": tiers}}` / `{"preorder": {"per_state": {id: tiers}}}`.
//! Events are lists of state ids, written in state order.

use std::collections::BTreeMap;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::model::{ModelParts, PointedModel, Ranking, Selection};
use crate::bits::StateSet;
use crate::error::{Error, Result};
use crate::json;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    atoms: Vec<String>,
    states: Vec<RawState>,
    actual: String,
    belief: IndexMap<String, Vec<String>>,
    selection: RawSelection,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    bridge: IndexMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    id: String,
    valuation: IndexMap<String, bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawSelection {
    Table(Vec<RawEntry>),
    Preorder(RawPreorder),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawPreorder {
    Shared(Vec<Vec<String>>),
    PerState(IndexMap<String, Vec<Vec<String>>>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    state: String,
    event: Vec<String>,
    selected: Vec<String>,
}

struct Ids<'a> {
    ids: &'a [String],
}

impl Ids<'_> {
    fn index(&self, field: &str, id: &str) -> Result<usize> {
        self.ids.iter().position(|x| x == id).ok_or_else(|| Error::format(field, format!("unknown state `{id}`")))
    }

    fn set(&self, field: &str, list: &[String]) -> Result<StateSet> {
        let mut set = StateSet::empty(self.ids.len());
        for (i, id) in list.iter().enumerate() {
            set.insert(self.index(&format!("{field}[{i}]"), id)?);
        }
        Ok(set)
    }

    fn tiers(&self, field: &str, tiers: &[Vec<String>]) -> Result<Ranking> {
        let tiers = tiers
            .iter()
            .enumerate()
            .map(|(r, tier)| {
                tier.iter()
                    .enumerate()
                    .map(|(i, id)| self.index(&format!("{field}[{r}][{i}]"), id))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ranking::from_tiers(self.ids.len(), &tiers).map_err(|e| Error::format(field, e.to_string()))
    }
}

fn from_raw(raw: RawModel) -> Result<PointedModel> {
    let sig = json::signature("atoms", &raw.atoms)?;
    let ids: Vec<String> = raw.states.iter().map(|s| s.id.clone()).collect();
    let mut val = Vec::with_capacity(ids.len());
    for (i, state) in raw.states.iter().enumerate() {
        let field = format!("states[{i}].valuation");
        for name in state.valuation.keys() {
            if sig.index_of(name).is_none() {
                return Err(Error::format(format!("{field}.{name}"), "atom not in `atoms`"));
            }
        }
        let mut v = 0;
        for (a, name) in sig.atoms().iter().enumerate() {
            match state.valuation.get(name) {
                Some(true) => v |= 1 << a,
                Some(false) => {}
                None => return Err(Error::format(format!("{field}.{name}"), "missing")),
            }
        }
        val.push(v);
    }
    for (i, id) in ids.iter().enumerate() {
        if ids[..i].contains(id) {
            return Err(Error::format(format!("states[{i}].id"), format!("duplicate id `{id}`")));
        }
    }
    let lookup = Ids { ids: &ids };
    let actual = lookup.index("actual", &raw.actual)?;

    let mut belief = vec![None; ids.len()];
    for (id, list) in &raw.belief {
        let s = lookup.index(&format!("belief.{id}"), id)?;
        belief[s] = Some(lookup.set(&format!("belief.{id}"), list)?);
    }
    let belief = belief
        .into_iter()
        .enumerate()
        .map(|(s, b)| b.ok_or_else(|| Error::format(format!("belief.{}", ids[s]), "missing")))
        .collect::<Result<Vec<_>>>()?;

    let selection = match &raw.selection {
        RawSelection::Table(entries) => {
            let mut table = BTreeMap::new();
            for (i, entry) in entries.iter().enumerate() {
                let field = format!("selection.table[{i}]");
                let s = lookup.index(&format!("{field}.state"), &entry.state)?;
                let e = lookup.set(&format!("{field}.event"), &entry.event)?;
                if e.is_empty() {
                    return Err(Error::format(format!("{field}.event"), "events must be nonempty"));
                }
                let sel = lookup.set(&format!("{field}.selected"), &entry.selected)?;
                if table.insert((s, e), sel).is_some() {
                    return Err(Error::format(field, "duplicate entry"));
                }
            }
            Selection::Table(table)
        }
        RawSelection::Preorder(RawPreorder::Shared(tiers)) => {
            Selection::Shared(lookup.tiers("selection.preorder.shared", tiers)?)
        }
        RawSelection::Preorder(RawPreorder::PerState(map)) => {
            let mut orders = BTreeMap::new();
            for (id, tiers) in map {
                let field = format!("selection.preorder.per_state.{id}");
                let s = lookup.index(&field, id)?;
                orders.insert(s, lookup.tiers(&field, tiers)?);
            }
            Selection::PerState(orders)
        }
    };

    let mut bridge = BTreeMap::new();
    for (from, to) in &raw.bridge {
        let field = format!("bridge.{from}");
        bridge.insert(lookup.index(&field, from)?, lookup.index(&field, to)?);
    }

    PointedModel::new(ModelParts { sig, ids, val, actual, belief, selection, bridge }).map_err(|e| match e {
        Error::Model(msg) => Error::format("model", msg),
        other => other,
    })
}

fn to_raw(m: &PointedModel) -> RawModel {
    let sig = m.signature();
    let names = |set: &StateSet| -> Vec<String> { set.iter().map(|s| m.id(s).to_string()).collect() };
    let tiers = |r: &Ranking| -> Vec<Vec<String>> {
        r.tiers().iter().map(|t| t.iter().map(|&s| m.id(s).to_string()).collect()).collect()
    };
    let states = (0..m.state_count())
        .map(|s| RawState {
            id: m.id(s).to_string(),
            valuation: sig
                .atoms()
                .iter()
                .enumerate()
                .map(|(a, name)| (name.clone(), (m.valuation(s) >> a) & 1 == 1))
                .collect(),
        })
        .collect();
    let selection = match m.selection() {
        Selection::Table(entries) => RawSelection::Table(
            entries
                .iter()
                .map(|((s, e), sel)| RawEntry { state: m.id(*s).to_string(), event: names(e), selected: names(sel) })
                .collect(),
        ),
        Selection::Shared(r) => RawSelection::Preorder(RawPreorder::Shared(tiers(r))),
        Selection::PerState(map) => RawSelection::Preorder(RawPreorder::PerState(
            map.iter().map(|(s, r)| (m.id(*s).to_string(), tiers(r))).collect(),
        )),
    };
    RawModel {
        atoms: sig.atoms().to_vec(),
        states,
        actual: m.id(m.actual()).to_string(),
        belief: (0..m.state_count()).map(|s| (m.id(s).to_string(), names(m.belief(s)))).collect(),
        selection,
        bridge: m.bridge().iter().map(|(a, b)| (m.id(*a).to_string(), m.id(*b).to_string())).collect(),
    }
}

pub fn model_from_json(text: &str) -> Result<PointedModel> {
    from_raw(json::parse(text)?)
}

pub fn model_to_json(m: &PointedModel) -> String {
    json::pretty(&to_raw(m))
}

pub fn load_model(path: &Path) -> Result<PointedModel> {
    from_raw(json::read(path)?)
}

pub fn save_model(m: &PointedModel, path: &Path) -> Result<()> {
    json::write(path, &model_to_json(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PQ: &str = r#"{
      "atoms": ["p", "q"],
      "states": [
        {"id": "s0", "valuation": {"p": false, "q": false}},
        {"id": "s1", "valuation": {"p": true, "q": false}},
        {"id": "s2", "valuation": {"p": false, "q": true}},
        {"id": "s3", "valuation": {"p": true, "q": true}}
      ],
      "actual": "s3",
      "belief": {"s0": ["s3"], "s1": ["s3"], "s2": ["s3"], "s3": ["s3"]},
      "selection": {"preorder": {"shared": [["s3"], ["s2"], ["s1"], ["s0"]]}}
    }"#;

    #[test]
    fn reads_and_round_trips() {
        let m = model_from_json(PQ).unwrap();
        assert_eq!(m.valuations(), &[0, 1, 2, 3]);
        assert_eq!(m.actual(), 3);
        let again = model_from_json(&model_to_json(&m)).unwrap();
        assert_eq!(again, m);
        let explicit = m.to_explicit().unwrap();
        assert_eq!(model_from_json(&model_to_json(&explicit)).unwrap(), explicit);
    }

    #[test]
    fn errors_name_the_field() {
        let missing = PQ.replace(r#""s2": ["s3"], "#, "");
        let err = model_from_json(&missing).unwrap_err().to_string();
        assert!(err.starts_with("belief.s2"), "{err}");

        let bad_atom = PQ.replacen(r#""q": false}}"#, r#""r": false}}"#, 1);
        let err = model_from_json(&bad_atom).unwrap_err().to_string();
        assert!(err.starts_with("states[0].valuation.r"), "{err}");

        let unknown = PQ.replace(r#"["s3"], ["s2"]"#, r#"["s9"], ["s2"]"#);
        let err = model_from_json(&unknown).unwrap_err().to_string();
        assert!(err.starts_with("selection.preorder.shared[0][0]"), "{err}");
    }
}
