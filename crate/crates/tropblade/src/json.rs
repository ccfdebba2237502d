//! Serde adapters between core types and their JSON shapes, plus the DOT
//! export of plabic structures.
//!
//! Subsets appear as bracketed ascending label lists; map keys are
//! comma-joined labels ("1,3,5"); weights are rational strings so that no
//! precision is lost in transit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{BladeArrangement, LVector, ZOutcome, ZWitness};
use crate::cone::{ConeReport, ConeVerdict};
use crate::cyclic::{labels_mask, mask_labels, CyclicGround, Label};
use crate::plabic::PlabicStructure;
use crate::tropical::{OctahedronVerdict, PluckerVector};
use crate::wsep::{Flip, WCollection};
use crate::{rat_from_str, rat_to_string, Error, Rat};

fn labels(mask: u64) -> Vec<Label> {
    mask_labels(mask)
}

fn key_of(mask: u64) -> String {
    mask_labels(mask)
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_key(key: &str) -> Result<u64, Error> {
    let mut mask = 0u64;
    for part in key.split(',') {
        let x: Label = part
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("malformed subset key `{key}`")))?;
        if x < 1 || x > 64 {
            return Err(Error::InvalidInput(format!("label {x} outside 1..=64")));
        }
        let b = 1u64 << (x - 1);
        if mask & b != 0 {
            return Err(Error::InvalidInput(format!("repeated label in `{key}`")));
        }
        mask |= b;
    }
    if mask == 0 {
        return Err(Error::InvalidInput("empty subset key".into()));
    }
    Ok(mask)
}

fn set_to_mask(set: &[Label]) -> Result<u64, Error> {
    let mask = labels_mask(set);
    if mask.count_ones() as usize != set.len() {
        return Err(Error::InvalidInput(format!("repeated labels in {set:?}")));
    }
    Ok(mask)
}

/// A weakly separated collection.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollectionDto {
    pub n: Label,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<Label>,
    pub k: u32,
    pub sets: Vec<Vec<Label>>,
}

impl CollectionDto {
    pub fn from_collection(w: &WCollection) -> Self {
        CollectionDto {
            n: w.ground().n(),
            removed: w.ground().removed_labels(),
            k: w.k(),
            sets: w.members().iter().map(|&m| labels(m)).collect(),
        }
    }

    pub fn to_collection(&self) -> Result<WCollection, Error> {
        let ground = CyclicGround::new(self.n, &self.removed)?;
        let masks: Vec<u64> = self
            .sets
            .iter()
            .map(|s| set_to_mask(s))
            .collect::<Result<_, _>>()?;
        WCollection::new(ground, self.k, &masks)
    }
}

/// A weighted vector over k-subsets, in either basis; `basis` is "beta"
/// for blade arrangements and "L" for planar coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightsDto {
    pub n: Label,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<Label>,
    pub k: u32,
    pub basis: String,
    pub entries: BTreeMap<String, String>,
}

impl WeightsDto {
    fn build(
        ground: CyclicGround,
        k: u32,
        basis: &str,
        entries: impl Iterator<Item = (u64, Rat)>,
    ) -> Self {
        WeightsDto {
            n: ground.n(),
            removed: ground.removed_labels(),
            k,
            basis: basis.to_string(),
            entries: entries
                .map(|(m, v)| (key_of(m), rat_to_string(&v)))
                .collect(),
        }
    }

    fn parse_entries(&self) -> Result<Vec<(u64, Rat)>, Error> {
        self.entries
            .iter()
            .map(|(key, value)| Ok((parse_key(key)?, rat_from_str(value)?)))
            .collect()
    }

    fn ground(&self) -> Result<CyclicGround, Error> {
        CyclicGround::new(self.n, &self.removed)
    }

    fn expect_basis(&self, basis: &str) -> Result<(), Error> {
        if self.basis != basis {
            return Err(Error::InvalidInput(format!(
                "expected weights in basis `{basis}`, found `{}`",
                self.basis
            )));
        }
        Ok(())
    }

    pub fn from_arrangement(arr: &BladeArrangement) -> Self {
        Self::build(
            arr.ground(),
            arr.k(),
            "beta",
            arr.iter().map(|(m, v)| (m, v.clone())),
        )
    }

    pub fn to_arrangement(&self) -> Result<BladeArrangement, Error> {
        self.expect_basis("beta")?;
        BladeArrangement::from_pairs(self.ground()?, self.k, &self.parse_entries()?)
    }

    pub fn from_l_vector(c: &LVector) -> Self {
        Self::build(
            c.ground(),
            c.k(),
            "L",
            c.iter().map(|(m, v)| (m, v.clone())),
        )
    }

    pub fn to_l_vector(&self) -> Result<LVector, Error> {
        self.expect_basis("L")?;
        LVector::from_pairs(self.ground()?, self.k, &self.parse_entries()?)
    }
}

/// A total tropical Plücker vector; absent subsets read as zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PluckerDto {
    pub n: Label,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<Label>,
    pub k: u32,
    pub entries: BTreeMap<String, String>,
}

impl PluckerDto {
    pub fn from_plucker(p: &PluckerVector) -> Self {
        PluckerDto {
            n: p.ground().n(),
            removed: p.ground().removed_labels(),
            k: p.k(),
            entries: p
                .subsets()
                .iter()
                .map(|&m| Ok((key_of(m), rat_to_string(&p.get(m)?))))
                .collect::<Result<_, Error>>()
                .expect("subset list is valid"),
        }
    }

    pub fn to_plucker(&self) -> Result<PluckerVector, Error> {
        let ground = CyclicGround::new(self.n, &self.removed)?;
        let mut p = PluckerVector::new(ground, self.k)?;
        for (key, value) in &self.entries {
            p.set(parse_key(key)?, rat_from_str(value)?)?;
        }
        Ok(p)
    }
}

/// A collection together with prescribed weights on some of its members,
/// the input shape of seed extension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeedDto {
    pub n: Label,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<Label>,
    pub k: u32,
    pub sets: Vec<Vec<Label>>,
    pub entries: BTreeMap<String, String>,
}

impl SeedDto {
    pub fn to_parts(&self) -> Result<(WCollection, Vec<(u64, Rat)>), Error> {
        let collection = CollectionDto {
            n: self.n,
            removed: self.removed.clone(),
            k: self.k,
            sets: self.sets.clone(),
        }
        .to_collection()?;
        let seed = self
            .entries
            .iter()
            .map(|(key, value)| Ok((parse_key(key)?, rat_from_str(value)?)))
            .collect::<Result<_, Error>>()?;
        Ok((collection, seed))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipDto {
    pub level: Vec<Label>,
    pub quad: [Label; 4],
    pub removed: Vec<Label>,
    pub added: Vec<Label>,
}

impl FlipDto {
    pub fn from_flip(f: &Flip) -> Self {
        FlipDto {
            level: labels(f.level),
            quad: f.quad,
            removed: labels(f.removed),
            added: labels(f.added),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZOutcomeDto {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ZWitnessDto>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZWitnessDto {
    pub kind: String,
    pub level: Vec<Label>,
    pub pairs: Vec<Vec<Label>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl ZOutcomeDto {
    pub fn from_outcome(out: &ZOutcome) -> Self {
        let witness = out.witness.as_ref().map(|w| match w {
            ZWitness::NegativeCoefficient { level, pair, value } => ZWitnessDto {
                kind: "negative-coefficient".into(),
                level: labels(*level),
                pairs: vec![labels(*pair)],
                value: Some(rat_to_string(value)),
            },
            ZWitness::IncompatibleSupport {
                level,
                pair_a,
                pair_b,
            } => ZWitnessDto {
                kind: "incompatible-support".into(),
                level: labels(*level),
                pairs: vec![labels(*pair_a), labels(*pair_b)],
                value: None,
            },
        });
        ZOutcomeDto {
            member: out.member,
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OctahedronDto {
    pub level: Vec<Label>,
    pub quad: [Label; 4],
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apexes: Option<Vec<Vec<Label>>>,
}

impl OctahedronDto {
    pub fn new(level: u64, quad: [Label; 4], verdict: &OctahedronVerdict) -> Self {
        let (name, apexes) = match verdict {
            OctahedronVerdict::Unsplit => ("unsplit", None),
            OctahedronVerdict::Split { apexes } => (
                "split",
                Some(vec![labels(apexes.0), labels(apexes.1)]),
            ),
            OctahedronVerdict::NotPositive => ("not-positive", None),
        };
        OctahedronDto {
            level: labels(level),
            quad,
            verdict: name.to_string(),
            apexes,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementReportDto {
    pub member: Vec<Label>,
    pub essential: bool,
    pub witnesses: Vec<WitnessDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub covered_by: Vec<Vec<Label>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessDto {
    pub level: Vec<Label>,
    pub pair: Vec<Label>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReportDto {
    pub members: Vec<Vec<Label>>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inessential: Vec<Vec<Label>>,
    pub elements: Vec<ElementReportDto>,
}

impl ConeReportDto {
    pub fn from_report(report: &ConeReport) -> Self {
        let (verdict, inessential) = match &report.verdict {
            ConeVerdict::MaximalSimplicial => ("maximal-simplicial".to_string(), Vec::new()),
            ConeVerdict::NotMinimal { inessential } => (
                "not-minimal".to_string(),
                inessential.iter().map(|&m| labels(m)).collect(),
            ),
        };
        ConeReportDto {
            members: report.members.iter().map(|&m| labels(m)).collect(),
            verdict,
            inessential,
            elements: report
                .elements
                .iter()
                .map(|e| ElementReportDto {
                    member: labels(e.member),
                    essential: e.is_essential(),
                    witnesses: e
                        .witnesses
                        .iter()
                        .map(|w| WitnessDto {
                            level: labels(w.level),
                            pair: labels(w.pair),
                        })
                        .collect(),
                    covered_by: e.covered_by.iter().map(|&m| labels(m)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlabicDto {
    pub n: Label,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<Label>,
    pub k: u32,
    pub faces: Vec<Vec<Label>>,
    pub blacks: Vec<Vec<Label>>,
    pub whites: Vec<Vec<Label>>,
    pub edges: Vec<(Vec<Label>, Vec<Label>)>,
    pub boundary_marks: Vec<Label>,
}

impl PlabicDto {
    pub fn from_structure(p: &PlabicStructure) -> Self {
        PlabicDto {
            n: p.ground().n(),
            removed: p.ground().removed_labels(),
            k: p.k(),
            faces: p.faces().iter().map(|&m| labels(m)).collect(),
            blacks: p.blacks().iter().map(|&m| labels(m)).collect(),
            whites: p.whites().iter().map(|&m| labels(m)).collect(),
            edges: p
                .edges()
                .iter()
                .map(|&(b, w)| (labels(b), labels(w)))
                .collect(),
            boundary_marks: p.boundary_marks().to_vec(),
        }
    }

    pub fn to_structure(&self) -> Result<PlabicStructure, Error> {
        let ground = CyclicGround::new(self.n, &self.removed)?;
        let masks = |sets: &[Vec<Label>]| -> Result<Vec<u64>, Error> {
            sets.iter().map(|s| set_to_mask(s)).collect()
        };
        let whites: Vec<u64> = self
            .whites
            .iter()
            .map(|s| if s.is_empty() { Ok(0) } else { set_to_mask(s) })
            .collect::<Result<_, _>>()?;
        let edges: Vec<(u64, u64)> = self
            .edges
            .iter()
            .map(|(b, w)| {
                Ok((
                    set_to_mask(b)?,
                    if w.is_empty() { 0 } else { set_to_mask(w)? },
                ))
            })
            .collect::<Result<_, Error>>()?;
        Ok(PlabicStructure::from_parts(
            ground,
            self.k,
            &masks(&self.faces)?,
            &masks(&self.blacks)?,
            &whites,
            &edges,
            &self.boundary_marks,
        ))
    }
}

/// Relabeling of a reduced ground onto `1..=m`, preserving order; full
/// grounds map identically.
pub fn renumber_map(ground: CyclicGround) -> BTreeMap<Label, Label> {
    ground
        .elements()
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, i as Label + 1))
        .collect()
}

/// Applies a label map to every label list in a JSON value produced by the
/// DTOs here (arrays of numbers and comma-joined map keys both rewrite).
pub fn renumber_value(value: &mut serde_json::Value, map: &BTreeMap<Label, Label>) {
    match value {
        serde_json::Value::Array(items) => {
            let all_labels = items.iter().all(|v| {
                v.as_u64()
                    .map(|x| map.contains_key(&(x as Label)))
                    .unwrap_or(false)
            });
            if all_labels && !items.is_empty() {
                for item in items.iter_mut() {
                    let old = item.as_u64().unwrap() as Label;
                    *item = serde_json::Value::from(map[&old]);
                }
            } else {
                for item in items {
                    renumber_value(item, map);
                }
            }
        }
        serde_json::Value::Object(obj) => {
            let keys: Vec<String> = obj.keys().cloned().collect();
            for key in keys {
                let mut inner = obj.remove(&key).unwrap();
                renumber_value(&mut inner, map);
                let new_key = match parse_key(&key) {
                    Ok(mask) if mask_labels(mask).iter().all(|x| map.contains_key(x)) => {
                        mask_labels(mask)
                            .iter()
                            .map(|x| map[x].to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    }
                    _ => key,
                };
                obj.insert(new_key, inner);
            }
        }
        _ => {}
    }
}

/// Rewrites a DTO document over a reduced ground onto the contiguous
/// ground `1..=m`: labels and keys via [`renumber_map`], plus the `n` and
/// `removed` header fields.
pub fn renumber_document(value: &mut serde_json::Value, ground: CyclicGround) {
    if ground.is_full() {
        return;
    }
    let map = renumber_map(ground);
    renumber_value(value, &map);
    if let serde_json::Value::Object(obj) = value {
        if obj.contains_key("n") {
            obj.insert("n".into(), serde_json::Value::from(map.len() as u64));
            obj.remove("removed");
        }
    }
}

/// DOT rendering of the bipartite structure: filled black nodes, hollow
/// white nodes, and boxed face nodes attached by dashed incidences.
pub fn plabic_dot(p: &PlabicStructure) -> String {
    let mut out = String::from("graph plabic {\n");
    let name = |prefix: &str, mask: u64| {
        if mask == 0 {
            format!("{prefix}_empty")
        } else {
            format!(
                "{prefix}_{}",
                mask_labels(mask)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join("_")
            )
        }
    };
    let label = |mask: u64| {
        if mask == 0 {
            "{}".to_string()
        } else {
            key_of(mask)
        }
    };
    for &b in p.blacks() {
        out.push_str(&format!(
            "  {} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"{}\"];\n",
            name("b", b),
            label(b)
        ));
    }
    for &w in p.whites() {
        out.push_str(&format!(
            "  {} [shape=circle, label=\"{}\"];\n",
            name("w", w),
            label(w)
        ));
    }
    for &f in p.faces() {
        out.push_str(&format!(
            "  {} [shape=box, label=\"{}\"];\n",
            name("f", f),
            label(f)
        ));
    }
    for &(b, w) in p.edges() {
        out.push_str(&format!("  {} -- {};\n", name("b", b), name("w", w)));
    }
    for &b in p.blacks() {
        for x in p.black_fan(b) {
            let face = b & !labels_mask(&[x]);
            out.push_str(&format!(
                "  {} -- {} [style=dashed];\n",
                name("b", b),
                name("f", face)
            ));
        }
    }
    for &w in p.whites() {
        for x in p.white_fan(w) {
            let face = w | labels_mask(&[x]);
            out.push_str(&format!(
                "  {} -- {} [style=dashed];\n",
                name("w", w),
                name("f", face)
            ));
        }
    }
    out.push_str("}\n");
    out
}
