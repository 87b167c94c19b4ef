//! JSON forms of bundles, verdicts, limits and catalog data.

use std::collections::BTreeMap;

use higgs_atlas_core::catalog::{Census, ComponentDescriptor, ComponentLabel};
use higgs_atlas_core::deformation::{ExponentTable, LimitResult, TermExponent};
use higgs_atlas_core::higgs::{
    BundleParts, DolbeaultExtra, HiggsEntry, SectionKind, SectionSymbol, Summand, Vanishing,
};
use higgs_atlas_core::stability::{InvariantSubobject, StabilityVerdict};
use higgs_atlas_core::{Error, F2Class, GradedHiggsBundle, Result, SwPair};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA: &str = "higgs-atlas/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummandJson {
    pub side: String,
    pub bundle: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(default = "one")]
    pub rank: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sw2: Option<bool>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub to: usize,
    pub from: usize,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub vanishing: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtraJson {
    pub to: usize,
    pub from: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleJson {
    pub group: String,
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<i64>,
    #[serde(default)]
    pub degrees: BTreeMap<String, i64>,
    #[serde(default)]
    pub torsion_classes: BTreeMap<String, String>,
    pub summands: Vec<SummandJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<usize>>,
    #[serde(default)]
    pub higgs: Vec<EntryJson>,
    #[serde(default)]
    pub dolbeault: Vec<ExtraJson>,
}

impl From<&GradedHiggsBundle> for BundleJson {
    fn from(h: &GradedHiggsBundle) -> Self {
        let p = h.parts();
        BundleJson {
            group: p.group.to_string(),
            genus: p.genus,
            family: p.family.clone(),
            label: p.label,
            degrees: p.degrees.clone(),
            torsion_classes: p
                .torsion_classes
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            summands: p
                .summands
                .iter()
                .enumerate()
                .map(|(i, s)| SummandJson {
                    side: s.side.as_str().into(),
                    bundle: s.bundle.to_string(),
                    degree: Some(h.degree(i)),
                    rank: s.rank,
                    sw2: s.sw2,
                })
                .collect(),
            pairing: p.pairing.clone(),
            higgs: p
                .higgs
                .iter()
                .map(|e| EntryJson {
                    to: e.target,
                    from: e.source,
                    name: e.symbol.name.clone(),
                    kind: Some(e.symbol.kind.as_str().into()),
                    vanishing: e.symbol.vanishing.as_str().into(),
                })
                .collect(),
            dolbeault: p
                .dolbeault
                .iter()
                .map(|e| ExtraJson { to: e.target, from: e.source, name: e.name.clone() })
                .collect(),
        }
    }
}

impl TryFrom<BundleJson> for GradedHiggsBundle {
    type Error = Error;

    fn try_from(j: BundleJson) -> Result<Self> {
        let genus = j.genus;
        let torsion_classes = j
            .torsion_classes
            .iter()
            .map(|(k, v)| {
                let class: F2Class = v.parse()?;
                if class.genus() != genus {
                    return Err(Error::DimensionMismatch { left: genus, right: class.genus() });
                }
                Ok((k.clone(), class))
            })
            .collect::<Result<_>>()?;
        let summands = j
            .summands
            .iter()
            .map(|s| {
                Ok(Summand {
                    side: s.side.parse()?,
                    bundle: s.bundle.parse()?,
                    rank: s.rank,
                    sw2: s.sw2,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let higgs = j
            .higgs
            .iter()
            .map(|e| {
                let vanishing: Vanishing = e.vanishing.parse()?;
                let kind = match &e.kind {
                    Some(k) => k.parse()?,
                    None if vanishing == Vanishing::IdenticallyZero => SectionKind::Zero,
                    None if e.name == "1" => SectionKind::Unit,
                    None => SectionKind::Named,
                };
                Ok(HiggsEntry {
                    target: e.to,
                    source: e.from,
                    symbol: SectionSymbol { name: e.name.clone(), kind, vanishing },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let parts = BundleParts {
            group: j.group.parse()?,
            genus,
            family: j.family.clone(),
            label: j.label,
            degrees: j.degrees.clone(),
            torsion_classes,
            summands,
            pairing: j.pairing.clone(),
            higgs,
            dolbeault: j
                .dolbeault
                .iter()
                .map(|e| DolbeaultExtra { target: e.to, source: e.from, name: e.name.clone() })
                .collect(),
        };
        let h = GradedHiggsBundle::from_parts(parts)?;
        for (i, s) in j.summands.iter().enumerate() {
            if let Some(d) = s.degree {
                if d != h.degree(i) {
                    return Err(Error::InvalidStructure(format!(
                        "summand {i} declares degree {d} but `{}` has degree {}",
                        s.bundle,
                        h.degree(i)
                    )));
                }
            }
        }
        Ok(h)
    }
}

pub fn bundle_to_value(h: &GradedHiggsBundle) -> Value {
    serde_json::to_value(BundleJson::from(h)).expect("bundle serializes")
}

/// Accept a bare bundle or a report envelope whose payload is a bundle
/// (or carries one under `limit`).
pub fn bundle_from_value(v: &Value) -> Result<GradedHiggsBundle> {
    let v = match v.get("payload") {
        Some(p) if p.get("limit").is_some_and(|l| !l.is_null()) => &p["limit"],
        Some(p) => p,
        None => v,
    };
    let j: BundleJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    GradedHiggsBundle::try_from(j)
}

pub fn bundle_from_str(s: &str) -> Result<GradedHiggsBundle> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    bundle_from_value(&v)
}

fn subobject_value(s: &InvariantSubobject) -> Value {
    json!({
        "indices": s.indices,
        "degree": s.degree,
        "closure_witness": s.closure_witness.iter().map(|(t, f)| json!({"to": t, "from": f})).collect::<Vec<_>>(),
    })
}

pub fn verdict_to_value(v: &StabilityVerdict) -> Value {
    let mut out = json!({ "status": v.status.as_str(), "polystable": v.is_polystable() });
    if let Some(w) = &v.witness {
        out["witness"] = subobject_value(w);
    }
    if let Some(f) = &v.factors {
        out["factors"] = json!(f);
    }
    out
}

fn terms_value(terms: &[TermExponent]) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|t| json!({"to": t.target, "from": t.source, "name": t.name, "exponent": t.exponent}))
            .collect(),
    )
}

pub fn exponents_to_value(t: &ExponentTable) -> Value {
    json!({ "higgs": terms_value(&t.higgs), "dolbeault": terms_value(&t.dolbeault) })
}

pub fn limit_to_value(r: &LimitResult) -> Value {
    json!({
        "exists": r.exists,
        "limit": r.limit.as_ref().map(bundle_to_value),
        "exponents": exponents_to_value(&r.exponents),
        "stability": r.stability.as_ref().map(verdict_to_value),
    })
}

pub fn sw_to_value(p: &SwPair) -> Value {
    json!({ "sw1": p.sw1.to_string(), "sw2": u8::from(p.sw2) })
}

fn label_value(l: &ComponentLabel) -> Value {
    match l {
        ComponentLabel::Degree(d) => json!({"kind": "degree", "d": d}),
        ComponentLabel::Sw(p) => json!({"kind": "sw", "sw1": p.sw1.to_string(), "sw2": u8::from(p.sw2)}),
        ComponentLabel::HitchinLift(c) => json!({"kind": "hitchin-lift", "class": c.to_string()}),
        ComponentLabel::Named(s) => json!({"kind": "named", "name": s}),
    }
}

pub fn descriptor_to_value(d: &ComponentDescriptor) -> Value {
    let mut out = json!({
        "group": d.group.to_string(),
        "label": label_value(&d.label),
        "label_text": d.label.to_string(),
        "complex_dimension": d.complex_dimension,
    });
    if let Some(p) = &d.parameterization {
        out["parameterization"] = json!({
            "fiber_rank": p.fiber_rank,
            "base": {"kind": "symmetric-product", "exponent": p.symmetric_power},
            "extra_factor_dim": p.extra_factor_dim,
            "total": p.total(),
        });
    }
    if let Some(m) = d.cover_multiplicity {
        out["cover_multiplicity"] = json!(m);
    }
    if let Some(n) = &d.note {
        out["note"] = json!(n);
    }
    out
}

pub fn census_to_value(c: &Census) -> Value {
    json!({
        "group": c.group.to_string(),
        "genus": c.genus,
        "maximal": c.maximal,
        "total": c.total,
        "complete": c.total.is_some(),
        "enumerated": c.enumerated,
        "listed": c.components.len(),
        "components": c.components.iter().map(descriptor_to_value).collect::<Vec<_>>(),
        "note": c.note,
    })
}

/// Structural form used to compare bundles: family dropped, identically
/// zero entries dropped, entries sorted.
pub fn canonical(v: &Value) -> Value {
    let mut out = v.clone();
    if let Some(obj) = out.as_object_mut() {
        obj.remove("family");
        if let Some(Value::Array(entries)) = obj.get_mut("higgs") {
            entries.retain(|e| e["vanishing"] != "identically-zero");
            for e in entries.iter_mut() {
                if let Some(o) = e.as_object_mut() {
                    o.remove("kind");
                }
            }
            entries.sort_by_key(|e| (e["to"].as_u64(), e["from"].as_u64()));
        }
        if let Some(Value::Array(extras)) = obj.get_mut("dolbeault") {
            extras.sort_by_key(|e| (e["to"].as_u64(), e["from"].as_u64()));
        }
        for key in ["degrees", "torsion_classes", "dolbeault", "higgs"] {
            if obj.get(key).is_none() {
                let empty = if key == "degrees" || key == "torsion_classes" { json!({}) } else { json!([]) };
                obj.insert(key.into(), empty);
            }
        }
        if let Some(Value::Array(summands)) = obj.get_mut("summands") {
            for s in summands.iter_mut() {
                if let Some(o) = s.as_object_mut() {
                    o.entry("rank").or_insert(json!(1));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use higgs_atlas_core::higgs::{build_deform_so35, build_maximal_so2n, Switches, W0Descriptor};
    use higgs_atlas_core::Curve;

    #[test]
    fn roundtrip() {
        let c = Curve::new(2).unwrap();
        let class = F2Class::a(2, 1);
        let objs = [
            build_deform_so35(c, 2, &Switches::all_on()).unwrap(),
            build_maximal_so2n(c, 3, &W0Descriptor::Prym { torsion: "I".into(), class, sw2: true }, &Switches::all_on())
                .unwrap(),
        ];
        for h in objs {
            let v = bundle_to_value(&h);
            let back = bundle_from_str(&v.to_string()).unwrap();
            assert_eq!(back, h);
        }
    }

    #[test]
    fn wrong_declared_degree() {
        let c = Curve::new(2).unwrap();
        let h = build_deform_so35(c, 2, &Switches::all_on()).unwrap();
        let mut v = bundle_to_value(&h);
        v["summands"][0]["degree"] = json!(5);
        assert!(matches!(bundle_from_value(&v), Err(Error::InvalidStructure(_))));
    }
}
