//! JSON file schemas for every value the CLI exchanges: groups, G-sets,
//! homomorphisms, categorified instances, functors, natural
//! transformations, witnesses, rig and ring elements, groupoids and their
//! categorified sets.
//!
//! Every file carries a `kind` field used for validator dispatch. Nested
//! values may be given inline or as a string holding a path, resolved
//! relative to the referencing file's directory.

use crate::burnside::{RigElement, RingElement};
use crate::catgset::{CatGSet, InternalFunctor, InternalNatTrans};
use crate::engine::{CanonicalClass, WeakEquivWitness};
use crate::group::{FiniteGroup, GroupHom};
use crate::groupoid::{
    CatGroupoidSet, FiniteGroupoid, GroupoidFunctor, GroupoidNatTrans, GroupoidSet, GroupoidWitness,
};
use crate::gset::FinGSet;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation failed: {0}")]
    Validation(String),
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Validation(e.to_string())
}

/// Any value loadable from a file.
#[derive(Debug, Clone)]
pub enum Loaded {
    Group(Arc<FiniteGroup>),
    GSet(FinGSet),
    Hom(GroupHom),
    CatGSet(Arc<CatGSet>),
    Functor(InternalFunctor),
    Nat(InternalNatTrans),
    Witness(WeakEquivWitness),
    Rig(RigElement),
    Ring(RingElement),
    Groupoid(Arc<FiniteGroupoid>),
    GroupoidSet(GroupoidSet),
    CatGroupoidSet(Arc<CatGroupoidSet>),
    GroupoidWitness(GroupoidWitness),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Group(_) => "group",
            Loaded::GSet(_) => "gset",
            Loaded::Hom(_) => "hom",
            Loaded::CatGSet(_) => "catgset",
            Loaded::Functor(_) => "functor",
            Loaded::Nat(_) => "nat",
            Loaded::Witness(_) => "witness",
            Loaded::Rig(_) => "rig",
            Loaded::Ring(_) => "ring",
            Loaded::Groupoid(_) => "groupoid",
            Loaded::GroupoidSet(_) => "groupoid-set",
            Loaded::CatGroupoidSet(_) => "cat-groupoid-set",
            Loaded::GroupoidWitness(_) => "groupoid-witness",
        }
    }
}

pub fn load_path(path: &Path) -> Result<Loaded, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    load_value(&value, &base)
}

/// Loads a value, resolving string entries as paths relative to `base`.
pub fn load_value(value: &Value, base: &Path) -> Result<Loaded, IoError> {
    if let Some(rel) = value.as_str() {
        return load_path(&base.join(rel));
    }
    let obj = value
        .as_object()
        .ok_or_else(|| schema("expected an object or a path string"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("missing `kind` field"))?;
    match kind {
        "group" => Ok(Loaded::Group(parse_group(obj)?)),
        "gset" => Ok(Loaded::GSet(parse_gset(obj, base)?)),
        "hom" => Ok(Loaded::Hom(parse_hom(obj, base)?)),
        "catgset" => Ok(Loaded::CatGSet(parse_catgset(obj, base)?)),
        "functor" => Ok(Loaded::Functor(parse_functor(obj, base)?)),
        "nat" => Ok(Loaded::Nat(parse_nat(obj, base)?)),
        "witness" => Ok(Loaded::Witness(parse_witness(obj, base)?)),
        "rig" => Ok(Loaded::Rig(parse_rig(obj, base)?)),
        "ring" => Ok(Loaded::Ring(parse_ring(obj, base)?)),
        "groupoid" => Ok(Loaded::Groupoid(parse_groupoid(obj)?)),
        "groupoid-set" => Ok(Loaded::GroupoidSet(parse_groupoid_set(obj, base)?)),
        "cat-groupoid-set" => Ok(Loaded::CatGroupoidSet(parse_cat_groupoid_set(obj, base)?)),
        "groupoid-witness" => Ok(Loaded::GroupoidWitness(parse_groupoid_witness(obj, base)?)),
        other => Err(schema(format!("unknown schema kind `{other}`"))),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, IoError> {
    obj.get(name)
        .ok_or_else(|| schema(format!("missing field `{name}`")))
}

fn usize_field(obj: &Map<String, Value>, name: &str) -> Result<usize, IoError> {
    field(obj, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| schema(format!("field `{name}` must be a nonnegative integer")))
}

fn usize_vec(value: &Value, name: &str) -> Result<Vec<usize>, IoError> {
    value
        .as_array()
        .ok_or_else(|| schema(format!("field `{name}` must be an array")))?
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| schema(format!("field `{name}` holds a non-integer")))
        })
        .collect()
}

fn usize_table(value: &Value, name: &str) -> Result<Vec<Vec<usize>>, IoError> {
    value
        .as_array()
        .ok_or_else(|| schema(format!("field `{name}` must be an array of arrays")))?
        .iter()
        .map(|row| usize_vec(row, name))
        .collect()
}

fn triples(value: &Value, name: &str) -> Result<BTreeMap<(usize, usize), usize>, IoError> {
    let mut map = BTreeMap::new();
    for row in value
        .as_array()
        .ok_or_else(|| schema(format!("field `{name}` must be an array of triples")))?
    {
        let t = usize_vec(row, name)?;
        if t.len() != 3 {
            return Err(schema(format!("field `{name}` holds a non-triple entry")));
        }
        map.insert((t[0], t[1]), t[2]);
    }
    Ok(map)
}

fn parse_group(obj: &Map<String, Value>) -> Result<Arc<FiniteGroup>, IoError> {
    let order = usize_field(obj, "order")?;
    let mul = usize_table(field(obj, "mul")?, "mul")?;
    if mul.len() != order {
        return Err(schema("`mul` size disagrees with `order`"));
    }
    FiniteGroup::from_table(mul).map_err(invalid)
}

fn load_group(value: &Value, base: &Path) -> Result<Arc<FiniteGroup>, IoError> {
    match load_value(value, base)? {
        Loaded::Group(g) => Ok(g),
        other => Err(schema(format!("expected a group, found {}", other.kind()))),
    }
}

fn parse_gset(obj: &Map<String, Value>, base: &Path) -> Result<FinGSet, IoError> {
    let group = load_group(field(obj, "group")?, base)?;
    let size = usize_field(obj, "size")?;
    let act = usize_table(field(obj, "act")?, "act")?;
    FinGSet::new(group, size, act).map_err(invalid)
}

/// A gset nested inside a catgset may omit the group, inheriting the outer
/// one.
fn parse_carrier(value: &Value, base: &Path, group: &Arc<FiniteGroup>) -> Result<FinGSet, IoError> {
    if let Some(rel) = value.as_str() {
        return match load_path(&base.join(rel))? {
            Loaded::GSet(x) => Ok(x),
            other => Err(schema(format!("expected a gset, found {}", other.kind()))),
        };
    }
    let obj = value
        .as_object()
        .ok_or_else(|| schema("carrier must be an object or path"))?;
    let g = match obj.get("group") {
        Some(v) => load_group(v, base)?,
        None => Arc::clone(group),
    };
    if g != *group {
        return Err(schema("carrier group differs from the instance group"));
    }
    let size = usize_field(obj, "size")?;
    let act = usize_table(field(obj, "act")?, "act")?;
    FinGSet::new(g, size, act).map_err(invalid)
}

fn parse_hom(obj: &Map<String, Value>, base: &Path) -> Result<GroupHom, IoError> {
    let source = load_group(field(obj, "source")?, base)?;
    let target = load_group(field(obj, "target")?, base)?;
    let map = usize_vec(field(obj, "map")?, "map")?;
    GroupHom::new(source, target, map).map_err(invalid)
}

fn parse_catgset(obj: &Map<String, Value>, base: &Path) -> Result<Arc<CatGSet>, IoError> {
    let group = load_group(field(obj, "group")?, base)?;
    let objects = parse_carrier(field(obj, "objects")?, base, &group)?;
    let arrows = parse_carrier(field(obj, "arrows")?, base, &group)?;
    let src = usize_vec(field(obj, "src")?, "src")?;
    let tgt = usize_vec(field(obj, "tgt")?, "tgt")?;
    let ident = usize_vec(field(obj, "ident")?, "ident")?;
    let comp = triples(field(obj, "comp")?, "comp")?;
    CatGSet::new(objects, arrows, src, tgt, ident, comp).map_err(invalid)
}

fn load_catgset(value: &Value, base: &Path) -> Result<Arc<CatGSet>, IoError> {
    match load_value(value, base)? {
        Loaded::CatGSet(x) => Ok(x),
        other => Err(schema(format!(
            "expected a catgset, found {}",
            other.kind()
        ))),
    }
}

fn parse_functor(obj: &Map<String, Value>, base: &Path) -> Result<InternalFunctor, IoError> {
    let dom = load_catgset(field(obj, "dom")?, base)?;
    let cod = load_catgset(field(obj, "cod")?, base)?;
    let f0 = usize_vec(field(obj, "f0")?, "f0")?;
    let f1 = usize_vec(field(obj, "f1")?, "f1")?;
    InternalFunctor::new(dom, cod, f0, f1).map_err(invalid)
}

fn load_functor(value: &Value, base: &Path) -> Result<InternalFunctor, IoError> {
    match load_value(value, base)? {
        Loaded::Functor(f) => Ok(f),
        other => Err(schema(format!(
            "expected a functor, found {}",
            other.kind()
        ))),
    }
}

fn parse_nat(obj: &Map<String, Value>, base: &Path) -> Result<InternalNatTrans, IoError> {
    let from = load_functor(field(obj, "from")?, base)?;
    let to = load_functor(field(obj, "to")?, base)?;
    let at = usize_vec(field(obj, "at")?, "at")?;
    InternalNatTrans::new(from, to, at).map_err(invalid)
}

fn load_nat(value: &Value, base: &Path) -> Result<InternalNatTrans, IoError> {
    match load_value(value, base)? {
        Loaded::Nat(n) => Ok(n),
        other => Err(schema(format!("expected a nat, found {}", other.kind()))),
    }
}

fn parse_witness(obj: &Map<String, Value>, base: &Path) -> Result<WeakEquivWitness, IoError> {
    Ok(WeakEquivWitness {
        forward: load_functor(field(obj, "forward")?, base)?,
        backward: load_functor(field(obj, "backward")?, base)?,
        alpha: load_nat(field(obj, "alpha")?, base)?,
        beta: load_nat(field(obj, "beta")?, base)?,
    })
}

fn parse_rig(obj: &Map<String, Value>, base: &Path) -> Result<RigElement, IoError> {
    let group = load_group(field(obj, "group")?, base)?;
    let mut classes = BTreeMap::new();
    for entry in field(obj, "classes")?
        .as_array()
        .ok_or_else(|| schema("`classes` must be an array"))?
    {
        let entry = entry
            .as_object()
            .ok_or_else(|| schema("class entries must be objects"))?;
        let key = field(entry, "key")?
            .as_str()
            .ok_or_else(|| schema("class `key` must be a string"))?;
        let mult = usize_field(entry, "multiplicity")?;
        // keys must decode to valid instances over the group
        crate::engine::decode(key, &group).map_err(invalid)?;
        *classes.entry(CanonicalClass(key.to_string())).or_insert(0) += mult;
    }
    Ok(RigElement::from_classes(&group, classes))
}

fn load_rig(value: &Value, base: &Path) -> Result<RigElement, IoError> {
    match load_value(value, base)? {
        Loaded::Rig(u) => Ok(u),
        other => Err(schema(format!(
            "expected a rig element, found {}",
            other.kind()
        ))),
    }
}

fn parse_ring(obj: &Map<String, Value>, base: &Path) -> Result<RingElement, IoError> {
    let pos = load_rig(field(obj, "pos")?, base)?;
    let neg = load_rig(field(obj, "neg")?, base)?;
    RingElement::new(pos, neg).map_err(invalid)
}

fn parse_groupoid(obj: &Map<String, Value>) -> Result<Arc<FiniteGroupoid>, IoError> {
    let n_objects = usize_field(obj, "objects")?;
    let src = usize_vec(field(obj, "src")?, "src")?;
    let tgt = usize_vec(field(obj, "tgt")?, "tgt")?;
    let ident = usize_vec(field(obj, "ident")?, "ident")?;
    let inv = usize_vec(field(obj, "inv")?, "inv")?;
    let comp = triples(field(obj, "comp")?, "comp")?;
    if let Some(declared) = obj.get("arrows").and_then(Value::as_u64) {
        if declared as usize != src.len() {
            return Err(schema("`arrows` disagrees with the table lengths"));
        }
    }
    FiniteGroupoid::new(n_objects, src, tgt, ident, inv, comp).map_err(invalid)
}

fn load_groupoid(value: &Value, base: &Path) -> Result<Arc<FiniteGroupoid>, IoError> {
    match load_value(value, base)? {
        Loaded::Groupoid(g) => Ok(g),
        other => Err(schema(format!(
            "expected a groupoid, found {}",
            other.kind()
        ))),
    }
}

fn parse_groupoid_set(obj: &Map<String, Value>, base: &Path) -> Result<GroupoidSet, IoError> {
    let groupoid = load_groupoid(field(obj, "groupoid")?, base)?;
    let size = usize_field(obj, "size")?;
    let sigma = usize_vec(field(obj, "sigma")?, "sigma")?;
    let act = triples(field(obj, "act")?, "act")?;
    GroupoidSet::new(groupoid, size, sigma, act).map_err(invalid)
}

fn parse_groupoid_carrier(
    value: &Value,
    base: &Path,
    groupoid: &Arc<FiniteGroupoid>,
) -> Result<GroupoidSet, IoError> {
    if let Some(rel) = value.as_str() {
        return match load_path(&base.join(rel))? {
            Loaded::GroupoidSet(x) => Ok(x),
            other => Err(schema(format!(
                "expected a groupoid-set, found {}",
                other.kind()
            ))),
        };
    }
    let obj = value
        .as_object()
        .ok_or_else(|| schema("carrier must be an object or path"))?;
    let gd = match obj.get("groupoid") {
        Some(v) => load_groupoid(v, base)?,
        None => Arc::clone(groupoid),
    };
    if gd != *groupoid {
        return Err(schema(
            "carrier groupoid differs from the instance groupoid",
        ));
    }
    let size = usize_field(obj, "size")?;
    let sigma = usize_vec(field(obj, "sigma")?, "sigma")?;
    let act = triples(field(obj, "act")?, "act")?;
    GroupoidSet::new(gd, size, sigma, act).map_err(invalid)
}

fn parse_cat_groupoid_set(
    obj: &Map<String, Value>,
    base: &Path,
) -> Result<Arc<CatGroupoidSet>, IoError> {
    let groupoid = load_groupoid(field(obj, "groupoid")?, base)?;
    let objects = parse_groupoid_carrier(field(obj, "objects")?, base, &groupoid)?;
    let arrows = parse_groupoid_carrier(field(obj, "arrows")?, base, &groupoid)?;
    let src = usize_vec(field(obj, "src")?, "src")?;
    let tgt = usize_vec(field(obj, "tgt")?, "tgt")?;
    let ident = usize_vec(field(obj, "ident")?, "ident")?;
    let comp = triples(field(obj, "comp")?, "comp")?;
    CatGroupoidSet::new(objects, arrows, src, tgt, ident, comp).map_err(invalid)
}

fn load_cat_groupoid_set(value: &Value, base: &Path) -> Result<Arc<CatGroupoidSet>, IoError> {
    match load_value(value, base)? {
        Loaded::CatGroupoidSet(x) => Ok(x),
        other => Err(schema(format!(
            "expected a cat-groupoid-set, found {}",
            other.kind()
        ))),
    }
}

fn parse_groupoid_witness(
    obj: &Map<String, Value>,
    base: &Path,
) -> Result<GroupoidWitness, IoError> {
    let parse_gfunctor = |value: &Value| -> Result<GroupoidFunctor, IoError> {
        let obj = value
            .as_object()
            .ok_or_else(|| schema("functor must be inline in a groupoid witness"))?;
        let dom = load_cat_groupoid_set(field(obj, "dom")?, base)?;
        let cod = load_cat_groupoid_set(field(obj, "cod")?, base)?;
        let f0 = usize_vec(field(obj, "f0")?, "f0")?;
        let f1 = usize_vec(field(obj, "f1")?, "f1")?;
        GroupoidFunctor::new(dom, cod, f0, f1).map_err(invalid)
    };
    let parse_gnat = |value: &Value| -> Result<GroupoidNatTrans, IoError> {
        let obj = value
            .as_object()
            .ok_or_else(|| schema("nat must be inline in a groupoid witness"))?;
        let from = parse_gfunctor(field(obj, "from")?)?;
        let to = parse_gfunctor(field(obj, "to")?)?;
        let at = usize_vec(field(obj, "at")?, "at")?;
        GroupoidNatTrans::new(from, to, at).map_err(invalid)
    };
    Ok(GroupoidWitness {
        forward: parse_gfunctor(field(obj, "forward")?)?,
        backward: parse_gfunctor(field(obj, "backward")?)?,
        alpha: parse_gnat(field(obj, "alpha")?)?,
        beta: parse_gnat(field(obj, "beta")?)?,
    })
}

pub fn group_json(g: &FiniteGroup) -> Value {
    json!({
        "kind": "group",
        "order": g.order(),
        "mul": g.mul_table(),
    })
}

pub fn gset_json(x: &FinGSet) -> Value {
    json!({
        "kind": "gset",
        "group": group_json(x.group()),
        "size": x.size(),
        "act": x.act_table(),
    })
}

pub fn hom_json(h: &GroupHom) -> Value {
    json!({
        "kind": "hom",
        "source": group_json(h.source()),
        "target": group_json(h.target()),
        "map": h.map_table(),
    })
}

fn comp_json(comp: &BTreeMap<(usize, usize), usize>) -> Value {
    Value::Array(comp.iter().map(|(&(p, q), &r)| json!([p, q, r])).collect())
}

pub fn catgset_json(x: &CatGSet) -> Value {
    json!({
        "kind": "catgset",
        "group": group_json(x.group()),
        "objects": {"size": x.n_objects(), "act": x.objects().act_table()},
        "arrows": {"size": x.n_arrows(), "act": x.arrows().act_table()},
        "src": x.src_table(),
        "tgt": x.tgt_table(),
        "ident": x.ident_table(),
        "comp": comp_json(x.comp_table()),
    })
}

pub fn functor_json(f: &InternalFunctor) -> Value {
    json!({
        "kind": "functor",
        "dom": catgset_json(f.dom()),
        "cod": catgset_json(f.cod()),
        "f0": f.obj_table(),
        "f1": f.arr_table(),
    })
}

pub fn nat_json(n: &InternalNatTrans) -> Value {
    json!({
        "kind": "nat",
        "from": functor_json(n.from_functor()),
        "to": functor_json(n.to_functor()),
        "at": n.components(),
    })
}

pub fn witness_json(w: &WeakEquivWitness) -> Value {
    json!({
        "kind": "witness",
        "forward": functor_json(&w.forward),
        "backward": functor_json(&w.backward),
        "alpha": nat_json(&w.alpha),
        "beta": nat_json(&w.beta),
    })
}

pub fn rig_json(u: &RigElement) -> Value {
    json!({
        "kind": "rig",
        "group": group_json(u.group()),
        "classes": u.classes().iter().map(|(k, m)| json!({
            "key": k.0,
            "multiplicity": m,
        })).collect::<Vec<_>>(),
    })
}

pub fn ring_json(r: &RingElement) -> Value {
    json!({
        "kind": "ring",
        "pos": rig_json(&r.pos),
        "neg": rig_json(&r.neg),
    })
}

pub fn groupoid_json(g: &FiniteGroupoid) -> Value {
    json!({
        "kind": "groupoid",
        "objects": g.n_objects(),
        "arrows": g.n_arrows(),
        "src": g.src_table(),
        "tgt": g.tgt_table(),
        "ident": g.ident_table(),
        "inv": g.inv_table(),
        "comp": comp_json(g.comp_table()),
    })
}

fn act_triples_json(act: &BTreeMap<(usize, usize), usize>) -> Value {
    Value::Array(act.iter().map(|(&(x, g), &y)| json!([x, g, y])).collect())
}

pub fn groupoid_set_json(x: &GroupoidSet) -> Value {
    json!({
        "kind": "groupoid-set",
        "groupoid": groupoid_json(x.groupoid()),
        "size": x.size(),
        "sigma": x.sigma_table(),
        "act": act_triples_json(x.act_table()),
    })
}

pub fn cat_groupoid_set_json(x: &CatGroupoidSet) -> Value {
    json!({
        "kind": "cat-groupoid-set",
        "groupoid": groupoid_json(x.groupoid()),
        "objects": {
            "size": x.n_objects(),
            "sigma": x.objects().sigma_table(),
            "act": act_triples_json(x.objects().act_table()),
        },
        "arrows": {
            "size": x.n_arrows(),
            "sigma": x.arrows().sigma_table(),
            "act": act_triples_json(x.arrows().act_table()),
        },
        "src": x.src_table(),
        "tgt": x.tgt_table(),
        "ident": x.ident_table(),
        "comp": comp_json(x.comp_table()),
    })
}

pub fn groupoid_functor_json(f: &GroupoidFunctor) -> Value {
    json!({
        "dom": cat_groupoid_set_json(f.dom()),
        "cod": cat_groupoid_set_json(f.cod()),
        "f0": f.obj_table(),
        "f1": f.arr_table(),
    })
}

pub fn groupoid_nat_json(n: &GroupoidNatTrans) -> Value {
    json!({
        "from": groupoid_functor_json(n.from_functor()),
        "to": groupoid_functor_json(n.to_functor()),
        "at": n.components(),
    })
}

pub fn groupoid_witness_json(w: &GroupoidWitness) -> Value {
    json!({
        "kind": "groupoid-witness",
        "forward": groupoid_functor_json(&w.forward),
        "backward": groupoid_functor_json(&w.backward),
        "alpha": groupoid_nat_json(&w.alpha),
        "beta": groupoid_nat_json(&w.beta),
    })
}

/// Export of a double category for external diagram tooling.
pub fn double_json(d: &crate::double::DoubleCategory) -> Value {
    json!({
        "kind": "double",
        "objects": d.n_objects(),
        "h": {
            "count": d.n_horizontal(),
            "src": d.objects_cat.src_table(),
            "tgt": d.objects_cat.tgt_table(),
            "ident": d.objects_cat.ident_table(),
            "comp": comp_json(d.objects_cat.comp_table()),
        },
        "v": d.n_vertical(),
        "squares": {
            "count": d.n_squares(),
            "src": d.morphisms_cat.src_table(),
            "tgt": d.morphisms_cat.tgt_table(),
            "ident": d.morphisms_cat.ident_table(),
            "comp": comp_json(d.morphisms_cat.comp_table()),
        },
        "T": {"on_objects": d.target.on_objects, "on_arrows": d.target.on_arrows},
        "S": {"on_objects": d.source.on_objects, "on_arrows": d.source.on_arrows},
        "I": {"on_objects": d.identity.on_objects, "on_arrows": d.identity.on_arrows},
        "M": {
            "on_objects": comp_json(&d.compose_vertical),
            "on_arrows": comp_json(&d.compose_squares),
        },
    })
}
