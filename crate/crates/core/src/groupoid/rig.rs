//! Canonical forms, the Burnside rig and ring over a groupoid, exhaustive
//! instance enumeration, and the component decomposition of the ring.

use super::catset::{CatGroupoidSet, GroupoidEmbedded};
use super::gset::GroupoidSet;
use super::reduce::{groupoid_weak_equivalent, restrict, TransitiveReduction};
use super::{FiniteGroupoid, GroupoidError};
use crate::burnside::classical::{classical_class, coset_gset, iota_rig};
use crate::burnside::enumerate::enumerate_classes;
use crate::burnside::rig_class;
use crate::engine::{enumerate_class_assignments, Budget, CanonicalClass, EngineError, UnionFind};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Encodes a categorified groupoid-set in its current labeling: structure
/// tables, both structure maps and both partial action tables. The groupoid
/// itself is fixed context and never relabeled.
pub fn encode_groupoid_instance(x: &CatGroupoidSet) -> String {
    let mut s = String::new();
    s.push_str(&format!("go{};ga{}", x.n_objects(), x.n_arrows()));
    push_table(&mut s, ";s", x.src_table());
    push_table(&mut s, ";t", x.tgt_table());
    push_table(&mut s, ";i", x.ident_table());
    s.push_str(";m");
    for (&(p, q), &r) in x.comp_table() {
        s.push_str(&format!("{p}.{q}.{r},"));
    }
    push_table(&mut s, ";F", x.objects().sigma_table());
    push_table(&mut s, ";G", x.arrows().sigma_table());
    s.push_str(";A");
    for (&(e, g), &y) in x.objects().act_table() {
        s.push_str(&format!("{e}.{g}.{y},"));
    }
    s.push_str(";B");
    for (&(e, g), &y) in x.arrows().act_table() {
        s.push_str(&format!("{e}.{g}.{y},"));
    }
    s
}

fn push_table(s: &mut String, tag: &str, t: &[usize]) {
    s.push_str(tag);
    for (i, v) in t.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&v.to_string());
    }
}

/// Decodes an encoding produced by `encode_groupoid_instance`.
pub fn decode_groupoid_instance(
    key: &str,
    groupoid: &Arc<FiniteGroupoid>,
) -> Result<Arc<CatGroupoidSet>, EngineError> {
    let bad = |what: &str| EngineError::Decode(format!("bad groupoid encoding: {what}"));
    let mut n0 = None;
    let mut n1 = None;
    let mut src = None;
    let mut tgt = None;
    let mut ident = None;
    let mut comp = None;
    let mut sigma0 = None;
    let mut sigma1 = None;
    let mut act0 = None;
    let mut act1 = None;
    for sec in key.split(';') {
        if let Some(r) = sec.strip_prefix("go") {
            n0 = Some(r.parse::<usize>().map_err(|_| bad("object count"))?);
        } else if let Some(r) = sec.strip_prefix("ga") {
            n1 = Some(r.parse::<usize>().map_err(|_| bad("arrow count"))?);
        } else if let Some(r) = sec.strip_prefix('s') {
            src = Some(parse_table(r).ok_or_else(|| bad("src"))?);
        } else if let Some(r) = sec.strip_prefix('t') {
            tgt = Some(parse_table(r).ok_or_else(|| bad("tgt"))?);
        } else if let Some(r) = sec.strip_prefix('i') {
            ident = Some(parse_table(r).ok_or_else(|| bad("ident"))?);
        } else if let Some(r) = sec.strip_prefix('m') {
            comp = Some(parse_triples(r).ok_or_else(|| bad("comp"))?);
        } else if let Some(r) = sec.strip_prefix('F') {
            sigma0 = Some(parse_table(r).ok_or_else(|| bad("object sigma"))?);
        } else if let Some(r) = sec.strip_prefix('G') {
            sigma1 = Some(parse_table(r).ok_or_else(|| bad("arrow sigma"))?);
        } else if let Some(r) = sec.strip_prefix('A') {
            act0 = Some(parse_triples(r).ok_or_else(|| bad("object action"))?);
        } else if let Some(r) = sec.strip_prefix('B') {
            act1 = Some(parse_triples(r).ok_or_else(|| bad("arrow action"))?);
        }
    }
    let n0 = n0.ok_or_else(|| bad("missing object count"))?;
    let n1 = n1.ok_or_else(|| bad("missing arrow count"))?;
    let wrap = |e: GroupoidError| EngineError::Decode(e.to_string());
    let objects = GroupoidSet::new(
        Arc::clone(groupoid),
        n0,
        sigma0.ok_or_else(|| bad("missing object sigma"))?,
        act0.ok_or_else(|| bad("missing object action"))?,
    )
    .map_err(wrap)?;
    let arrows = GroupoidSet::new(
        Arc::clone(groupoid),
        n1,
        sigma1.ok_or_else(|| bad("missing arrow sigma"))?,
        act1.ok_or_else(|| bad("missing arrow action"))?,
    )
    .map_err(wrap)?;
    CatGroupoidSet::new(
        objects,
        arrows,
        src.ok_or_else(|| bad("missing src"))?,
        tgt.ok_or_else(|| bad("missing tgt"))?,
        ident.ok_or_else(|| bad("missing ident"))?,
        comp.ok_or_else(|| bad("missing comp"))?,
    )
    .map_err(wrap)
}

fn parse_table(s: &str) -> Option<Vec<usize>> {
    if s.is_empty() {
        return Some(vec![]);
    }
    s.split(',').map(|v| v.parse().ok()).collect()
}

fn parse_triples(s: &str) -> Option<BTreeMap<(usize, usize), usize>> {
    let mut map = BTreeMap::new();
    for triple in s.split(',').filter(|t| !t.is_empty()) {
        let mut it = triple.split('.');
        let p: usize = it.next()?.parse().ok()?;
        let q: usize = it.next()?.parse().ok()?;
        let r: usize = it.next()?.parse().ok()?;
        map.insert((p, q), r);
    }
    Some(map)
}

/// Canonical form: minimum encoding over relabelings of the carriers that
/// respect refined invariant colors. Structure-map values and the groupoid
/// are fixed, so equal forms mean an equivariant structure-preserving
/// isomorphism exists.
pub fn groupoid_canonical_form(x: &Arc<CatGroupoidSet>) -> CanonicalClass {
    let (obj_colors, arr_colors) = groupoid_colors(x);
    let n0 = x.n_objects();
    let n1 = x.n_arrows();
    let mut obj_classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (a, &color) in obj_colors.iter().enumerate() {
        obj_classes
            .entry((x.objects().sigma(a), color))
            .or_default()
            .push(a);
    }
    let obj_classes: Vec<Vec<usize>> = obj_classes.into_values().collect();
    let mut best: Option<String> = None;
    let mut sigma0 = vec![usize::MAX; n0];
    enumerate_class_assignments(&obj_classes, 0, 0, &mut sigma0, &mut |sigma0| {
        let mut arr_groups: BTreeMap<(usize, usize, usize, usize), Vec<usize>> = BTreeMap::new();
        for f in 0..n1 {
            arr_groups
                .entry((
                    x.arrows().sigma(f),
                    arr_colors[f],
                    sigma0[x.src(f)],
                    sigma0[x.tgt(f)],
                ))
                .or_default()
                .push(f);
        }
        let arr_groups: Vec<Vec<usize>> = arr_groups.into_values().collect();
        let mut sigma1 = vec![usize::MAX; n1];
        enumerate_class_assignments(&arr_groups, 0, 0, &mut sigma1, &mut |sigma1| {
            let candidate = encode_groupoid_instance(&relabel(x, sigma0, sigma1));
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        });
    });
    CanonicalClass(best.expect("at least one relabeling"))
}

fn relabel(x: &CatGroupoidSet, obj_perm: &[usize], arr_perm: &[usize]) -> CatGroupoidSet {
    let move_gset = |gs: &GroupoidSet, perm: &[usize]| {
        let n = gs.size();
        let mut sigma = vec![0; n];
        for e in 0..n {
            sigma[perm[e]] = gs.sigma(e);
        }
        let act = gs
            .act_table()
            .iter()
            .map(|(&(e, g), &y)| ((perm[e], g), perm[y]))
            .collect();
        GroupoidSet::new(Arc::clone(gs.groupoid()), n, sigma, act)
            .expect("relabeling preserves validity")
    };
    let objects = move_gset(x.objects(), obj_perm);
    let arrows = move_gset(x.arrows(), arr_perm);
    let n0 = x.n_objects();
    let n1 = x.n_arrows();
    let mut src = vec![0; n1];
    let mut tgt = vec![0; n1];
    let mut ident = vec![0; n0];
    for f in 0..n1 {
        src[arr_perm[f]] = obj_perm[x.src(f)];
        tgt[arr_perm[f]] = obj_perm[x.tgt(f)];
    }
    for a in 0..n0 {
        ident[obj_perm[a]] = arr_perm[x.ident(a)];
    }
    let comp = x
        .comp_table()
        .iter()
        .map(|(&(p, q), &r)| ((arr_perm[p], arr_perm[q]), arr_perm[r]))
        .collect();
    CatGroupoidSet::new(objects, arrows, src, tgt, ident, comp)
        .expect("relabeling preserves validity")
        .as_ref()
        .clone()
}

fn groupoid_colors(x: &CatGroupoidSet) -> (Vec<usize>, Vec<usize>) {
    let n0 = x.n_objects();
    let n1 = x.n_arrows();
    let n_arrows_gd = x.groupoid().n_arrows();
    let stab_mask = |gs: &GroupoidSet, e: usize| -> u64 {
        gs.stabilizer(e)
            .expect("in range")
            .iter()
            .fold(0u64, |m, &l| m | (1 << (l % 64)))
    };
    let mut obj: Vec<u64> = (0..n0)
        .map(|a| {
            let out = (0..n1).filter(|&f| x.src(f) == a).count() as u64;
            let inn = (0..n1).filter(|&f| x.tgt(f) == a).count() as u64;
            (x.objects().sigma(a) as u64) << 48 | stab_mask(x.objects(), a) << 16 | out << 8 | inn
        })
        .collect();
    let mut arr: Vec<u64> = (0..n1)
        .map(|f| {
            let ident = x.is_identity_arrow(f) as u64;
            let iso = x.inverse_arrow(f).is_some() as u64;
            (x.arrows().sigma(f) as u64) << 48 | stab_mask(x.arrows(), f) << 16 | ident << 1 | iso
        })
        .collect();
    rank_u64(&mut obj);
    rank_u64(&mut arr);
    loop {
        let mut next_arr: Vec<Vec<u64>> = (0..n1)
            .map(|f| {
                let mut key = vec![arr[f], obj[x.src(f)], obj[x.tgt(f)]];
                for g in 0..n_arrows_gd {
                    key.push(match x.arrows().act_table().get(&(f, g)) {
                        Some(&h) => arr[h] + 1,
                        None => 0,
                    });
                }
                key
            })
            .collect();
        for (&(p, q), &r) in x.comp_table() {
            next_arr[r].push(1 << 40 | (arr[p] << 20) | arr[q]);
            next_arr[p].push(2 << 40 | (arr[q] << 20) | arr[r]);
            next_arr[q].push(3 << 40 | (arr[p] << 20) | arr[r]);
        }
        for key in &mut next_arr {
            key[3 + n_arrows_gd..].sort_unstable();
        }
        let mut next_obj: Vec<Vec<u64>> = (0..n0)
            .map(|a| {
                let mut key = vec![obj[a], arr[x.ident(a)]];
                for g in 0..n_arrows_gd {
                    key.push(match x.objects().act_table().get(&(a, g)) {
                        Some(&b) => obj[b] + 1,
                        None => 0,
                    });
                }
                let mut incident: Vec<u64> = (0..n1)
                    .filter(|&f| x.src(f) == a)
                    .map(|f| arr[f] << 1)
                    .collect();
                incident.extend((0..n1).filter(|&f| x.tgt(f) == a).map(|f| arr[f] << 1 | 1));
                incident.sort_unstable();
                key.extend(incident);
                key
            })
            .collect();
        let new_arr = rank_vecs(&mut next_arr);
        let new_obj = rank_vecs(&mut next_obj);
        if new_arr == arr && new_obj == obj {
            return (
                obj.iter().map(|&c| c as usize).collect(),
                arr.iter().map(|&c| c as usize).collect(),
            );
        }
        arr = new_arr;
        obj = new_obj;
    }
}

fn rank_u64(keys: &mut [u64]) {
    let mut sorted: Vec<u64> = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for k in keys.iter_mut() {
        *k = sorted.binary_search(k).unwrap() as u64;
    }
}

fn rank_vecs(keys: &mut [Vec<u64>]) -> Vec<u64> {
    let mut sorted: Vec<Vec<u64>> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u64)
        .collect()
}

/// Blocks of the generated equivalence (connected components joined with
/// action orbits) as full sub-instances.
pub fn groupoid_sqre_partition(x: &Arc<CatGroupoidSet>) -> Vec<(usize, GroupoidEmbedded)> {
    let mut uf = UnionFind::new(x.n_objects());
    for f in 0..x.n_arrows() {
        uf.union(x.src(f), x.tgt(f));
    }
    for (&(a, _), &b) in x.objects().act_table() {
        uf.union(a, b);
    }
    uf.blocks()
        .into_iter()
        .map(|block| {
            let rep = block[0];
            let sub = x.full_sub(&block).expect("blocks are action-stable");
            (rep, sub)
        })
        .collect()
}

/// Element of the categorified Burnside rig of a groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidRigElement {
    groupoid: Arc<FiniteGroupoid>,
    classes: BTreeMap<CanonicalClass, usize>,
}

impl GroupoidRigElement {
    pub fn zero(groupoid: &Arc<FiniteGroupoid>) -> Self {
        GroupoidRigElement {
            groupoid: Arc::clone(groupoid),
            classes: BTreeMap::new(),
        }
    }

    pub fn one(groupoid: &Arc<FiniteGroupoid>) -> Self {
        groupoid_rig_class(&CatGroupoidSet::unit(groupoid))
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn classes(&self) -> &BTreeMap<CanonicalClass, usize> {
        &self.classes
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.classes.values().sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self, EngineError> {
        if self.groupoid != other.groupoid {
            return Err(EngineError::GroupMismatch);
        }
        let mut classes = self.classes.clone();
        for (k, &m) in &other.classes {
            *classes.entry(k.clone()).or_insert(0) += m;
        }
        Ok(GroupoidRigElement {
            groupoid: Arc::clone(&self.groupoid),
            classes,
        })
    }

    /// Product through the fibre product of representatives.
    pub fn mul(&self, other: &Self) -> Result<Self, EngineError> {
        if self.groupoid != other.groupoid {
            return Err(EngineError::GroupMismatch);
        }
        let mut out = GroupoidRigElement::zero(&self.groupoid);
        for (ka, &ma) in &self.classes {
            let a = decode_groupoid_instance(&ka.0, &self.groupoid)?;
            for (kb, &mb) in &other.classes {
                let b = decode_groupoid_instance(&kb.0, &self.groupoid)?;
                let prod = a
                    .fibre_product(&b)
                    .map_err(|e| EngineError::Decode(e.to_string()))?;
                let piece = groupoid_rig_class(&prod);
                for (k, &m) in &piece.classes {
                    *out.classes.entry(k.clone()).or_insert(0) += m * ma * mb;
                }
            }
        }
        Ok(out)
    }

    pub fn equal(&self, other: &Self, budget: &Budget) -> Result<bool, EngineError> {
        if self.groupoid != other.groupoid {
            return Err(EngineError::GroupMismatch);
        }
        if self.classes == other.classes {
            return Ok(true);
        }
        if self.block_count() != other.block_count() {
            return Ok(false);
        }
        let mut residual_self: BTreeMap<&CanonicalClass, usize> = BTreeMap::new();
        let mut residual_other: BTreeMap<&CanonicalClass, usize> = BTreeMap::new();
        for (k, &m) in &self.classes {
            let n = other.classes.get(k).copied().unwrap_or(0);
            if m > n {
                residual_self.insert(k, m - n);
            }
        }
        for (k, &m) in &other.classes {
            let n = self.classes.get(k).copied().unwrap_or(0);
            if m > n {
                residual_other.insert(k, m - n);
            }
        }
        let keys: Vec<&CanonicalClass> = residual_self
            .keys()
            .chain(residual_other.keys())
            .copied()
            .collect();
        let reps: Vec<Arc<CatGroupoidSet>> = keys
            .iter()
            .map(|k| decode_groupoid_instance(&k.0, &self.groupoid))
            .collect::<Result<_, _>>()?;
        let mut cluster = vec![usize::MAX; keys.len()];
        let mut next = 0;
        for i in 0..keys.len() {
            if cluster[i] != usize::MAX {
                continue;
            }
            cluster[i] = next;
            for j in i + 1..keys.len() {
                if cluster[j] == usize::MAX
                    && groupoid_weak_equivalent(&reps[i], &reps[j], budget)?.is_some()
                {
                    cluster[j] = next;
                }
            }
            next += 1;
        }
        for c in 0..next {
            let count_self: usize = keys
                .iter()
                .enumerate()
                .filter(|(i, _)| cluster[*i] == c)
                .map(|(_, k)| residual_self.get(k).copied().unwrap_or(0))
                .sum();
            let count_other: usize = keys
                .iter()
                .enumerate()
                .filter(|(i, _)| cluster[*i] == c)
                .map(|(_, k)| residual_other.get(k).copied().unwrap_or(0))
                .sum();
            if count_self != count_other {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Ring element over a groupoid: formal difference of rig elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidRingElement {
    pub pos: GroupoidRigElement,
    pub neg: GroupoidRigElement,
}

impl GroupoidRingElement {
    pub fn from_rig(u: GroupoidRigElement) -> Self {
        let zero = GroupoidRigElement::zero(&u.groupoid);
        GroupoidRingElement { pos: u, neg: zero }
    }

    pub fn add(&self, other: &Self) -> Result<Self, EngineError> {
        Ok(GroupoidRingElement {
            pos: self.pos.add(&other.pos)?,
            neg: self.neg.add(&other.neg)?,
        })
    }

    pub fn neg(&self) -> Self {
        GroupoidRingElement {
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, EngineError> {
        let pos = self.pos.mul(&other.pos)?.add(&self.neg.mul(&other.neg)?)?;
        let neg = self.pos.mul(&other.neg)?.add(&self.neg.mul(&other.pos)?)?;
        Ok(GroupoidRingElement { pos, neg })
    }

    pub fn equal(&self, other: &Self, budget: &Budget) -> Result<bool, EngineError> {
        let lhs = self.pos.add(&other.neg)?;
        let rhs = other.pos.add(&self.neg)?;
        lhs.equal(&rhs, budget)
    }
}

/// The class of an instance: canonical forms of its normalized blocks.
/// Each block is reduced to its component's isotropy group, normalized
/// there, and extended back through the same star.
pub fn groupoid_rig_class(x: &Arc<CatGroupoidSet>) -> GroupoidRigElement {
    let gd = x.groupoid();
    let mut out = GroupoidRigElement::zero(gd);
    for (_, block) in groupoid_sqre_partition(x) {
        for nb in normalize_groupoid_block(&block.cat) {
            *out.classes.entry(groupoid_canonical_form(&nb)).or_insert(0) += 1;
        }
    }
    out
}

fn normalize_groupoid_block(block: &Arc<CatGroupoidSet>) -> Vec<Arc<CatGroupoidSet>> {
    let gd = block.groupoid();
    // a block's carriers live inside one connected component; find it
    let object = (0..block.n_objects())
        .map(|e| block.objects().sigma(e))
        .chain((0..block.n_arrows()).map(|e| block.arrows().sigma(e)))
        .next();
    let Some(object) = object else {
        return vec![];
    };
    let component = gd
        .connected_components()
        .into_iter()
        .find(|c| c.contains(&object))
        .expect("object lies in a component");
    let sub = gd.full_subgroupoid(&component).expect("component objects");
    let Ok((comp_gd, comp_objs, comp_arrs)) = gd.extract(&sub) else {
        return vec![Arc::clone(block)];
    };
    let local_base = 0;
    let Ok(red) = TransitiveReduction::new(&comp_gd, local_base) else {
        return vec![Arc::clone(block)];
    };
    let Ok((local, _, _)) = restrict(block, &sub) else {
        return vec![Arc::clone(block)];
    };
    let Ok((reduced, _, _)) = red.reduce(&local) else {
        return vec![Arc::clone(block)];
    };
    // group-level normalization, then extension back over the component and
    // re-embedding into the ambient groupoid
    let mut out = Vec::new();
    for piece in crate::burnside::normalize_block_public(&reduced) {
        let Ok(extended) = red.extend(&piece) else {
            return vec![Arc::clone(block)];
        };
        let embedded = embed_from_component(gd, &comp_objs, &comp_arrs, &extended);
        for (_, sub_block) in groupoid_sqre_partition(&embedded) {
            out.push(sub_block.cat);
        }
    }
    out
}

/// Reinterprets an instance over an extracted component groupoid as an
/// instance over the ambient groupoid (structure values translated, action
/// entries re-keyed by the ambient arrow indices).
fn embed_from_component(
    gd: &Arc<FiniteGroupoid>,
    comp_objs: &[usize],
    comp_arrs: &[usize],
    x: &Arc<CatGroupoidSet>,
) -> Arc<CatGroupoidSet> {
    let move_gset = |gs: &GroupoidSet| {
        let sigma = (0..gs.size()).map(|e| comp_objs[gs.sigma(e)]).collect();
        let act = gs
            .act_table()
            .iter()
            .map(|(&(e, g), &y)| ((e, comp_arrs[g]), y))
            .collect();
        GroupoidSet::new(Arc::clone(gd), gs.size(), sigma, act)
            .expect("component re-embedding is valid")
    };
    CatGroupoidSet::new(
        move_gset(x.objects()),
        move_gset(x.arrows()),
        x.src_table().to_vec(),
        x.tgt_table().to_vec(),
        x.ident_table().to_vec(),
        x.comp_table().clone(),
    )
    .expect("component re-embedding is valid")
}

/// Element of the classical Burnside rig of a groupoid: orbit types keyed
/// by (component index, conjugacy class of the stabilizer transported to
/// the component's isotropy group).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidClassicalElement {
    groupoid: Arc<FiniteGroupoid>,
    orbit_classes: BTreeMap<(usize, Vec<usize>), usize>,
}

impl GroupoidClassicalElement {
    pub fn zero(groupoid: &Arc<FiniteGroupoid>) -> Self {
        GroupoidClassicalElement {
            groupoid: Arc::clone(groupoid),
            orbit_classes: BTreeMap::new(),
        }
    }

    pub fn orbit_classes(&self) -> &BTreeMap<(usize, Vec<usize>), usize> {
        &self.orbit_classes
    }

    pub fn add(&self, other: &Self) -> Result<Self, EngineError> {
        if self.groupoid != other.groupoid {
            return Err(EngineError::GroupMismatch);
        }
        let mut orbit_classes = self.orbit_classes.clone();
        for (k, &m) in &other.orbit_classes {
            *orbit_classes.entry(k.clone()).or_insert(0) += m;
        }
        Ok(GroupoidClassicalElement {
            groupoid: Arc::clone(&self.groupoid),
            orbit_classes,
        })
    }

    pub fn equal(&self, other: &Self) -> bool {
        self.groupoid == other.groupoid && self.orbit_classes == other.orbit_classes
    }
}

/// Orbit decomposition of a groupoid-set with transported stabilizer keys.
pub fn groupoid_classical_class(gs: &GroupoidSet) -> GroupoidClassicalElement {
    let gd = gs.groupoid();
    let components = gd.connected_components();
    let comp_of = |object: usize| {
        components
            .iter()
            .position(|c| c.contains(&object))
            .expect("object in a component")
    };
    let mut out = GroupoidClassicalElement::zero(gd);
    for orbit in gs.orbits() {
        let x0 = orbit[0];
        let ci = comp_of(gs.sigma(x0));
        let sub = gd.full_subgroupoid(&components[ci]).expect("component");
        let (comp_gd, comp_objs, comp_arrs) = gd.extract(&sub).expect("component extract");
        let red = TransitiveReduction::new(&comp_gd, 0).expect("component is transitive");
        // transport the stabilizer to the base through τ
        let local_sigma = comp_objs
            .binary_search(&gs.sigma(x0))
            .expect("sigma in component");
        let tau = comp_arrs[red.star_arrow(local_sigma)];
        let stab = gs.stabilizer(x0).expect("orbit representative");
        let arr_back: BTreeMap<usize, usize> =
            comp_arrs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let transported: Vec<usize> = stab
            .iter()
            .map(|&l| {
                let local_l = arr_back[&l];
                let local_tau = arr_back[&tau];
                let inner = comp_gd.compose(local_l, local_tau).expect("composable");
                let arrow = comp_gd
                    .compose(comp_gd.inv(local_tau), inner)
                    .expect("composable");
                red.loop_arrows()
                    .iter()
                    .position(|&f| f == arrow)
                    .expect("loop at base")
            })
            .collect();
        let mut subgroup = transported;
        subgroup.sort_unstable();
        let key = red.isotropy().conjugacy_class_min(&subgroup);
        *out.orbit_classes.entry((ci, key)).or_insert(0) += 1;
    }
    out
}

/// All valid categorified groupoid-sets with at most `max_arrows` arrows,
/// one per canonical form.
pub fn enumerate_groupoid_instances(
    gd: &Arc<FiniteGroupoid>,
    max_arrows: usize,
) -> Result<Vec<Arc<CatGroupoidSet>>, EngineError> {
    let carriers = groupoid_sets_up_to_iso(gd, max_arrows)?;
    let mut seen: BTreeMap<CanonicalClass, Arc<CatGroupoidSet>> = BTreeMap::new();
    for arrows in &carriers {
        for objects in groupoid_sets_up_to_iso(gd, arrows.size())? {
            generate_groupoid_structures(&objects, arrows, &mut |cat| {
                let key = groupoid_canonical_form(&cat);
                seen.entry(key).or_insert(cat);
            })?;
        }
    }
    let mut out: Vec<Arc<CatGroupoidSet>> = seen.into_values().collect();
    out.sort_by_key(|c| (c.n_arrows(), groupoid_canonical_form(c)));
    Ok(out)
}

/// Groupoid-sets up to isomorphism: multisets of orbit types, where an
/// orbit type is a coset space of a subgroup of a component's isotropy
/// group, spread over the component through the star.
pub fn groupoid_sets_up_to_iso(
    gd: &Arc<FiniteGroupoid>,
    max_size: usize,
) -> Result<Vec<GroupoidSet>, EngineError> {
    let wrap = |e: GroupoidError| EngineError::Decode(e.to_string());
    let mut orbit_types: Vec<GroupoidSet> = Vec::new();
    for component in gd.connected_components() {
        let sub = gd.full_subgroupoid(&component).map_err(wrap)?;
        let (comp_gd, comp_objs, comp_arrs) = gd.extract(&sub).map_err(wrap)?;
        let red = TransitiveReduction::new(&comp_gd, 0).map_err(wrap)?;
        let h = red.isotropy();
        let mut seen = Vec::new();
        for k in h.subgroups() {
            let key = h.conjugacy_class_min(&k);
            if seen.contains(&key) {
                continue;
            }
            seen.push(key.clone());
            let z = coset_gset(h, &key);
            let local = red.extend_gset(&z);
            let global_sigma = (0..local.size())
                .map(|e| comp_objs[local.sigma(e)])
                .collect();
            let global_act = local
                .act_table()
                .iter()
                .map(|(&(e, g), &y)| ((e, comp_arrs[g]), y))
                .collect();
            orbit_types.push(
                GroupoidSet::new(Arc::clone(gd), local.size(), global_sigma, global_act)
                    .map_err(wrap)?,
            );
        }
    }
    orbit_types.sort_by_key(GroupoidSet::size);
    let mut out = vec![GroupoidSet::empty(Arc::clone(gd))];
    let mut frontier = vec![(GroupoidSet::empty(Arc::clone(gd)), 0usize)];
    while let Some((x, min_type)) = frontier.pop() {
        for (t, orbit) in orbit_types.iter().enumerate().skip(min_type) {
            if orbit.size() == 0 || x.size() + orbit.size() > max_size {
                continue;
            }
            let bigger = x.disjoint_union(orbit).map_err(wrap)?;
            out.push(bigger.clone());
            frontier.push((bigger, t));
        }
    }
    Ok(out)
}

fn generate_groupoid_structures(
    objects: &GroupoidSet,
    arrows: &GroupoidSet,
    emit: &mut impl FnMut(Arc<CatGroupoidSet>),
) -> Result<(), EngineError> {
    let wrap = |e: GroupoidError| EngineError::Decode(e.to_string());
    let n0 = objects.size();
    let n1 = arrows.size();
    if n0 > n1 || (n0 == 0 && n1 > 0) {
        return Ok(());
    }
    let ident_candidates = objects.equivariant_maps(arrows).map_err(wrap)?;
    for ident in ident_candidates
        .iter()
        .filter(|m| crate::gset::is_bijection(m, n1) || is_injective(m, n1))
    {
        let sections: Vec<Vec<usize>> = arrows
            .equivariant_maps(objects)
            .map_err(wrap)?
            .into_iter()
            .filter(|s| (0..n0).all(|x| s[ident[x]] == x))
            .collect();
        for src in &sections {
            for tgt in &sections {
                enumerate_groupoid_comps(objects, arrows, src, tgt, ident, emit);
            }
        }
    }
    Ok(())
}

fn is_injective(map: &[usize], bound: usize) -> bool {
    let mut seen = vec![false; bound];
    map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

fn enumerate_groupoid_comps(
    objects: &GroupoidSet,
    arrows: &GroupoidSet,
    src: &[usize],
    tgt: &[usize],
    ident: &[usize],
    emit: &mut impl FnMut(Arc<CatGroupoidSet>),
) {
    let n1 = arrows.size();
    let pairs: Vec<(usize, usize)> = (0..n1)
        .flat_map(|p| (0..n1).map(move |q| (p, q)))
        .filter(|&(p, q)| src[p] == tgt[q])
        .collect();
    let mut forced: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in 0..n1 {
        forced.insert((f, ident[src[f]]), f);
        forced.insert((ident[tgt[f]], f), f);
    }
    let mut free_reps: Vec<(usize, usize)> = Vec::new();
    let mut covered: std::collections::BTreeSet<(usize, usize)> = Default::default();
    for &(p, q) in &pairs {
        if forced.contains_key(&(p, q)) || covered.contains(&(p, q)) {
            continue;
        }
        free_reps.push((p, q));
        for (&(e, g), &pg) in arrows.act_table() {
            if e == p {
                if let Some(&qg) = arrows.act_table().get(&(q, g)) {
                    covered.insert((pg, qg));
                }
            }
        }
    }
    let fibers: Vec<Vec<usize>> = free_reps
        .iter()
        .map(|&(p, q)| {
            (0..n1)
                .filter(|&r| src[r] == src[q] && tgt[r] == tgt[p])
                .collect()
        })
        .collect();
    if fibers.iter().any(Vec::is_empty) {
        return;
    }
    let mut choice = vec![0usize; free_reps.len()];
    'next: loop {
        let mut comp = forced.clone();
        let mut ok = true;
        'build: for (i, &(p, q)) in free_reps.iter().enumerate() {
            let r = fibers[i][choice[i]];
            // equivariant extension across the action on pairs
            for (&(e, g), &pg) in arrows.act_table() {
                if e != p {
                    continue;
                }
                let (Some(&qg), Some(&rg)) = (
                    arrows.act_table().get(&(q, g)),
                    arrows.act_table().get(&(r, g)),
                ) else {
                    continue;
                };
                if let Some(&existing) = comp.get(&(pg, qg)) {
                    if existing != rg {
                        ok = false;
                        break 'build;
                    }
                } else {
                    comp.insert((pg, qg), rg);
                }
            }
        }
        if ok && comp.len() == pairs.len() {
            if let Ok(cat) = CatGroupoidSet::new(
                objects.clone(),
                arrows.clone(),
                src.to_vec(),
                tgt.to_vec(),
                ident.to_vec(),
                comp,
            ) {
                emit(cat);
            }
        }
        for i in 0..free_reps.len() {
            choice[i] += 1;
            if choice[i] < fibers[i].len() {
                continue 'next;
            }
            choice[i] = 0;
        }
        break;
    }
}

/// Component data in a decomposition report.
#[derive(Debug, Clone)]
pub struct ComponentInfo {
    pub objects: Vec<usize>,
    pub isotropy_order: usize,
    pub class_count: usize,
}

/// Result of the component decomposition of the categorified Burnside ring.
#[derive(Debug, Clone)]
pub struct DecomposeReport {
    pub components: Vec<ComponentInfo>,
    pub groupoid_class_count: usize,
    /// One tuple of component class indices per groupoid class.
    pub tuples: Vec<Vec<usize>>,
    pub expected_tuple_count: usize,
    pub bijective: bool,
    pub sum_checks: usize,
    pub product_checks: usize,
    pub homomorphism_ok: bool,
    pub square_ok: bool,
}

/// Enumerates all weak-equivalence classes of categorified groupoid-sets
/// within the bound, maps each to its tuple of component classes through
/// restriction and transitive reduction, and verifies that the map is a
/// bijection onto the size-constrained product, a rig homomorphism on
/// sampled sums and products, and commutes with the comparison maps from
/// the classical rings.
pub fn decompose_ring(
    gd: &Arc<FiniteGroupoid>,
    bound: usize,
    budget: &Budget,
) -> Result<DecomposeReport, EngineError> {
    let wrap = |e: GroupoidError| EngineError::Decode(e.to_string());
    // groupoid-side classes
    let instances = enumerate_groupoid_instances(gd, bound)?;
    let mut class_reps: Vec<Arc<CatGroupoidSet>> = Vec::new();
    'outer: for inst in instances {
        for rep in &class_reps {
            if groupoid_weak_equivalent(rep, &inst, budget)?.is_some() {
                continue 'outer;
            }
        }
        class_reps.push(inst);
    }
    // component machinery and group-side classes
    let components = gd.connected_components();
    let mut infos = Vec::new();
    let mut reductions = Vec::new();
    let mut group_classes = Vec::new();
    for component in &components {
        let sub = gd.full_subgroupoid(component).map_err(wrap)?;
        let (comp_gd, comp_objs, comp_arrs) = gd.extract(&sub).map_err(wrap)?;
        let red = TransitiveReduction::new(&comp_gd, 0).map_err(wrap)?;
        let local_bound = bound / component.len().max(1);
        let classes = enumerate_classes(red.isotropy(), local_bound, budget)?;
        infos.push(ComponentInfo {
            objects: component.clone(),
            isotropy_order: red.isotropy().order(),
            class_count: classes.len(),
        });
        reductions.push((sub, red, comp_objs, comp_arrs));
        group_classes.push(classes);
    }
    // the decomposition map on class representatives
    let to_tuple = |x: &Arc<CatGroupoidSet>| -> Result<Vec<usize>, EngineError> {
        let mut tuple = Vec::with_capacity(components.len());
        for (sub, red, _, _) in &reductions {
            let (piece, _, _) = restrict(x, sub).map_err(wrap)?;
            let (reduced, _, _) = red.reduce(&piece).map_err(wrap)?;
            let classes = &group_classes[tuple.len()];
            let idx = classes
                .iter()
                .position(|c| {
                    crate::engine::weak_equivalent(&c.representative, &reduced, budget)
                        .map(|w| w.is_some())
                        .unwrap_or(false)
                })
                .ok_or_else(|| {
                    EngineError::Decode("reduced instance matches no enumerated class".into())
                })?;
            tuple.push(idx);
        }
        Ok(tuple)
    };
    let mut tuples = Vec::new();
    for rep in &class_reps {
        tuples.push(to_tuple(rep)?);
    }
    // expected: all tuples with Σ(arrows · component size) within bound
    let mut expected_set: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut partial: Vec<usize> = Vec::new();
    fn walk(
        ci: usize,
        used: usize,
        bound: usize,
        components: &[Vec<usize>],
        group_classes: &[Vec<crate::burnside::enumerate::ClassInfo>],
        partial: &mut Vec<usize>,
        expected_set: &mut std::collections::BTreeSet<Vec<usize>>,
    ) {
        if ci == components.len() {
            expected_set.insert(partial.clone());
            return;
        }
        for (idx, class) in group_classes[ci].iter().enumerate() {
            let cost = class.representative.n_arrows() * components[ci].len();
            if used + cost <= bound {
                partial.push(idx);
                walk(
                    ci + 1,
                    used + cost,
                    bound,
                    components,
                    group_classes,
                    partial,
                    expected_set,
                );
                partial.pop();
            }
        }
    }
    walk(
        0,
        0,
        bound,
        &components,
        &group_classes,
        &mut partial,
        &mut expected_set,
    );
    let expected = expected_set.len();
    let mut found_set: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut injective = true;
    for t in &tuples {
        if !found_set.insert(t.clone()) {
            injective = false;
        }
    }
    let bijective = injective && found_set == expected_set;
    // rig-homomorphism spot checks on sampled pairs of class representatives
    let mut sum_checks = 0;
    let mut product_checks = 0;
    let mut homomorphism_ok = true;
    let sample: Vec<&Arc<CatGroupoidSet>> = class_reps.iter().take(4).collect();
    for a in &sample {
        for b in &sample {
            let union = a.disjoint_union(b).map_err(wrap)?;
            let product = a.fibre_product(b).map_err(wrap)?;
            for (sub, red, _, _) in reductions.iter() {
                let reduce_of = |inst: &Arc<CatGroupoidSet>| -> Result<_, EngineError> {
                    let (piece, _, _) = restrict(inst, sub).map_err(wrap)?;
                    let (reduced, _, _) = red.reduce(&piece).map_err(wrap)?;
                    Ok(reduced)
                };
                let ru = reduce_of(&union)?;
                let ra = reduce_of(a)?;
                let rb = reduce_of(b)?;
                let direct_sum = ra.disjoint_union(&rb)?;
                sum_checks += 1;
                if crate::engine::weak_equivalent(&ru, &direct_sum, budget)?.is_none() {
                    homomorphism_ok = false;
                }
                let rp = reduce_of(&product)?;
                let direct_prod = ra.product(&rb)?;
                product_checks += 1;
                if crate::engine::weak_equivalent(&rp, &direct_prod, budget)?.is_none() {
                    homomorphism_ok = false;
                }
            }
        }
    }
    // commutative square: classical vs categorified, groupoid vs components
    let mut square_ok = true;
    for gs in groupoid_sets_up_to_iso(gd, bound)? {
        let included = super::catset::include_groupoid_set(&gs);
        for (ci, (sub, red, _, _)) in reductions.iter().enumerate() {
            // categorified route: include, restrict, reduce, class
            let (piece, _, _) = restrict(&included, sub).map_err(wrap)?;
            let (reduced, _, _) = red.reduce(&piece).map_err(wrap)?;
            let categorified = rig_class(&reduced);
            // classical route: classical class, project to the component,
            // reconstruct, include, class
            let classical = groupoid_classical_class(&gs);
            let mut projected =
                crate::burnside::classical::ClassicalRigElement::zero(red.isotropy());
            for (&(comp_idx, ref key), &mult) in classical.orbit_classes() {
                if comp_idx != ci {
                    continue;
                }
                let orbit = classical_class(&coset_gset(red.isotropy(), key));
                for _ in 0..mult {
                    projected = projected.add(&orbit)?;
                }
            }
            let via_classical = iota_rig(&projected);
            if !categorified.equal(&via_classical, budget)? {
                square_ok = false;
            }
        }
    }
    Ok(DecomposeReport {
        components: infos,
        groupoid_class_count: class_reps.len(),
        tuples,
        expected_tuple_count: expected,
        bijective,
        sum_checks,
        product_checks,
        homomorphism_ok,
        square_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn canonical_form_invariance() {
        let gd = FiniteGroupoid::pair(2);
        let u = CatGroupoidSet::unit(&gd);
        let base = groupoid_canonical_form(&u);
        let relabeled = Arc::new(relabel(&u, &[1, 0], &[1, 0]));
        assert_eq!(groupoid_canonical_form(&relabeled), base);
    }

    #[test]
    fn rig_class_basics() {
        let gd = FiniteGroupoid::pair(2);
        let zero = GroupoidRigElement::zero(&gd);
        assert!(zero.is_zero());
        let u = CatGroupoidSet::unit(&gd);
        let one = groupoid_rig_class(&u);
        assert_eq!(one.block_count(), 1);
        // unit is a unit for the fibre product
        let budget = Budget::default();
        let sq = one.mul(&one).unwrap();
        assert!(sq.equal(&one, &budget).unwrap());
        // classes concentrated on distinct components never merge
        let c2 = FiniteGroup::cyclic(2);
        let two_comp = FiniteGroupoid::pair(2).disjoint_union(&FiniteGroupoid::from_group(&c2));
        let unit2 = CatGroupoidSet::unit(&two_comp);
        let blocks = groupoid_sqre_partition(&unit2);
        assert_eq!(blocks.len(), 2);
    }

    #[test]
    fn unit_is_multiplicative_identity_across_components() {
        let c2 = FiniteGroup::cyclic(2);
        let gd = FiniteGroupoid::pair(2).disjoint_union(&FiniteGroupoid::from_group(&c2));
        let one = GroupoidRigElement::one(&gd);
        // the unit decomposes into one block per component
        assert_eq!(one.block_count(), 2);
        let budget = Budget::default();
        let u = groupoid_rig_class(
            &CatGroupoidSet::unit(&gd)
                .disjoint_union(&CatGroupoidSet::unit(&gd))
                .unwrap(),
        );
        assert!(u.mul(&one).unwrap().equal(&u, &budget).unwrap());
        assert!(one.mul(&u).unwrap().equal(&u, &budget).unwrap());
    }

    #[test]
    fn groupoid_ring_difference_vanishes() {
        let gd = FiniteGroupoid::pair(2);
        let one = groupoid_rig_class(&CatGroupoidSet::unit(&gd));
        let r = GroupoidRingElement::from_rig(one);
        let zero = GroupoidRingElement::from_rig(GroupoidRigElement::zero(&gd));
        let budget = Budget::default();
        assert!(r.add(&r.neg()).unwrap().equal(&zero, &budget).unwrap());
        assert!(r.mul(&r).unwrap().equal(&r, &budget).unwrap());
    }

    #[test]
    fn classical_classes_respect_components() {
        let c2 = FiniteGroup::cyclic(2);
        let gd = FiniteGroupoid::pair(2).disjoint_union(&FiniteGroupoid::from_group(&c2));
        let unit = GroupoidSet::unit(&gd);
        let c = groupoid_classical_class(&unit);
        // one orbit over the pair component, one over the bundle component
        assert_eq!(c.orbit_classes().len(), 2);
        let keys: Vec<usize> = c.orbit_classes().keys().map(|(ci, _)| *ci).collect();
        assert_eq!(keys, vec![0, 1]);
    }

    #[test]
    fn enumeration_over_discrete_two_objects() {
        // classes over a 2-object discrete groupoid correspond to pairs of
        // trivial-group classes with total weight within the bound
        let gd = FiniteGroupoid::discrete(2);
        let budget = Budget::default();
        let report = decompose_ring(&gd, 1, &budget).unwrap();
        assert!(report.bijective);
        // bound 1: tuples (∅,∅), (pt,∅), (∅,pt) → 3 classes
        assert_eq!(report.groupoid_class_count, 3);
        assert!(report.homomorphism_ok);
        assert!(report.square_ok);
    }

    #[test]
    fn one_component_decomposition_is_identity_after_reduction() {
        let c2 = FiniteGroup::cyclic(2);
        let gd = FiniteGroupoid::from_group(&c2);
        let report = decompose_ring(&gd, 1, &Budget::default()).unwrap();
        assert!(report.bijective);
        assert_eq!(report.components.len(), 1);
        assert_eq!(
            report.groupoid_class_count,
            report.components[0].class_count
        );
    }
}
