//! The classical Burnside rig and ring of a finite group, and the
//! comparison map into the categorified rig through the discrete inclusion.
//!
//! Classes are multisets of conjugacy classes of stabilizer subgroups, the
//! standard complete invariant of finite G-sets up to equivariant
//! isomorphism; coset spaces reconstruct representatives.

use super::{rig_class, RigElement, RingElement};
use crate::catgset::include_gset;
use crate::engine::{decode, split_discrete, EngineError};
use crate::group::FiniteGroup;
use crate::gset::FinGSet;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Element of the classical Burnside rig: orbit types with multiplicity,
/// keyed by the least conjugate of the stabilizer subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRigElement {
    group: Arc<FiniteGroup>,
    orbit_classes: BTreeMap<Vec<usize>, usize>,
}

impl ClassicalRigElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        ClassicalRigElement {
            group: Arc::clone(group),
            orbit_classes: BTreeMap::new(),
        }
    }

    /// The one-point G-set: stabilizer the whole group.
    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        classical_class(&FinGSet::point(Arc::clone(group)))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn orbit_classes(&self) -> &BTreeMap<Vec<usize>, usize> {
        &self.orbit_classes
    }

    pub fn is_zero(&self) -> bool {
        self.orbit_classes.is_empty()
    }

    pub fn total_size(&self) -> usize {
        self.orbit_classes
            .iter()
            .map(|(k, m)| (self.group.order() / k.len()) * m)
            .sum()
    }

    pub fn add(&self, other: &ClassicalRigElement) -> Result<ClassicalRigElement, EngineError> {
        if self.group != other.group {
            return Err(EngineError::GroupMismatch);
        }
        let mut orbit_classes = self.orbit_classes.clone();
        for (k, &m) in &other.orbit_classes {
            *orbit_classes.entry(k.clone()).or_insert(0) += m;
        }
        Ok(ClassicalRigElement {
            group: Arc::clone(&self.group),
            orbit_classes,
        })
    }

    /// Product computed on reconstructed representatives with the diagonal
    /// action, then decomposed again.
    pub fn mul(&self, other: &ClassicalRigElement) -> Result<ClassicalRigElement, EngineError> {
        if self.group != other.group {
            return Err(EngineError::GroupMismatch);
        }
        let x = representative(self);
        let y = representative(other);
        let p = x.product(&y).map_err(crate::catgset::CatError::GSet)?;
        Ok(classical_class(&p))
    }

    /// Burnside-theorem semantics: equality of orbit-type multisets.
    pub fn equal(&self, other: &ClassicalRigElement) -> bool {
        self.group == other.group && self.orbit_classes == other.orbit_classes
    }
}

/// Orbit decomposition with stabilizer conjugacy-class keys.
pub fn classical_class(x: &FinGSet) -> ClassicalRigElement {
    let group = x.group();
    let mut orbit_classes = BTreeMap::new();
    for orbit in x.orbits() {
        let stab = x.stabilizer(orbit[0]).expect("orbit representative");
        let key = group.conjugacy_class_min(&stab);
        *orbit_classes.entry(key).or_insert(0) += 1;
    }
    ClassicalRigElement {
        group: Arc::clone(group),
        orbit_classes,
    }
}

/// Right coset space G/H with action H(g)·k = H(gk); the stabilizer of the
/// coset of the identity is H itself.
pub fn coset_gset(group: &Arc<FiniteGroup>, subgroup: &[usize]) -> FinGSet {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut coset_of = vec![usize::MAX; group.order()];
    for g in group.elements() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = subgroup.iter().map(|&h| group.mul(h, g)).collect();
        coset.sort_unstable();
        let idx = cosets.len();
        for &e in &coset {
            coset_of[e] = idx;
        }
        cosets.push(coset);
    }
    let act = cosets
        .iter()
        .map(|coset| {
            group
                .elements()
                .map(|k| coset_of[group.mul(coset[0], k)])
                .collect()
        })
        .collect();
    FinGSet::new(Arc::clone(group), cosets.len(), act).expect("coset action is valid")
}

/// A concrete G-set in the class: disjoint union of coset spaces.
pub fn representative(c: &ClassicalRigElement) -> FinGSet {
    let mut x = FinGSet::empty(Arc::clone(&c.group));
    for (key, &mult) in &c.orbit_classes {
        let orbit = coset_gset(&c.group, key);
        for _ in 0..mult {
            x = x.disjoint_union(&orbit).expect("same group");
        }
    }
    x
}

/// The comparison map ĩ on rig elements: the class of the discrete
/// inclusion of any representative.
pub fn iota_rig(c: &ClassicalRigElement) -> RigElement {
    rig_class(&include_gset(&representative(c)))
}

/// A rig element lies in the image of ĩ exactly when every stored block has
/// empty non-discrete part.
pub fn in_iota_image(u: &RigElement) -> Result<bool, EngineError> {
    for key in u.classes().keys() {
        let block = decode(&key.0, u.group())?;
        let (_, nd) = split_discrete(&block);
        if !nd.cat.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Element of the classical Burnside ring: a formal difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRingElement {
    pub pos: ClassicalRigElement,
    pub neg: ClassicalRigElement,
}

impl ClassicalRingElement {
    pub fn from_rig(u: ClassicalRigElement) -> Self {
        let zero = ClassicalRigElement::zero(&u.group);
        ClassicalRingElement { pos: u, neg: zero }
    }

    pub fn add(&self, other: &Self) -> Result<Self, EngineError> {
        Ok(ClassicalRingElement {
            pos: self.pos.add(&other.pos)?,
            neg: self.neg.add(&other.neg)?,
        })
    }

    pub fn neg(&self) -> Self {
        ClassicalRingElement {
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, EngineError> {
        let pos = self.pos.mul(&other.pos)?.add(&self.neg.mul(&other.neg)?)?;
        let neg = self.pos.mul(&other.neg)?.add(&self.neg.mul(&other.pos)?)?;
        Ok(ClassicalRingElement { pos, neg })
    }

    /// The classical additive monoid is cancellative, so cross-addition
    /// decides equality.
    pub fn equal(&self, other: &Self) -> Result<bool, EngineError> {
        Ok(self.pos.add(&other.neg)?.equal(&other.pos.add(&self.neg)?))
    }
}

/// ĩ on ring elements, componentwise on the formal difference.
pub fn iota_ring(c: &ClassicalRingElement) -> Result<RingElement, EngineError> {
    RingElement::new(iota_rig(&c.pos), iota_rig(&c.neg))
}
