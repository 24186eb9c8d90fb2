//! The categorified Burnside rig and its Grothendieck ring.
//!
//! A rig element is a multiset of canonical classes of indecomposable
//! blocks (orbit categories). Blocks are normalized onto skeletal
//! representatives whenever an equivariant retraction exists, so the
//! multiset keys are stable across weakly equivalent presentations of the
//! common cases; `equal` additionally clusters residual keys through the
//! weak-equivalence engine, so the quotient semantics is exactly the
//! engine's. The additive monoid of multisets is cancellative by
//! construction; whether the quotient itself is cancellative is probed by
//! the cancellation sweep in `enumerate`.

pub mod classical;
pub mod enumerate;
pub mod induce;

use crate::catgset::CatGSet;
use crate::engine::{
    canonical_form, decode, skeletal_reduction, sqre_orbit_partition, weak_equivalent, Budget,
    CanonicalClass, EngineError,
};
use crate::group::FiniteGroup;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Element of the categorified Burnside rig: a multiset of canonical block
/// classes over a fixed group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigElement {
    group: Arc<FiniteGroup>,
    classes: BTreeMap<CanonicalClass, usize>,
}

impl RigElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        RigElement {
            group: Arc::clone(group),
            classes: BTreeMap::new(),
        }
    }

    /// Multiplicative unit: the class of the discrete point.
    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        rig_class(&crate::catgset::include_gset(&crate::gset::FinGSet::point(
            Arc::clone(group),
        )))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &BTreeMap<CanonicalClass, usize> {
        &self.classes
    }

    pub fn from_classes(
        group: &Arc<FiniteGroup>,
        classes: BTreeMap<CanonicalClass, usize>,
    ) -> Self {
        RigElement {
            group: Arc::clone(group),
            classes,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.classes.values().sum()
    }

    pub fn add(&self, other: &RigElement) -> Result<RigElement, EngineError> {
        if self.group != other.group {
            return Err(EngineError::GroupMismatch);
        }
        let mut classes = self.classes.clone();
        for (k, &m) in &other.classes {
            *classes.entry(k.clone()).or_insert(0) += m;
        }
        Ok(RigElement {
            group: Arc::clone(&self.group),
            classes,
        })
    }

    /// Product: computed on stored representatives blockwise, then
    /// re-decomposed and re-normalized.
    pub fn mul(&self, other: &RigElement) -> Result<RigElement, EngineError> {
        if self.group != other.group {
            return Err(EngineError::GroupMismatch);
        }
        let mut out = RigElement::zero(&self.group);
        for (ka, &ma) in &self.classes {
            let a = decode(&ka.0, &self.group)?;
            for (kb, &mb) in &other.classes {
                let b = decode(&kb.0, &self.group)?;
                let prod = a.product(&b)?;
                let piece = rig_class(&prod);
                for (k, &m) in &piece.classes {
                    *out.classes.entry(k.clone()).or_insert(0) += m * ma * mb;
                }
            }
        }
        Ok(out)
    }

    /// Equality in the rig quotient: multiset equality of keys, with the
    /// residual keys matched up to weak equivalence of their representatives.
    pub fn equal(&self, other: &RigElement, budget: &Budget) -> Result<bool, EngineError> {
        if self.group != other.group {
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
        // cluster all residual keys by engine-decided weak equivalence
        let keys: Vec<&CanonicalClass> = residual_self
            .keys()
            .chain(residual_other.keys())
            .copied()
            .collect();
        let reps: Vec<Arc<CatGSet>> = keys
            .iter()
            .map(|k| decode(&k.0, &self.group))
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
                    && weak_equivalent(&reps[i], &reps[j], budget)?.is_some()
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

/// The class of an instance: canonical forms of its normalized
/// indecomposable blocks.
///
/// ```
/// use burncat_core::burnside::rig_class;
/// use burncat_core::engine::Budget;
/// use burncat_core::samples;
///
/// // weakly equivalent presentations produce equal rig elements
/// let via_iso = rig_class(&samples::walking_iso());
/// let via_point = rig_class(&samples::point_trivial());
/// assert_eq!(via_iso, via_point);
///
/// // the arrow and the parallel pair stay distinct
/// let arrow = rig_class(&samples::walking_arrow());
/// let pair = rig_class(&samples::parallel_pair_plain());
/// assert!(!arrow.equal(&pair, &Budget::default()).unwrap());
/// ```
pub fn rig_class(x: &Arc<CatGSet>) -> RigElement {
    let mut out = RigElement::zero(x.group());
    for (_, block) in sqre_orbit_partition(x) {
        for nb in normalize_block(block.cat) {
            *out.classes.entry(canonical_form(&nb)).or_insert(0) += 1;
        }
    }
    out
}

/// Replaces a block by its skeleton while an equivariant retraction exists,
/// re-decomposing after each step. Blocks without a usable skeleton are
/// kept as they are; `RigElement::equal` reconciles those through the
/// engine.
/// Block normalization reused by the groupoid layer.
pub(crate) fn normalize_block_public(block: &Arc<CatGSet>) -> Vec<Arc<CatGSet>> {
    normalize_block(Arc::clone(block))
}

fn normalize_block(block: Arc<CatGSet>) -> Vec<Arc<CatGSet>> {
    if let Some((skeletal, _)) = skeletal_reduction(&block) {
        if skeletal.n_arrows() < block.n_arrows() {
            return sqre_orbit_partition(&skeletal)
                .into_iter()
                .flat_map(|(_, b)| normalize_block(b.cat))
                .collect();
        }
    }
    vec![block]
}

/// Element of the categorified Burnside ring: a formal difference of rig
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub pos: RigElement,
    pub neg: RigElement,
}

impl RingElement {
    pub fn new(pos: RigElement, neg: RigElement) -> Result<Self, EngineError> {
        if pos.group != neg.group {
            return Err(EngineError::GroupMismatch);
        }
        Ok(RingElement { pos, neg })
    }

    pub fn from_rig(u: RigElement) -> Self {
        let zero = RigElement::zero(&u.group);
        RingElement { pos: u, neg: zero }
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        RingElement {
            pos: RigElement::zero(group),
            neg: RigElement::zero(group),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.pos.group
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, EngineError> {
        Ok(RingElement {
            pos: self.pos.add(&other.pos)?,
            neg: self.neg.add(&other.neg)?,
        })
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement, EngineError> {
        // (a − b)(c − d) = (ac + bd) − (ad + bc)
        let pos = self.pos.mul(&other.pos)?.add(&self.neg.mul(&other.neg)?)?;
        let neg = self.pos.mul(&other.neg)?.add(&self.neg.mul(&other.pos)?)?;
        Ok(RingElement { pos, neg })
    }

    /// Grothendieck equality by direct cross-addition: the multiset model
    /// makes the additive monoid cancellative, so no auxiliary summand is
    /// searched.
    pub fn equal(&self, other: &RingElement, budget: &Budget) -> Result<bool, EngineError> {
        let lhs = self.pos.add(&other.neg)?;
        let rhs = other.pos.add(&self.neg)?;
        lhs.equal(&rhs, budget)
    }
}
