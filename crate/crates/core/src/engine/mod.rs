//! Isomorphism, canonical forms, skeletons and the weak-equivalence
//! decision procedure with re-checkable witnesses.
//!
//! The decision layers: a cheap invariant filter; the skeleton route, used
//! only when both instances retract equivariantly onto their skeletons (weak
//! equivalence between skeletal instances coincides with isomorphism); and
//! the exhaustive search over equivariant functor pairs with
//! componentwise-invertible 2-morphisms, which is a complete decider within
//! its budget. Every positive answer is re-validated before being returned.

mod canon;
mod search;
mod skeleton;
mod sqre;

pub(crate) use canon::enumerate_class_assignments;
pub use canon::{
    canonical_form, canonical_relabeling, catgset_isomorphic, decode, encode, CanonicalClass,
    IsoWitness,
};
pub(crate) use skeleton::UnionFind;
pub use skeleton::{
    object_iso_classes, retraction, skeleton, split_discrete, SkeletalData, SkeletonOutcome,
};
pub use sqre::{object_blocks, sqre_orbit_partition, sqre_related};

use crate::catgset::{CatError, CatGSet, InternalFunctor, InternalNatTrans};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("search budget exceeded: limit {limit}, needed at least {needed}")]
    BudgetExceeded { limit: usize, needed: usize },
    #[error("index {index} out of range for carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error("{0}")]
    Decode(String),
}

/// Bounds for the exhaustive witness search. Instances whose arrow carrier
/// exceeds `max_arrows` are refused rather than searched, and the node cap
/// guards pathological branching below that size.
#[derive(Debug, Clone)]
pub struct Budget {
    pub max_arrows: usize,
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_arrows: 8,
            max_nodes: 4_000_000,
        }
    }
}

impl Budget {
    pub fn with_max_arrows(max_arrows: usize) -> Self {
        Budget {
            max_arrows,
            ..Budget::default()
        }
    }
}

/// A re-checkable weak-equivalence witness: functors both ways and
/// 2-isomorphisms from the two composites to the identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakEquivWitness {
    pub forward: InternalFunctor,
    pub backward: InternalFunctor,
    pub alpha: InternalNatTrans,
    pub beta: InternalNatTrans,
}

impl WeakEquivWitness {
    pub fn identity(x: &Arc<CatGSet>) -> Self {
        let id = InternalFunctor::identity(x);
        WeakEquivWitness {
            forward: id.clone(),
            backward: id.clone(),
            alpha: InternalNatTrans::identity(&id),
            beta: InternalNatTrans::identity(&id),
        }
    }

    /// Witness from an isomorphism: both 2-morphisms are identities.
    pub fn from_iso(
        x: &Arc<CatGSet>,
        y: &Arc<CatGSet>,
        iso: &IsoWitness,
    ) -> Result<Self, CatError> {
        let forward = iso.to_functor(x, y)?;
        let backward = forward.invert().ok_or(CatError::ComposeMismatch)?;
        let alpha = InternalNatTrans::identity(&InternalFunctor::identity(x));
        let beta = InternalNatTrans::identity(&InternalFunctor::identity(y));
        Ok(WeakEquivWitness {
            forward,
            backward,
            alpha,
            beta,
        })
    }

    /// Symmetry: swaps the two directions.
    pub fn swap(&self) -> Self {
        WeakEquivWitness {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Transitivity: combines witnesses X ~ Y and Y ~ Z into X ~ Z. The new
    /// 2-morphisms thread the inner witness through the outer functors.
    pub fn compose(xy: &Self, yz: &Self) -> Result<Self, CatError> {
        let forward = yz.forward.compose(&xy.forward)?;
        let backward = xy.backward.compose(&yz.backward)?;
        let x = xy.forward.dom();
        let z = yz.forward.cod();
        let xcat = x.as_ref();
        let alpha_components: Vec<usize> = (0..x.n_objects())
            .map(|a| {
                let inner = xy
                    .backward
                    .apply_arr(yz.alpha.component(xy.forward.apply_obj(a)));
                xcat.compose(xy.alpha.component(a), inner)
            })
            .collect::<Result<_, _>>()?;
        let alpha = InternalNatTrans::new(
            backward.compose(&forward)?,
            InternalFunctor::identity(x),
            alpha_components,
        )?;
        let zcat = z.as_ref();
        let beta_components: Vec<usize> = (0..z.n_objects())
            .map(|c| {
                let inner = yz
                    .forward
                    .apply_arr(xy.beta.component(yz.backward.apply_obj(c)));
                zcat.compose(yz.beta.component(c), inner)
            })
            .collect::<Result<_, _>>()?;
        let beta = InternalNatTrans::new(
            forward.compose(&backward)?,
            InternalFunctor::identity(z),
            beta_components,
        )?;
        Ok(WeakEquivWitness {
            forward,
            backward,
            alpha,
            beta,
        })
    }

    /// Combined witness for X⊎A ~ Y⊎B from witnesses for the summands.
    pub fn disjoint_union(a: &Self, b: &Self) -> Result<Self, CatError> {
        Ok(WeakEquivWitness {
            forward: a.forward.disjoint_union(&b.forward)?,
            backward: a.backward.disjoint_union(&b.backward)?,
            alpha: a.alpha.disjoint_union(&b.alpha)?,
            beta: a.beta.disjoint_union(&b.beta)?,
        })
    }

    /// Combined witness for X×A ~ Y×B from witnesses for the factors.
    pub fn product(a: &Self, b: &Self) -> Result<Self, CatError> {
        Ok(WeakEquivWitness {
            forward: a.forward.product(&b.forward)?,
            backward: a.backward.product(&b.backward)?,
            alpha: a.alpha.product(&b.alpha)?,
            beta: a.beta.product(&b.beta)?,
        })
    }

    /// Full re-validation against the two instances: endpoints, functor
    /// laws, equivariance, naturality and componentwise invertibility.
    pub fn validate(&self, x: &Arc<CatGSet>, y: &Arc<CatGSet>) -> Result<(), EngineError> {
        let fail = |msg: &str| EngineError::Decode(format!("invalid witness: {msg}"));
        if self.forward.dom() != x || self.forward.cod() != y {
            return Err(fail("forward endpoints"));
        }
        if self.backward.dom() != y || self.backward.cod() != x {
            return Err(fail("backward endpoints"));
        }
        self.forward.revalidate()?;
        self.backward.revalidate()?;
        let round_x = self.backward.compose(&self.forward)?;
        if *self.alpha.from_functor() != round_x {
            return Err(fail("alpha source functor"));
        }
        if *self.alpha.to_functor() != InternalFunctor::identity(x) {
            return Err(fail("alpha target functor"));
        }
        let round_y = self.forward.compose(&self.backward)?;
        if *self.beta.from_functor() != round_y {
            return Err(fail("beta source functor"));
        }
        if *self.beta.to_functor() != InternalFunctor::identity(y) {
            return Err(fail("beta target functor"));
        }
        self.alpha.revalidate()?;
        self.beta.revalidate()?;
        if self.alpha.invert().is_none() {
            return Err(fail("alpha is not componentwise invertible"));
        }
        if self.beta.invert().is_none() {
            return Err(fail("beta is not componentwise invertible"));
        }
        Ok(())
    }
}

/// Cheap invariants preserved by weak equivalence: the number of object
/// isomorphism classes of the underlying category and the multiset of
/// endomorphism-monoid sizes over class representatives.
fn equivalence_invariants(x: &CatGSet) -> (usize, Vec<usize>) {
    let classes = object_iso_classes(x);
    let mut endo_sizes: Vec<usize> = classes.iter().map(|c| x.hom(c[0], c[0]).len()).collect();
    endo_sizes.sort_unstable();
    (classes.len(), endo_sizes)
}

/// Skeletal reduction: the skeleton together with a witness X ~ S, when both
/// the skeleton and its equivariant retraction exist.
pub fn skeletal_reduction(x: &Arc<CatGSet>) -> Option<(Arc<CatGSet>, WeakEquivWitness)> {
    match skeleton(x) {
        SkeletonOutcome::Skeleton(data) => {
            let (r, alpha) = retraction(x, &data)?;
            let beta = InternalNatTrans::identity(&InternalFunctor::identity(&data.skeleton));
            // r ∘ inc is the identity on the skeleton by construction
            debug_assert_eq!(
                r.compose(&data.inclusion).expect("endpoints match"),
                InternalFunctor::identity(&data.skeleton)
            );
            let witness = WeakEquivWitness {
                forward: r,
                backward: data.inclusion.clone(),
                alpha,
                beta,
            };
            Some((data.skeleton, witness))
        }
        SkeletonOutcome::NoEquivariantSkeleton { .. } => None,
    }
}

/// Decides weak equivalence and produces a re-checkable witness.
///
/// Layered strategy: invariant filter; skeletal reduction on each side where
/// available, then isomorphism of the reduced instances when both are
/// skeletal; otherwise exhaustive search over equivariant functor pairs,
/// ordered by image size, with componentwise-invertible 2-morphisms.
pub fn weak_equivalent(
    x: &Arc<CatGSet>,
    y: &Arc<CatGSet>,
    budget: &Budget,
) -> Result<Option<WeakEquivWitness>, EngineError> {
    if x.group() != y.group() {
        return Err(EngineError::GroupMismatch);
    }
    if equivalence_invariants(x) != equivalence_invariants(y) {
        return Ok(None);
    }
    let red_x = skeletal_reduction(x);
    let red_y = skeletal_reduction(y);
    if let (Some((sx, wx)), Some((sy, wy))) = (&red_x, &red_y) {
        // both sides are skeletal now; weak equivalence coincides with
        // isomorphism there
        return match catgset_isomorphic(sx, sy)? {
            Some(iso) => {
                let mid = WeakEquivWitness::from_iso(sx, sy, &iso)?;
                let w =
                    WeakEquivWitness::compose(&WeakEquivWitness::compose(wx, &mid)?, &wy.swap())?;
                w.validate(x, y)?;
                Ok(Some(w))
            }
            None => Ok(None),
        };
    }
    // exhaustive search on the reduced pair
    let (x_red, wit_x) = match &red_x {
        Some((s, w)) => (Arc::clone(s), Some(w.clone())),
        None => (Arc::clone(x), None),
    };
    let (y_red, wit_y) = match &red_y {
        Some((s, w)) => (Arc::clone(s), Some(w.clone())),
        None => (Arc::clone(y), None),
    };
    let size = x_red.n_arrows().max(y_red.n_arrows());
    if size > budget.max_arrows {
        return Err(EngineError::BudgetExceeded {
            limit: budget.max_arrows,
            needed: size,
        });
    }
    match exhaustive_witness(&x_red, &y_red, budget)? {
        None => Ok(None),
        Some(core) => {
            let mut w = core;
            if let Some(wx) = wit_x {
                w = WeakEquivWitness::compose(&wx, &w)?;
            }
            if let Some(wy) = wit_y {
                w = WeakEquivWitness::compose(&w, &wy.swap())?;
            }
            w.validate(x, y)?;
            Ok(Some(w))
        }
    }
}

pub(crate) fn exhaustive_witness(
    x: &Arc<CatGSet>,
    y: &Arc<CatGSet>,
    budget: &Budget,
) -> Result<Option<WeakEquivWitness>, EngineError> {
    let mut stats = search::SearchStats::new(budget.max_nodes);
    let mut forwards = search::enumerate_functors(x, y, &mut stats)?;
    if forwards.is_empty() {
        return Ok(None);
    }
    let mut backwards = search::enumerate_functors(y, x, &mut stats)?;
    if backwards.is_empty() {
        return Ok(None);
    }
    let image_size = |f: &InternalFunctor| {
        let mut objs: Vec<usize> = f.obj_table().to_vec();
        objs.sort_unstable();
        objs.dedup();
        let mut arrs: Vec<usize> = f.arr_table().to_vec();
        arrs.sort_unstable();
        arrs.dedup();
        objs.len() + arrs.len()
    };
    forwards.sort_by_key(image_size);
    backwards.sort_by_key(image_size);
    let id_x = InternalFunctor::identity(x);
    let id_y = InternalFunctor::identity(y);
    for phi in &forwards {
        for psi in &backwards {
            let round_x = psi.compose(phi).expect("endpoints match");
            let alpha = match search::find_two_iso(&round_x, &id_x, &mut stats)? {
                Some(a) => a,
                None => continue,
            };
            let round_y = phi.compose(psi).expect("endpoints match");
            let beta = match search::find_two_iso(&round_y, &id_y, &mut stats)? {
                Some(b) => b,
                None => continue,
            };
            let w = WeakEquivWitness {
                forward: phi.clone(),
                backward: psi.clone(),
                alpha,
                beta,
            };
            w.validate(x, y)?;
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Decides weak equivalence of plain finite categories (trivial group).
/// Plain instances always retract onto their skeletons, so this is the
/// skeleton route specialized to the trivial group.
pub fn plain_equivalent(x: &Arc<CatGSet>, y: &Arc<CatGSet>) -> Result<bool, EngineError> {
    if !x.is_plain() || !y.is_plain() {
        return Err(EngineError::GroupMismatch);
    }
    Ok(weak_equivalent(x, y, &Budget::default())?.is_some())
}
