//! Exact computation with finite categorified group-sets and groupoid-sets.
//!
//! The library builds and validates internal categories in categories of
//! right group- and groupoid-sets, decides weak equivalence with
//! re-checkable witnesses, and computes in the classical and categorified
//! Burnside rigs and rings: comparison maps, induction along group
//! homomorphisms, translation double categories, and the component
//! decomposition over groupoids.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so values may be shared across threads freely.
//!
//! ```
//! use burncat_core::{engine, samples};
//!
//! // the contractible two-object instance collapses to the point
//! let iso = samples::walking_iso();
//! let point = samples::point_trivial();
//! let witness = engine::weak_equivalent(&iso, &point, &engine::Budget::default())
//!     .unwrap()
//!     .expect("weakly equivalent");
//! witness.validate(&iso, &point).unwrap();
//!
//! // the walking arrow is not contractible
//! let arrow = samples::walking_arrow();
//! assert!(engine::weak_equivalent(&arrow, &point, &engine::Budget::default())
//!     .unwrap()
//!     .is_none());
//! ```

pub mod burnside;
pub mod catgset;
pub mod double;
pub mod engine;
pub mod group;
pub mod groupoid;
pub mod gset;
pub mod io;
pub mod samples;

pub use catgset::{CatGSet, InternalFunctor, InternalNatTrans};
pub use engine::{Budget, CanonicalClass, IsoWitness, WeakEquivWitness};
pub use group::{FiniteGroup, GroupHom};
pub use gset::FinGSet;

#[cfg(test)]
mod tests {
    /// All exported values are immutable after construction, so they cross
    /// thread boundaries freely.
    #[test]
    fn values_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::FiniteGroup>();
        assert_send_sync::<crate::FinGSet>();
        assert_send_sync::<crate::CatGSet>();
        assert_send_sync::<crate::InternalFunctor>();
        assert_send_sync::<crate::WeakEquivWitness>();
        assert_send_sync::<crate::burnside::RigElement>();
        assert_send_sync::<crate::groupoid::CatGroupoidSet>();
        assert_send_sync::<crate::groupoid::GroupoidWitness>();
        assert_send_sync::<crate::double::DoubleCategory>();
    }
}
