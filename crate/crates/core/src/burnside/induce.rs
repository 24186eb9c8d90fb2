//! Induction along a group homomorphism φ: H → G, turning G-structures
//! into H-structures by composing every action with φ. Carriers and
//! structure tables are unchanged.

use super::classical::{classical_class, representative, ClassicalRigElement};
use super::{rig_class, RigElement};
use crate::catgset::{CatError, CatGSet};
use crate::engine::{decode, EngineError};
use crate::group::GroupHom;
use crate::gset::FinGSet;
use std::sync::Arc;

pub fn induce_gset(phi: &GroupHom, x: &FinGSet) -> Result<FinGSet, CatError> {
    if x.group() != phi.target() {
        return Err(CatError::GroupMismatch);
    }
    let h = phi.source();
    let act = (0..x.size())
        .map(|e| h.elements().map(|k| x.act(e, phi.apply(k))).collect())
        .collect();
    FinGSet::new(Arc::clone(h), x.size(), act).map_err(CatError::GSet)
}

/// The induction functor on categorified G-sets.
pub fn induce(phi: &GroupHom, x: &Arc<CatGSet>) -> Result<Arc<CatGSet>, CatError> {
    let objects = induce_gset(phi, x.objects())?;
    let arrows = induce_gset(phi, x.arrows())?;
    CatGSet::new(
        objects,
        arrows,
        x.src_table().to_vec(),
        x.tgt_table().to_vec(),
        x.ident_table().to_vec(),
        x.comp_table().clone(),
    )
}

/// The induced rig homomorphism, applied blockwise to representatives.
pub fn induce_rig(phi: &GroupHom, u: &RigElement) -> Result<RigElement, EngineError> {
    if u.group() != phi.target() {
        return Err(EngineError::GroupMismatch);
    }
    let mut out = RigElement::zero(phi.source());
    for (key, &mult) in u.classes() {
        let block = decode(&key.0, u.group())?;
        let induced = induce(phi, &block)?;
        let piece = rig_class(&induced);
        for _ in 0..mult {
            out = out.add(&piece)?;
        }
    }
    Ok(out)
}

pub fn induce_classical(
    phi: &GroupHom,
    c: &ClassicalRigElement,
) -> Result<ClassicalRigElement, EngineError> {
    if c.group() != phi.target() {
        return Err(EngineError::GroupMismatch);
    }
    let x = representative(c);
    let induced = induce_gset(phi, &x).map_err(EngineError::Cat)?;
    Ok(classical_class(&induced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::classical::iota_rig;
    use crate::engine::Budget;
    use crate::group::FiniteGroup;
    use crate::samples;

    #[test]
    fn identity_hom_changes_nothing() {
        let g = FiniteGroup::cyclic(2);
        let phi = GroupHom::identity(&g);
        let x = samples::c2_no_skeleton();
        let y = induce(&phi, &x).unwrap();
        assert_eq!(*x, *y);
    }

    #[test]
    fn induction_from_trivial_group_forgets_the_action() {
        let g = FiniteGroup::cyclic(2);
        let phi = GroupHom::from_trivial(&g);
        let x = samples::c2_no_skeleton();
        let y = induce(&phi, &x).unwrap();
        assert!(y.group().is_trivial());
        // table composition oracle: every action row collapses to identity
        for f in 0..y.n_arrows() {
            assert_eq!(y.arrows().act(f, 0), f);
        }
    }

    #[test]
    fn induction_is_monoidal_on_samples() {
        let g = FiniteGroup::cyclic(2);
        let phi = GroupHom::from_trivial(&g);
        let x = samples::c2_no_skeleton();
        let y = crate::catgset::include_gset(&FinGSet::regular(Arc::clone(&g)));
        let lhs_u = induce(&phi, &x.disjoint_union(&y).unwrap()).unwrap();
        let rhs_u = induce(&phi, &x)
            .unwrap()
            .disjoint_union(&induce(&phi, &y).unwrap())
            .unwrap();
        assert_eq!(*lhs_u, *rhs_u);
        let lhs_p = induce(&phi, &x.product(&y).unwrap()).unwrap();
        let rhs_p = induce(&phi, &x)
            .unwrap()
            .product(&induce(&phi, &y).unwrap())
            .unwrap();
        assert_eq!(*lhs_p, *rhs_p);
    }

    #[test]
    fn naturality_square_with_iota() {
        // ĩ∘𝓛(φ) = 𝓛̃(φ)∘ĩ on sampled classical classes
        let g = FiniteGroup::cyclic(2);
        let phi = GroupHom::from_trivial(&g);
        let budget = Budget::default();
        for x in [
            FinGSet::regular(Arc::clone(&g)),
            FinGSet::trivial(Arc::clone(&g), 2),
            FinGSet::regular(Arc::clone(&g))
                .disjoint_union(&FinGSet::point(Arc::clone(&g)))
                .unwrap(),
        ] {
            let c = classical_class(&x);
            let route1 = iota_rig(&induce_classical(&phi, &c).unwrap());
            let route2 = induce_rig(&phi, &iota_rig(&c)).unwrap();
            assert!(route1.equal(&route2, &budget).unwrap());
        }
    }

    #[test]
    fn induced_map_is_a_rig_homomorphism_on_samples() {
        let g = FiniteGroup::cyclic(2);
        let phi = GroupHom::from_trivial(&g);
        let budget = Budget::default();
        let u = rig_class(&samples::c2_no_skeleton());
        let v = rig_class(&crate::catgset::include_gset(&FinGSet::regular(
            Arc::clone(&g),
        )));
        let sum = induce_rig(&phi, &u.add(&v).unwrap()).unwrap();
        let direct_sum = induce_rig(&phi, &u)
            .unwrap()
            .add(&induce_rig(&phi, &v).unwrap())
            .unwrap();
        assert!(sum.equal(&direct_sum, &budget).unwrap());
        let prod = induce_rig(&phi, &u.mul(&v).unwrap()).unwrap();
        let direct_prod = induce_rig(&phi, &u)
            .unwrap()
            .mul(&induce_rig(&phi, &v).unwrap())
            .unwrap();
        assert!(prod.equal(&direct_prod, &budget).unwrap());
    }

    #[test]
    fn injective_hom_induces_injectively_on_samples() {
        // C2 ↪ C4 doubles: distinct C4-classes stay distinct over C2
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let phi = GroupHom::new(Arc::clone(&c2), Arc::clone(&c4), vec![0, 2]).unwrap();
        assert!(phi.is_injective());
        let budget = Budget::default();
        let samples: Vec<RigElement> = [
            crate::catgset::include_gset(&FinGSet::regular(Arc::clone(&c4))),
            crate::catgset::include_gset(&FinGSet::trivial(Arc::clone(&c4), 1)),
            crate::catgset::include_gset(&FinGSet::trivial(Arc::clone(&c4), 2)),
        ]
        .iter()
        .map(rig_class)
        .collect();
        for (i, u) in samples.iter().enumerate() {
            for v in &samples[i + 1..] {
                let iu = induce_rig(&phi, u).unwrap();
                let iv = induce_rig(&phi, v).unwrap();
                assert!(!iu.equal(&iv, &budget).unwrap());
            }
        }
    }
}
