//! The two monoidal structures on categorified G-sets: unitors for the
//! product, the distributor, the inclusion of ordinary G-sets as discrete
//! instances, and the C×X construction from a plain category and a G-set.

use super::{CatError, CatGSet, InternalFunctor, InternalNatTrans};
use crate::gset::FinGSet;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Discrete categorified G-set on an ordinary G-set: objects = arrows = X,
/// source, target and identity all the identity map, composition the first
/// projection.
pub fn include_gset(x: &FinGSet) -> Arc<CatGSet> {
    let n = x.size();
    let id: Vec<usize> = (0..n).collect();
    let comp: BTreeMap<(usize, usize), usize> = (0..n).map(|p| ((p, p), p)).collect();
    CatGSet::new(x.clone(), x.clone(), id.clone(), id.clone(), id, comp)
        .expect("discrete instance over a validated G-set is valid")
}

/// The unit object for the product: the discrete point.
pub fn point(group: &Arc<crate::group::FiniteGroup>) -> Arc<CatGSet> {
    include_gset(&FinGSet::point(Arc::clone(group)))
}

/// Right unitor Φ(X): X×1 → X, (a,1) ↦ a, together with its inverse.
pub fn unitor_phi(x: &Arc<CatGSet>) -> (InternalFunctor, InternalFunctor) {
    let unit = point(x.group());
    let dom = x.product(&unit).expect("same group");
    let f0: Vec<usize> = (0..x.n_objects()).collect();
    let f1: Vec<usize> = (0..x.n_arrows()).collect();
    let phi = InternalFunctor::new(Arc::clone(&dom), Arc::clone(x), f0.clone(), f1.clone())
        .expect("unitor is an internal functor");
    let inv = InternalFunctor::new(Arc::clone(x), dom, f0, f1)
        .expect("unitor inverse is an internal functor");
    (phi, inv)
}

/// Left unitor Ψ(X): 1×X → X, (1,a) ↦ a, together with its inverse.
pub fn unitor_psi(x: &Arc<CatGSet>) -> (InternalFunctor, InternalFunctor) {
    let unit = point(x.group());
    let dom = unit.product(x).expect("same group");
    let f0: Vec<usize> = (0..x.n_objects()).collect();
    let f1: Vec<usize> = (0..x.n_arrows()).collect();
    let psi = InternalFunctor::new(Arc::clone(&dom), Arc::clone(x), f0.clone(), f1.clone())
        .expect("unitor is an internal functor");
    let inv = InternalFunctor::new(Arc::clone(x), dom, f0, f1)
        .expect("unitor inverse is an internal functor");
    (psi, inv)
}

/// Distributor [X⊎Y]×A → [X×A]⊎[Y×A]. With blockwise-offset indexing the
/// two sides carry identical tables, so the components are identity maps;
/// validation confirms the functor laws rather than assuming them.
pub fn distributor(
    x: &Arc<CatGSet>,
    y: &Arc<CatGSet>,
    a: &Arc<CatGSet>,
) -> Result<InternalFunctor, CatError> {
    let dom = x.disjoint_union(y)?.product(a)?;
    let ya = y.product(a)?;
    let cod = x.product(a)?.disjoint_union(&ya)?;
    let f0: Vec<usize> = (0..dom.n_objects()).collect();
    let f1: Vec<usize> = (0..dom.n_arrows()).collect();
    InternalFunctor::new(dom, cod, f0, f1)
}

/// The categorified G-set C×X from a plain finite category C (a categorified
/// set over the trivial group) and a G-set X. The action moves the X
/// coordinate only; structure maps act on the C coordinate only.
pub fn category_times_gset(c: &Arc<CatGSet>, x: &FinGSet) -> Result<Arc<CatGSet>, CatError> {
    if !c.is_plain() {
        return Err(CatError::NotPlain);
    }
    let group = x.group();
    let n = x.size();
    let obj_act = pair_action(c.n_objects(), x);
    let arr_act = pair_action(c.n_arrows(), x);
    let objects = FinGSet::new(Arc::clone(group), c.n_objects() * n, obj_act)?;
    let arrows = FinGSet::new(Arc::clone(group), c.n_arrows() * n, arr_act)?;
    let mut src = Vec::with_capacity(arrows.size());
    let mut tgt = Vec::with_capacity(arrows.size());
    for f in 0..c.n_arrows() {
        for u in 0..n {
            src.push(c.src(f) * n + u);
            tgt.push(c.tgt(f) * n + u);
        }
    }
    let mut ident = Vec::with_capacity(objects.size());
    for a in 0..c.n_objects() {
        for u in 0..n {
            ident.push(c.ident(a) * n + u);
        }
    }
    let mut comp = BTreeMap::new();
    for (&(p, q), &r) in c.comp_table() {
        for u in 0..n {
            comp.insert((p * n + u, q * n + u), r * n + u);
        }
    }
    CatGSet::new(objects, arrows, src, tgt, ident, comp)
}

fn pair_action(c_size: usize, x: &FinGSet) -> Vec<Vec<usize>> {
    let n = x.size();
    let mut act = Vec::with_capacity(c_size * n);
    for a in 0..c_size {
        for u in 0..n {
            act.push(x.group().elements().map(|g| a * n + x.act(u, g)).collect());
        }
    }
    act
}

/// Lifts a plain functor F: C → D and an equivariant map φ: X → Y to the
/// functor (F,φ): C×X → D×Y.
pub fn lift_functor(
    f: &InternalFunctor,
    x: &FinGSet,
    y: &FinGSet,
    phi: &[usize],
) -> Result<InternalFunctor, CatError> {
    let dom = category_times_gset(f.dom(), x)?;
    let cod = category_times_gset(f.cod(), y)?;
    let (n, m) = (x.size(), y.size());
    let mut f0 = Vec::with_capacity(dom.n_objects());
    for a in 0..f.dom().n_objects() {
        f0.extend(phi.iter().take(n).map(|&pu| f.apply_obj(a) * m + pu));
    }
    let mut f1 = Vec::with_capacity(dom.n_arrows());
    for p in 0..f.dom().n_arrows() {
        f1.extend(phi.iter().take(n).map(|&pu| f.apply_arr(p) * m + pu));
    }
    InternalFunctor::new(dom, cod, f0, f1)
}

/// Lifts a plain natural transformation μ: F → P and an equivariant map φ
/// to the 2-morphism (μ,φ): (F,φ) → (P,φ), with components (μ(a), φ(u)).
pub fn lift_nat(
    mu: &InternalNatTrans,
    x: &FinGSet,
    y: &FinGSet,
    phi: &[usize],
) -> Result<InternalNatTrans, CatError> {
    let from = lift_functor(mu.from_functor(), x, y, phi)?;
    let to = lift_functor(mu.to_functor(), x, y, phi)?;
    let (n, m) = (x.size(), y.size());
    let mut comp_at = Vec::with_capacity(from.dom().n_objects());
    for a in 0..mu.from_functor().dom().n_objects() {
        comp_at.extend(phi.iter().take(n).map(|&pu| mu.component(a) * m + pu));
    }
    InternalNatTrans::new(from, to, comp_at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::samples;

    #[test]
    fn include_of_empty_gset_is_empty() {
        let e = include_gset(&FinGSet::empty(FiniteGroup::trivial()));
        assert!(e.is_empty());
    }

    #[test]
    fn two_morphisms_compose_blockwise_and_componentwise() {
        // (α′⊎β′)(α⊎β) = (α′α)⊎(β′β) and the ×-analogue, with identities
        // combining to identities
        use super::super::{vertical_compose, InternalNatTrans};
        let pt = samples::point_trivial();
        let iso = samples::walking_iso();
        let f = (0..iso.n_arrows())
            .find(|&f| !iso.is_identity_arrow(f) && iso.src(f) == 0)
            .unwrap();
        let const_a = InternalFunctor::new(
            Arc::clone(&pt),
            Arc::clone(&iso),
            vec![0],
            vec![iso.ident(0)],
        )
        .unwrap();
        let const_b = InternalFunctor::new(
            Arc::clone(&pt),
            Arc::clone(&iso),
            vec![1],
            vec![iso.ident(1)],
        )
        .unwrap();
        let alpha = InternalNatTrans::new(const_a.clone(), const_b.clone(), vec![f]).unwrap();
        let alpha_inv = alpha.invert().unwrap();
        let beta = alpha.clone();
        let beta_inv = alpha_inv.clone();
        // disjoint union
        let lhs = vertical_compose(
            &alpha_inv.disjoint_union(&beta_inv).unwrap(),
            &alpha.disjoint_union(&beta).unwrap(),
        )
        .unwrap();
        let rhs = vertical_compose(&alpha_inv, &alpha)
            .unwrap()
            .disjoint_union(&vertical_compose(&beta_inv, &beta).unwrap())
            .unwrap();
        assert_eq!(lhs.components(), rhs.components());
        // product
        let lhs = vertical_compose(
            &alpha_inv.product(&beta_inv).unwrap(),
            &alpha.product(&beta).unwrap(),
        )
        .unwrap();
        let rhs = vertical_compose(&alpha_inv, &alpha)
            .unwrap()
            .product(&vertical_compose(&beta_inv, &beta).unwrap())
            .unwrap();
        assert_eq!(lhs.components(), rhs.components());
        // identities combine to identities
        let id_union = InternalNatTrans::identity(&const_a)
            .disjoint_union(&InternalNatTrans::identity(&const_b))
            .unwrap();
        assert!(id_union.is_identity());
        let id_prod = InternalNatTrans::identity(&const_a)
            .product(&InternalNatTrans::identity(&const_b))
            .unwrap();
        assert!(id_prod.is_identity());
    }

    #[test]
    fn union_with_empty_is_isomorphic_relabeling() {
        let x = samples::walking_arrow();
        let e = CatGSet::empty(Arc::clone(x.group()));
        let u = x.disjoint_union(&e).unwrap();
        assert_eq!(*u, *x);
    }

    #[test]
    fn union_and_product_sizes() {
        let x = samples::walking_arrow();
        let y = samples::walking_iso();
        let u = x.disjoint_union(&y).unwrap();
        assert_eq!(u.n_arrows(), x.n_arrows() + y.n_arrows());
        let p = x.product(&y).unwrap();
        assert_eq!(p.n_arrows(), x.n_arrows() * y.n_arrows());
    }

    #[test]
    fn unitor_round_trip_is_identity() {
        let x = samples::walking_iso();
        let (phi, phi_inv) = unitor_phi(&x);
        assert!(phi.compose(&phi_inv).unwrap().is_identity());
        assert!(phi_inv.compose(&phi).unwrap().is_identity());
        // Φ maps (a,1) to a bijectively
        assert_eq!(phi.obj_table(), &[0, 1]);
        let (psi, psi_inv) = unitor_psi(&x);
        assert!(psi.compose(&psi_inv).unwrap().is_identity());
    }

    #[test]
    fn unitor_naturality_square() {
        // α∘Φ(X) = Φ(Y)∘(α×1) for a sampled morphism α
        let x = samples::walking_iso();
        let y = samples::point_trivial();
        let alpha = InternalFunctor::new(
            Arc::clone(&x),
            Arc::clone(&y),
            vec![0; x.n_objects()],
            vec![0; x.n_arrows()],
        )
        .unwrap();
        let (phi_x, _) = unitor_phi(&x);
        let (phi_y, _) = unitor_phi(&y);
        let unit = point(x.group());
        let alpha_times_one = alpha.product(&InternalFunctor::identity(&unit)).unwrap();
        let lhs = alpha.compose(&phi_x).unwrap();
        let rhs = phi_y.compose(&alpha_times_one).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn distributor_is_bijective_functor() {
        let g = FiniteGroup::cyclic(2);
        let x = include_gset(&FinGSet::regular(Arc::clone(&g)));
        let y = include_gset(&FinGSet::trivial(Arc::clone(&g), 1));
        let a = samples::c2_no_skeleton();
        let d = distributor(&x, &y, &a).unwrap();
        assert!(d.invert().is_some());
        assert_eq!(
            d.dom().n_arrows(),
            (x.n_arrows() + y.n_arrows()) * a.n_arrows()
        );
        // Y = ∅ gives the evident isomorphism X×A → X×A
        let e = CatGSet::empty(Arc::clone(&g));
        let d0 = distributor(&x, &e, &a).unwrap();
        assert!(d0.invert().is_some());
        assert_eq!(d0.dom().n_arrows(), x.n_arrows() * a.n_arrows());
    }

    #[test]
    fn include_is_full_and_faithful() {
        // equivariant maps X → Y correspond exactly to internal functors
        // I(X) → I(Y); enumerate both sides and compare
        let g = FiniteGroup::cyclic(2);
        let x = FinGSet::regular(Arc::clone(&g));
        let y = FinGSet::trivial(Arc::clone(&g), 2)
            .disjoint_union(&FinGSet::regular(Arc::clone(&g)))
            .unwrap();
        let maps = x.equivariant_maps(&y).unwrap();
        let ix = include_gset(&x);
        let iy = include_gset(&y);
        let mut functors = Vec::new();
        for f0 in 0..iy.n_objects().pow(ix.n_objects() as u32) {
            let table: Vec<usize> = (0..ix.n_objects())
                .map(|i| f0 / iy.n_objects().pow(i as u32) % iy.n_objects())
                .collect();
            if let Ok(f) =
                InternalFunctor::new(Arc::clone(&ix), Arc::clone(&iy), table.clone(), table)
            {
                functors.push(f);
            }
        }
        assert_eq!(maps.len(), functors.len());
        for m in &maps {
            assert!(functors.iter().any(|f| f.obj_table() == m.as_slice()));
        }
    }

    #[test]
    fn category_times_gset_shapes() {
        let g = FiniteGroup::cyclic(2);
        let x = FinGSet::regular(Arc::clone(&g));
        let c = samples::walking_arrow_plain();
        let cx = category_times_gset(&c, &x).unwrap();
        assert_eq!(cx.n_arrows(), c.n_arrows() * x.size());
        assert_eq!(cx.n_objects(), c.n_objects() * x.size());
        // C = point reproduces the discrete inclusion up to identical tables
        let pt = samples::point_trivial();
        let px = category_times_gset(&pt, &x).unwrap();
        assert_eq!(*px, *include_gset(&x));
    }

    #[test]
    fn lifted_identities_are_identities() {
        let g = FiniteGroup::cyclic(2);
        let x = FinGSet::regular(Arc::clone(&g));
        let c = samples::walking_arrow_plain();
        let idc = InternalFunctor::identity(&c);
        let phi: Vec<usize> = (0..x.size()).collect();
        let lifted = lift_functor(&idc, &x, &x, &phi).unwrap();
        assert!(lifted.is_identity());
        let id2 = InternalNatTrans::identity(&idc);
        let lifted2 = lift_nat(&id2, &x, &x, &phi).unwrap();
        assert!(lifted2.is_identity());
    }

    #[test]
    fn lifted_nats_compose_componentwise() {
        // (λμ, φ) = (λ, φ)(μ, φ) on a C×X instance
        let c = samples::parallel_pair_plain();
        // functors point → C picking the two parallel arrows as a nat trans
        let pt = samples::point_trivial();
        let fa = InternalFunctor::new(Arc::clone(&pt), Arc::clone(&c), vec![0], vec![c.ident(0)])
            .unwrap();
        let fb = InternalFunctor::new(Arc::clone(&pt), Arc::clone(&c), vec![1], vec![c.ident(1)])
            .unwrap();
        let arrows: Vec<usize> = (0..c.n_arrows())
            .filter(|&f| !c.is_identity_arrow(f))
            .collect();
        let mu = InternalNatTrans::new(fa.clone(), fb.clone(), vec![arrows[0]]).unwrap();
        let idb = InternalNatTrans::identity(&fb);
        let lam_mu = super::super::vertical_compose(&idb, &mu).unwrap();
        let g = FiniteGroup::cyclic(2);
        let x = FinGSet::regular(Arc::clone(&g));
        let phi: Vec<usize> = (0..x.size()).collect();
        let lhs = lift_nat(&lam_mu, &x, &x, &phi).unwrap();
        let rhs = super::super::vertical_compose(
            &lift_nat(&idb, &x, &x, &phi).unwrap(),
            &lift_nat(&mu, &x, &x, &phi).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs.components(), rhs.components());
    }
}
