//! Skeletons of categorified G-sets and the discrete/non-discrete split.
//!
//! A skeletal object choice must be a G-stable set meeting every
//! isomorphism class of objects exactly once. Object orbits sit over orbits
//! of isomorphism classes with constant intersection multiplicity, so a
//! choice exists exactly when every class-orbit carries some object orbit of
//! multiplicity one; otherwise any isomorphism-dense G-stable set wholly
//! contains an orbit with two distinct isomorphic objects, and that orbit is
//! returned as the witness.

use super::canon::canonical_relabeling;
use crate::catgset::{CatGSet, Embedded, InternalFunctor, InternalNatTrans};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A computed skeleton: the sub-instance, its index maps into the parent,
/// and the validated inclusion functor.
#[derive(Debug, Clone)]
pub struct SkeletalData {
    pub skeleton: Arc<CatGSet>,
    pub obj_map: Vec<usize>,
    pub arr_map: Vec<usize>,
    pub inclusion: InternalFunctor,
}

#[derive(Debug, Clone)]
pub enum SkeletonOutcome {
    Skeleton(SkeletalData),
    /// An object orbit all of whose sibling orbits over the same class-orbit
    /// meet some isomorphism class at least twice.
    NoEquivariantSkeleton {
        orbit: Vec<usize>,
    },
}

/// Partition of objects into isomorphism classes of the underlying
/// category, each block sorted, blocks ordered by least element.
pub fn object_iso_classes(x: &CatGSet) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(x.n_objects());
    for f in 0..x.n_arrows() {
        if x.is_isomorphism_arrow(f).expect("in range") {
            uf.union(x.src(f), x.tgt(f));
        }
    }
    uf.blocks()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }

    /// Blocks sorted internally, ordered by least element.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }
}

/// Computes a skeleton when a G-stable skeletal object set exists, choosing
/// among valid orbit families the one least in canonical label order;
/// otherwise returns the witness orbit blocking every choice.
pub fn skeleton(x: &Arc<CatGSet>) -> SkeletonOutcome {
    let classes = object_iso_classes(x);
    let mut class_of = vec![0; x.n_objects()];
    for (ci, block) in classes.iter().enumerate() {
        for &a in block {
            class_of[a] = ci;
        }
    }
    // orbits of isomorphism classes under the object action
    let n_classes = classes.len();
    let mut class_orbit = vec![usize::MAX; n_classes];
    let mut next_orbit = 0;
    for c in 0..n_classes {
        if class_orbit[c] != usize::MAX {
            continue;
        }
        let mut stack = vec![c];
        class_orbit[c] = next_orbit;
        while let Some(d) = stack.pop() {
            let rep = classes[d][0];
            for g in x.group().elements() {
                let e = class_of[x.objects().act(rep, g)];
                if class_orbit[e] == usize::MAX {
                    class_orbit[e] = next_orbit;
                    stack.push(e);
                }
            }
        }
        next_orbit += 1;
    }
    // object orbits with their class-orbit and multiplicity
    let orbits = x.objects().orbits();
    let mult = |orbit: &[usize]| -> usize {
        let c = class_of[orbit[0]];
        orbit.iter().filter(|&&a| class_of[a] == c).count()
    };
    let canon_obj = if x.n_objects() > 0 {
        canonical_relabeling(x).0
    } else {
        vec![]
    };
    let orbit_canon_key = |orbit: &[usize]| -> Vec<usize> {
        let mut k: Vec<usize> = orbit.iter().map(|&a| canon_obj[a]).collect();
        k.sort_unstable();
        k
    };
    let mut chosen: Vec<Option<&Vec<usize>>> = vec![None; next_orbit];
    let mut blocked: Vec<Option<&Vec<usize>>> = vec![None; next_orbit];
    for orbit in &orbits {
        let ko = class_orbit[class_of[orbit[0]]];
        if mult(orbit) == 1 {
            let better = match chosen[ko] {
                None => true,
                Some(cur) => orbit_canon_key(orbit) < orbit_canon_key(cur),
            };
            if better {
                chosen[ko] = Some(orbit);
            }
        } else if blocked[ko].is_none() {
            blocked[ko] = Some(orbit);
        }
    }
    for ko in 0..next_orbit {
        if chosen[ko].is_none() {
            let orbit = blocked[ko].expect("class-orbit is covered by some object orbit");
            return SkeletonOutcome::NoEquivariantSkeleton {
                orbit: orbit.clone(),
            };
        }
    }
    let mut object_set: Vec<usize> = chosen
        .iter()
        .flat_map(|o| o.expect("checked above").iter().copied())
        .collect();
    object_set.sort_unstable();
    let Embedded {
        cat,
        obj_map,
        arr_map,
    } = x
        .full_subcategory(&object_set)
        .expect("orbit union is G-stable");
    let inclusion = InternalFunctor::new(
        Arc::clone(&cat),
        Arc::clone(x),
        obj_map.clone(),
        arr_map.clone(),
    )
    .expect("full subcategory inclusion is an internal functor");
    SkeletonOutcome::Skeleton(SkeletalData {
        skeleton: cat,
        obj_map,
        arr_map,
        inclusion,
    })
}

/// Attempts the equivariant retraction r: X → S with a 2-isomorphism
/// α: inc∘r → Id. The connecting isomorphisms θ_x: x → r(x) are chosen per
/// object orbit and must be fixed by the orbit representative's stabilizer;
/// without such a fixed choice the skeleton inclusion admits no equivariant
/// quasi-inverse and `None` is returned.
pub fn retraction(
    x: &Arc<CatGSet>,
    skel: &SkeletalData,
) -> Option<(InternalFunctor, InternalNatTrans)> {
    let classes = object_iso_classes(x);
    let mut class_of = vec![0; x.n_objects()];
    for (ci, block) in classes.iter().enumerate() {
        for &a in block {
            class_of[a] = ci;
        }
    }
    // skeleton object representing each class (parent indices)
    let mut class_rep = vec![usize::MAX; classes.len()];
    for &s in &skel.obj_map {
        class_rep[class_of[s]] = s;
    }
    // equivariant family θ_x : x → class_rep[class(x)]
    let mut theta = vec![usize::MAX; x.n_objects()];
    for orbit in x.objects().orbits() {
        let rep = orbit[0];
        let target = class_rep[class_of[rep]];
        let stab = x.objects().stabilizer(rep).expect("in range");
        let candidate = if rep == target {
            Some(x.ident(rep))
        } else {
            x.hom(rep, target).into_iter().find(|&f| {
                x.is_isomorphism_arrow(f).expect("in range")
                    && stab.iter().all(|&k| x.arrows().act(f, k) == f)
            })
        };
        let theta_rep = candidate?;
        for g in x.group().elements() {
            theta[x.objects().act(rep, g)] = x.arrows().act(theta_rep, g);
        }
    }
    // r0 into skeleton indices
    let obj_index: BTreeMap<usize, usize> = skel
        .obj_map
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let arr_index: BTreeMap<usize, usize> = skel
        .arr_map
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let r0: Vec<usize> = (0..x.n_objects())
        .map(|a| obj_index[&class_rep[class_of[a]]])
        .collect();
    let mut r1 = Vec::with_capacity(x.n_arrows());
    for f in 0..x.n_arrows() {
        let (a, b) = (x.src(f), x.tgt(f));
        let theta_a_inv = x
            .inverse_arrow(theta[a])
            .expect("theta in range")
            .expect("theta is an isomorphism");
        let image = x
            .compose(theta[b], x.compose(f, theta_a_inv).expect("composable"))
            .expect("composable");
        r1.push(arr_index[&image]);
    }
    let r = InternalFunctor::new(Arc::clone(x), Arc::clone(&skel.skeleton), r0, r1).ok()?;
    let inc_r = skel.inclusion.compose(&r).expect("endpoints match");
    let alpha_components: Vec<usize> = (0..x.n_objects())
        .map(|a| {
            x.inverse_arrow(theta[a])
                .expect("in range")
                .expect("isomorphism")
        })
        .collect();
    let alpha =
        InternalNatTrans::new(inc_r, InternalFunctor::identity(x), alpha_components).ok()?;
    Some((r, alpha))
}

/// Splits X into the union of connected components whose skeleton is
/// discrete and the rest. A component has discrete skeleton exactly when
/// all its arrows are isomorphisms and every endomorphism monoid is trivial.
pub fn split_discrete(x: &Arc<CatGSet>) -> (Embedded, Embedded) {
    let n = x.n_objects();
    let mut uf = UnionFind::new(n);
    for f in 0..x.n_arrows() {
        uf.union(x.src(f), x.tgt(f));
    }
    let mut discrete_root: BTreeMap<usize, bool> = BTreeMap::new();
    for a in 0..n {
        let r = uf.find(a);
        let entry = discrete_root.entry(r).or_insert(true);
        if *entry && x.hom(a, a).len() != 1 {
            *entry = false;
        }
    }
    for f in 0..x.n_arrows() {
        let r = uf.find(x.src(f));
        let entry = discrete_root.entry(r).or_insert(true);
        if *entry && !x.is_isomorphism_arrow(f).expect("in range") {
            *entry = false;
        }
    }
    let d_objects: Vec<usize> = (0..n).filter(|&a| discrete_root[&uf.find(a)]).collect();
    let nd_objects: Vec<usize> = (0..n).filter(|&a| !discrete_root[&uf.find(a)]).collect();
    let d = x
        .full_subcategory(&d_objects)
        .expect("component unions are G-stable");
    let nd = x
        .full_subcategory(&nd_objects)
        .expect("component unions are G-stable");
    (d, nd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn discrete_instance_is_its_own_skeleton() {
        let x = crate::catgset::include_gset(&crate::gset::FinGSet::trivial(
            crate::group::FiniteGroup::trivial(),
            3,
        ));
        match skeleton(&x) {
            SkeletonOutcome::Skeleton(s) => {
                assert_eq!(s.skeleton.n_objects(), 3);
                assert_eq!(s.skeleton.n_arrows(), 3);
            }
            _ => panic!("discrete instance has a skeleton"),
        }
    }

    #[test]
    fn walking_iso_skeleton_is_a_point() {
        let x = samples::walking_iso();
        match skeleton(&x) {
            SkeletonOutcome::Skeleton(s) => {
                assert_eq!(s.skeleton.n_objects(), 1);
                assert_eq!(s.skeleton.n_arrows(), 1);
                let (r, alpha) = retraction(&x, &s).expect("trivial group always retracts");
                assert!(r.revalidate().is_ok());
                assert!(alpha.invert().is_some());
            }
            _ => panic!("walking isomorphism has a skeleton"),
        }
    }

    #[test]
    fn c2_instance_has_no_equivariant_skeleton() {
        let x = samples::c2_no_skeleton();
        match skeleton(&x) {
            SkeletonOutcome::NoEquivariantSkeleton { orbit } => {
                assert_eq!(orbit, vec![0, 1]);
                // exhaustive re-check over the nonempty G-stable object
                // subsets: only the full orbit is stable, and it contains two
                // distinct isomorphic objects
                let classes = object_iso_classes(&x);
                assert_eq!(classes.len(), 1);
            }
            _ => panic!("expected no equivariant skeleton"),
        }
    }

    #[test]
    fn twisted_bundle_skeleton_exists_but_retraction_fails() {
        let x = samples::twisted_c2_bundle();
        match skeleton(&x) {
            SkeletonOutcome::Skeleton(s) => {
                assert_eq!(s.skeleton.n_objects(), 1);
                assert!(retraction(&x, &s).is_none());
            }
            _ => panic!("twisted bundle has G-stable skeletal object sets"),
        }
    }

    #[test]
    fn split_discrete_cases() {
        let discrete = crate::catgset::include_gset(&crate::gset::FinGSet::trivial(
            crate::group::FiniteGroup::trivial(),
            2,
        ));
        let (d, nd) = split_discrete(&discrete);
        assert_eq!(d.cat.n_objects(), 2);
        assert!(nd.cat.is_empty());

        let arrow = samples::walking_arrow();
        let (d, nd) = split_discrete(&arrow);
        assert!(d.cat.is_empty());
        assert_eq!(nd.cat.n_arrows(), 3);

        let iso = samples::walking_iso();
        let (d, nd) = split_discrete(&iso);
        assert_eq!(d.cat.n_arrows(), 4);
        assert!(nd.cat.is_empty());

        // the twisted bundle is connected with nontrivial endomorphisms
        let tw = samples::twisted_c2_bundle();
        let (d, nd) = split_discrete(&tw);
        assert!(d.cat.is_empty());
        assert_eq!(nd.cat.n_arrows(), 8);
    }
}
