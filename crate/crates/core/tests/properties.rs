//! Cross-module invariants checked on sampled and exhaustively generated
//! instances: relabeling invariance, the equivalence-relation laws with
//! witness bookkeeping, monoidal compatibility, rig congruences, and the
//! square-orbit block structure.

use burncat_core::burnside::enumerate::enumerate_instances;
use burncat_core::burnside::{rig_class, RigElement};
use burncat_core::catgset::CatGSet;
use burncat_core::engine::{
    canonical_form, catgset_isomorphic, object_blocks, object_iso_classes, skeletal_reduction,
    weak_equivalent, Budget, WeakEquivWitness,
};
use burncat_core::group::FiniteGroup;
use burncat_core::gset::FinGSet;
use burncat_core::samples::{self, SampleRng};
use proptest::prelude::*;
use std::sync::Arc;

fn budget() -> Budget {
    Budget::default()
}

fn random_permutation(n: usize, rng: &mut SampleRng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i + 1);
        perm.swap(i, j);
    }
    perm
}

fn corpus() -> Vec<Arc<CatGSet>> {
    let mut out: Vec<Arc<CatGSet>> = samples::seven_categories()
        .into_iter()
        .map(|(_, x)| x)
        .collect();
    out.push(samples::walking_iso());
    out.push(samples::c2_no_skeleton());
    out.push(samples::twisted_c2_bundle());
    let c2 = FiniteGroup::cyclic(2);
    let triv = FiniteGroup::trivial();
    for seed in 0..12 {
        out.push(samples::random_instance(&c2, 6, seed));
        out.push(samples::random_instance(&triv, 6, seed + 100));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_form_survives_relabeling(seed in 0u64..5000) {
        let mut rng = SampleRng::new(seed);
        let group = if rng.below(2) == 0 {
            FiniteGroup::trivial()
        } else {
            FiniteGroup::cyclic(2)
        };
        let x = samples::random_instance(&group, 6, seed);
        let obj_perm = random_permutation(x.n_objects(), &mut rng);
        let arr_perm = random_permutation(x.n_arrows(), &mut rng);
        let relabeled = x.relabel(&obj_perm, &arr_perm);
        prop_assert_eq!(canonical_form(&x), canonical_form(&relabeled));
        // equal canonical forms come with an isomorphism witness
        let wit = catgset_isomorphic(&x, &relabeled).unwrap().unwrap();
        wit.validate(&x, &relabeled).unwrap();
    }

    #[test]
    fn rig_class_is_relabeling_invariant(seed in 0u64..5000) {
        let mut rng = SampleRng::new(seed.wrapping_mul(31));
        let x = samples::random_instance(&FiniteGroup::cyclic(2), 5, seed);
        let obj_perm = random_permutation(x.n_objects(), &mut rng);
        let arr_perm = random_permutation(x.n_arrows(), &mut rng);
        prop_assert_eq!(rig_class(&x), rig_class(&x.relabel(&obj_perm, &arr_perm)));
    }

    #[test]
    fn gset_isomorphism_is_an_equivalence(seed in 0u64..5000) {
        let mut rng = SampleRng::new(seed.wrapping_mul(7));
        let g = FiniteGroup::cyclic(2);
        let a = samples::random_gset(&g, 4, &mut rng);
        let perm = random_permutation(a.size(), &mut rng);
        let b = a.relabel(&perm);
        let perm2 = random_permutation(a.size(), &mut rng);
        let c = b.relabel(&perm2);
        // reflexive, symmetric, transitive on a sampled triple
        prop_assert!(a.isomorphic_to(&a).unwrap().is_some());
        prop_assert!(a.isomorphic_to(&b).unwrap().is_some());
        prop_assert!(b.isomorphic_to(&a).unwrap().is_some());
        prop_assert!(a.isomorphic_to(&c).unwrap().is_some());
    }
}

#[test]
fn weak_equivalence_laws_via_witnesses() {
    // reflexivity, symmetry and transitivity realized by witness
    // constructions that re-validate
    let b = budget();
    let triples = [
        (
            samples::walking_iso(),
            samples::point_trivial(),
            samples::walking_iso().relabel(&[1, 0], &[3, 2, 1, 0]),
        ),
        (
            samples::c2_no_skeleton(),
            samples::c2_no_skeleton().relabel(&[1, 0], &[1, 0, 3, 2]),
            samples::c2_no_skeleton(),
        ),
    ];
    for (x, y, z) in triples {
        let wxx = WeakEquivWitness::identity(&x);
        wxx.validate(&x, &x).unwrap();
        let wxy = weak_equivalent(&x, &y, &b).unwrap().expect("equivalent");
        wxy.swap().validate(&y, &x).unwrap();
        let wyz = weak_equivalent(&y, &z, &b).unwrap().expect("equivalent");
        let wxz = WeakEquivWitness::compose(&wxy, &wyz).unwrap();
        wxz.validate(&x, &z).unwrap();
    }
}

#[test]
fn monoidal_compatibility_of_witnesses() {
    // X ~ Y and A ~ B combine to X⊎A ~ Y⊎B and X×A ~ Y×B
    let b = budget();
    let x = samples::walking_iso();
    let y = samples::point_trivial();
    let a = samples::walking_arrow();
    let bb = samples::walking_arrow().relabel(&[1, 0], &[1, 0, 2]);
    let wxy = weak_equivalent(&x, &y, &b).unwrap().unwrap();
    let wab = weak_equivalent(&a, &bb, &b).unwrap().unwrap();
    let wu = WeakEquivWitness::disjoint_union(&wxy, &wab).unwrap();
    wu.validate(
        &x.disjoint_union(&a).unwrap(),
        &y.disjoint_union(&bb).unwrap(),
    )
    .unwrap();
    let wp = WeakEquivWitness::product(&wxy, &wab).unwrap();
    wp.validate(&x.product(&a).unwrap(), &y.product(&bb).unwrap())
        .unwrap();
}

#[test]
fn skeleton_reduction_produces_validating_witnesses() {
    for x in corpus() {
        if let Some((skeletal, witness)) = skeletal_reduction(&x) {
            witness.validate(&x, &skeletal).unwrap();
            // skeletal instances really have no two distinct isomorphic
            // objects
            let classes = object_iso_classes(&skeletal);
            assert!(classes.iter().all(|c| c.len() == 1));
        }
    }
}

#[test]
fn equivariance_of_composition_holds_on_corpus() {
    for x in corpus() {
        let group = x.group();
        for (p, q) in x.composable_pairs() {
            let r = x.compose(p, q).unwrap();
            for g in group.elements() {
                let pg = x.arrows().act(p, g);
                let qg = x.arrows().act(q, g);
                assert_eq!(x.arrows().act(r, g), x.compose(pg, qg).unwrap());
            }
        }
    }
}

#[test]
fn sqre_blocks_are_unions_of_orbits_and_components() {
    for x in corpus() {
        let blocks = object_blocks(&x);
        for block in &blocks {
            // closed under the action
            for &a in block {
                for g in x.group().elements() {
                    assert!(block.binary_search(&x.objects().act(a, g)).is_ok());
                }
            }
            // closed under arrows
            for f in 0..x.n_arrows() {
                let (s, t) = (x.src(f), x.tgt(f));
                assert_eq!(
                    block.binary_search(&s).is_ok(),
                    block.binary_search(&t).is_ok()
                );
            }
        }
    }
}

#[test]
fn rig_operations_are_congruent_on_samples() {
    // representatives of the same class produce equal sums and products
    let b = budget();
    let x = samples::walking_iso();
    let x2 = samples::point_trivial();
    let a = samples::walking_arrow();
    let u = rig_class(&x);
    let u2 = rig_class(&x2);
    let v = rig_class(&a);
    assert!(u.equal(&u2, &b).unwrap());
    assert!(u.add(&v).unwrap().equal(&u2.add(&v).unwrap(), &b).unwrap());
    assert!(u.mul(&v).unwrap().equal(&u2.mul(&v).unwrap(), &b).unwrap());
    // commutativity and associativity on a sampled triple
    let w = rig_class(&samples::span());
    assert!(u.add(&v).unwrap().equal(&v.add(&u).unwrap(), &b).unwrap());
    assert!(u.mul(&v).unwrap().equal(&v.mul(&u).unwrap(), &b).unwrap());
    let left = u.mul(&v.add(&w).unwrap()).unwrap();
    let right = u.mul(&v).unwrap().add(&u.mul(&w).unwrap()).unwrap();
    assert!(left.equal(&right, &b).unwrap());
}

#[test]
fn rig_class_respects_union_and_product_exhaustively_small() {
    let b = budget();
    let one = FiniteGroup::trivial();
    let instances = enumerate_instances(&one, 2).unwrap();
    for x in &instances {
        for y in &instances {
            let direct_sum = rig_class(&x.disjoint_union(y).unwrap());
            let added = rig_class(x).add(&rig_class(y)).unwrap();
            assert!(direct_sum.equal(&added, &b).unwrap());
            let direct_prod = rig_class(&x.product(y).unwrap());
            let mulled = rig_class(x).mul(&rig_class(y)).unwrap();
            assert!(direct_prod.equal(&mulled, &b).unwrap());
        }
    }
}

#[test]
fn zero_and_one_behave() {
    let one_group = FiniteGroup::trivial();
    let b = budget();
    let zero = RigElement::zero(&one_group);
    let one = RigElement::one(&one_group);
    assert!(zero.mul(&one).unwrap().is_zero());
    let u = rig_class(&samples::parallel_pair_plain());
    assert!(u.mul(&one).unwrap().equal(&u, &b).unwrap());
    assert!(u.add(&zero).unwrap().equal(&u, &b).unwrap());
}

/// Independent oracle for equivariant isomorphism: enumerate every pair of
/// bijections and check commutation with all structure and both actions.
fn brute_force_isomorphic(x: &CatGSet, y: &CatGSet) -> bool {
    if x.n_objects() != y.n_objects() || x.n_arrows() != y.n_arrows() {
        return false;
    }
    let perms = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for i in 0..n {
            let mut next = Vec::new();
            for p in &out {
                for slot in 0..=i {
                    let mut q = p.clone();
                    q.insert(slot, i);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    };
    let group = x.group();
    for obj in perms(x.n_objects()) {
        'arr: for arr in perms(x.n_arrows()) {
            for f in 0..x.n_arrows() {
                if y.src(arr[f]) != obj[x.src(f)] || y.tgt(arr[f]) != obj[x.tgt(f)] {
                    continue 'arr;
                }
                for g in group.elements() {
                    if arr[x.arrows().act(f, g)] != y.arrows().act(arr[f], g) {
                        continue 'arr;
                    }
                }
            }
            for a in 0..x.n_objects() {
                if arr[x.ident(a)] != y.ident(obj[a]) {
                    continue 'arr;
                }
                for g in group.elements() {
                    if obj[x.objects().act(a, g)] != y.objects().act(obj[a], g) {
                        continue 'arr;
                    }
                }
            }
            for (p, q) in x.composable_pairs() {
                let r = x.compose(p, q).unwrap();
                if y.comp_table().get(&(arr[p], arr[q])) != Some(&arr[r]) {
                    continue 'arr;
                }
            }
            return true;
        }
    }
    false
}

#[test]
fn canonical_kernel_agrees_with_brute_force_oracle() {
    // dual route: canonical-form equality against full bijection search,
    // exhaustively over all small instances
    let mut families = Vec::new();
    families.push(enumerate_instances(&FiniteGroup::trivial(), 3).unwrap());
    families.push(enumerate_instances(&FiniteGroup::cyclic(2), 2).unwrap());
    // enumerated instances are one per canonical form, so distinct entries
    // must be non-isomorphic and relabelings must come back isomorphic
    for family in &families {
        for (i, x) in family.iter().enumerate() {
            for (j, y) in family.iter().enumerate() {
                let by_kernel = catgset_isomorphic(x, y).unwrap().is_some();
                let by_oracle = brute_force_isomorphic(x, y);
                assert_eq!(by_kernel, by_oracle, "kernel and oracle disagree");
                assert_eq!(by_kernel, i == j, "enumeration emitted duplicates");
            }
        }
        for (k, x) in family.iter().enumerate() {
            let mut rng = SampleRng::new(9000 + k as u64);
            let relabeled = {
                let obj = random_permutation(x.n_objects(), &mut rng);
                let arr = random_permutation(x.n_arrows(), &mut rng);
                x.relabel(&obj, &arr)
            };
            assert!(brute_force_isomorphic(x, &relabeled));
            assert_eq!(canonical_form(x), canonical_form(&relabeled));
        }
    }
}

#[test]
fn skeleton_distributes_over_disjoint_union() {
    let pairs = [
        (samples::walking_iso(), samples::walking_arrow()),
        (samples::walking_iso(), samples::parallel_pair_plain()),
        (
            samples::chain3(),
            samples::walking_iso()
                .disjoint_union(&samples::point_trivial())
                .unwrap(),
        ),
    ];
    for (x, y) in pairs {
        let union = x.disjoint_union(&y).unwrap();
        let skel_of = |z: &std::sync::Arc<CatGSet>| match burncat_core::engine::skeleton(z) {
            burncat_core::engine::SkeletonOutcome::Skeleton(s) => s.skeleton,
            _ => panic!("skeleton exists over the trivial group"),
        };
        let left = skel_of(&union);
        let right = skel_of(&x).disjoint_union(&skel_of(&y)).unwrap();
        assert!(catgset_isomorphic(&left, &right).unwrap().is_some());
    }
}

#[test]
fn canonical_form_handles_symmetric_worst_cases() {
    // fully symmetric instances maximize the relabeling enumeration; the
    // desk-scale sizes stay comfortably fast
    let started = std::time::Instant::now();
    let eight = burncat_core::catgset::include_gset(&FinGSet::trivial(FiniteGroup::trivial(), 8));
    let key = canonical_form(&eight);
    assert!(!key.0.is_empty());
    assert!(
        started.elapsed().as_secs() < 30,
        "symmetric 8-point canonicalization took {:?}",
        started.elapsed()
    );
}

#[test]
fn union_is_strictly_monoidal_and_product_associates_on_tables() {
    let x = samples::walking_arrow();
    let y = samples::walking_iso();
    let z = samples::span();
    // strict associativity and unitality of ⊎ on table representations
    let left = x.disjoint_union(&y).unwrap().disjoint_union(&z).unwrap();
    let right = x.disjoint_union(&y.disjoint_union(&z).unwrap()).unwrap();
    assert_eq!(*left, *right);
    let e = CatGSet::empty(Arc::clone(x.group()));
    assert_eq!(*x.disjoint_union(&e).unwrap(), *x);
    assert_eq!(*e.disjoint_union(&x).unwrap(), *x);
    // the associator for × is the identity on tables
    let pleft = x.product(&y).unwrap().product(&z).unwrap();
    let pright = x.product(&y.product(&z).unwrap()).unwrap();
    assert_eq!(*pleft, *pright);
}

#[test]
fn distributor_revalidates_on_random_triples() {
    let c2 = FiniteGroup::cyclic(2);
    for seed in 0..8u64 {
        let x = samples::random_instance(&c2, 3, 300 + seed);
        let y = samples::random_instance(&c2, 3, 400 + seed);
        let a = samples::random_instance(&c2, 3, 500 + seed);
        let d = burncat_core::catgset::distributor(&x, &y, &a).unwrap();
        assert!(d.revalidate().is_ok());
        let inv = d.invert().expect("distributor is an isomorphism");
        assert!(inv.revalidate().is_ok());
    }
}

#[test]
fn sqre_blocks_are_indecomposable() {
    for x in corpus() {
        for (_, block) in burncat_core::engine::sqre_orbit_partition(&x) {
            let sub_blocks = object_blocks(&block.cat);
            assert!(sub_blocks.len() <= 1, "a block decomposed further");
        }
    }
}

#[test]
fn ring_equality_is_a_congruence_on_samples() {
    use burncat_core::burnside::RingElement;
    let b = budget();
    // equal ring elements presented differently stay equal after + and ·
    let u = RingElement::from_rig(rig_class(&samples::walking_iso()));
    let v = RingElement::from_rig(rig_class(&samples::point_trivial()));
    assert!(u.equal(&v, &b).unwrap());
    let w = RingElement::from_rig(rig_class(&samples::walking_arrow())).neg();
    let lhs = u.add(&w).unwrap();
    let rhs = v.add(&w).unwrap();
    assert!(lhs.equal(&rhs, &b).unwrap());
    let lhs = u.mul(&w).unwrap();
    let rhs = v.mul(&w).unwrap();
    assert!(lhs.equal(&rhs, &b).unwrap());
}
