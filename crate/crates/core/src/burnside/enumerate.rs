//! Exhaustive generation of categorified G-sets with a bounded arrow
//! carrier, deduplicated by canonical form and clustered into
//! weak-equivalence classes, plus the cancellation sweep.
//!
//! Carriers are generated up to equivariant isomorphism as multisets of
//! orbit types (coset spaces of subgroup conjugacy classes), which already
//! removes the bulk of the redundancy; identity, source and target tables
//! are enumerated equivariantly, and composition tables are chosen on
//! orbit representatives of composable pairs with every axiom checked by
//! the instance validator.

use crate::catgset::CatGSet;
use crate::engine::{canonical_form, weak_equivalent, Budget, CanonicalClass, EngineError};
use crate::group::FiniteGroup;
use crate::gset::FinGSet;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// All G-sets of each size 0..=max_size, one per isomorphism class.
pub fn gsets_up_to_iso(group: &Arc<FiniteGroup>, max_size: usize) -> Vec<FinGSet> {
    let mut orbit_types: Vec<FinGSet> = group
        .subgroups()
        .iter()
        .map(|h| super::classical::coset_gset(group, &group.conjugacy_class_min(h)))
        .collect();
    orbit_types.sort_by_key(FinGSet::size);
    orbit_types.dedup_by(|a, b| a == b);
    let mut out = vec![FinGSet::empty(Arc::clone(group))];
    let mut frontier = vec![(FinGSet::empty(Arc::clone(group)), 0usize)];
    while let Some((x, min_type)) = frontier.pop() {
        for (t, orbit) in orbit_types.iter().enumerate().skip(min_type) {
            if x.size() + orbit.size() > max_size {
                continue;
            }
            let bigger = x.disjoint_union(orbit).expect("same group");
            out.push(bigger.clone());
            frontier.push((bigger, t));
        }
    }
    out
}

/// All valid instances with at most `max_arrows` arrows, one per canonical
/// form, sorted by (arrow count, canonical key).
pub fn enumerate_instances(
    group: &Arc<FiniteGroup>,
    max_arrows: usize,
) -> Result<Vec<Arc<CatGSet>>, EngineError> {
    let mut seen: BTreeMap<CanonicalClass, Arc<CatGSet>> = BTreeMap::new();
    let arrow_carriers = gsets_up_to_iso(group, max_arrows);
    for arrows in &arrow_carriers {
        let object_carriers = gsets_up_to_iso(group, arrows.size());
        for objects in &object_carriers {
            generate_structures(objects, arrows, &mut |cat| {
                let key = canonical_form(&cat);
                seen.entry(key).or_insert(cat);
            })?;
        }
    }
    let mut out: Vec<Arc<CatGSet>> = seen.into_values().collect();
    out.sort_by_key(|c| (c.n_arrows(), canonical_form(c)));
    Ok(out)
}

fn generate_structures(
    objects: &FinGSet,
    arrows: &FinGSet,
    emit: &mut impl FnMut(Arc<CatGSet>),
) -> Result<(), EngineError> {
    let n0 = objects.size();
    let n1 = arrows.size();
    if n0 > n1 || (n0 == 0 && n1 > 0) {
        return Ok(());
    }
    let ident_candidates = objects
        .equivariant_maps(arrows)
        .map_err(crate::catgset::CatError::GSet)?;
    for ident in ident_candidates.iter().filter(|m| is_injective(m, n1)) {
        let maps_to_objects = arrows
            .equivariant_maps(objects)
            .map_err(crate::catgset::CatError::GSet)?;
        let sections: Vec<&Vec<usize>> = maps_to_objects
            .iter()
            .filter(|s| (0..n0).all(|x| s[ident[x]] == x))
            .collect();
        for src in &sections {
            for tgt in &sections {
                enumerate_comps(objects, arrows, src, tgt, ident, emit);
            }
        }
    }
    Ok(())
}

fn is_injective(map: &[usize], bound: usize) -> bool {
    let mut seen = vec![false; bound];
    map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// Enumerates composition tables: unit-law entries are forced, the rest is
/// chosen per orbit of the composable-pair action within the endpoint
/// fiber, and each completed table goes through full validation.
fn enumerate_comps(
    objects: &FinGSet,
    arrows: &FinGSet,
    src: &[usize],
    tgt: &[usize],
    ident: &[usize],
    emit: &mut impl FnMut(Arc<CatGSet>),
) {
    let n1 = arrows.size();
    let group = arrows.group();
    let pairs: Vec<(usize, usize)> = (0..n1)
        .flat_map(|p| (0..n1).map(move |q| (p, q)))
        .filter(|&(p, q)| src[p] == tgt[q])
        .collect();
    let mut forced: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in 0..n1 {
        forced.insert((f, ident[src[f]]), f);
        forced.insert((ident[tgt[f]], f), f);
    }
    // consistency of the forced part
    for (&(p, q), &r) in &forced {
        if src[r] != src[q] || tgt[r] != tgt[p] {
            return;
        }
    }
    // orbit representatives of the remaining pairs under the diagonal action
    let mut free_reps: Vec<(usize, usize)> = Vec::new();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(p, q) in &pairs {
        if forced.contains_key(&(p, q)) || covered.contains(&(p, q)) {
            continue;
        }
        free_reps.push((p, q));
        for g in group.elements() {
            covered.insert((arrows.act(p, g), arrows.act(q, g)));
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
        // assemble the table from forced entries plus equivariant extension
        let mut comp = forced.clone();
        let mut ok = true;
        'build: for (i, &(p, q)) in free_reps.iter().enumerate() {
            let r = fibers[i][choice[i]];
            for g in group.elements() {
                let cell = (arrows.act(p, g), arrows.act(q, g));
                let val = arrows.act(r, g);
                if let Some(&existing) = comp.get(&cell) {
                    if existing != val {
                        ok = false;
                        break 'build;
                    }
                } else {
                    comp.insert(cell, val);
                }
            }
        }
        if ok && comp.len() == pairs.len() {
            if let Ok(cat) = CatGSet::new(
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
        // odometer over the free choices
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

/// A weak-equivalence class discovered by enumeration.
#[derive(Debug, Clone)]
pub struct ClassInfo {
    /// Minimal representative: fewest arrows, then least canonical key.
    pub representative: Arc<CatGSet>,
    pub canonical: CanonicalClass,
    /// Number of canonical forms that fell into this class.
    pub members: usize,
}

/// All weak-equivalence classes with at most `max_arrows` arrows:
/// exhaustive generation, canonical deduplication, then pairwise engine
/// confirmation to merge distinct canonical forms of equivalent instances.
pub fn enumerate_classes(
    group: &Arc<FiniteGroup>,
    max_arrows: usize,
    budget: &Budget,
) -> Result<Vec<ClassInfo>, EngineError> {
    let instances = enumerate_instances(group, max_arrows)?;
    let mut classes: Vec<ClassInfo> = Vec::new();
    'outer: for inst in instances {
        for class in classes.iter_mut() {
            if weak_equivalent(&class.representative, &inst, budget)?.is_some() {
                class.members += 1;
                continue 'outer;
            }
        }
        classes.push(ClassInfo {
            canonical: canonical_form(&inst),
            representative: inst,
            members: 1,
        });
    }
    Ok(classes)
}

/// A cancellation counterexample: X⊎E ~ Y⊎E while X and Y are not
/// equivalent. None are expected under the multiset model; any finding
/// would falsify the model against the engine and must be surfaced.
#[derive(Debug, Clone)]
pub struct CancellationFailure {
    pub x: CanonicalClass,
    pub y: CanonicalClass,
    pub e: CanonicalClass,
}

/// Sweeps all triples of class representatives within the bound and checks
/// that adding E is cancellable.
pub fn test_cancellation(
    group: &Arc<FiniteGroup>,
    bound: usize,
    budget: &Budget,
) -> Result<Vec<CancellationFailure>, EngineError> {
    let classes = enumerate_classes(group, bound, budget)?;
    let mut failures = Vec::new();
    for (i, cx) in classes.iter().enumerate() {
        for cy in classes.iter().skip(i + 1) {
            // distinct class representatives are inequivalent by
            // construction; a counterexample is X⊎E ~ Y⊎E for any E
            for ce in &classes {
                let xe = cx.representative.disjoint_union(&ce.representative)?;
                let ye = cy.representative.disjoint_union(&ce.representative)?;
                if weak_equivalent(&xe, &ye, budget)?.is_some() {
                    failures.push(CancellationFailure {
                        x: cx.canonical.clone(),
                        y: cy.canonical.clone(),
                        e: ce.canonical.clone(),
                    });
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::rig_class;
    use crate::samples;

    #[test]
    fn gset_enumeration_counts() {
        let c2 = FiniteGroup::cyclic(2);
        // sizes 0..=2: empty, point, 2 trivial, regular → 4
        let sets = gsets_up_to_iso(&c2, 2);
        assert_eq!(sets.len(), 4);
        let one = FiniteGroup::trivial();
        // sizes 0..=3 over the trivial group: one per size
        assert_eq!(gsets_up_to_iso(&one, 3).len(), 4);
    }

    #[test]
    fn trivial_group_small_class_counts() {
        let one = FiniteGroup::trivial();
        let budget = Budget::default();
        // n = 0: only the empty instance
        let c0 = enumerate_classes(&one, 0, &budget).unwrap();
        assert_eq!(c0.len(), 1);
        // n = 1: empty and point
        let c1 = enumerate_classes(&one, 1, &budget).unwrap();
        assert_eq!(c1.len(), 2);
        // n = 2: empty, point, two points, and the two order-2 monoids
        let c2 = enumerate_classes(&one, 2, &budget).unwrap();
        assert_eq!(c2.len(), 5);
    }

    #[test]
    fn walking_arrow_appears_at_three_arrows() {
        let one = FiniteGroup::trivial();
        let classes = enumerate_classes(&one, 3, &Budget::default()).unwrap();
        let w = rig_class(&samples::walking_arrow());
        assert!(classes.iter().any(|c| rig_class(&c.representative) == w));
        // strictly more classes than the four classical ones
        assert!(classes.len() > 4);
    }

    #[test]
    fn cancellation_sweep_trivial_group() {
        let one = FiniteGroup::trivial();
        let failures = test_cancellation(&one, 2, &Budget::default()).unwrap();
        assert!(failures.is_empty());
    }

    #[test]
    fn skeleton_and_exhaustive_strategies_agree_on_small_sweep() {
        // whenever both skeletal reductions exist, the skeleton route and
        // the exhaustive witness search must return the same verdict
        let budget = Budget::default();
        for (group, max_arrows) in [(FiniteGroup::trivial(), 4), (FiniteGroup::cyclic(2), 4)] {
            let instances = enumerate_instances(&group, max_arrows).unwrap();
            let reductions: Vec<_> = instances
                .iter()
                .map(crate::engine::skeletal_reduction)
                .collect();
            for (i, x) in instances.iter().enumerate() {
                for (j, y) in instances.iter().enumerate().skip(i) {
                    if reductions[i].is_none() || reductions[j].is_none() {
                        continue;
                    }
                    let by_skeleton = crate::engine::weak_equivalent(x, y, &budget)
                        .unwrap()
                        .is_some();
                    let by_search = crate::engine::exhaustive_witness(x, y, &budget)
                        .unwrap()
                        .is_some();
                    assert_eq!(
                        by_skeleton,
                        by_search,
                        "strategies disagree on instances {i} and {j} over order {}",
                        group.order()
                    );
                }
            }
        }
    }
}
