//! Exhaustive enumeration of equivariant internal functors and of
//! componentwise-invertible 2-morphisms, used by the witness search.
//!
//! Functors are enumerated by choosing images of orbit representatives:
//! stabilizer containment makes the equivariant extension well defined, and
//! identity arrows are forced by the object assignment, so only non-identity
//! arrow orbits branch. Candidates are checked against the composition
//! table before being emitted.

use super::EngineError;
use crate::catgset::{CatGSet, InternalFunctor, InternalNatTrans};
use std::sync::Arc;

pub(crate) struct SearchStats {
    pub nodes: usize,
    pub cap: usize,
}

impl SearchStats {
    pub fn new(cap: usize) -> Self {
        SearchStats { nodes: 0, cap }
    }

    fn tick(&mut self) -> Result<(), EngineError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            Err(EngineError::BudgetExceeded {
                limit: self.cap,
                needed: self.nodes,
            })
        } else {
            Ok(())
        }
    }
}

fn orbit_reps(xs: &crate::gset::FinGSet) -> Vec<usize> {
    xs.orbits().into_iter().map(|o| o[0]).collect()
}

fn stab_fixes(xs: &crate::gset::FinGSet, stab: &[usize], e: usize) -> bool {
    stab.iter().all(|&k| xs.act(e, k) == e)
}

/// All equivariant functors X → Y, ordered by the enumeration of orbit-rep
/// image choices (ascending indices).
pub(crate) fn enumerate_functors(
    x: &Arc<CatGSet>,
    y: &Arc<CatGSet>,
    stats: &mut SearchStats,
) -> Result<Vec<InternalFunctor>, EngineError> {
    if x.n_objects() > 0 && y.n_objects() == 0 {
        return Ok(vec![]);
    }
    let obj_reps = orbit_reps(x.objects());
    let obj_stabs: Vec<Vec<usize>> = obj_reps
        .iter()
        .map(|&r| x.objects().stabilizer(r).expect("rep in range"))
        .collect();
    let arr_reps: Vec<usize> = orbit_reps(x.arrows())
        .into_iter()
        .filter(|&f| !x.is_identity_arrow(f))
        .collect();
    let arr_stabs: Vec<Vec<usize>> = arr_reps
        .iter()
        .map(|&r| x.arrows().stabilizer(r).expect("rep in range"))
        .collect();

    let mut out = Vec::new();
    let mut f0 = vec![usize::MAX; x.n_objects()];
    let mut object_stage =
        |out: &mut Vec<InternalFunctor>, stats: &mut SearchStats| -> Result<(), EngineError> {
            assign_objects(
                x,
                y,
                &obj_reps,
                &obj_stabs,
                0,
                &mut f0,
                stats,
                &mut |f0, stats| {
                    let mut f1 = vec![usize::MAX; x.n_arrows()];
                    for a in 0..x.n_objects() {
                        f1[x.ident(a)] = y.ident(f0[a]);
                    }
                    assign_arrows(
                        x,
                        y,
                        &arr_reps,
                        &arr_stabs,
                        0,
                        f0,
                        &mut f1,
                        stats,
                        &mut |f1, _| {
                            if comp_preserved(x, y, f1) {
                                if let Ok(f) = InternalFunctor::new(
                                    Arc::clone(x),
                                    Arc::clone(y),
                                    f0.to_vec(),
                                    f1.to_vec(),
                                ) {
                                    out.push(f);
                                }
                            }
                            Ok(())
                        },
                    )
                },
            )
        };
    object_stage(&mut out, stats)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn assign_objects(
    x: &CatGSet,
    y: &CatGSet,
    reps: &[usize],
    stabs: &[Vec<usize>],
    i: usize,
    f0: &mut Vec<usize>,
    stats: &mut SearchStats,
    then: &mut impl FnMut(&Vec<usize>, &mut SearchStats) -> Result<(), EngineError>,
) -> Result<(), EngineError> {
    if i == reps.len() {
        return then(f0, stats);
    }
    let rep = reps[i];
    for cand in 0..y.n_objects() {
        if !stab_fixes(y.objects(), &stabs[i], cand) {
            continue;
        }
        stats.tick()?;
        for g in x.group().elements() {
            f0[x.objects().act(rep, g)] = y.objects().act(cand, g);
        }
        assign_objects(x, y, reps, stabs, i + 1, f0, stats, then)?;
    }
    for g in x.group().elements() {
        f0[x.objects().act(rep, g)] = usize::MAX;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn assign_arrows(
    x: &CatGSet,
    y: &CatGSet,
    reps: &[usize],
    stabs: &[Vec<usize>],
    i: usize,
    f0: &[usize],
    f1: &mut Vec<usize>,
    stats: &mut SearchStats,
    then: &mut impl FnMut(&Vec<usize>, &mut SearchStats) -> Result<(), EngineError>,
) -> Result<(), EngineError> {
    if i == reps.len() {
        return then(f1, stats);
    }
    let rep = reps[i];
    let (want_s, want_t) = (f0[x.src(rep)], f0[x.tgt(rep)]);
    for cand in 0..y.n_arrows() {
        if y.src(cand) != want_s || y.tgt(cand) != want_t {
            continue;
        }
        if !stab_fixes(y.arrows(), &stabs[i], cand) {
            continue;
        }
        stats.tick()?;
        let saved: Vec<(usize, usize)> = x
            .group()
            .elements()
            .map(|g| {
                let idx = x.arrows().act(rep, g);
                (idx, f1[idx])
            })
            .collect();
        for g in x.group().elements() {
            f1[x.arrows().act(rep, g)] = y.arrows().act(cand, g);
        }
        assign_arrows(x, y, reps, stabs, i + 1, f0, f1, stats, then)?;
        for &(idx, old) in &saved {
            f1[idx] = old;
        }
    }
    Ok(())
}

fn comp_preserved(x: &CatGSet, y: &CatGSet, f1: &[usize]) -> bool {
    x.composable_pairs().all(|(p, q)| {
        let r = x.compose(p, q).expect("composable");
        y.comp_table().get(&(f1[p], f1[q])) == Some(&f1[r])
    })
}

/// Searches for a 2-isomorphism `from → to` between parallel functors:
/// components are chosen per object orbit among stabilizer-fixed invertible
/// arrows with the right endpoints, then the assembled transformation is
/// validated (equivariance, endpoints, naturality) before being returned.
pub(crate) fn find_two_iso(
    from: &InternalFunctor,
    to: &InternalFunctor,
    stats: &mut SearchStats,
) -> Result<Option<InternalNatTrans>, EngineError> {
    let x = from.dom();
    let y = from.cod();
    let reps = orbit_reps(x.objects());
    let mut candidate_sets: Vec<Vec<usize>> = Vec::with_capacity(reps.len());
    for &r in &reps {
        let stab = x.objects().stabilizer(r).expect("rep in range");
        let set: Vec<usize> = (0..y.n_arrows())
            .filter(|&a| {
                y.src(a) == from.apply_obj(r)
                    && y.tgt(a) == to.apply_obj(r)
                    && stab_fixes(y.arrows(), &stab, a)
                    && y.is_isomorphism_arrow(a).expect("in range")
            })
            .collect();
        if set.is_empty() {
            return Ok(None);
        }
        candidate_sets.push(set);
    }
    let mut comp_at = vec![usize::MAX; x.n_objects()];
    let found = pick_components(
        x,
        y,
        from,
        to,
        &reps,
        &candidate_sets,
        0,
        &mut comp_at,
        stats,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn pick_components(
    x: &Arc<CatGSet>,
    y: &Arc<CatGSet>,
    from: &InternalFunctor,
    to: &InternalFunctor,
    reps: &[usize],
    candidates: &[Vec<usize>],
    i: usize,
    comp_at: &mut Vec<usize>,
    stats: &mut SearchStats,
) -> Result<Option<InternalNatTrans>, EngineError> {
    if i == reps.len() {
        return Ok(InternalNatTrans::new(from.clone(), to.clone(), comp_at.clone()).ok());
    }
    let rep = reps[i];
    for &cand in &candidates[i] {
        stats.tick()?;
        for g in x.group().elements() {
            comp_at[x.objects().act(rep, g)] = y.arrows().act(cand, g);
        }
        if let Some(found) =
            pick_components(x, y, from, to, reps, candidates, i + 1, comp_at, stats)?
        {
            return Ok(Some(found));
        }
    }
    for g in x.group().elements() {
        comp_at[x.objects().act(rep, g)] = usize::MAX;
    }
    Ok(None)
}
