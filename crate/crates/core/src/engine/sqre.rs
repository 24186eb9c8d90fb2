//! The square relation on objects and the orbit-category decomposition.
//!
//! Two objects are square-related when some square (f, g) of the
//! translation double category has both among its four vertices. The
//! generated equivalence joins "same connected component" with "same
//! G-orbit"; its blocks induce the full sub-instances whose disjoint union
//! reconstructs the instance, and no block splits further as a disjoint
//! union of nonempty categorified G-sets.

use super::skeleton::UnionFind;
use super::EngineError;
use crate::catgset::{CatGSet, Embedded};
use std::sync::Arc;

/// One-step relation: true iff some square (f, g) has both a and b among
/// its vertices {s f, (s f)g, t f, (t f)g}.
pub fn sqre_related(x: &CatGSet, a: usize, b: usize) -> Result<bool, EngineError> {
    let n = x.n_objects();
    if a >= n || b >= n {
        return Err(EngineError::OutOfRange {
            index: a.max(b),
            size: n,
        });
    }
    for f in 0..x.n_arrows() {
        for g in x.group().elements() {
            let vertices = [
                x.src(f),
                x.objects().act(x.src(f), g),
                x.tgt(f),
                x.objects().act(x.tgt(f), g),
            ];
            if vertices.contains(&a) && vertices.contains(&b) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Blocks of the generated equivalence, each as a full sub-instance with a
/// representative object (the least of the block).
pub fn sqre_orbit_partition(x: &Arc<CatGSet>) -> Vec<(usize, Embedded)> {
    object_blocks(x)
        .into_iter()
        .map(|block| {
            let rep = block[0];
            let sub = x
                .full_subcategory(&block)
                .expect("blocks are unions of orbits, hence G-stable");
            (rep, sub)
        })
        .collect()
}

/// Object blocks of the generated equivalence relation.
pub fn object_blocks(x: &CatGSet) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(x.n_objects());
    for f in 0..x.n_arrows() {
        uf.union(x.src(f), x.tgt(f));
    }
    for a in 0..x.n_objects() {
        for g in x.group().elements() {
            uf.union(a, x.objects().act(a, g));
        }
    }
    uf.blocks()
}
