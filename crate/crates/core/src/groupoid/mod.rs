//! Finite groupoids, groupoid-sets with structure maps, categorified
//! groupoid-sets, restriction and transitive reduction, and the component
//! decomposition of the categorified Burnside ring.

mod catset;
mod gset;
mod reduce;
mod rig;

pub use catset::{
    groupoid_distributor, groupoid_unitor_phi, groupoid_unitor_psi, include_groupoid_set,
    CatGroupoidSet, GroupoidEmbedded, GroupoidFunctor, GroupoidNatTrans, GroupoidWitness,
};
pub use gset::GroupoidSet;
pub use reduce::{groupoid_weak_equivalent, restrict, TransitiveReduction};
pub use rig::{
    decompose_ring, enumerate_groupoid_instances, groupoid_canonical_form,
    groupoid_classical_class, groupoid_rig_class, groupoid_sqre_partition, DecomposeReport,
    GroupoidClassicalElement, GroupoidRigElement, GroupoidRingElement,
};

use crate::group::FiniteGroup;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("table {table} has length {len}, expected {expected}")]
    WrongTableLength {
        table: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("table {table} entry {value} at {index} not below {bound}")]
    TableOutOfRange {
        table: &'static str,
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("category axiom violated in groupoid: {what} at {witness:?}")]
    CategoryAxiomViolated {
        what: &'static str,
        witness: Vec<usize>,
    },
    #[error("arrow {arrow} has no two-sided inverse under the inv table")]
    BadInverse { arrow: usize },
    #[error("structure map violated at element {element}{}", detail)]
    StructureMapViolated { element: usize, detail: String },
    #[error("action axiom violated: {what} at {witness:?}")]
    ActionAxiomViolated {
        what: &'static str,
        witness: Vec<usize>,
    },
    #[error("operands live over different groupoids")]
    GroupoidMismatch,
    #[error("object/arrow sets do not form a subgroupoid: {reason}")]
    NotSubgroupoid { reason: &'static str },
    #[error("groupoid is not transitive (or empty)")]
    NotTransitive,
    #[error("index {index} out of range for {what} of size {size}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("maps are not equivariant at element {element}, arrow {arrow}")]
    NotEquivariant { element: usize, arrow: usize },
    #[error("functor law violated: {what} at {witness:?}")]
    NotFunctorial {
        what: &'static str,
        witness: Vec<usize>,
    },
    #[error("natural transformation endpoint mismatch at object {object}")]
    EndpointMismatch { object: usize },
    #[error("naturality square violated at arrow {arrow}")]
    NaturalityViolated { arrow: usize },
    #[error("functors do not share domain and codomain")]
    ParallelMismatch,
    #[error("functor endpoints do not match for composition")]
    ComposeMismatch,
}

/// A finite groupoid: a small category with every arrow invertible, stored
/// as explicit tables with the composition sparse on composable pairs.
/// Composition follows the same convention as everywhere else:
/// comp(p,q) = "p after q" with s(p) = t(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    inv: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl FiniteGroupoid {
    pub fn new(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ident: Vec<usize>,
        inv: Vec<usize>,
        comp: BTreeMap<(usize, usize), usize>,
    ) -> Result<Arc<Self>, GroupoidError> {
        let n1 = src.len();
        check_table("tgt", &tgt, n1, n_objects)?;
        check_table("src", &src, n1, n_objects)?;
        check_table("ident", &ident, n_objects, n1)?;
        check_table("inv", &inv, n1, n1)?;
        let gd = FiniteGroupoid {
            n_objects,
            src,
            tgt,
            ident,
            inv,
            comp,
        };
        gd.validate()?;
        Ok(Arc::new(gd))
    }

    fn validate(&self) -> Result<(), GroupoidError> {
        let n1 = self.src.len();
        for p in 0..n1 {
            for q in 0..n1 {
                let composable = self.src[p] == self.tgt[q];
                match self.comp.get(&(p, q)) {
                    Some(&r) if composable => {
                        if r >= n1 {
                            return Err(GroupoidError::TableOutOfRange {
                                table: "comp",
                                index: p,
                                value: r,
                                bound: n1,
                            });
                        }
                        if self.src[r] != self.src[q] || self.tgt[r] != self.tgt[p] {
                            return Err(GroupoidError::CategoryAxiomViolated {
                                what: "composite endpoints",
                                witness: vec![p, q],
                            });
                        }
                    }
                    None if !composable => {}
                    _ => {
                        return Err(GroupoidError::CategoryAxiomViolated {
                            what: "composition domain",
                            witness: vec![p, q],
                        })
                    }
                }
            }
        }
        for x in 0..self.n_objects {
            let i = self.ident[x];
            if self.src[i] != x || self.tgt[i] != x {
                return Err(GroupoidError::CategoryAxiomViolated {
                    what: "identity endpoints",
                    witness: vec![x],
                });
            }
        }
        for f in 0..n1 {
            if self.comp[&(f, self.ident[self.src[f]])] != f
                || self.comp[&(self.ident[self.tgt[f]], f)] != f
            {
                return Err(GroupoidError::CategoryAxiomViolated {
                    what: "unit law",
                    witness: vec![f],
                });
            }
        }
        for (&(p, q), &pq) in &self.comp {
            for r in 0..n1 {
                if self.src[q] != self.tgt[r] {
                    continue;
                }
                let qr = self.comp[&(q, r)];
                if self.comp[&(pq, r)] != self.comp[&(p, qr)] {
                    return Err(GroupoidError::CategoryAxiomViolated {
                        what: "associativity",
                        witness: vec![p, q, r],
                    });
                }
            }
        }
        for f in 0..n1 {
            let g = self.inv[f];
            if self.src[g] != self.tgt[f]
                || self.tgt[g] != self.src[f]
                || self.comp[&(g, f)] != self.ident[self.src[f]]
                || self.comp[&(f, g)] != self.ident[self.tgt[f]]
            {
                return Err(GroupoidError::BadInverse { arrow: f });
            }
        }
        Ok(())
    }

    /// Discrete groupoid: identities only.
    pub fn discrete(n: usize) -> Arc<Self> {
        let ids: Vec<usize> = (0..n).collect();
        let comp = (0..n).map(|i| ((i, i), i)).collect();
        FiniteGroupoid::new(n, ids.clone(), ids.clone(), ids.clone(), ids, comp)
            .expect("discrete groupoid is valid")
    }

    /// Pair groupoid on n objects: exactly one arrow i → j for all i, j.
    pub fn pair(n: usize) -> Arc<Self> {
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        // arrow (i → j) indexed i·n + j
        for i in 0..n {
            for j in 0..n {
                src.push(i);
                tgt.push(j);
            }
        }
        let ident = (0..n).map(|i| i * n + i).collect();
        let inv = (0..n * n).map(|a| (a % n) * n + (a / n)).collect();
        let mut comp = BTreeMap::new();
        for p in 0..n * n {
            for q in 0..n * n {
                if src[p] == tgt[q] {
                    comp.insert((p, q), (src[q]) * n + tgt[p]);
                }
            }
        }
        FiniteGroupoid::new(n, src, tgt, ident, inv, comp).expect("pair groupoid is valid")
    }

    /// One-object groupoid from a finite group.
    pub fn from_group(group: &FiniteGroup) -> Arc<Self> {
        let n = group.order();
        let mut comp = BTreeMap::new();
        // composition is the group product read in right-action order, so
        // that acting by g then h is acting by comp(g,h) = gh
        for p in 0..n {
            for q in 0..n {
                comp.insert((p, q), group.mul(p, q));
            }
        }
        FiniteGroupoid::new(
            1,
            vec![0; n],
            vec![0; n],
            vec![group.identity()],
            (0..n).map(|g| group.inv(g)).collect(),
            comp,
        )
        .expect("one-object groupoid from a group is valid")
    }

    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Arc<FiniteGroupoid> {
        let (oo, oa) = (self.n_objects, self.n_arrows());
        let mut src = self.src.clone();
        src.extend(other.src.iter().map(|&x| x + oo));
        let mut tgt = self.tgt.clone();
        tgt.extend(other.tgt.iter().map(|&x| x + oo));
        let mut ident = self.ident.clone();
        ident.extend(other.ident.iter().map(|&f| f + oa));
        let mut inv = self.inv.clone();
        inv.extend(other.inv.iter().map(|&f| f + oa));
        let mut comp = self.comp.clone();
        for (&(p, q), &r) in &other.comp {
            comp.insert((p + oa, q + oa), r + oa);
        }
        FiniteGroupoid::new(self.n_objects + other.n_objects, src, tgt, ident, inv, comp)
            .expect("disjoint union of valid groupoids is valid")
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn ident(&self, x: usize) -> usize {
        self.ident[x]
    }

    pub fn inv(&self, f: usize) -> usize {
        self.inv[f]
    }

    pub fn src_table(&self) -> &[usize] {
        &self.src
    }

    pub fn tgt_table(&self) -> &[usize] {
        &self.tgt
    }

    pub fn ident_table(&self) -> &[usize] {
        &self.ident
    }

    pub fn inv_table(&self) -> &[usize] {
        &self.inv
    }

    pub fn comp_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.comp
    }

    pub fn compose(&self, p: usize, q: usize) -> Result<usize, GroupoidError> {
        self.comp
            .get(&(p, q))
            .copied()
            .ok_or(GroupoidError::CategoryAxiomViolated {
                what: "composition domain",
                witness: vec![p, q],
            })
    }

    /// Connected components of the object set, by arrow reachability.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = crate::engine::UnionFind::new(self.n_objects);
        for f in 0..self.n_arrows() {
            uf.union(self.src[f], self.tgt[f]);
        }
        uf.blocks()
    }

    pub fn is_transitive(&self) -> bool {
        self.n_objects > 0 && self.connected_components().len() == 1
    }

    /// Loop arrows at an object, ascending.
    pub fn loops_at(&self, a: usize) -> Vec<usize> {
        (0..self.n_arrows())
            .filter(|&f| self.src[f] == a && self.tgt[f] == a)
            .collect()
    }

    /// The isotropy group at an object as a standalone group, together with
    /// the dictionary from group elements to loop arrows.
    pub fn isotropy_group(
        &self,
        a: usize,
    ) -> Result<(Arc<FiniteGroup>, Vec<usize>), GroupoidError> {
        if a >= self.n_objects {
            return Err(GroupoidError::OutOfRange {
                what: "objects",
                index: a,
                size: self.n_objects,
            });
        }
        let loops = self.loops_at(a);
        let index: BTreeMap<usize, usize> =
            loops.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        // right-action order: acting by g then h is acting by comp(g, h)
        let mul = loops
            .iter()
            .map(|&g| loops.iter().map(|&h| index[&self.comp[&(g, h)]]).collect())
            .collect();
        let group = FiniteGroup::from_table(mul).expect("isotropy table is a group");
        Ok((group, loops))
    }

    /// The one-object subgroupoid at an object.
    pub fn one_object_subgroupoid(&self, a: usize) -> Result<Subgroupoid, GroupoidError> {
        if a >= self.n_objects {
            return Err(GroupoidError::OutOfRange {
                what: "objects",
                index: a,
                size: self.n_objects,
            });
        }
        Ok(Subgroupoid {
            objects: vec![a],
            arrows: self.loops_at(a),
        })
    }

    /// The full subgroupoid on an object subset.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> Result<Subgroupoid, GroupoidError> {
        let mut objs = objects.to_vec();
        objs.sort_unstable();
        objs.dedup();
        for &x in &objs {
            if x >= self.n_objects {
                return Err(GroupoidError::OutOfRange {
                    what: "objects",
                    index: x,
                    size: self.n_objects,
                });
            }
        }
        let arrows = (0..self.n_arrows())
            .filter(|&f| {
                objs.binary_search(&self.src[f]).is_ok() && objs.binary_search(&self.tgt[f]).is_ok()
            })
            .collect();
        Ok(Subgroupoid {
            objects: objs,
            arrows,
        })
    }

    /// Checks closure of an explicit pair of subsets.
    pub fn validate_subgroupoid(&self, sub: &Subgroupoid) -> Result<(), GroupoidError> {
        let has_obj = |x: usize| sub.objects.binary_search(&x).is_ok();
        let has_arr = |f: usize| sub.arrows.binary_search(&f).is_ok();
        for &f in &sub.arrows {
            if f >= self.n_arrows() {
                return Err(GroupoidError::NotSubgroupoid {
                    reason: "arrow out of range",
                });
            }
            if !has_obj(self.src[f]) || !has_obj(self.tgt[f]) {
                return Err(GroupoidError::NotSubgroupoid {
                    reason: "arrow endpoints escape the object set",
                });
            }
            if !has_arr(self.inv[f]) {
                return Err(GroupoidError::NotSubgroupoid {
                    reason: "not closed under inverses",
                });
            }
        }
        for &x in &sub.objects {
            if x >= self.n_objects || !has_arr(self.ident[x]) {
                return Err(GroupoidError::NotSubgroupoid {
                    reason: "missing an identity",
                });
            }
        }
        for &p in &sub.arrows {
            for &q in &sub.arrows {
                if self.src[p] == self.tgt[q] && !has_arr(self.comp[&(p, q)]) {
                    return Err(GroupoidError::NotSubgroupoid {
                        reason: "not closed under composition",
                    });
                }
            }
        }
        Ok(())
    }

    /// Extracts a subgroupoid as a standalone groupoid, with index maps
    /// (new → old) for objects and arrows.
    pub fn extract(
        self: &Arc<Self>,
        sub: &Subgroupoid,
    ) -> Result<ExtractedGroupoid, GroupoidError> {
        self.validate_subgroupoid(sub)?;
        let obj_new: BTreeMap<usize, usize> = sub
            .objects
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect();
        let arr_new: BTreeMap<usize, usize> = sub
            .arrows
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i))
            .collect();
        let src = sub.arrows.iter().map(|&f| obj_new[&self.src[f]]).collect();
        let tgt = sub.arrows.iter().map(|&f| obj_new[&self.tgt[f]]).collect();
        let ident = sub
            .objects
            .iter()
            .map(|&x| arr_new[&self.ident[x]])
            .collect();
        let inv = sub.arrows.iter().map(|&f| arr_new[&self.inv[f]]).collect();
        let comp = self
            .comp
            .iter()
            .filter(|((p, q), _)| arr_new.contains_key(p) && arr_new.contains_key(q))
            .map(|(&(p, q), &r)| ((arr_new[&p], arr_new[&q]), arr_new[&r]))
            .collect();
        let gd = FiniteGroupoid::new(sub.objects.len(), src, tgt, ident, inv, comp)?;
        Ok((gd, sub.objects.clone(), sub.arrows.clone()))
    }
}

/// A standalone extracted subgroupoid with its index maps (new → parent).
pub type ExtractedGroupoid = (Arc<FiniteGroupoid>, Vec<usize>, Vec<usize>);

/// An explicit subgroupoid: sorted object and arrow subsets of a parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroupoid {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

fn check_table(
    table: &'static str,
    t: &[usize],
    expected_len: usize,
    bound: usize,
) -> Result<(), GroupoidError> {
    if t.len() != expected_len {
        return Err(GroupoidError::WrongTableLength {
            table,
            len: t.len(),
            expected: expected_len,
        });
    }
    for (index, &value) in t.iter().enumerate() {
        if value >= bound {
            return Err(GroupoidError::TableOutOfRange {
                table,
                index,
                value,
                bound,
            });
        }
    }
    Ok(())
}
