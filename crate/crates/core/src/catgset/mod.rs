//! Categorified G-sets: internal categories in the category of right G-sets.
//!
//! A value holds two validated G-sets (objects and arrows) together with
//! equivariant source, target, identity and composition tables. Composition
//! is stored sparsely, keyed by composable pairs, and `compose` on a
//! non-composable pair is a distinct error rather than a sentinel.
//!
//! Composition order convention, applied uniformly: `compose(p, q)` means
//! "p after q" — it requires s(p) = t(q), and the result has source s(q)
//! and target t(p).

mod functor;
mod monoidal;

pub use functor::{vertical_compose, InternalFunctor, InternalNatTrans};
pub use monoidal::{
    category_times_gset, distributor, include_gset, lift_functor, lift_nat, unitor_phi, unitor_psi,
};

use crate::group::FiniteGroup;
use crate::gset::{FinGSet, GSetError};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// Which structure table an equivariance failure points at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructMap {
    Src,
    Tgt,
    Ident,
    Comp,
    FunctorObj,
    FunctorArr,
    NatComponent,
}

impl std::fmt::Display for StructMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StructMap::Src => "src",
            StructMap::Tgt => "tgt",
            StructMap::Ident => "ident",
            StructMap::Comp => "comp",
            StructMap::FunctorObj => "f0",
            StructMap::FunctorArr => "f1",
            StructMap::NatComponent => "component",
        };
        f.write_str(name)
    }
}

/// Which commuting diagram of the internal-category definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagram {
    SourceOfIdentity,
    TargetOfIdentity,
    TargetOfComposite,
    SourceOfComposite,
    Associativity,
    LeftUnit,
    RightUnit,
    PreservesSrc,
    PreservesTgt,
    PreservesIdent,
    PreservesComp,
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Diagram::SourceOfIdentity => "s∘ι = id",
            Diagram::TargetOfIdentity => "t∘ι = id",
            Diagram::TargetOfComposite => "t(m(p,q)) = t(p)",
            Diagram::SourceOfComposite => "s(m(p,q)) = s(q)",
            Diagram::Associativity => "associativity",
            Diagram::LeftUnit => "left unit",
            Diagram::RightUnit => "right unit",
            Diagram::PreservesSrc => "functor preserves src",
            Diagram::PreservesTgt => "functor preserves tgt",
            Diagram::PreservesIdent => "functor preserves ident",
            Diagram::PreservesComp => "functor preserves comp",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatError {
    #[error(transparent)]
    GSet(#[from] GSetError),
    #[error("table {table} has length {len}, expected {expected}")]
    WrongTableLength {
        table: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("table {table} entry {value} at index {index} not below {bound}")]
    TableOutOfRange {
        table: &'static str,
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("{map} is not equivariant at element {element}, group element {g}")]
    NotEquivariant {
        map: StructMap,
        element: usize,
        g: usize,
    },
    #[error("category axiom violated: {diagram} at witness {witness:?}")]
    CategoryAxiomViolated {
        diagram: Diagram,
        witness: Vec<usize>,
    },
    #[error("composition table domain mismatch: pair ({p},{q}) {reason}")]
    CompDomainMismatch {
        p: usize,
        q: usize,
        reason: &'static str,
    },
    #[error("functor law violated: {diagram} at witness {witness:?}")]
    NotFunctorial {
        diagram: Diagram,
        witness: Vec<usize>,
    },
    #[error("natural transformation endpoint mismatch at object {object}")]
    EndpointMismatch { object: usize },
    #[error("naturality square violated at arrow {arrow}")]
    NaturalityViolated { arrow: usize },
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("functors do not share domain and codomain")]
    ParallelMismatch,
    #[error("functor endpoints do not match for composition")]
    ComposeMismatch,
    #[error("index {index} out of range for {what} of size {size}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("expected a category over the trivial group")]
    NotPlain,
}

/// A categorified G-set. Immutable after construction; all operations are
/// pure functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatGSet {
    objects: FinGSet,
    arrows: FinGSet,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl CatGSet {
    pub fn new(
        objects: FinGSet,
        arrows: FinGSet,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ident: Vec<usize>,
        comp: BTreeMap<(usize, usize), usize>,
    ) -> Result<Arc<Self>, CatError> {
        if objects.group() != arrows.group() {
            return Err(CatError::GroupMismatch);
        }
        let n0 = objects.size();
        let n1 = arrows.size();
        check_table("src", &src, n1, n0)?;
        check_table("tgt", &tgt, n1, n0)?;
        check_table("ident", &ident, n0, n1)?;
        let cat = CatGSet {
            objects,
            arrows,
            src,
            tgt,
            ident,
            comp,
        };
        cat.validate()?;
        Ok(Arc::new(cat))
    }

    fn validate(&self) -> Result<(), CatError> {
        let group = self.group();
        let n1 = self.n_arrows();

        // comp is defined exactly on composable pairs, with entries in range
        for (&(p, q), &r) in &self.comp {
            if p >= n1 || q >= n1 {
                return Err(CatError::CompDomainMismatch {
                    p,
                    q,
                    reason: "has an arrow index out of range",
                });
            }
            if self.src[p] != self.tgt[q] {
                return Err(CatError::CompDomainMismatch {
                    p,
                    q,
                    reason: "is not composable but has a comp entry",
                });
            }
            if r >= n1 {
                return Err(CatError::TableOutOfRange {
                    table: "comp",
                    index: p,
                    value: r,
                    bound: n1,
                });
            }
        }
        for p in 0..n1 {
            for q in 0..n1 {
                if self.src[p] == self.tgt[q] && !self.comp.contains_key(&(p, q)) {
                    return Err(CatError::CompDomainMismatch {
                        p,
                        q,
                        reason: "is composable but has no comp entry",
                    });
                }
            }
        }

        // equivariance of src, tgt, ident, comp
        for f in 0..n1 {
            for g in group.elements() {
                if self.objects.act(self.src[f], g) != self.src[self.arrows.act(f, g)] {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::Src,
                        element: f,
                        g,
                    });
                }
                if self.objects.act(self.tgt[f], g) != self.tgt[self.arrows.act(f, g)] {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::Tgt,
                        element: f,
                        g,
                    });
                }
            }
        }
        for x in 0..self.n_objects() {
            for g in group.elements() {
                if self.arrows.act(self.ident[x], g) != self.ident[self.objects.act(x, g)] {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::Ident,
                        element: x,
                        g,
                    });
                }
            }
        }
        for (&(p, q), &r) in &self.comp {
            for g in group.elements() {
                let pg = self.arrows.act(p, g);
                let qg = self.arrows.act(q, g);
                let rg = self.arrows.act(r, g);
                if self.comp.get(&(pg, qg)) != Some(&rg) {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::Comp,
                        element: p,
                        g,
                    });
                }
            }
        }

        // s∘ι = t∘ι = id
        for x in 0..self.n_objects() {
            if self.src[self.ident[x]] != x {
                return Err(CatError::CategoryAxiomViolated {
                    diagram: Diagram::SourceOfIdentity,
                    witness: vec![x],
                });
            }
            if self.tgt[self.ident[x]] != x {
                return Err(CatError::CategoryAxiomViolated {
                    diagram: Diagram::TargetOfIdentity,
                    witness: vec![x],
                });
            }
        }

        // endpoints of composites
        for (&(p, q), &r) in &self.comp {
            if self.tgt[r] != self.tgt[p] {
                return Err(CatError::CategoryAxiomViolated {
                    diagram: Diagram::TargetOfComposite,
                    witness: vec![p, q],
                });
            }
            if self.src[r] != self.src[q] {
                return Err(CatError::CategoryAxiomViolated {
                    diagram: Diagram::SourceOfComposite,
                    witness: vec![p, q],
                });
            }
        }

        // unit laws
        for f in 0..n1 {
            if self.comp[&(f, self.ident[self.src[f]])] != f {
                return Err(CatError::CategoryAxiomViolated {
                    diagram: Diagram::RightUnit,
                    witness: vec![f],
                });
            }
            if self.comp[&(self.ident[self.tgt[f]], f)] != f {
                return Err(CatError::CategoryAxiomViolated {
                    diagram: Diagram::LeftUnit,
                    witness: vec![f],
                });
            }
        }

        // associativity on all composable triples
        for p in 0..n1 {
            for q in 0..n1 {
                if self.src[p] != self.tgt[q] {
                    continue;
                }
                let pq = self.comp[&(p, q)];
                for r in 0..n1 {
                    if self.src[q] != self.tgt[r] {
                        continue;
                    }
                    let qr = self.comp[&(q, r)];
                    if self.comp[&(pq, r)] != self.comp[&(p, qr)] {
                        return Err(CatError::CategoryAxiomViolated {
                            diagram: Diagram::Associativity,
                            witness: vec![p, q, r],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.objects.group()
    }

    pub fn objects(&self) -> &FinGSet {
        &self.objects
    }

    pub fn arrows(&self) -> &FinGSet {
        &self.arrows
    }

    pub fn n_objects(&self) -> usize {
        self.objects.size()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.size()
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

    pub fn src_table(&self) -> &[usize] {
        &self.src
    }

    pub fn tgt_table(&self) -> &[usize] {
        &self.tgt
    }

    pub fn ident_table(&self) -> &[usize] {
        &self.ident
    }

    pub fn comp_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.comp
    }

    /// Composite "p after q". Erroring on a non-composable pair catches
    /// construction bugs early.
    pub fn compose(&self, p: usize, q: usize) -> Result<usize, CatError> {
        self.comp
            .get(&(p, q))
            .copied()
            .ok_or(CatError::CompDomainMismatch {
                p,
                q,
                reason: "is not composable",
            })
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.comp.keys().copied()
    }

    pub fn is_identity_arrow(&self, f: usize) -> bool {
        self.ident[self.src[f]] == f
    }

    /// Hom-set X(a,b): arrows with source a and target b, ascending.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.n_arrows())
            .filter(|&f| self.src[f] == a && self.tgt[f] == b)
            .collect()
    }

    /// True iff some h inverts f on both sides, by scanning all candidates.
    pub fn is_isomorphism_arrow(&self, f: usize) -> Result<bool, CatError> {
        Ok(self.inverse_arrow(f)?.is_some())
    }

    pub fn inverse_arrow(&self, f: usize) -> Result<Option<usize>, CatError> {
        if f >= self.n_arrows() {
            return Err(CatError::OutOfRange {
                what: "arrows",
                index: f,
                size: self.n_arrows(),
            });
        }
        let (a, b) = (self.src[f], self.tgt[f]);
        for h in self.hom(b, a) {
            if self.comp[&(h, f)] == self.ident[a] && self.comp[&(f, h)] == self.ident[b] {
                return Ok(Some(h));
            }
        }
        Ok(None)
    }

    /// True iff every arrow is an identity.
    pub fn is_discrete(&self) -> bool {
        (0..self.n_arrows()).all(|f| self.is_identity_arrow(f))
    }

    pub fn is_plain(&self) -> bool {
        self.group().is_trivial()
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Arc<Self> {
        Arc::new(CatGSet {
            objects: FinGSet::empty(Arc::clone(&group)),
            arrows: FinGSet::empty(group),
            src: vec![],
            tgt: vec![],
            ident: vec![],
            comp: BTreeMap::new(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.n_arrows() == 0 && self.n_objects() == 0
    }

    /// Blockwise disjoint union; the second summand is relabeled by offset.
    /// Structure maps act blockwise, so validity transfers from the parts.
    pub fn disjoint_union(&self, other: &CatGSet) -> Result<Arc<CatGSet>, CatError> {
        if self.group() != other.group() {
            return Err(CatError::GroupMismatch);
        }
        let objects = self.objects.disjoint_union(&other.objects)?;
        let arrows = self.arrows.disjoint_union(&other.arrows)?;
        let (oo, oa) = (self.n_objects(), self.n_arrows());
        let mut src = self.src.clone();
        src.extend(other.src.iter().map(|&x| x + oo));
        let mut tgt = self.tgt.clone();
        tgt.extend(other.tgt.iter().map(|&x| x + oo));
        let mut ident = self.ident.clone();
        ident.extend(other.ident.iter().map(|&f| f + oa));
        let mut comp = self.comp.clone();
        for (&(p, q), &r) in &other.comp {
            comp.insert((p + oa, q + oa), r + oa);
        }
        let cat = CatGSet {
            objects,
            arrows,
            src,
            tgt,
            ident,
            comp,
        };
        debug_assert!(cat.validate().is_ok());
        Ok(Arc::new(cat))
    }

    /// The two inclusion functors into a disjoint union, recording the
    /// offset relabeling of each summand so witnesses can be translated
    /// between the union and its parts.
    pub fn summand_inclusions(
        self: &Arc<Self>,
        other: &Arc<CatGSet>,
    ) -> Result<(InternalFunctor, InternalFunctor), CatError> {
        let union = self.disjoint_union(other)?;
        let left = InternalFunctor::new(
            Arc::clone(self),
            Arc::clone(&union),
            (0..self.n_objects()).collect(),
            (0..self.n_arrows()).collect(),
        )?;
        let right = InternalFunctor::new(
            Arc::clone(other),
            Arc::clone(&union),
            (0..other.n_objects())
                .map(|x| x + self.n_objects())
                .collect(),
            (0..other.n_arrows()).map(|f| f + self.n_arrows()).collect(),
        )?;
        Ok((left, right))
    }

    /// Cartesian product with the diagonal action and componentwise
    /// structure maps; pairs are indexed first·|second| + second.
    pub fn product(&self, other: &CatGSet) -> Result<Arc<CatGSet>, CatError> {
        if self.group() != other.group() {
            return Err(CatError::GroupMismatch);
        }
        let objects = self.objects.product(&other.objects)?;
        let arrows = self.arrows.product(&other.arrows)?;
        let (mo, ma) = (other.n_objects(), other.n_arrows());
        let mut src = Vec::with_capacity(arrows.size());
        let mut tgt = Vec::with_capacity(arrows.size());
        for p in 0..self.n_arrows() {
            for q in 0..other.n_arrows() {
                src.push(self.src[p] * mo + other.src[q]);
                tgt.push(self.tgt[p] * mo + other.tgt[q]);
            }
        }
        let mut ident = Vec::with_capacity(objects.size());
        for x in 0..self.n_objects() {
            for y in 0..other.n_objects() {
                ident.push(self.ident[x] * ma + other.ident[y]);
            }
        }
        let mut comp = BTreeMap::new();
        for (&(p1, q1), &r1) in &self.comp {
            for (&(p2, q2), &r2) in &other.comp {
                comp.insert((p1 * ma + p2, q1 * ma + q2), r1 * ma + r2);
            }
        }
        let cat = CatGSet {
            objects,
            arrows,
            src,
            tgt,
            ident,
            comp,
        };
        debug_assert!(cat.validate().is_ok());
        Ok(Arc::new(cat))
    }

    /// Relabels objects by `obj_perm` and arrows by `arr_perm` (old → new).
    pub fn relabel(&self, obj_perm: &[usize], arr_perm: &[usize]) -> Arc<CatGSet> {
        let objects = self.objects.relabel(obj_perm);
        let arrows = self.arrows.relabel(arr_perm);
        let n0 = self.n_objects();
        let n1 = self.n_arrows();
        let mut src = vec![0; n1];
        let mut tgt = vec![0; n1];
        let mut ident = vec![0; n0];
        for f in 0..n1 {
            src[arr_perm[f]] = obj_perm[self.src[f]];
            tgt[arr_perm[f]] = obj_perm[self.tgt[f]];
        }
        for x in 0..n0 {
            ident[obj_perm[x]] = arr_perm[self.ident[x]];
        }
        let comp = self
            .comp
            .iter()
            .map(|(&(p, q), &r)| ((arr_perm[p], arr_perm[q]), arr_perm[r]))
            .collect();
        Arc::new(CatGSet {
            objects,
            arrows,
            src,
            tgt,
            ident,
            comp,
        })
    }

    /// Full categorified G-subset on a G-stable object set. Returns the
    /// sub-instance together with its object and arrow index maps into the
    /// parent (new index → old index).
    pub fn full_subcategory(&self, object_set: &[usize]) -> Result<Embedded, CatError> {
        let group = self.group();
        let mut objs: Vec<usize> = object_set.to_vec();
        objs.sort_unstable();
        objs.dedup();
        for &x in &objs {
            if x >= self.n_objects() {
                return Err(CatError::OutOfRange {
                    what: "objects",
                    index: x,
                    size: self.n_objects(),
                });
            }
        }
        // the object set must be G-stable
        for &x in &objs {
            for g in group.elements() {
                if objs.binary_search(&self.objects.act(x, g)).is_err() {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::Src,
                        element: x,
                        g,
                    });
                }
            }
        }
        let in_objs = |x: usize| objs.binary_search(&x).is_ok();
        let arrs: Vec<usize> = (0..self.n_arrows())
            .filter(|&f| in_objs(self.src[f]) && in_objs(self.tgt[f]))
            .collect();
        let obj_new: BTreeMap<usize, usize> =
            objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let arr_new: BTreeMap<usize, usize> =
            arrs.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let obj_act = objs
            .iter()
            .map(|&x| {
                group
                    .elements()
                    .map(|g| obj_new[&self.objects.act(x, g)])
                    .collect()
            })
            .collect();
        let arr_act = arrs
            .iter()
            .map(|&f| {
                group
                    .elements()
                    .map(|g| arr_new[&self.arrows.act(f, g)])
                    .collect()
            })
            .collect();
        let objects = FinGSet::new(Arc::clone(group), objs.len(), obj_act)?;
        let arrows = FinGSet::new(Arc::clone(group), arrs.len(), arr_act)?;
        let src = arrs.iter().map(|&f| obj_new[&self.src[f]]).collect();
        let tgt = arrs.iter().map(|&f| obj_new[&self.tgt[f]]).collect();
        let ident = objs.iter().map(|&x| arr_new[&self.ident[x]]).collect();
        let comp = self
            .comp
            .iter()
            .filter(|((p, q), _)| arr_new.contains_key(p) && arr_new.contains_key(q))
            .map(|(&(p, q), &r)| ((arr_new[&p], arr_new[&q]), arr_new[&r]))
            .collect();
        let cat = CatGSet::new(objects, arrows, src, tgt, ident, comp)?;
        Ok(Embedded {
            cat,
            obj_map: objs,
            arr_map: arrs,
        })
    }
}

/// A sub-instance together with index maps into its parent
/// (new index → parent index), so witnesses can be translated back.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub cat: Arc<CatGSet>,
    pub obj_map: Vec<usize>,
    pub arr_map: Vec<usize>,
}

fn check_table(
    table: &'static str,
    t: &[usize],
    expected_len: usize,
    bound: usize,
) -> Result<(), CatError> {
    if t.len() != expected_len {
        return Err(CatError::WrongTableLength {
            table,
            len: t.len(),
            expected: expected_len,
        });
    }
    for (index, &value) in t.iter().enumerate() {
        if value >= bound {
            return Err(CatError::TableOutOfRange {
                table,
                index,
                value,
                bound,
            });
        }
    }
    Ok(())
}
