//! Categorified groupoid-sets: internal categories in the category of
//! right groupoid-sets, with internal functors, natural transformations,
//! and the disjoint-union and fibre-product monoidal structures.

use super::gset::GroupoidSet;
use super::{FiniteGroupoid, GroupoidError};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatGroupoidSet {
    objects: GroupoidSet,
    arrows: GroupoidSet,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl CatGroupoidSet {
    pub fn new(
        objects: GroupoidSet,
        arrows: GroupoidSet,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ident: Vec<usize>,
        comp: BTreeMap<(usize, usize), usize>,
    ) -> Result<Arc<Self>, GroupoidError> {
        if objects.groupoid() != arrows.groupoid() {
            return Err(GroupoidError::GroupoidMismatch);
        }
        check_map("src", &src, arrows.size(), objects.size())?;
        check_map("tgt", &tgt, arrows.size(), objects.size())?;
        check_map("ident", &ident, objects.size(), arrows.size())?;
        let cat = CatGroupoidSet {
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

    fn validate(&self) -> Result<(), GroupoidError> {
        let n1 = self.arrows.size();
        // structure maps must live over the structure maps of the carriers
        for f in 0..n1 {
            if self.objects.sigma(self.src[f]) != self.arrows.sigma(f) {
                return Err(GroupoidError::StructureMapViolated {
                    element: f,
                    detail: ": sigma(src f) differs from sigma(f)".into(),
                });
            }
            if self.objects.sigma(self.tgt[f]) != self.arrows.sigma(f) {
                return Err(GroupoidError::StructureMapViolated {
                    element: f,
                    detail: ": sigma(tgt f) differs from sigma(f)".into(),
                });
            }
        }
        for x in 0..self.objects.size() {
            if self.arrows.sigma(self.ident[x]) != self.objects.sigma(x) {
                return Err(GroupoidError::StructureMapViolated {
                    element: x,
                    detail: ": sigma(ident x) differs from sigma(x)".into(),
                });
            }
        }
        // equivariance wherever the action is defined
        for (&(f, g), &fg) in self.arrows.act_table() {
            if self.objects.act(self.src[f], g)? != self.src[fg] {
                return Err(GroupoidError::NotEquivariant {
                    element: f,
                    arrow: g,
                });
            }
            if self.objects.act(self.tgt[f], g)? != self.tgt[fg] {
                return Err(GroupoidError::NotEquivariant {
                    element: f,
                    arrow: g,
                });
            }
        }
        for (&(x, g), &xg) in self.objects.act_table() {
            if self.arrows.act(self.ident[x], g)? != self.ident[xg] {
                return Err(GroupoidError::NotEquivariant {
                    element: x,
                    arrow: g,
                });
            }
        }
        // comp domain, endpoints, units, associativity
        for (&(p, q), &r) in &self.comp {
            if p >= n1 || q >= n1 || r >= n1 || self.src[p] != self.tgt[q] {
                return Err(GroupoidError::CategoryAxiomViolated {
                    what: "composition domain",
                    witness: vec![p, q],
                });
            }
            if self.tgt[r] != self.tgt[p] || self.src[r] != self.src[q] {
                return Err(GroupoidError::CategoryAxiomViolated {
                    what: "composite endpoints",
                    witness: vec![p, q],
                });
            }
        }
        for p in 0..n1 {
            for q in 0..n1 {
                if self.src[p] == self.tgt[q] && !self.comp.contains_key(&(p, q)) {
                    return Err(GroupoidError::CategoryAxiomViolated {
                        what: "composition missing",
                        witness: vec![p, q],
                    });
                }
            }
        }
        for x in 0..self.objects.size() {
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
        // equivariance of composition: (p∘q)·g = (p·g)∘(q·g)
        for (&(p, q), &r) in &self.comp {
            for g in 0..self.groupoid().n_arrows() {
                if self.arrows.sigma(p) != self.groupoid().tgt(g) {
                    continue;
                }
                let pg = self.arrows.act(p, g)?;
                let qg = self.arrows.act(q, g)?;
                let rg = self.arrows.act(r, g)?;
                if self.comp.get(&(pg, qg)) != Some(&rg) {
                    return Err(GroupoidError::NotEquivariant {
                        element: p,
                        arrow: g,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        self.objects.groupoid()
    }

    pub fn objects(&self) -> &GroupoidSet {
        &self.objects
    }

    pub fn arrows(&self) -> &GroupoidSet {
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

    pub fn compose(&self, p: usize, q: usize) -> Result<usize, GroupoidError> {
        self.comp
            .get(&(p, q))
            .copied()
            .ok_or(GroupoidError::CategoryAxiomViolated {
                what: "composition applied off its domain",
                witness: vec![p, q],
            })
    }

    pub fn is_identity_arrow(&self, f: usize) -> bool {
        self.ident[self.src[f]] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.n_arrows())
            .filter(|&f| self.src[f] == a && self.tgt[f] == b)
            .collect()
    }

    pub fn inverse_arrow(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src[f], self.tgt[f]);
        self.hom(b, a)
            .into_iter()
            .find(|&h| self.comp[&(h, f)] == self.ident[a] && self.comp[&(f, h)] == self.ident[b])
    }

    pub fn empty(groupoid: &Arc<FiniteGroupoid>) -> Arc<Self> {
        Arc::new(CatGroupoidSet {
            objects: GroupoidSet::empty(Arc::clone(groupoid)),
            arrows: GroupoidSet::empty(Arc::clone(groupoid)),
            src: vec![],
            tgt: vec![],
            ident: vec![],
            comp: BTreeMap::new(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.n_objects() == 0 && self.n_arrows() == 0
    }

    /// The unit for the fibre product: the discrete instance on (𝓖0, id).
    pub fn unit(groupoid: &Arc<FiniteGroupoid>) -> Arc<Self> {
        include_groupoid_set(&GroupoidSet::unit(groupoid))
    }

    pub fn disjoint_union(&self, other: &CatGroupoidSet) -> Result<Arc<Self>, GroupoidError> {
        if self.groupoid() != other.groupoid() {
            return Err(GroupoidError::GroupoidMismatch);
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
        CatGroupoidSet::new(objects, arrows, src, tgt, ident, comp)
    }

    /// Fibre product over the groupoid objects, componentwise structure.
    pub fn fibre_product(&self, other: &CatGroupoidSet) -> Result<Arc<Self>, GroupoidError> {
        if self.groupoid() != other.groupoid() {
            return Err(GroupoidError::GroupoidMismatch);
        }
        let objects = self.objects.fibre_product(&other.objects)?;
        let arrows = self.arrows.fibre_product(&other.arrows)?;
        let obj_pairs = fibre_pairs(&self.objects, &other.objects);
        let arr_pairs = fibre_pairs(&self.arrows, &other.arrows);
        let obj_index: BTreeMap<(usize, usize), usize> =
            obj_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let arr_index: BTreeMap<(usize, usize), usize> =
            arr_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let src = arr_pairs
            .iter()
            .map(|&(p, q)| obj_index[&(self.src[p], other.src[q])])
            .collect();
        let tgt = arr_pairs
            .iter()
            .map(|&(p, q)| obj_index[&(self.tgt[p], other.tgt[q])])
            .collect();
        let ident = obj_pairs
            .iter()
            .map(|&(x, y)| arr_index[&(self.ident[x], other.ident[y])])
            .collect();
        let mut comp = BTreeMap::new();
        for (i, &(p1, q1)) in arr_pairs.iter().enumerate() {
            for (j, &(p2, q2)) in arr_pairs.iter().enumerate() {
                if self.src[p1] == self.tgt[p2] && other.src[q1] == other.tgt[q2] {
                    let r = (self.comp[&(p1, p2)], other.comp[&(q1, q2)]);
                    comp.insert((i, j), arr_index[&r]);
                }
            }
        }
        CatGroupoidSet::new(objects, arrows, src, tgt, ident, comp)
    }

    /// Full sub-instance on a subset of objects closed under the action.
    pub fn full_sub(&self, object_set: &[usize]) -> Result<GroupoidEmbedded, GroupoidError> {
        let mut objs = object_set.to_vec();
        objs.sort_unstable();
        objs.dedup();
        let in_objs = |x: usize| objs.binary_search(&x).is_ok();
        for &x in &objs {
            if x >= self.n_objects() {
                return Err(GroupoidError::OutOfRange {
                    what: "objects",
                    index: x,
                    size: self.n_objects(),
                });
            }
        }
        for (&(x, g), &y) in self.objects.act_table() {
            if in_objs(x) && !in_objs(y) {
                return Err(GroupoidError::ActionAxiomViolated {
                    what: "object set is not action-stable",
                    witness: vec![x, g],
                });
            }
        }
        let arrs: Vec<usize> = (0..self.n_arrows())
            .filter(|&f| in_objs(self.src[f]) && in_objs(self.tgt[f]))
            .collect();
        let obj_new: BTreeMap<usize, usize> =
            objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let arr_new: BTreeMap<usize, usize> =
            arrs.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let objects = GroupoidSet::new(
            Arc::clone(self.groupoid()),
            objs.len(),
            objs.iter().map(|&x| self.objects.sigma(x)).collect(),
            self.objects
                .act_table()
                .iter()
                .filter(|((x, _), _)| obj_new.contains_key(x))
                .map(|(&(x, g), &y)| ((obj_new[&x], g), obj_new[&y]))
                .collect(),
        )?;
        let arrows = GroupoidSet::new(
            Arc::clone(self.groupoid()),
            arrs.len(),
            arrs.iter().map(|&f| self.arrows.sigma(f)).collect(),
            self.arrows
                .act_table()
                .iter()
                .filter(|((f, _), _)| arr_new.contains_key(f))
                .map(|(&(f, g), &h)| ((arr_new[&f], g), arr_new[&h]))
                .collect(),
        )?;
        let src = arrs.iter().map(|&f| obj_new[&self.src[f]]).collect();
        let tgt = arrs.iter().map(|&f| obj_new[&self.tgt[f]]).collect();
        let ident = objs.iter().map(|&x| arr_new[&self.ident[x]]).collect();
        let comp = self
            .comp
            .iter()
            .filter(|((p, q), _)| arr_new.contains_key(p) && arr_new.contains_key(q))
            .map(|(&(p, q), &r)| ((arr_new[&p], arr_new[&q]), arr_new[&r]))
            .collect();
        let cat = CatGroupoidSet::new(objects, arrows, src, tgt, ident, comp)?;
        Ok(GroupoidEmbedded {
            cat,
            obj_map: objs,
            arr_map: arrs,
        })
    }
}

/// A sub-instance with index maps (new → parent).
#[derive(Debug, Clone)]
pub struct GroupoidEmbedded {
    pub cat: Arc<CatGroupoidSet>,
    pub obj_map: Vec<usize>,
    pub arr_map: Vec<usize>,
}

fn fibre_pairs(a: &GroupoidSet, b: &GroupoidSet) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for x in 0..a.size() {
        for y in 0..b.size() {
            if a.sigma(x) == b.sigma(y) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

/// Discrete categorified groupoid-set on a groupoid-set.
pub fn include_groupoid_set(x: &GroupoidSet) -> Arc<CatGroupoidSet> {
    let n = x.size();
    let id: Vec<usize> = (0..n).collect();
    let comp = (0..n).map(|p| ((p, p), p)).collect();
    CatGroupoidSet::new(x.clone(), x.clone(), id.clone(), id.clone(), id, comp)
        .expect("discrete instance over a validated groupoid-set is valid")
}

/// Unitor Φ(X): X ×_{𝓖0} unit → X, (a, b) ↦ a, with its inverse.
pub fn groupoid_unitor_phi(
    x: &Arc<CatGroupoidSet>,
) -> Result<(GroupoidFunctor, GroupoidFunctor), GroupoidError> {
    let unit = CatGroupoidSet::unit(x.groupoid());
    let dom = x.fibre_product(&unit)?;
    // pairs (a, ς(a)) in lexicographic order enumerate the carrier in the
    // same order as the carrier itself
    let f0: Vec<usize> = (0..x.n_objects()).collect();
    let f1: Vec<usize> = (0..x.n_arrows()).collect();
    let phi = GroupoidFunctor::new(Arc::clone(&dom), Arc::clone(x), f0.clone(), f1.clone())?;
    let inv = GroupoidFunctor::new(Arc::clone(x), dom, f0, f1)?;
    Ok((phi, inv))
}

/// Unitor Ψ(X): unit ×_{𝓖0} X → X.
pub fn groupoid_unitor_psi(
    x: &Arc<CatGroupoidSet>,
) -> Result<(GroupoidFunctor, GroupoidFunctor), GroupoidError> {
    let unit = CatGroupoidSet::unit(x.groupoid());
    let dom = unit.fibre_product(x)?;
    let pairs = fibre_pairs(unit.objects(), x.objects());
    let mut f0 = vec![0; pairs.len()];
    for (i, &(_, a)) in pairs.iter().enumerate() {
        f0[i] = a;
    }
    let arr_pairs = fibre_pairs(unit.arrows(), x.arrows());
    let mut f1 = vec![0; arr_pairs.len()];
    for (i, &(_, p)) in arr_pairs.iter().enumerate() {
        f1[i] = p;
    }
    let psi = GroupoidFunctor::new(Arc::clone(&dom), Arc::clone(x), f0, f1)?;
    let inv = psi.invert().ok_or(GroupoidError::ComposeMismatch)?;
    Ok((psi, inv))
}

/// Distributor [X⊎Y] ×_{𝓖0} A → [X×A] ⊎ [Y×A], sending (u, a) to (u, a) in
/// the appropriate summand.
pub fn groupoid_distributor(
    x: &Arc<CatGroupoidSet>,
    y: &Arc<CatGroupoidSet>,
    a: &Arc<CatGroupoidSet>,
) -> Result<GroupoidFunctor, GroupoidError> {
    let union = x.disjoint_union(y)?;
    let dom = union.fibre_product(a)?;
    let xa = x.fibre_product(a)?;
    let ya = y.fibre_product(a)?;
    let cod = xa.disjoint_union(&ya)?;
    let map_level = |union_pairs: Vec<(usize, usize)>,
                     x_pairs: Vec<(usize, usize)>,
                     y_pairs: Vec<(usize, usize)>,
                     x_count: usize| {
        let x_index: BTreeMap<(usize, usize), usize> =
            x_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let y_index: BTreeMap<(usize, usize), usize> =
            y_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let x_total = x_index.len();
        union_pairs
            .iter()
            .map(|&(u, b)| {
                if u < x_count {
                    x_index[&(u, b)]
                } else {
                    x_total + y_index[&(u - x_count, b)]
                }
            })
            .collect::<Vec<usize>>()
    };
    let f0 = map_level(
        fibre_pairs(union.objects(), a.objects()),
        fibre_pairs(x.objects(), a.objects()),
        fibre_pairs(y.objects(), a.objects()),
        x.n_objects(),
    );
    let f1 = map_level(
        fibre_pairs(union.arrows(), a.arrows()),
        fibre_pairs(x.arrows(), a.arrows()),
        fibre_pairs(y.arrows(), a.arrows()),
        x.n_arrows(),
    );
    GroupoidFunctor::new(dom, cod, f0, f1)
}

/// An internal functor between categorified groupoid-sets: structure-map
/// preserving, equivariant, and compatible with all four structure tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidFunctor {
    dom: Arc<CatGroupoidSet>,
    cod: Arc<CatGroupoidSet>,
    f0: Vec<usize>,
    f1: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(
        dom: Arc<CatGroupoidSet>,
        cod: Arc<CatGroupoidSet>,
        f0: Vec<usize>,
        f1: Vec<usize>,
    ) -> Result<Self, GroupoidError> {
        if dom.groupoid() != cod.groupoid() {
            return Err(GroupoidError::GroupoidMismatch);
        }
        check_map("f0", &f0, dom.n_objects(), cod.n_objects().max(1))?;
        check_map("f1", &f1, dom.n_arrows(), cod.n_arrows().max(1))?;
        if (dom.n_objects() > 0 && cod.n_objects() == 0)
            || (dom.n_arrows() > 0 && cod.n_arrows() == 0)
        {
            return Err(GroupoidError::ComposeMismatch);
        }
        if !dom.objects().is_equivariant_map(cod.objects(), &f0) {
            return Err(GroupoidError::NotFunctorial {
                what: "object map not equivariant or structure-preserving",
                witness: vec![],
            });
        }
        if !dom.arrows().is_equivariant_map(cod.arrows(), &f1) {
            return Err(GroupoidError::NotFunctorial {
                what: "arrow map not equivariant or structure-preserving",
                witness: vec![],
            });
        }
        for f in 0..dom.n_arrows() {
            if cod.src(f1[f]) != f0[dom.src(f)] || cod.tgt(f1[f]) != f0[dom.tgt(f)] {
                return Err(GroupoidError::NotFunctorial {
                    what: "does not preserve endpoints",
                    witness: vec![f],
                });
            }
        }
        for x in 0..dom.n_objects() {
            if f1[dom.ident(x)] != cod.ident(f0[x]) {
                return Err(GroupoidError::NotFunctorial {
                    what: "does not preserve identities",
                    witness: vec![x],
                });
            }
        }
        for (&(p, q), &r) in dom.comp_table() {
            if cod.comp_table().get(&(f1[p], f1[q])) != Some(&f1[r]) {
                return Err(GroupoidError::NotFunctorial {
                    what: "does not preserve composition",
                    witness: vec![p, q],
                });
            }
        }
        Ok(GroupoidFunctor { dom, cod, f0, f1 })
    }

    pub fn identity(x: &Arc<CatGroupoidSet>) -> Self {
        GroupoidFunctor {
            dom: Arc::clone(x),
            cod: Arc::clone(x),
            f0: (0..x.n_objects()).collect(),
            f1: (0..x.n_arrows()).collect(),
        }
    }

    pub fn dom(&self) -> &Arc<CatGroupoidSet> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<CatGroupoidSet> {
        &self.cod
    }

    pub fn apply_obj(&self, x: usize) -> usize {
        self.f0[x]
    }

    pub fn apply_arr(&self, f: usize) -> usize {
        self.f1[f]
    }

    pub fn obj_table(&self) -> &[usize] {
        &self.f0
    }

    pub fn arr_table(&self) -> &[usize] {
        &self.f1
    }

    pub fn compose(&self, inner: &GroupoidFunctor) -> Result<GroupoidFunctor, GroupoidError> {
        if *inner.cod != *self.dom {
            return Err(GroupoidError::ComposeMismatch);
        }
        Ok(GroupoidFunctor {
            dom: Arc::clone(&inner.dom),
            cod: Arc::clone(&self.cod),
            f0: inner.f0.iter().map(|&x| self.f0[x]).collect(),
            f1: inner.f1.iter().map(|&f| self.f1[f]).collect(),
        })
    }

    pub fn invert(&self) -> Option<GroupoidFunctor> {
        if !crate::gset::is_bijection(&self.f0, self.cod.n_objects())
            || !crate::gset::is_bijection(&self.f1, self.cod.n_arrows())
        {
            return None;
        }
        let mut f0 = vec![0; self.cod.n_objects()];
        let mut f1 = vec![0; self.cod.n_arrows()];
        for (x, &v) in self.f0.iter().enumerate() {
            f0[v] = x;
        }
        for (f, &v) in self.f1.iter().enumerate() {
            f1[v] = f;
        }
        Some(GroupoidFunctor {
            dom: Arc::clone(&self.cod),
            cod: Arc::clone(&self.dom),
            f0,
            f1,
        })
    }

    pub fn revalidate(&self) -> Result<(), GroupoidError> {
        GroupoidFunctor::new(
            Arc::clone(&self.dom),
            Arc::clone(&self.cod),
            self.f0.clone(),
            self.f1.clone(),
        )
        .map(|_| ())
    }
}

/// An internal natural transformation between parallel groupoid functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidNatTrans {
    from: GroupoidFunctor,
    to: GroupoidFunctor,
    comp_at: Vec<usize>,
}

impl GroupoidNatTrans {
    pub fn new(
        from: GroupoidFunctor,
        to: GroupoidFunctor,
        comp_at: Vec<usize>,
    ) -> Result<Self, GroupoidError> {
        if from.dom != to.dom || from.cod != to.cod {
            return Err(GroupoidError::ParallelMismatch);
        }
        let x = &from.dom;
        let y = &from.cod;
        check_map("at", &comp_at, x.n_objects(), y.n_arrows().max(1))?;
        if x.n_objects() > 0 && y.n_arrows() == 0 {
            return Err(GroupoidError::ComposeMismatch);
        }
        for (a, &component) in comp_at.iter().enumerate() {
            if y.src(component) != from.f0[a] || y.tgt(component) != to.f0[a] {
                return Err(GroupoidError::EndpointMismatch { object: a });
            }
        }
        if !x.objects().is_equivariant_map(y.arrows(), &comp_at) {
            return Err(GroupoidError::NotEquivariant {
                element: 0,
                arrow: 0,
            });
        }
        for f in 0..x.n_arrows() {
            let lhs = y.compose(to.f1[f], comp_at[x.src(f)])?;
            let rhs = y.compose(comp_at[x.tgt(f)], from.f1[f])?;
            if lhs != rhs {
                return Err(GroupoidError::NaturalityViolated { arrow: f });
            }
        }
        Ok(GroupoidNatTrans { from, to, comp_at })
    }

    pub fn identity(f: &GroupoidFunctor) -> Self {
        let comp_at = (0..f.dom.n_objects())
            .map(|x| f.cod.ident(f.f0[x]))
            .collect();
        GroupoidNatTrans {
            from: f.clone(),
            to: f.clone(),
            comp_at,
        }
    }

    pub fn from_functor(&self) -> &GroupoidFunctor {
        &self.from
    }

    pub fn to_functor(&self) -> &GroupoidFunctor {
        &self.to
    }

    pub fn component(&self, x: usize) -> usize {
        self.comp_at[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.comp_at
    }

    pub fn invert(&self) -> Option<GroupoidNatTrans> {
        let y = &self.from.cod;
        let mut inv = Vec::with_capacity(self.comp_at.len());
        for &a in &self.comp_at {
            inv.push(y.inverse_arrow(a)?);
        }
        GroupoidNatTrans::new(self.to.clone(), self.from.clone(), inv).ok()
    }

    pub fn revalidate(&self) -> Result<(), GroupoidError> {
        GroupoidNatTrans::new(self.from.clone(), self.to.clone(), self.comp_at.clone()).map(|_| ())
    }
}

/// A re-checkable weak-equivalence witness between categorified
/// groupoid-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidWitness {
    pub forward: GroupoidFunctor,
    pub backward: GroupoidFunctor,
    pub alpha: GroupoidNatTrans,
    pub beta: GroupoidNatTrans,
}

impl GroupoidWitness {
    pub fn identity(x: &Arc<CatGroupoidSet>) -> Self {
        let id = GroupoidFunctor::identity(x);
        GroupoidWitness {
            forward: id.clone(),
            backward: id.clone(),
            alpha: GroupoidNatTrans::identity(&id),
            beta: GroupoidNatTrans::identity(&id),
        }
    }

    pub fn from_iso(forward: GroupoidFunctor) -> Result<Self, GroupoidError> {
        let backward = forward.invert().ok_or(GroupoidError::ComposeMismatch)?;
        let alpha = GroupoidNatTrans::identity(&GroupoidFunctor::identity(forward.dom()));
        let beta = GroupoidNatTrans::identity(&GroupoidFunctor::identity(forward.cod()));
        Ok(GroupoidWitness {
            forward,
            backward,
            alpha,
            beta,
        })
    }

    pub fn swap(&self) -> Self {
        GroupoidWitness {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn validate(
        &self,
        x: &Arc<CatGroupoidSet>,
        y: &Arc<CatGroupoidSet>,
    ) -> Result<(), GroupoidError> {
        if self.forward.dom() != x
            || self.forward.cod() != y
            || self.backward.dom() != y
            || self.backward.cod() != x
        {
            return Err(GroupoidError::ComposeMismatch);
        }
        self.forward.revalidate()?;
        self.backward.revalidate()?;
        if *self.alpha.from_functor() != self.backward.compose(&self.forward)?
            || *self.alpha.to_functor() != GroupoidFunctor::identity(x)
            || *self.beta.from_functor() != self.forward.compose(&self.backward)?
            || *self.beta.to_functor() != GroupoidFunctor::identity(y)
        {
            return Err(GroupoidError::ParallelMismatch);
        }
        self.alpha.revalidate()?;
        self.beta.revalidate()?;
        if self.alpha.invert().is_none() || self.beta.invert().is_none() {
            return Err(GroupoidError::NaturalityViolated { arrow: 0 });
        }
        Ok(())
    }
}

fn check_map(
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn include_and_unit_validate() {
        let gd = FiniteGroupoid::pair(2);
        let u = CatGroupoidSet::unit(&gd);
        assert_eq!(u.n_objects(), 2);
        assert_eq!(u.n_arrows(), 2);
        let inc = include_groupoid_set(&GroupoidSet::unit(&gd));
        assert_eq!(*inc, *u);
    }

    #[test]
    fn unit_law_via_phi() {
        let gd = FiniteGroupoid::pair(2);
        let x = CatGroupoidSet::unit(&gd);
        let (phi, phi_inv) = groupoid_unitor_phi(&x).unwrap();
        let round = phi.compose(&phi_inv).unwrap();
        assert_eq!(round, GroupoidFunctor::identity(&x));
        let (psi, _) = groupoid_unitor_psi(&x).unwrap();
        assert!(psi.invert().is_some());
    }

    #[test]
    fn fibre_product_associates_on_tables() {
        let gd = FiniteGroupoid::pair(2);
        let u = CatGroupoidSet::unit(&gd);
        let x = u.disjoint_union(&u).unwrap();
        let left = x.fibre_product(&u).unwrap().fibre_product(&x).unwrap();
        let right = x.fibre_product(&u.fibre_product(&x).unwrap()).unwrap();
        assert_eq!(*left, *right);
    }

    #[test]
    fn distributor_is_iso_and_counts_match() {
        let gd = FiniteGroupoid::discrete(2);
        let u = CatGroupoidSet::unit(&gd);
        let x = u.disjoint_union(&u).unwrap();
        let d = groupoid_distributor(&x, &u, &u).unwrap();
        assert!(d.invert().is_some());
        assert_eq!(d.dom().n_arrows(), d.cod().n_arrows());
    }

    #[test]
    fn groupoid_as_categorified_set_needs_bundle() {
        // the pair ((𝓖1, t), (𝓖0, id)): the source map can only be
        // structure-preserving when s = t everywhere, so validation fails
        // off bundles and succeeds on bundles of groups (with conjugation
        // acting on loops)
        // translate action g⁻¹∘p on general groupoids; conjugation g⁻¹∘p∘g
        // on bundles, where every arrow is a loop and conjugation is total
        let build = |gd: &Arc<FiniteGroupoid>| -> Result<Arc<CatGroupoidSet>, GroupoidError> {
            let bundle = (0..gd.n_arrows()).all(|f| gd.src(f) == gd.tgt(f));
            let objects = GroupoidSet::unit(gd);
            let mut act = BTreeMap::new();
            for p in 0..gd.n_arrows() {
                for g in 0..gd.n_arrows() {
                    if gd.tgt(p) != gd.tgt(g) {
                        continue;
                    }
                    let moved = if bundle {
                        gd.compose(gd.inv(g), gd.compose(p, g).unwrap()).unwrap()
                    } else {
                        gd.compose(gd.inv(g), p).unwrap()
                    };
                    act.insert((p, g), moved);
                }
            }
            let arrows =
                GroupoidSet::new(Arc::clone(gd), gd.n_arrows(), gd.tgt_table().to_vec(), act)?;
            CatGroupoidSet::new(
                objects,
                arrows,
                gd.src_table().to_vec(),
                gd.tgt_table().to_vec(),
                gd.ident_table().to_vec(),
                gd.comp_table().clone(),
            )
        };
        // fails whenever s ≠ t somewhere
        let pair = FiniteGroupoid::pair(2);
        assert!(matches!(
            build(&pair),
            Err(GroupoidError::StructureMapViolated { .. })
        ));
        // passes exactly for bundles of groups
        let c2 = FiniteGroup::cyclic(2);
        let bundle = FiniteGroupoid::from_group(&c2)
            .disjoint_union(&FiniteGroupoid::from_group(&FiniteGroup::trivial()));
        assert!(build(&bundle).is_ok());
    }
}
