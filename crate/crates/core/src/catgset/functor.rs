//! Internal functors and internal natural transformations between
//! categorified G-sets, with eager validation of every defining diagram.

use super::{CatError, CatGSet, Diagram, StructMap};
use std::sync::Arc;

/// An internal functor: equivariant object and arrow maps preserving
/// source, target, identity and composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalFunctor {
    dom: Arc<CatGSet>,
    cod: Arc<CatGSet>,
    f0: Vec<usize>,
    f1: Vec<usize>,
}

impl InternalFunctor {
    pub fn new(
        dom: Arc<CatGSet>,
        cod: Arc<CatGSet>,
        f0: Vec<usize>,
        f1: Vec<usize>,
    ) -> Result<Self, CatError> {
        if dom.group() != cod.group() {
            return Err(CatError::GroupMismatch);
        }
        super::check_table("f0", &f0, dom.n_objects(), cod.n_objects().max(1))?;
        super::check_table("f1", &f1, dom.n_arrows(), cod.n_arrows().max(1))?;
        if dom.n_objects() > 0 && cod.n_objects() == 0 {
            return Err(CatError::WrongTableLength {
                table: "f0",
                len: f0.len(),
                expected: 0,
            });
        }
        let group = dom.group();
        // equivariance
        for x in 0..dom.n_objects() {
            for g in group.elements() {
                if f0[dom.objects().act(x, g)] != cod.objects().act(f0[x], g) {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::FunctorObj,
                        element: x,
                        g,
                    });
                }
            }
        }
        for f in 0..dom.n_arrows() {
            for g in group.elements() {
                if f1[dom.arrows().act(f, g)] != cod.arrows().act(f1[f], g) {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::FunctorArr,
                        element: f,
                        g,
                    });
                }
            }
        }
        // the four functor diagrams
        for f in 0..dom.n_arrows() {
            if cod.src(f1[f]) != f0[dom.src(f)] {
                return Err(CatError::NotFunctorial {
                    diagram: Diagram::PreservesSrc,
                    witness: vec![f],
                });
            }
            if cod.tgt(f1[f]) != f0[dom.tgt(f)] {
                return Err(CatError::NotFunctorial {
                    diagram: Diagram::PreservesTgt,
                    witness: vec![f],
                });
            }
        }
        for x in 0..dom.n_objects() {
            if f1[dom.ident(x)] != cod.ident(f0[x]) {
                return Err(CatError::NotFunctorial {
                    diagram: Diagram::PreservesIdent,
                    witness: vec![x],
                });
            }
        }
        for (p, q) in dom.composable_pairs() {
            let lhs = f1[dom.compose(p, q)?];
            let rhs = cod.compose(f1[p], f1[q])?;
            if lhs != rhs {
                return Err(CatError::NotFunctorial {
                    diagram: Diagram::PreservesComp,
                    witness: vec![p, q],
                });
            }
        }
        Ok(InternalFunctor { dom, cod, f0, f1 })
    }

    pub fn identity(x: &Arc<CatGSet>) -> Self {
        InternalFunctor {
            dom: Arc::clone(x),
            cod: Arc::clone(x),
            f0: (0..x.n_objects()).collect(),
            f1: (0..x.n_arrows()).collect(),
        }
    }

    pub fn dom(&self) -> &Arc<CatGSet> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<CatGSet> {
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

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
            && self.f0.iter().enumerate().all(|(i, &v)| i == v)
            && self.f1.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Composite self ∘ inner, defined when inner's codomain is self's domain.
    pub fn compose(&self, inner: &InternalFunctor) -> Result<InternalFunctor, CatError> {
        if *inner.cod != *self.dom {
            return Err(CatError::ComposeMismatch);
        }
        Ok(InternalFunctor {
            dom: Arc::clone(&inner.dom),
            cod: Arc::clone(&self.cod),
            f0: inner.f0.iter().map(|&x| self.f0[x]).collect(),
            f1: inner.f1.iter().map(|&f| self.f1[f]).collect(),
        })
    }

    /// When both component maps are bijections the inverse tables form an
    /// internal functor again; equivariance and the functor laws transfer.
    pub fn invert(&self) -> Option<InternalFunctor> {
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
        Some(InternalFunctor {
            dom: Arc::clone(&self.cod),
            cod: Arc::clone(&self.dom),
            f0,
            f1,
        })
    }

    /// Blockwise functor between disjoint unions.
    pub fn disjoint_union(&self, other: &InternalFunctor) -> Result<InternalFunctor, CatError> {
        let dom = self.dom.disjoint_union(&other.dom)?;
        let cod = self.cod.disjoint_union(&other.cod)?;
        let oo = self.cod.n_objects();
        let oa = self.cod.n_arrows();
        let mut f0 = self.f0.clone();
        f0.extend(other.f0.iter().map(|&x| x + oo));
        let mut f1 = self.f1.clone();
        f1.extend(other.f1.iter().map(|&f| f + oa));
        Ok(InternalFunctor { dom, cod, f0, f1 })
    }

    /// Componentwise functor between products.
    pub fn product(&self, other: &InternalFunctor) -> Result<InternalFunctor, CatError> {
        let dom = self.dom.product(&other.dom)?;
        let cod = self.cod.product(&other.cod)?;
        let mut f0 = Vec::with_capacity(dom.n_objects());
        for x in 0..self.dom.n_objects() {
            for y in 0..other.dom.n_objects() {
                f0.push(self.f0[x] * other.cod.n_objects() + other.f0[y]);
            }
        }
        let mut f1 = Vec::with_capacity(dom.n_arrows());
        for p in 0..self.dom.n_arrows() {
            for q in 0..other.dom.n_arrows() {
                f1.push(self.f1[p] * other.cod.n_arrows() + other.f1[q]);
            }
        }
        Ok(InternalFunctor { dom, cod, f0, f1 })
    }

    /// Re-checks every validity condition; used by witness checkers that
    /// receive functors assembled from raw tables.
    pub fn revalidate(&self) -> Result<(), CatError> {
        InternalFunctor::new(
            Arc::clone(&self.dom),
            Arc::clone(&self.cod),
            self.f0.clone(),
            self.f1.clone(),
        )
        .map(|_| ())
    }
}

/// An internal natural transformation between parallel internal functors,
/// given by an equivariant component table X0 → Y1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalNatTrans {
    from: InternalFunctor,
    to: InternalFunctor,
    comp_at: Vec<usize>,
}

impl InternalNatTrans {
    pub fn new(
        from: InternalFunctor,
        to: InternalFunctor,
        comp_at: Vec<usize>,
    ) -> Result<Self, CatError> {
        if from.dom != to.dom || from.cod != to.cod {
            return Err(CatError::ParallelMismatch);
        }
        let x = &from.dom;
        let y = &from.cod;
        super::check_table("at", &comp_at, x.n_objects(), y.n_arrows().max(1))?;
        if x.n_objects() > 0 && y.n_arrows() == 0 {
            return Err(CatError::WrongTableLength {
                table: "at",
                len: comp_at.len(),
                expected: 0,
            });
        }
        for a in 0..x.n_objects() {
            // endpoints: s(α a) = F0(a), t(α a) = G0(a)
            if y.src(comp_at[a]) != from.f0[a] || y.tgt(comp_at[a]) != to.f0[a] {
                return Err(CatError::EndpointMismatch { object: a });
            }
            for g in x.group().elements() {
                if comp_at[x.objects().act(a, g)] != y.arrows().act(comp_at[a], g) {
                    return Err(CatError::NotEquivariant {
                        map: StructMap::NatComponent,
                        element: a,
                        g,
                    });
                }
            }
        }
        // naturality: m(G1 f, α(s f)) = m(α(t f), F1 f)
        for f in 0..x.n_arrows() {
            let lhs = y.compose(to.f1[f], comp_at[x.src(f)])?;
            let rhs = y.compose(comp_at[x.tgt(f)], from.f1[f])?;
            if lhs != rhs {
                return Err(CatError::NaturalityViolated { arrow: f });
            }
        }
        Ok(InternalNatTrans { from, to, comp_at })
    }

    /// Identity 2-morphism on a functor, with components ι(F0 x).
    pub fn identity(f: &InternalFunctor) -> Self {
        let comp_at = (0..f.dom.n_objects())
            .map(|x| f.cod.ident(f.f0[x]))
            .collect();
        InternalNatTrans {
            from: f.clone(),
            to: f.clone(),
            comp_at,
        }
    }

    pub fn from_functor(&self) -> &InternalFunctor {
        &self.from
    }

    pub fn to_functor(&self) -> &InternalFunctor {
        &self.to
    }

    pub fn component(&self, x: usize) -> usize {
        self.comp_at[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.comp_at
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to
            && (0..self.comp_at.len())
                .all(|x| self.comp_at[x] == self.from.cod.ident(self.from.f0[x]))
    }

    /// Inverse 2-morphism when every component is an isomorphism arrow;
    /// the inverse is rebuilt through the validating constructor.
    pub fn invert(&self) -> Option<InternalNatTrans> {
        let y = &self.from.cod;
        let mut inv = Vec::with_capacity(self.comp_at.len());
        for &a in &self.comp_at {
            {
                let h = y.inverse_arrow(a).expect("component in range")?;
                inv.push(h)
            }
        }
        Some(
            InternalNatTrans::new(self.to.clone(), self.from.clone(), inv)
                .expect("componentwise inverse of a 2-isomorphism is natural"),
        )
    }

    /// Blockwise 2-morphism between disjoint unions.
    pub fn disjoint_union(&self, other: &InternalNatTrans) -> Result<InternalNatTrans, CatError> {
        let from = self.from.disjoint_union(&other.from)?;
        let to = self.to.disjoint_union(&other.to)?;
        let offset = self.from.cod.n_arrows();
        let mut comp_at = self.comp_at.clone();
        comp_at.extend(other.comp_at.iter().map(|&a| a + offset));
        InternalNatTrans::new(from, to, comp_at)
    }

    /// Componentwise 2-morphism between products.
    pub fn product(&self, other: &InternalNatTrans) -> Result<InternalNatTrans, CatError> {
        let from = self.from.product(&other.from)?;
        let to = self.to.product(&other.to)?;
        let m = other.from.cod.n_arrows();
        let mut comp_at = Vec::with_capacity(from.dom.n_objects());
        for x in 0..self.from.dom.n_objects() {
            for y in 0..other.from.dom.n_objects() {
                comp_at.push(self.comp_at[x] * m + other.comp_at[y]);
            }
        }
        InternalNatTrans::new(from, to, comp_at)
    }

    pub fn revalidate(&self) -> Result<(), CatError> {
        InternalNatTrans::new(self.from.clone(), self.to.clone(), self.comp_at.clone()).map(|_| ())
    }
}

/// Vertical composite: for α: F → G and β: G → H the result β∘α: F → H has
/// components m(β(x), α(x)).
pub fn vertical_compose(
    beta: &InternalNatTrans,
    alpha: &InternalNatTrans,
) -> Result<InternalNatTrans, CatError> {
    if beta.from != alpha.to {
        return Err(CatError::ParallelMismatch);
    }
    let y = &alpha.from.cod;
    let comp_at = alpha
        .comp_at
        .iter()
        .zip(&beta.comp_at)
        .map(|(&a, &b)| y.compose(b, a))
        .collect::<Result<Vec<_>, _>>()?;
    InternalNatTrans::new(alpha.from.clone(), beta.to.clone(), comp_at)
}
