//! The right translation double category of a categorified G-set.
//!
//! Objects and arrows of the instance become the two translation groupoids
//! D0 = X0 ⋊ G and D1 = X1 ⋊ G (materialized as plain categories), with
//! target, source, identity and composition functors between them. Squares
//! are the arrows of D1: pairs (f, g). The verifier re-checks every functor
//! law and internal-category diagram pointwise on any candidate, so
//! mutations are reported rather than assumed away.

use crate::catgset::CatGSet;
use crate::engine::EngineError;
use crate::group::FiniteGroup;
use crate::gset::FinGSet;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Functor data as raw tables, open to mutation for verification tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorData {
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

/// A double category presented by its two plain categories and the four
/// structure functors. The composition functor is stored on composable
/// pairs of vertical morphisms and of squares.
#[derive(Debug, Clone)]
pub struct DoubleCategory {
    /// D0: category of objects (objects X0, horizontal morphisms X0×G).
    pub objects_cat: Arc<CatGSet>,
    /// D1: category of morphisms (vertical morphisms X1, squares X1×G).
    pub morphisms_cat: Arc<CatGSet>,
    pub target: FunctorData,
    pub source: FunctorData,
    pub identity: FunctorData,
    pub compose_vertical: BTreeMap<(usize, usize), usize>,
    pub compose_squares: BTreeMap<(usize, usize), usize>,
}

/// The translation groupoid X ⋊ G as a plain category: objects the carrier,
/// arrows the pairs (x, g) indexed x·|G| + g, with s(x,g) = x·g and
/// t(x,g) = x.
pub fn translation_groupoid(x: &FinGSet) -> Arc<CatGSet> {
    let group = x.group();
    let order = group.order();
    let n = x.size();
    let trivial = FiniteGroup::trivial();
    let objects = FinGSet::trivial(Arc::clone(&trivial), n);
    let arrows = FinGSet::trivial(Arc::clone(&trivial), n * order);
    let mut src = Vec::with_capacity(n * order);
    let mut tgt = Vec::with_capacity(n * order);
    for a in 0..n {
        for g in group.elements() {
            src.push(x.act(a, g));
            tgt.push(a);
        }
    }
    let ident = (0..n).map(|a| a * order + group.identity()).collect();
    let mut comp = BTreeMap::new();
    // (a,g) ∘ (a·g, h) = (a, gh)
    for a in 0..n {
        for g in group.elements() {
            for h in group.elements() {
                let p = a * order + g;
                let q = x.act(a, g) * order + h;
                comp.insert((p, q), a * order + group.mul(g, h));
            }
        }
    }
    CatGSet::new(objects, arrows, src, tgt, ident, comp)
        .expect("translation groupoid of a valid G-set is a valid category")
}

/// Builds the right translation double category X ⋊ G.
pub fn translation_double(x: &CatGSet) -> DoubleCategory {
    let group = x.group();
    let order = group.order();
    let objects_cat = translation_groupoid(x.objects());
    let morphisms_cat = translation_groupoid(x.arrows());
    // T(f) = t f on vertical morphisms, T(f,g) = (t f, g) on squares
    let target = FunctorData {
        on_objects: (0..x.n_arrows()).map(|f| x.tgt(f)).collect(),
        on_arrows: (0..x.n_arrows() * order)
            .map(|s| {
                let (f, g) = (s / order, s % order);
                x.tgt(f) * order + g
            })
            .collect(),
    };
    let source = FunctorData {
        on_objects: (0..x.n_arrows()).map(|f| x.src(f)).collect(),
        on_arrows: (0..x.n_arrows() * order)
            .map(|s| {
                let (f, g) = (s / order, s % order);
                x.src(f) * order + g
            })
            .collect(),
    };
    let identity = FunctorData {
        on_objects: (0..x.n_objects()).map(|a| x.ident(a)).collect(),
        on_arrows: (0..x.n_objects() * order)
            .map(|h| {
                let (a, g) = (h / order, h % order);
                x.ident(a) * order + g
            })
            .collect(),
    };
    let mut compose_vertical = BTreeMap::new();
    for (&(l, f), &lf) in x.comp_table() {
        compose_vertical.insert((l, f), lf);
    }
    let mut compose_squares = BTreeMap::new();
    // squares ((l,g),(f,g)) with s l = t f compose to (l∘f, g)
    for (&(l, f), &lf) in x.comp_table() {
        for g in group.elements() {
            compose_squares.insert((l * order + g, f * order + g), lf * order + g);
        }
    }
    DoubleCategory {
        objects_cat,
        morphisms_cat,
        target,
        source,
        identity,
        compose_vertical,
        compose_squares,
    }
}

impl DoubleCategory {
    pub fn n_objects(&self) -> usize {
        self.objects_cat.n_objects()
    }

    pub fn n_horizontal(&self) -> usize {
        self.objects_cat.n_arrows()
    }

    pub fn n_vertical(&self) -> usize {
        self.morphisms_cat.n_objects()
    }

    pub fn n_squares(&self) -> usize {
        self.morphisms_cat.n_arrows()
    }

    /// The four vertices of a square Q, in the order
    /// (t(SQ), s(SQ), t(TQ), s(TQ)).
    pub fn square_vertices(&self, q: usize) -> Result<[usize; 4], EngineError> {
        if q >= self.n_squares() {
            return Err(EngineError::OutOfRange {
                index: q,
                size: self.n_squares(),
            });
        }
        let sq = self.source.on_arrows[q];
        let tq = self.target.on_arrows[q];
        Ok([
            self.objects_cat.tgt(sq),
            self.objects_cat.src(sq),
            self.objects_cat.tgt(tq),
            self.objects_cat.src(tq),
        ])
    }
}

/// Re-checks every axiom of the double-category presentation and reports
/// all violations. Outputs of `translation_double` yield an empty report.
pub fn verify_double_axioms(d: &DoubleCategory) -> Vec<String> {
    let mut report = Vec::new();
    let d0 = &d.objects_cat;
    let d1 = &d.morphisms_cat;
    check_functor(&mut report, "T", &d.target, d1, d0);
    check_functor(&mut report, "S", &d.source, d1, d0);
    check_functor(&mut report, "I", &d.identity, d0, d1);
    check_compose_functor(&mut report, d);

    // s∘ι and t∘ι on the functor level: T∘I = S∘I = Id
    for x in 0..d0.n_objects() {
        if x < d.identity.on_objects.len() {
            let v = d.identity.on_objects[x];
            if d.target.on_objects.get(v) != Some(&x) {
                report.push(format!("T(I({x})) is not {x}"));
            }
            if d.source.on_objects.get(v) != Some(&x) {
                report.push(format!("S(I({x})) is not {x}"));
            }
        }
    }
    for h in 0..d0.n_arrows() {
        if h < d.identity.on_arrows.len() {
            let q = d.identity.on_arrows[h];
            if d.target.on_arrows.get(q) != Some(&h) {
                report.push(format!(
                    "T(I) is not the identity on horizontal morphism {h}"
                ));
            }
            if d.source.on_arrows.get(q) != Some(&h) {
                report.push(format!(
                    "S(I) is not the identity on horizontal morphism {h}"
                ));
            }
        }
    }
    // endpoints of composites: T∘M = T∘pr1, S∘M = S∘pr2
    for (&(l, f), &lf) in &d.compose_vertical {
        if d.target.on_objects.get(lf) != d.target.on_objects.get(l) {
            report.push(format!("T(M({l},{f})) differs from T({l})"));
        }
        if d.source.on_objects.get(lf) != d.source.on_objects.get(f) {
            report.push(format!("S(M({l},{f})) differs from S({f})"));
        }
    }
    for (&(a, b), &ab) in &d.compose_squares {
        if d.target.on_arrows.get(ab) != d.target.on_arrows.get(a) {
            report.push(format!("T(M) wrong on squares ({a},{b})"));
        }
        if d.source.on_arrows.get(ab) != d.source.on_arrows.get(b) {
            report.push(format!("S(M) wrong on squares ({a},{b})"));
        }
    }
    // unit laws and associativity of M on vertical morphisms
    for v in 0..d.n_vertical() {
        let (sv, tv) = (d.source.on_objects[v], d.target.on_objects[v]);
        let left = d.identity.on_objects.get(tv).copied();
        let right = d.identity.on_objects.get(sv).copied();
        if left.and_then(|i| d.compose_vertical.get(&(i, v))) != Some(&v) {
            report.push(format!("left unit law fails at vertical morphism {v}"));
        }
        if right.and_then(|i| d.compose_vertical.get(&(v, i))) != Some(&v) {
            report.push(format!("right unit law fails at vertical morphism {v}"));
        }
    }
    for (&(l, f), &lf) in &d.compose_vertical {
        for (&(f2, e), &fe) in &d.compose_vertical {
            if f2 == f {
                let lhs = d.compose_vertical.get(&(lf, e));
                let rhs = d.compose_vertical.get(&(l, fe));
                if lhs != rhs || lhs.is_none() {
                    report.push(format!(
                        "M not associative on vertical triple ({l},{f},{e})"
                    ));
                }
            }
        }
    }
    // unit laws and associativity of M on squares
    for q in 0..d.n_squares() {
        let (sq, tq) = (d.source.on_arrows[q], d.target.on_arrows[q]);
        let left = d.identity.on_arrows.get(tq).copied();
        let right = d.identity.on_arrows.get(sq).copied();
        if left.and_then(|i| d.compose_squares.get(&(i, q))) != Some(&q) {
            report.push(format!("left unit law fails at square {q}"));
        }
        if right.and_then(|i| d.compose_squares.get(&(q, i))) != Some(&q) {
            report.push(format!("right unit law fails at square {q}"));
        }
    }
    for (&(a, b), &ab) in &d.compose_squares {
        for (&(b2, c), &bc) in &d.compose_squares {
            if b2 == b {
                let lhs = d.compose_squares.get(&(ab, c));
                let rhs = d.compose_squares.get(&(a, bc));
                if lhs != rhs || lhs.is_none() {
                    report.push(format!("M not associative on square triple ({a},{b},{c})"));
                }
            }
        }
    }
    report
}

/// Pointwise functor laws for raw table data between plain categories.
fn check_functor(
    report: &mut Vec<String>,
    name: &str,
    f: &FunctorData,
    dom: &CatGSet,
    cod: &CatGSet,
) {
    if f.on_objects.len() != dom.n_objects() || f.on_arrows.len() != dom.n_arrows() {
        report.push(format!("{name} has tables of the wrong shape"));
        return;
    }
    if f.on_objects.iter().any(|&v| v >= cod.n_objects())
        || f.on_arrows.iter().any(|&v| v >= cod.n_arrows())
    {
        report.push(format!("{name} has entries out of range"));
        return;
    }
    for a in 0..dom.n_arrows() {
        if cod.src(f.on_arrows[a]) != f.on_objects[dom.src(a)] {
            report.push(format!("{name} does not preserve sources at arrow {a}"));
        }
        if cod.tgt(f.on_arrows[a]) != f.on_objects[dom.tgt(a)] {
            report.push(format!("{name} does not preserve targets at arrow {a}"));
        }
    }
    for x in 0..dom.n_objects() {
        if f.on_arrows[dom.ident(x)] != cod.ident(f.on_objects[x]) {
            report.push(format!("{name} does not preserve identities at object {x}"));
        }
    }
    for (&(p, q), &r) in dom.comp_table() {
        let img = cod.comp_table().get(&(f.on_arrows[p], f.on_arrows[q]));
        if img != Some(&f.on_arrows[r]) {
            report.push(format!("{name} does not preserve composition at ({p},{q})"));
        }
    }
}

/// Functoriality of M: D2 → D1, with D2 the pullback category of composable
/// pairs; identities and composition of squares must be preserved and the
/// domain must cover exactly the composable pairs.
fn check_compose_functor(report: &mut Vec<String>, d: &DoubleCategory) {
    let d1 = &d.morphisms_cat;
    for v in 0..d.n_vertical() {
        for w in 0..d.n_vertical() {
            let composable = d.source.on_objects.get(v) == d.target.on_objects.get(w);
            if composable != d.compose_vertical.contains_key(&(v, w)) {
                report.push(format!("M domain mismatch on vertical pair ({v},{w})"));
            }
        }
    }
    for a in 0..d.n_squares() {
        for b in 0..d.n_squares() {
            let composable = d.source.on_arrows.get(a) == d.target.on_arrows.get(b);
            if composable != d.compose_squares.contains_key(&(a, b)) {
                report.push(format!("M domain mismatch on square pair ({a},{b})"));
            }
        }
    }
    // M preserves identities: M(I-like pairs)
    for (&(v, w), &vw) in &d.compose_vertical {
        let (iv, iw) = (d1.ident(v), d1.ident(w));
        if let Some(&img) = d.compose_squares.get(&(iv, iw)) {
            if img != d1.ident(vw) {
                report.push(format!(
                    "M does not preserve identities at vertical pair ({v},{w})"
                ));
            }
        } else {
            report.push(format!("M misses the identity square pair of ({v},{w})"));
        }
    }
    // M preserves composition of squares: for composable pairs of
    // composable pairs, M(A∘C, B∘E) = M(A,B) ∘ M(C,E)
    for (&(a, b), &m_ab) in &d.compose_squares {
        for (&(c, e), &m_ce) in &d.compose_squares {
            let (Some(&ac), Some(&be)) =
                (d1.comp_table().get(&(a, c)), d1.comp_table().get(&(b, e)))
            else {
                continue;
            };
            let lhs = d.compose_squares.get(&(ac, be));
            let rhs = d1.comp_table().get(&(m_ab, m_ce));
            if lhs.is_none() || lhs != rhs {
                report.push(format!(
                    "M does not commute with square composition at ({a},{b}) after ({c},{e})"
                ));
            }
        }
    }
    report.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn point_counts() {
        let pt = samples::point_trivial();
        let d = translation_double(&pt);
        assert_eq!(
            (
                d.n_objects(),
                d.n_horizontal(),
                d.n_vertical(),
                d.n_squares()
            ),
            (1, 1, 1, 1)
        );
        assert!(verify_double_axioms(&d).is_empty());
    }

    #[test]
    fn included_regular_c2_counts() {
        let g = FiniteGroup::cyclic(2);
        let x = crate::catgset::include_gset(&FinGSet::regular(g));
        let d = translation_double(&x);
        assert_eq!(d.n_objects(), 2);
        assert_eq!(d.n_horizontal(), 4);
        assert_eq!(d.n_vertical(), 2);
        assert_eq!(d.n_squares(), 4);
        assert!(verify_double_axioms(&d).is_empty());
    }

    #[test]
    fn square_vertices_cases() {
        let w = samples::walking_arrow();
        let d = translation_double(&w);
        // Q = (ι a, e) has all four vertices equal
        let q_ident = w.ident(0);
        assert_eq!(d.square_vertices(q_ident).unwrap(), [0, 0, 0, 0]);
        // Q = (f, 1) on the walking arrow: vertices {a, a, b, b}
        let f = (0..w.n_arrows())
            .find(|&f| !w.is_identity_arrow(f))
            .unwrap();
        let mut vs = d.square_vertices(f).unwrap();
        vs.sort_unstable();
        assert_eq!(vs, [0, 0, 1, 1]);
        // Q = (ι α, g) over C2: vertices {α, αg}
        let c2 = FiniteGroup::cyclic(2);
        let x = crate::catgset::include_gset(&FinGSet::regular(c2));
        let dd = translation_double(&x);
        let q = x.ident(0) * 2 + 1;
        let mut vs = dd.square_vertices(q).unwrap();
        vs.sort_unstable();
        assert_eq!(vs, [0, 0, 1, 1]);
    }

    #[test]
    fn mutation_is_reported() {
        let x = samples::walking_iso();
        let mut d = translation_double(&x);
        let (&key, &val) = d.compose_squares.iter().next().unwrap();
        // redirect one composite square to a different square
        let wrong = (val + 1) % d.n_squares();
        d.compose_squares.insert(key, wrong);
        let report = verify_double_axioms(&d);
        assert!(!report.is_empty());
    }

    #[test]
    fn empty_instance_passes() {
        let e = CatGSet::empty(FiniteGroup::trivial());
        let d = translation_double(&e);
        assert!(verify_double_axioms(&d).is_empty());
        assert_eq!(d.n_squares(), 0);
    }

    #[test]
    fn interchange_holds_on_small_corpus() {
        for x in [
            samples::walking_arrow(),
            samples::walking_iso(),
            samples::c2_no_skeleton(),
            samples::twisted_c2_bundle(),
        ] {
            let d = translation_double(&x);
            assert_eq!(d.n_squares(), x.n_arrows() * x.group().order());
            assert!(verify_double_axioms(&d).is_empty());
        }
    }

    #[test]
    fn example_structure_for_category_times_gset() {
        // for X = C×S the structure functors act on the C coordinate only
        let c = samples::walking_arrow_plain();
        let g = FiniteGroup::cyclic(2);
        let s = FinGSet::regular(Arc::clone(&g));
        let x = crate::catgset::category_times_gset(&c, &s).unwrap();
        let d = translation_double(&x);
        let n = s.size();
        for f in 0..c.n_arrows() {
            for u in 0..n {
                let v = f * n + u;
                assert_eq!(d.target.on_objects[v], c.tgt(f) * n + u);
                assert_eq!(d.source.on_objects[v], c.src(f) * n + u);
            }
        }
        assert!(verify_double_axioms(&d).is_empty());
    }

    #[test]
    fn squares_cross_check_with_sqre_relation() {
        // a ⊡ b iff some square has both among its vertices
        for x in [samples::walking_arrow(), samples::c2_no_skeleton()] {
            let d = translation_double(&x);
            for a in 0..x.n_objects() {
                for b in 0..x.n_objects() {
                    let by_engine = crate::engine::sqre_related(&x, a, b).unwrap();
                    let by_squares = (0..d.n_squares()).any(|q| {
                        let vs = d.square_vertices(q).unwrap();
                        vs.contains(&a) && vs.contains(&b)
                    });
                    assert_eq!(by_engine, by_squares);
                }
            }
        }
    }
}
