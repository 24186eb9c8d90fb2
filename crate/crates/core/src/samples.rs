//! Named example instances used throughout the tests, the CLI docs and the
//! acceptance suite, plus a small deterministic generator of random valid
//! instances.

use crate::catgset::{include_gset, CatGSet};
use crate::group::FiniteGroup;
use crate::gset::FinGSet;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Discrete point over the trivial group.
pub fn point_trivial() -> Arc<CatGSet> {
    crate::catgset::include_gset(&FinGSet::point(FiniteGroup::trivial()))
}

pub fn empty_trivial() -> Arc<CatGSet> {
    CatGSet::empty(FiniteGroup::trivial())
}

/// Builds a plain finite category (trivial group) from explicit tables.
fn plain(
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
) -> Arc<CatGSet> {
    let group = FiniteGroup::trivial();
    let objects = FinGSet::trivial(Arc::clone(&group), n_objects);
    let arrows = FinGSet::trivial(group, src.len());
    CatGSet::new(objects, arrows, src, tgt, ident, comp).expect("sample is valid")
}

/// The walking arrow a → b: two objects, one non-identity arrow.
pub fn walking_arrow() -> Arc<CatGSet> {
    plain(
        2,
        vec![0, 1, 0],
        vec![0, 1, 1],
        vec![0, 1],
        BTreeMap::from([((0, 0), 0), ((1, 1), 1), ((1, 2), 2), ((2, 0), 2)]),
    )
}

/// Alias emphasising use as a plain category in C×X constructions.
pub fn walking_arrow_plain() -> Arc<CatGSet> {
    walking_arrow()
}

/// The walking isomorphism a ≅ b.
pub fn walking_iso() -> Arc<CatGSet> {
    plain(
        2,
        vec![0, 1, 0, 1],
        vec![0, 1, 1, 0],
        vec![0, 1],
        BTreeMap::from([
            ((0, 0), 0),
            ((0, 3), 3),
            ((1, 1), 1),
            ((1, 2), 2),
            ((2, 0), 2),
            ((2, 3), 1),
            ((3, 1), 3),
            ((3, 2), 0),
        ]),
    )
}

/// The parallel pair a ⇉ b.
pub fn parallel_pair_plain() -> Arc<CatGSet> {
    plain(
        2,
        vec![0, 1, 0, 0],
        vec![0, 1, 1, 1],
        vec![0, 1],
        BTreeMap::from([
            ((0, 0), 0),
            ((1, 1), 1),
            ((1, 2), 2),
            ((1, 3), 3),
            ((2, 0), 2),
            ((3, 0), 3),
        ]),
    )
}

/// Thin chain a → b → c with its composite.
pub fn chain3() -> Arc<CatGSet> {
    thin_from_relation(3, &[(0, 1), (1, 2)])
}

/// The span a → b, a → c.
pub fn span() -> Arc<CatGSet> {
    thin_from_relation(3, &[(0, 1), (0, 2)])
}

/// Parallel pair with an extra leg a → c.
pub fn parallel_pair_with_leg() -> Arc<CatGSet> {
    plain(
        3,
        vec![0, 1, 2, 0, 0, 0],
        vec![0, 1, 2, 1, 1, 2],
        vec![0, 1, 2],
        BTreeMap::from([
            ((0, 0), 0),
            ((1, 1), 1),
            ((1, 3), 3),
            ((1, 4), 4),
            ((2, 2), 2),
            ((2, 5), 5),
            ((3, 0), 3),
            ((4, 0), 4),
            ((5, 0), 5),
        ]),
    )
}

/// The seven pairwise non-weakly-equivalent trivial-group categories used as
/// the separation benchmark: point; arrow; arrow plus isolated object; span;
/// parallel pair; parallel pair plus isolated object; parallel pair plus leg.
pub fn seven_categories() -> Vec<(&'static str, Arc<CatGSet>)> {
    let arrow_plus_point = walking_arrow().disjoint_union(&point_trivial()).unwrap();
    let pair_plus_point = parallel_pair_plain()
        .disjoint_union(&point_trivial())
        .unwrap();
    vec![
        ("point", point_trivial()),
        ("arrow", walking_arrow()),
        ("arrow+point", arrow_plus_point),
        ("span", span()),
        ("parallel-pair", parallel_pair_plain()),
        ("parallel-pair+point", pair_plus_point),
        ("parallel-pair+leg", parallel_pair_with_leg()),
    ]
}

/// A C2-instance with no equivariant skeleton: the object carrier is the
/// regular orbit {x, xg} and an isomorphism f: x → xg satisfies f·g = f⁻¹,
/// so every G-stable object choice keeps two distinct isomorphic objects.
pub fn c2_no_skeleton() -> Arc<CatGSet> {
    let g = FiniteGroup::cyclic(2);
    let objects = FinGSet::regular(Arc::clone(&g));
    let arrows = FinGSet::new(
        Arc::clone(&g),
        4,
        vec![vec![0, 1], vec![1, 0], vec![2, 3], vec![3, 2]],
    )
    .unwrap();
    CatGSet::new(
        objects,
        arrows,
        vec![0, 1, 0, 1],
        vec![0, 1, 1, 0],
        vec![0, 1],
        BTreeMap::from([
            ((0, 0), 0),
            ((0, 3), 3),
            ((1, 1), 1),
            ((1, 2), 2),
            ((2, 0), 2),
            ((2, 3), 1),
            ((3, 1), 3),
            ((3, 2), 0),
        ]),
    )
    .expect("no-skeleton sample is valid")
}

/// A C2-instance whose skeleton exists but is not weakly equivalent to it:
/// two isomorphic fixed objects, each with automorphism group of order two,
/// where the action swaps the two parallel isomorphisms in each direction.
/// Arrows are pairs (c, (i,j)) with c in C2 and i, j in {x, s}; the action
/// twists the C2 coordinate on cross arrows.
pub fn twisted_c2_bundle() -> Arc<CatGSet> {
    let g = FiniteGroup::cyclic(2);
    // arrow index: (c, (i,j)) → encode below
    let arrows_model: Vec<(usize, usize, usize)> = vec![
        (0, 0, 0), // id_x
        (0, 1, 1), // id_s
        (1, 0, 0), // u
        (1, 1, 1), // v
        (0, 0, 1), // f
        (1, 0, 1), // f·u
        (0, 1, 0), // h
        (1, 1, 0), // u·h
    ];
    let index = |c: usize, i: usize, j: usize| {
        arrows_model
            .iter()
            .position(|&(c2, i2, j2)| (c2, i2, j2) == (c, i, j))
            .unwrap()
    };
    let n = arrows_model.len();
    let objects = FinGSet::trivial(Arc::clone(&g), 2);
    let mut act = Vec::with_capacity(n);
    for &(c, i, j) in &arrows_model {
        let twist = if i != j { 1 } else { 0 };
        act.push(vec![index(c, i, j), index((c + twist) % 2, i, j)]);
    }
    let arrows = FinGSet::new(Arc::clone(&g), n, act).unwrap();
    let src: Vec<usize> = arrows_model.iter().map(|&(_, i, _)| i).collect();
    let tgt: Vec<usize> = arrows_model.iter().map(|&(_, _, j)| j).collect();
    let ident = vec![index(0, 0, 0), index(0, 1, 1)];
    let mut comp = BTreeMap::new();
    for (p, &(c, j2, k)) in arrows_model.iter().enumerate() {
        for (q, &(d, i, j)) in arrows_model.iter().enumerate() {
            if j2 == j {
                comp.insert((p, q), index((c + d) % 2, i, k));
            }
        }
    }
    CatGSet::new(objects, arrows, src, tgt, ident, comp).expect("twisted bundle is valid")
}

/// One-object category from a monoid multiplication table, with the trivial
/// action of `group` on its arrows.
pub fn one_object_from_monoid(table: &[Vec<usize>], group: &Arc<FiniteGroup>) -> Arc<CatGSet> {
    let n = table.len();
    let identity = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .expect("monoid table has an identity");
    let objects = FinGSet::trivial(Arc::clone(group), 1);
    let arrows = FinGSet::trivial(Arc::clone(group), n);
    let mut comp = BTreeMap::new();
    for (p, row) in table.iter().enumerate() {
        for (q, &value) in row.iter().enumerate() {
            comp.insert((p, q), value);
        }
    }
    CatGSet::new(
        objects,
        arrows,
        vec![0; n],
        vec![0; n],
        vec![identity],
        comp,
    )
    .expect("monoid sample is valid")
}

/// Rebuilds a plain category over `group` with trivial actions on both
/// carriers.
pub fn with_trivial_action(c: &CatGSet, group: &Arc<FiniteGroup>) -> Arc<CatGSet> {
    let objects = FinGSet::trivial(Arc::clone(group), c.n_objects());
    let arrows = FinGSet::trivial(Arc::clone(group), c.n_arrows());
    CatGSet::new(
        objects,
        arrows,
        c.src_table().to_vec(),
        c.tgt_table().to_vec(),
        c.ident_table().to_vec(),
        c.comp_table().clone(),
    )
    .expect("trivial-action lift of a valid plain category is valid")
}

/// Thin category over the trivial group from a generating relation: the
/// arrows are the pairs of the reflexive-transitive closure.
pub fn thin_from_relation(n_objects: usize, pairs: &[(usize, usize)]) -> Arc<CatGSet> {
    let objects = FinGSet::trivial(FiniteGroup::trivial(), n_objects);
    thin_from_closure(objects, pairs)
}

/// Thin categorified G-set: closes the generating relation under
/// reflexivity, transitivity and the diagonal action, then takes the pairs
/// as arrows.
pub fn thin_from_closure(objects: FinGSet, pairs: &[(usize, usize)]) -> Arc<CatGSet> {
    let group = Arc::clone(objects.group());
    let n = objects.size();
    let mut rel: BTreeSet<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    rel.extend(pairs.iter().copied());
    loop {
        let mut grew = false;
        let snapshot: Vec<(usize, usize)> = rel.iter().copied().collect();
        for &(a, b) in &snapshot {
            for g in group.elements() {
                if rel.insert((objects.act(a, g), objects.act(b, g))) {
                    grew = true;
                }
            }
            for &(c, d) in &snapshot {
                if b == c && rel.insert((a, d)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let arrows_list: Vec<(usize, usize)> = rel.iter().copied().collect();
    let arrow_index: BTreeMap<(usize, usize), usize> = arrows_list
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let act = arrows_list
        .iter()
        .map(|&(a, b)| {
            group
                .elements()
                .map(|g| arrow_index[&(objects.act(a, g), objects.act(b, g))])
                .collect()
        })
        .collect();
    let arrows = FinGSet::new(Arc::clone(&group), arrows_list.len(), act).unwrap();
    let src = arrows_list.iter().map(|&(a, _)| a).collect();
    let tgt = arrows_list.iter().map(|&(_, b)| b).collect();
    let ident = (0..n).map(|x| arrow_index[&(x, x)]).collect();
    let mut comp = BTreeMap::new();
    for (p, &(b2, c)) in arrows_list.iter().enumerate() {
        for (q, &(a, b)) in arrows_list.iter().enumerate() {
            if b2 == b {
                comp.insert((p, q), arrow_index[&(a, c)]);
            }
        }
    }
    CatGSet::new(objects, arrows, src, tgt, ident, comp).expect("thin closure is valid")
}

/// SplitMix64, enough randomness for sampling test corpora deterministically.
pub struct SampleRng(u64);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n.max(1) as u64) as usize
    }
}

/// A random G-set over groups of order at most two: a mix of fixed points
/// and free orbits.
pub fn random_gset(group: &Arc<FiniteGroup>, max_size: usize, rng: &mut SampleRng) -> FinGSet {
    let mut x = FinGSet::empty(Arc::clone(group));
    loop {
        let free = group.order() > 1 && rng.below(2) == 0;
        let next = if free {
            x.disjoint_union(&FinGSet::regular(Arc::clone(group)))
                .unwrap()
        } else {
            x.disjoint_union(&FinGSet::point(Arc::clone(group)))
                .unwrap()
        };
        if next.size() > max_size || (x.size() > 0 && rng.below(3) == 0) {
            break;
        }
        x = next;
    }
    x
}

/// Generates a random valid instance with at most `max_arrows` arrows.
/// The mix covers discrete inclusions, thin closures, one-object monoids,
/// no-skeleton instances over C2 and disjoint unions of these.
pub fn random_instance(group: &Arc<FiniteGroup>, max_arrows: usize, seed: u64) -> Arc<CatGSet> {
    let mut rng = SampleRng::new(seed);
    for _ in 0..64 {
        let candidate = random_piece(group, max_arrows, &mut rng, 2);
        if candidate.n_arrows() <= max_arrows && candidate.n_arrows() > 0 {
            return candidate;
        }
    }
    include_gset(&FinGSet::point(Arc::clone(group)))
}

fn random_piece(
    group: &Arc<FiniteGroup>,
    max_arrows: usize,
    rng: &mut SampleRng,
    depth: usize,
) -> Arc<CatGSet> {
    let kind = rng.below(if depth > 0 { 5 } else { 4 });
    match kind {
        0 => include_gset(&random_gset(group, max_arrows.max(1), rng)),
        1 => {
            let objects = random_gset(group, 3, rng);
            let n = objects.size();
            let mut pairs = Vec::new();
            for _ in 0..rng.below(3) {
                if n > 0 {
                    pairs.push((rng.below(n), rng.below(n)));
                }
            }
            thin_from_closure(objects, &pairs)
        }
        2 => {
            let c2_monoid = vec![vec![0, 1], vec![1, 0]];
            let idem = vec![vec![0, 1], vec![1, 1]];
            if rng.below(2) == 0 {
                one_object_from_monoid(&c2_monoid, group)
            } else {
                one_object_from_monoid(&idem, group)
            }
        }
        3 => {
            if group.order() == 2 {
                c2_no_skeleton()
            } else {
                with_trivial_action(&walking_iso(), group)
            }
        }
        _ => {
            let a = random_piece(group, max_arrows / 2, rng, depth - 1);
            let b = random_piece(group, max_arrows / 2, rng, depth - 1);
            a.disjoint_union(&b).unwrap()
        }
    }
}
