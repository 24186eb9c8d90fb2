//! Finite groups and group homomorphisms as explicit multiplication tables.
//!
//! Elements are dense 0-based indices. A group is validated eagerly at
//! construction: associativity on all triples, a two-sided identity and a
//! two-sided inverse for every element. Everything downstream assumes
//! validated inputs.

use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry out of range at ({g},{h}): {value} not below order {order}")]
    EntryOutOfRange {
        g: usize,
        h: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("multiplication not associative on triple ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("map of length {len} does not cover source group of order {expected}")]
    WrongLength { len: usize, expected: usize },
    #[error("map value {value} out of range for target group of order {order}")]
    MapOutOfRange { value: usize, order: usize },
    #[error("not a homomorphism: fails on pair ({g},{h})")]
    NotHomomorphism { g: usize, h: usize },
}

/// A finite group given by its Cayley table. `mul[g][h]` is the product g·h,
/// and a right action satisfies x·(gh) = (x·g)·h with this convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and computes identity and inverses from it.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Arc<Self>, GroupError> {
        let order = mul.len();
        for (row, r) in mul.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    order,
                });
            }
            for (h, &v) in r.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange {
                        g: row,
                        h,
                        value: v,
                        order,
                    });
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(order);
        for (g, row) in mul.iter().enumerate() {
            let gi = (0..order)
                .find(|&h| row[h] == identity && mul[h][g] == identity)
                .ok_or(GroupError::NoInverse { element: g })?;
            inv.push(gi);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup { mul, identity, inv }))
    }

    pub fn trivial() -> Arc<Self> {
        FiniteGroup::from_table(vec![vec![0]]).expect("trivial group is valid")
    }

    /// Cyclic group of order n, with i·j = i+j mod n.
    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n > 0, "cyclic group needs positive order");
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(mul).expect("cyclic table is valid")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul_table(&self) -> &Vec<Vec<usize>> {
        &self.mul
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Checks that a sorted element set is closed under product and inverse.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if !set.contains(&self.identity) {
            return false;
        }
        set.iter().all(|&g| {
            g < self.order()
                && set.binary_search(&self.inv[g]).is_ok()
                && set
                    .iter()
                    .all(|&h| set.binary_search(&self.mul[g][h]).is_ok())
        })
    }

    /// All subgroups, as sorted element sets, by subset scan. Fine for the
    /// desk-scale orders this library targets.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        assert!(n <= 16, "subgroup scan limited to order <= 16");
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 << self.identity == 0 {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&g| mask & (1 << g) != 0).collect();
            if self.is_subgroup(&set) {
                out.push(set);
            }
        }
        out
    }

    /// Conjugate subgroup g⁻¹ H g, sorted.
    pub fn conjugate_subgroup(&self, set: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .map(|&h| self.mul(self.mul(self.inv[g], h), g))
            .collect();
        out.sort_unstable();
        out
    }

    /// Lexicographically least conjugate of a subgroup: a canonical key for
    /// its conjugacy class.
    pub fn conjugacy_class_min(&self, set: &[usize]) -> Vec<usize> {
        self.elements()
            .map(|g| self.conjugate_subgroup(set, g))
            .min()
            .expect("group is nonempty")
    }
}

/// A homomorphism of finite groups, stored as a total map on source indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::WrongLength {
                len: map.len(),
                expected: source.order(),
            });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.order()) {
            return Err(GroupError::MapOutOfRange {
                value: v,
                order: target.order(),
            });
        }
        if map[source.identity()] != target.identity() {
            return Err(GroupError::NotHomomorphism {
                g: source.identity(),
                h: source.identity(),
            });
        }
        for g in source.elements() {
            for h in source.elements() {
                if map[source.mul(g, h)] != target.mul(map[g], map[h]) {
                    return Err(GroupError::NotHomomorphism { g, h });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GroupHom {
            source: Arc::clone(group),
            target: Arc::clone(group),
            map: group.elements().collect(),
        }
    }

    /// The unique homomorphism from the trivial group.
    pub fn from_trivial(target: &Arc<FiniteGroup>) -> Self {
        GroupHom {
            source: FiniteGroup::trivial(),
            target: Arc::clone(target),
            map: vec![target.identity()],
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map_table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

/// The symmetric group S3 as a Cayley table, used in tests and samples.
/// Elements are the permutations of {0,1,2} in lexicographic one-line order.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    // product g·h = "apply g, then h" so that right actions compose.
    (0..6)
        .map(|g| {
            (0..6)
                .map(|h| {
                    let composed = [
                        perms[h][perms[g][0]],
                        perms[h][perms[g][1]],
                        perms[h][perms[g][2]],
                    ];
                    index(&composed)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_from_table() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn no_inverse_detected() {
        // Oracle: scan all candidates for an inverse of element 1 by hand.
        let table = vec![vec![0, 1], vec![1, 1]];
        let identity = 0;
        let no_inv_oracle = !(0..2).any(|h| table[1][h] == identity && table[h][1] == identity);
        assert!(no_inv_oracle);
        assert_eq!(
            FiniteGroup::from_table(table),
            Err(GroupError::NoInverse { element: 1 })
        );
    }

    #[test]
    fn s3_validates_with_all_triples() {
        let table = s3_table();
        // Oracle: re-check all 216 associativity triples directly on the table.
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    assert_eq!(table[table[a][b]][c], table[a][table[b][c]]);
                }
            }
        }
        let g = FiniteGroup::from_table(table).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn broken_associativity_names_triple() {
        // C3 table with one entry mutated: identity and inverses survive,
        // associativity does not.
        let mut bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        bad[1][1] = 0;
        match FiniteGroup::from_table(bad) {
            Err(GroupError::NotAssociative { a, b, c }) => {
                // oracle: (1·1)·2 = 2 while 1·(1·2) = 1 in the mutated table
                assert_eq!((a, b, c), (1, 1, 2));
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn hom_validation() {
        let c2 = FiniteGroup::cyclic(2);
        assert!(GroupHom::new(Arc::clone(&c2), Arc::clone(&c2), vec![0, 1]).is_ok());
        // constant-to-identity map is the trivial hom
        assert!(GroupHom::new(Arc::clone(&c2), Arc::clone(&c2), vec![0, 0]).is_ok());
        // identity must map to identity
        assert_eq!(
            GroupHom::new(Arc::clone(&c2), Arc::clone(&c2), vec![1, 0]),
            Err(GroupError::NotHomomorphism { g: 0, h: 0 })
        );
    }

    #[test]
    fn subgroups_of_c2_and_conjugacy() {
        let c2 = FiniteGroup::cyclic(2);
        let subs = c2.subgroups();
        assert_eq!(subs, vec![vec![0], vec![0, 1]]);
        assert_eq!(c2.conjugacy_class_min(&[0, 1]), vec![0, 1]);
    }

    #[test]
    fn s3_has_six_subgroups() {
        let g = FiniteGroup::from_table(s3_table()).unwrap();
        let subs = g.subgroups();
        // 1 trivial + 3 of order 2 + 1 of order 3 + S3 itself
        assert_eq!(subs.len(), 6);
        // the three order-2 subgroups are conjugate
        let order2: Vec<_> = subs.iter().filter(|s| s.len() == 2).collect();
        let keys: Vec<_> = order2.iter().map(|s| g.conjugacy_class_min(s)).collect();
        assert!(keys.windows(2).all(|w| w[0] == w[1]));
    }
}
