//! Finite right G-sets with validated actions: orbits, stabilizers,
//! equivariant maps and isomorphism testing.

use crate::group::FiniteGroup;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GSetError {
    #[error("action table has {rows} rows, expected carrier size {size}")]
    WrongRowCount { rows: usize, size: usize },
    #[error("action row {x} has {len} entries, expected group order {order}")]
    WrongRowLength { x: usize, len: usize, order: usize },
    #[error("action entry out of range at ({x},{g}): {value} not below {size}")]
    EntryOutOfRange {
        x: usize,
        g: usize,
        value: usize,
        size: usize,
    },
    #[error("identity does not fix element {x}")]
    IdentityNotFixed { x: usize },
    #[error("action not associative at (x={x}, g={g}, h={h})")]
    ActionNotAssociative { x: usize, g: usize, h: usize },
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("index {index} out of range for carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
}

/// A finite right G-set: carrier {0,..,size-1} and a validated action table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGSet {
    group: Arc<FiniteGroup>,
    act: Vec<Vec<usize>>,
}

impl FinGSet {
    pub fn new(
        group: Arc<FiniteGroup>,
        size: usize,
        act: Vec<Vec<usize>>,
    ) -> Result<Self, GSetError> {
        let order = group.order();
        if act.len() != size {
            return Err(GSetError::WrongRowCount {
                rows: act.len(),
                size,
            });
        }
        for (x, row) in act.iter().enumerate() {
            if row.len() != order {
                return Err(GSetError::WrongRowLength {
                    x,
                    len: row.len(),
                    order,
                });
            }
            for (g, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(GSetError::EntryOutOfRange {
                        x,
                        g,
                        value: v,
                        size,
                    });
                }
            }
        }
        let e = group.identity();
        for (x, row) in act.iter().enumerate() {
            if row[e] != x {
                return Err(GSetError::IdentityNotFixed { x });
            }
        }
        for x in 0..size {
            for g in group.elements() {
                for h in group.elements() {
                    if act[act[x][g]][h] != act[x][group.mul(g, h)] {
                        return Err(GSetError::ActionNotAssociative { x, g, h });
                    }
                }
            }
        }
        Ok(FinGSet { group, act })
    }

    /// Trivial action on `size` points.
    pub fn trivial(group: Arc<FiniteGroup>, size: usize) -> Self {
        let order = group.order();
        FinGSet {
            group,
            act: (0..size).map(|x| vec![x; order]).collect(),
        }
    }

    /// The group acting on itself by right multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let act = group
            .elements()
            .map(|x| group.elements().map(|g| group.mul(x, g)).collect())
            .collect();
        FinGSet { group, act }
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        FinGSet { group, act: vec![] }
    }

    pub fn point(group: Arc<FiniteGroup>) -> Self {
        FinGSet::trivial(group, 1)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.act.len()
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.act[x][g]
    }

    pub fn act_table(&self) -> &Vec<Vec<usize>> {
        &self.act
    }

    /// Orbit blocks, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut blocks = Vec::new();
        for x in 0..self.size() {
            if seen[x] {
                continue;
            }
            let orbit = self.orbit_of(x);
            for &y in &orbit {
                seen[y] = true;
            }
            blocks.push(orbit);
        }
        blocks
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act[x][g]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// Stabilizer subgroup {g : x·g = x}, returned sorted. The result is
    /// checked closed under product and inverse before returning.
    pub fn stabilizer(&self, x: usize) -> Result<Vec<usize>, GSetError> {
        if x >= self.size() {
            return Err(GSetError::OutOfRange {
                index: x,
                size: self.size(),
            });
        }
        let stab: Vec<usize> = self
            .group
            .elements()
            .filter(|&g| self.act[x][g] == x)
            .collect();
        debug_assert!(self.group.is_subgroup(&stab));
        Ok(stab)
    }

    pub fn disjoint_union(&self, other: &FinGSet) -> Result<FinGSet, GSetError> {
        if self.group != other.group {
            return Err(GSetError::GroupMismatch);
        }
        let offset = self.size();
        let mut act = self.act.clone();
        act.extend(
            other
                .act
                .iter()
                .map(|row| row.iter().map(|&v| v + offset).collect()),
        );
        Ok(FinGSet {
            group: Arc::clone(&self.group),
            act,
        })
    }

    /// Product with the diagonal action; pair (x,y) is indexed x·|Y| + y.
    pub fn product(&self, other: &FinGSet) -> Result<FinGSet, GSetError> {
        if self.group != other.group {
            return Err(GSetError::GroupMismatch);
        }
        let m = other.size();
        let mut act = Vec::with_capacity(self.size() * m);
        for x in 0..self.size() {
            for y in 0..m {
                act.push(
                    self.group
                        .elements()
                        .map(|g| self.act[x][g] * m + other.act[y][g])
                        .collect(),
                );
            }
        }
        Ok(FinGSet {
            group: Arc::clone(&self.group),
            act,
        })
    }

    /// Applies a relabeling x ↦ perm(x) to the carrier.
    pub fn relabel(&self, perm: &[usize]) -> FinGSet {
        let n = self.size();
        assert_eq!(perm.len(), n);
        let mut act = vec![vec![0; self.group.order()]; n];
        for x in 0..n {
            for g in self.group.elements() {
                act[perm[x]][g] = perm[self.act[x][g]];
            }
        }
        FinGSet {
            group: Arc::clone(&self.group),
            act,
        }
    }

    pub fn is_equivariant_map(&self, other: &FinGSet, map: &[usize]) -> bool {
        map.len() == self.size()
            && map.iter().all(|&v| v < other.size())
            && (0..self.size()).all(|x| {
                self.group
                    .elements()
                    .all(|g| map[self.act[x][g]] == other.act[map[x]][g])
            })
    }

    /// All equivariant maps self → other, enumerated by choosing images of
    /// orbit representatives whose stabilizer fixes the image.
    pub fn equivariant_maps(&self, other: &FinGSet) -> Result<Vec<Vec<usize>>, GSetError> {
        if self.group != other.group {
            return Err(GSetError::GroupMismatch);
        }
        let orbits = self.orbits();
        let mut maps: Vec<Vec<usize>> = vec![vec![usize::MAX; self.size()]];
        for orbit in &orbits {
            let rep = orbit[0];
            let stab = self.stabilizer(rep)?;
            let mut next = Vec::new();
            for map in &maps {
                'candidate: for y in 0..other.size() {
                    // stabilizer of rep must fix y
                    if !stab.iter().all(|&k| other.act(y, k) == y) {
                        continue;
                    }
                    let mut extended = map.clone();
                    for g in self.group.elements() {
                        let xg = self.act(rep, g);
                        let yg = other.act(y, g);
                        if extended[xg] != usize::MAX && extended[xg] != yg {
                            continue 'candidate;
                        }
                        extended[xg] = yg;
                    }
                    next.push(extended);
                }
            }
            maps = next;
            if maps.is_empty() {
                break;
            }
        }
        Ok(maps)
    }

    /// Finds an equivariant bijection to `other` if one exists. Orbit-size
    /// multisets prefilter, then orbits are matched by backtracking. The
    /// returned bijection is re-checked equivariant.
    pub fn isomorphic_to(&self, other: &FinGSet) -> Result<Option<Vec<usize>>, GSetError> {
        if self.group != other.group {
            return Err(GSetError::GroupMismatch);
        }
        if self.size() != other.size() {
            return Ok(None);
        }
        let a_orbits = self.orbits();
        let b_orbits = other.orbits();
        let mut a_sizes: Vec<usize> = a_orbits.iter().map(Vec::len).collect();
        let mut b_sizes: Vec<usize> = b_orbits.iter().map(Vec::len).collect();
        a_sizes.sort_unstable();
        b_sizes.sort_unstable();
        if a_sizes != b_sizes {
            return Ok(None);
        }
        let mut used = vec![false; b_orbits.len()];
        let mut map = vec![usize::MAX; self.size()];
        if self.match_orbits(other, &a_orbits, &b_orbits, 0, &mut used, &mut map) {
            debug_assert!(self.is_equivariant_map(other, &map));
            debug_assert!(is_bijection(&map, other.size()));
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    fn match_orbits(
        &self,
        other: &FinGSet,
        a_orbits: &[Vec<usize>],
        b_orbits: &[Vec<usize>],
        i: usize,
        used: &mut [bool],
        map: &mut [usize],
    ) -> bool {
        if i == a_orbits.len() {
            return true;
        }
        let rep = a_orbits[i][0];
        let stab = self.stabilizer(rep).expect("rep in range");
        for (j, b_orbit) in b_orbits.iter().enumerate() {
            if used[j] || b_orbit.len() != a_orbits[i].len() {
                continue;
            }
            'target: for &y in b_orbit {
                // equal orbit sizes make stabilizer containment an equality
                if !stab.iter().all(|&k| other.act(y, k) == y) {
                    continue;
                }
                let saved: Vec<usize> = a_orbits[i].iter().map(|&x| map[x]).collect();
                for g in self.group.elements() {
                    let xg = self.act(rep, g);
                    let yg = other.act(y, g);
                    if map[xg] != usize::MAX && map[xg] != yg {
                        for (&x, &s) in a_orbits[i].iter().zip(&saved) {
                            map[x] = s;
                        }
                        continue 'target;
                    }
                    map[xg] = yg;
                }
                used[j] = true;
                if self.match_orbits(other, a_orbits, b_orbits, i + 1, used, map) {
                    return true;
                }
                used[j] = false;
                for (&x, &s) in a_orbits[i].iter().zip(&saved) {
                    map[x] = s;
                }
            }
        }
        false
    }
}

pub(crate) fn is_bijection(map: &[usize], size: usize) -> bool {
    if map.len() != size {
        return false;
    }
    let mut seen = vec![false; size];
    map.iter()
        .all(|&v| v < size && !std::mem::replace(&mut seen[v], true))
}
