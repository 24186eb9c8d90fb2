//! Right groupoid-sets: a carrier with a structure map into the objects of
//! the groupoid and a partial action by arrows, defined exactly where the
//! structure map meets the arrow's target.

use super::{FiniteGroupoid, GroupoidError};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidSet {
    groupoid: Arc<FiniteGroupoid>,
    sigma: Vec<usize>,
    act: BTreeMap<(usize, usize), usize>,
}

impl GroupoidSet {
    pub fn new(
        groupoid: Arc<FiniteGroupoid>,
        size: usize,
        sigma: Vec<usize>,
        act: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, GroupoidError> {
        if sigma.len() != size {
            return Err(GroupoidError::WrongTableLength {
                table: "sigma",
                len: sigma.len(),
                expected: size,
            });
        }
        for (index, &value) in sigma.iter().enumerate() {
            if value >= groupoid.n_objects() {
                return Err(GroupoidError::TableOutOfRange {
                    table: "sigma",
                    index,
                    value,
                    bound: groupoid.n_objects(),
                });
            }
        }
        let gs = GroupoidSet {
            groupoid,
            sigma,
            act,
        };
        gs.validate(size)?;
        Ok(gs)
    }

    fn validate(&self, size: usize) -> Result<(), GroupoidError> {
        let gd = &self.groupoid;
        // the action is defined exactly on the fibre product
        for (&(x, g), &y) in &self.act {
            if x >= size || g >= gd.n_arrows() {
                return Err(GroupoidError::ActionAxiomViolated {
                    what: "action entry out of range",
                    witness: vec![x, g],
                });
            }
            if self.sigma[x] != gd.tgt(g) {
                return Err(GroupoidError::ActionAxiomViolated {
                    what: "action defined off the fibre product",
                    witness: vec![x, g],
                });
            }
            if y >= size {
                return Err(GroupoidError::ActionAxiomViolated {
                    what: "action value out of range",
                    witness: vec![x, g],
                });
            }
            // condition 1: the structure map follows the arrow source
            if self.sigma[y] != gd.src(g) {
                return Err(GroupoidError::StructureMapViolated {
                    element: x,
                    detail: format!(": sigma(x·{g}) is not the source of the arrow"),
                });
            }
        }
        for x in 0..size {
            for g in 0..gd.n_arrows() {
                if self.sigma[x] == gd.tgt(g) && !self.act.contains_key(&(x, g)) {
                    return Err(GroupoidError::ActionAxiomViolated {
                        what: "action missing on the fibre product",
                        witness: vec![x, g],
                    });
                }
            }
            // condition 2: identities act trivially
            if self.act[&(x, gd.ident(self.sigma[x]))] != x {
                return Err(GroupoidError::ActionAxiomViolated {
                    what: "identity does not fix element",
                    witness: vec![x],
                });
            }
        }
        // condition 3: compatibility with composition
        for (&(x, g), &xg) in &self.act {
            for h in 0..gd.n_arrows() {
                if gd.src(g) != gd.tgt(h) {
                    continue;
                }
                let gh = gd.compose(g, h)?;
                if self.act[&(xg, h)] != self.act[&(x, gh)] {
                    return Err(GroupoidError::ActionAxiomViolated {
                        what: "(xg)h differs from x(gh)",
                        witness: vec![x, g, h],
                    });
                }
            }
        }
        Ok(())
    }

    pub fn empty(groupoid: Arc<FiniteGroupoid>) -> Self {
        GroupoidSet {
            groupoid,
            sigma: vec![],
            act: BTreeMap::new(),
        }
    }

    /// The unit groupoid-set (𝓖0, id): the carrier is the object set and an
    /// arrow g moves its target to its source.
    pub fn unit(groupoid: &Arc<FiniteGroupoid>) -> Self {
        let mut act = BTreeMap::new();
        for g in 0..groupoid.n_arrows() {
            act.insert((groupoid.tgt(g), g), groupoid.src(g));
        }
        GroupoidSet {
            groupoid: Arc::clone(groupoid),
            sigma: (0..groupoid.n_objects()).collect(),
            act,
        }
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self, x: usize) -> usize {
        self.sigma[x]
    }

    pub fn sigma_table(&self) -> &[usize] {
        &self.sigma
    }

    pub fn act_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.act
    }

    pub fn act(&self, x: usize, g: usize) -> Result<usize, GroupoidError> {
        self.act
            .get(&(x, g))
            .copied()
            .ok_or(GroupoidError::ActionAxiomViolated {
                what: "action applied off the fibre product",
                witness: vec![x, g],
            })
    }

    pub fn fibre(&self, object: usize) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.sigma[x] == object)
            .collect()
    }

    pub fn disjoint_union(&self, other: &GroupoidSet) -> Result<GroupoidSet, GroupoidError> {
        if self.groupoid != other.groupoid {
            return Err(GroupoidError::GroupoidMismatch);
        }
        let offset = self.size();
        let mut sigma = self.sigma.clone();
        sigma.extend_from_slice(&other.sigma);
        let mut act = self.act.clone();
        for (&(x, g), &y) in &other.act {
            act.insert((x + offset, g), y + offset);
        }
        Ok(GroupoidSet {
            groupoid: Arc::clone(&self.groupoid),
            sigma,
            act,
        })
    }

    /// Fibre product over the object set: pairs with equal structure value,
    /// the diagonal action, indexed in lexicographic pair order.
    pub fn fibre_product(&self, other: &GroupoidSet) -> Result<GroupoidSet, GroupoidError> {
        if self.groupoid != other.groupoid {
            return Err(GroupoidError::GroupoidMismatch);
        }
        let mut pairs = Vec::new();
        for x in 0..self.size() {
            for y in 0..other.size() {
                if self.sigma[x] == other.sigma[y] {
                    pairs.push((x, y));
                }
            }
        }
        let index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let sigma = pairs.iter().map(|&(x, _)| self.sigma[x]).collect();
        let mut act = BTreeMap::new();
        for (i, &(x, y)) in pairs.iter().enumerate() {
            for g in 0..self.groupoid.n_arrows() {
                if self.sigma[x] == self.groupoid.tgt(g) {
                    let image = (self.act(x, g)?, other.act(y, g)?);
                    act.insert((i, g), index[&image]);
                }
            }
        }
        GroupoidSet::new(Arc::clone(&self.groupoid), pairs.len(), sigma, act)
    }

    /// Orbit blocks under action reachability.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = crate::engine::UnionFind::new(self.size());
        for (&(x, _), &y) in &self.act {
            uf.union(x, y);
        }
        uf.blocks()
    }

    /// Loop arrows at sigma(x) fixing x.
    pub fn stabilizer(&self, x: usize) -> Result<Vec<usize>, GroupoidError> {
        if x >= self.size() {
            return Err(GroupoidError::OutOfRange {
                what: "carrier",
                index: x,
                size: self.size(),
            });
        }
        Ok(self
            .groupoid
            .loops_at(self.sigma[x])
            .into_iter()
            .filter(|&h| self.act[&(x, h)] == x)
            .collect())
    }

    pub fn is_equivariant_map(&self, other: &GroupoidSet, map: &[usize]) -> bool {
        map.len() == self.size()
            && map.iter().all(|&v| v < other.size())
            && (0..self.size()).all(|x| other.sigma[map[x]] == self.sigma[x])
            && self
                .act
                .iter()
                .all(|(&(x, g), &y)| other.act.get(&(map[x], g)) == Some(&map[y]))
    }

    /// All equivariant maps self → other, by choosing stabilizer-compatible
    /// images of orbit representatives and extending along the action.
    pub fn equivariant_maps(&self, other: &GroupoidSet) -> Result<Vec<Vec<usize>>, GroupoidError> {
        if self.groupoid != other.groupoid {
            return Err(GroupoidError::GroupoidMismatch);
        }
        let orbits = self.orbits();
        let mut maps: Vec<Vec<usize>> = vec![vec![usize::MAX; self.size()]];
        for orbit in &orbits {
            let rep = orbit[0];
            let stab = self.stabilizer(rep)?;
            let mut next = Vec::new();
            for map in &maps {
                'cand: for y in 0..other.size() {
                    if other.sigma[y] != self.sigma[rep] {
                        continue;
                    }
                    if !stab.iter().all(|&h| other.act[&(y, h)] == y) {
                        continue;
                    }
                    let mut extended = map.clone();
                    extended[rep] = y;
                    // breadth-first extension along the action
                    let mut queue = vec![rep];
                    while let Some(x) = queue.pop() {
                        let fx = extended[x];
                        for g in 0..self.groupoid.n_arrows() {
                            if self.sigma[x] != self.groupoid.tgt(g) {
                                continue;
                            }
                            let xg = self.act[&(x, g)];
                            let fxg = other.act[&(fx, g)];
                            if extended[xg] == usize::MAX {
                                extended[xg] = fxg;
                                queue.push(xg);
                            } else if extended[xg] != fxg {
                                continue 'cand;
                            }
                        }
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

    /// An equivariant structure-preserving bijection, if any.
    pub fn isomorphic_to(&self, other: &GroupoidSet) -> Result<Option<Vec<usize>>, GroupoidError> {
        if self.groupoid != other.groupoid {
            return Err(GroupoidError::GroupoidMismatch);
        }
        if self.size() != other.size() {
            return Ok(None);
        }
        for map in self.equivariant_maps(other)? {
            if crate::gset::is_bijection(&map, other.size()) {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}
