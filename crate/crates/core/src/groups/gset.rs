use super::{FiniteGroup, GroupError, GroupHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite set `0..m` with an action of a finite group.
#[derive(Clone, Debug)]
pub struct GSet {
    group: FiniteGroup,
    size: usize,
    side: Side,
    table: Vec<usize>,
}

impl GSet {
    /// `act(σ, x)` is `σ·x` for a left action and `x·σ` for a right one.
    pub fn new(group: FiniteGroup, size: usize, side: Side, act: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let n = group.order();
        let mut table = vec![0; n * size];
        for s in 0..n {
            for x in 0..size {
                let y = act(s, x);
                if y >= size {
                    return Err(GroupError::Invalid(format!("action sends {x} outside the set")));
                }
                table[s * size + x] = y;
            }
        }
        let set = GSet { group, size, side, table };
        for x in 0..size {
            if set.act(0, x) != x {
                return Err(GroupError::Invalid(format!("identity moves {x}")));
            }
        }
        for s in 0..n {
            for t in 0..n {
                for x in 0..size {
                    let (lhs, rhs) = match side {
                        Side::Left => (set.act(s, set.act(t, x)), set.act(set.group.mul(s, t), x)),
                        Side::Right => (set.act(t, set.act(s, x)), set.act(set.group.mul(s, t), x)),
                    };
                    if lhs != rhs {
                        return Err(GroupError::Invalid(format!("action is not associative at ({s}, {t}, {x})")));
                    }
                }
            }
        }
        Ok(set)
    }

    /// The group acting on itself by left translation.
    pub fn regular(group: &FiniteGroup) -> GSet {
        let g = group.clone();
        GSet::new(group.clone(), group.order(), Side::Left, move |s, x| g.mul(s, x)).expect("regular action")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn side(&self) -> Side {
        self.side
    }

    #[inline]
    pub fn act(&self, s: usize, x: usize) -> usize {
        self.table[s * self.size + x]
    }

    /// Orbits as sorted element lists, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = vec![];
        for x in 0..self.size {
            if !seen[x] {
                let orb = orbit_stabilizer(self, x).0;
                for &y in &orb {
                    seen[y] = true;
                }
                out.push(orb);
            }
        }
        out
    }
}

/// Orbit (sorted) and stabilizer of `x`, the latter with its inclusion into the acting group.
pub fn orbit_stabilizer(set: &GSet, x: usize) -> (Vec<usize>, FiniteGroup, GroupHom) {
    let g = set.group();
    let mut orbit: Vec<usize> = g.elements().map(|s| set.act(s, x)).collect();
    orbit.sort_unstable();
    orbit.dedup();
    let stab: Vec<usize> = g.elements().filter(|&s| set.act(s, x) == x).collect();
    let (sub, inc) = g.subgroup(&stab).expect("stabilizers are subgroups");
    (orbit, sub, inc)
}
