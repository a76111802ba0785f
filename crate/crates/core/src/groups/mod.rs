//! Finite groups given by full multiplication tables, their modules and actions.

mod abelian;
mod gset;
mod module;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use abelian::{abelian_invariants, AbelianStructure};
pub use gset::{orbit_stabilizer, GSet, Side};
pub use module::{dual_module, evaluate_character, exterior_pairs, exterior_square, GModule};

/// Largest order accepted for a tabulated group.
pub const MAX_ORDER: usize = 4096;
/// Default bound on closure enumeration for permutation generators.
pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("not a group: {axiom} fails at {witness:?}")]
    NotAGroup { axiom: &'static str, witness: Vec<usize> },
    #[error("closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("group of order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("not abelian: {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("not a homomorphism at ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("action is not by automorphisms: element {element} at ({a}, {b})")]
    ActionNotByAutomorphisms { element: usize, a: usize, b: usize },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// A finite group on `0..n` with `0` the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

#[derive(PartialEq, Eq)]
struct GroupData {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    name: Option<String>,
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self, n: usize) -> usize {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 % n as u64) as usize
    }
}

impl FiniteGroup {
    fn build(n: usize, table: Vec<u32>, generators: Option<Vec<usize>>, name: Option<String>) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Invalid("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        for a in 0..n {
            if m(0, a) != a || m(a, 0) != a {
                return Err(GroupError::NotAGroup { axiom: "identity", witness: vec![a] });
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| m(a, b) == 0) {
                Some(b) if m(b, a) == 0 => inv[a] = b as u32,
                _ => return Err(GroupError::NotAGroup { axiom: "inverse", witness: vec![a] }),
            }
        }
        let assoc = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        if n <= 256 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAGroup { axiom: "associativity", witness: vec![a, b, c] });
                        }
                    }
                }
            }
        } else {
            let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
            for _ in 0..1_000_000 {
                let (a, b, c) = (rng.next(n), rng.next(n), rng.next(n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAGroup { axiom: "associativity", witness: vec![a, b, c] });
                }
            }
        }
        let generators = match generators {
            Some(g) => g,
            None => greedy_generators(n, &table),
        };
        Ok(FiniteGroup { inner: Arc::new(GroupData { n, table, inv, generators, name }) })
    }

    pub fn order(&self) -> usize {
        self.inner.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a * self.inner.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn generators(&self) -> &[usize] {
        &self.inner.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.inner.name.as_deref()
    }

    pub fn with_name(&self, name: &str) -> FiniteGroup {
        let d = &self.inner;
        FiniteGroup {
            inner: Arc::new(GroupData {
                n: d.n,
                table: d.table.clone(),
                inv: d.inv.clone(),
                generators: d.generators.clone(),
                name: Some(name.to_string()),
            }),
        }
    }

    /// The multiplication table as nested index rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// First pair of non-commuting elements, if any.
    pub fn commutator_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.order() {
            for b in a + 1..self.order() {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.commutator_witness().is_none()
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// Whether the (sorted or unsorted) element list is a subgroup.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &e in elems {
            member[e] = true;
        }
        member[0] && elems.iter().all(|&a| elems.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    /// The subgroup on `elems` (which must contain the identity) and its inclusion.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, GroupHom), GroupError> {
        if !self.is_subgroup(elems) {
            return Err(GroupError::Invalid("element list is not a subgroup".into()));
        }
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let pos: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = sorted.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = pos[&self.mul(sorted[i], sorted[j])] as u32;
            }
        }
        let sub = FiniteGroup::build(k, table, None, None)?;
        let hom = GroupHom { source: sub.clone(), target: self.clone(), images: sorted };
        Ok((sub, hom))
    }
}

fn greedy_generators(n: usize, table: &[u32]) -> Vec<usize> {
    let mut gens = vec![];
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0usize];
    for g in 1..n {
        if member[g] {
            continue;
        }
        gens.push(g);
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            i += 1;
            for &h in &gens {
                let y = table[x * n + h] as usize;
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
        }
    }
    gens
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(name) => write!(f, "FiniteGroup({name}, order {})", self.order()),
            None => write!(f, "FiniteGroup(order {})", self.order()),
        }
    }
}

/// Validates a multiplication table.
pub fn group_from_table(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::Invalid(format!("row {i} has length {}, expected {n}", row.len())));
        }
        for &v in row {
            if v >= n {
                return Err(GroupError::Invalid(format!("entry {v} out of range in row {i}")));
            }
            flat.push(v as u32);
        }
    }
    FiniteGroup::build(n, flat, None, None)
}

/// Closure of permutations of `0..degree`; elements are composed as `(a·b)(i) = a(b(i))`.
pub fn group_from_permutations(generators: &[Vec<usize>], degree: usize) -> Result<FiniteGroup, GroupError> {
    group_from_permutations_bounded(generators, degree, DEFAULT_CLOSURE_BOUND)
}

pub fn group_from_permutations_bounded(
    generators: &[Vec<usize>],
    degree: usize,
    bound: usize,
) -> Result<FiniteGroup, GroupError> {
    for g in generators {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
            return Err(GroupError::Invalid(format!("{g:?} is not a permutation of {degree} points")));
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    // parent[x] = (p, g) with x = p·gens[g]
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut right: Vec<Vec<usize>> = vec![];
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            let y: Vec<usize> = (0..degree).map(|k| elems[i][g[k]]).collect();
            let next = elems.len();
            let j = *index.entry(y.clone()).or_insert(next);
            if j == next {
                if elems.len() >= bound {
                    return Err(GroupError::ClosureOverflow(bound));
                }
                elems.push(y);
                parent.push((i, gi));
            }
            row.push(j);
        }
        right.push(row);
        i += 1;
    }
    let n = elems.len();
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge(n));
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        table[a * n] = a as u32;
        for b in 1..n {
            let (p, g) = parent[b];
            table[a * n + b] = right[table[a * n + p] as usize][g] as u32;
        }
    }
    let gens: Vec<usize> = generators.iter().map(|g| index[g]).filter(|&j| j != 0).collect();
    FiniteGroup::build(n, table, Some(gens), None)
}

pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::build(n, table, Some(gens), Some(format!("Z/{n}"))).expect("cyclic table")
}

/// `ℤ/d₁ × … × ℤ/d_k`, element index mixed-radix with the first factor major.
pub fn abelian_group(invariants: &[usize]) -> FiniteGroup {
    let mut g = cyclic_group(1);
    for &d in invariants {
        g = direct_product(&g, &cyclic_group(d));
    }
    let name = invariants.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ");
    g.with_name(if name.is_empty() { "1" } else { &name })
}

/// `G₁ × G₂` with `(a, b)` at index `a·|G₂| + b`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> FiniteGroup {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    assert!(n <= MAX_ORDER, "direct product of order {n} exceeds {MAX_ORDER}");
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2)) as u32;
        }
    }
    let mut gens: Vec<usize> = g1.generators().iter().map(|&x| x * n2).collect();
    gens.extend(g2.generators().iter().copied());
    let name = match (g1.name(), g2.name()) {
        _ if n1 == 1 => g2.name().map(str::to_string),
        _ if n2 == 1 => g1.name().map(str::to_string),
        (Some(a), Some(b)) => Some(format!("{a} x {b}")),
        _ => None,
    };
    FiniteGroup::build(n, table, Some(gens), name).expect("product of groups")
}

/// A homomorphism given by its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != source.order() || images.iter().any(|&i| i >= target.order()) {
            return Err(GroupError::Invalid("image table has wrong shape".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(GroupError::NotAHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_injective(&self) -> bool {
        self.source.elements().filter(|&a| self.images[a] == 0).count() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_validated() {
        assert_eq!(group_from_table(&[vec![0, 1], vec![1, 0]]).unwrap().order(), 2);
        let err = group_from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NotAGroup { axiom: "inverse", witness: vec![1] });
    }

    #[test]
    fn permutation_closure() {
        assert_eq!(group_from_permutations(&[vec![0, 1, 2]], 3).unwrap().order(), 1);
        assert_eq!(group_from_permutations(&[vec![1, 0]], 2).unwrap().order(), 2);
        let s3 = group_from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let err = group_from_permutations_bounded(&[vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]], 5, 50).unwrap_err();
        assert_eq!(err, GroupError::ClosureOverflow(50));
    }

    #[test]
    fn constructors() {
        assert_eq!(cyclic_group(1).order(), 1);
        assert_eq!(abelian_group(&[2, 2, 2, 2]).order(), 16);
        let p = direct_product(&cyclic_group(2), &cyclic_group(3));
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_eq!(p.element_order(4), 6);
    }
}
