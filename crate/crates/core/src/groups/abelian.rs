use std::collections::HashMap;

use crate::exactlin::{lattice_basis, FpAbGroup, FpPresentation};

use super::{FiniteGroup, GroupError};

/// An abelian group in invariant-factor form together with the coordinate isomorphism.
#[derive(Clone, Debug)]
pub struct AbelianStructure {
    group: FpAbGroup,
    coords: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl AbelianStructure {
    pub fn group(&self) -> &FpAbGroup {
        &self.group
    }

    /// Canonical coordinates of a group element.
    pub fn to_coords(&self, a: usize) -> &[i64] {
        &self.coords[a]
    }

    /// The element with the given coordinates (reduced first).
    pub fn from_coords(&self, c: &[i64]) -> usize {
        self.index[&self.group.reduce(c)]
    }

    /// Element corresponding to the `i`-th basis vector.
    pub fn basis_element(&self, i: usize) -> usize {
        self.from_coords(&self.group.generator(i))
    }
}

/// Invariant factors of an abelian group with an explicit isomorphism to `⊕ ℤ/dᵢ`.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<AbelianStructure, GroupError> {
    if let Some((a, b)) = g.commutator_witness() {
        return Err(GroupError::NotAbelian(a, b));
    }
    let gens: Vec<usize> = g.generators().to_vec();
    let k = gens.len();
    let n = g.order();
    // coordinates over the generating set by breadth-first search
    let mut raw: Vec<Option<Vec<i64>>> = vec![None; n];
    raw[0] = Some(vec![0; k]);
    let mut queue = vec![0usize];
    let mut relations: Vec<Vec<i64>> = vec![];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        let cx = raw[x].clone().unwrap();
        for (j, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let mut c = cx.clone();
            c[j] += 1;
            match &raw[y] {
                None => {
                    raw[y] = Some(c);
                    queue.push(y);
                }
                Some(cy) => {
                    let rel: Vec<i64> = c.iter().zip(cy).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&v| v != 0) {
                        relations.push(rel);
                    }
                }
            }
        }
    }
    let basis = lattice_basis(k, relations).map_err(|e| GroupError::Invalid(e.to_string()))?;
    let pres = FpPresentation::new(basis);
    let group = pres.group().clone();
    debug_assert!(group.is_finite());
    let coords: Vec<Vec<i64>> = raw.into_iter().map(|c| pres.reduce(&c.unwrap())).collect();
    let index: HashMap<Vec<i64>, usize> = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    if index.len() != n {
        return Err(GroupError::Invalid("coordinate map is not injective".into()));
    }
    Ok(AbelianStructure { group, coords, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian_group, cyclic_group, direct_product, group_from_permutations};

    #[test]
    fn invariant_forms() {
        let s = abelian_invariants(&direct_product(&cyclic_group(2), &cyclic_group(3))).unwrap();
        assert_eq!(s.group().invariants(), &[6]);
        let s = abelian_invariants(&abelian_group(&[2, 2])).unwrap();
        assert_eq!(s.group().invariants(), &[2, 2]);
        let s3 = group_from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
        assert!(matches!(abelian_invariants(&s3), Err(GroupError::NotAbelian(_, _))));
    }

    #[test]
    fn coordinates_form_an_isomorphism() {
        let g = abelian_group(&[4, 6, 2]);
        let s = abelian_invariants(&g).unwrap();
        assert_eq!(s.group().invariants(), &[2, 2, 12]);
        for a in g.elements() {
            assert_eq!(s.from_coords(s.to_coords(a)), a);
            for b in g.elements() {
                let sum = s.group().add(s.to_coords(a), s.to_coords(b));
                assert_eq!(s.from_coords(&sum), g.mul(a, b));
            }
        }
    }
}
