use num_integer::Integer;

use crate::exactlin::{CircleElement, FpAbGroup};

use super::abelian::{abelian_invariants, AbelianStructure};
use super::{FiniteGroup, GroupError};

/// A finite abelian group `⊕ ℤ/mᵢ` with a left action of a finite group by matrices.
///
/// Column `j` of `action(g)` is the image of the `j`-th basis vector. The moduli need not form
/// a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    moduli: Vec<i64>,
    group: FiniteGroup,
    actions: Vec<Vec<Vec<i64>>>,
}

fn reduce_matrix(m: &mut [Vec<i64>], moduli: &[i64]) {
    for (i, row) in m.iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v = v.rem_euclid(moduli[i]);
        }
    }
}

impl GModule {
    pub fn new(moduli: Vec<i64>, group: FiniteGroup, mut actions: Vec<Vec<Vec<i64>>>) -> Result<Self, GroupError> {
        let r = moduli.len();
        if moduli.iter().any(|&m| m < 1) {
            return Err(GroupError::InvalidModule("moduli must be positive".into()));
        }
        if actions.len() != group.order() || actions.iter().any(|a| a.len() != r || a.iter().any(|row| row.len() != r)) {
            return Err(GroupError::InvalidModule("action matrices have the wrong shape".into()));
        }
        for a in actions.iter_mut() {
            reduce_matrix(a, &moduli);
        }
        let m = GModule { moduli, group, actions };
        for (g, a) in m.actions.iter().enumerate() {
            for i in 0..r {
                for j in 0..r {
                    if (a[i][j] as i128 * m.moduli[j] as i128) % m.moduli[i] as i128 != 0 {
                        return Err(GroupError::InvalidModule(format!("action of {g} does not respect the moduli at ({i},{j})")));
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if m.actions[0][i][j] != i64::from(i == j) % m.moduli[i] {
                    return Err(GroupError::InvalidModule("identity does not act trivially".into()));
                }
            }
        }
        for g in m.group.elements() {
            for h in m.group.elements() {
                for j in 0..r {
                    let lhs = m.act(g, &m.column(h, j));
                    if lhs != m.column(m.group.mul(g, h), j) {
                        return Err(GroupError::InvalidModule(format!("A_{g} A_{h} differs from A_{{gh}}")));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The module with every element acting as the identity.
    pub fn trivial(moduli: Vec<i64>, group: FiniteGroup) -> Self {
        let r = moduli.len();
        let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j) % moduli[i]).collect()).collect();
        let actions = vec![id; group.order()];
        GModule { moduli, group, actions }
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self, g: usize) -> &[Vec<i64>] {
        &self.actions[g]
    }

    fn column(&self, g: usize, j: usize) -> Vec<i64> {
        self.actions[g].iter().map(|row| row[j]).collect()
    }

    /// The underlying abelian group in invariant-factor form.
    pub fn abelian_group(&self) -> FpAbGroup {
        FpAbGroup::from_cyclic_orders(&self.moduli)
    }

    /// Number of elements.
    pub fn size(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.moduli).map(|(x, m)| x.rem_euclid(*m)).collect()
    }

    pub fn act(&self, g: usize, v: &[i64]) -> Vec<i64> {
        let a = &self.actions[g];
        (0..self.dim())
            .map(|i| {
                let s: i128 = a[i].iter().zip(v).map(|(x, y)| *x as i128 * *y as i128).sum();
                s.rem_euclid(self.moduli[i] as i128) as i64
            })
            .collect()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.actions.iter().all(|a| *a == self.actions[0])
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &m in &self.moduli {
            out = out.into_iter().flat_map(|v: Vec<i64>| (0..m).map(move |a| [v.clone(), vec![a]].concat())).collect();
        }
        out
    }
}

/// Value of the character with dual coordinates `chi` on the element `s` of `G`.
pub fn evaluate_character(structure: &AbelianStructure, chi: &[i64], s: usize) -> CircleElement {
    let inv = structure.group().invariants();
    let c = structure.to_coords(s);
    let den = inv.iter().fold(1i64, |a, &d| a.lcm(&d));
    let num: i128 = (0..inv.len()).map(|j| chi[j] as i128 * c[j] as i128 * (den / inv[j]) as i128).sum();
    CircleElement::new(num.rem_euclid(den as i128) as i64, den)
}

/// `Ĝ = Hom(G, ℚ/ℤ)` as a left `F`-module via `(x·χ)(s) = χ(s ◁ x)`, for a right action
/// `right(s, x) = s ◁ x` of `F` on the abelian group `G`.
///
/// Characters are written in the basis dual to the invariant-factor basis of `G`.
pub fn dual_module(
    g: &FiniteGroup,
    f: &FiniteGroup,
    right: impl Fn(usize, usize) -> usize,
) -> Result<(GModule, AbelianStructure), GroupError> {
    let st = abelian_invariants(g)?;
    for x in f.elements() {
        for a in g.elements() {
            for b in g.elements() {
                if right(g.mul(a, b), x) != g.mul(right(a, x), right(b, x)) {
                    return Err(GroupError::ActionNotByAutomorphisms { element: x, a, b });
                }
            }
        }
    }
    let d: Vec<i64> = st.group().invariants().to_vec();
    let r = d.len();
    let basis: Vec<usize> = (0..r).map(|i| st.basis_element(i)).collect();
    let actions = f
        .elements()
        .map(|x| {
            (0..r)
                .map(|i| {
                    let c = st.to_coords(right(basis[i], x));
                    (0..r).map(|j| (d[i] * c[j] / d[j]).rem_euclid(d[i])).collect()
                })
                .collect()
        })
        .collect();
    Ok((GModule::new(d, f.clone(), actions)?, st))
}

/// Index pairs `(i, j)`, `i < j`, in the order used for `∧²`.
pub fn exterior_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// `∧²V` on the basis `eᵢ∧eⱼ` (`i < j`) with moduli `gcd(mᵢ, mⱼ)`.
pub fn exterior_square(v: &GModule) -> GModule {
    let pairs = exterior_pairs(v.dim());
    let m = v.moduli();
    let moduli: Vec<i64> = pairs.iter().map(|&(i, j)| m[i].gcd(&m[j])).collect();
    let actions = v
        .group()
        .elements()
        .map(|g| {
            let a = v.action(g);
            pairs
                .iter()
                .enumerate()
                .map(|(row, &(k, l))| {
                    pairs
                        .iter()
                        .map(|&(i, j)| {
                            let x = a[k][i] as i128 * a[l][j] as i128 - a[l][i] as i128 * a[k][j] as i128;
                            x.rem_euclid(moduli[row] as i128) as i64
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    GModule::new(moduli, v.group().clone(), actions).expect("exterior square of a module")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian_group, cyclic_group};

    #[test]
    fn exterior_squares() {
        let z = cyclic_group(1);
        let v = GModule::trivial(vec![5, 5], z.clone());
        assert_eq!(exterior_square(&v).abelian_group().invariants(), &[5]);
        assert!(exterior_square(&GModule::trivial(vec![7], z.clone())).abelian_group().is_trivial());
        let v4 = GModule::trivial(vec![2; 4], z);
        assert_eq!(exterior_square(&v4).abelian_group().invariants(), &[2; 6]);
    }

    #[test]
    fn trivial_dual() {
        let g = abelian_group(&[2, 4]);
        let (m, _) = dual_module(&g, &cyclic_group(3), |s, _| s).unwrap();
        assert!(m.is_trivial_action());
        assert_eq!(m.abelian_group().invariants(), &[2, 4]);
    }

    #[test]
    fn dual_of_swap_is_swap() {
        let g = abelian_group(&[3, 3]);
        let swap = |s: usize, x: usize| if x == 0 { s } else { (s % 3) * 3 + s / 3 };
        let (m, st) = dual_module(&g, &cyclic_group(2), swap).unwrap();
        // (x·χ)(s) = χ(s ◁ x) for every character and element
        for chi in m.elements() {
            let moved = m.act(1, &chi);
            for s in g.elements() {
                assert_eq!(evaluate_character(&st, &moved, s), evaluate_character(&st, &chi, swap(s, 1)));
            }
        }
    }

    #[test]
    fn non_automorphism_rejected() {
        let g = cyclic_group(3);
        let bad = |s: usize, x: usize| if x == 0 { s } else { [0, 2, 2][s] };
        assert!(matches!(dual_module(&g, &cyclic_group(2), bad), Err(GroupError::ActionNotByAutomorphisms { .. })));
    }
}
