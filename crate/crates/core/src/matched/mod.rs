//! Matched pairs of finite groups and bicrossed products.

use crate::groups::{FiniteGroup, GroupError, GroupHom};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchedError {
    #[error("matched-pair axiom `{axiom}` fails at {witness:?}")]
    AxiomViolation { axiom: &'static str, witness: Vec<usize> },
    #[error("action table has wrong shape or out-of-range entries")]
    BadTable,
    #[error("subgroups do not give an exact factorization: {0}")]
    NotExactFactorization(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `(G, F, ▷, ◁)` with `▷: G×F → F` and `◁: G×F → G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    f: FiniteGroup,
    g: FiniteGroup,
    /// `right[s·|F| + x] = s ◁ x`
    right: Vec<usize>,
    /// `left[s·|F| + x] = s ▷ x`
    left: Vec<usize>,
}

/// Checks every matched-pair axiom exhaustively.
///
/// `right[s][x] = s ◁ x ∈ G` and `left[s][x] = s ▷ x ∈ F`, both indexed by `s ∈ G`, `x ∈ F`.
pub fn validate_matched_pair(
    f: &FiniteGroup,
    g: &FiniteGroup,
    right: &[Vec<usize>],
    left: &[Vec<usize>],
) -> Result<MatchedPair, MatchedError> {
    let (nf, ng) = (f.order(), g.order());
    let shape_ok = |t: &[Vec<usize>], bound: usize| t.len() == ng && t.iter().all(|r| r.len() == nf && r.iter().all(|&v| v < bound));
    if !shape_ok(right, ng) || !shape_ok(left, nf) {
        return Err(MatchedError::BadTable);
    }
    let mp = MatchedPair {
        f: f.clone(),
        g: g.clone(),
        right: right.iter().flatten().copied().collect(),
        left: left.iter().flatten().copied().collect(),
    };
    mp.check()?;
    Ok(mp)
}

impl MatchedPair {
    fn check(&self) -> Result<(), MatchedError> {
        let (f, g) = (&self.f, &self.g);
        let fail = |axiom, witness: Vec<usize>| Err(MatchedError::AxiomViolation { axiom, witness });
        for x in f.elements() {
            if self.tri(0, x) != x {
                return fail("e ▷ x = x", vec![x]);
            }
            if self.tri_r(0, x) != 0 {
                return fail("e ◁ x = e", vec![x]);
            }
        }
        for s in g.elements() {
            if self.tri(s, 0) != 0 {
                return fail("s ▷ e = e", vec![s]);
            }
            if self.tri_r(s, 0) != s {
                return fail("s ◁ e = s", vec![s]);
            }
        }
        for s in g.elements() {
            for x in f.elements() {
                for y in f.elements() {
                    if self.tri_r(s, f.mul(x, y)) != self.tri_r(self.tri_r(s, x), y) {
                        return fail("◁ is a right action", vec![s, x, y]);
                    }
                    let lhs = self.tri(s, f.mul(x, y));
                    let rhs = f.mul(self.tri(s, x), self.tri(self.tri_r(s, x), y));
                    if lhs != rhs {
                        return fail("s ▷ xy = (s ▷ x)((s ◁ x) ▷ y)", vec![s, x, y]);
                    }
                }
            }
        }
        for s in g.elements() {
            for t in g.elements() {
                for x in f.elements() {
                    if self.tri(g.mul(s, t), x) != self.tri(s, self.tri(t, x)) {
                        return fail("▷ is a left action", vec![s, t, x]);
                    }
                    let lhs = self.tri_r(g.mul(s, t), x);
                    let rhs = g.mul(self.tri_r(s, self.tri(t, x)), self.tri_r(t, x));
                    if lhs != rhs {
                        return fail("st ◁ x = (s ◁ (t ▷ x))(t ◁ x)", vec![s, t, x]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Both actions trivial.
    pub fn direct(f: &FiniteGroup, g: &FiniteGroup) -> MatchedPair {
        let (nf, ng) = (f.order(), g.order());
        MatchedPair {
            f: f.clone(),
            g: g.clone(),
            right: (0..ng * nf).map(|k| k / nf).collect(),
            left: (0..ng * nf).map(|k| k % nf).collect(),
        }
    }

    /// `▷` trivial and `◁` given by `right(s, x)`; validated.
    pub fn semidirect(f: &FiniteGroup, g: &FiniteGroup, right: impl Fn(usize, usize) -> usize) -> Result<MatchedPair, MatchedError> {
        let r: Vec<Vec<usize>> = g.elements().map(|s| f.elements().map(|x| right(s, x)).collect()).collect();
        let l: Vec<Vec<usize>> = g.elements().map(|_| f.elements().collect()).collect();
        validate_matched_pair(f, g, &r, &l)
    }

    pub fn f(&self) -> &FiniteGroup {
        &self.f
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    /// `s ▷ x`
    #[inline]
    pub fn tri(&self, s: usize, x: usize) -> usize {
        self.left[s * self.f.order() + x]
    }

    /// `s ◁ x`
    #[inline]
    pub fn tri_r(&self, s: usize, x: usize) -> usize {
        self.right[s * self.f.order() + x]
    }

    pub fn right_table(&self) -> Vec<Vec<usize>> {
        self.right.chunks(self.f.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn left_table(&self) -> Vec<Vec<usize>> {
        self.left.chunks(self.f.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_left_trivial(&self) -> bool {
        self.g.elements().all(|s| self.f.elements().all(|x| self.tri(s, x) == x))
    }

    pub fn is_right_trivial(&self) -> bool {
        self.g.elements().all(|s| self.f.elements().all(|x| self.tri_r(s, x) == s))
    }

    /// Whether every `◁ x` is a group automorphism of `G`.
    pub fn right_by_automorphisms(&self) -> bool {
        let g = &self.g;
        self.f.elements().all(|x| {
            g.elements().all(|s| g.elements().all(|t| self.tri_r(g.mul(s, t), x) == g.mul(self.tri_r(s, x), self.tri_r(t, x))))
        })
    }

    /// Whether distinct elements of `F` act differently on `G` through `◁`.
    pub fn right_faithful(&self) -> bool {
        let cols: Vec<Vec<usize>> = self.f.elements().map(|x| self.g.elements().map(|s| self.tri_r(s, x)).collect()).collect();
        (0..cols.len()).all(|a| (0..a).all(|b| cols[a] != cols[b]))
    }
}

/// Result of [`is_semidirect`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemidirectInfo {
    /// `▷` is trivial, so `Σ = F ⋉ G`.
    pub semidirect: bool,
    /// Every `◁ x` is an automorphism of `G`.
    pub right_by_automorphisms: bool,
    /// `◁` is faithful; together with the previous flag this forces `▷` to be trivial.
    pub right_faithful: bool,
}

pub fn is_semidirect(mp: &MatchedPair) -> SemidirectInfo {
    let info = SemidirectInfo {
        semidirect: mp.is_left_trivial(),
        right_by_automorphisms: mp.right_by_automorphisms(),
        right_faithful: mp.right_faithful(),
    };
    debug_assert!(!info.semidirect || info.right_by_automorphisms);
    debug_assert!(!(info.right_by_automorphisms && info.right_faithful) || info.semidirect);
    info
}

/// `Σ = F ⋈ G` on pairs `(x, s)` at index `x·|G| + s`.
#[derive(Clone, Debug)]
pub struct BicrossedProduct {
    pair: MatchedPair,
    sigma: FiniteGroup,
    f_embed: GroupHom,
    g_embed: GroupHom,
}

impl BicrossedProduct {
    pub fn pair(&self) -> &MatchedPair {
        &self.pair
    }

    pub fn sigma(&self) -> &FiniteGroup {
        &self.sigma
    }

    pub fn f_embedding(&self) -> &GroupHom {
        &self.f_embed
    }

    pub fn g_embedding(&self) -> &GroupHom {
        &self.g_embed
    }

    #[inline]
    pub fn index(&self, x: usize, s: usize) -> usize {
        x * self.pair.g.order() + s
    }

    #[inline]
    pub fn split(&self, sigma: usize) -> (usize, usize) {
        (sigma / self.pair.g.order(), sigma % self.pair.g.order())
    }
}

pub fn bicrossed_product(mp: &MatchedPair) -> BicrossedProduct {
    let (nf, ng) = (mp.f.order(), mp.g.order());
    let n = nf * ng;
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        let (x, s) = (a / ng, a % ng);
        for b in 0..n {
            let (y, t) = (b / ng, b % ng);
            let u = mp.f.mul(x, mp.tri(s, y));
            let v = mp.g.mul(mp.tri_r(s, y), t);
            table[a][b] = u * ng + v;
        }
    }
    let sigma = crate::groups::group_from_table(&table).expect("matched-pair axioms give a group");
    let f_embed = GroupHom::new(mp.f.clone(), sigma.clone(), (0..nf).map(|x| x * ng).collect()).expect("F embeds");
    let g_embed = GroupHom::new(mp.g.clone(), sigma.clone(), (0..ng).collect()).expect("G embeds");
    BicrossedProduct { pair: mp.clone(), sigma, f_embed, g_embed }
}

/// Recovers `(▷, ◁)` from an exact factorization `Σ = F·G` via `sx = (s ▷ x)(s ◁ x)`.
pub fn from_factorization(sigma: &FiniteGroup, f_elems: &[usize], g_elems: &[usize]) -> Result<MatchedPair, MatchedError> {
    let (f, fi) = sigma.subgroup(f_elems)?;
    let (g, gi) = sigma.subgroup(g_elems)?;
    if f.order() * g.order() != sigma.order() {
        return Err(MatchedError::NotExactFactorization(format!(
            "|F|·|G| = {} but |Σ| = {}",
            f.order() * g.order(),
            sigma.order()
        )));
    }
    // factor[σ] = (x, s) with σ = x·s
    let mut factor = vec![None; sigma.order()];
    for x in f.elements() {
        for s in g.elements() {
            let p = sigma.mul(fi.apply(x), gi.apply(s));
            if factor[p].is_some() {
                return Err(MatchedError::NotExactFactorization("F ∩ G is nontrivial".into()));
            }
            factor[p] = Some((x, s));
        }
    }
    let mut right = vec![vec![0; f.order()]; g.order()];
    let mut left = vec![vec![0; f.order()]; g.order()];
    for s in g.elements() {
        for x in f.elements() {
            let (a, b) = factor[sigma.mul(gi.apply(s), fi.apply(x))].expect("exact factorization");
            left[s][x] = a;
            right[s][x] = b;
        }
    }
    validate_matched_pair(&f, &g, &right, &left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian_group, cyclic_group, group_from_permutations};

    fn swap_pair(h: usize) -> MatchedPair {
        let g = abelian_group(&[h, h]);
        MatchedPair::semidirect(&cyclic_group(2), &g, |s, x| if x == 0 { s } else { (s % h) * h + s / h }).unwrap()
    }

    #[test]
    fn swap_pairs_and_products() {
        let mp = swap_pair(3);
        assert_eq!(bicrossed_product(&mp).sigma().order(), 18);
        let info = is_semidirect(&mp);
        assert!(info.semidirect && info.right_by_automorphisms);
    }

    #[test]
    fn corrupted_table_rejected() {
        let mp = swap_pair(2);
        let mut r = mp.right_table();
        r[1][1] = 1;
        let err = validate_matched_pair(mp.f(), mp.g(), &r, &mp.left_table()).unwrap_err();
        assert!(matches!(err, MatchedError::AxiomViolation { .. }));
    }

    #[test]
    fn s3_factorization_round_trip() {
        let s3 = group_from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
        let f = s3.subgroup_generated(&[s3.generators()[0]]);
        let g = s3.subgroup_generated(&[s3.generators()[1]]);
        let mp = from_factorization(&s3, &f, &g).unwrap();
        // the rotation subgroup is normal, so only ◁ survives
        assert!(mp.is_left_trivial() && !mp.is_right_trivial());
        assert!(is_semidirect(&mp).semidirect);
        let bp = bicrossed_product(&mp);
        let back = from_factorization(bp.sigma(), &bp.f_embedding().images, &bp.g_embedding().images).unwrap();
        assert_eq!(back, mp);
    }

    #[test]
    fn s4_from_s3_and_four_cycle() {
        let s4 = group_from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 0, 3], vec![1, 2, 3, 0]], 4).unwrap();
        let g = s4.generators();
        let f = s4.subgroup_generated(&[g[0], g[1]]);
        let c = s4.subgroup_generated(&[g[2]]);
        let mp = from_factorization(&s4, &f, &c).unwrap();
        assert!(!mp.is_left_trivial() && !mp.is_right_trivial());
        let info = is_semidirect(&mp);
        assert!(!info.semidirect && !info.right_by_automorphisms);
        let bp = bicrossed_product(&mp);
        let back = from_factorization(bp.sigma(), &bp.f_embedding().images, &bp.g_embedding().images).unwrap();
        assert_eq!(back, mp);
    }

    #[test]
    fn automorphic_right_action_without_semidirect() {
        // ◁ trivial, ▷ by inversion: ◁ acts by automorphisms but ▷ is not trivial
        let f = cyclic_group(3);
        let g = cyclic_group(2);
        let r: Vec<Vec<usize>> = (0..2).map(|s| vec![s; 3]).collect();
        let l: Vec<Vec<usize>> = (0..2).map(|s| (0..3).map(|x| if s == 0 { x } else { (3 - x) % 3 }).collect()).collect();
        let mp = validate_matched_pair(&f, &g, &r, &l).unwrap();
        let info = is_semidirect(&mp);
        assert!(!info.semidirect && info.right_by_automorphisms && !info.right_faithful);
    }

    #[test]
    fn overlapping_subgroups_rejected() {
        let z4 = cyclic_group(4);
        assert!(matches!(from_factorization(&z4, &[0, 2], &[0, 2]), Err(MatchedError::NotExactFactorization(_))));
    }
}
