use super::*;
use crate::complexes::{bar_resolution, cyclic_resolution};
use crate::exactlin::CircleElement;
use crate::groups::{abelian_group, cyclic_group, dual_module, exterior_square, group_from_permutations};
use crate::matched::{bicrossed_product, MatchedPair};

fn s3() -> FiniteGroup {
    group_from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap()
}

fn digits(a: usize, n: usize) -> Vec<i64> {
    (0..n).map(|i| ((a >> (n - 1 - i)) & 1) as i64).collect()
}

fn undigits(v: &[i64]) -> usize {
    v.iter().fold(0, |acc, &d| acc * 2 + d.rem_euclid(2) as usize)
}

const F1: [[i64; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [0, 1, 0, 1]];
const F2: [[i64; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0], [1, 1, 0, 1]];

fn mat_vec(m: &[[i64; 4]; 4], v: &[i64]) -> Vec<i64> {
    (0..4).map(|i| (0..4).map(|j| m[i][j] * v[j]).sum::<i64>() % 2).collect()
}

/// `s ◁ x` on `(ℤ/2)⁴` for `x = F1^a F2^b`.
fn thm58_right(s: usize, x: usize) -> usize {
    let mut v = digits(s, 4);
    if x & 1 == 1 {
        v = mat_vec(&F2, &v);
    }
    if x & 2 == 2 {
        v = mat_vec(&F1, &v);
    }
    undigits(&v)
}

#[test]
fn integral_cohomology_of_cyclic_groups() {
    for n in 2..6 {
        let g = cyclic_group(n);
        let h: Vec<FpAbGroup> = (0..5).map(|k| group_cohomology(&g, &Coefficients::Integers, k, false).unwrap().group().clone()).collect();
        assert_eq!(h[0], FpAbGroup::new(1, vec![]));
        assert!(h[1].is_trivial());
        assert_eq!(h[2], FpAbGroup::cyclic(n as i64));
        assert!(h[3].is_trivial());
        assert_eq!(h[4], FpAbGroup::cyclic(n as i64));
    }
}

#[test]
fn circle_cohomology_of_small_groups() {
    let c4 = cyclic_group(4);
    let h1 = group_cohomology(&c4, &Coefficients::Circle, 1, false).unwrap();
    assert_eq!(h1.group().invariants(), &[4]);
    let h2 = group_cohomology(&c4, &Coefficients::Circle, 2, false).unwrap();
    assert!(h2.group().is_trivial());
    let k4 = abelian_group(&[2, 2]);
    assert_eq!(group_cohomology(&k4, &Coefficients::Circle, 2, false).unwrap().group().invariants(), &[2]);
    assert_eq!(group_cohomology(&s3(), &Coefficients::Circle, 1, false).unwrap().group().invariants(), &[2]);
    assert!(group_cohomology(&s3(), &Coefficients::Circle, 2, false).unwrap().group().is_trivial());
    assert_eq!(group_cohomology(&s3(), &Coefficients::Circle, 3, false).unwrap().group().invariants(), &[6]);
}

#[test]
fn circle_agrees_with_integral_shift() {
    // H^n(G, ℚ/ℤ) ≅ H^{n+1}(G, ℤ) for n ≥ 1
    let g = abelian_group(&[2, 2]);
    for n in 1..3 {
        let c = group_cohomology(&g, &Coefficients::Circle, n, false).unwrap();
        let z = group_cohomology(&g, &Coefficients::Integers, n + 1, false).unwrap();
        assert_eq!(c.group(), z.group(), "degree {n}");
    }
}

#[test]
fn resolution_independence() {
    for n in 2..5 {
        let g = cyclic_group(n);
        for k in 1..4 {
            let bar = coinvariant_cohomology(&bar_resolution(&g, k + 1, true).unwrap(), k, false).unwrap();
            let cyc = coinvariant_cohomology(&cyclic_resolution(n, k + 1).unwrap(), k, false).unwrap();
            let inh = group_cohomology(&g, &Coefficients::Circle, k, false).unwrap();
            assert_eq!(bar.group(), cyc.group());
            assert_eq!(bar.group(), inh.group());
        }
    }
}

#[test]
fn representatives_round_trip() {
    let g = abelian_group(&[2, 4]);
    let h = group_cohomology(&g, &Coefficients::Circle, 2, true).unwrap();
    assert_eq!(h.group().invariants(), &[2]);
    let rep = h.representative(&[1]);
    assert_eq!(h.class_of(&rep), Some(vec![1]));
}

#[test]
fn module_cohomology_trivial_action_matches_circle() {
    // H²(ℤ/2 × ℤ/2, ℤ/2) = (ℤ/2)³ by universal coefficients
    let g = abelian_group(&[2, 2]);
    let m = GModule::trivial(vec![2], g.clone());
    let h = group_cohomology(&g, &Coefficients::Module(m), 2, true).unwrap();
    assert_eq!(h.group().invariants(), &[2, 2, 2]);
}

#[test]
fn sign_module_of_c2() {
    // ℤ/3 with the generator acting by −1: all cohomology vanishes above degree 0 by coprimality
    let g = cyclic_group(2);
    let m = GModule::new(vec![3], g.clone(), vec![vec![vec![1]], vec![vec![-1]]]).unwrap();
    for k in 0..3 {
        assert!(group_cohomology(&g, &Coefficients::Module(m.clone()), k, false).unwrap().group().is_trivial());
    }
    // ℤ/4 with −1: H¹ = ker(1+t)/im(t−1) = {0,1,2,3}/{0,2} = ℤ/2
    let m = GModule::new(vec![4], g.clone(), vec![vec![vec![1]], vec![vec![-1]]]).unwrap();
    assert_eq!(group_cohomology(&g, &Coefficients::Module(m), 1, false).unwrap().group().invariants(), &[2]);
}

#[test]
fn derivations_with_trivial_action_are_homomorphisms() {
    let f = abelian_group(&[2, 4]);
    let m = GModule::trivial(vec![4], f.clone());
    assert_eq!(derivations(&m).unwrap().group().invariants(), &[2, 4]);
}

#[test]
fn thm58_second_cohomology_of_dual() {
    let f = abelian_group(&[2, 2]);
    let g = abelian_group(&[2, 2, 2, 2]);
    let (m, _) = dual_module(&g, &f, thm58_right).unwrap();
    let h = group_cohomology(&f, &Coefficients::Module(m), 2, false).unwrap();
    assert_eq!(h.group().invariants(), &[2, 2]);
}

#[test]
fn cohomology_module_of_swap() {
    // ℤ/2 swapping the factors of (ℤ/n)²: H²((ℤ/n)², ℚ/ℤ) = ℤ/n, the swap acts by −1
    for n in [2usize, 3, 4] {
        let f = cyclic_group(2);
        let g = abelian_group(&[n, n]);
        let swap = |s: usize, x: usize| if x == 0 { s } else { (s % n) * n + s / n };
        let (m, h) = cohomology_module(&g, &f, swap, 2).unwrap();
        assert_eq!(h.group().invariants(), &[n as i64]);
        assert_eq!(m.act(1, &[1]), vec![(n as i64 - 1) % n as i64]);
        // Der(ℤ/2, ℤ/n with −1) = ℤ/n
        assert_eq!(derivations(&m).unwrap().group().invariants(), &[n as i64]);
    }
}

#[test]
fn exterior_square_derivations() {
    let f = cyclic_group(2);
    let g = abelian_group(&[3, 3, 3]);
    let (v, _) = dual_module(&g, &f, |s, x| if x == 0 { s } else { g.inv(s) }).unwrap();
    // ∧² of −1 is +1, so Der = Hom(ℤ/2, (ℤ/3)³) = 0
    assert!(derivations(&exterior_square(&v)).unwrap().group().is_trivial());
}

#[test]
fn relative_hochschild_cases() {
    let g = s3();
    let m = GModule::trivial(vec![6], g.clone());
    let trivial_sub = vec![0];
    for n in 0..3 {
        let rel = relative_hochschild(&g, &trivial_sub, &m, n, true).unwrap();
        let abs = group_cohomology(&g, &Coefficients::Module(m.clone()), n, false).unwrap();
        assert_eq!(rel.group(), abs.group(), "degree {n}");
        let unnorm = relative_hochschild(&g, &trivial_sub, &m, n, false).unwrap();
        assert_eq!(rel.group(), unnorm.group(), "degree {n}");
    }
    let all: Vec<usize> = g.elements().collect();
    assert_eq!(relative_hochschild(&g, &all, &m, 0, true).unwrap().group().invariants(), &[6]);
    for n in 1..3 {
        assert!(relative_hochschild(&g, &all, &m, n, true).unwrap().group().is_trivial());
    }
    let not_sub: Vec<usize> = (0..g.order()).filter(|&a| g.element_order(a) == 2).collect();
    assert!(relative_hochschild(&g, &not_sub, &m, 1, true).is_err());
}

#[test]
fn relative_auslander_of_trivial_pair() {
    let c2 = cyclic_group(2);
    let bp = bicrossed_product(&MatchedPair::direct(&c2, &c2));
    let h = relative_auslander(&bp, 3, false).unwrap();
    assert_eq!(h.group().invariants(), &[2]);
    // H²_A ≅ H²(Σ) here since H¹ of Σ splits over the factors and both H² of the factors vanish
    assert_eq!(relative_auslander(&bp, 2, false).unwrap().group().invariants(), &[2]);
}

#[test]
fn product_decomposition_round_trip() {
    let g1 = cyclic_group(3);
    let g2 = cyclic_group(3);
    let d = h2_product_decompose(&g1, &g2).unwrap();
    assert_eq!(d.product.group().invariants(), &[3]);
    assert_eq!(d.bicharacter_moduli(), &[3]);
    for c in 0..3 {
        let (a1, a2, p) = d.forward(&[c]);
        assert!(a1.is_empty() && a2.is_empty());
        assert_eq!(d.inverse(&a1, &a2, &p), vec![c]);
    }
    let k = abelian_group(&[2, 2]);
    let d = h2_product_decompose(&k, &cyclic_group(2)).unwrap();
    assert_eq!(d.product.group().invariants(), &[2, 2, 2]);
    for e in d.product.group().elements() {
        let (a1, a2, p) = d.forward(&e);
        assert_eq!(d.inverse(&a1, &a2, &p), e);
    }
    let b = d.bicharacter(&[1, 1]);
    assert!(Bicharacter::new((0..4).map(|x| (0..2).map(|y| b.at(x, y)).collect()).collect(), &k, &cyclic_group(2)).is_ok());
}

#[test]
fn alt_is_bijective_for_elementary_groups() {
    let v = abelian_group(&[3, 3, 3]);
    let h = group_cohomology(&v, &Coefficients::Circle, 2, true).unwrap();
    assert_eq!(h.group().invariants(), &[3, 3, 3]);
    let mut seen: Vec<Vec<i64>> = h.group().elements().into_iter().map(|e| alt_map(&v, &h.circle_representative(&e)).unwrap()).collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 27);
}

#[test]
fn alpha_m_values() {
    let m = vec![vec![0, 1], vec![0, 0]];
    let a = alpha_m(2, &m);
    let v = abelian_group(&[2, 2]);
    let h = group_cohomology(&v, &Coefficients::Circle, 2, true).unwrap();
    let c = h.class_of(&Cochain::Circle(a.clone())).unwrap();
    assert_eq!(c, vec![1]);
    // α(x, y) = x₁y₂/2 at x = (1, 0), y = (0, 1)
    let t = Tuples::new(4);
    assert_eq!(a.get(t.encode(&[2, 1]).unwrap()), CircleElement::new(1, 2));
    assert_eq!(a.get(t.encode(&[1, 2]).unwrap()), CircleElement::ZERO);
}

#[test]
fn integral_cohomology_past_the_dense_limit() {
    let s3 = group_from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
    let h = group_cohomology(&s3, &Coefficients::Integers, 4, false).unwrap();
    assert_eq!(h.group(), &FpAbGroup::cyclic(6));
    let h = group_cohomology(&cyclic_group(7), &Coefficients::Integers, 4, false).unwrap();
    assert_eq!(h.group(), &FpAbGroup::cyclic(7));
    assert!(h.class_of(&Cochain::Lattice(vec![0; 216])).is_none());
}
