use super::*;
use crate::groups::{abelian_group, cyclic_group, FiniteGroup};
use crate::matched::MatchedPair;

fn swap_pair(h: &FiniteGroup) -> MatchedPair {
    let g = crate::groups::direct_product(h, h);
    let n = h.order();
    MatchedPair::semidirect(&cyclic_group(2), &g, |s, x| if x == 0 { s } else { (s % n) * n + s / n }).unwrap()
}

fn value(mp: &MatchedPair, route: Route) -> Vec<i64> {
    let r = opext(mp, route, &OpextOptions::default()).unwrap();
    assert_eq!(r.value.free_rank(), 0);
    r.value.invariants().to_vec()
}

#[test]
fn kac_complex_is_a_double_complex() {
    let z2 = cyclic_group(2);
    let k = KacComplex::new(&MatchedPair::direct(&z2, &z2), 3, 3).unwrap();
    for p in 0..=3 {
        for q in 0..=3 {
            assert_eq!(k.rank(p, q), 1);
        }
    }
    k.check().unwrap();
    let k = KacComplex::new(&swap_pair(&cyclic_group(3)), 2, 2).unwrap();
    k.check().unwrap();
    for n in 0..2 {
        let d1 = k.total_coboundary(n).unwrap();
        if n == 0 {
            assert!(k.total_coboundary(1).unwrap().mul(&d1).is_zero());
        }
    }
}

#[test]
fn trivial_pair_opext() {
    let z2 = cyclic_group(2);
    let mp = MatchedPair::direct(&z2, &z2);
    assert_eq!(value(&mp, Route::KacTotal), vec![2]);
    assert_eq!(value(&mp, Route::Relative), vec![2]);
}

#[test]
fn swap_z3_opext() {
    let mp = swap_pair(&cyclic_group(3));
    assert_eq!(value(&mp, Route::KacTotal), vec![3]);
    assert_eq!(value(&mp, Route::Relative), vec![3]);
    let bar = OpextOptions { resolution: Resolution::Bar, ..OpextOptions::default() };
    assert_eq!(opext(&mp, Route::Relative, &bar).unwrap().value.invariants(), &[3]);
    let _ = abelian_group(&[3]);
}

fn s3() -> FiniteGroup {
    crate::groups::group_from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap()
}

fn s3_pair() -> MatchedPair {
    let g = s3();
    let f = g.subgroup_generated(&[g.generators()[0]]);
    let c = g.subgroup_generated(&[g.generators()[1]]);
    crate::matched::from_factorization(&g, &f, &c).unwrap()
}

fn inversion_pair() -> MatchedPair {
    let r: Vec<Vec<usize>> = (0..2).map(|s| vec![s; 3]).collect();
    let l: Vec<Vec<usize>> = (0..2).map(|s| (0..3).map(|x| if s == 0 { x } else { (3 - x) % 3 }).collect()).collect();
    crate::matched::validate_matched_pair(&cyclic_group(3), &cyclic_group(2), &r, &l).unwrap()
}

fn s4_pair() -> MatchedPair {
    let s4 = crate::groups::group_from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 0, 3], vec![1, 2, 3, 0]], 4).unwrap();
    let g = s4.generators();
    let f = s4.subgroup_generated(&[g[0], g[1]]);
    let c = s4.subgroup_generated(&[g[2]]);
    crate::matched::from_factorization(&s4, &f, &c).unwrap()
}

#[test]
fn nontrivial_left_action_routes_agree() {
    for mp in [s3_pair(), inversion_pair(), s4_pair()] {
        KacComplex::new(&mp, 2, 2).unwrap().check().unwrap();
        let a = opext(&mp, Route::KacTotal, &OpextOptions::default()).unwrap();
        let b = opext(&mp, Route::Relative, &OpextOptions::default()).unwrap();
        assert_eq!(a.value, b.value, "{:?}", a.value);
    }
}

#[test]
fn exported_representatives_are_hopf_algebras() {
    let z2 = cyclic_group(2);
    for mp in [MatchedPair::direct(&z2, &z2), swap_pair(&cyclic_group(3)), s3_pair(), inversion_pair(), s4_pair()] {
        let r = opext(&mp, Route::KacTotal, &OpextOptions::default()).unwrap();
        let reps = r.representatives.unwrap();
        for p in &reps {
            let h = hopf_data(&mp, p).unwrap();
            assert_eq!(h.dim, mp.f().order() * mp.g().order());
        }
        hopf_data(&mp, &CocyclePair::zero(&mp)).unwrap();
        if let Some(p) = reps.first() {
            hopf_data(&mp, &p.add(&p.scale(2))).unwrap();
        }
    }
}

#[test]
fn sweedler_type_structure_constants() {
    let z2 = cyclic_group(2);
    let mp = MatchedPair::direct(&z2, &z2);
    let r = opext(&mp, Route::KacTotal, &OpextOptions::default()).unwrap();
    let p = &r.representatives.unwrap()[0];
    let h = hopf_data(&mp, p).unwrap();
    assert_eq!(h.dim, 4);
    // exactly one of σ(1;1,1), τ(1,1;1) is 1/2 up to a coboundary; either way some phase is −1
    let phases: Vec<Phase> = h.mult.iter().flatten().map(|m| m.1).chain(h.comult.iter().flatten().map(|c| c.2)).collect();
    assert!(phases.contains(&(1, 2)));
}

#[test]
fn broken_tau_is_rejected() {
    use crate::exactlin::CircleElement;
    let mp = swap_pair(&cyclic_group(3));
    // τ(·,·;x) is the cocycle s₁t₂/3 for x ≠ e, so Δ is coassociative but not multiplicative
    let tau = |s: usize, t: usize, x: usize| if x == 0 { CircleElement::ZERO } else { CircleElement::new(((s / 3) * (t % 3)) as i64, 3) };
    let bad = CocyclePair::from_fn(&mp, |_, _, _| CircleElement::ZERO, tau);
    match hopf_data(&mp, &bad) {
        Err(KacError::IncompatiblePair(w)) => assert_eq!(w.len(), 4),
        other => panic!("{other:?}"),
    }
    let worse = CocyclePair::from_fn(&mp, |_, _, _| CircleElement::ZERO, |s, t, x| {
        if (s, t, x) == (1, 1, 1) {
            CircleElement::new(1, 3)
        } else {
            CircleElement::ZERO
        }
    });
    assert!(matches!(hopf_data(&mp, &worse), Err(KacError::NotCocycle { which: "τ", .. })));
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

fn thm58_pair() -> MatchedPair {
    MatchedPair::semidirect(&abelian_group(&[2, 2]), &abelian_group(&[2, 2, 2, 2]), |s, x| {
        let mut v = digits(s, 4);
        if x & 1 == 1 {
            v = mat_vec(&F2, &v);
        }
        if x & 2 == 2 {
            v = mat_vec(&F1, &v);
        }
        undigits(&v)
    })
    .unwrap()
}

#[test]
fn five_term_small_pairs() {
    let z2 = cyclic_group(2);
    let r = five_term(&MatchedPair::direct(&z2, &z2), H4_LIMIT).unwrap();
    assert_eq!(r.h2_f_ghat.invariants(), &[2]);
    assert!(r.der.is_trivial());
    assert_eq!(r.opext.invariants(), &[2]);
    assert_eq!(r.reconstructed, r.opext);
    assert!(r.certificates.iter().all(|(_, c)| c.holds()), "{:?}", r.certificates);

    let r = five_term(&swap_pair(&cyclic_group(3)), H4_LIMIT).unwrap();
    assert_eq!(r.opext.invariants(), &[3]);
    assert_eq!(r.reconstructed, r.opext);
    assert!(r.certificates.iter().all(|(_, c)| c.holds()), "{:?}", r.certificates);
}

#[test]
fn five_term_reconstruction_route() {
    for mp in [swap_pair(&cyclic_group(2)), swap_pair(&cyclic_group(3)), swap_pair(&cyclic_group(4))] {
        let a = opext(&mp, Route::KacTotal, &OpextOptions::default()).unwrap();
        let b = opext(&mp, Route::FiveTermReconstruction, &OpextOptions::default()).unwrap();
        assert_eq!(a.value, b.value);
        for p in b.representatives.unwrap() {
            hopf_data(&mp, &p).unwrap();
        }
    }
    let mp = s3_pair();
    assert!(mp.is_left_trivial());
    let a = opext(&mp, Route::KacTotal, &OpextOptions::default()).unwrap();
    assert_eq!(a.value, opext(&mp, Route::FiveTermReconstruction, &OpextOptions::default()).unwrap().value);
    let mp = inversion_pair();
    assert!(!mp.is_left_trivial());
    assert!(matches!(opext(&mp, Route::FiveTermReconstruction, &OpextOptions::default()), Err(KacError::NotSemidirect)));
}

#[test]
fn thm58_five_term() {
    let mp = thm58_pair();
    // the H⁴ joint is certified in the acceptance suite
    let r = five_term(&mp, 0).unwrap();
    assert_eq!(r.h2_f_ghat.invariants(), &[2, 2]);
    assert_eq!(r.der.invariants(), &[2; 7]);
    assert_eq!(r.h3_f_ghat.invariants(), &[2, 2]);
    assert_eq!(r.ker_d2.invariants(), &[2, 2, 2, 2, 2]);
    assert_eq!(r.opext.invariants(), &[2, 2, 2, 4, 4]);
    assert_eq!(r.reconstructed, r.opext);
    assert!(r.h4.is_none());
    assert!(r.certificates[..3].iter().all(|(_, c)| c.holds()), "{:?}", r.certificates);
    assert!(matches!(r.certificates[3].1, Certificate::NotCertified(_)));
}

#[test]
fn d2_is_independent_of_choices() {
    use rand::{Rng, SeedableRng};
    let mp = thm58_pair();
    let ctx = FiveTermContext::new(&mp).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let der = ctx.der().clone();
    let mut nonzero = 0;
    for k in 0..der.len() {
        let alpha = der.generator(k);
        let base = ctx.d2(&alpha).unwrap();
        if !ctx.h3_f_ghat().is_zero(&base) {
            nonzero += 1;
        }
        for _ in 0..3 {
            let b: Vec<CircleElement> = (0..ctx.kac().rank(0, 0)).map(|_| CircleElement::new(rng.gen_range(0..16), 16)).collect();
            let c: Vec<i64> = (0..9 * ctx.ghat().dim()).map(|_| rng.gen_range(0..2)).collect();
            assert_eq!(ctx.d2_with(&alpha, &CircleVec::from_elements(&b), &c).unwrap(), base);
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn degenerate_five_term_cases() {
    // H²(G) = 0, so Opext is H²(F, Ĝ)
    let z2 = cyclic_group(2);
    let z4 = cyclic_group(4);
    for mp in [MatchedPair::direct(&z2, &z2), MatchedPair::semidirect(&z2, &z4, |s, x| if x == 0 { s } else { (4 - s) % 4 }).unwrap()] {
        let r = five_term(&mp, H4_LIMIT).unwrap();
        assert!(r.der.is_trivial());
        assert_eq!(r.opext, r.h2_f_ghat);
        assert_eq!(value(&mp, Route::KacTotal), r.h2_f_ghat.invariants());
    }
    // coprime orders kill H^{≥1}(F, Ĝ), so Opext is Der(F, H²(G))
    let mp = swap_pair(&cyclic_group(3));
    let r = five_term(&mp, H4_LIMIT).unwrap();
    assert!(r.h2_f_ghat.is_trivial() && r.h3_f_ghat.is_trivial());
    assert_eq!(r.opext, r.der);
    assert!(r.all_exact());
}

#[test]
fn e2_page_of_the_swap_pair() {
    let page = e2_page(&swap_pair(&cyclic_group(3))).unwrap();
    assert_eq!(page.entries.len(), 6);
    assert_eq!(page.entries[&(0, 0)].invariants(), &[3]);
    assert_eq!(page.entries[&(0, 1)].invariants(), &[3]);
    for p in 1..=2 {
        for q in 0..=1 {
            assert!(page.entries[&(p, q)].is_trivial());
        }
    }
    assert!(page.differentials[&(0, 1)].image().is_trivial());
}

#[test]
fn vertical_differential_is_block_diagonal_for_trivial_left_action() {
    let mp = swap_pair(&cyclic_group(3));
    let k = KacComplex::new(&mp, 2, 2).unwrap();
    for p in 0..=2 {
        for q in 0..2 {
            let v = k.vertical(p, q).unwrap();
            let nx = k.rank(p, 0) / 8;
            for r in 0..v.nrows() {
                let shifted: Vec<_> = v.row(r - r % nx).iter().map(|&(c, e)| (c + (r % nx) as u32, e)).collect();
                assert!(v.row(r).iter().all(|&(c, _)| c as usize % nx == r % nx));
                assert_eq!(v.row(r), &shifted[..]);
            }
        }
    }
}

fn matrix_pair(n: usize, a: i64, b: i64, c: i64) -> MatchedPair {
    let m = n as i64;
    MatchedPair::semidirect(&cyclic_group(2), &abelian_group(&[n, n]), |s, x| {
        if x == 0 {
            return s;
        }
        let (u, v) = ((s / n) as i64, (s % n) as i64);
        let (u2, v2) = ((a * u + b * v).rem_euclid(m), (c * u - a * v).rem_euclid(m));
        (u2 * m + v2) as usize
    })
    .unwrap()
}

#[test]
fn swap_oracle_matches_direct_routes() {
    for (h, expected) in [(cyclic_group(2), vec![2]), (cyclic_group(3), vec![3])] {
        assert_eq!(swap_opext(&h).unwrap().invariants(), &expected[..]);
        assert_eq!(value(&swap_pair(&h), Route::KacTotal), expected);
    }
    assert_eq!(swap_opext(&s3()).unwrap().invariants(), &[2]);
}

#[test]
fn matrix_oracle_matches_direct_routes() {
    for (n, a, b, c) in [(3, 0, 1, 1), (3, 1, 1, 0), (5, 0, 1, 1), (4, 1, 0, 0)] {
        let oracle = matrix_a_opext(n as i64, a, b, c).unwrap();
        assert_eq!(opext(&matrix_pair(n, a, b, c), Route::KacTotal, &OpextOptions::default()).unwrap().value, oracle, "n={n} A=({a},{b},{c})");
    }
    assert_eq!(matrix_a_opext(3, 0, 1, 1).unwrap().invariants(), &[3]);
    assert!(matches!(matrix_a_opext(3, 0, 0, 0), Err(KacError::HypothesisViolated(_))));
}

#[test]
fn odd_v_oracles_match_direct_routes() {
    let v = abelian_group(&[3, 3]);
    let swap = |s: usize, x: usize| if x == 0 { s } else { (s % 3) * 3 + s / 3 };
    let z2 = cyclic_group(2);
    let oracle = odd_v_opext(&z2, &v, swap).unwrap();
    let mp = MatchedPair::semidirect(&z2, &v, swap).unwrap();
    assert_eq!(value(&mp, Route::KacTotal), oracle.invariants());
    assert_eq!(cyclic_odd_v(2, &v, |s| swap(s, 1)).unwrap(), oracle);
    // ℤ/4 acting on (ℤ/3)² by a matrix of order 4
    let rot = |s: usize| {
        let (u, w) = (s / 3, s % 3);
        ((3 - w) % 3) * 3 + u
    };
    let z4 = cyclic_group(4);
    let act = move |s: usize, x: usize| (0..x).fold(s, |t, _| rot(t));
    let mp = MatchedPair::semidirect(&z4, &v, act).unwrap();
    let oracle = odd_v_opext(&z4, &v, act).unwrap();
    assert_eq!(cyclic_odd_v(4, &v, rot).unwrap(), oracle);
    assert_eq!(value(&mp, Route::KacTotal), oracle.invariants());
    assert!(matches!(odd_v_opext(&z2, &abelian_group(&[2, 2]), |s, _| s), Err(KacError::HypothesisViolated(_))));
}

/// `τ(s, t; σ) = ζ^{s₁t₂}` and `γ(s; σ, σ) = −(−ac·x²/2 − bc·xy + ab·y²/2)/n` at `s = (x, y)`.
fn matrix_lift(ctx: &FiveTermContext, n: i64, a: i64, b: i64, c: i64) -> (CircleVec, CircleVec) {
    let k = ctx.kac();
    let half = (n + 1) / 2;
    let uv = |s: usize| ((s as i64) / n, (s as i64) % n);
    let tau: Vec<CircleElement> = (0..k.rank(0, 1))
        .map(|i| {
            let (s, _) = k.decode(0, 1, i);
            CircleElement::new(uv(s[0]).0 * uv(s[1]).1, n)
        })
        .collect();
    let gamma: Vec<CircleElement> = (0..k.rank(1, 0))
        .map(|i| {
            let (x, y) = uv(k.decode(1, 0, i).0[0]);
            CircleElement::new(a * c * x * x * half + b * c * x * y - a * b * y * y * half, n)
        })
        .collect();
    (CircleVec::from_elements(&tau), CircleVec::from_elements(&gamma))
}

#[test]
fn explicit_gamma_kills_d2_for_matrix_actions() {
    for (n, a, b, c) in [(3, 0, 1, 1), (5, 0, 1, 1), (3, 1, 1, 0)] {
        let ctx = FiveTermContext::new(&matrix_pair(n as usize, a, b, c)).unwrap();
        let (tau, gamma) = matrix_lift(&ctx, n, a, b, c);
        let class = ctx.d2_from(&tau, &gamma).unwrap();
        assert!(ctx.h3_f_ghat().is_zero(&class));
        assert!(matches!(ctx.d2_from(&tau, &gamma.neg()), Err(KacError::LiftFailed(_))));
        for k in 0..ctx.der().len() {
            assert!(ctx.h3_f_ghat().is_zero(&ctx.d2(&ctx.der().generator(k)).unwrap()));
        }
    }
}

fn check_sequence(mp: &MatchedPair) -> KacSequence {
    let seq = kac_sequence(mp, 3).unwrap();
    assert_eq!(seq.terms.len(), 9);
    assert_eq!(seq.maps.len(), 8);
    for (name, c) in &seq.exactness {
        assert!(c.holds(), "not exact at {name}");
    }
    for (name, ok) in &seq.cross_checks {
        assert!(ok, "{name}");
    }
    let opext = value(mp, Route::KacTotal);
    assert_eq!(seq.term("H3_A").unwrap().invariants(), &opext[..]);
    seq
}

#[test]
fn kac_sequence_trivial_pair() {
    let z2 = cyclic_group(2);
    let seq = check_sequence(&MatchedPair::direct(&z2, &z2));
    assert_eq!(seq.term("H2_A").unwrap().invariants(), &[2]);
}

#[test]
fn kac_sequence_s3() {
    check_sequence(&s3_pair());
}

#[test]
fn kac_sequence_z12() {
    let t = std::time::Instant::now();
    let seq = check_sequence(&MatchedPair::direct(&cyclic_group(4), &cyclic_group(3)));
    assert_eq!(seq.term("H1(Sigma)").unwrap().invariants(), &[12]);
    assert!(t.elapsed().as_secs() < 60);
}
