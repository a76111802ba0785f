//! Closed-form values of `Opext` for families of pairs with trivial `▷`, computed without the
//! Kac complex. They serve as independent checks of the general routes.

use num_integer::Integer;

use crate::cohomology::{derivations, group_cohomology, Coefficients};
use crate::exactlin::{AbHom, FpAbGroup, Subgroup};
use crate::groups::{cyclic_group, dual_module, exterior_square, FiniteGroup, GModule};

use super::KacError;

fn violated(msg: impl Into<String>) -> KacError {
    KacError::HypothesisViolated(msg.into())
}

/// `H²(G, ℚ/ℤ) ⊕ P(G, G; ℚ/ℤ)` for `ℤ/2` swapping the factors of `G × G`.
///
/// Bicharacters factor through the abelianization, so `P(G, G) ≅ ⊕ᵢⱼ ℤ/gcd(dᵢ, dⱼ)` over the
/// invariant factors of `H¹(G, ℚ/ℤ) ≅ Hom(G_ab, ℚ/ℤ)`.
pub fn swap_opext(g: &FiniteGroup) -> Result<FpAbGroup, KacError> {
    let h2 = group_cohomology(g, &Coefficients::Circle, 2, false)?.group().clone();
    let d = group_cohomology(g, &Coefficients::Circle, 1, false)?.group().invariants().to_vec();
    let p: Vec<i64> = d.iter().flat_map(|a| d.iter().map(move |b| a.gcd(b))).collect();
    Ok(h2.direct_sum(&FpAbGroup::from_cyclic_orders(&p)))
}

/// `Ker(A − I) / Im(A + I) ⊕ ℤ/n` for `ℤ/2` acting on `(ℤ/n)²` through `A = [[a, b], [c, −a]]`
/// with `det A ≡ −1 (mod n)`.
pub fn matrix_a_opext(n: i64, a: i64, b: i64, c: i64) -> Result<FpAbGroup, KacError> {
    if n < 2 {
        return Err(violated(format!("n = {n} must be at least 2")));
    }
    if (a * a + b * c - 1).rem_euclid(n) != 0 {
        return Err(violated(format!("det A = {} is not −1 mod {n}", -a * a - b * c)));
    }
    let v = FpAbGroup::new(0, vec![n, n]);
    let shifted = |k: i64| AbHom::from_images(v.clone(), v.clone(), &[vec![a + k, c], vec![b, -a + k]]);
    let fixed = shifted(-1).kernel();
    let norms = shifted(1).image();
    let h = fixed.quotient_by(&norms).ok_or_else(|| violated("A is not an involution mod n"))?;
    Ok(h.direct_sum(&FpAbGroup::cyclic(n)))
}

fn check_odd(v: &FiniteGroup) -> Result<(), KacError> {
    if !v.is_abelian() {
        return Err(violated("V is not abelian"));
    }
    if v.order() % 2 == 0 {
        return Err(violated(format!("|V| = {} is even", v.order())));
    }
    Ok(())
}

/// `H²(F, V̂) ⊕ Der(F, ∧²V̂)` for `F` acting on the right on an abelian group `V` of odd order.
pub fn odd_v_opext(f: &FiniteGroup, v: &FiniteGroup, right: impl Fn(usize, usize) -> usize) -> Result<FpAbGroup, KacError> {
    check_odd(v)?;
    let (vhat, _) = dual_module(v, f, right)?;
    let h2 = group_cohomology(f, &Coefficients::Module(vhat.clone()), 2, false)?.group().clone();
    let der = derivations(&exterior_square(&vhat))?.group().clone();
    Ok(h2.direct_sum(&der))
}

fn endomorphism(m: &GModule, g: usize, shift: i64) -> AbHom {
    let a = m.abelian_group();
    let images: Vec<Vec<i64>> = (0..m.dim())
        .map(|j| {
            let mut e = vec![0; m.dim()];
            e[j] = 1;
            let mut y = m.act(g, &e);
            y[j] += shift;
            y
        })
        .collect();
    AbHom::from_images(a.clone(), a, &images)
}

fn norm(m: &GModule, order: usize) -> AbHom {
    let a = m.abelian_group();
    let images: Vec<Vec<i64>> = (0..m.dim())
        .map(|j| {
            let mut e = vec![0; m.dim()];
            e[j] = 1;
            (0..order).fold(a.zero(), |acc, k| a.add(&acc, &m.act(k, &e)))
        })
        .collect();
    AbHom::from_images(a.clone(), a, &images)
}

/// `V̂^σ / N_σ V̂ ⊕ Ker(N_σ on ∧²V̂)` for `ℤ/m = ⟨σ⟩` acting on an abelian group `V` of odd order,
/// where `sigma(s) = s ◁ σ` and `N_σ = 1 + σ + ⋯ + σ^{m−1}`.
pub fn cyclic_odd_v(m: usize, v: &FiniteGroup, sigma: impl Fn(usize) -> usize) -> Result<FpAbGroup, KacError> {
    check_odd(v)?;
    let f = cyclic_group(m);
    let (vhat, _) = dual_module(v, &f, |s, x| (0..x).fold(s, |t, _| sigma(t)))?;
    let fixed = endomorphism(&vhat, 1, -1).kernel();
    let first = fixed.quotient_by(&norm(&vhat, m).image()).ok_or_else(|| violated("σ does not have order dividing m"))?;
    let ext = exterior_square(&vhat);
    let second: Subgroup = norm(&ext, m).kernel();
    Ok(first.direct_sum(&second.structure()))
}
