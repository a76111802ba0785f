use num_integer::Integer;

use crate::exactlin::{CircleElement, CircleVec, FpAbGroup};
use crate::groups::{abelian_invariants, direct_product, exterior_pairs, AbelianStructure, FiniteGroup};

use super::{group_cohomology, Cochain, Coefficients, CohomologyError, CohomologyGroup, Tuples};

/// Value of a normalized 2-cochain at `(a, b)`.
fn eval2(t: &Tuples, f: &CircleVec, a: usize, b: usize) -> CircleElement {
    match t.encode(&[a, b]) {
        Some(i) => f.get(i),
        None => CircleElement::default(),
    }
}

/// A map `G₁ × G₂ → ℚ/ℤ` additive in each argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    table: Vec<Vec<CircleElement>>,
}

impl Bicharacter {
    pub fn new(table: Vec<Vec<CircleElement>>, g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self, CohomologyError> {
        let b = Bicharacter { table };
        for x in g1.elements() {
            for y in g2.elements() {
                for z in g1.elements() {
                    if b.at(g1.mul(x, z), y) != b.at(x, y) + b.at(z, y) {
                        return Err(CohomologyError::Invalid(format!("not additive in the first slot at ({x}, {z}; {y})")));
                    }
                }
                for z in g2.elements() {
                    if b.at(x, g2.mul(y, z)) != b.at(x, y) + b.at(x, z) {
                        return Err(CohomologyError::Invalid(format!("not additive in the second slot at ({x}; {y}, {z})")));
                    }
                }
            }
        }
        Ok(b)
    }

    pub fn at(&self, x: usize, y: usize) -> CircleElement {
        self.table[x][y]
    }
}

/// `H²(G₁×G₂, ℚ/ℤ) ≅ H²(G₁, ℚ/ℤ) ⊕ H²(G₂, ℚ/ℤ) ⊕ P(G₁, G₂; ℚ/ℤ)` for abelian factors.
///
/// Bicharacters are written by their values `φ(e_i, f_j)` on invariant-factor bases, as
/// numerators over `gcd(d_i, e_j)` in row-major order, skipping pairs with `gcd(d_i, e_j) = 1`.
pub struct H2Decomposition {
    g1: FiniteGroup,
    g2: FiniteGroup,
    st1: AbelianStructure,
    st2: AbelianStructure,
    pub product: CohomologyGroup,
    pub first: CohomologyGroup,
    pub second: CohomologyGroup,
    /// `(i, j, gcd(d_i, e_j))` for every coordinate.
    bichar: Vec<(usize, usize, i64)>,
    bichar_moduli: Vec<i64>,
}

pub fn h2_product_decompose(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<H2Decomposition, CohomologyError> {
    let st1 = abelian_invariants(g1)?;
    let st2 = abelian_invariants(g2)?;
    let g = direct_product(g1, g2);
    let inv2 = st2.group().invariants().to_vec();
    let bichar: Vec<(usize, usize, i64)> = st1
        .group()
        .invariants()
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| inv2.iter().enumerate().map(move |(j, &e)| (i, j, d.gcd(&e))))
        .filter(|&(_, _, m)| m > 1)
        .collect();
    let bichar_moduli = bichar.iter().map(|&(_, _, m)| m).collect();
    Ok(H2Decomposition {
        product: group_cohomology(&g, &Coefficients::Circle, 2, true)?,
        first: group_cohomology(g1, &Coefficients::Circle, 2, true)?,
        second: group_cohomology(g2, &Coefficients::Circle, 2, true)?,
        g1: g1.clone(),
        g2: g2.clone(),
        st1,
        st2,
        bichar,
        bichar_moduli,
    })
}

impl H2Decomposition {
    /// Moduli of the bicharacter coordinates.
    pub fn bicharacter_moduli(&self) -> &[i64] {
        &self.bichar_moduli
    }

    pub fn bicharacter_group(&self) -> FpAbGroup {
        FpAbGroup::from_cyclic_orders(&self.bichar_moduli)
    }

    /// The bicharacter with the given coordinates.
    pub fn bicharacter(&self, coords: &[i64]) -> Bicharacter {
        let table = self
            .g1
            .elements()
            .map(|x| {
                let cx = self.st1.to_coords(x);
                self.g2
                    .elements()
                    .map(|y| {
                        let cy = self.st2.to_coords(y);
                        self.bichar.iter().zip(coords).fold(CircleElement::default(), |acc, (&(i, j, m), &c)| acc + CircleElement::new(c * cx[i] * cy[j], m))
                    })
                    .collect()
            })
            .collect();
        Bicharacter { table }
    }

    fn pair(&self, x: usize, y: usize) -> usize {
        x * self.g2.order() + y
    }

    /// `ᾱ ↦ (ᾱ₁, ᾱ₂, φ_α)` with `φ_α(x, y) = α(x, y) − α(y, x)` on `x ∈ G₁`, `y ∈ G₂`.
    pub fn forward(&self, class: &[i64]) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
        let a = self.product.circle_representative(class);
        let t = Tuples::new(self.g1.order() * self.g2.order());
        let (t1, t2) = (Tuples::new(self.g1.order()), Tuples::new(self.g2.order()));
        let restrict = |tt: &Tuples, n: usize, emb: &dyn Fn(usize) -> usize| {
            let vals: Vec<CircleElement> = (0..tt.count(2))
                .map(|i| {
                    let p = tt.decode(2, i);
                    eval2(&t, &a, emb(p[0]), emb(p[1]))
                })
                .collect();
            let _ = n;
            CircleVec::from_elements(&vals)
        };
        let a1 = restrict(&t1, self.g1.order(), &|x| self.pair(x, 0));
        let a2 = restrict(&t2, self.g2.order(), &|y| self.pair(0, y));
        let c1 = self.first.class_of(&Cochain::Circle(a1)).expect("restriction of a cocycle");
        let c2 = self.second.class_of(&Cochain::Circle(a2)).expect("restriction of a cocycle");
        let cp = self
            .bichar
            .iter()
            .map(|&(i, j, m)| {
                let x = self.pair(self.st1.basis_element(i), 0);
                let y = self.pair(0, self.st2.basis_element(j));
                (eval2(&t, &a, x, y) - eval2(&t, &a, y, x)).numerator_over(m)
            })
            .collect();
        (c1, c2, cp)
    }

    /// `(ᾱ₁, ᾱ₂, φ) ↦ ᾱ` with `α((x₁,y₁),(x₂,y₂)) = α₁(x₁,x₂) + α₂(y₁,y₂) + φ(x₁,y₂)`.
    pub fn inverse(&self, c1: &[i64], c2: &[i64], cp: &[i64]) -> Vec<i64> {
        let a1 = self.first.circle_representative(c1);
        let a2 = self.second.circle_representative(c2);
        let phi = self.bicharacter(cp);
        let n2 = self.g2.order();
        let t = Tuples::new(self.g1.order() * n2);
        let (t1, t2) = (Tuples::new(self.g1.order()), Tuples::new(n2));
        let vals: Vec<CircleElement> = (0..t.count(2))
            .map(|i| {
                let p = t.decode(2, i);
                let (x1, y1) = (p[0] / n2, p[0] % n2);
                let (x2, y2) = (p[1] / n2, p[1] % n2);
                eval2(&t1, &a1, x1, x2) + eval2(&t2, &a2, y1, y2) + phi.at(x1, y2)
            })
            .collect();
        self.product.class_of(&Cochain::Circle(CircleVec::from_elements(&vals))).expect("assembled cocycle")
    }
}

/// `Alt(α)(e_i, e_j) = α(e_i, e_j) − α(e_j, e_i)` for `i < j` on an invariant-factor basis,
/// as numerators over `gcd(d_i, d_j)` in [`exterior_pairs`] order.
pub fn alt_map(v: &FiniteGroup, alpha: &CircleVec) -> Result<Vec<i64>, CohomologyError> {
    let st = abelian_invariants(v)?;
    let inv = st.group().invariants();
    let t = Tuples::new(v.order());
    Ok(exterior_pairs(inv.len())
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (st.basis_element(i), st.basis_element(j));
            (eval2(&t, alpha, a, b) - eval2(&t, alpha, b, a)).numerator_over(inv[i].gcd(&inv[j]))
        })
        .collect())
}

/// The cocycle `α_M(x, y) = xᵀ M̃ y / p` on `(ℤ/p)^n` in the coordinates of `abelian_group`,
/// where `M̃` is the strictly upper triangular part of `M`.
pub fn alpha_m(p: usize, m: &[Vec<i64>]) -> CircleVec {
    let n = m.len();
    let order = p.pow(n as u32);
    let t = Tuples::new(order);
    let coords = |mut a: usize| {
        let mut c = vec![0i64; n];
        for i in (0..n).rev() {
            c[i] = (a % p) as i64;
            a /= p;
        }
        c
    };
    let vals: Vec<i64> = (0..t.count(2))
        .map(|k| {
            let pr = t.decode(2, k);
            let (x, y) = (coords(pr[0]), coords(pr[1]));
            let mut s = 0;
            for i in 0..n {
                for j in i + 1..n {
                    s += x[i] * m[i][j] * y[j];
                }
            }
            s
        })
        .collect();
    CircleVec::from_numerators(vals, p as i64)
}
