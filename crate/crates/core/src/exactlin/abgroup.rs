use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::lattice::{integer_kernel, solve_integer};
use super::matrix::IntMatrix;
use super::snf::{invariant_factors, smith_normal_form};

/// A finitely generated abelian group `ℤ^f ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_r` with `d₁ | d₂ | …`, `dᵢ ≥ 2`.
///
/// Elements are integer vectors of length `f + r`: free coordinates first, then torsion
/// coordinates reduced into `[0, dᵢ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpAbGroup {
    free_rank: usize,
    invariants: Vec<i64>,
}

impl FpAbGroup {
    /// Panics unless the invariants form a divisibility chain of integers ≥ 2.
    pub fn new(free_rank: usize, invariants: Vec<i64>) -> Self {
        assert!(invariants.iter().all(|&d| d >= 2), "invariant factors must be ≥ 2");
        assert!(
            invariants.windows(2).all(|w| w[1] % w[0] == 0),
            "invariant factors must form a divisibility chain: {invariants:?}"
        );
        FpAbGroup { free_rank, invariants }
    }

    pub fn trivial() -> Self {
        FpAbGroup { free_rank: 0, invariants: vec![] }
    }

    pub fn cyclic(n: i64) -> Self {
        match n {
            0 => FpAbGroup::new(1, vec![]),
            1 => FpAbGroup::trivial(),
            n => FpAbGroup::new(0, vec![n.abs()]),
        }
    }

    /// Direct sum of cyclic groups of the given orders (`0` meaning ℤ), in normal form.
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let m = IntMatrix::from_i64(orders.len(), orders.len(), |i, j| if i == j { orders[i] } else { 0 });
        let diag = invariant_factors(&m);
        let mut free = 0;
        let mut inv = vec![];
        for d in diag {
            let d = d.to_i64().expect("invariant factor exceeds i64");
            match d {
                0 => free += 1,
                1 => {}
                d => inv.push(d),
            }
        }
        FpAbGroup::new(free, inv)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    /// Number of coordinates of an element.
    pub fn len(&self) -> usize {
        self.free_rank + self.invariants.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group; `None` if there is a free summand.
    pub fn order(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariants.iter().map(|&d| d as u128).product())
    }

    /// Modulus of coordinate `i` (`0` for free coordinates).
    pub fn modulus(&self, i: usize) -> i64 {
        if i < self.free_rank {
            0
        } else {
            self.invariants[i - self.free_rank]
        }
    }

    pub fn moduli(&self) -> Vec<i64> {
        (0..self.len()).map(|i| self.modulus(i)).collect()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.len()]
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.len(), "element has wrong length");
        x.iter()
            .enumerate()
            .map(|(i, &v)| match self.modulus(i) {
                0 => v,
                d => v.rem_euclid(d),
            })
            .collect()
    }

    pub fn reduce_big(&self, x: &[BigInt]) -> Vec<i64> {
        x.iter()
            .enumerate()
            .map(|(i, v)| match self.modulus(i) {
                0 => v.to_i64().expect("free coordinate exceeds i64"),
                d => v.mod_floor(&BigInt::from(d)).to_i64().unwrap(),
            })
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().map(|x| x * k).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.scale(-1, a)
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        self.reduce(a).iter().all(|&v| v == 0)
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    /// Additive order of an element; `None` if it has infinite order.
    pub fn element_order(&self, a: &[i64]) -> Option<i64> {
        let a = self.reduce(a);
        let mut ord = 1i64;
        for (i, &v) in a.iter().enumerate() {
            match self.modulus(i) {
                0 if v != 0 => return None,
                0 => {}
                d => ord = ord.lcm(&(d / v.gcd(&d))),
            }
        }
        Some(ord)
    }

    /// Exponent of the torsion part.
    pub fn exponent(&self) -> i64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn direct_sum(&self, other: &FpAbGroup) -> FpAbGroup {
        let mut orders = vec![0; self.free_rank + other.free_rank];
        orders.extend(&self.invariants);
        orders.extend(&other.invariants);
        FpAbGroup::from_cyclic_orders(&orders)
    }

    /// Presentation matrix: ambient `ℤ^len`, relations `diag(moduli)` on the torsion part.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.len();
        let cols: Vec<usize> = (self.free_rank..n).collect();
        IntMatrix::from_i64(n, cols.len(), |i, j| if i == cols[j] { self.modulus(i) } else { 0 })
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![vec![]];
        for &d in &self.invariants {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Compact text form: `0`, `(2,4)`, `Z^1`, `Z^1+(2)`.
    pub fn notation(&self) -> String {
        let tors = if self.invariants.is_empty() {
            None
        } else {
            let parts: Vec<String> = self.invariants.iter().map(|d| d.to_string()).collect();
            Some(format!("({})", parts.join(",")))
        };
        match (self.free_rank, tors) {
            (0, None) => "0".to_string(),
            (0, Some(t)) => t,
            (f, None) => format!("Z^{f}"),
            (f, Some(t)) => format!("Z^{f}+{t}"),
        }
    }
}

impl fmt::Debug for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpAbGroup{}", self.notation())
    }
}

impl fmt::Display for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// The group `ℤ^m / col(R)` with its normal form and coordinate maps.
#[derive(Clone, Debug)]
pub struct FpPresentation {
    ambient: usize,
    relations: IntMatrix,
    group: FpAbGroup,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Ambient SNF index for each group coordinate.
    coord_index: Vec<usize>,
}

impl FpPresentation {
    pub fn new(relations: IntMatrix) -> Self {
        let m = relations.rows();
        let s = smith_normal_form(&relations);
        let diag: Vec<BigInt> = (0..m)
            .map(|i| if i < s.rank { s.d.get(i, i).clone() } else { BigInt::zero() })
            .collect();
        let free: Vec<usize> = (0..m).filter(|&i| diag[i].is_zero()).collect();
        let tors: Vec<usize> = (0..m).filter(|&i| diag[i] > BigInt::one()).collect();
        let invariants = tors.iter().map(|&i| diag[i].to_i64().expect("torsion exceeds i64")).collect();
        let group = FpAbGroup::new(free.len(), invariants);
        let mut coord_index = free;
        coord_index.extend(tors);
        FpPresentation { ambient: m, relations, group, u: s.u, u_inv: s.u_inv, coord_index }
    }

    /// Presentation of the group itself (identity coordinates).
    pub fn of_group(g: &FpAbGroup) -> Self {
        Self::new(g.relation_matrix())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn group(&self) -> &FpAbGroup {
        &self.group
    }

    /// Canonical coordinates of the class of an ambient vector.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.reduce_big(&vb)
    }

    pub fn reduce_big(&self, v: &[BigInt]) -> Vec<i64> {
        assert_eq!(v.len(), self.ambient);
        let y = self.u.mul_vec(v);
        let c: Vec<BigInt> = self.coord_index.iter().map(|&i| y[i].clone()).collect();
        self.group.reduce_big(&c)
    }

    /// An ambient representative of canonical coordinates.
    pub fn section(&self, c: &[i64]) -> Vec<i64> {
        assert_eq!(c.len(), self.group.len());
        let mut y = vec![BigInt::zero(); self.ambient];
        for (k, &i) in self.coord_index.iter().enumerate() {
            y[i] = BigInt::from(c[k]);
        }
        self.u_inv.mul_vec(&y).iter().map(|v| v.to_i64().expect("section exceeds i64")).collect()
    }
}

/// A homomorphism between finitely presented abelian groups in canonical coordinates.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FpAbGroup,
    pub target: FpAbGroup,
    /// `target.len() × source.len()`; column `j` is the image of generator `j`.
    pub matrix: Vec<Vec<i64>>,
}

impl AbHom {
    /// Builds from the images of the canonical generators, checking well-definedness.
    pub fn from_images(source: FpAbGroup, target: FpAbGroup, images: &[Vec<i64>]) -> Self {
        assert_eq!(images.len(), source.len());
        let n = target.len();
        let mut matrix = vec![vec![0; source.len()]; n];
        for (j, im) in images.iter().enumerate() {
            let im = target.reduce(im);
            for i in 0..n {
                matrix[i][j] = im[i];
            }
            let m = source.modulus(j);
            if m != 0 {
                assert!(target.is_zero(&target.scale(m, &im)), "image of generator {j} has wrong order");
            }
        }
        AbHom { source, target, matrix }
    }

    pub fn zero(source: FpAbGroup, target: FpAbGroup) -> Self {
        let images = vec![target.zero(); source.len()];
        Self::from_images(source, target, &images)
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let y: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        self.target.reduce(&y)
    }

    pub fn images(&self) -> Vec<Vec<i64>> {
        (0..self.source.len()).map(|j| self.apply(&self.source.generator(j))).collect()
    }

    pub fn compose(&self, first: &AbHom) -> AbHom {
        assert_eq!(first.target, self.source);
        let images: Vec<Vec<i64>> = first.images().iter().map(|x| self.apply(x)).collect();
        AbHom::from_images(first.source.clone(), self.target.clone(), &images)
    }

    pub fn is_zero(&self) -> bool {
        self.images().iter().all(|x| self.target.is_zero(x))
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new(self.target.clone(), self.images())
    }

    /// Generators of the kernel.
    pub fn kernel(&self) -> Subgroup {
        let s = self.source.len();
        let t = self.target.len();
        let rel = self.target.relation_matrix();
        // x with M x ∈ col(rel)
        let mut a = IntMatrix::zeros(t, s + rel.cols());
        for i in 0..t {
            for j in 0..s {
                a.set(i, j, BigInt::from(self.matrix[i][j]));
            }
            for j in 0..rel.cols() {
                a.set(i, s + j, -rel.get(i, j).clone());
            }
        }
        let k = integer_kernel(&a);
        let mut gens = vec![];
        for c in 0..k.cols() {
            let x: Vec<BigInt> = (0..s).map(|i| k.get(i, c).clone()).collect();
            gens.push(self.source.reduce_big(&x));
        }
        Subgroup::new(self.source.clone(), gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().equals(&Subgroup::whole(self.target.clone()))
    }
}

/// A subgroup of an `FpAbGroup`, given by generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: FpAbGroup,
    pub generators: Vec<Vec<i64>>,
}

impl Subgroup {
    pub fn new(ambient: FpAbGroup, generators: Vec<Vec<i64>>) -> Self {
        let generators = generators.iter().map(|g| ambient.reduce(g)).filter(|g| !ambient.is_zero(g)).collect();
        Subgroup { ambient, generators }
    }

    pub fn whole(ambient: FpAbGroup) -> Self {
        let gens = (0..ambient.len()).map(|i| ambient.generator(i)).collect();
        Self::new(ambient, gens)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn span_matrix(&self) -> IntMatrix {
        let n = self.ambient.len();
        let rel = self.ambient.relation_matrix();
        let g = self.generators.len();
        let mut a = IntMatrix::zeros(n, g + rel.cols());
        for (j, gen) in self.generators.iter().enumerate() {
            for i in 0..n {
                a.set(i, j, BigInt::from(gen[i]));
            }
        }
        for j in 0..rel.cols() {
            for i in 0..n {
                a.set(i, g + j, rel.get(i, j).clone());
            }
        }
        a
    }

    /// Coefficients expressing `x` in the generators, if `x` lies in the subgroup.
    pub fn express(&self, x: &[i64]) -> Option<Vec<i64>> {
        let a = self.span_matrix();
        let b: Vec<BigInt> = self.ambient.reduce(x).iter().map(|&v| BigInt::from(v)).collect();
        solve_integer(&a, &b).map(|y| {
            y[..self.generators.len()].iter().map(|v| v.to_i64().expect("coefficient exceeds i64")).collect()
        })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.express(x).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn equals(&self, other: &Subgroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Isomorphism type of the subgroup.
    pub fn structure(&self) -> FpAbGroup {
        let g = self.generators.len();
        if g == 0 {
            return FpAbGroup::trivial();
        }
        let a = self.span_matrix();
        let k = integer_kernel(&a);
        // relations among the generators
        let mut rel = IntMatrix::zeros(g, k.cols());
        for c in 0..k.cols() {
            for i in 0..g {
                rel.set(i, c, k.get(i, c).clone());
            }
        }
        FpPresentation::new(rel).group().clone()
    }

    pub fn order(&self) -> Option<u128> {
        self.structure().order()
    }

    /// Isomorphism type of `self / sub`; `sub` must lie in `self`.
    pub fn quotient_by(&self, sub: &Subgroup) -> Option<FpAbGroup> {
        let g = self.generators.len();
        if g == 0 {
            return Some(FpAbGroup::trivial());
        }
        let k = integer_kernel(&self.span_matrix());
        let extra = sub.generators.iter().map(|x| self.express(x)).collect::<Option<Vec<_>>>()?;
        let mut rel = IntMatrix::zeros(g, k.cols() + extra.len());
        for c in 0..k.cols() {
            for i in 0..g {
                rel.set(i, c, k.get(i, c).clone());
            }
        }
        for (c, y) in extra.iter().enumerate() {
            for i in 0..g {
                rel.set(i, k.cols() + c, BigInt::from(y[i]));
            }
        }
        Some(FpPresentation::new(rel).group().clone())
    }
}

/// The quotient `ambient / sub` as a presentation over the ambient coordinates.
pub fn quotient(sub: &Subgroup) -> FpPresentation {
    let a = sub.span_matrix();
    FpPresentation::new(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_of_cyclic_orders() {
        let g = FpAbGroup::from_cyclic_orders(&[2, 3]);
        assert_eq!(g.invariants(), &[6]);
        let g = FpAbGroup::from_cyclic_orders(&[4, 2, 0, 1]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariants(), &[2, 4]);
        assert_eq!(g.notation(), "Z^1+(2,4)");
    }

    #[test]
    fn presentation_round_trip() {
        let r = IntMatrix::from_rows(2, &[vec![2i64, 4], vec![6, 8]]);
        let p = FpPresentation::new(r);
        assert_eq!(p.group().invariants(), &[2, 4]);
        for c in p.group().elements() {
            assert_eq!(p.reduce(&p.section(&c)), c);
        }
        // relations reduce to zero
        assert!(p.group().is_zero(&p.reduce(&[2, 6])));
    }

    #[test]
    fn kernel_and_image_of_doubling() {
        let z4 = FpAbGroup::cyclic(4);
        let f = AbHom::from_images(z4.clone(), z4.clone(), &[vec![2]]);
        assert_eq!(f.kernel().structure(), FpAbGroup::cyclic(2));
        assert_eq!(f.image().structure(), FpAbGroup::cyclic(2));
        assert!(f.kernel().equals(&f.image()));
    }

    #[test]
    fn element_orders() {
        let g = FpAbGroup::new(0, vec![2, 4]);
        assert_eq!(g.element_order(&[1, 2]), Some(2));
        assert_eq!(g.element_order(&[0, 1]), Some(4));
        assert_eq!(g.order(), Some(8));
    }
}
