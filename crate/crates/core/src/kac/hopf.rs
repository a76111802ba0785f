use std::collections::BTreeMap;

use crate::exactlin::CircleElement;
use crate::matched::MatchedPair;

use super::{CocyclePair, KacError};

/// A phase `exp(2πi·num/den)` as a reduced pair.
pub type Phase = (i64, i64);

fn phase(c: CircleElement) -> Phase {
    (c.num(), c.den())
}

/// Structure constants of `k^G #_{σ,τ} kF` on the basis `e_s # x`, stored at `s·|F| + x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub dim: usize,
    nf: usize,
    /// `mult[i·dim + j]`: the product of basis elements `i` and `j`, when nonzero.
    pub mult: Vec<Option<(usize, Phase)>>,
    /// `comult[i]`: terms `(j, k, phase)` of `Δ(b_i)`.
    pub comult: Vec<Vec<(usize, usize, Phase)>>,
    /// Basis elements summing to the unit.
    pub unit: Vec<usize>,
    /// `ε(b_i)`.
    pub counit: Vec<i64>,
    pub report: HopfReport,
}

/// Which axioms were verified and on how many basis tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfReport {
    pub checks: Vec<(&'static str, usize)>,
}

/// A sum of basis tensors with root-of-unity coefficients. Two sums are compared term by term,
/// which is exact here because every structure constant is a single monomial.
type Sum = BTreeMap<Vec<usize>, Vec<Phase>>;

fn add_term(acc: &mut Sum, key: Vec<usize>, p: CircleElement) {
    acc.entry(key).or_default().push(phase(p));
}

fn normalize(mut s: Sum) -> Sum {
    for v in s.values_mut() {
        v.sort_unstable();
    }
    s
}

impl HopfData {
    pub fn basis(&self, s: usize, x: usize) -> usize {
        s * self.nf + x
    }

    /// `(s, x)` of a basis index.
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.nf, i % self.nf)
    }

    fn product(&self, i: usize, j: usize) -> Option<(usize, CircleElement)> {
        self.mult[i * self.dim + j].map(|(k, (n, d))| (k, CircleElement::new(n, d)))
    }

    fn delta(&self, i: usize) -> impl Iterator<Item = (usize, usize, CircleElement)> + '_ {
        self.comult[i].iter().map(|&(j, k, (n, d))| (j, k, CircleElement::new(n, d)))
    }
}

/// Structure constants of `k^G #_{σ,τ} kF` with
/// `(e_s#x)(e_t#y) = δ_{s◁x,t} σ(s;x,y) e_s#xy` and
/// `Δ(e_s#x) = Σ_{s=ab} τ(a,b;x) e_a#(b▷x) ⊗ e_b#x`, after verifying every bialgebra axiom.
///
/// Associativity is the cocycle condition on `σ`, coassociativity the one on `τ`, and
/// multiplicativity of `Δ` the compatibility condition between them; failures are reported with
/// the offending basis tuple as `(s, x, t, y, …)`.
pub fn hopf_data(mp: &MatchedPair, pair: &CocyclePair) -> Result<HopfData, KacError> {
    let (f, g) = (mp.f(), mp.g());
    let (nf, ng) = (f.order(), g.order());
    let dim = nf * ng;
    let mut mult = vec![None; dim * dim];
    for s in g.elements() {
        for x in f.elements() {
            let t = mp.tri_r(s, x);
            for y in f.elements() {
                mult[(s * nf + x) * dim + t * nf + y] = Some((s * nf + f.mul(x, y), phase(pair.sigma(s, x, y))));
            }
        }
    }
    let mut comult = vec![vec![]; dim];
    for a in g.elements() {
        for b in g.elements() {
            let s = g.mul(a, b);
            for x in f.elements() {
                comult[s * nf + x].push((a * nf + mp.tri(b, x), b * nf + x, phase(pair.tau(a, b, x))));
            }
        }
    }
    let unit: Vec<usize> = g.elements().map(|s| s * nf).collect();
    let counit: Vec<i64> = (0..dim).map(|i| i64::from(i / nf == 0)).collect();
    let mut h = HopfData { dim, nf, mult, comult, unit, counit, report: HopfReport::default() };
    let witness = |h: &HopfData, idx: &[usize]| idx.iter().flat_map(|&i| [h.split(i).0, h.split(i).1]).collect::<Vec<_>>();

    // associativity
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let left = h.product(i, j).and_then(|(ij, p)| h.product(ij, k).map(|(r, q)| (r, p + q)));
                let right = h.product(j, k).and_then(|(jk, p)| h.product(i, jk).map(|(r, q)| (r, p + q)));
                if left != right {
                    return Err(KacError::NotCocycle { which: "σ", witness: witness(&h, &[i, j, k]) });
                }
            }
        }
    }
    h.report.checks.push(("associativity", dim * dim * dim));

    // unit
    for i in 0..dim {
        let mut l = Sum::new();
        let mut r = Sum::new();
        for &u in &h.unit {
            if let Some((k, p)) = h.product(u, i) {
                add_term(&mut l, vec![k], p);
            }
            if let Some((k, p)) = h.product(i, u) {
                add_term(&mut r, vec![k], p);
            }
        }
        let mut id = Sum::new();
        add_term(&mut id, vec![i], CircleElement::ZERO);
        if normalize(l) != id || normalize(r) != id.clone() {
            return Err(KacError::NotCocycle { which: "σ", witness: witness(&h, &[i]) });
        }
    }
    h.report.checks.push(("unit", dim));

    // coassociativity
    for i in 0..dim {
        let mut l = Sum::new();
        let mut r = Sum::new();
        for (a, b, p) in h.delta(i) {
            for (a1, a2, q) in h.delta(a) {
                add_term(&mut l, vec![a1, a2, b], p + q);
            }
            for (b1, b2, q) in h.delta(b) {
                add_term(&mut r, vec![a, b1, b2], p + q);
            }
        }
        if normalize(l) != normalize(r) {
            return Err(KacError::NotCocycle { which: "τ", witness: witness(&h, &[i]) });
        }
    }
    h.report.checks.push(("coassociativity", dim));

    // counit
    for i in 0..dim {
        let mut l = Sum::new();
        let mut r = Sum::new();
        for (a, b, p) in h.delta(i) {
            if h.counit[a] != 0 {
                add_term(&mut l, vec![b], p);
            }
            if h.counit[b] != 0 {
                add_term(&mut r, vec![a], p);
            }
        }
        let mut id = Sum::new();
        add_term(&mut id, vec![i], CircleElement::ZERO);
        if normalize(l) != id || normalize(r) != id.clone() {
            return Err(KacError::NotCocycle { which: "τ", witness: witness(&h, &[i]) });
        }
    }
    h.report.checks.push(("counit", dim));

    // Δ and ε are algebra maps
    for i in 0..dim {
        for j in 0..dim {
            let mut l = Sum::new();
            if let Some((k, p)) = h.product(i, j) {
                for (a, b, q) in h.delta(k) {
                    add_term(&mut l, vec![a, b], p + q);
                }
            }
            let mut r = Sum::new();
            for (a1, a2, p) in h.delta(i) {
                for (b1, b2, q) in h.delta(j) {
                    if let (Some((c1, p1)), Some((c2, p2))) = (h.product(a1, b1), h.product(a2, b2)) {
                        add_term(&mut r, vec![c1, c2], p + q + p1 + p2);
                    }
                }
            }
            if normalize(l) != normalize(r) {
                return Err(KacError::IncompatiblePair(witness(&h, &[i, j])));
            }
            let e = h.product(i, j).map_or(0, |(k, _)| h.counit[k]);
            if e != h.counit[i] * h.counit[j] {
                return Err(KacError::Invalid(format!("counit is not multiplicative at {:?}", witness(&h, &[i, j]))));
            }
        }
    }
    let mut l = Sum::new();
    for &u in &h.unit {
        for (a, b, p) in h.delta(u) {
            add_term(&mut l, vec![a, b], p);
        }
    }
    let mut r = Sum::new();
    for &u in &h.unit {
        for &v in &h.unit {
            add_term(&mut r, vec![u, v], CircleElement::ZERO);
        }
    }
    if normalize(l) != normalize(r) {
        return Err(KacError::NotCocycle { which: "τ", witness: vec![] });
    }
    h.report.checks.push(("comultiplication is multiplicative", dim * dim));
    Ok(h)
}
