use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::complexes::{PermComplex, StandardComplex};
use crate::exactlin::{homology, integer_kernel, solve_congruence, IntMatrix};
use crate::groups::{FiniteGroup, GModule};

use super::{check_dense, CohomologyError, CohomologyGroup};

/// One degree of `Hom_G(ℤX^{k+1}, M)`: each orbit contributes `M^{Stab}` spanned by `gens`.
struct Degree {
    orbit_of: Vec<usize>,
    /// `σ` with `b = σ·rep`.
    element: Vec<usize>,
    reps: Vec<usize>,
    gens: Vec<Vec<Vec<i64>>>,
    offsets: Vec<usize>,
    params: usize,
}

fn fixed_points(m: &GModule, stab: &[usize]) -> Vec<Vec<i64>> {
    let r = m.dim();
    let mods = m.moduli();
    let h = stab.len();
    // unknowns: v (r) and w (r per stabilizer element); (A_h − I) v − diag(m) w_h = 0
    let mut a = IntMatrix::zeros(r * h, r + r * h);
    for (k, &s) in stab.iter().enumerate() {
        let act = m.action(s);
        for i in 0..r {
            for j in 0..r {
                a.set(k * r + i, j, (act[i][j] - i64::from(i == j)).into());
            }
            a.set(k * r + i, r + k * r + i, (-mods[i]).into());
        }
    }
    let ker = if h == 0 { IntMatrix::identity(r) } else { integer_kernel(&a) };
    let mut gens: Vec<Vec<i64>> = (0..ker.cols())
        .map(|c| (0..r).map(|i| ker.get(i, c).to_i64().expect("small kernel").rem_euclid(mods[i])).collect())
        .filter(|v: &Vec<i64>| v.iter().any(|&x| x != 0))
        .collect();
    gens.sort();
    gens.dedup();
    gens
}

fn degree(c: &StandardComplex, m: &GModule, k: usize) -> Degree {
    let g = c.group();
    let n = c.rank(k);
    let mut orbit_of = vec![usize::MAX; n];
    let mut element = vec![0; n];
    let mut reps = vec![];
    let mut gens = vec![];
    for b in 0..n {
        if orbit_of[b] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(b);
        let mut stab = vec![];
        for s in g.elements() {
            let t = c.act(k, s, b);
            if t == b {
                stab.push(s);
            }
            if orbit_of[t] == usize::MAX {
                orbit_of[t] = id;
                element[t] = s;
            }
        }
        gens.push(fixed_points(m, &stab));
    }
    let mut offsets = vec![0];
    for gs in &gens {
        offsets.push(offsets.last().unwrap() + gs.len());
    }
    let params = *offsets.last().unwrap();
    Degree { orbit_of, element, reps, gens, offsets, params }
}

/// Relations among the parameters of one degree: kernel of the generator map mod moduli.
fn relations(m: &GModule, d: &Degree) -> IntMatrix {
    let r = m.dim();
    let mods = m.moduli();
    let mut cols: Vec<Vec<i64>> = vec![];
    for (o, gs) in d.gens.iter().enumerate() {
        let q = gs.len();
        if q == 0 {
            continue;
        }
        let mut a = IntMatrix::zeros(r, q + r);
        for (j, gv) in gs.iter().enumerate() {
            for i in 0..r {
                a.set(i, j, gv[i].into());
            }
        }
        for i in 0..r {
            a.set(i, q + i, (-mods[i]).into());
        }
        let ker = integer_kernel(&a);
        for c in 0..ker.cols() {
            let mut col = vec![0i64; d.params];
            for j in 0..q {
                col[d.offsets[o] + j] = ker.get(j, c).to_i64().expect("small relation");
            }
            if col.iter().any(|&x| x != 0) {
                cols.push(col);
            }
        }
    }
    let mut out = IntMatrix::zeros(d.params, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            out.set(i, j, v.into());
        }
    }
    out
}

/// `δ : Hom_G(C_k, M) → Hom_G(C_{k+1}, M)` in parameter coordinates.
fn coboundary(c: &StandardComplex, m: &GModule, lower: &Degree, upper: &Degree, k: usize) -> Result<IntMatrix, CohomologyError> {
    let r = m.dim();
    let mods = m.moduli();
    let mut out = IntMatrix::zeros(upper.params, lower.params);
    for (o, &rep) in upper.reps.iter().enumerate() {
        let gen_mat = IntMatrix::from_i64(r, upper.gens[o].len(), |i, j| upper.gens[o][j][i]);
        let faces = c.boundary(k + 1, rep);
        for p in 0..lower.params {
            let lo = lower.offsets.partition_point(|&x| x <= p) - 1;
            let gv = &lower.gens[lo][p - lower.offsets[lo]];
            // value at `rep` of δ applied to the parameter basis vector p
            let mut val = vec![0i64; r];
            for &(b, coeff) in &faces {
                if lower.orbit_of[b] != lo {
                    continue;
                }
                let moved = m.act(lower.element[b], gv);
                for i in 0..r {
                    val[i] = (val[i] + coeff * moved[i]).rem_euclid(mods[i]);
                }
            }
            if val.iter().all(|&x| x == 0) {
                continue;
            }
            let rhs: Vec<BigInt> = val.iter().map(|&v| v.into()).collect();
            let y = solve_congruence(&gen_mat, &rhs, mods)
                .ok_or_else(|| CohomologyError::Invalid("coboundary leaves the fixed points".into()))?;
            for (j, v) in y.iter().enumerate() {
                out.set(upper.offsets[o] + j, p, v.clone());
            }
        }
    }
    Ok(out)
}

/// `H^n(G, S; M)` from the standard complex of `G/S`, which is relatively `S`-projective.
pub fn relative_hochschild(g: &FiniteGroup, sub: &[usize], m: &GModule, n: usize, normalized: bool) -> Result<CohomologyGroup, CohomologyError> {
    if !g.is_subgroup(sub) {
        return Err(CohomologyError::Invalid("not a subgroup".into()));
    }
    if m.group().table() != g.table() {
        return Err(CohomologyError::Invalid("module is over a different group".into()));
    }
    // left cosets aS, labelled by first appearance
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = vec![];
    for a in g.elements() {
        if coset_of[a] == usize::MAX {
            for &s in sub {
                coset_of[g.mul(a, s)] = reps.len();
            }
            reps.push(a);
        }
    }
    let x = reps.len();
    let c = StandardComplex::new(g, x, |s, i| coset_of[g.mul(s, reps[i])], n + 1, normalized)?;
    check_dense(n + 1, c.rank(n + 1) * m.dim())?;
    let degs: Vec<Degree> = (0..=n + 1).map(|k| degree(&c, m, k)).collect();
    let d_next = coboundary(&c, m, &degs[n], &degs[n + 1], n)?;
    let (d_prev, rel_prev) = if n >= 1 {
        (coboundary(&c, m, &degs[n - 1], &degs[n], n - 1)?, relations(m, &degs[n - 1]))
    } else {
        (IntMatrix::zeros(degs[0].params, 0), IntMatrix::zeros(0, 0))
    };
    let h = homology(&d_prev, &d_next, &rel_prev, &relations(m, &degs[n]), &relations(m, &degs[n + 1]))?;
    let model = if normalized { "normalized standard complex of G/S" } else { "standard complex of G/S" };
    Ok(CohomologyGroup::lattice(n, model, h))
}
