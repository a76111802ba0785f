use std::collections::VecDeque;

use opextkit::groups::{abelian_group, cyclic_group, direct_product, group_from_permutations, group_from_table, FiniteGroup, GroupError};
use opextkit::matched::{validate_matched_pair, MatchedError, MatchedPair};

use crate::config::{ActionSpec, ConfigError, GroupSpec, ProblemSpec};

#[derive(Debug)]
pub enum BuildError {
    Config(ConfigError),
    Group(String, GroupError),
    Matched(MatchedError),
}

impl std::fmt::Display for BuildError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BuildError::Config(e) => e.fmt(f),
            BuildError::Group(which, e) => write!(f, "group {which}: {e}"),
            BuildError::Matched(e) => write!(f, "{e}"),
        }
    }
}

impl From<ConfigError> for BuildError {
    fn from(e: ConfigError) -> Self {
        BuildError::Config(e)
    }
}

fn invalid(field: &str, reason: impl Into<String>) -> BuildError {
    BuildError::Config(ConfigError::Validation { field: field.into(), reason: reason.into() })
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => cyclic_group(*n),
        GroupSpec::Abelian(inv) => abelian_group(inv),
        GroupSpec::MultTable(t) => group_from_table(t)?,
        GroupSpec::Permutations { generators, degree } => group_from_permutations(generators, *degree)?,
        GroupSpec::DirectProduct(factors) => {
            let mut g = cyclic_group(1);
            for f in factors {
                let h = build_group(f)?;
                if g.order() * h.order() > opextkit::groups::MAX_ORDER {
                    return Err(GroupError::TooLarge(g.order() * h.order()));
                }
                g = direct_product(&g, &h);
            }
            g
        }
    })
}

/// `H` when the group is given as `H × H`.
pub fn square_root(spec: &GroupSpec) -> Option<GroupSpec> {
    match spec {
        GroupSpec::Abelian(inv) if inv.len() == 2 && inv[0] == inv[1] => Some(GroupSpec::Cyclic(inv[0])),
        GroupSpec::DirectProduct(f) if f.len() == 2 && f[0] == f[1] => Some(f[0].clone()),
        _ => None,
    }
}

/// Matrices act on `(ℤ/n)^k` in mixed-radix coordinates, first coordinate major.
fn coordinates(g: &FiniteGroup, n: i64, field: &str) -> Result<usize, BuildError> {
    let mut k = 0;
    let mut size = 1usize;
    while size < g.order() {
        size *= n as usize;
        k += 1;
    }
    if size != g.order() || g.table() != abelian_group(&vec![n as usize; k]).table() {
        return Err(invalid(field, format!("the acted-on group is not (Z/{n})^k in standard coordinates")));
    }
    Ok(k)
}

fn to_digits(mut s: usize, n: i64, k: usize) -> Vec<i64> {
    let mut v = vec![0; k];
    for d in v.iter_mut().rev() {
        *d = (s % n as usize) as i64;
        s /= n as usize;
    }
    v
}

fn from_digits(v: &[i64], n: i64) -> usize {
    v.iter().fold(0, |acc, &d| acc * n as usize + d.rem_euclid(n) as usize)
}

fn mat_mul(a: &[i64], b: &[i64], k: usize, n: i64) -> Vec<i64> {
    (0..k * k).map(|ij| (0..k).map(|l| a[(ij / k) * k + l] * b[l * k + ij % k]).sum::<i64>().rem_euclid(n)).collect()
}

/// The matrix of every element of `acting`, with the generator matrices composed on the left
/// (`compose_left`) or on the right.
fn element_matrices(acting: &FiniteGroup, gens: &[Vec<i64>], k: usize, n: i64, compose_left: bool, field: &str) -> Result<Vec<Vec<i64>>, BuildError> {
    if gens.len() != acting.generators().len() {
        return Err(invalid(field, format!("expected {} matrices, one per generator", acting.generators().len())));
    }
    if let Some(m) = gens.iter().find(|m| m.len() != k * k) {
        return Err(invalid(field, format!("matrix with {} entries, expected {}", m.len(), k * k)));
    }
    let id: Vec<i64> = (0..k * k).map(|ij| i64::from(ij / k == ij % k)).collect();
    let mut mats: Vec<Option<Vec<i64>>> = vec![None; acting.order()];
    mats[0] = Some(id);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let px = mats[x].clone().unwrap();
        for (&g, m) in acting.generators().iter().zip(gens) {
            let y = acting.mul(x, g);
            let py = if compose_left { mat_mul(m, &px, k, n) } else { mat_mul(&px, m, k, n) };
            match &mats[y] {
                Some(q) if *q != py => return Err(invalid(field, "the matrices do not satisfy the relations of the acting group")),
                Some(_) => {}
                None => {
                    mats[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(mats.into_iter().map(Option::unwrap).collect())
}

fn apply(m: &[i64], s: usize, k: usize, n: i64) -> usize {
    let v = to_digits(s, n, k);
    let w: Vec<i64> = (0..k).map(|i| (0..k).map(|j| m[i * k + j] * v[j]).sum()).collect();
    from_digits(&w, n)
}

/// `table[s][x]` for `s ∈ G`, `x ∈ F`. For `◁` the values lie in `G`, for `▷` in `F`.
fn action_table(spec: &ProblemSpec, f: &FiniteGroup, g: &FiniteGroup, left: bool) -> Result<Vec<Vec<usize>>, BuildError> {
    let (action, section) = if left { (&spec.left, "action.left") } else { (&spec.right, "action.right") };
    let field = |k: &str| format!("{section}.{k}");
    // the group acted on, and the one acting
    let (moved, acting, moved_spec) = if left { (g, f, &spec.g) } else { (f, g, &spec.f) };
    let table_of = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> { g.elements().map(|s| f.elements().map(|x| op(s, x)).collect()).collect() };
    let by_element = |images: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        if left {
            table_of(&|s, x| images(x, s))
        } else {
            table_of(&|s, x| images(s, x))
        }
    };
    Ok(match action {
        ActionSpec::Trivial => table_of(&|s, x| if left { s } else { x }),
        ActionSpec::PermutationTable(t) => t.clone(),
        ActionSpec::Swap => {
            if acting.order() != 2 {
                return Err(invalid(&field("kind"), "swap needs an acting group of order 2"));
            }
            if square_root(moved_spec).is_none() {
                return Err(invalid(&field("kind"), "swap needs the other group given as H x H"));
            }
            let h = (moved.order() as f64).sqrt().round() as usize;
            by_element(&|a, m| if a == 0 { m } else { (m % h) * h + m / h })
        }
        ActionSpec::MatricesMod { modulus, matrices } => {
            let k = coordinates(moved, *modulus, &field("matrices"))?;
            // ◁ is a right action, ▷ a left one
            let mats = element_matrices(acting, matrices, k, *modulus, left, &field("matrices"))?;
            by_element(&|a, m| apply(&mats[a], m, k, *modulus))
        }
        ActionSpec::MatrixA { modulus, a, b, c } => {
            if acting.order() != 2 {
                return Err(invalid(&field("kind"), "matrix_A needs an acting group of order 2"));
            }
            let k = coordinates(moved, *modulus, &field("matrix"))?;
            if k != 2 {
                return Err(invalid(&field("matrix"), format!("the acted-on group must be (Z/{modulus})^2")));
            }
            let m = [*a, *b, *c, -*a];
            by_element(&|x, s| if x == 0 { s } else { apply(&m, s, 2, *modulus) })
        }
    })
}

pub struct Problem {
    pub spec: ProblemSpec,
    pub pair: MatchedPair,
}

pub fn build(spec: &ProblemSpec) -> Result<Problem, BuildError> {
    let f = build_group(&spec.f).map_err(|e| BuildError::Group("F".into(), e))?;
    let g = build_group(&spec.g).map_err(|e| BuildError::Group("G".into(), e))?;
    let right = action_table(spec, &f, &g, true)?;
    let left = action_table(spec, &f, &g, false)?;
    let pair = validate_matched_pair(&f, &g, &right, &left).map_err(BuildError::Matched)?;
    Ok(Problem { spec: spec.clone(), pair })
}
