use std::time::Instant;

use opextkit::cohomology::{group_cohomology, CohomologyError, Coefficients};
use opextkit::complexes::ComplexError;
use opextkit::exactlin::{ExactError, FpAbGroup};
use opextkit::groups::GroupError;
use opextkit::kac::{
    five_term, hopf_data, kac_sequence, matrix_a_opext, odd_v_opext, opext, swap_opext, cyclic_odd_v, KacError, OpextOptions, Resolution, Route, H4_LIMIT,
    MAX_SIGMA,
};
use opextkit::matched::{bicrossed_product, is_semidirect};

use crate::config::{ActionSpec, GroupSpec, Target};
use crate::problem::{build_group, square_root, Problem};
use crate::report::{GroupJson, RepJson, TaskReport, TermJson};

/// Default cap on `|Σ|` for the full Kac sequence.
pub const KAC_SEQ_MAX_SIGMA: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Validate,
    Opext,
    FiveTerm,
    KacSeq,
    Cohomology,
    OracleCompare,
}

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub reps: bool,
    pub resolution: Option<Resolution>,
    pub max_sigma: Option<usize>,
    pub fixed_timing: bool,
}

/// Exit status classes.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    SizeCap(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::SizeCap(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::SizeCap(m) | Failure::Internal(m) => m,
        }
    }
}

fn complex_is_size(e: &ComplexError) -> bool {
    matches!(e, ComplexError::SizeBound { .. })
}

fn cohomology_is_size(e: &CohomologyError) -> bool {
    match e {
        CohomologyError::SizeBound { .. } | CohomologyError::Exact(ExactError::Overflow) | CohomologyError::Group(GroupError::TooLarge(_)) => true,
        CohomologyError::Complex(c) => complex_is_size(c),
        _ => false,
    }
}

fn classify(task: &str, e: KacError) -> Failure {
    let msg = format!("{task}: {e}");
    let size = match &e {
        KacError::SizeBound { .. } | KacError::Exact(ExactError::Overflow) | KacError::Group(GroupError::TooLarge(_)) => true,
        KacError::Cohomology(c) => cohomology_is_size(c),
        KacError::Complex(c) => complex_is_size(c),
        _ => false,
    };
    if size {
        Failure::SizeCap(msg)
    } else if matches!(e, KacError::NotSemidirect | KacError::HypothesisViolated(_)) {
        Failure::Invalid(msg)
    } else {
        Failure::Internal(msg)
    }
}

fn route_of(name: &str) -> Route {
    match name {
        "kac_total" => Route::KacTotal,
        "relative" => Route::Relative,
        _ => Route::FiveTermReconstruction,
    }
}

fn resolution_of(name: &str) -> Resolution {
    match name {
        "bar" => Resolution::Bar,
        "cyclic-tensor" => Resolution::CyclicTensor,
        _ => Resolution::Auto,
    }
}

struct Run<'a> {
    problem: &'a Problem,
    ov: &'a Overrides,
}

impl Run<'_> {
    fn max_sigma(&self, default: usize) -> usize {
        self.ov.max_sigma.or(self.problem.spec.compute.max_sigma).unwrap_or(default)
    }

    fn sigma_order(&self) -> usize {
        self.problem.pair.f().order() * self.problem.pair.g().order()
    }

    fn cap(&self, task: &str, limit: usize) -> Result<(), Failure> {
        let n = self.sigma_order();
        if n > limit {
            return Err(Failure::SizeCap(format!("{task}: |Sigma| = {n} is over the cap {limit}; pass --max-sigma to raise it")));
        }
        Ok(())
    }

    fn options(&self, reps: bool) -> OpextOptions {
        let c = &self.problem.spec.compute;
        let resolution = self.ov.resolution.or_else(|| c.resolution.as_deref().map(resolution_of)).unwrap_or_default();
        OpextOptions { resolution, representatives: reps, max_sigma: self.max_sigma(MAX_SIGMA) }
    }

    fn reps_requested(&self) -> bool {
        self.ov.reps || self.problem.spec.compute.representatives
    }

    fn validate(&self) -> Result<Vec<TaskReport>, Failure> {
        let mp = &self.problem.pair;
        let mut t = TaskReport::new("validate");
        t.certify("matched_pair_axioms", true);
        let info = is_semidirect(mp);
        t.meta.insert("|F|".into(), mp.f().order().to_string());
        t.meta.insert("|G|".into(), mp.g().order().to_string());
        t.meta.insert("|Sigma|".into(), self.sigma_order().to_string());
        // keyed by config section: [action.left] is ◁, [action.right] is ▷
        t.meta.insert("action.left trivial".into(), mp.is_right_trivial().to_string());
        t.meta.insert("action.right trivial".into(), mp.is_left_trivial().to_string());
        t.meta.insert("semidirect".into(), info.semidirect.to_string());
        Ok(vec![t])
    }

    fn opext(&self) -> Result<Vec<TaskReport>, Failure> {
        let mp = &self.problem.pair;
        let reps = self.reps_requested();
        let mut out: Vec<TaskReport> = vec![];
        let mut first: Option<(String, FpAbGroup)> = None;
        for name in &self.problem.spec.compute.routes {
            let task = format!("opext/{name}");
            let start = Instant::now();
            let r = opext(mp, route_of(name), &self.options(reps)).map_err(|e| classify(&task, e))?;
            let mut t = TaskReport::new(&task);
            t.group = Some(GroupJson::from(&r.value));
            if let Some(res) = r.resolution {
                t.meta.insert("resolution".into(), res.name().into());
            }
            if let Some(pairs) = &r.representatives {
                let ok = pairs.iter().all(|p| hopf_data(mp, p).is_ok());
                t.certify("bialgebra_axioms", ok);
                t.representatives = Some(pairs.iter().enumerate().map(|(i, p)| RepJson::new(i, r.value.invariants()[i], p)).collect());
            }
            match &first {
                None => first = Some((name.clone(), r.value.clone())),
                Some((n0, v0)) => t.certify(format!("agrees_with_{n0}"), *v0 == r.value),
            }
            t.ms = start.elapsed().as_millis() as u64;
            out.push(t);
        }
        Ok(out)
    }

    fn five_term(&self) -> Result<Vec<TaskReport>, Failure> {
        self.cap("five-term", self.max_sigma(MAX_SIGMA))?;
        let mp = &self.problem.pair;
        let start = Instant::now();
        let limit = self.problem.spec.compute.h4_limit.unwrap_or(H4_LIMIT);
        let r = five_term(mp, limit).map_err(|e| classify("five-term", e))?;
        let mut t = TaskReport::new("five-term");
        t.group = Some(GroupJson::from(&r.opext));
        let term = |name: &str, g: Option<&FpAbGroup>| TermJson { name: name.into(), group: g.map(GroupJson::from) };
        t.terms = Some(vec![
            term("H2(F,Ghat)", Some(&r.h2_f_ghat)),
            term("Opext", Some(&r.opext)),
            term("Der(F,H2(G))", Some(&r.der)),
            term("H3(F,Ghat)", Some(&r.h3_f_ghat)),
            term("H4_A", r.h4.as_ref()),
            term("ker d2", Some(&r.ker_d2)),
            term("reconstructed", Some(&r.reconstructed)),
        ]);
        for (name, c) in &r.certificates {
            t.certificates.insert(format!("exact at {name}"), c.label().into());
        }
        if !r.all_exact() {
            t.status = "fail".into();
        }
        t.certify("reconstruction_matches_opext", r.reconstructed == r.opext);
        t.ms = start.elapsed().as_millis() as u64;
        Ok(vec![t])
    }

    fn kac_seq(&self) -> Result<Vec<TaskReport>, Failure> {
        self.cap("kac-seq", self.max_sigma(KAC_SEQ_MAX_SIGMA))?;
        let start = Instant::now();
        let depth = self.problem.spec.compute.depth;
        let seq = kac_sequence(&self.problem.pair, depth).map_err(|e| classify("kac-seq", e))?;
        let mut t = TaskReport::new("kac-seq");
        t.group = seq.term("H3_A").map(GroupJson::from);
        t.terms = Some(seq.terms.iter().map(|s| TermJson { name: s.name.clone(), group: Some(GroupJson::from(&s.group)) }).collect());
        for (i, (name, c)) in seq.exactness.iter().enumerate() {
            t.certificates.insert(format!("exact at {i:02} {name}"), c.label().into());
        }
        if !seq.all_exact() {
            t.status = "fail".into();
        }
        for (name, ok) in &seq.cross_checks {
            t.certify(name.clone(), *ok);
        }
        t.ms = start.elapsed().as_millis() as u64;
        Ok(vec![t])
    }

    fn cohomology(&self) -> Result<Vec<TaskReport>, Failure> {
        let c = &self.problem.spec.compute;
        let mp = &self.problem.pair;
        let sigma;
        let (group, label) = match c.target {
            Target::F => (mp.f(), "F"),
            Target::G => (mp.g(), "G"),
            Target::Sigma => {
                self.cap("cohomology", self.max_sigma(MAX_SIGMA))?;
                sigma = bicrossed_product(mp).sigma().clone();
                (&sigma, "Sigma")
            }
        };
        let coeff = if c.coefficients == "integers" { Coefficients::Integers } else { Coefficients::Circle };
        let coeff_label = if c.coefficients == "integers" { "Z" } else { "Q/Z" };
        let task = format!("cohomology/H{}({label},{coeff_label})", c.degree);
        let start = Instant::now();
        let h = group_cohomology(group, &coeff, c.degree, false).map_err(|e| classify(&task, KacError::Cohomology(e)))?;
        let mut t = TaskReport::new(task);
        t.group = Some(GroupJson::from(h.group()));
        t.meta.insert("model".into(), h.model().into());
        t.ms = start.elapsed().as_millis() as u64;
        Ok(vec![t])
    }

    fn oracle(&self) -> Result<(&'static str, FpAbGroup), Failure> {
        let spec = &self.problem.spec;
        let mp = &self.problem.pair;
        let odd_v = matches!(spec.right, ActionSpec::Trivial) && mp.g().is_abelian() && mp.g().order() % 2 == 1;
        let name = match spec.compute.oracle.as_str() {
            "auto" => match spec.left {
                ActionSpec::Swap => "swap",
                ActionSpec::MatrixA { .. } => "matrix_A",
                _ if odd_v => "odd_v",
                _ => return Err(Failure::Invalid("oracle-compare: no closed form applies to this pair; set compute.oracle".into())),
            },
            "swap" => "swap",
            "matrix_A" => "matrix_A",
            "odd_v" => "odd_v",
            _ => "cyclic_odd_v",
        };
        let fail = |e| classify("oracle-compare", e);
        let value = match name {
            "swap" => {
                let h = square_root(&spec.g).ok_or_else(|| Failure::Invalid("oracle-compare: the swap oracle needs G given as H x H".into()))?;
                if !matches!(spec.left, ActionSpec::Swap) || !matches!(spec.right, ActionSpec::Trivial) {
                    return Err(Failure::Invalid("oracle-compare: the swap oracle needs the swap action".into()));
                }
                let h = build_group(&h).map_err(|e| Failure::Invalid(format!("oracle-compare: {e}")))?;
                swap_opext(&h).map_err(fail)?
            }
            "matrix_A" => match spec.left {
                ActionSpec::MatrixA { modulus, a, b, c } if matches!(spec.right, ActionSpec::Trivial) => matrix_a_opext(modulus, a, b, c).map_err(fail)?,
                _ => return Err(Failure::Invalid("oracle-compare: the matrix_A oracle needs a matrix_A action".into())),
            },
            _ if !mp.is_left_trivial() => return Err(Failure::Invalid("oracle-compare: the odd V oracles need a trivial right action".into())),
            "odd_v" => odd_v_opext(mp.f(), mp.g(), |s, x| mp.tri_r(s, x)).map_err(fail)?,
            _ => {
                let m = match spec.f {
                    GroupSpec::Cyclic(m) => m,
                    _ => return Err(Failure::Invalid("oracle-compare: cyclic_odd_v needs F given as cyclic".into())),
                };
                cyclic_odd_v(m, mp.g(), |s| mp.tri_r(s, 1)).map_err(fail)?
            }
        };
        Ok((name, value))
    }

    fn oracle_compare(&self) -> Result<Vec<TaskReport>, Failure> {
        let start = Instant::now();
        let (name, oracle) = self.oracle()?;
        let route = &self.problem.spec.compute.routes[0];
        let direct = opext(&self.problem.pair, route_of(route), &self.options(false)).map_err(|e| classify("oracle-compare", e))?.value;
        let mut t = TaskReport::new("oracle-compare");
        t.group = Some(GroupJson::from(&direct));
        t.meta.insert("oracle".into(), name.into());
        t.meta.insert("route".into(), route.clone());
        t.certify("direct_equals_oracle", direct == oracle);
        t.notes.push(if direct == oracle { format!("direct = oracle = {direct}") } else { format!("direct = {direct}, oracle = {oracle}: mismatch") });
        t.ms = start.elapsed().as_millis() as u64;
        Ok(vec![t])
    }
}

pub fn run(task: Task, problem: &Problem, ov: &Overrides) -> Result<Vec<TaskReport>, Failure> {
    let r = Run { problem, ov };
    let mut tasks = match task {
        Task::Validate => r.validate(),
        Task::Opext => {
            r.cap("opext", r.max_sigma(MAX_SIGMA))?;
            r.opext()
        }
        Task::FiveTerm => r.five_term(),
        Task::KacSeq => r.kac_seq(),
        Task::Cohomology => r.cohomology(),
        Task::OracleCompare => {
            r.cap("oracle-compare", r.max_sigma(MAX_SIGMA))?;
            r.oracle_compare()
        }
    }?;
    if ov.fixed_timing {
        for t in &mut tasks {
            t.ms = 0;
        }
    }
    Ok(tasks)
}
