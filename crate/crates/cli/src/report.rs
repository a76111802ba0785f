use std::collections::BTreeMap;
use std::fmt::Write as _;

use opextkit::exactlin::FpAbGroup;
use opextkit::kac::CocyclePair;
use serde::Serialize;

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct GroupJson {
    pub free_rank: usize,
    pub invariant_factors: Vec<i64>,
}

impl From<&FpAbGroup> for GroupJson {
    fn from(g: &FpAbGroup) -> Self {
        GroupJson { free_rank: g.free_rank(), invariant_factors: g.invariants().to_vec() }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct TermJson {
    pub name: String,
    pub group: Option<GroupJson>,
}

/// One cocycle pair, as numerators over a common denominator in the Kac complex's coordinates.
#[derive(Serialize, Debug, Clone)]
pub struct RepJson {
    pub generator: usize,
    pub order: i64,
    pub den: i64,
    pub sigma: Vec<i64>,
    pub tau: Vec<i64>,
}

impl RepJson {
    pub fn new(generator: usize, order: i64, pair: &CocyclePair) -> Self {
        let den = num_lcm(pair.sigma_vec().den(), pair.tau_vec().den());
        RepJson { generator, order, den, sigma: pair.sigma_vec().numerators_over(den), tau: pair.tau_vec().numerators_over(den) }
    }
}

fn num_lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

#[derive(Serialize, Debug, Clone)]
pub struct TaskReport {
    pub name: String,
    pub status: String,
    pub group: Option<GroupJson>,
    pub certificates: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<RepJson>>,
    pub ms: u64,
    /// Extra lines for the table view.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl TaskReport {
    pub fn new(name: impl Into<String>) -> Self {
        TaskReport {
            name: name.into(),
            status: "ok".into(),
            group: None,
            certificates: BTreeMap::new(),
            terms: None,
            meta: BTreeMap::new(),
            representatives: None,
            ms: 0,
            notes: vec![],
        }
    }

    pub fn certify(&mut self, name: impl Into<String>, holds: bool) {
        self.certificates.insert(name.into(), if holds { "pass" } else { "fail" }.into());
        if !holds {
            self.status = "fail".into();
        }
    }

    pub fn failed(&self) -> bool {
        self.status != "ok"
    }
}

#[derive(Serialize, Debug, Clone, Default)]
pub struct Report {
    pub tasks: Vec<TaskReport>,
}

pub fn notation(g: &Option<GroupJson>) -> String {
    match g {
        None => "-".into(),
        Some(g) => FpAbGroup::new(g.free_rank, g.invariant_factors.clone()).notation(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let w = self.tasks.iter().map(|t| t.name.len()).max().unwrap_or(4).max(4);
        let gw = self.tasks.iter().map(|t| notation(&t.group).len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        writeln!(out, "{:<w$}  {:<6}  {:<gw$}  {:>6}", "task", "status", "group", "ms").unwrap();
        for t in &self.tasks {
            writeln!(out, "{:<w$}  {:<6}  {:<gw$}  {:>6}", t.name, t.status, notation(&t.group), t.ms).unwrap();
            for term in t.terms.iter().flatten() {
                writeln!(out, "    {:<24} {}", term.name, notation(&term.group)).unwrap();
            }
            for (k, v) in &t.meta {
                writeln!(out, "    {k}: {v}").unwrap();
            }
            for (k, v) in &t.certificates {
                writeln!(out, "    [{v}] {k}").unwrap();
            }
            for n in &t.notes {
                writeln!(out, "    {n}").unwrap();
            }
        }
        out
    }
}
