//! The problem description format.
//!
//! ```toml
//! [group.F]
//! kind = "cyclic"
//! order = 2
//!
//! [group.G]
//! kind = "abelian"
//! invariants = [3, 3]
//!
//! [action.left]          # s ◁ x, G × F → G
//! kind = "swap"
//!
//! [compute]
//! routes = ["kac_total", "relative"]
//! ```

use std::fmt;

use toml::{Table, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse { line: usize, reason: String },
    Validation { field: String, reason: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse { line, reason } => write!(f, "parse error at line {line}: {reason}"),
            ConfigError::Validation { field, reason } => write!(f, "invalid `{field}`: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    MultTable(Vec<Vec<usize>>),
    Permutations { generators: Vec<Vec<usize>>, degree: usize },
    DirectProduct(Vec<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ActionSpec {
    Trivial,
    /// `table[s][x]` for `s ∈ G`, `x ∈ F`.
    PermutationTable(Vec<Vec<usize>>),
    /// One row-major matrix per generator of the acting group.
    MatricesMod { modulus: i64, matrices: Vec<Vec<i64>> },
    Swap,
    /// `A = [[a, b], [c, −a]]` on `(ℤ/n)²`.
    MatrixA { modulus: i64, a: i64, b: i64, c: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    F,
    G,
    Sigma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compute {
    pub routes: Vec<String>,
    pub resolution: Option<String>,
    pub max_sigma: Option<usize>,
    pub representatives: bool,
    pub degree: usize,
    pub target: Target,
    pub coefficients: String,
    pub depth: usize,
    pub h4_limit: Option<usize>,
    pub oracle: String,
}

impl Default for Compute {
    fn default() -> Self {
        Compute {
            routes: vec!["kac_total".into(), "relative".into()],
            resolution: None,
            max_sigma: None,
            representatives: false,
            degree: 2,
            target: Target::Sigma,
            coefficients: "circle".into(),
            depth: 3,
            h4_limit: None,
            oracle: "auto".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub f: GroupSpec,
    pub g: GroupSpec,
    /// `◁`
    pub left: ActionSpec,
    /// `▷`
    pub right: ActionSpec,
    pub compute: Compute,
}

const GROUP_KEYS: &[(&str, &[&str])] = &[
    ("cyclic", &["order"]),
    ("abelian", &["invariants"]),
    ("mult_table", &["table"]),
    ("permutations", &["generators", "degree"]),
    ("direct_product", &["factors"]),
];

const ACTION_KEYS: &[(&str, &[&str])] = &[
    ("trivial", &[]),
    ("permutation_table", &["table"]),
    ("matrices_mod", &["modulus", "matrices"]),
    ("swap", &[]),
    ("matrix_A", &["modulus", "matrix"]),
];

const COMPUTE_KEYS: &[&str] =
    &["routes", "resolution", "max_sigma", "representatives", "degree", "target", "coefficients", "depth", "h4_limit", "oracle"];

const ROUTES: &[&str] = &["kac_total", "relative", "five_term_reconstruction"];

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    /// First line that assigns `key`, or the line of the section header.
    fn line_of(&self, section: &str, key: &str) -> usize {
        let header = format!("[{section}]");
        let mut in_section = section.is_empty();
        let mut header_line = 1;
        for (i, raw) in self.text.lines().enumerate() {
            let l = raw.trim();
            if l.starts_with('[') {
                in_section = l.starts_with(&header);
                if in_section {
                    header_line = i + 1;
                }
                continue;
            }
            if in_section {
                if let Some((k, _)) = l.split_once('=') {
                    if k.trim().trim_matches('"') == key {
                        return i + 1;
                    }
                }
            }
        }
        header_line
    }

    fn check_keys(&self, section: &str, table: &Table, allowed: &[&str]) -> Result<(), ConfigError> {
        for key in table.keys() {
            if !allowed.contains(&key.as_str()) {
                let mut reason = format!("unknown key `{key}` in [{section}]");
                let best = allowed.iter().map(|a| (strsim::levenshtein(key, a), *a)).min();
                match best {
                    Some((d, a)) if d <= 2 || d * 2 <= key.len() => reason.push_str(&format!("; did you mean `{a}`?")),
                    _ if !allowed.is_empty() => reason.push_str(&format!("; expected one of {}", allowed.join(", "))),
                    _ => {}
                }
                return Err(ConfigError::Parse { line: self.line_of(section, key), reason });
            }
        }
        Ok(())
    }
}

fn invalid(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Validation { field: field.into(), reason: reason.into() }
}

fn get<'a>(t: &'a Table, section: &str, key: &str) -> Result<&'a Value, ConfigError> {
    t.get(key).ok_or_else(|| invalid(&format!("{section}.{key}"), "missing"))
}

fn int(v: &Value, field: &str) -> Result<i64, ConfigError> {
    v.as_integer().ok_or_else(|| invalid(field, "expected an integer"))
}

fn uint(v: &Value, field: &str) -> Result<usize, ConfigError> {
    let n = int(v, field)?;
    usize::try_from(n).map_err(|_| invalid(field, "expected a nonnegative integer"))
}

fn ints(v: &Value, field: &str) -> Result<Vec<i64>, ConfigError> {
    v.as_array().ok_or_else(|| invalid(field, "expected a list of integers"))?.iter().map(|x| int(x, field)).collect()
}

fn uints(v: &Value, field: &str) -> Result<Vec<usize>, ConfigError> {
    v.as_array().ok_or_else(|| invalid(field, "expected a list of integers"))?.iter().map(|x| uint(x, field)).collect()
}

fn rows<T>(v: &Value, field: &str, each: impl Fn(&Value, &str) -> Result<T, ConfigError>) -> Result<Vec<T>, ConfigError> {
    v.as_array().ok_or_else(|| invalid(field, "expected a list of lists"))?.iter().map(|r| each(r, field)).collect()
}

fn kind<'a>(t: &'a Table, section: &str) -> Result<&'a str, ConfigError> {
    get(t, section, "kind")?.as_str().ok_or_else(|| invalid(&format!("{section}.kind"), "expected a string"))
}

fn lookup<'a>(ctx: &Ctx, section: &str, kinds: &[(&'a str, &'a [&'a str])], k: &str) -> Result<&'a [&'a str], ConfigError> {
    kinds.iter().find(|(n, _)| *n == k).map(|(_, keys)| *keys).ok_or_else(|| {
        let names: Vec<&str> = kinds.iter().map(|(n, _)| *n).collect();
        let near = names.iter().map(|n| (strsim::levenshtein(k, n), *n)).min().filter(|(d, _)| *d <= 2);
        let hint = match near {
            Some((_, n)) => format!("; did you mean `{n}`?"),
            None => format!("; expected one of {}", names.join(", ")),
        };
        ConfigError::Parse { line: ctx.line_of(section, "kind"), reason: format!("unknown kind `{k}` in [{section}]{hint}") }
    })
}

fn group_spec(ctx: &Ctx, section: &str, t: &Table) -> Result<GroupSpec, ConfigError> {
    let k = kind(t, section)?;
    let mut allowed = vec!["kind"];
    allowed.extend(lookup(ctx, section, GROUP_KEYS, k)?);
    ctx.check_keys(section, t, &allowed)?;
    let field = |key: &str| format!("{section}.{key}");
    Ok(match k {
        "cyclic" => {
            let n = uint(get(t, section, "order")?, &field("order"))?;
            if n == 0 {
                return Err(invalid(&field("order"), "must be positive"));
            }
            GroupSpec::Cyclic(n)
        }
        "abelian" => {
            let inv = uints(get(t, section, "invariants")?, &field("invariants"))?;
            if inv.contains(&0) {
                return Err(invalid(&field("invariants"), "entries must be positive"));
            }
            GroupSpec::Abelian(inv)
        }
        "mult_table" => GroupSpec::MultTable(rows(get(t, section, "table")?, &field("table"), uints)?),
        "permutations" => GroupSpec::Permutations {
            generators: rows(get(t, section, "generators")?, &field("generators"), uints)?,
            degree: uint(get(t, section, "degree")?, &field("degree"))?,
        },
        _ => {
            let factors = get(t, section, "factors")?.as_array().ok_or_else(|| invalid(&field("factors"), "expected a list of tables"))?;
            let specs = factors
                .iter()
                .map(|v| v.as_table().ok_or_else(|| invalid(&field("factors"), "expected inline tables")).and_then(|ft| group_spec(ctx, section, ft)))
                .collect::<Result<Vec<_>, _>>()?;
            GroupSpec::DirectProduct(specs)
        }
    })
}

fn action_spec(ctx: &Ctx, section: &str, t: &Table) -> Result<ActionSpec, ConfigError> {
    let k = kind(t, section)?;
    let mut allowed = vec!["kind"];
    allowed.extend(lookup(ctx, section, ACTION_KEYS, k)?);
    ctx.check_keys(section, t, &allowed)?;
    let field = |key: &str| format!("{section}.{key}");
    Ok(match k {
        "trivial" => ActionSpec::Trivial,
        "swap" => ActionSpec::Swap,
        "permutation_table" => ActionSpec::PermutationTable(rows(get(t, section, "table")?, &field("table"), uints)?),
        "matrices_mod" => {
            let modulus = int(get(t, section, "modulus")?, &field("modulus"))?;
            if modulus < 2 {
                return Err(invalid(&field("modulus"), "must be at least 2"));
            }
            ActionSpec::MatricesMod { modulus, matrices: rows(get(t, section, "matrices")?, &field("matrices"), ints)? }
        }
        _ => {
            let n = int(get(t, section, "modulus")?, &field("modulus"))?;
            if n < 2 {
                return Err(invalid(&field("modulus"), "must be at least 2"));
            }
            let m = ints(get(t, section, "matrix")?, &field("matrix"))?;
            if m.len() != 4 {
                return Err(invalid(&field("matrix"), "expected 4 entries, row-major"));
            }
            let (a, b, c, d) = (m[0], m[1], m[2], m[3]);
            if (a + d).rem_euclid(n) != 0 {
                return Err(invalid(&field("matrix"), format!("trace {} is not 0 mod {n}", a + d)));
            }
            let det = a * d - b * c;
            if (det + 1).rem_euclid(n) != 0 {
                return Err(invalid(&field("matrix"), format!("Det(A) = {det} is not -1 mod {n}")));
            }
            ActionSpec::MatrixA { modulus: n, a, b, c }
        }
    })
}

fn compute(ctx: &Ctx, t: &Table) -> Result<Compute, ConfigError> {
    ctx.check_keys("compute", t, COMPUTE_KEYS)?;
    let mut c = Compute::default();
    let s = |key: &str| -> Result<Option<String>, ConfigError> {
        t.get(key).map(|v| v.as_str().map(str::to_string).ok_or_else(|| invalid(&format!("compute.{key}"), "expected a string"))).transpose()
    };
    let one_of = |key: &str, v: &str, options: &[&str]| -> Result<(), ConfigError> {
        if options.contains(&v) {
            Ok(())
        } else {
            Err(invalid(&format!("compute.{key}"), format!("`{v}` is not one of {}", options.join(", "))))
        }
    };
    if let Some(v) = t.get("routes") {
        let list = v.as_array().ok_or_else(|| invalid("compute.routes", "expected a list of route names"))?;
        c.routes = list
            .iter()
            .map(|r| {
                let r = r.as_str().ok_or_else(|| invalid("compute.routes", "expected strings"))?;
                one_of("routes", r, ROUTES)?;
                Ok(r.to_string())
            })
            .collect::<Result<_, ConfigError>>()?;
        if c.routes.is_empty() {
            return Err(invalid("compute.routes", "empty"));
        }
    }
    if let Some(r) = s("resolution")? {
        one_of("resolution", &r, &["bar", "cyclic-tensor", "auto"])?;
        c.resolution = Some(r);
    }
    if let Some(v) = t.get("max_sigma") {
        c.max_sigma = Some(uint(v, "compute.max_sigma")?);
    }
    if let Some(v) = t.get("representatives") {
        c.representatives = v.as_bool().ok_or_else(|| invalid("compute.representatives", "expected true or false"))?;
    }
    if let Some(v) = t.get("degree") {
        c.degree = uint(v, "compute.degree")?;
    }
    if let Some(v) = t.get("depth") {
        c.depth = uint(v, "compute.depth")?;
        if c.depth == 0 {
            return Err(invalid("compute.depth", "must be at least 1"));
        }
    }
    if let Some(v) = t.get("h4_limit") {
        c.h4_limit = Some(uint(v, "compute.h4_limit")?);
    }
    if let Some(v) = s("target")? {
        c.target = match v.as_str() {
            "F" => Target::F,
            "G" => Target::G,
            "Sigma" => Target::Sigma,
            _ => return Err(invalid("compute.target", format!("`{v}` is not one of F, G, Sigma"))),
        };
    }
    if let Some(v) = s("coefficients")? {
        one_of("coefficients", &v, &["integers", "circle"])?;
        c.coefficients = v;
    }
    if let Some(v) = s("oracle")? {
        one_of("oracle", &v, &["auto", "swap", "matrix_A", "odd_v", "cyclic_odd_v"])?;
        c.oracle = v;
    }
    Ok(c)
}

fn sub_table<'a>(ctx: &Ctx, t: &'a Table, key: &str, section: &str) -> Result<Option<&'a Table>, ConfigError> {
    match t.get(key) {
        None => Ok(None),
        Some(v) => v.as_table().map(Some).ok_or_else(|| ConfigError::Parse { line: ctx.line_of("", key), reason: format!("`{section}` must be a section") }),
    }
}

pub fn parse(text: &str) -> Result<ProblemSpec, ConfigError> {
    let root: Table = text.parse().map_err(|e: toml::de::Error| {
        let line = e.span().map_or(1, |s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        ConfigError::Parse { line, reason: e.message().to_string() }
    })?;
    let ctx = Ctx { text };
    ctx.check_keys("", &root, &["group", "action", "compute"])?;
    let groups = sub_table(&ctx, &root, "group", "group")?.ok_or_else(|| invalid("group", "missing [group.F] and [group.G]"))?;
    ctx.check_keys("group", groups, &["F", "G"])?;
    let group = |name: &str| -> Result<GroupSpec, ConfigError> {
        let section = format!("group.{name}");
        let t = sub_table(&ctx, groups, name, &section)?.ok_or_else(|| invalid(&section, "missing"))?;
        group_spec(&ctx, &section, t)
    };
    let (f, g) = (group("F")?, group("G")?);
    let (mut left, mut right) = (ActionSpec::Trivial, ActionSpec::Trivial);
    if let Some(actions) = sub_table(&ctx, &root, "action", "action")? {
        ctx.check_keys("action", actions, &["left", "right"])?;
        if let Some(t) = sub_table(&ctx, actions, "left", "action.left")? {
            left = action_spec(&ctx, "action.left", t)?;
        }
        if let Some(t) = sub_table(&ctx, actions, "right", "action.right")? {
            right = action_spec(&ctx, "action.right", t)?;
        }
    }
    let compute = match sub_table(&ctx, &root, "compute", "compute")? {
        Some(t) => compute(&ctx, t)?,
        None => Compute::default(),
    };
    Ok(ProblemSpec { f, g, left, right, compute })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[group.F]\nkind = \"cyclic\"\norder = 2\n\n[group.G]\nkind = \"abelian\"\ninvariants = [3, 3]\n\n[action.left]\nkind = \"swap\"\n";

    #[test]
    fn minimal_config() {
        let spec = parse(MINIMAL).unwrap();
        assert_eq!(spec.f, GroupSpec::Cyclic(2));
        assert_eq!(spec.g, GroupSpec::Abelian(vec![3, 3]));
        assert_eq!(spec.left, ActionSpec::Swap);
        assert_eq!(spec.right, ActionSpec::Trivial);
        assert_eq!(spec.compute, Compute::default());
    }

    #[test]
    fn unknown_key_gets_a_suggestion() {
        let text = "[group.F]\nkind = \"cyclic\"\norder = 2\n[group.G]\nkind = \"abelian\"\ninvariants = [3, 3]\n[action.left]\nkind = \"matrix_A\"\nmodluus = 3\nmatrix = [0, 1, 1, 0]\n";
        match parse(text) {
            Err(ConfigError::Parse { line, reason }) => {
                assert_eq!(line, 9);
                assert!(reason.contains("did you mean `modulus`?"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn det_must_be_minus_one() {
        let text = "[group.F]\nkind = \"cyclic\"\norder = 2\n[group.G]\nkind = \"abelian\"\ninvariants = [3, 3]\n[action.left]\nkind = \"matrix_A\"\nmodulus = 3\nmatrix = [1, 0, 0, -1]\n";
        assert!(parse(text).is_ok());
        let bad = text.replace("[1, 0, 0, -1]", "[1, 1, 1, -1]");
        assert!(matches!(parse(&bad), Err(ConfigError::Validation { ref field, .. }) if field == "action.left.matrix"));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let text = "[group.F]\nkind = \"cyclic\"\norder = = 2\n";
        assert!(matches!(parse(text), Err(ConfigError::Parse { line: 3, .. })));
    }

    #[test]
    fn compute_values_are_checked() {
        let text = format!("{MINIMAL}[compute]\nroutes = [\"kac\"]\n");
        assert!(matches!(parse(&text), Err(ConfigError::Validation { .. })));
        let text = format!("{MINIMAL}[compute]\nrutes = [\"kac_total\"]\n");
        assert!(matches!(parse(&text), Err(ConfigError::Parse { line: 12, ref reason }) if reason.contains("`routes`")));
        let text = format!("{MINIMAL}[compute]\ntarget = \"G\"\ndegree = 3\n");
        let c = parse(&text).unwrap().compute;
        assert_eq!((c.target, c.degree), (Target::G, 3));
    }

    #[test]
    fn nested_direct_product() {
        let text = "[group.F]\nkind = \"cyclic\"\norder = 2\n[group.G]\nkind = \"direct_product\"\nfactors = [{ kind = \"cyclic\", order = 3 }, { kind = \"abelian\", invariants = [2] }]\n";
        assert_eq!(parse(text).unwrap().g, GroupSpec::DirectProduct(vec![GroupSpec::Cyclic(3), GroupSpec::Abelian(vec![2])]));
    }
}
