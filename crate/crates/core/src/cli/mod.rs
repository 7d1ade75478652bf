//! Command-line front end with text and JSON reports.

mod suites;

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    antidiagonal_scan, burnside_dim, classify_rho_block, enumerate_solutions_mod_p,
    epsilon4_row_readings, factor_check, generate_constraints, generic_blocks, invariant_check,
    reducibility_criterion, verify_relations, Check, ConstraintSystem, Mode, Preset, Substitution,
    TargetMap,
};
use crate::error::{Error, Result};
use crate::exactnum::parse_gaussian;
use crate::presentations::{
    abelianize, forbidden_relations, free_reduce, make_spec, normal_form_n2, parse_word,
    perm_image, phi, relations, Flavor, GroupSpec, PermMap, Relation, Word,
};
use crate::representations::{build_local_rep, Family, Params};
use crate::MultiPoly;

pub use suites::{run_suite, SuiteReport, SUITES};

#[derive(Parser, Debug)]
#[command(
    name = "uvbraid",
    version,
    about = "Exact checks for local representations of universal virtual and welded braid groups"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// uv, uw, vb, wb, vt, wt, vsg, wsg, mvb or mwb
    #[arg(long, default_value = "uv")]
    group: Flavor,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of crossing types
    #[arg(long, conflicts_with = "k")]
    c: Option<usize>,
    /// Number of crossing types, for the multi flavors
    #[arg(long)]
    k: Option<usize>,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec> {
        let c = self.c.or(self.k).or(self.group.fixed_c()).unwrap_or(1);
        make_spec(self.group, self.n, c)
    }
}

#[derive(Args, Debug, Clone)]
struct ModeArgs {
    /// Decide every relation by full expansion (default)
    #[arg(long, conflicts_with = "sampled")]
    symbolic: bool,
    /// Evaluate at seeded random points instead
    #[arg(long)]
    sampled: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample points for --sampled
    #[arg(long, default_value_t = 3)]
    points: usize,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        if self.sampled {
            Mode::Sampled {
                seed: self.seed,
                points: self.points.max(1),
            }
        } else {
            Mode::Symbolic
        }
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check the relations of a group under a representation family
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        family: Family,
        /// Parameter values `name=value,...`; omitted means symbolic
        #[arg(long)]
        params: Option<String>,
        #[command(flatten)]
        mode: ModeArgs,
        /// Relation tags to check, separated by commas; default all
        #[arg(long)]
        relations: Option<String>,
        /// Check the forbidden relations instead
        #[arg(long)]
        forbidden: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate the polynomial constraints on generic blocks
    Constraints {
        /// 2local-uv, 2local-uw or 3local-uv
        #[arg(long, conflicts_with_all = ["block", "relations"])]
        preset: Option<String>,
        #[command(flatten)]
        group: GroupArgs,
        /// Block size, 2 or 3
        #[arg(long, default_value_t = 2)]
        block: usize,
        /// Relation tags separated by commas; default all
        #[arg(long)]
        relations: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate solutions of a constraint preset over F_p
    Enumerate {
        #[arg(long, default_value = "2local-uv")]
        preset: String,
        #[arg(long = "mod")]
        modulus: u64,
        /// Only the equations in the rho entries
        #[arg(long)]
        rho_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide reducibility at given parameter values
    Irreducibility {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        family: Family,
        #[arg(long)]
        params: String,
        #[arg(long)]
        json: bool,
    },
    /// Images under piK, piP or phi
    Homomorphism {
        #[command(flatten)]
        group: GroupArgs,
        /// piK, piP or phi
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1)]
        t0: usize,
        /// Word to map; without it every relation is checked
        #[arg(long)]
        word: Option<String>,
        /// Check the forbidden relations instead of the defining ones
        #[arg(long)]
        forbidden: bool,
        #[arg(long)]
        json: bool,
    },
    /// Parse, reduce and map a word
    Word {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a bundled check suite, or list them
    Suite {
        name: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct GroupJson {
    flavor: &'static str,
    n: usize,
    c: usize,
}

/// Machine-readable report; `lines` is the text rendering.
#[derive(Serialize)]
struct Report {
    command: String,
    group: Option<GroupJson>,
    family: Option<String>,
    params: Option<BTreeMap<String, String>>,
    mode: Option<&'static str>,
    seed: Option<u64>,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip)]
    lines: Vec<String>,
}

impl Report {
    fn new(command: String) -> Self {
        Report {
            command,
            group: None,
            family: None,
            params: None,
            mode: None,
            seed: None,
            checks: Vec::new(),
            result: None,
            lines: Vec::new(),
        }
    }

    fn group(mut self, spec: &GroupSpec) -> Self {
        self.group = Some(GroupJson {
            flavor: spec.flavor.name(),
            n: spec.n,
            c: spec.c,
        });
        self
    }

    fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            match (&c.details, c.passed()) {
                (Some(d), false) => out.push_str(&format!("{} {}  {}\n", status, c.tag, d)),
                _ => out.push_str(&format!("{} {}\n", status, c.tag)),
            }
        }
        if !self.checks.is_empty() {
            let passed = self.checks.iter().filter(|c| c.passed()).count();
            out.push_str(&format!("{}/{} checks pass\n", passed, self.checks.len()));
        }
        out
    }
}

fn quote(arg: &str) -> String {
    if arg.is_empty() || arg.contains(|c: char| c.is_whitespace() || c == '"') {
        format!("{:?}", arg)
    } else {
        arg.to_string()
    }
}

/// Splits on commas outside brackets, so tags like `CR[i=1,j=3,t=1,l=2]`
/// stay whole.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out.retain(|t| !t.is_empty());
    out
}

fn parse_params(s: &str) -> Result<Params> {
    let mut map = BTreeMap::new();
    for pair in split_top_level(s) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("parameter `{}` is not name=value", pair)))?;
        map.insert(k.trim().to_string(), parse_gaussian(v.trim())?);
    }
    Ok(Params::Assign(map))
}

fn rendered_params(params: &Params) -> Option<BTreeMap<String, String>> {
    match params {
        Params::Symbolic => None,
        Params::Assign(m) => Some(m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()),
    }
}

fn select_relations(
    all: Vec<Relation>,
    tags: &Option<String>,
    spec: &GroupSpec,
) -> Result<Vec<Relation>> {
    let Some(tags) = tags else {
        return Ok(all);
    };
    split_top_level(tags)
        .into_iter()
        .map(|tag| {
            all.iter()
                .find(|r| r.tag == tag)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("{} has no relation {}", spec, tag)))
        })
        .collect()
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let command = args
        .iter()
        .skip(1)
        .map(|a| quote(&a.to_string_lossy()))
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.verb, command) {
        Ok((report, json)) => Outcome {
            code: if report.all_pass() { 0 } else { 1 },
            stdout: report.render(json),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {}\n", e),
        },
    }
}

fn execute(verb: Verb, command: String) -> Result<(Report, bool)> {
    let report = Report::new(command);
    match verb {
        Verb::Verify {
            group,
            family,
            params,
            mode,
            relations: tags,
            forbidden,
            json,
        } => verify(
            report,
            &group,
            family,
            params.as_deref(),
            &mode,
            &tags,
            forbidden,
        )
        .map(|r| (r, json)),
        Verb::Constraints {
            preset,
            group,
            block,
            relations: tags,
            json,
        } => constraints(report, preset.as_deref(), &group, block, &tags).map(|r| (r, json)),
        Verb::Enumerate {
            preset,
            modulus,
            rho_only,
            json,
        } => enumerate(report, &preset, modulus, rho_only).map(|r| (r, json)),
        Verb::Irreducibility {
            group,
            family,
            params,
            json,
        } => irreducibility(report, &group, family, &params).map(|r| (r, json)),
        Verb::Homomorphism {
            group,
            map,
            t0,
            word,
            forbidden,
            json,
        } => homomorphism(report, &group, &map, t0, word.as_deref(), forbidden).map(|r| (r, json)),
        Verb::Word { group, word, json } => word_info(report, &group, &word).map(|r| (r, json)),
        Verb::Suite { name, json } => suite(report, name.as_deref()).map(|r| (r, json)),
    }
}

fn verify(
    mut report: Report,
    group: &GroupArgs,
    family: Family,
    params: Option<&str>,
    mode: &ModeArgs,
    tags: &Option<String>,
    forbidden: bool,
) -> Result<Report> {
    let spec = group.spec()?;
    let params = params
        .map(parse_params)
        .transpose()?
        .unwrap_or(Params::Symbolic);
    let rep = build_local_rep(family, &spec, &params)?;
    let all = if forbidden {
        forbidden_relations(spec.n, spec.c)
    } else {
        relations(&spec)
    };
    let rels = select_relations(all, tags, &spec)?;
    let mode = mode.mode();
    let result = verify_relations(&rep, &rels, mode)?;
    report = report.group(&spec);
    report.family = Some(family.to_string());
    report.params = rendered_params(&params);
    report.mode = Some(mode.name());
    report.seed = mode.seed();
    report
        .lines
        .push(format!("verify {} on {} [{}]", family, spec, mode.name()));
    if matches!(mode, Mode::Sampled { .. }) {
        report
            .lines
            .push("sampled checks can only refute; use --symbolic for a decision".into());
    }
    report.checks = result.checks;
    Ok(report)
}

fn system_json(sys: &ConstraintSystem) -> Value {
    serde_json::to_value(sys).unwrap_or_default()
}

fn system_lines(sys: &ConstraintSystem) -> Vec<String> {
    let mut lines = vec![format!(
        "{} equations in {} unknowns: {}",
        sys.len(),
        sys.unknowns.len(),
        sys.unknowns.join(", ")
    )];
    for (k, e) in sys.equations.iter().enumerate() {
        lines.push(format!(
            "({}) {} = 0   [{}]",
            k + 1,
            e.poly.render(),
            e.tags.join(", ")
        ));
    }
    lines
}

fn constraints(
    mut report: Report,
    preset: Option<&str>,
    group: &GroupArgs,
    block: usize,
    tags: &Option<String>,
) -> Result<Report> {
    let (spec, sys) = match preset {
        Some(name) => {
            let p = Preset::from_name(name)?;
            (p.spec(), p.generate()?)
        }
        None => {
            let spec = group.spec()?;
            let tags: Vec<String> = match tags {
                Some(t) => split_top_level(t),
                None => relations(&spec).into_iter().map(|r| r.tag).collect(),
            };
            let sys = generate_constraints(block, &spec, &tags, &Substitution::new())?;
            (spec, sys)
        }
    };
    report = report.group(&spec);
    report.lines = system_lines(&sys);
    report.result = Some(system_json(&sys));
    Ok(report)
}

/// Nonvanishing conditions for a scan: block determinants and the
/// denominators of substituted entries, kept when all their variables are
/// unknowns of the system.
fn nonvanishing(preset: Preset, sys: &ConstraintSystem) -> Result<Vec<MultiPoly>> {
    let (_, rho, sigmas) =
        generic_blocks(preset.block_size(), preset.spec().c, &preset.substitution());
    let mut out = Vec::new();
    for b in std::iter::once(&rho).chain(&sigmas) {
        let det = b.det_fraction_free()?;
        out.push(det.numer().clone());
        out.push(det.denom().clone());
        for x in b.entries() {
            out.push(x.denom().clone());
        }
    }
    out.retain(|p| !p.is_constant() && p.used_vars().iter().all(|v| sys.unknowns.contains(v)));
    Ok(out)
}

fn enumerate(mut report: Report, preset: &str, p: u64, rho_only: bool) -> Result<Report> {
    let preset = Preset::from_name(preset)?;
    let full = preset.generate()?;
    let rho_names = ["r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9"];
    let rho_sys = full.restricted_to(&rho_names);
    report = report.group(&preset.spec());
    let sys = if rho_only { &rho_sys } else { &full };
    let sols = enumerate_solutions_mod_p(sys, p, &nonvanishing(preset, sys)?)?;
    report.lines.push(format!(
        "{} solutions mod {} in {} unknowns ({})",
        sols.solutions.len(),
        p,
        sols.unknowns.len(),
        sols.unknowns.join(", ")
    ));
    let mut result =
        json!({ "p": p, "unknowns": sols.unknowns, "solutions": sols.solutions.len() });
    if preset == Preset::TwoLocalVirtual {
        let rho = if rho_only {
            sols.clone()
        } else {
            enumerate_solutions_mod_p(&rho_sys, p, &nonvanishing(preset, &rho_sys)?)?
        };
        let buckets = rho.buckets(|s| classify_rho_block([s[0], s[1], s[2], s[3]], p).to_string());
        let pu = p as usize;
        let ok = rho.solutions.len() == pu
            && buckets.get("identity") == Some(&1)
            && buckets.get("antidiagonal") == Some(&(pu - 1));
        for (k, v) in &buckets {
            report.lines.push(format!("rho {}: {}", k, v));
        }
        result["rho_buckets"] = json!(buckets);
        report
            .checks
            .push(Check::new(format!("rho solutions mod {}", p), ok));
        if !rho_only {
            let scan = antidiagonal_scan(&sols);
            report.lines.push(format!(
                "antidiagonal bucket: {} solutions, expected {} = (p-1) |GL2(F_p)|",
                scan.full_solutions, scan.expected
            ));
            report.checks.push(
                Check::new(
                    format!("antidiagonal sigma unconstrained mod {}", p),
                    scan.unconstrained(),
                )
                .with_details(serde_json::to_value(&scan).unwrap_or_default()),
            );
        }
    }
    report.result = Some(result);
    Ok(report)
}

fn irreducibility(
    mut report: Report,
    group: &GroupArgs,
    family: Family,
    params: &str,
) -> Result<Report> {
    let spec = group.spec()?;
    let params = parse_params(params)?;
    let rep = build_local_rep(family, &spec, &params)?;
    let mats = rep.constant_generators()?;
    let m = rep.degree;
    let dim = burnside_dim(&mats);
    report = report.group(&spec);
    report.family = Some(family.to_string());
    report.params = rendered_params(&params);
    let mut result = json!({ "algebra_dimension": dim, "full_dimension": m * m });
    match reducibility_criterion(&rep) {
        Ok(verdict) => {
            report.lines.push(verdict.to_string());
            report.checks.push(Check::new(
                "criterion agrees with algebra dimension",
                verdict.reducible == (dim < m * m),
            ));
            if let Some(w) = &verdict.witness {
                report.checks.push(Check::new(
                    format!("witness {} invariant", w),
                    invariant_check(&mats, &w.vector, w.side),
                ));
            }
            for n in &verdict.notes {
                report.lines.push(format!("note: {}", n));
            }
            result["verdict"] = serde_json::to_value(&verdict).unwrap_or_default();
        }
        Err(Error::Invalid(_)) => {
            report.lines.push(
                if dim < m * m {
                    "reducible"
                } else {
                    "irreducible"
                }
                .to_string(),
            );
        }
        Err(e) => return Err(e),
    }
    report
        .lines
        .push(format!("algebra dimension {} of {}", dim, m * m));
    if family == Family::Epsilon(4) {
        let readings = epsilon4_row_readings(&rep)?;
        for (label, ok) in &readings {
            report.lines.push(format!(
                "row {}: {}",
                label,
                if *ok { "invariant" } else { "not invariant" }
            ));
        }
        result["epsilon4_readings"] = json!(readings
            .iter()
            .map(|(k, v)| json!({ "vector": k, "invariant": v }))
            .collect::<Vec<_>>());
    }
    report.result = Some(result);
    Ok(report)
}

fn target_map(map: &str, t0: usize) -> Result<TargetMap> {
    match map.parse::<TargetMap>()? {
        TargetMap::Phi(_) => Ok(TargetMap::Phi(t0)),
        other => Ok(other),
    }
}

fn homomorphism(
    mut report: Report,
    group: &GroupArgs,
    map: &str,
    t0: usize,
    word: Option<&str>,
    forbidden: bool,
) -> Result<Report> {
    let spec = group.spec()?;
    let target = target_map(map, t0)?;
    report = report.group(&spec);
    match word {
        Some(text) => {
            let w = parse_word(text, &spec)?;
            let image = match target {
                TargetMap::PiK => perm_image(&w, PermMap::PiK, spec.n).to_string(),
                TargetMap::PiP => perm_image(&w, PermMap::PiP, spec.n).to_string(),
                TargetMap::Phi(t0) => phi(&w, t0, &spec)?.to_string(),
            };
            report.lines.push(image.clone());
            report.result =
                Some(json!({ "map": target.to_string(), "word": show(&w), "image": image }));
        }
        None => {
            let rels = if forbidden {
                forbidden_relations(spec.n, spec.c)
            } else {
                relations(&spec)
            };
            report.lines.push(format!(
                "{} on the {} relations of {}",
                target,
                if forbidden { "forbidden" } else { "defining" },
                spec
            ));
            for rel in &rels {
                let r = factor_check(rel, target, &spec)?;
                report.checks.push(
                    Check::new(r.tag.clone(), r.kills)
                        .with_details(json!({ "lhs": r.lhs, "rhs": r.rhs })),
                );
            }
        }
    }
    Ok(report)
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.to_string()
    }
}

fn word_info(mut report: Report, group: &GroupArgs, text: &str) -> Result<Report> {
    let spec = group.spec()?;
    let w = parse_word(text, &spec)?;
    let reduced = free_reduce(&w, &spec);
    let ab = abelianize(&w, &spec)?;
    let pi_p = perm_image(&w, PermMap::PiP, spec.n);
    let pi_k = perm_image(&w, PermMap::PiK, spec.n);
    let phis: Vec<String> = (1..=spec.c)
        .map(|t| phi(&w, t, &spec).map(|x| x.to_string()))
        .collect::<Result<_>>()?;
    report = report.group(&spec);
    report.lines.push(format!("word: {}", show(&w)));
    report.lines.push(format!("reduced: {}", show(&reduced)));
    report
        .lines
        .push(format!("inverse: {}", show(&w.inverse())));
    report.lines.push(format!("abelianization: {}", ab));
    report.lines.push(format!("piP: {}", pi_p));
    report.lines.push(format!("piK: {}", pi_k));
    for (t, x) in phis.iter().enumerate() {
        report.lines.push(format!("phi[t0={}]: {}", t + 1, x));
    }
    let mut result = json!({
        "word": show(&w),
        "reduced": show(&reduced),
        "inverse": show(&w.inverse()),
        "abelianization": ab.to_string(),
        "piP": pi_p.to_string(),
        "piK": pi_k.to_string(),
        "phi": phis,
    });
    if spec.n == 2 {
        let nf = normal_form_n2(&w, &spec)?;
        report.lines.push(format!("normal form: {}", show(&nf)));
        result["normal_form"] = json!(show(&nf));
    }
    report.result = Some(result);
    Ok(report)
}

fn suite(mut report: Report, name: Option<&str>) -> Result<Report> {
    let Some(name) = name else {
        for (n, d) in SUITES {
            report.lines.push(format!("{:<16}{}", n, d));
        }
        report.result = Some(json!(
            SUITES.map(|(n, d)| json!({ "name": n, "description": d }))
        ));
        return Ok(report);
    };
    let s = run_suite(name)?;
    report.lines.push(format!("suite {}", s.name));
    for n in &s.notes {
        report.lines.push(format!("note: {}", n));
    }
    report.result = Some(json!({ "suite": s.name, "notes": s.notes }));
    report.checks = s.checks;
    Ok(report)
}
