//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (edgeless graph, size limit, zero
//! LP value), 2 verification failure, 3 parse or configuration error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cert::{CertificateDoc, ColoringDoc, PartitionDoc, SCHEMA_VERSION};
use crate::chromatic::{self, DEFAULT_ORACLE_LIMIT};
use crate::corpus;
use crate::error::{Error, Result};
use crate::gap;
use crate::graph::{self, Family, Graph};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::report::Report;
use crate::vc::{self, CostVector, DEFAULT_EXACT_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "vcgap",
    version,
    about = "Exact integrality gap of the vertex cover LP"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Fractional chromatic number with coloring and dual weights.
    Chif(CommonArgs),
    /// Half-integral VC LP optimum by both LP paths.
    Vclp(CommonArgs),
    /// Closed-form integrality gap (and an IP/LP ratio with --costs).
    Gap(CommonArgs),
    /// Full gap certificate as JSON.
    Analyze(CommonArgs),
    /// Re-check a certificate produced by `analyze`.
    Verify(CommonArgs),
    /// Write a graph family in DIMACS or adjacency form.
    Generate(GenerateArgs),
    /// Seeded property suite over the graph corpus.
    Proptest(ProptestArgs),
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// DIMACS graph (or certificate JSON for `verify`).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Graph family, e.g. `cycle 5`, `kneser 5 2`, `mycielski cycle 5`.
    #[arg(long, num_args = 1.., value_name = "NAME P1 [P2]")]
    family: Option<Vec<String>>,
    /// Cost source: a file with one rational per line, `unit`, or `worst`.
    #[arg(long)]
    costs: Option<String>,
    /// Cross-check against full enumeration.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "VCGAP_LIMIT_EXACT", default_value_t = DEFAULT_EXACT_LIMIT)]
    limit_exact: usize,
    #[arg(long, env = "VCGAP_LIMIT_ORACLE", default_value_t = DEFAULT_ORACLE_LIMIT)]
    limit_oracle: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dimacs)]
    format: GraphFormat,
}

#[derive(Args, Debug)]
struct ProptestArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Random cost vectors per graph.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dimacs,
    Adjacency,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Chif,
    Vclp,
    Gap,
    Analyze,
    Verify,
    Generate,
    Proptest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSource {
    File(PathBuf),
    Family(Vec<String>),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CostSource {
    File(PathBuf),
    Unit,
    WorstCase,
}

impl CostSource {
    fn parse(s: &str) -> CostSource {
        match s {
            "unit" => CostSource::Unit,
            "worst" | "worst-case" => CostSource::WorstCase,
            path => CostSource::File(PathBuf::from(path)),
        }
    }
}

/// Fully resolved invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub graph: GraphSource,
    pub costs: Option<CostSource>,
    pub oracle: bool,
    pub seed: u64,
    pub limit_exact: usize,
    pub limit_oracle: usize,
    pub output: Option<PathBuf>,
    pub format: GraphFormat,
    pub samples: usize,
}

impl RunConfig {
    fn from_common(command: Command, a: CommonArgs) -> Self {
        let graph = match (a.input, a.family) {
            (_, Some(f)) => GraphSource::Family(f),
            (Some(p), None) => GraphSource::File(p),
            (None, None) => GraphSource::None,
        };
        RunConfig {
            command,
            graph,
            costs: a.costs.as_deref().map(CostSource::parse),
            oracle: a.oracle,
            seed: a.seed,
            limit_exact: a.limit_exact,
            limit_oracle: a.limit_oracle,
            output: a.output,
            format: GraphFormat::Dimacs,
            samples: 100,
        }
    }
}

/// Parses one rational per line (`p/q` or an integer). Blank lines and
/// everything after `#` are ignored.
pub fn cost_file_parse(text: &str, n: usize) -> Result<CostVector> {
    let mut values: Vec<Rat> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        values.push(parse_rat(line).map_err(|msg| Error::Parse { line: i + 1, msg })?);
    }
    if values.len() != n {
        return Err(Error::Dimension(format!(
            "cost file has {} values for {n} vertices",
            values.len()
        )));
    }
    CostVector::new(values)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } | Error::Edgeless | Error::ZeroLpValue { .. } => EXIT_DOMAIN,
        Error::Invariant(_) | Error::LpStatus(_) => EXIT_DOMAIN,
        Error::Parse { .. }
        | Error::Param { .. }
        | Error::InvalidGraph(_)
        | Error::Dimension(_)
        | Error::NegativeCost { .. }
        | Error::Json(_)
        | Error::Config(_) => EXIT_CONFIG,
    }
}

/// Entry point used by the binary: parses `args` (including the program
/// name) and runs the command.
pub fn main_with_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let config = match cli.command {
        CliCommand::Chif(a) => RunConfig::from_common(Command::Chif, a),
        CliCommand::Vclp(a) => RunConfig::from_common(Command::Vclp, a),
        CliCommand::Gap(a) => RunConfig::from_common(Command::Gap, a),
        CliCommand::Analyze(a) => RunConfig::from_common(Command::Analyze, a),
        CliCommand::Verify(a) => RunConfig::from_common(Command::Verify, a),
        CliCommand::Generate(g) => RunConfig {
            format: g.format,
            ..RunConfig::from_common(Command::Generate, g.common)
        },
        CliCommand::Proptest(p) => RunConfig {
            samples: p.samples,
            ..RunConfig::from_common(Command::Proptest, p.common)
        },
    };
    run(&config, out, err)
}

pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(config) {
        Ok((text, code)) => {
            let written = match &config.output {
                Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_CONFIG;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(config: &RunConfig) -> Result<Graph> {
    match &config.graph {
        GraphSource::File(p) => graph::parse_dimacs(&read(p)?),
        GraphSource::Family(tokens) => Family::parse(tokens)?.generate(),
        GraphSource::None => Err(Error::Config(
            "no graph given (use --input or --family)".into(),
        )),
    }
}

fn load_costs(config: &RunConfig, g: &Graph, default: CostSource) -> Result<CostVector> {
    match config.costs.clone().unwrap_or(default) {
        CostSource::Unit => Ok(CostVector::unit(g.n())),
        CostSource::WorstCase => CostVector::new(chromatic::solve_chi_f(g)?.1.z),
        CostSource::File(p) => cost_file_parse(&read(&p)?, g.n()),
    }
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn header(config: &RunConfig, command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("seed".into(), json!(config.seed));
    m.insert("command".into(), json!(command));
    m
}

fn dispatch(config: &RunConfig) -> Result<(String, i32)> {
    if config.limit_exact == 0 || config.limit_oracle == 0 {
        return Err(Error::Config("limits must be positive".into()));
    }
    match config.command {
        Command::Chif => cmd_chif(config),
        Command::Vclp => cmd_vclp(config),
        Command::Gap => cmd_gap(config),
        Command::Analyze => cmd_analyze(config),
        Command::Verify => cmd_verify(config),
        Command::Generate => {
            let g = load_graph(config)?;
            let text = match config.format {
                GraphFormat::Dimacs => g.to_dimacs(),
                GraphFormat::Adjacency => g.to_adjacency_text(),
            };
            Ok((text, EXIT_OK))
        }
        Command::Proptest => cmd_proptest(config),
    }
}

fn cmd_chif(config: &RunConfig) -> Result<(String, i32)> {
    let g = load_graph(config)?;
    let (coloring, duals) = chromatic::solve_chi_f(&g)?;
    let (_, pricing_max) = chromatic::price_column(&g, &duals.z);
    let mut m = header(config, "chif");
    m.insert("n".into(), json!(g.n()));
    m.insert("m".into(), json!(g.m()));
    m.insert("chi_f".into(), json!(format_rat(&coloring.value)));
    m.insert(
        "coloring".into(),
        json!(ColoringDoc::from_coloring(&coloring)),
    );
    m.insert("z".into(), json!(strs(&duals.z)));
    m.insert("pricing_max".into(), json!(format_rat(&pricing_max)));
    let mut code = EXIT_OK;
    if config.oracle {
        let (brute, _) = chromatic::chi_f_bruteforce(&g, config.limit_oracle)?;
        let agrees = brute.value == coloring.value;
        m.insert("oracle_chi_f".into(), json!(format_rat(&brute.value)));
        m.insert("oracle_agrees".into(), json!(agrees));
        if !agrees {
            code = EXIT_VERIFY;
        }
    }
    Ok((to_json(&m), code))
}

fn cmd_vclp(config: &RunConfig) -> Result<(String, i32)> {
    let g = load_graph(config)?;
    let c = load_costs(config, &g, CostSource::Unit)?;
    let x = vc::solve_vc_lp(&g, &c)?;
    let dbl = vc::solve_vc_lp_bipartite_double(&g, &c)?;
    let mut m = header(config, "vclp");
    m.insert("costs".into(), json!(strs(c.values())));
    m.insert("x".into(), json!(strs(&x.x)));
    m.insert("objective".into(), json!(format_rat(&x.objective)));
    m.insert("partition".into(), json!(PartitionDoc::from_vc(&x)));
    m.insert(
        "objective_bipartite_double".into(),
        json!(format_rat(&dbl.objective)),
    );
    let ip = if g.n() <= config.limit_exact {
        let (cover, cost) = vc::min_vc_exact(&g, &c, config.limit_exact)?;
        json!({"cover": cover.as_slice(), "value": format_rat(&cost)})
    } else {
        Value::Null
    };
    m.insert("ip".into(), ip);
    let agree = x.objective == dbl.objective;
    m.insert("paths_agree".into(), json!(agree));
    Ok((to_json(&m), if agree { EXIT_OK } else { EXIT_VERIFY }))
}

fn cmd_gap(config: &RunConfig) -> Result<(String, i32)> {
    let g = load_graph(config)?;
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let (coloring, _) = chromatic::solve_chi_f(&g)?;
    let rho = gap::integrality_gap(&g)?;
    let mut m = header(config, "gap");
    m.insert("chi_f".into(), json!(format_rat(&coloring.value)));
    m.insert("rho".into(), json!(format_rat(&rho)));
    let mut code = EXIT_OK;
    if config.costs.is_some() {
        let c = load_costs(config, &g, CostSource::Unit)?;
        let ratio = gap::empirical_ratio(&g, &c, config.limit_exact)?;
        m.insert("costs".into(), json!(strs(c.values())));
        m.insert("empirical_ratio".into(), json!(format_rat(&ratio)));
        if ratio > rho {
            code = EXIT_VERIFY;
        }
    }
    Ok((to_json(&m), code))
}

fn cmd_analyze(config: &RunConfig) -> Result<(String, i32)> {
    if matches!(config.costs, Some(ref c) if *c != CostSource::WorstCase) {
        return Err(Error::Config(
            "analyze always uses the worst-case costs".into(),
        ));
    }
    let g = load_graph(config)?;
    let cert = gap::worst_case_certificate(&g, config.limit_exact)?;
    let mut code = EXIT_OK;
    if config.oracle && !gap::verify_certificate(&g, &cert, Some(config.limit_oracle)).all_passed()
    {
        code = EXIT_VERIFY;
    }
    Ok((CertificateDoc::new(&cert, config.seed).to_json(), code))
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    schema_version: u32,
    seed: u64,
    command: &'static str,
    passed: bool,
    #[serde(flatten)]
    report: &'a Report,
}

fn cmd_verify(config: &RunConfig) -> Result<(String, i32)> {
    let GraphSource::File(path) = &config.graph else {
        return Err(Error::Config(
            "verify needs --input CERTIFICATE.json".into(),
        ));
    };
    let doc = CertificateDoc::from_json(&read(path)?)?;
    let cert = doc.to_certificate()?;
    let oracle = config.oracle.then_some(config.limit_oracle);
    let report = gap::verify_certificate(&cert.graph, &cert, oracle);
    let passed = report.all_passed();
    let text = to_json(&VerifyDoc {
        schema_version: SCHEMA_VERSION,
        seed: doc.seed,
        command: "verify",
        passed,
        report: &report,
    });
    Ok((text, if passed { EXIT_OK } else { EXIT_VERIFY }))
}

#[derive(Serialize, Default)]
struct PropertyTally {
    name: &'static str,
    checked: usize,
    violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_violation: Option<String>,
}

impl PropertyTally {
    fn new(name: &'static str) -> Self {
        PropertyTally {
            name,
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(what());
            }
        }
    }
}

fn cmd_proptest(config: &RunConfig) -> Result<(String, i32)> {
    let graphs: Vec<(String, Graph)> = match config.graph {
        GraphSource::None => corpus::standard_corpus(),
        _ => vec![("input".into(), load_graph(config)?)],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut exact = PropertyTally::new("worst_case_ratio_equals_gap");
    let mut certs = PropertyTally::new("certificate_verifies");
    let mut upper = PropertyTally::new("empirical_ratio_at_most_gap");
    let mut half = PropertyTally::new("lp_half_integral");
    let mut paths = PropertyTally::new("lp_paths_agree");
    let mut sandwich = PropertyTally::new("lp_ip_sandwich");
    let mut oracle = PropertyTally::new("chi_f_matches_enumeration");

    for (name, g) in graphs
        .iter()
        .filter(|(_, g)| g.m() > 0 && g.n() <= config.limit_exact)
    {
        let rho = gap::integrality_gap(g)?;
        let cert = gap::worst_case_certificate(g, config.limit_exact)?;
        exact.check(cert.ratio == rho, || {
            format!(
                "{name}: ratio {} vs {}",
                format_rat(&cert.ratio),
                format_rat(&rho)
            )
        });
        let report = gap::verify_certificate(g, &cert, None);
        certs.check(report.all_passed(), || {
            format!("{name}: {}", report.failures().next().unwrap().name)
        });
        if config.oracle && g.n() <= config.limit_oracle {
            let (brute, _) = chromatic::chi_f_bruteforce(g, config.limit_oracle)?;
            oracle.check(brute.value == cert.chi_f, || {
                format!("{name}: {}", format_rat(&brute.value))
            });
        }
        for i in 0..config.samples {
            let c = corpus::random_costs(&mut rng, g.n());
            let x = vc::solve_vc_lp(g, &c)?;
            half.check(x.x.iter().all(crate::rational::is_half_integral), || {
                format!("{name} sample {i}")
            });
            let dbl = vc::solve_vc_lp_bipartite_double(g, &c)?;
            paths.check(dbl.objective == x.objective, || {
                format!("{name} sample {i}")
            });
            let (_, ip) = vc::min_vc_exact(g, &c, config.limit_exact)?;
            let two = Rat::from_integer(2.into());
            sandwich.check(x.objective <= ip && ip <= &two * &x.objective, || {
                format!("{name} sample {i}")
            });
            if x.objective > Rat::from_integer(0.into()) {
                upper.check(&ip / &x.objective <= rho, || format!("{name} sample {i}"));
            }
        }
    }
    let tallies = [exact, certs, upper, half, paths, sandwich, oracle];
    let violations: usize = tallies.iter().map(|t| t.violations).sum();
    let mut m = header(config, "proptest");
    m.insert("graphs".into(), json!(graphs.len()));
    m.insert("samples".into(), json!(config.samples));
    m.insert("passed".into(), json!(violations == 0));
    m.insert("properties".into(), json!(tallies));
    Ok((
        to_json(&m),
        if violations == 0 {
            EXIT_OK
        } else {
            EXIT_VERIFY
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn cost_files() {
        assert_eq!(
            cost_file_parse("1\n1/2\n3", 3).unwrap().values(),
            &[int(1), rat(1, 2), int(3)]
        );
        assert!(matches!(
            cost_file_parse("1\n-2", 2),
            Err(Error::NegativeCost { vertex: 1, .. })
        ));
        assert!(matches!(cost_file_parse("1", 2), Err(Error::Dimension(_))));
        assert!(matches!(
            cost_file_parse("1\nx", 2),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("vcgap").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["gap", "--family", "cycle", "5"]).0, EXIT_OK);
        assert_eq!(run_args(&["gap", "--family", "cycle", "2"]).0, EXIT_CONFIG);
        assert_eq!(run_args(&["gap"]).0, EXIT_CONFIG);
        assert_eq!(run_args(&["bogus"]).0, EXIT_CONFIG);
        assert_eq!(
            run_args(&["gap", "--family", "cycle", "5", "--limit-exact", "0"]).0,
            EXIT_CONFIG
        );
        let (code, _, err) = run_args(&["analyze", "--family", "cycle", "9", "--limit-exact", "5"]);
        assert_eq!(code, EXIT_DOMAIN, "{err}");
        assert!(err.contains("limit"));
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn generate_formats() {
        let (code, out, _) = run_args(&[
            "generate",
            "--family",
            "cycle",
            "4",
            "--format",
            "adjacency",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "0: 1 3\n1: 0 2\n2: 1 3\n3: 0 2\n");
    }
}
