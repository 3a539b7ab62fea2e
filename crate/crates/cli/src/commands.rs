//! One function per subcommand. Each returns an [`Output`]: the JSON document,
//! a human-readable summary and the exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use rand::Rng;
use serde_json::{json, Value};

use typei_core::algebra::vector_norm;
use typei_core::automorphism::evaluate_word;
use typei_core::decompose::{classify_band_preserving, decompose};
use typei_core::random::{random_element, random_spec, random_word, seeded_rng, EntryDist};
use typei_core::scalar::parse_rational;
use typei_core::topology::{
    check_neighborhood, equality_test_with, inclusion_test_with, o_membership_with, v_membership_with,
    DEFAULT_ETA,
};
use typei_core::{
    AlgebraElement, AlgebraSpec, Automorphism, Classification, Error, NeighborhoodSpec, ValidationReport,
};

use crate::error::{CliError, CliResult};
use crate::json;
use crate::suite::{run_suite, Faults, SuiteConfig, TraceReport, TRACE_IDS};

pub const MAX_DEGREE: usize = 6;
pub const MAX_ATOMS: usize = 8;
pub const MAX_BLOCKS: usize = 3;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_AUTOMORPHISM: u8 = 2;
pub const EXIT_CHECKS_FAILED: u8 = 3;

#[derive(Debug, Clone)]
pub struct Output {
    pub doc: Value,
    pub summary: String,
    pub code: u8,
}

impl Output {
    fn ok(doc: Value, summary: String) -> Self {
        Self { doc, summary, code: EXIT_OK }
    }
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn read_document(path: &Path, kind: &str) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(json::parse_document(&text, kind)?)
}

fn check_sizes(max_degree: usize, max_atoms: usize) -> CliResult<()> {
    if !(1..=MAX_DEGREE).contains(&max_degree) {
        return Err(CliError::Config(format!("max degree must be in 1..={MAX_DEGREE}, got {max_degree}")));
    }
    if !(1..=MAX_ATOMS).contains(&max_atoms) {
        return Err(CliError::Config(format!("max atoms must be in 1..={MAX_ATOMS}, got {max_atoms}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 3)]
    pub max_atoms: usize,
    /// Number of blocks, each of random degree up to --max-degree.
    #[arg(long, conflicts_with = "degrees")]
    pub blocks: Option<usize>,
    /// Explicit block degrees, e.g. `2,2,3`.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,
    #[arg(long, default_value_t = 3)]
    pub elements: usize,
    #[arg(long, default_value_t = 3)]
    pub word_length: usize,
    /// Also store the basis-image table of the automorphism.
    #[arg(long)]
    pub with_table: bool,
}

pub fn spec_document(spec: &AlgebraSpec) -> Value {
    json::document("spec", vec![("spec", json::spec(spec))])
}

pub fn elements_document(spec: &AlgebraSpec, xs: &[AlgebraElement]) -> Value {
    json::document(
        "elements",
        vec![
            ("spec", json::spec(spec)),
            ("elements", Value::Array(xs.iter().map(json::element).collect())),
        ],
    )
}

pub fn automorphism_document(t: &Automorphism, with_table: bool) -> Value {
    json::document(
        "automorphism",
        vec![
            ("spec", json::spec(t.spec())),
            ("automorphism", json::automorphism(t, with_table)),
        ],
    )
}

/// Writes `spec.json`, `elements.json` and `automorphism.json` to `--out`.
pub fn gen(args: &GenArgs) -> CliResult<String> {
    check_sizes(args.max_degree, args.max_atoms)?;
    let mut rng = seeded_rng(args.seed);
    let degrees = match (&args.degrees, args.blocks) {
        (Some(d), _) => d.clone(),
        (None, Some(b)) => (0..b).map(|_| rng.random_range(1..=args.max_degree)).collect(),
        (None, None) => {
            let b = rng.random_range(1..=MAX_BLOCKS);
            (0..b).map(|_| rng.random_range(1..=args.max_degree)).collect()
        }
    };
    if degrees.is_empty() || degrees.len() > MAX_BLOCKS {
        return Err(CliError::Config(format!("block count must be in 1..={MAX_BLOCKS}, got {}", degrees.len())));
    }
    if let Some(&d) = degrees.iter().find(|&&d| !(1..=MAX_DEGREE).contains(&d)) {
        return Err(CliError::Config(format!("block degree must be in 1..={MAX_DEGREE}, got {d}")));
    }
    let spec = random_spec(&mut rng, "generated", &degrees, args.max_atoms)?;
    let dist = EntryDist::default();
    let xs: Vec<AlgebraElement> = (0..args.elements).map(|_| random_element(&mut rng, &spec, &dist)).collect();
    let word = random_word(&mut rng, &spec, args.word_length, &EntryDist::integers(2));
    let t = evaluate_word(spec.clone(), &word)?;

    write_file(&args.out.join("spec.json"), &json::render(&spec_document(&spec)))?;
    write_file(&args.out.join("elements.json"), &json::render(&elements_document(&spec, &xs)))?;
    write_file(
        &args.out.join("automorphism.json"),
        &json::render(&automorphism_document(&t, args.with_table)),
    )?;
    Ok(format!(
        "wrote {} blocks (degrees {:?}), {} slots, {} elements and a word of length {} to {}",
        spec.blocks().len(),
        spec.blocks().iter().map(|b| b.degree).collect::<Vec<_>>(),
        spec.num_slots(),
        xs.len(),
        word.len(),
        args.out.display()
    ))
}

/// The automorphism in a file, or the report explaining why it is not one.
pub fn load_automorphism(path: &Path) -> CliResult<(Arc<AlgebraSpec>, Result<Automorphism, ValidationReport>)> {
    let doc = read_document(path, "automorphism")?;
    let spec = json::document_spec(&doc)?;
    let data = json::automorphism_from(json::document_field(&doc, "automorphism")?, &spec)?;
    let result = match data.into_automorphism() {
        Ok(t) => Ok(t),
        Err(Ok(report)) => Err(report),
        Err(Err(Error::Parse(m))) => return Err(CliError::Input(Error::Parse(m))),
        Err(Err(e)) => Err(ValidationReport {
            dim: spec.dim(),
            table_errors: vec![e.to_string()],
            unital: false,
            rank: 0,
            failing_pairs: Vec::new(),
            failure_count: 0,
            word_consistent: None,
        }),
    };
    Ok((spec, result))
}

fn report_document(spec: &AlgebraSpec, report: &ValidationReport) -> Value {
    json::document(
        "validation_report",
        vec![("spec", json!(spec.id())), ("report", json::validation_report(report, spec))],
    )
}

fn rejected(spec: &AlgebraSpec, report: &ValidationReport) -> Output {
    Output {
        doc: report_document(spec, report),
        summary: format!("not an automorphism:\n{}", report.summary(spec)),
        code: EXIT_NOT_AUTOMORPHISM,
    }
}

pub fn validate(input: &Path) -> CliResult<Output> {
    let (spec, result) = load_automorphism(input)?;
    Ok(match result {
        Ok(_) => {
            let report = ValidationReport {
                dim: spec.dim(),
                table_errors: Vec::new(),
                unital: true,
                rank: spec.dim(),
                failing_pairs: Vec::new(),
                failure_count: 0,
                word_consistent: None,
            };
            Output::ok(
                report_document(&spec, &report),
                format!("valid automorphism of a {}-dimensional algebra", spec.dim()),
            )
        }
        Err(report) => rejected(&spec, &report),
    })
}

pub fn decompose_cmd(input: &Path) -> CliResult<Output> {
    let (spec, result) = load_automorphism(input)?;
    let t = match result {
        Ok(t) => t,
        Err(report) => return Ok(rejected(&spec, &report)),
    };
    let d = decompose(&t)?;
    let moved: Vec<String> = d
        .phi
        .pairs()
        .into_iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| format!("{a} -> {b}"))
        .collect();
    let summary = format!(
        "T = T_a . T_phi\nphi: {}\na: canonical, {} nonzero slots\ncertificate: {}",
        if moved.is_empty() {
            "identity".to_string()
        } else {
            moved.join(", ")
        },
        d.a.support().len(),
        d.certificate
    );
    Ok(Output::ok(
        json::document(
            "decomposition",
            vec![("spec", json::spec(&spec)), ("decomposition", json::decomposition(&d))],
        ),
        summary,
    ))
}

pub fn classify(input: &Path) -> CliResult<Output> {
    let (spec, result) = load_automorphism(input)?;
    let t = match result {
        Ok(t) => t,
        Err(report) => return Ok(rejected(&spec, &report)),
    };
    let (class, witness) = match classify_band_preserving(&t)? {
        Classification::Inner(w) => ("Inner", json!({"a": json::element(&w.a)})),
        Classification::NotBandPreserving(phi) => ("NotBandPreserving", json!({"phi": json::central_automorphism(&phi)})),
    };
    Ok(Output::ok(
        json::document(
            "classification",
            vec![
                ("spec", json!(spec.id())),
                ("class", json!(class)),
                ("witness", witness),
            ],
        ),
        class.to_string(),
    ))
}

fn load_elements(path: &Path) -> CliResult<(Arc<AlgebraSpec>, Vec<AlgebraElement>)> {
    let doc = read_document(path, "elements")?;
    let spec = json::document_spec(&doc)?;
    let xs = json::document_field(&doc, "elements")?
        .as_array()
        .ok_or_else(|| Error::Parse("elements: expected an array".into()))?
        .iter()
        .map(|v| json::element_from(v, &spec))
        .collect::<typei_core::Result<Vec<_>>>()?;
    Ok((spec, xs))
}

pub fn norm(input: &Path) -> CliResult<Output> {
    let (spec, xs) = load_elements(input)?;
    let mut lines = Vec::new();
    let norms: Vec<Value> = xs
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let n = vector_norm(x);
            let certified = n.certify(x);
            let max = n.values.iter().copied().fold(0.0, f64::max);
            lines.push(format!("element {k}: sup norm {max:.6e}, certified {certified}"));
            json!({"norm": json::norm_value(&n, &spec), "certified": certified})
        })
        .collect();
    Ok(Output::ok(
        json::document("norms", vec![("spec", json!(spec.id())), ("norms", Value::Array(norms))]),
        lines.join("\n"),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TopologySuite {
    Inclusion,
    Equality,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct TopologyArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Classify the elements in this file instead of running a random suite.
    #[arg(long)]
    pub elements: Option<PathBuf>,
    /// ε as a rational, e.g. `1/2`.
    #[arg(long)]
    pub eps: String,
    /// δ as a rational.
    #[arg(long)]
    pub delta: String,
    /// Comma-separated atom ids of A; all atoms when omitted.
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = TopologySuite::Both)]
    pub suite: TopologySuite,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Width η of the boundary band.
    #[arg(long, default_value_t = DEFAULT_ETA)]
    pub tolerance: f64,
}

fn parse_rational_arg(s: &str, what: &str) -> CliResult<typei_core::Rational> {
    parse_rational(s).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

fn check_tolerance(eta: f64) -> CliResult<()> {
    if eta.is_finite() && eta >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("tolerance must be finite and non-negative, got {eta}")))
    }
}

pub fn topology(args: &TopologyArgs) -> CliResult<Output> {
    check_tolerance(args.tolerance)?;
    let spec = json::document_spec(&read_document(&args.spec, "spec")?)?;
    let eps = parse_rational_arg(&args.eps, "eps")?;
    let delta = parse_rational_arg(&args.delta, "delta")?;
    let nb = match &args.set {
        Some(set) => NeighborhoodSpec::new(set.clone(), eps, delta),
        None => NeighborhoodSpec::whole(spec.center_space(), eps, delta),
    };
    check_neighborhood(&spec, &nb).map_err(|e| CliError::Config(e.to_string()))?;

    if let Some(path) = &args.elements {
        let (espec, xs) = load_elements(path)?;
        if espec != spec {
            return Err(CliError::Input(Error::SpecMismatch));
        }
        let mut lines = Vec::new();
        let verdicts = xs
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let o = o_membership_with(x, &nb, args.tolerance)?;
                let v = v_membership_with(x, &nb, args.tolerance)?;
                lines.push(format!("element {k}: O {:?}, V {:?}", o.status, v.status));
                Ok(json!({"o": json::verdict(&o, &spec), "v": json::verdict(&v, &spec)}))
            })
            .collect::<typei_core::Result<Vec<_>>>()?;
        return Ok(Output::ok(
            json::document(
                "verdicts",
                vec![
                    ("spec", json!(spec.id())),
                    ("neighborhood", json::neighborhood(&nb)),
                    ("verdicts", Value::Array(verdicts)),
                ],
            ),
            lines.join("\n"),
        ));
    }

    let mut reports = Vec::new();
    if matches!(args.suite, TopologySuite::Inclusion | TopologySuite::Both) {
        reports.push(inclusion_test_with(&spec, &nb, args.samples, args.seed, args.tolerance)?);
    }
    if matches!(args.suite, TopologySuite::Equality | TopologySuite::Both) {
        if nb.eps >= typei_core::scalar::rational(1, 1) {
            return Err(CliError::Config("the equality suite needs eps < 1".into()));
        }
        reports.push(equality_test_with(&spec, &nb, args.samples, args.seed, args.tolerance)?);
    }
    let failed = reports.iter().any(|r| !r.passed());
    let summary = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} samples, {} hard failures, {} in the boundary band",
                r.suite,
                r.samples,
                r.hard_failures.len(),
                r.boundary_count
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        doc: json::document(
            "topology_reports",
            vec![
                ("spec", json!(spec.id())),
                ("neighborhood", json::neighborhood(&nb)),
                ("reports", Value::Array(reports.iter().map(json::topology_report).collect())),
            ],
        ),
        summary,
        code: if failed { EXIT_CHECKS_FAILED } else { EXIT_OK },
    })
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 20)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 3)]
    pub max_atoms: usize,
    /// Width η of the boundary band for the topology checks.
    #[arg(long, default_value_t = DEFAULT_ETA)]
    pub tolerance: f64,
    /// Check ids to skip.
    #[arg(long, value_delimiter = ',')]
    pub skip: Vec<String>,
    /// Deliberately break a component to exercise the harness.
    #[arg(long, hide = true, value_parser = ["norm"])]
    pub inject_fault: Option<String>,
}

pub fn suite(args: &SuiteArgs) -> CliResult<Output> {
    check_sizes(args.max_degree, args.max_atoms)?;
    check_tolerance(args.tolerance)?;
    if let Some(bad) = args.skip.iter().find(|s| !TRACE_IDS.contains(&s.as_str())) {
        return Err(CliError::Config(format!("unknown check id `{bad}`")));
    }
    let cfg = SuiteConfig {
        seed: args.seed,
        samples: args.samples,
        max_degree: args.max_degree,
        max_atoms: args.max_atoms,
        eta: args.tolerance,
        skip: args.skip.clone(),
        faults: Faults {
            norm: args.inject_fault.as_deref() == Some("norm"),
        },
    };
    let report = run_suite(&cfg);
    Ok(Output {
        doc: report.to_json(),
        summary: report.render_text().trim_end().to_string(),
        code: if report.passed() { EXIT_OK } else { EXIT_CHECKS_FAILED },
    })
}

pub fn report(input: &Path) -> CliResult<Output> {
    let doc = read_document(input, "trace_report")?;
    let report = TraceReport::from_json(&doc)?;
    Ok(Output::ok(doc, report.render_text().trim_end().to_string()))
}
