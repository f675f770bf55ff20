use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jord_core::catalog::{make_dt, make_k10_table, make_k10_tensor, make_k3};
use jord_core::fixtures::{self, make_broken_k10};
use jord_core::identities::{
    check_envelope_jordan, check_super_jordan, check_supercommutativity, grassmann_envelope,
    IdentityReport,
};
use jord_core::linear::{format_scalar, parse_scalar};
use jord_core::morphism::{factor_orthogonal, phi, MapFile, Morphism, OrthogonalMap, WreathElement};
use jord_core::subalgebra::{
    conjugation_witness, maximal_subalgebra, maximality_probe, span_closure, structure_report,
    GradedSubspace, MaximalKind, ProbeVerdict,
};
use jord_core::verify::{verify_all, VerifyConfig, DEFAULT_SEED};
use jord_core::{Error, Matrix, SuperAlgebra};

#[derive(Parser)]
#[command(name = "jord", version, about = "Exact checks for Jordan superalgebras and the Kac superalgebra K10")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in algebra as JSON.
    Builtin {
        #[arg(value_enum)]
        name: Builtin,
        /// Parameter of D_t.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Write or compare the shipped fixture files.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
    /// Run the identity checks on an algebra file.
    Check {
        algebra: PathBuf,
        /// Also check the Grassmann envelope of this degree.
        #[arg(long)]
        envelope: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Isomorphism checks.
    Iso {
        #[command(subcommand)]
        action: IsoAction,
    },
    /// Automorphisms of the tensor model.
    Aut {
        #[command(subcommand)]
        action: AutAction,
    },
    /// Subalgebras of K10.
    Sub {
        #[command(subcommand)]
        action: SubAction,
    },
    /// Run the full claim checklist.
    #[command(name = "verify-paper")]
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random adjunctions per maximality probe.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Load K10 and the broken table from this directory and compare all fixtures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    K10,
    K10Tensor,
    K3,
    Dt,
    Broken,
}

#[derive(Subcommand)]
enum FixturesAction {
    Write { dir: PathBuf },
    Check { dir: PathBuf },
}

#[derive(Subcommand)]
enum IsoAction {
    /// Verify that a map file defines an isomorphism.
    Verify {
        map: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
}

#[derive(Subcommand)]
enum AutAction {
    /// Automorphism Phi(f, g, swap) of F1 + (K3 (x) K3).
    Phi {
        /// Row-major entries "a,b,c,d" of f.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        swap: bool,
    },
    /// Factor an isometry of V = W (x) W as (f, g, swap).
    Factor {
        /// JSON file with a 4x4 array of rows.
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Args)]
struct KindArg {
    /// i, ii, iii or iv.
    kind: String,
}

#[derive(Subcommand)]
enum SubAction {
    /// Subalgebra generated by a list of elements.
    Closure {
        algebra: PathBuf,
        /// Comma-separated elements, e.g. "e,f,p1,q1".
        #[arg(long)]
        gens: String,
    },
    Maximal {
        #[command(flatten)]
        kind: KindArg,
        #[arg(long)]
        probe: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    Structure {
        #[command(flatten)]
        kind: KindArg,
    },
    Conjugate {
        #[command(flatten)]
        kind: KindArg,
    },
}

/// Result of a command: printed output plus whether a mathematical check failed.
struct Outcome {
    text: String,
    json: Value,
    failed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
            };
            // A closed pipe (`jord ... | head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(body.as_bytes()).and_then(|()| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: cannot write output: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Builtin { name, t } => builtin(*name, t.as_deref()),
        Command::Fixtures { action } => fixtures_cmd(action),
        Command::Check { algebra, envelope, trials, seed } => check(algebra, *envelope, *trials, *seed),
        Command::Iso { action: IsoAction::Verify { map, from, to } } => iso_verify(map, from, to),
        Command::Aut { action: AutAction::Phi { f, g, swap } } => aut_phi(f, g, *swap),
        Command::Aut { action: AutAction::Factor { matrix } } => aut_factor(matrix),
        Command::Sub { action } => sub(action),
        Command::VerifyAll { seed, trials, fixtures } => {
            let cfg = VerifyConfig {
                seed: *seed,
                probe_trials: *trials,
                fixtures: fixtures.clone(),
                ..VerifyConfig::default()
            };
            let report = verify_all(&cfg)?;
            Ok(Outcome {
                text: report.to_text(),
                json: serde_json::to_value(&report)?,
                failed: report.has_failures(),
            })
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_algebra(path: &Path) -> anyhow::Result<SuperAlgebra> {
    SuperAlgebra::from_json(&read(path)?).with_context(|| format!("invalid algebra file {}", path.display()))
}

fn builtin(name: Builtin, t: Option<&str>) -> anyhow::Result<Outcome> {
    let a = match name {
        Builtin::K10 => make_k10_table(),
        Builtin::K10Tensor => make_k10_tensor(),
        Builtin::K3 => make_k3(),
        Builtin::Broken => make_broken_k10(),
        Builtin::Dt => {
            let t = parse_scalar(t.ok_or_else(|| anyhow!("dt needs --t"))?)?;
            make_dt(&t)?
        }
    };
    let text = a.to_json() + "\n";
    Ok(Outcome::ok(text, serde_json::to_value(a.to_file())?))
}

fn fixtures_cmd(action: &FixturesAction) -> anyhow::Result<Outcome> {
    match action {
        FixturesAction::Write { dir } => {
            let names = fixtures::write_all(dir)?;
            Ok(Outcome::ok(format!("wrote {} files to {}\n", names.len(), dir.display()), json!({ "written": names })))
        }
        FixturesAction::Check { dir } => {
            let stale = fixtures::stale(dir)?;
            let text = if stale.is_empty() {
                "all fixtures match\n".to_string()
            } else {
                format!("stale fixtures: {}\n", stale.join(", "))
            };
            Ok(Outcome { text, failed: !stale.is_empty(), json: json!({ "stale": stale }) })
        }
    }
}

fn report_json(a: &SuperAlgebra, r: &IdentityReport) -> Value {
    json!({
        "identity": r.identity,
        "status": r.status(),
        "evaluated": r.evaluated,
        "notes": r.notes,
        "witnesses": r.witnesses.iter().take(10).map(|w| json!({
            "indices": w.indices,
            "defect": a.format_element(&w.defect),
        })).collect::<Vec<_>>(),
    })
}

fn report_text(a: &SuperAlgebra, r: &IdentityReport, labels: Option<&[String]>) -> String {
    let mut s = format!("{}: {} ({} evaluated", r.identity, r.status(), r.evaluated);
    if !r.witnesses.is_empty() {
        s += &format!(", {} defect(s)", r.witnesses.len());
    }
    s += ")\n";
    if let Some(w) = r.witnesses.first() {
        let names: Vec<String> = w
            .indices
            .iter()
            .map(|&i| labels.and_then(|l| l.get(i)).cloned().unwrap_or_else(|| i.to_string()))
            .collect();
        s += &format!("  witness ({}): {}\n", names.join(", "), a.format_element(&w.defect));
    }
    s
}

fn check(path: &Path, envelope: Option<usize>, trials: usize, seed: u64) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let grading = a.check_grading();
    let mut text = format!("{} ({}|{})\n", a.name(), a.dim_even(), a.dim_odd());
    text += &format!("grading: {}\n", if grading.passed() { "pass" } else { "fail" });
    if !grading.passed() {
        return Ok(Outcome {
            text,
            json: json!({ "algebra": a.name(), "grading": "fail", "violations": grading.violations.len() }),
            failed: true,
        });
    }
    let mut reports = vec![check_supercommutativity(&a)?];
    match check_super_jordan(&a) {
        Ok(r) => reports.push(r),
        Err(Error::NotSupercommutative(_)) => {}
        Err(e) => return Err(e.into()),
    }
    let mut failed = false;
    let mut json_reports = Vec::new();
    for r in &reports {
        failed |= !r.passed();
        text += &report_text(&a, r, Some(a.labels()));
        json_reports.push(report_json(&a, r));
    }
    if let Some(n) = envelope {
        // Envelope witnesses are (trial) or (i, j) indices into G(A).
        let r = check_envelope_jordan(&a, n, trials, seed)?;
        let env = grassmann_envelope(&a, n)?;
        failed |= !r.passed();
        text += &report_text(&env, &r, None);
        json_reports.push(report_json(&env, &r));
    }
    Ok(Outcome {
        text,
        json: json!({ "algebra": a.name(), "grading": "pass", "reports": json_reports }),
        failed,
    })
}

fn iso_verify(map: &Path, from: &Path, to: &Path) -> anyhow::Result<Outcome> {
    let source = Arc::new(load_algebra(from)?);
    let target = Arc::new(load_algebra(to)?);
    let file: MapFile = serde_json::from_str(&read(map)?).with_context(|| format!("invalid map file {}", map.display()))?;
    let m = Morphism::from_map_file(&file, source.clone(), target.clone())?;
    let hom = m.is_homomorphism();
    let invertible = m.matrix().invert().is_ok();
    let mut text = report_text(&target, &hom, Some(source.labels()));
    text += &format!("invertible: {invertible}\nisomorphism: {}\n", hom.passed() && invertible);
    Ok(Outcome {
        text,
        json: json!({ "homomorphism": report_json(&target, &hom), "invertible": invertible, "isomorphism": hom.passed() && invertible }),
        failed: !(hom.passed() && invertible),
    })
}

fn parse_2x2(s: &str) -> anyhow::Result<Matrix> {
    let entries = s.split(',').map(|x| parse_scalar(x.trim())).collect::<Result<Vec<_>, _>>()?;
    if entries.len() != 4 {
        bail!("expected four comma-separated entries, got {:?}", s);
    }
    Ok(Matrix::from_rows(2, vec![entries[..2].to_vec(), entries[2..].to_vec()])?)
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(format_scalar).collect()).collect()
}

fn aut_phi(f: &str, g: &str, swap: bool) -> anyhow::Result<Outcome> {
    let w = WreathElement::new(parse_2x2(f)?, parse_2x2(g)?, swap)?;
    let m = phi(&w);
    let labels = m.source().labels().to_vec();
    let mut text = String::new();
    for j in 0..labels.len() {
        text += &format!("{} -> {}\n", labels[j], m.target().format_element(&m.apply(&m.source().basis(j))));
    }
    Ok(Outcome::ok(text, json!({ "labels": labels, "matrix": matrix_rows(m.matrix()) })))
}

fn parse_matrix_file(path: &Path) -> anyhow::Result<Matrix> {
    let v: Value = serde_json::from_str(&read(path)?).with_context(|| format!("invalid matrix file {}", path.display()))?;
    let rows = v.get("rows").unwrap_or(&v).as_array().ok_or_else(|| anyhow!("matrix file must hold an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| anyhow!("row is not an array"))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(parse_scalar(s)?),
                    Value::Number(n) => Ok(parse_scalar(&n.to_string())?),
                    _ => bail!("matrix entries must be strings or integers"),
                })
                .collect::<anyhow::Result<Vec<_>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    Ok(Matrix::from_rows(cols, rows)?)
}

fn aut_factor(path: &Path) -> anyhow::Result<Outcome> {
    let m = parse_matrix_file(path)?;
    let m = match OrthogonalMap::new(m) {
        Ok(m) => m,
        Err(e @ (Error::NotOrthogonal | Error::Dimension(_))) => {
            return Ok(Outcome { text: format!("{e}\n"), json: json!({ "error": e.to_string() }), failed: true })
        }
        Err(e) => return Err(e.into()),
    };
    match factor_orthogonal(&m) {
        Ok(w) => {
            let file = w.to_file();
            let text = format!(
                "f = {:?}\ng = {:?}\nswap = {}\n",
                file.f, file.g, file.swap
            );
            Ok(Outcome::ok(text, serde_json::to_value(file)?))
        }
        Err(Error::NonSquareScalar(g)) => Ok(Outcome {
            text: format!("NonSquareScalar: gamma = {} has no rational square root\n", format_scalar(&g)),
            json: json!({ "error": "NonSquareScalar", "gamma": format_scalar(&g) }),
            failed: true,
        }),
        Err(e) => Err(e.into()),
    }
}

fn subspace_out(a: &SuperAlgebra, s: &GradedSubspace) -> anyhow::Result<(String, Value)> {
    let text = format!("dims {:?}: {}\n", s.dims(), s.describe(a));
    Ok((text, serde_json::to_value(s.to_file(a))?))
}

fn sub(action: &SubAction) -> anyhow::Result<Outcome> {
    match action {
        SubAction::Closure { algebra, gens } => {
            let a = load_algebra(algebra)?;
            let elems = gens
                .split(',')
                .map(|g| a.parse_element(g.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let s = span_closure(&a, &elems)?;
            let (text, json) = subspace_out(&a, &s)?;
            Ok(Outcome::ok(text, json))
        }
        SubAction::Maximal { kind, probe, trials, seed } => {
            let kind: MaximalKind = kind.kind.parse()?;
            let k10 = make_k10_table();
            let s = maximal_subalgebra(kind)?;
            let (mut text, mut json) = subspace_out(&k10, &s)?;
            let mut failed = false;
            if *probe {
                let verdict = maximality_probe(&k10, &s, *trials, *seed)?;
                let (line, v) = match &verdict {
                    ProbeVerdict::ProbablyMaximal { candidates } => (
                        format!("probe: probably maximal ({candidates} adjunctions, seed {seed})\n"),
                        json!({ "verdict": "probably-maximal", "candidates": candidates, "seed": seed }),
                    ),
                    ProbeVerdict::NotMaximal { witness, closure, .. } => {
                        failed = true;
                        (
                            format!("probe: not maximal, witness {} generates {}\n", k10.format_element(witness), closure.describe(&k10)),
                            json!({ "verdict": "not-maximal", "witness": k10.format_element(witness) }),
                        )
                    }
                };
                text += &line;
                json["probe"] = v;
            }
            Ok(Outcome { text, json, failed })
        }
        SubAction::Structure { kind } => {
            let kind: MaximalKind = kind.kind.parse()?;
            match structure_report(kind) {
                Ok(r) => {
                    let mut text = format!("subalgebra ({kind})\n");
                    for f in &r.facts {
                        text += &format!("  {}: {}\n", f.claim, f.detail);
                    }
                    Ok(Outcome::ok(text, json!({ "kind": kind.to_string(), "facts": r.facts })))
                }
                Err(Error::Verification(claim)) => Ok(Outcome {
                    text: format!("subalgebra ({kind}): failed: {claim}\n"),
                    json: json!({ "kind": kind.to_string(), "failed": claim }),
                    failed: true,
                }),
                Err(e) => Err(e.into()),
            }
        }
        SubAction::Conjugate { kind } => {
            let kind: MaximalKind = kind.kind.parse()?;
            let w = conjugation_witness(kind)?;
            let k10 = w.automorphism.source().clone();
            let mut text = format!("subalgebra ({kind}) -> {}\n", w.table_target.describe(&k10));
            for j in 0..k10.dim() {
                text += &format!(
                    "  {} -> {}\n",
                    k10.labels()[j],
                    k10.format_element(&w.automorphism.apply(&k10.basis(j)))
                );
            }
            Ok(Outcome::ok(
                text,
                json!({
                    "kind": kind.to_string(),
                    "target": w.table_target.to_file(&k10),
                    "automorphism": w.automorphism.to_map_file(),
                }),
            ))
        }
    }
}
