//! `leibniz`: verification and reports for Leibniz algebras with triangular
//! nilradical.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use leibniz_core::algebra::{AlgebraJson, StructureConstants};
use leibniz_core::catalog::{
    default_samples, distinctness_report, invariant_signature, parse_samples, verify_catalog, Catalog, CatalogReport,
};
use leibniz_core::constraints::{generate_constraints, reduce_linear};
use leibniz_core::extension::{
    apply_basis_transform, apply_shift, certify_nilradical, normalize_4, recombine_x, residuals_4, residuals_sigma,
    shape_check, BasisTransform, ExtensionSpec, ExtensionSpecJson, MatrixFileJson, ShiftParamsJson,
};
use leibniz_core::triangular::build_t;
use leibniz_core::Error;

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Exact checks for Leibniz algebras with triangular nilradical")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
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
    /// Leibniz identity, Lie type and (for extensions) the nilradical certificate.
    Verify { file: PathBuf },
    /// Derived and lower central series dimensions.
    Series { file: PathBuf },
    /// Work with the shipped catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Symbolic constraint derivation.
    Constraints {
        #[command(subcommand)]
        action: ConstraintsCommand,
    },
    /// Apply a shift, basis change or recombination to a spec.
    Transform(TransformArgs),
    /// Invariant signature.
    Invariants { file: PathBuf },
    /// Canonical form of an extension of T(4).
    Normalize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Structure constants of T(n).
    BuildT {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Verify entries at sample parameters.
    Verify {
        #[arg(long)]
        entry: Option<String>,
        /// `default` or `name=value,...;name=value,...`.
        #[arg(long, default_value = "default")]
        samples: String,
    },
    /// List entries with parameters and conditions.
    List,
    /// Pairwise comparison of invariant signatures over default samples.
    Distinctness,
}

#[derive(Subcommand)]
enum ConstraintsCommand {
    /// Generate and reduce the constraints for L(n, f).
    Derive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: usize,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("op").required(true).multiple(false).args(["shift", "basis", "recombine"])))]
struct TransformArgs {
    file: PathBuf,
    /// `{"mu": [{"12": "1", ...}, ...]}`.
    #[arg(long)]
    shift: Option<PathBuf>,
    /// `{"G": [[...], ...]}` acting on the nilradical basis.
    #[arg(long)]
    basis: Option<PathBuf>,
    /// `{"M": [[...], ...]}` acting on the X's.
    #[arg(long)]
    recombine: Option<PathBuf>,
    /// Apply the inverse transformation instead.
    #[arg(long)]
    inverse: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    /// A check ran and failed.
    Check(String),
    /// The input could not be used.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ConditionViolated { .. }
            | Error::TransformRejected(_)
            | Error::NotLeibniz(_)
            | Error::NotCanonical(_)
            | Error::Singular(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

/// Output of a command and whether all of its checks passed.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, ok: true }
    }
}

enum Input {
    Spec(ExtensionSpec),
    Algebra(StructureConstants),
}

impl Input {
    fn algebra(&self) -> StructureConstants {
        match self {
            Input::Spec(s) => s.build(),
            Input::Algebra(l) => l.clone(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads either an extension spec (has `"A"`) or raw structure constants.
fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let value: Value = parse(path, &text)?;
    if value.get("A").is_some() {
        let j: ExtensionSpecJson = parse(path, &text)?;
        Ok(Input::Spec(j.to_spec().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?))
    } else {
        let j: AlgebraJson = parse(path, &text)?;
        Ok(Input::Algebra(
            StructureConstants::from_json(&j).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        ))
    }
}

fn load_spec(path: &Path) -> Result<ExtensionSpec, Failure> {
    match load(path)? {
        Input::Spec(s) => Ok(s),
        Input::Algebra(_) => Err(Failure::Input(format!("{}: expected an extension spec", path.display()))),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verify(path: &Path) -> Outcome {
    let input = load(path)?;
    let l = input.algebra();
    let violations = l.check_leibniz();
    let leibniz = violations.is_empty();
    let lie = leibniz && l.is_lie();
    let mut text = format!("dimension: {}\nLeibniz identity: {}\n", l.dim(), if leibniz { "pass" } else { "FAIL" });
    if let Some(v) = violations.first() {
        let names = l.basis_names();
        text += &format!(
            "  {} violating triples, first at ({}, {}, {})\n",
            violations.len(),
            names[v.triple.0],
            names[v.triple.1],
            names[v.triple.2]
        );
    }
    text += &format!("Lie type: {}\n", yes(lie));
    let mut json = json!({
        "dim": l.dim(),
        "leibniz": leibniz,
        "violations": violations.len(),
        "lie": lie,
    });
    let mut ok = leibniz;
    if let Input::Spec(spec) = &input {
        let residuals = residuals_4(spec).merge(residuals_sigma(spec));
        let shape = shape_check(spec);
        let families: Vec<String> = residuals.failing_families().iter().map(ToString::to_string).collect();
        text += &format!(
            "residual families failing: {}\n",
            if families.is_empty() { "none".to_string() } else { families.join(", ") }
        );
        text += &format!("canonical shape: {}\n", yes(shape.ok));
        for v in &shape.violations {
            text += &format!("  {v}\n");
        }
        json["residuals"] = serde_json::to_value(&residuals.residuals).expect("serializable");
        json["shape"] = serde_json::to_value(&shape).expect("serializable");
        if leibniz {
            let cert = certify_nilradical(spec)?;
            text += &format!(
                "nilradical T({}): {} (ideal {}, nilpotent {}, nilindependent {})\n",
                spec.n(),
                if cert.certified { "certified" } else { "NOT certified" },
                yes(cert.ideal),
                yes(cert.nilpotent),
                yes(cert.nilindependent)
            );
            ok &= cert.certified;
            json["nilradical"] = serde_json::to_value(&cert).expect("serializable");
        } else {
            json["nilradical"] = Value::Null;
        }
    }
    text += if ok { "result: pass\n" } else { "result: FAIL\n" };
    json["pass"] = json!(ok);
    Ok(Report { json, text, ok })
}

fn series(path: &Path) -> Outcome {
    let l = load(path)?.algebra();
    let derived: Vec<usize> = l.derived_series().iter().map(|s| s.dim()).collect();
    let lcs: Vec<usize> = std::iter::once(l.dim())
        .chain(l.lower_central_series().iter().map(|s| s.dim()))
        .collect();
    let text = format!(
        "derived series dims: {derived:?}\nlower central series dims: {lcs:?}\nsolvable: {}\nnilpotent: {}\n",
        yes(l.is_solvable()),
        yes(l.is_nilpotent())
    );
    Ok(Report::ok(
        json!({
            "derived": derived,
            "lower_central": lcs,
            "solvable": l.is_solvable(),
            "nilpotent": l.is_nilpotent(),
        }),
        text,
    ))
}

fn catalog_text(rep: &CatalogReport) -> String {
    let mut text = String::new();
    for e in &rep.entries {
        text += &format!(
            "{:<6} {} ({} samples)\n",
            e.id,
            if e.passed { "pass" } else { "FAIL" },
            e.samples.len()
        );
        if let Some(f) = &e.failure {
            text += &format!("       {f}\n");
        }
        for b in &e.boundaries {
            let params: Vec<String> = b.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            text += &format!(
                "       boundary {}: Leibniz {}, Lie {}{}\n",
                params.join(","),
                yes(b.leibniz),
                yes(b.lie),
                if b.as_expected { "" } else { " (unexpected)" }
            );
        }
    }
    text += &rep.summary();
    text.push('\n');
    text
}

fn catalog(action: &CatalogCommand) -> Outcome {
    let cat = Catalog::builtin();
    match action {
        CatalogCommand::Verify { entry, samples } => {
            let entries = match entry {
                Some(id) => vec![cat.get(id)?],
                None => cat.entries.iter().collect(),
            };
            let explicit = if samples == "default" { None } else { Some(parse_samples(samples)?) };
            let rep = verify_catalog(&entries, explicit.as_deref())?;
            let mut json = serde_json::to_value(&rep).expect("serializable");
            json["summary"] = json!(rep.summary());
            Ok(Report {
                text: catalog_text(&rep),
                json,
                ok: rep.all_passed(),
            })
        }
        CatalogCommand::List => {
            let mut text = format!("catalog version {}\n", cat.version);
            let mut rows = Vec::new();
            for e in &cat.entries {
                let conds: Vec<&str> = e.conditions.iter().map(|c| c.text.as_str()).collect();
                let shape = e.shape().map_or("raw".to_string(), |(n, f)| format!("L({n},{f})"));
                text += &format!(
                    "{:<6} {:<7} parameters [{}] conditions [{}]\n",
                    e.id,
                    shape,
                    e.parameters.join(", "),
                    conds.join("; ")
                );
                rows.push(json!({"id": e.id, "shape": shape, "parameters": e.parameters, "conditions": conds}));
            }
            Ok(Report::ok(json!({"version": cat.version, "entries": rows}), text))
        }
        CatalogCommand::Distinctness => {
            let input = cat
                .entries
                .iter()
                .map(|e| Ok((e, default_samples(e)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let rep = distinctness_report(&input)?;
            let mut text = String::from("pairs not separated at every sample pair:\n");
            let open = rep.undetermined();
            for (a, b, s) in &open {
                text += &format!("  {a} vs {b}: {}\n", serde_json::to_value(s).expect("serializable").as_str().unwrap_or(""));
            }
            if open.is_empty() {
                text += "  none\n";
            }
            Ok(Report::ok(serde_json::to_value(&rep).expect("serializable"), text))
        }
    }
}

fn constraints(action: &ConstraintsCommand) -> Outcome {
    let ConstraintsCommand::Derive { n, f } = action;
    let cs = generate_constraints(*n, *f)?;
    let red = reduce_linear(&cs);
    let mut text = format!(
        "L({n},{f}): {} symbols, {} linear and {} bilinear polynomials, rank {}\n",
        red.symbol_count, red.linear_count, red.bilinear_count, red.rank
    );
    text += "polynomials by family (linear, bilinear):\n";
    for (fam, (l, b)) in &red.counts_by_family {
        text += &format!("  {fam}: {l}, {b}\n");
    }
    text += &format!("forced zero ({}):\n  {}\n", red.forced_zero.len(), red.forced_zero.join(" "));
    text += &format!("pairings B = -A ({}):\n", red.pairings.len());
    for (b, a) in &red.pairings {
        text += &format!("  {b} = -{a}\n");
    }
    text += "other relations:\n";
    for r in red.relations.iter().filter(|r| !red.pairings.iter().any(|(b, _)| *b == r.symbol)) {
        text += &format!("  {} = {}\n", r.symbol, r.expression());
    }
    text += &format!("free ({}):\n  {}\n", red.free.len(), red.free.join(" "));
    text += &format!("removed by shifts: {}\n", red.shift_eliminated.join(" "));
    text += &format!("survivors ({}):\n  {}\n", red.survivors.len(), red.survivors.join(" "));
    if red.support_mismatches.is_empty() {
        text += "off-diagonal survivors match the canonical support\n";
    } else {
        text += "support mismatches:\n";
        for m in &red.support_mismatches {
            text += &format!("  {m}\n");
        }
    }
    Ok(Report::ok(serde_json::to_value(&red).expect("serializable"), text))
}

fn write_spec(spec: &ExtensionSpec, output: Option<&Path>) -> Outcome {
    let json = serde_json::to_value(ExtensionSpecJson::from_spec(spec)).expect("serializable");
    emit_file(json, output)
}

fn emit_file(json: Value, output: Option<&Path>) -> Outcome {
    let pretty = serde_json::to_string_pretty(&json).expect("serializable");
    match output {
        Some(path) => {
            fs::write(path, pretty + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Report::ok(json!({"written": path.display().to_string()}), format!("wrote {}\n", path.display())))
        }
        None => Ok(Report::ok(json, pretty + "\n")),
    }
}

fn transform(args: &TransformArgs) -> Outcome {
    let spec = load_spec(&args.file)?;
    let out = if let Some(path) = &args.shift {
        let j: ShiftParamsJson = parse(path, &read(path)?)?;
        let p = j.to_params(spec.basis(), spec.f())?;
        apply_shift(&spec, &if args.inverse { p.neg() } else { p })?
    } else if let Some(path) = &args.basis {
        let j: MatrixFileJson = parse(path, &read(path)?)?;
        let t = BasisTransform::new(j.matrix.to_square()?, spec.n())?;
        let g = if args.inverse { t.g_inv() } else { t.g() };
        apply_basis_transform(&spec, g)?
    } else if let Some(path) = &args.recombine {
        let j: MatrixFileJson = parse(path, &read(path)?)?;
        let m = j.matrix.to_square()?;
        let m = if args.inverse {
            m.inverse().map_err(|_| Failure::Check("recombination matrix is singular".into()))?
        } else {
            m
        };
        recombine_x(&spec, &m)?
    } else {
        unreachable!("clap requires one operation")
    };
    write_spec(&out, args.output.as_deref())
}

fn invariants(path: &Path) -> Outcome {
    let l = load(path)?.algebra();
    let sig = invariant_signature(&l);
    let text = format!(
        "dim: {}\nderived series dims: {:?}\nlower central series dims: {:?}\nleft annihilator dim: {}\n\
         [L,L] dim: {}\nLie type: {}\nspan of basis squares: {}\nspan of all squares: {}\n\
         right annihilator dim: {}\ncenter dim: {}\nsymmetric radical dim: {}\n",
        sig.dim,
        sig.derived_dims,
        sig.lcs_dims,
        sig.left_annihilator_dim,
        sig.derived_algebra_dim,
        yes(sig.is_lie),
        sig.basis_square_dim,
        sig.square_span_dim,
        sig.right_annihilator_dim,
        sig.center_dim,
        sig.symmetric_radical_dim
    );
    Ok(Report::ok(serde_json::to_value(&sig).expect("serializable"), text))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify { file } => verify(file),
        Command::Series { file } => series(file),
        Command::Catalog { action } => catalog(action),
        Command::Constraints { action } => constraints(action),
        Command::Transform(args) => transform(args),
        Command::Invariants { file } => invariants(file),
        Command::Normalize { file, output } => write_spec(&normalize_4(&load_spec(file)?)?, output.as_deref()),
        Command::BuildT { n, output } => {
            let l = build_t(*n)?;
            emit_file(serde_json::to_value(l.to_json()).expect("serializable"), output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}
