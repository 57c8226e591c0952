use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use skewbrace::builder::{parse_brace, parse_group};
use skewbrace::cohomology::{group_schur_multiplier, h2b, hochschild_serre_check, schur_multiplier};
use skewbrace::covers::{build_schur_cover, cover_count_bound, enumerate_covers_with_budget, is_schur_cover};
use skewbrace::extension::{extension_from_ideal, AnnihilatorExtension};
use skewbrace::group::GroupTable;
use skewbrace::isoclinism::isoclinism_test;
use skewbrace::json::{
    brace_from_value, brace_to_json, cohomology_to_json, extension_from_value, extension_to_json, multiplier_to_json,
};
use skewbrace::selftest::{self, Options};
use skewbrace::{Error, Ideal, SkewBrace};

#[derive(Parser)]
#[command(name = "skewbrace", version, about = "Cohomology, Schur multipliers and covers of finite skew braces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the output to a file instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    /// Largest brace order accepted as input.
    #[arg(long, global = true, default_value_t = 255)]
    max_order: usize,
    /// Largest number of cohomology classes a cover search may visit.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_classes: u128,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of a brace.
    Info { input: String },
    /// Check that the input describes a skew brace.
    Validate { input: String },
    /// Schur multiplier with generator factor sets.
    Multiplier { input: String },
    /// Schur multiplier of a group, e.g. `quaternion:8`.
    GroupMultiplier { group: String },
    /// Second brace cohomology with coefficients in Z/m.
    H2b {
        input: String,
        /// Coefficient modulus; defaults to the order of the brace.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Build a Schur cover of a brace, or certify an extension file.
    Cover { input: String },
    /// All Schur covers of a brace up to isomorphism.
    Covers { input: String },
    /// Search for an isoclinism between two braces.
    Isoclinic { a: String, b: String },
    /// Exactness of the five-term sequence for an annihilator extension.
    HsCheck {
        input: String,
        /// Coefficient modulus; defaults to the exponent of the kernel.
        #[arg(long)]
        modulus: Option<u64>,
        /// Kernel when the input is a brace: `ann` or a comma-separated member list.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Annihilator extension from a file, or from a brace and a kernel ideal.
    Extension {
        input: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Criterion name, number or tag such as `multiplier`.
        #[arg(long)]
        filter: Option<String>,
        /// Damage every fixture before use.
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Parse(_)) => 3,
            CliError::Core(Error::TooLarge { .. } | Error::OrderTooLarge { .. }) => 2,
            _ => 1,
        }
    }
}

enum Input {
    Brace(SkewBrace),
    Extension(Box<AnnihilatorExtension>),
}

impl Input {
    fn brace(&self) -> &SkewBrace {
        match self {
            Input::Brace(q) => q,
            Input::Extension(ext) => ext.brace(),
        }
    }
}

struct Session {
    max_order: usize,
    max_classes: u128,
}

impl Session {
    fn check_order(&self, q: &SkewBrace) -> Result<(), CliError> {
        if q.order() > self.max_order {
            return Err(Error::OrderTooLarge { order: q.order(), max: self.max_order }.into());
        }
        Ok(())
    }

    /// A JSON file when `arg` names one, otherwise a builder spec.
    fn load(&self, arg: &str) -> Result<Input, CliError> {
        let path = Path::new(arg);
        let input = if path.is_file() {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
            if v.get("K").is_some() {
                Input::Extension(Box::new(extension_from_value(&v)?))
            } else if let Some(ext) = v.get("extension") {
                Input::Extension(Box::new(extension_from_value(ext)?))
            } else {
                Input::Brace(brace_from_value(&v)?)
            }
        } else {
            Input::Brace(parse_brace(arg)?)
        };
        self.check_order(input.brace())?;
        Ok(input)
    }

    fn brace(&self, arg: &str) -> Result<SkewBrace, CliError> {
        Ok(match self.load(arg)? {
            Input::Brace(q) => q,
            Input::Extension(ext) => ext.brace().clone(),
        })
    }

    fn extension(&self, arg: &str, ideal: Option<&str>) -> Result<AnnihilatorExtension, CliError> {
        match self.load(arg)? {
            Input::Extension(ext) if ideal.is_none() => Ok(*ext),
            input => {
                let e = input.brace();
                let kernel = match ideal.unwrap_or("ann") {
                    "ann" => e.annihilator()?,
                    list => {
                        let members = list
                            .split(',')
                            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad ideal member {s:?}"))))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ideal::new(e, members)?
                    }
                };
                Ok(extension_from_ideal(e, &kernel, None)?)
            }
        }
    }
}

/// A JSON number, or a decimal string beyond the 64-bit range.
fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn group_type(g: &GroupTable) -> Value {
    if g.is_abelian() {
        let s = skewbrace::linalg::abelian_structure(g).expect("abelian table");
        return json!({ "abelian": true, "invariant_factors": s.group.invariants() });
    }
    let mut orders = g.order_profile();
    orders.sort_unstable();
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let name = match (g.order(), involutions) {
        (6, _) => Some("S3".to_string()),
        (8, 1) => Some("Q8".to_string()),
        (12, 1) => Some("Dic12".to_string()),
        (12, 3) => Some("A4".to_string()),
        (n, i) if n <= 12 && (i == n / 2 || i == n / 2 + 1) => Some(format!("D{n}")),
        _ => None,
    };
    json!({ "abelian": false, "name": name, "element_orders": orders })
}

fn info(q: &SkewBrace) -> Result<Value, CliError> {
    Ok(json!({
        "order": q.order(),
        "add_group": group_type(q.add_group()),
        "circ_group": group_type(q.circ_group()),
        "soc_order": q.socle()?.order(),
        "ann_order": q.annihilator()?.order(),
        "derived_order": q.commutator_ideal()?.order(),
        "abelianization": q.abelianization()?.group.invariants(),
        "bicyclic": q.is_bicyclic(),
    }))
}

/// The report and whether the command's own check succeeded.
fn execute(cli: &Cli) -> Result<(Value, bool), CliError> {
    let s = Session { max_order: cli.max_order, max_classes: cli.max_classes };
    let out = match &cli.command {
        Command::Info { input } => info(&s.brace(input)?)?,
        Command::Validate { input } => match s.load(input) {
            Ok(i) => json!({ "valid": true, "order": i.brace().order() }),
            Err(CliError::Core(e)) if !matches!(e, Error::Parse(_) | Error::OrderTooLarge { .. }) => {
                return Ok((json!({ "valid": false, "error": e.to_string() }), false));
            }
            Err(e) => return Err(e),
        },
        Command::Multiplier { input } => multiplier_to_json(&schur_multiplier(&s.brace(input)?)?),
        Command::GroupMultiplier { group } => multiplier_to_json(&group_schur_multiplier(&parse_group(group)?)?),
        Command::H2b { input, modulus } => {
            let q = s.brace(input)?;
            let m = modulus.unwrap_or(q.order() as u64);
            if m == 0 {
                return Err(Error::InvalidParameters("modulus must be positive".into()).into());
            }
            cohomology_to_json(&h2b(&q, m))
        }
        Command::Cover { input } => {
            let ext = match s.load(input)? {
                Input::Extension(ext) => *ext,
                Input::Brace(q) => build_schur_cover(&q)?,
            };
            let cert = is_schur_cover(&ext)?;
            let ok = cert.is_cover();
            return Ok((
                json!({
                    "is_cover": ok,
                    "certificate": serde_json::to_value(&cert).expect("certificate serializes"),
                    "extension": extension_to_json(&ext),
                    "order": ext.brace().order(),
                }),
                ok,
            ));
        }
        Command::Covers { input } => {
            let q = s.brace(input)?;
            let covers = enumerate_covers_with_budget(&q, s.max_classes)?;
            let list: Vec<Value> = covers.iter().map(extension_to_json).collect();
            json!({ "count": covers.len(), "bound": big(cover_count_bound(&q)?), "covers": list })
        }
        Command::Isoclinic { a, b } => {
            let (a, b) = (s.brace(a)?, s.brace(b)?);
            match isoclinism_test(&a, &b)? {
                Some(w) => json!({
                    "isoclinic": true,
                    "witness": {
                        "xi": w.xi.map(),
                        "theta": w.theta.map(),
                        "derived_a": w.derived_a,
                        "derived_b": w.derived_b,
                    },
                }),
                None => json!({ "isoclinic": false }),
            }
        }
        Command::HsCheck { input, modulus, ideal } => {
            let ext = s.extension(input, ideal.as_deref())?;
            let m = modulus.unwrap_or_else(|| ext.kernel_group().exponent());
            let rep = hochschild_serre_check(&ext, m)?;
            let positions: Vec<Value> = rep
                .positions
                .iter()
                .map(|p| {
                    json!({
                        "position": p.position,
                        "exact": p.exact,
                        "image_order": big(p.image_order),
                        "kernel_order": big(p.kernel_order),
                    })
                })
                .collect();
            let exact: Vec<bool> = rep.positions.iter().map(|p| p.exact).collect();
            return Ok((json!({ "modulus": rep.modulus, "exact": exact, "positions": positions }), rep.all_exact()));
        }
        Command::Extension { input, ideal } => {
            let ext = s.extension(input, ideal.as_deref())?;
            let mut doc = extension_to_json(&ext);
            doc["E"] = brace_to_json(ext.brace());
            doc["inclusion"] = json!(ext.inclusion());
            doc["projection"] = json!(ext.projection().map());
            doc
        }
        Command::Selftest { filter, corrupt } => {
            let outcomes = selftest::run(&Options { filter: filter.clone(), corrupt: *corrupt });
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("selftest: {} passed, {failed} failed", outcomes.len() - failed);
            let ok = failed == 0 && !outcomes.is_empty();
            return Ok((serde_json::to_value(&outcomes).expect("outcomes serialize"), ok));
        }
    };
    Ok((out, true))
}

fn emit(cli: &Cli, v: &Value) -> Result<(), CliError> {
    let text = if cli.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("JSON renders");
    match &cli.output {
        Some(path) => fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(v, ok)| {
        if !matches!(cli.command, Command::Selftest { .. }) || cli.output.is_some() {
            emit(&cli, &v)?;
        }
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
