//! `qosp`: exact computations in `U_q(osp(1|2))` from the command line.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qosp_core::centre::{
    collect_relations, relations_from_fixture, relations_to_fixture, Relation, Selection,
    VerifyOptions,
};
use qosp_core::chebychev::{integer_coeffs, Family};
use qosp_core::exprparse::{parse_element, parse_scalar};
use qosp_core::reps::{classify, is_irreducible_burnside, RepFamily, RepSpec, Representation};
use qosp_core::{compute_root_data, Error, Scalar, ScalarField};

#[derive(Parser, Debug)]
#[command(
    name = "qosp",
    version,
    about = "Exact algebra in U_q(osp(1|2)) at generic q and at roots of unity"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Pretty,
}

#[derive(Args, Debug, Clone, Copy)]
#[command(group(ArgGroup::new("mode").args(["l", "generic"])))]
struct Mode {
    /// Work at a primitive l-th root of unity q.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    l: Option<u32>,

    /// Work over Q(q^{1/2}) with q an indeterminate.
    #[arg(long)]
    generic: bool,
}

impl Mode {
    fn field(self) -> Result<ScalarField, Error> {
        match self.l {
            Some(l) => ScalarField::root(l),
            None if self.generic => Ok(ScalarField::generic()),
            None => Err(Error::Usage("pass --l <n> or --generic".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer data (l', L, N) for a root of unity.
    Rootdata {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        l: u32,
    },
    /// PBW normal form of an expression.
    Nf {
        #[command(flatten)]
        mode: Mode,
        expr: String,
    },
    /// Coefficients of P_m, Q_m or R_m, lowest degree first.
    Cheb {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        m: usize,
    },
    /// Check relations by comparing normal forms of both sides.
    Verify(VerifyArgs),
    /// Build or check finite-dimensional modules.
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Nilpotent and periodic families for one l, with both irreducibility tests.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        l: u32,
    },
    /// Matrix of an expression on a module read from a file.
    Eval {
        /// Must match the field of the module file when given.
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        rep: PathBuf,
        expr: String,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    mode: Mode,

    /// Which relations to check.
    #[arg(long, default_value = "all")]
    what: Selection,

    /// Largest m in the scasimir product.
    #[arg(long)]
    max_m: Option<u32>,

    /// Seed for the random associativity triples.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of random associativity triples.
    #[arg(long, default_value_t = 20)]
    assoc_count: usize,

    /// Check the relations stored in this file instead of building them.
    #[arg(long, conflicts_with_all = ["l", "generic", "what", "max_m", "write_fixture"])]
    fixture: Option<PathBuf>,

    /// Also write the checked relations to this file.
    #[arg(long)]
    write_fixture: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum RepCommand {
    /// Print a module as JSON.
    Build {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        l: u32,
        #[arg(long)]
        family: RepFamily,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, conflicts_with = "eps")]
        phi: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value = "0")]
        sigma: String,
        #[arg(long)]
        d: Option<u32>,
    },
    /// Check the relations and irreducibility of a module file.
    Check { file: PathBuf },
}

/// Exit status of a successful run: all checks passed or not.
enum Status {
    Pass,
    Fail,
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("{} is not valid JSON: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(v).expect("values serialize");
    std::fs::write(path, text + "\n")
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn flag_scalar(field: &ScalarField, name: &str, text: &str) -> Result<Scalar, Error> {
    parse_scalar(field, text).map_err(|e| Error::Usage(format!("--{name}: {e}")))
}

fn status_of(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn report(field: &ScalarField, relations: &[Relation]) -> (Value, bool) {
    let outcomes: Vec<_> = relations.iter().map(Relation::check).collect();
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    let v = json!({
        "field": field.to_json(),
        "relations": outcomes,
        "checked": outcomes.len(),
        "failed": failed,
        "pass": failed == 0,
    });
    (v, failed == 0)
}

fn verify(args: &VerifyArgs) -> Result<(Value, Status), Error> {
    let (field, relations) = match &args.fixture {
        Some(path) => relations_from_fixture(&read_json(path)?)?,
        None => {
            let field = args.mode.field()?;
            let opts = VerifyOptions {
                selection: args.what,
                max_m: args.max_m,
                seed: args.seed,
                assoc_count: args.assoc_count,
            };
            let rels = collect_relations(&field, &opts)?;
            (field, rels)
        }
    };
    if let Some(path) = &args.write_fixture {
        write_json(path, &relations_to_fixture(&field, &relations))?;
    }
    let (v, pass) = report(&field, &relations);
    Ok((v, status_of(pass)))
}

fn rep_check(path: &Path) -> Result<(Value, Status), Error> {
    let rep = Representation::from_json(&read_json(path)?)?;
    let checks: Vec<Value> = rep
        .relation_checks()
        .into_iter()
        .map(|(name, pass)| json!({"relation": name, "pass": pass}))
        .collect();
    let relations = rep.verify_relations();
    let mut v = json!({
        "field": rep.field.to_json(),
        "dim": rep.dim(),
        "relations": checks,
        "relations_pass": relations,
        "irreducible": is_irreducible_burnside(&rep),
    });
    if relations && rep.field.root_data().is_some() {
        v["central_character"] = rep.central_character()?.to_json();
    }
    if let Some(spec) = &rep.spec {
        v["spec"] = spec.to_json();
    }
    Ok((v, status_of(relations)))
}

fn run(cli: &Cli) -> Result<(Value, Status), Error> {
    match &cli.command {
        Command::Rootdata { l } => {
            let rd = compute_root_data(*l)?;
            Ok((
                serde_json::to_value(rd).expect("serializable"),
                Status::Pass,
            ))
        }
        Command::Nf { mode, expr } => {
            let x = parse_element(&mode.field()?, expr)?;
            Ok((x.to_json(), Status::Pass))
        }
        Command::Cheb { family, m } => {
            let coeffs: Vec<Value> = integer_coeffs(&family.poly(*m))
                .iter()
                .map(|c| match i64::try_from(c) {
                    Ok(n) => json!(n),
                    Err(_) => json!(c.to_string()),
                })
                .collect();
            let v = json!({
                "family": family.to_string(),
                "m": m,
                "variable": family.variable(),
                "coeffs": coeffs,
            });
            Ok((v, Status::Pass))
        }
        Command::Verify(args) => verify(args),
        Command::Rep { command } => match command {
            RepCommand::Build {
                l,
                family,
                lambda,
                phi,
                eps,
                sigma,
                d,
            } => {
                let field = ScalarField::root(*l)?;
                if *family == RepFamily::Nilpotent && (phi.is_some() || eps.is_some()) {
                    return Err(Error::Usage(
                        "family nilpotent takes neither --phi nor --eps".into(),
                    ));
                }
                let param = match (family.is_plus(), phi, eps) {
                    (true, Some(p), _) => Some(flag_scalar(&field, "phi", p)?),
                    (false, _, Some(p)) => Some(flag_scalar(&field, "eps", p)?),
                    (_, None, None) => None,
                    (true, None, Some(_)) => {
                        return Err(Error::Usage(format!(
                            "family {family} takes --phi, not --eps"
                        )))
                    }
                    (false, Some(_), None) => {
                        return Err(Error::Usage(format!(
                            "family {family} takes --eps, not --phi"
                        )))
                    }
                };
                let spec = RepSpec {
                    family: *family,
                    l: *l,
                    lambda: flag_scalar(&field, "lambda", lambda)?,
                    param,
                    sigma: flag_scalar(&field, "sigma", sigma)?,
                    d: *d,
                };
                Ok((spec.build(&field)?.to_json(), Status::Pass))
            }
            RepCommand::Check { file } => rep_check(file),
        },
        Command::Classify { l } => {
            let c = classify(*l)?;
            let pass = c.consistent();
            Ok((c.to_json(), status_of(pass)))
        }
        Command::Eval { l, rep, expr } => {
            let rep = Representation::from_json(&read_json(rep)?)?;
            let file_l = rep.field.root_data().map(|r| r.l);
            if l.is_some() && *l != file_l {
                return Err(Error::Usage(format!(
                    "--l {} does not match the module's field",
                    l.unwrap()
                )));
            }
            let x = parse_element(&rep.field, expr)?;
            let m = rep.evaluate(&x)?;
            let mut v = json!({"dim": m.dim(), "matrix": m.to_json()});
            if let Some(c) = m.scalar_of() {
                v["scalar"] = json!(c.to_string());
            }
            Ok((v, Status::Pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, status)) => {
            let text = match cli.output {
                Output::Json => serde_json::to_string_pretty(&v).expect("values serialize"),
                Output::Pretty => render::pretty(&v),
            };
            println!("{text}");
            match status {
                Status::Pass => ExitCode::SUCCESS,
                Status::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
