use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qbundle::compute::{self, Request};
use qbundle::report::SuiteReport;
use qbundle::suites::{self, Runner};
use qbundle::{format, CliError, EXAMPLES};

#[derive(Parser)]
#[command(name = "qbundle", version, about = "Exact identity checks for quantum principal bundles")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the registered examples, suites and quantities.
    List,
    /// Run identity suites on an example.
    Verify {
        example: String,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Word-length budget of truncated checks.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
        /// Multiplicity of the reflection example.
        #[arg(long)]
        kappa: Option<String>,
        /// Presentation file replacing the example, or connections and gauges to overlay.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Print a quantity in canonical form.
    Compute {
        quantity: String,
        #[arg(long)]
        example: String,
        #[arg(long)]
        kappa: Option<String>,
        #[arg(long)]
        connection: Option<String>,
        #[arg(long)]
        rep: Option<String>,
        /// Section values, comma separated.
        #[arg(long)]
        section: Option<String>,
        /// Second section of a pairing.
        #[arg(long)]
        with: Option<String>,
        /// Use the right structure.
        #[arg(long)]
        right: bool,
        #[arg(long)]
        arg: Option<String>,
    },
    /// Parse a presentation file and check everything it declares.
    CheckPresentation {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
}

fn emit(r: &SuiteReport, out: Output) -> ExitCode {
    match out {
        Output::Text => print!("{}", r.to_text()),
        Output::Json => println!("{}", r.to_json()),
    }
    if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::List => {
            println!("examples: {}", EXAMPLES.join(", "));
            println!("suites: {}, all", suites::SUITES.join(", "));
            println!("quantities: {}", compute::QUANTITIES.join(", "));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { example, suite, budget, format: out, kappa, fixture } => {
            let kappa = kappa.as_deref().map(qbundle::parse_scalar).transpose()?;
            let base = qbundle::example(&example, kappa.as_ref())?;
            let ex = match fixture {
                None => base,
                Some(path) => {
                    let src = std::fs::read_to_string(&path)?;
                    if format::has_bundle(&src)? {
                        format::load(&src)?.example().ok_or(CliError::MissingArgument("[bundle] section"))?
                    } else {
                        format::overlay(&src, &base)?
                    }
                }
            };
            let report = Runner::new(ex, budget, kappa).run(&suite)?;
            Ok(emit(&report, out))
        }
        Cmd::Compute { quantity, example, kappa, connection, rep, section, with, right, arg } => {
            let kappa = kappa.as_deref().map(qbundle::parse_scalar).transpose()?;
            let ex = qbundle::example(&example, kappa.as_ref())?;
            let req = Request { connection, rep, section, with, right, arg };
            println!("{}", compute::compute(&ex, &quantity, &req)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckPresentation { file, budget, format: out } => {
            let src = std::fs::read_to_string(&file)?;
            let doc = format::load(&src)?;
            let name = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(emit(&suites::check_document(&doc, &name, budget), out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
