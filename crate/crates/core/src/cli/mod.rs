//! Command-line front end. Exit codes: 0 when every check passes, 1 when at
//! least one comparison fails, 2 for usage errors and exceeded limits.

mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::homology::DEFAULT_REPORT_LIMIT;
use crate::partitions::{FamilySpec, DEFAULT_ELEMENT_CAP};

pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pointed-posets", version, about = "Build pointed partition posets and check their invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print progress and timings to standard error
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// A, A_fixed, A_extended, MA, MA_fixed, MA_interval, B, B_fixed,
    /// B_interval, beta, betaB or betaB_interval
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    i: Option<usize>,
    /// Refuse families with more elements than this
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, String> {
        FamilySpec::from_parts(&self.family, self.n, self.i).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the elements and cover relations of a family
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graded element counts, checked against generating functions for A and MA
    Counts {
        #[arg(long)]
        family: String,
        /// A single size; without it every size up to --max-n is listed
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Characteristic polynomial computed from the poset and from its closed form
    Charpoly {
        #[command(flatten)]
        family: FamilyArgs,
        /// Perturb the closed form; the command must then report a mismatch
        #[arg(long)]
        self_test_negative: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the closed forms of a family group (A, B, beta, MA, A_extended or all)
    Verify {
        #[arg(long, default_value = "all")]
        family: String,
        /// Defaults: A 6, A_extended 6, MA 5, B 4, beta 4
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
        /// Perturb the first closed form; the sweep must then fail
        #[arg(long)]
        self_test_negative: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Semimodularity and total semimodularity; exits 1 when the latter fails
    Semimodularity {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reduced homology of the proper part, of one interval, or of every interval
    Homology {
        #[command(flatten)]
        family: FamilyArgs,
        /// Lower end of a single interval (canonical element text)
        #[arg(long, requires = "top")]
        bottom: Option<String>,
        /// Upper end of a single interval
        #[arg(long, requires = "bottom")]
        top: Option<String>,
        /// Check every interval of rank at least two
        #[arg(long, conflicts_with = "bottom")]
        cohen_macaulay: bool,
        /// Largest poset accepted for the full interval report
        #[arg(long, default_value_t = DEFAULT_REPORT_LIMIT)]
        limit: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coproduct of the maximal pointed intervals, computed two ways
    Hopf {
        /// Show the full coproduct of a single generator
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Largest index for which coassociativity is checked
        #[arg(long, default_value_t = 5)]
        coassoc_max_n: usize,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the auxiliary summation identities
    Identities {
        /// One of induction_step, dominantA, usefulB, dominantB, convolution,
        /// facteur, Mdominant, f32_vanishing; all when omitted
        #[arg(long)]
        lemma: Option<String>,
        #[arg(long)]
        max_n: Option<usize>,
        /// Perturb the first selected identity; the command must then fail
        #[arg(long)]
        self_test_negative: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::Counts { .. } => "counts",
            Command::Charpoly { .. } => "charpoly",
            Command::Verify { .. } => "verify",
            Command::Semimodularity { .. } => "semimodularity",
            Command::Homology { .. } => "homology",
            Command::Hopf { .. } => "hopf",
            Command::Identities { .. } => "identities",
        }
    }

    fn output(&self) -> &OutputArgs {
        match self {
            Command::Enumerate { output, .. }
            | Command::Counts { output, .. }
            | Command::Charpoly { output, .. }
            | Command::Verify { output, .. }
            | Command::Semimodularity { output, .. }
            | Command::Homology { output, .. }
            | Command::Hopf { output, .. }
            | Command::Identities { output, .. } => output,
        }
    }

    fn execute(&self) -> Result<Report, String> {
        match self {
            Command::Enumerate { family, .. } => commands::enumerate(family.spec()?, family.cap),
            Command::Counts { family, n, i, max_n, cap, .. } => commands::counts(family, *n, *i, *max_n, *cap),
            Command::Charpoly { family, self_test_negative, .. } => {
                commands::charpoly(family.spec()?, family.cap, *self_test_negative)
            }
            Command::Verify { family, max_n, cap, self_test_negative, .. } => {
                commands::verify(family, *max_n, *cap, *self_test_negative)
            }
            Command::Semimodularity { family, .. } => commands::semimodularity(family.spec()?, family.cap),
            Command::Homology { family, bottom, top, cohen_macaulay, limit, .. } => {
                let spec = family.spec()?;
                match (bottom, top) {
                    (Some(b), Some(t)) => commands::homology_interval(spec, family.cap, b, t),
                    _ if *cohen_macaulay => commands::homology_cohen_macaulay(spec, family.cap, *limit),
                    _ => commands::homology_proper(spec, family.cap),
                }
            }
            Command::Hopf { n: Some(n), coassoc_max_n, cap, .. } => commands::hopf_single(*n, *coassoc_max_n, *cap),
            Command::Hopf { n: None, max_n, coassoc_max_n, cap, .. } => {
                commands::hopf_table(*max_n, *coassoc_max_n, *cap)
            }
            Command::Identities { lemma, max_n, self_test_negative, .. } => {
                commands::identities(lemma.as_deref(), *max_n, *self_test_negative)
            }
        }
    }
}

/// Parse `args` (including the program name), run the subcommand and return
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let started = Instant::now();
    let report = match cli.command.execute() {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if cli.verbose > 0 {
        eprintln!("{} finished in {:.2?}", cli.command.name(), started.elapsed());
    }
    let output = cli.command.output();
    let rendered = report.render(output.format);
    let written = match &output.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(rendered.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    }
}
