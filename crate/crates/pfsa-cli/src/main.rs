//! Command-line driver: corpus in, automaton files and reports out.
//!
//! `build` turns a derivation corpus into the canonical automaton, `score`
//! prints an automaton's message length, `reduce` runs the sk-strings sweep
//! and beam search, `compare` does all of that for two languages side by
//! side, and `export` renders an automaton as a DOT graph. Every command is
//! deterministic: identical inputs and flags give byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pfsa::{
    build_canonical, encode, filter_allophonic, mml, parse_classification, parse_corpus,
    read_pfsa, reduce_pipeline, render_report, to_dot, write_pfsa, BeamParams, ComparisonReport,
    DotOptions, Pfsa, ReductionTrace, ReportCell, ReportRow, RuleClassification, DELIMITER,
};

#[derive(Parser)]
#[command(name = "pfsa", version, about = "Builds, scores, and minimises \
probabilistic finite state automata from rule-derivation corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the canonical automaton (prefix tree) from a corpus
    Build(BuildArgs),
    /// Print an automaton's message length in bits
    Score(ScoreArgs),
    /// Minimise an automaton by sk-strings and beam-search state merging
    Reduce(ReduceArgs),
    /// Build, score, and minimise two corpora side by side
    Compare(CompareArgs),
    /// Render an automaton as a DOT graph
    Export(ExportArgs),
}

/// Which rule tokens a corpus contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Drop ordinary applications of allophonic rules
    Diachronic,
    /// Keep every rule token
    Allophonic,
    /// Measure both ways (compare only)
    Both,
}

#[derive(Args)]
struct BuildArgs {
    /// Corpus file (tab-separated derivation records)
    #[arg(long)]
    corpus: PathBuf,
    /// Classification file (`rule-name TAB diachronic|allophonic`)
    #[arg(long)]
    classes: Option<PathBuf>,
    /// Which rule tokens to keep
    #[arg(long, value_enum, default_value_t = Mode::Allophonic)]
    mode: Mode,
    /// Where to write the automaton
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ScoreArgs {
    /// Automaton file
    file: PathBuf,
    /// Also print the per-state cost columns
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// Automaton file
    file: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    /// Where to write the reduced automaton; the merge trace goes to
    /// `<out>.trace`
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    /// Corpus file for one language; give exactly two
    #[arg(long)]
    corpus: Vec<PathBuf>,
    /// Classification file (`rule-name TAB diachronic|allophonic`)
    #[arg(long)]
    classes: Option<PathBuf>,
    /// Which measurements to run
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    #[command(flatten)]
    search: SearchArgs,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    /// Automaton file
    file: PathBuf,
    /// Drop arcs with a frequency below this
    #[arg(long, default_value_t = 0)]
    prune: u64,
    /// Write the DOT text here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// The minimisation knobs shared by `reduce` and `compare`.
#[derive(Args)]
struct SearchArgs {
    /// Smallest string length bound k in the sk-strings sweep
    #[arg(long, default_value_t = 1)]
    k_min: u32,
    /// Largest string length bound k in the sk-strings sweep
    #[arg(long, default_value_t = 10)]
    k_max: u32,
    /// Smallest agreement percentage s in the sk-strings sweep
    #[arg(long, default_value_t = 1)]
    s_min: u32,
    /// Largest agreement percentage s in the sk-strings sweep
    #[arg(long, default_value_t = 100)]
    s_max: u32,
    /// Beam width for the merge search
    #[arg(long, default_value_t = 200)]
    beam: usize,
    /// Stop the beam search after this many merge steps
    #[arg(long)]
    max_merges: Option<usize>,
}

impl SearchArgs {
    fn run(&self, p: &Pfsa) -> Result<(Pfsa, ReductionTrace)> {
        let beam = BeamParams::new(self.beam, self.max_merges)?;
        Ok(reduce_pipeline(
            p,
            self.k_min..=self.k_max,
            self.s_min..=self.s_max,
            beam,
        )?)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Score(args) => cmd_score(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Export(args) => cmd_export(args),
    }
}

fn cmd_build(args: BuildArgs) -> Result<()> {
    if args.mode == Mode::Both {
        bail!("build writes one automaton; choose --mode diachronic or --mode allophonic");
    }
    let classes = load_classes(args.classes.as_deref())?;
    let p = build_from_corpus(&args.corpus, &classes, args.mode == Mode::Diachronic)?;
    write_file(&args.out, &write_pfsa(&p))?;
    println!("{}", summary(&p)?);
    Ok(())
}

fn cmd_score(args: ScoreArgs) -> Result<()> {
    let p = read_automaton(&args.file)?;
    let breakdown = mml(&p)?;
    if args.verbose {
        println!(
            "{:>5}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}",
            "state", "structure", "arrangement", "symbols", "targets", "total"
        );
        for c in &breakdown.per_state {
            println!(
                "{:>5}  {:>12.6}  {:>12.6}  {:>12.6}  {:>12.6}  {:>12.6}",
                c.state,
                c.structure_bits,
                c.arrangement_bits,
                c.symbol_bits,
                c.target_bits,
                c.total()
            );
        }
        println!(
            "permutation discount: {:.6} bits",
            breakdown.permutation_discount_bits
        );
    }
    println!("MML {:.2} bits", breakdown.total_bits);
    Ok(())
}

fn cmd_reduce(args: ReduceArgs) -> Result<()> {
    let p = read_automaton(&args.file)?;
    let (reduced, trace) = args.search.run(&p)?;
    write_file(&args.out, &write_pfsa(&reduced))?;
    let mut lines = String::new();
    for e in &trace {
        lines.push_str(&format!(
            "{}: {} states, {:.2} bits\n",
            e.description, e.states, e.mml_bits
        ));
    }
    write_file(&trace_path(&args.out), &lines)?;
    println!("{}", summary(&reduced)?);
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    if args.corpus.len() != 2 {
        bail!(
            "compare needs exactly two --corpus files, got {}",
            args.corpus.len()
        );
    }
    let classes = load_classes(args.classes.as_deref())?;
    let rows: &[(bool, &str)] = match args.mode {
        Mode::Diachronic => &[(true, "Diachronic only")],
        Mode::Allophonic => &[(false, "Diachronic + Allophonic")],
        Mode::Both => &[(true, "Diachronic only"), (false, "Diachronic + Allophonic")],
    };

    let languages = args
        .corpus
        .iter()
        .map(|p| language_name(p))
        .collect::<Result<Vec<_>>>()?;
    let mut canonical = Vec::new();
    let mut reduced = Vec::new();
    for &(diachronic_only, label) in rows {
        let mut canonical_cells = Vec::new();
        let mut reduced_cells = Vec::new();
        for corpus in &args.corpus {
            let p = build_from_corpus(corpus, &classes, diachronic_only)?;
            canonical_cells.push(cell(&p)?);
            let (r, _) = args.search.run(&p)?;
            reduced_cells.push(cell(&r)?);
        }
        canonical.push(ReportRow {
            label: label.to_owned(),
            cells: canonical_cells,
        });
        reduced.push(ReportRow {
            label: label.to_owned(),
            cells: reduced_cells,
        });
    }

    let text = render_report(&ComparisonReport {
        languages,
        canonical,
        reduced,
    });
    emit(args.out.as_deref(), &text)
}

fn cmd_export(args: ExportArgs) -> Result<()> {
    let p = read_automaton(&args.file)?;
    let dot = to_dot(
        &p,
        &DotOptions {
            prune_threshold: args.prune,
            ..DotOptions::default()
        },
    );
    emit(args.out.as_deref(), &dot)
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_classes(path: Option<&Path>) -> Result<RuleClassification> {
    match path {
        Some(p) => Ok(parse_classification(&read_to_string(p)?)
            .with_context(|| format!("parsing {}", p.display()))?),
        None => Ok(RuleClassification::default()),
    }
}

fn build_from_corpus(
    corpus: &Path,
    classes: &RuleClassification,
    diachronic_only: bool,
) -> Result<Pfsa> {
    let derivations = parse_corpus(&read_to_string(corpus)?)
        .with_context(|| format!("parsing {}", corpus.display()))?;
    let derivations = if diachronic_only {
        filter_allophonic(&derivations, classes)
    } else {
        derivations
    };
    let (sequences, table) = encode(&derivations);
    build_canonical(&sequences, table)
        .with_context(|| format!("building automaton from {}", corpus.display()))
}

fn read_automaton(path: &Path) -> Result<Pfsa> {
    read_pfsa(&read_to_string(path)?)
        .with_context(|| format!("reading automaton {}", path.display()))
}

fn non_delimiter_arcs(p: &Pfsa) -> u64 {
    p.arcs().iter().filter(|a| a.symbol != DELIMITER).count() as u64
}

fn summary(p: &Pfsa) -> Result<String> {
    let bits = mml(p)?.total_bits;
    Ok(format!(
        "{} states, {} arcs (non-delimiter), MML {bits:.2} bits",
        p.state_count(),
        non_delimiter_arcs(p)
    ))
}

fn cell(p: &Pfsa) -> Result<ReportCell> {
    Ok(ReportCell {
        mml_bits: mml(p)?.total_bits,
        states: p.state_count(),
        arcs: non_delimiter_arcs(p),
    })
}

fn language_name(path: &Path) -> Result<String> {
    path.file_stem()
        .and_then(|s| s.to_str())
        .map(str::to_owned)
        .ok_or_else(|| anyhow!("cannot derive a language name from {}", path.display()))
}

fn trace_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".trace");
    PathBuf::from(name)
}
