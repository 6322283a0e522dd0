use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use schubert_atlas::oracle::{self, Conjecture, ConjectureReport, Verdict, DEFAULT_WORD_CAP};
use schubert_atlas::report::{self, SurveyRow};
use schubert_atlas::rootdata::{CartanType, RootDatum};
use schubert_atlas::schubert::{classify, SchubertError, SchubertInput};
use schubert_atlas::survey::survey;
use schubert_atlas::weyl::{ParabolicSubset, Word};

const EXIT_VALIDATION: u8 = 2;
const EXIT_INTERNAL: u8 = 4;

/// Exact classification of Schubert varieties in generalized flag varieties.
#[derive(Parser, Debug)]
#[command(name = "schubert-atlas", version)]
struct Cli {
    /// Worker threads; 0 lets rayon decide
    #[arg(long, global = true, env = "SCHUBERT_ATLAS_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Write output here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one X_{w,P}
    Classify {
        #[command(flatten)]
        target: Target,
        /// Reduced word, applied left to right, e.g. "2 1 2"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Replace w by its minimal coset representative
        #[arg(long)]
        coerce: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Classify every X_{w,P} with l(w) up to a bound
    Survey {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Scan the combinatorial conjectures over all of W
    Conjectures {
        #[arg(long = "type", value_name = "TYPE")]
        cartan_type: String,
        /// Conjecture ids, e.g. "2" or "1,3"; default: all that apply to the type
        #[arg(long)]
        which: Option<String>,
        #[arg(long)]
        max_length: Option<usize>,
        /// Reduced words enumerated per element before giving up
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        word_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// Cartan type, e.g. A4, D5, G2
    #[arg(long = "type", value_name = "TYPE")]
    cartan_type: String,
    /// Indices inside P (I_P); empty means the Borel
    #[arg(long, default_value = "")]
    parabolic: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Table,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: e.to_string(),
        }
    }
}

impl From<SchubertError> for Failure {
    fn from(e: SchubertError) -> Self {
        let code = match e {
            SchubertError::Internal(_) | SchubertError::Linalg(_) => EXIT_INTERNAL,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<report::ReportError> for Failure {
    fn from(e: report::ReportError) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn parse_target(t: &Target) -> Result<(RootDatum, ParabolicSubset), Failure> {
    let ct: CartanType = t.cartan_type.parse().map_err(Failure::validation)?;
    let p = ParabolicSubset::parse(ct.rank(), &t.parabolic).map_err(Failure::validation)?;
    if p.is_everything() {
        return Err(SchubertError::WholeGroup.into());
    }
    Ok((RootDatum::new(ct), p))
}

fn run_classify(target: &Target, word: &str, coerce: bool, format: Format) -> Outcome {
    let (d, p) = parse_target(target)?;
    let word: Word = word.parse().map_err(Failure::validation)?;
    word.check_range(d.rank()).map_err(Failure::validation)?;
    let input = SchubertInput::from_word(&d, p, &word, coerce)?;
    let r = classify(&input)?;
    let text = match format {
        Format::Json => report::to_json(&r)?,
        Format::Csv => report::rows_to_csv(&[SurveyRow::from(&r)])?,
        Format::Table => report::report_to_table(&r),
    };
    Ok((text, 0))
}

fn run_survey(target: &Target, max_length: Option<usize>, format: Format) -> Outcome {
    let (d, p) = parse_target(target)?;
    let rows = survey(&d, &p, max_length)?;
    let text = match format {
        Format::Json => report::to_json(&rows)?,
        Format::Csv => report::rows_to_csv(&rows)?,
        Format::Table => report::rows_to_table(&rows),
    };
    Ok((text, 0))
}

#[derive(Serialize)]
struct ConjectureSummary<'a> {
    conjecture: u8,
    name: &'a str,
    #[serde(rename = "type")]
    cartan_type: CartanType,
    elements_scanned: usize,
    verified_count: usize,
    counterexamples: usize,
    needs_review: usize,
    truncated: bool,
    verdict: Verdict,
}

fn run_conjectures(
    cartan_type: &str,
    which: Option<&str>,
    max_length: Option<usize>,
    word_cap: usize,
    format: Format,
) -> Outcome {
    let ct: CartanType = cartan_type.parse().map_err(Failure::validation)?;
    let d = RootDatum::new(ct);
    let selected: Vec<Conjecture> = match which {
        Some(s) => s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let id: u8 = t
                    .parse()
                    .map_err(|_| Failure::validation(format!("bad conjecture id {t:?}")))?;
                Conjecture::from_id(id).map_err(Failure::validation)
            })
            .collect::<Result<_, _>>()?,
        None => [1, 2, 3]
            .into_iter()
            .filter_map(|i| Conjecture::from_id(i).ok())
            .filter(|c| !c.needs_simply_laced() || ct.is_simply_laced())
            .collect(),
    };
    if selected.is_empty() {
        return Err(Failure::validation("no conjecture selected"));
    }
    let reports: Vec<ConjectureReport> = selected
        .iter()
        .map(|&c| oracle::scan(&d, c, max_length, word_cap).map_err(Failure::validation))
        .collect::<Result<_, _>>()?;
    let code = reports
        .iter()
        .map(|r| r.verdict)
        .max_by_key(|v| match v {
            Verdict::Verified => 0,
            Verdict::VerifiedUpToCap => 1,
            Verdict::Counterexample => 2,
        })
        .map_or(0, |v| v.exit_code() as u8);
    let summaries: Vec<ConjectureSummary> = reports
        .iter()
        .map(|r| ConjectureSummary {
            conjecture: r.conjecture,
            name: &r.name,
            cartan_type: r.cartan_type,
            elements_scanned: r.elements_scanned,
            verified_count: r.verified_count,
            counterexamples: r.counterexamples.len(),
            needs_review: r.needs_review.len(),
            truncated: r.truncated,
            verdict: r.verdict,
        })
        .collect();
    let text = match format {
        Format::Json => report::to_json(&reports)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for s in &summaries {
                w.serialize(s).map_err(report::ReportError::from)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| report::ReportError::from(csv::Error::from(e.into_error())))?;
            String::from_utf8(bytes).expect("csv writes utf-8")
        }
        Format::Table => summaries
            .iter()
            .map(|s| {
                format!(
                    "conjecture {} ({}) on {}: {:?}; scanned {}, verified {}, counterexamples {}, review {}, truncated {}\n",
                    s.conjecture,
                    s.name,
                    s.cartan_type,
                    s.verdict,
                    s.elements_scanned,
                    s.verified_count,
                    s.counterexamples,
                    s.needs_review,
                    s.truncated
                )
            })
            .collect(),
    };
    Ok((text, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let outcome = pool.install(|| match &cli.command {
        Command::Classify {
            target,
            word,
            coerce,
            format,
        } => run_classify(target, word, *coerce, *format),
        Command::Survey {
            target,
            max_length,
            format,
        } => run_survey(target, *max_length, *format),
        Command::Conjectures {
            cartan_type,
            which,
            max_length,
            word_cap,
            format,
        } => run_conjectures(cartan_type, which.as_deref(), *max_length, *word_cap, *format),
    });
    match outcome {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
