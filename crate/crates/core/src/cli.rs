//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::corpus::{
    analyze_corpus, classify, demo::materialize_demo, json_f6, load_manifest, read_results,
    write_results, ReferenceTable, ResultFormat,
};
use crate::error::{Error, PathContext, Result};
use crate::estimate::fit_text;
use crate::model::{ModelParams, DEFAULT_LAMBDA1_MIN};
use crate::plot::{plot_plane, PlotConfig};
use crate::spectrum::build_rank_spectrum;
use crate::synth::{generate_rank_spectrum, pseudo_corpus, SynthConfig, DEFAULT_ZIPF_EXPONENT};
use crate::textproc::{count_syllables, tokenize, tokenize_stream, RuleRegistry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wordlen",
    version,
    about = "Word-length model fitting and I-alpha plane analysis"
)]
pub struct Cli {
    /// Lower limit of lambda1.
    #[arg(long, global = true, default_value_t = DEFAULT_LAMBDA1_MIN)]
    pub lambda1_min: f64,

    /// Directory of extra `*.rules` packs (override builtins of the same code).
    #[arg(long, global = true)]
    pub rules_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateFormat {
    /// Rank-spectrum CSV.
    Spectrum,
    /// Plain-text pseudo-corpus.
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one text and print the result as JSON.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        lang: String,
        #[arg(long)]
        genre: Option<String>,
    },
    /// Print the rank spectrum of a text as CSV.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        lang: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit every text in a manifest.
    Batch {
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Nearest language and genre anchors for a point of the I-alpha plane.
    Classify {
        #[arg(long = "i", allow_negative_numbers = true)]
        i_lang: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Anchor overrides (`language.<code> = I`, `genre.<label> = alpha`).
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Synthetic corpus from model parameters.
    Generate {
        #[arg(long)]
        lambda0: f64,
        #[arg(long)]
        lambda1: f64,
        #[arg(long)]
        tokens: u64,
        #[arg(long)]
        types: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ZIPF_EXPONENT)]
        zipf: f64,
        #[arg(long, value_enum, default_value_t = GenerateFormat::Spectrum)]
        format: GenerateFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Syllable count of a word.
    Syllables {
        word: String,
        #[arg(long)]
        lang: String,
    },
    /// Render results in the I-alpha plane as SVG.
    Plot {
        results: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        ref_lang: Option<String>,
        #[arg(long)]
        ref_genre: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        i_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        i_max: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha_max: f64,
    },
    /// Write the bundled ten-text demo corpus and its manifest.
    Demo {
        #[arg(long)]
        out: PathBuf,
    },
}

/// Recursively rounds every float to 6 decimals.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json_f6(n.as_f64().unwrap()),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

fn registry(cli: &Cli) -> Result<RuleRegistry> {
    let mut reg = RuleRegistry::default();
    if let Some(dir) = &cli.rules_dir {
        reg.load_dir(dir)?;
    }
    Ok(reg)
}

fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).at(path)?;
    String::from_utf8(bytes).map_err(|_| Error::Encoding(path.to_path_buf()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).at(p)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let lambda1_min = cli.lambda1_min;
    match &cli.command {
        Command::Analyze { file, lang, genre } => {
            let reg = registry(cli)?;
            let rules = reg.get(lang)?;
            let text = read_utf8(file)?;
            let id = file
                .file_stem()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let fit = fit_text(
                &tokenize_stream(id.clone(), &text, rules),
                rules,
                lambda1_min,
            )?;
            if fit.unreliable {
                writeln!(
                    err,
                    "warning: {id}: only {} tokens, estimates unreliable",
                    fit.n_tokens
                )?;
            }
            let mut obj = Map::new();
            obj.insert("text_id".into(), Value::from(id));
            obj.insert("language".into(), Value::from(lang.clone()));
            if let Some(g) = genre {
                obj.insert("genre".into(), Value::from(g.clone()));
            }
            if let Value::Object(fields) = serde_json::to_value(&fit)? {
                obj.extend(fields);
            }
            serde_json::to_writer_pretty(&mut *out, &round_floats(Value::Object(obj)))?;
            writeln!(out)?;
        }
        Command::Spectrum {
            file,
            lang,
            out: path,
        } => {
            let reg = registry(cli)?;
            let rules = reg.get(lang)?;
            let text = read_utf8(file)?;
            let spec = build_rank_spectrum(&tokenize_stream("text", &text, rules), rules)?;
            let mut buf = Vec::new();
            spec.write_csv(&mut buf)?;
            emit(out, path.as_deref(), &buf)?;
        }
        Command::Batch {
            manifest,
            out: path,
            format,
        } => {
            let reg = registry(cli)?;
            let entries = load_manifest(manifest, &reg)?;
            let results = analyze_corpus(&entries, &reg, lambda1_min);
            for r in &results {
                match &r.outcome {
                    Err(e) => writeln!(err, "warning: {}: {e}", r.text_id)?,
                    Ok(m) if m.unreliable => writeln!(
                        err,
                        "warning: {}: only {} tokens, estimates unreliable",
                        r.text_id, m.n_tokens
                    )?,
                    Ok(_) => {}
                }
            }
            let format = match format {
                Some(OutputFormat::Csv) => ResultFormat::Csv,
                Some(OutputFormat::Json) => ResultFormat::Json,
                None => ResultFormat::from_path(path),
            };
            write_results(&results, path, format)?;
        }
        Command::Classify {
            i_lang,
            alpha,
            table,
        } => {
            let table = match table {
                Some(p) => ReferenceTable::load(p)?,
                None => ReferenceTable::default(),
            };
            let c = classify(*i_lang, *alpha, &table)?;
            writeln!(
                out,
                "{} {} {:.6} {:.6}",
                c.language, c.genre, c.language_distance, c.genre_distance
            )?;
            if c.language_ties.len() > 1 {
                writeln!(out, "language tie: {}", c.language_ties.join(" "))?;
            }
            if c.genre_ties.len() > 1 {
                writeln!(out, "genre tie: {}", c.genre_ties.join(" "))?;
            }
        }
        Command::Generate {
            lambda0,
            lambda1,
            tokens,
            types,
            seed,
            zipf,
            format,
            out: path,
        } => {
            let params = ModelParams::new(*lambda0, *lambda1, lambda1_min)?;
            let mut cfg = SynthConfig::new(params, *tokens, *types, *seed);
            cfg.zipf_exponent = *zipf;
            let spec = generate_rank_spectrum(&cfg)?;
            let bytes = match format {
                GenerateFormat::Spectrum => {
                    let mut buf = Vec::new();
                    spec.write_csv(&mut buf)?;
                    buf
                }
                GenerateFormat::Text => pseudo_corpus(&spec, *seed).into_bytes(),
            };
            emit(out, path.as_deref(), &bytes)?;
        }
        Command::Syllables { word, lang } => {
            let reg = registry(cli)?;
            let rules = reg.get(lang)?;
            let tokens = tokenize(word, rules);
            match tokens.as_slice() {
                [w] => writeln!(out, "{}", count_syllables(w, rules))?,
                _ => {
                    return Err(Error::domain(format!(
                        "`{word}` is not a single word under `{lang}` rules"
                    )))
                }
            }
        }
        Command::Plot {
            results,
            out: path,
            ref_lang,
            ref_genre,
            i_min,
            i_max,
            alpha_min,
            alpha_max,
        } => {
            let cfg = PlotConfig {
                results: read_results(results)?,
                ref_language: ref_lang.clone(),
                ref_genre: ref_genre.clone(),
                i_range: (*i_min, *i_max),
                alpha_range: (*alpha_min, *alpha_max),
            };
            let plot = plot_plane(&cfg)?;
            for w in &plot.warnings {
                writeln!(err, "warning: {w}")?;
            }
            fs::write(path, plot.svg).at(path)?;
        }
        Command::Demo { out: dir } => {
            let manifest = materialize_demo(dir, lambda1_min)?;
            writeln!(out, "{}", manifest.display())?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    if !(cli.lambda1_min.is_finite()) {
        let _ = writeln!(err, "error: --lambda1-min must be finite");
        return EXIT_USAGE;
    }
    match execute(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}
