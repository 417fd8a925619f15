mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use log::info;
use serde_json::json;

use textcat::lexdb;
use textcat::model::Model;
use textcat::pipeline::{self, Collection, RunResult};
use textcat::report;
use textcat::{ErrorKind, RunConfig};

use config::{CommonArgs, Format, Settings, UsageError};

#[derive(Parser)]
#[command(
    name = "textcat",
    version,
    about = "Text categorization experiments on Reuters-21578"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Collection statistics for the training and test splits
    Stats,
    /// Terms selected for each category by expected mutual information
    SelectTerms,
    /// Closeness of expansion terms to their categories
    Expand,
    /// Train category vectors and write the model
    Train {
        /// Model file to write (default: model.txt under --out, else stdout)
        #[arg(long, value_name = "FILE")]
        model: Option<PathBuf>,
    },
    /// Evaluate a saved model on the test split
    Evaluate {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
    },
    /// Train and evaluate in one go
    Run {
        /// Run all four arms: each algorithm with and without lexical initials
        #[arg(long)]
        compare: bool,
    },
}

/// Files written by this invocation, removed again if a later step fails.
#[derive(Default)]
struct Outputs {
    written: Vec<PathBuf>,
}

impl Outputs {
    fn write(&mut self, path: &Path, contents: &str) -> Result<()> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".partial");
        let tmp = PathBuf::from(tmp);
        let result = std::fs::write(&tmp, contents).and_then(|()| std::fs::rename(&tmp, path));
        if let Err(e) = result {
            let _ = std::fs::remove_file(&tmp);
            return Err(e).with_context(|| format!("writing {}", path.display()));
        }
        self.written.push(path.to_path_buf());
        info!("wrote {}", path.display());
        Ok(())
    }

    /// Sends `contents` to `<out>/<stem>.<ext>` or to stdout.
    fn emit(&mut self, settings: &Settings, stem: &str, contents: &str) -> Result<()> {
        match &settings.out {
            Some(dir) => {
                let ext = match settings.format {
                    Format::Text => "txt",
                    Format::Json => "json",
                    Format::Csv => "csv",
                };
                self.write(&dir.join(format!("{stem}.{ext}")), contents)
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(contents.as_bytes()).context("writing to stdout")?;
                stdout.flush().context("writing to stdout")
            }
        }
    }

    fn discard(self) {
        for p in self.written {
            let _ = std::fs::remove_file(p);
        }
    }
}

fn load_collection(run: &RunConfig) -> Result<Collection> {
    let stoplist = pipeline::load_stoplist(run.stoplist_path.as_deref())?;
    info!("reading {}", run.corpus_dir.display());
    let collection = Collection::load(&run.corpus_dir, stoplist)?;
    info!(
        "{} training and {} test documents, {} terms",
        collection.split.training.len(),
        collection.split.test.len(),
        collection.vocab.len()
    );
    Ok(collection)
}

fn render_runs(format: Format, stats: &textcat::corpus::CorpusStats, runs: &[RunResult]) -> String {
    match format {
        Format::Text => report::full_report(stats, runs),
        Format::Json => report::results_json(runs),
        Format::Csv => report::results_csv(runs),
    }
}

fn stats_csv(stats: &textcat::corpus::CorpusStats) -> String {
    let mut out = String::from(
        "subset,docs,word_occurrences,avg_words_per_doc,docs_with_topics,pct_with_topics,topic_occurrences,avg_topics_per_doc\n",
    );
    for (name, s) in [
        ("training", &stats.training),
        ("test", &stats.test),
        ("total", &stats.total),
    ] {
        out.push_str(&format!(
            "{name},{},{},{},{},{},{},{}\n",
            s.doc_count,
            s.word_occurrences,
            s.avg_words_per_doc,
            s.docs_with_topics,
            s.pct_with_topics,
            s.topic_occurrences,
            s.avg_topics_per_doc
        ));
    }
    out
}

fn cmd_stats(settings: &Settings, outputs: &mut Outputs) -> Result<()> {
    let collection = load_collection(&settings.run)?;
    let stats = collection.stats();
    let census = collection.census();
    let threshold = settings.run.threshold;
    let low = census.iter().filter(|(_, n, _)| *n < threshold).count();
    let text = match settings.format {
        Format::Text => {
            let mut s = String::from("Collection statistics\n\n");
            s.push_str(&stats.to_table());
            s.push_str(&format!(
                "\n{} categories in the category set, {} with test documents: {low} with fewer than {threshold} training documents, {} with {threshold} or more\n",
                collection.categories.len(),
                census.len(),
                census.len() - low
            ));
            if let (Some(min), Some(max)) = (
                census.iter().min_by_key(|(c, n, _)| (*n, c.clone())),
                census.iter().max_by_key(|(_, n, _)| *n),
            ) {
                s.push_str(&format!(
                    "training frequency from {} ({}) to {} ({})\n",
                    min.1, min.0, max.1, max.0
                ));
            }
            s
        }
        Format::Json => {
            let cats: Vec<_> = census
                .iter()
                .map(|(c, n, t)| json!({"category": c, "n_train": n, "n_test": t}))
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({"stats": stats, "categories": cats}))?;
            s.push('\n');
            s
        }
        Format::Csv => stats_csv(&stats),
    };
    outputs.emit(settings, "stats", &text)
}

fn cmd_select_terms(settings: &Settings, outputs: &mut Outputs) -> Result<()> {
    let collection = load_collection(&settings.run)?;
    let selection = collection.select_terms(settings.run.k_terms);
    info!("{} distinct terms selected", selection.terms.len());
    let text = match settings.format {
        Format::Json => {
            let cats: serde_json::Map<String, serde_json::Value> = selection
                .per_category
                .iter()
                .map(|(c, terms)| {
                    let list: Vec<_> = terms
                        .iter()
                        .map(|&(t, s)| json!({"term": collection.vocab.term(t), "score": s}))
                        .collect();
                    (c.clone(), json!(list))
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({"terms": selection.terms.len(), "categories": cats}))?;
            s.push('\n');
            s
        }
        Format::Text | Format::Csv => selection.to_csv(&collection.vocab),
    };
    outputs.emit(settings, "selection", &text)
}

fn cmd_expand(settings: &Settings, outputs: &mut Outputs) -> Result<()> {
    let path = settings
        .run
        .expansion_path
        .as_deref()
        .ok_or_else(|| UsageError("expand needs --expansion".into()))?;
    let entries = lexdb::load_expansion_file(path).map_err(textcat::Error::from)?;
    let collection = load_collection(&settings.run)?;
    let table = collection.closeness_table(&entries);
    let text = match settings.format {
        Format::Json => {
            let rows: Vec<_> = table
                .iter()
                .map(|e| json!({"category": e.category, "term": collection.vocab.term(e.term), "closeness": e.closeness}))
                .collect();
            let mut s = serde_json::to_string_pretty(&rows)?;
            s.push('\n');
            s
        }
        Format::Text | Format::Csv => lexdb::closeness_csv(&table, &collection.vocab),
    };
    outputs.emit(settings, "closeness", &text)
}

fn cmd_train(settings: &Settings, model_path: Option<&Path>, outputs: &mut Outputs) -> Result<()> {
    let expansion = pipeline::load_expansion(&settings.run)?;
    let collection = load_collection(&settings.run)?;
    let model = pipeline::train(&collection, &settings.run, expansion.as_deref())?;
    let text = model.to_text(&collection.vocab);
    match (model_path, &settings.out) {
        (Some(p), _) => outputs.write(p, &text),
        (None, Some(dir)) => outputs.write(&dir.join("model.txt"), &text),
        (None, None) => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("writing to stdout")
        }
    }
}

fn cmd_evaluate(settings: &Settings, model_path: &Path, outputs: &mut Outputs) -> Result<()> {
    let text = std::fs::read_to_string(model_path).map_err(|source| textcat::Error::Io {
        path: model_path.to_path_buf(),
        source,
    })?;
    let model = Model::parse(&text)?;
    let collection = load_collection(&settings.run)?;
    let evaluation = pipeline::evaluate(&collection, &model, settings.run.threshold)?;
    let config = RunConfig {
        algorithm: model.algorithm,
        use_lexdb: model.use_lexdb,
        k_terms: model.k_terms,
        params: model.params,
        ..settings.run.clone()
    };
    let result = RunResult {
        label: config.label(),
        config,
        model,
        evaluation,
    };
    let stats = collection.stats();
    outputs.emit(settings, "results", &render_runs(settings.format, &stats, &[result]))
}

fn cmd_run(settings: &Settings, compare: bool, outputs: &mut Outputs) -> Result<()> {
    let (stats, runs) = if compare {
        pipeline::run_arms(&settings.run)?
    } else {
        let (stats, run) = pipeline::run_experiment(&settings.run)?;
        (stats, vec![run])
    };
    for r in &runs {
        if let Some(m) = &r.evaluation.macro_curve {
            info!("{}: average precision {:.3}", r.label, m.average);
        }
    }
    outputs.emit(settings, "results", &render_runs(settings.format, &stats, &runs))
}

fn execute(cli: &Cli, outputs: &mut Outputs) -> Result<()> {
    let settings = cli.common.resolve()?;
    match &cli.command {
        Command::Stats => cmd_stats(&settings, outputs),
        Command::SelectTerms => cmd_select_terms(&settings, outputs),
        Command::Expand => cmd_expand(&settings, outputs),
        Command::Train { model } => cmd_train(&settings, model.as_deref(), outputs),
        Command::Evaluate { model } => cmd_evaluate(&settings, model, outputs),
        Command::Run { compare } => cmd_run(&settings, *compare, outputs),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    match err.downcast_ref::<textcat::Error>().map(textcat::Error::kind) {
        Some(ErrorKind::Usage) => 1,
        Some(ErrorKind::Internal) => 3,
        Some(ErrorKind::Data) => 2,
        // Output files that cannot be written.
        None if err.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 3,
    }
}

/// The error chain joined with `: `, skipping causes whose text an outer
/// message already includes.
fn describe(err: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in err.chain() {
        let msg = cause.to_string();
        if !out.contains(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
    }
    out
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut outputs = Outputs::default();
    match execute(&cli, &mut outputs) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            outputs.discard();
            eprintln!("error: {}", describe(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}
