use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use serde_json::Value;

use indepforge::harness::{
    error_report, generate_instance, report, run_document, Caps, GeneratorConfig, GeneratorKind,
    InstanceDocument, COMMANDS, ROUTES,
};
use indepforge::{Error, FieldSpec};

/// Exact decisions on independent sequences, torsion ratios and freeness
/// over Artinian local algebras.
///
/// Exit codes: 0 verdict computed (even when false), 1 invalid input,
/// 2 cap exceeded, 3 a theorem check failed.
#[derive(Parser, Debug)]
#[command(name = "indepforge", version)]
struct Cli {
    /// One of the instance commands, `run` for the document's own command,
    /// or `generate` to draw a random instance.
    command: String,
    /// Instance document (JSON).
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the report (or generated instance) here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Seed for `generate`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Process every `*.json` in this directory; reports go next to each
    /// instance as `<name>.report.json`, or into `--out` when it is a directory.
    #[arg(long, value_name = "DIR")]
    batch: Option<PathBuf>,
    /// Certificate route for `certify`.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(ROUTES))]
    route: Option<String>,
    /// Generator kind for `generate`.
    #[arg(long, default_value = "random-module")]
    kind: String,
    /// Field for `generate`.
    #[arg(long, default_value = "GF(101)")]
    field: String,
    #[arg(long, default_value_t = indepforge::algebra::DEFAULT_MAX_DIM)]
    max_dim: usize,
    #[arg(long, default_value_t = indepforge::koszul::DEFAULT_MAX_SEQ)]
    max_seq: usize,
    #[arg(long, default_value_t = indepforge::linkage::DEFAULT_MAX_DET)]
    max_det: usize,
}

impl Cli {
    fn caps(&self) -> Caps {
        Caps {
            max_dim: self.max_dim,
            max_seq: self.max_seq,
            max_det: self.max_det,
        }
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), Error> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("report");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => write_atomic(p, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn load(path: &Path) -> Result<InstanceDocument, Error> {
    let src =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    InstanceDocument::from_json(&src)
}

/// Applies the command-line overrides to a document.
fn prepare(cli: &Cli, mut doc: InstanceDocument) -> InstanceDocument {
    if cli.command != "run" {
        doc.command.name = cli.command.clone();
    }
    if let Some(r) = &cli.route {
        doc.command.params.route = Some(r.clone());
    }
    doc
}

/// The report text and exit code for one instance file.
fn process(cli: &Cli, path: &Path) -> (String, i32) {
    let doc = match load(path) {
        Ok(d) => prepare(cli, d),
        Err(e) => return (report::emit(&error_report(None, &e)), e.exit_code()),
    };
    match run_document(&doc, cli.caps()) {
        Ok(v) => (report::emit(&v), 0),
        Err(e) => (report::emit(&error_report(Some(&doc), &e)), e.exit_code()),
    }
}

fn generate(cli: &Cli) -> Result<i32, Error> {
    let kind: GeneratorKind = cli.kind.parse()?;
    let cfg = GeneratorConfig {
        seed: cli.seed,
        field: FieldSpec::parse(&cli.field)?,
        ..GeneratorConfig::default()
    };
    let doc = generate_instance(&cfg, kind)?;
    emit(cli.out.as_deref(), &doc.to_json())?;
    Ok(0)
}

fn batch(cli: &Cli, dir: &Path) -> Result<i32, Error> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json")
                && !p.to_string_lossy().ends_with(".report.json")
        })
        .collect();
    files.sort();
    let out_dir = cli.out.as_deref().filter(|p| p.is_dir());
    let codes = files
        .par_iter()
        .map(|f| {
            let (text, code) = process(cli, f);
            let stem = f.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
            let target = out_dir
                .unwrap_or_else(|| f.parent().unwrap_or(Path::new(".")))
                .join(format!("{stem}.report.json"));
            write_atomic(&target, &text).map(|_| code)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let summary: Value = serde_json::json!({
        "instances": files.len(),
        "exit_codes": codes,
    });
    eprintln!("{summary}");
    Ok(codes.into_iter().max().unwrap_or(0))
}

fn run(cli: &Cli) -> Result<i32, Error> {
    if cli.command == "generate" {
        return generate(cli);
    }
    if cli.command != "run" && !COMMANDS.contains(&cli.command.as_str()) {
        return Err(Error::validation(
            "",
            format!(
                "unknown command `{}`, expected run, generate or one of {}",
                cli.command,
                COMMANDS.join(", ")
            ),
        ));
    }
    if let Some(dir) = &cli.batch {
        return batch(cli, dir);
    }
    let Some(input) = &cli.input else {
        return Err(Error::validation(
            "",
            "`--in FILE` or `--batch DIR` is required",
        ));
    };
    let (text, code) = process(cli, input);
    emit(cli.out.as_deref(), &text)?;
    if code != 0 {
        if let Ok(v) = serde_json::from_str::<Value>(&text) {
            eprintln!(
                "error: {}",
                v["error"]["message"].as_str().unwrap_or("failed")
            );
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
