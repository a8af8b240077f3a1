//! Command-line driver for quml models.
//!
//! Exit codes: 0 clean, 1 findings, 2 syntax, usage or IO failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use quml_core::{
    analyze, explain, format, parse, render_class_diagram, render_sequence_diagram, Analysis, Diagnostic, Failure,
    RenderDoc,
};

pub mod report;

use report::{diagnostic_text, infer_report, infer_text, JsonDiagnostic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quml", version, about = "Check, infer and render quantum UML models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report diagnostics for one or more models
    Check {
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Treat warnings as errors for the exit code
        #[arg(long)]
        deny_warnings: bool,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print inferred classifications with provenance
    Infer {
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        file: PathBuf,
    },
    /// Write a class diagram (DOT) or sequence diagram (SVG)
    Render {
        /// `class` or `seq:<name>`
        #[arg(long, value_parser = parse_diagram)]
        diagram: Diagram,
        #[arg(long)]
        out: PathBuf,
        file: PathBuf,
    },
    /// Rewrite a model in canonical form
    Fmt {
        /// Only report whether the file is canonical
        #[arg(long)]
        check: bool,
        file: PathBuf,
    },
    /// Describe a diagnostic code
    Explain { code: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Class,
    Sequence(String),
}

fn parse_diagram(s: &str) -> Result<Diagram, String> {
    match s {
        "class" => Ok(Diagram::Class),
        _ => match s.strip_prefix("seq:") {
            Some(name) if !name.is_empty() => Ok(Diagram::Sequence(name.to_string())),
            _ => Err(format!("expected `class` or `seq:<name>`, got `{}`", s)),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            code
        }
    }
}

pub fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match cmd {
        Command::Check { format, deny_warnings, files } => check(&files, format, deny_warnings, out, err),
        Command::Infer { format, file } => infer(&file, format, out, err),
        Command::Render { diagram, out: path, file } => render(&file, &diagram, &path, err),
        Command::Fmt { check, file } => fmt(&file, check, err),
        Command::Explain { code } => match explain(&code) {
            Ok(text) => writeln!(out, "{}", text).map(|_| EXIT_OK),
            Err(e) => writeln!(err, "error: {}", e).map(|_| EXIT_FAILURE),
        },
    };
    res.unwrap_or(EXIT_FAILURE)
}

fn read_source(path: &Path, err: &mut dyn Write) -> std::io::Result<Option<String>> {
    match fs::read(path) {
        Ok(bytes) => match String::from_utf8(bytes) {
            Ok(s) => Ok(Some(s)),
            Err(_) => {
                writeln!(err, "error: {}: file is not valid UTF-8", path.display())?;
                Ok(None)
            }
        },
        Err(e) => {
            writeln!(err, "error: {}: {}", path.display(), e)?;
            Ok(None)
        }
    }
}

fn exit_for(diags: &[Diagnostic], deny_warnings: bool) -> i32 {
    if diags.iter().any(|d| d.code.is_syntax()) {
        EXIT_FAILURE
    } else if diags.iter().any(|d| d.is_error()) || (deny_warnings && !diags.is_empty()) {
        EXIT_FINDINGS
    } else {
        EXIT_OK
    }
}

fn print_diagnostics(
    out: &mut dyn Write,
    format: OutputFormat,
    found: &[(String, Vec<Diagnostic>)],
) -> std::io::Result<()> {
    match format {
        OutputFormat::Text => {
            for (file, diags) in found {
                for d in diags {
                    out.write_all(diagnostic_text(file, d).as_bytes())?;
                }
            }
        }
        OutputFormat::Json => {
            let all: Vec<JsonDiagnostic> = found
                .iter()
                .flat_map(|(file, diags)| diags.iter().map(move |d| JsonDiagnostic::new(file, d)))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &all)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn check(
    files: &[PathBuf],
    format: OutputFormat,
    deny_warnings: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let mut files = files.to_vec();
    files.sort();
    files.dedup();
    let mut code = EXIT_OK;
    let mut found = Vec::new();
    for path in &files {
        let Some(src) = read_source(path, err)? else {
            code = EXIT_FAILURE;
            continue;
        };
        let diags = quml_core::check(&src);
        code = code.max(exit_for(&diags, deny_warnings));
        found.push((path.display().to_string(), diags));
    }
    print_diagnostics(out, format, &found)?;
    Ok(code)
}

/// Analyzes one file. Prints the failure and returns its exit code when
/// there is no model.
fn load(path: &Path, src: &str, format: OutputFormat, out: &mut dyn Write) -> std::io::Result<Result<Analysis, i32>> {
    match analyze(src) {
        Ok(a) => Ok(Ok(a)),
        Err(f) => {
            let diags = f.diagnostics().to_vec();
            print_diagnostics(out, format, &[(path.display().to_string(), diags)])?;
            Ok(Err(match f {
                Failure::Syntax(_) => EXIT_FAILURE,
                Failure::Resolve(_) => EXIT_FINDINGS,
            }))
        }
    }
}

fn infer(path: &Path, format: OutputFormat, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let Some(src) = read_source(path, err)? else {
        return Ok(EXIT_FAILURE);
    };
    let a = match load(path, &src, format, out)? {
        Ok(a) => a,
        Err(code) => return Ok(code),
    };
    let report = infer_report(&a.model, &a.quantumness);
    match format {
        OutputFormat::Text => out.write_all(infer_text(&report).as_bytes())?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
    }
    Ok(exit_for(&a.diagnostics, false))
}

pub fn render_doc(a: &Analysis, diagram: &Diagram) -> Result<RenderDoc, String> {
    match diagram {
        Diagram::Class => Ok(render_class_diagram(&a.model, &a.quantumness)),
        Diagram::Sequence(name) => render_sequence_diagram(&a.model, &a.quantumness, name).map_err(|e| e.to_string()),
    }
}

fn render(path: &Path, diagram: &Diagram, dest: &Path, err: &mut dyn Write) -> std::io::Result<i32> {
    let Some(src) = read_source(path, err)? else {
        return Ok(EXIT_FAILURE);
    };
    let a = match load(path, &src, OutputFormat::Text, err)? {
        Ok(a) => a,
        Err(code) => return Ok(code),
    };
    let doc = match render_doc(&a, diagram) {
        Ok(doc) => doc,
        Err(e) => {
            writeln!(err, "error: {}: {}", path.display(), e)?;
            return Ok(EXIT_FAILURE);
        }
    };
    if let Err(e) = fs::write(dest, doc.content) {
        writeln!(err, "error: {}: {}", dest.display(), e)?;
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}

fn fmt(path: &Path, check: bool, err: &mut dyn Write) -> std::io::Result<i32> {
    let Some(src) = read_source(path, err)? else {
        return Ok(EXIT_FAILURE);
    };
    let parsed = match parse(&src) {
        Ok(p) => p,
        Err(diags) => {
            for d in &diags {
                err.write_all(diagnostic_text(&path.display().to_string(), d).as_bytes())?;
            }
            return Ok(EXIT_FAILURE);
        }
    };
    let text = format(&parsed);
    if text == src {
        return Ok(EXIT_OK);
    }
    if check {
        writeln!(err, "{}: not in canonical form", path.display())?;
        return Ok(EXIT_FINDINGS);
    }
    if let Err(e) = fs::write(path, text) {
        writeln!(err, "error: {}: {}", path.display(), e)?;
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}
