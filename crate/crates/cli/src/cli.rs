use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use qavg::gallery::{gallery_case, GALLERY_NAMES};
use qavg::hopf::compute_haar;
use qavg::{GaussRat, Report, Scalar, Witness, C64, DEFAULT_TOL};

use crate::document::{Backend, Document, Part};
use crate::error::{CliError, CliResult};
use crate::model::{scalar_to_doc, Model};
use crate::suites::{self, Options, Pipeline, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "qavg",
    version,
    about = "Average inner products on one-forms under finite quantum group coactions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit one JSON object per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Scalar backend; defaults to the document's.
    #[arg(long, global = true, value_enum)]
    pub backend: Option<Backend>,

    /// Comparison tolerance; defaults to the document's.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check algebra, Hopf and coaction axioms.
    Validate { file: PathBuf },
    /// Print the computed Haar functional.
    Haar { file: PathBuf },
    /// Write the document with its metric replaced by the averaged one.
    Average {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Random trials for the complete-positivity check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the averaged metric with the direct group average.
    Oracle { file: PathBuf },
    /// Rewrite a document in canonical form.
    Format {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the built-in example documents.
    Gallery {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_document(path: &Path) -> CliResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Document::parse(&text)
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    if let Command::Gallery { out_dir } = &cli.command {
        return match cli.backend.unwrap_or(Backend::Rational) {
            Backend::Rational => write_gallery::<GaussRat>(out_dir, cli.tol, out),
            Backend::Float => write_gallery::<C64>(out_dir, cli.tol, out),
        };
    }
    if let Command::Format { file, out: path } = &cli.command {
        let text = read_document(file)?.to_canonical_string();
        match path {
            Some(p) => write_file(p, &text)?,
            None => out.write_all(text.as_bytes()).map_err(io_out)?,
        }
        return Ok(0);
    }
    let file = match &cli.command {
        Command::Validate { file }
        | Command::Haar { file }
        | Command::Average { file, .. }
        | Command::Verify { file, .. }
        | Command::Oracle { file } => file,
        Command::Gallery { .. } | Command::Format { .. } => unreachable!(),
    };
    let doc = read_document(file)?;
    match cli.backend.unwrap_or(doc.scalar_backend) {
        Backend::Rational => execute_with::<GaussRat>(cli, &doc, out),
        Backend::Float => execute_with::<C64>(cli, &doc, out),
    }
}

fn execute_with<S: Scalar>(cli: &Cli, doc: &Document, out: &mut dyn Write) -> CliResult<i32> {
    let model = Model::<S>::from_document(doc, cli.tol)?;
    match &cli.command {
        Command::Validate { .. } => emit(&suites::validate(&model), cli.json, out),
        Command::Verify {
            suite, samples, seed, ..
        } => {
            let opts = Options {
                samples: *samples,
                seed: *seed,
            };
            emit(&suites::verify(&model, *suite, &opts)?, cli.json, out)
        }
        Command::Oracle { .. } => {
            let p = Pipeline::new(&model);
            emit(&suites::oracle_reports(&model, &p)?, cli.json, out)
        }
        Command::Haar { .. } => {
            let h = model
                .hopf
                .as_ref()
                .ok_or_else(|| CliError::Usage("document has no Hopf algebra".into()))?;
            let haar = compute_haar(h, model.tolerance)?;
            print_haar(h.algebra().labels(), &haar.coeffs, cli.json, out)?;
            Ok(0)
        }
        Command::Average { out: path, .. } => {
            let averaged = Pipeline::new(&model)
                .averaged
                .ok_or_else(|| CliError::Usage("document has no coaction, calculus and metric".into()))??;
            let mut result = model.clone();
            result.metric = Some(averaged);
            let text = result.to_document().to_canonical_string();
            match path {
                Some(p) => write_file(p, &text)?,
                None => out.write_all(text.as_bytes()).map_err(io_out)?,
            }
            Ok(0)
        }
        Command::Gallery { .. } | Command::Format { .. } => unreachable!(),
    }
}

fn write_gallery<S: Scalar>(dir: &Path, tol: Option<f64>, out: &mut dyn Write) -> CliResult<i32> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    for name in GALLERY_NAMES {
        let case = gallery_case::<S>(name, tol)?;
        let path = dir.join(format!("{name}.json"));
        write_file(
            &path,
            &Model::from_gallery(&case, tol).to_document().to_canonical_string(),
        )?;
        writeln!(out, "{}", path.display()).map_err(io_out)?;
    }
    Ok(0)
}

fn io_out(source: std::io::Error) -> CliError {
    CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn part_text(p: &Part) -> String {
    match p {
        Part::Exact(s) => s.clone(),
        Part::Float(x) => serde_json::Number::from_f64(*x).map_or_else(|| x.to_string(), |n| n.to_string()),
    }
}

fn print_haar<S: Scalar>(labels: &[String], coeffs: &[S], json: bool, out: &mut dyn Write) -> CliResult<()> {
    let docs: Vec<_> = coeffs.iter().map(scalar_to_doc).collect();
    if json {
        let value = serde_json::json!({ "labels": labels, "haar": docs });
        writeln!(out, "{value}").map_err(io_out)?;
    } else {
        for (label, d) in labels.iter().zip(&docs) {
            let im = part_text(&d.1);
            if im == "0" || im == "0.0" {
                writeln!(out, "{label}\t{}", part_text(&d.0)).map_err(io_out)?;
            } else {
                writeln!(out, "{label}\t{} + {}i", part_text(&d.0), im).map_err(io_out)?;
            }
        }
    }
    Ok(())
}

/// Writes the reports and returns 0 iff all pass.
pub fn emit(reports: &[Report], json: bool, out: &mut dyn Write) -> CliResult<i32> {
    for r in reports {
        let line = if json {
            serde_json::to_string(r).expect("reports serialize")
        } else {
            format_report(r)
        };
        writeln!(out, "{line}").map_err(io_out)?;
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    if !json {
        writeln!(out, "{passed}/{} checks passed", reports.len()).map_err(io_out)?;
    }
    Ok(if passed == reports.len() { 0 } else { 1 })
}

fn format_report(r: &Report) -> String {
    let mut line = format!(
        "{} {} residual={:.3e}",
        if r.pass { "PASS" } else { "FAIL" },
        r.check_name,
        r.residual
    );
    match &r.witness {
        Some(Witness::Value(v)) => line.push_str(&format!(" witness={v:.6e}")),
        Some(Witness::Vector(v)) => line.push_str(&format!(" witness={v:?}")),
        None => {}
    }
    if !r.notes.is_empty() {
        line.push_str(" (");
        line.push_str(&r.notes);
        line.push(')');
    }
    line
}
