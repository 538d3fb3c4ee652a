use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use hopt::io::stats::Stats;
use hopt::io::{self, Format};
use hopt::verify::{count_checks, dense_unitary_capped, equiv_up_to_phase};
use hopt::{Circuit, Mode, Pass, Pipeline};

const VERIFY_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "hopt", version, about = "Hadamard-count optimizer for Clifford+Rz circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize a circuit file, or every circuit in a directory.
    Optimize {
        /// Circuit file, directory, or `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Merge rotations before the main pass.
        #[arg(long, value_enum)]
        pre: Option<PreArg>,
        #[arg(long, value_enum, default_value = "internal-h")]
        mode: PassArg,
        /// Reuse Clifford gate lists instead of re-synthesizing them.
        #[arg(long)]
        fast: bool,
        /// Output file, `-` for stdout, or a directory in batch mode.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the JSON statistics here instead of stdout.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Check the result against the input with dense unitaries.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 10)]
        max_qubits: usize,
    },
    /// Print gate counts as JSON.
    Stats {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Check that two circuits agree.
    Verify {
        original: PathBuf,
        optimized: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_qubits: usize,
        /// Skip the dense check silently.
        #[arg(long)]
        counts_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Qc,
    Qasm,
}

#[derive(Clone, Copy, ValueEnum)]
enum PreArg {
    Tmerge,
}

#[derive(Clone, Copy, ValueEnum)]
enum PassArg {
    InternalH,
    H,
    None,
}

enum Failure {
    Usage(String),
    Verify(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn format_of(path: &Path, arg: Option<FormatArg>) -> Format {
    match arg {
        Some(FormatArg::Qc) => Format::Qc,
        Some(FormatArg::Qasm) => Format::Qasm2,
        None => Format::from_path(path),
    }
}

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn load(path: &Path, format: Format) -> Result<Circuit, Failure> {
    let text = if is_stdio(path) {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    io::parse(&text, format).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn dense_equal(a: &Circuit, b: &Circuit, cap: usize) -> Option<bool> {
    let ua = dense_unitary_capped(a, cap).ok()?;
    let ub = dense_unitary_capped(b, cap).ok()?;
    Some(equiv_up_to_phase(&ua, &ub, VERIFY_TOL))
}

struct Job {
    pipeline: Pipeline,
    format: Option<FormatArg>,
    verify: bool,
    max_qubits: usize,
}

impl Job {
    fn run(&self, input: &Path, output: Option<&Path>) -> Result<Stats, Failure> {
        let c = load(input, format_of(input, self.format))?;
        if self.verify && c.n_qubits > self.max_qubits {
            return Err(usage(format!(
                "{}: {} qubits exceeds the verify cap of {}",
                input.display(),
                c.n_qubits,
                self.max_qubits
            )));
        }
        let start = Instant::now();
        let out = self.pipeline.run(&c).map_err(usage)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        if self.verify && dense_equal(&c, &out, self.max_qubits) != Some(true) {
            return Err(Failure::Verify(format!(
                "{}: optimized circuit is not equivalent",
                input.display()
            )));
        }
        if let Some(path) = output {
            let fmt = match path.extension() {
                Some(_) => Format::from_path(path),
                None => format_of(input, self.format),
            };
            let text = io::emit(&out, fmt);
            if is_stdio(path) {
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| usage(format!("stdout: {e}")))?;
            } else {
                fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
        }
        Ok(Stats::of(input.display().to_string(), &out, ms))
    }
}

fn write_stats(lines: &[String], path: Option<&Path>) -> Outcome {
    let mut text = lines.join("\n");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn is_circuit(p: &Path) -> bool {
    matches!(p.extension().and_then(|e| e.to_str()), Some("qc" | "qasm"))
}

fn batch(job: &Job, dir: &Path, out_dir: Option<&Path>, stats: Option<&Path>) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && is_circuit(p))
        .collect();
    files.sort();
    if let Some(d) = out_dir {
        fs::create_dir_all(d).map_err(|e| usage(format!("{}: {e}", d.display())))?;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("HOPT_THREADS").ok().and_then(|v| v.parse().ok()) {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(usage)?;
    let results: Vec<Result<Stats, Failure>> = pool.install(|| {
        files
            .par_iter()
            .map(|f| {
                let target = out_dir.map(|d| d.join(f.file_name().expect("file")));
                job.run(f, target.as_deref())
            })
            .collect()
    });
    let mut lines = Vec::new();
    let mut failure = None;
    for r in results {
        match r {
            Ok(s) => lines.push(s.to_json()),
            Err(Failure::Usage(m)) => {
                eprintln!("error: {m}");
                failure.get_or_insert(Failure::Usage(m.clone()));
            }
            Err(Failure::Verify(m)) => {
                eprintln!("verify failed: {m}");
                failure = Some(Failure::Verify(m));
            }
        }
    }
    write_stats(&lines, stats)?;
    failure.map_or(Ok(()), Err)
}

fn verify(original: &Path, optimized: &Path, max_qubits: usize, counts_only: bool) -> Outcome {
    let a = load(original, Format::from_path(original))?;
    let b = load(optimized, Format::from_path(optimized))?;
    let mut ok = true;
    if !counts_only {
        if a.n_qubits.max(b.n_qubits) > max_qubits {
            eprintln!(
                "warning: dense check skipped ({} qubits exceeds --max-qubits {max_qubits})",
                a.n_qubits.max(b.n_qubits)
            );
        } else {
            let eq = a.n_qubits == b.n_qubits && dense_equal(&a, &b, max_qubits) == Some(true);
            println!("{} dense", if eq { "PASS" } else { "FAIL" });
            ok &= eq;
        }
    }
    for c in count_checks(&a, &b).map_err(usage)? {
        println!("{} {} ({})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        ok &= c.pass;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify("circuits differ".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Optimize {
            input,
            format,
            pre,
            mode,
            fast,
            output,
            stats,
            verify,
            max_qubits,
        } => {
            let pipeline = Pipeline {
                tmerge: pre.is_some(),
                pass: match mode {
                    PassArg::InternalH => Pass::InternalH,
                    PassArg::H => Pass::H,
                    PassArg::None => Pass::None,
                },
                mode: if fast { Mode::Fast } else { Mode::Full },
            };
            let job = Job {
                pipeline,
                format,
                verify,
                max_qubits,
            };
            if input.is_dir() {
                batch(&job, &input, output.as_deref(), stats.as_deref())
            } else {
                let s = job.run(&input, output.as_deref())?;
                // keep stdout for the circuit when it is written there
                if stats.is_none() && output.as_deref().is_some_and(is_stdio) {
                    eprintln!("{}", s.to_json());
                    Ok(())
                } else {
                    write_stats(&[s.to_json()], stats.as_deref())
                }
            }
        }
        Command::Stats { input, format } => {
            let c = load(&input, format_of(&input, format))?;
            println!("{}", Stats::of(input.display().to_string(), &c, 0.0).to_json());
            Ok(())
        }
        Command::Verify {
            original,
            optimized,
            max_qubits,
            counts_only,
        } => verify(&original, &optimized, max_qubits, counts_only),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(m)) => {
            eprintln!("verify failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
