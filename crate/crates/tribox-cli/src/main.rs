//! Command-line surface for the tribox library.
//!
//! Exit codes: 0 success / verdict positive, 2 usage error, 3 negative
//! verdict (outside a polytope, failed reproduction), 4 numerical failure.

mod reproduce;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tribox::behavior::{mix, white_noise, Behavior};
use tribox::format::{self, Scenario};
use tribox::measures::{
    chsh_values, class99_value, discord_report, mermin_moduli, svetlichny_moduli,
};
use tribox::polytope::{
    membership_with, three_decomposition, Arithmetic, PolytopeError, SetName, VertexSet,
};
use tribox::quantum::{born_box, born_box_blocked, BlockStrategy};
use tribox::vertices::{
    class8_box, deterministic_box, mermin_box_mm, mermin_box_nmm, pr_box_ext, svetlichny_box,
    Pairing,
};

#[derive(Parser)]
#[command(
    name = "tribox",
    version,
    about = "Tripartite box calculus: canonical boxes, discord measures, polytope membership and Born-rule generation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    L,
    L2,
    R,
}

impl From<SetArg> for SetName {
    fn from(s: SetArg) -> SetName {
        match s {
            SetArg::L => SetName::L,
            SetArg::L2 => SetName::L2,
            SetArg::R => SetName::R,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct a canonical box or a mixture and write it as tribox-v1 JSON.
    Box {
        /// Canonical box spec: noise | det:BBBBBB | `pr:12|13|23:BBBB[B]` |
        /// sv:BBBB | mermin-mm:N | mermin-nmm:N | class8
        #[arg(long, conflicts_with = "mix")]
        canonical: Option<String>,
        /// Comma-separated weighted mixture, e.g. "0.5:sv:0000,0.5:sv:1110"
        #[arg(long)]
        mix: Option<String>,
        /// Also embed the 26 correlators in the output.
        #[arg(long)]
        correlators: bool,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the discord measures and named functionals of a box.
    Measure {
        #[arg(long, conflicts_with = "canonical")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        canonical: Option<String>,
        /// Emit the full discord report (all nine candidate values each).
        #[arg(long)]
        report: bool,
    },
    /// LP membership certificate for a vertex set. Exit 0 inside, 3 outside.
    Member {
        #[arg(long, value_enum, ignore_case = true)]
        set: SetArg,
        #[arg(long)]
        r#in: PathBuf,
        /// Exact rational pivoting (for dyadic inputs).
        #[arg(long)]
        exact: bool,
    },
    /// Three-way decomposition of a box in the Svetlichny-box polytope.
    Decompose {
        #[arg(long)]
        r#in: PathBuf,
    },
    /// Generate a box from a quantum state and measurement settings.
    Quantum {
        /// Scenario JSON file with {"state":...,"settings":...}.
        #[arg(long, conflicts_with_all = ["state", "settings"])]
        scenario: Option<PathBuf>,
        /// State family name (ghz, gghz, ghz_class, w, w_class, werner,
        /// bisep_w, ghz_w, cq, qc12_3, qc13_2, sixqubit_4sep,
        /// sixqubit_partial).
        #[arg(long)]
        state: Option<String>,
        /// Settings name (sd_xy, sd_xz, md_xy, md_xz, gghz_dependent,
        /// class99, mixed_p).
        #[arg(long)]
        settings: Option<String>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        theta3: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Settings parameter for gghz_dependent/class99 (defaults to the
        /// state's theta).
        #[arg(long)]
        settings_theta: Option<f64>,
        /// Settings parameter for mixed_p.
        #[arg(long)]
        settings_p: Option<f64>,
        /// Write the box to this path (stdout if omitted).
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Print the measures of the generated box instead of the table.
        #[arg(long)]
        measure: bool,
    },
    /// Run a named reproduction suite and print its table and verdict.
    Reproduce {
        /// ghz-class-sweep | w-class-sweep | werner-sweep | gghz-dependent |
        /// class99-sweep | monogamy-scan | cqqc-null | bisep-w | ghz-w-mix |
        /// appendix-sixqubit
        suite: String,
        #[arg(long, default_value_t = 15)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count for the randomized suites.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Md)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_bits(s: &str, n: usize) -> Result<Vec<u8>, String> {
    if s.len() != n || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(format!("expected {n} bits, got {s:?}"));
    }
    Ok(s.bytes().map(|b| b - b'0').collect())
}

fn parse_canonical(spec: &str) -> Result<Behavior, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["noise"] => Ok(white_noise()),
        ["class8"] => Ok(class8_box()),
        ["det", bits] => {
            let b = parse_bits(bits, 6)?;
            Ok(deterministic_box(b[0], b[1], b[2], b[3], b[4], b[5]))
        }
        ["sv", bits] => {
            let b = parse_bits(bits, 4)?;
            Ok(svetlichny_box(b[0], b[1], b[2], b[3]))
        }
        ["pr", pairing, bits] => {
            let pairing = match *pairing {
                "12" => Pairing::Ab,
                "13" => Pairing::Ac,
                "23" => Pairing::Bc,
                other => return Err(format!("unknown pairing {other:?}")),
            };
            let b = parse_bits(bits, bits.len())?;
            match b.len() {
                4 => Ok(pr_box_ext(pairing, b[0], b[1], b[2], b[3], 0)),
                5 => Ok(pr_box_ext(pairing, b[0], b[1], b[2], b[3], b[4])),
                n => Err(format!("pr wants 4 or 5 bits, got {n}")),
            }
        }
        ["mermin-mm", v] => {
            let v: usize = v.parse().map_err(|e| format!("variant: {e}"))?;
            mermin_box_mm(v).map_err(|e| e.to_string())
        }
        ["mermin-nmm", v] => {
            let v: usize = v.parse().map_err(|e| format!("variant: {e}"))?;
            mermin_box_nmm(v).map_err(|e| e.to_string())
        }
        _ => Err(format!("unrecognized canonical spec {spec:?}")),
    }
}

fn parse_mixture(spec: &str) -> Result<Behavior, String> {
    let mut terms: Vec<(f64, Behavior)> = Vec::new();
    for part in spec.split(',') {
        let (w, rest) = part
            .split_once(':')
            .ok_or_else(|| format!("mixture term {part:?} lacks a weight"))?;
        let w: f64 = w.parse().map_err(|e| format!("weight: {e}"))?;
        terms.push((w, parse_canonical(rest)?));
    }
    let refs: Vec<(f64, &Behavior)> = terms.iter().map(|(w, b)| (*w, b)).collect();
    mix(&refs).map_err(|e| e.to_string())
}

fn load_box(path: &PathBuf) -> Result<Behavior, String> {
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| format!("{}: {e}", path.display()))?;
    format::read_box_json(&text, false).map_err(|e| e.to_string())
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn measure_lines(b: &Behavior, full_report: bool) -> String {
    let rep = discord_report(b);
    if full_report {
        return serde_json::to_string_pretty(&rep).expect("serializable report");
    }
    let s = svetlichny_moduli(b);
    let m = mermin_moduli(b);
    let smax = s.iter().fold(0.0f64, |a, v| a.max(*v));
    let mmax = m.iter().fold(0.0f64, |a, v| a.max(*v));
    let chsh_max = Pairing::ALL
        .iter()
        .flat_map(|p| chsh_values(b, *p))
        .fold(0.0f64, |a, v| a.max(v.abs()));
    format!(
        "G = {:.12}\nQ = {:.12}\nmax |S| = {smax:.12}\nmax |M| = {mmax:.12}\nmax |CHSH| = {chsh_max:.12}\nclass99 = {:.12}",
        rep.g,
        rep.q,
        class99_value(b)
    )
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Box {
            canonical,
            mix: mix_spec,
            correlators,
            out,
        } => {
            let b = match (canonical, mix_spec) {
                (Some(spec), None) => parse_canonical(&spec)?,
                (None, Some(spec)) => parse_mixture(&spec)?,
                _ => return Err("provide exactly one of --canonical or --mix".into()),
            };
            write_output(&out, &format::write_box_json(&b, correlators))?;
            Ok(0)
        }
        Command::Measure {
            r#in,
            canonical,
            report,
        } => {
            let b = match (r#in, canonical) {
                (Some(path), None) => load_box(&path)?,
                (None, Some(spec)) => parse_canonical(&spec)?,
                _ => return Err("provide exactly one of --in or --canonical".into()),
            };
            println!("{}", measure_lines(&b, report));
            Ok(0)
        }
        Command::Member { set, r#in, exact } => {
            let b = load_box(&r#in)?;
            let vs = VertexSet::of(set.into());
            let mode = if exact {
                Arithmetic::Exact
            } else {
                Arithmetic::Float
            };
            match membership_with(&b, &vs, mode) {
                Ok(res) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "set": res.set,
                            "inside": res.inside,
                            "weights": res.weights,
                            "violation": res.violation,
                        }))
                        .expect("serializable result")
                    );
                    Ok(if res.inside { 0 } else { 3 })
                }
                Err(PolytopeError::Lp(e)) => {
                    eprintln!("numerical failure: {e}");
                    Ok(4)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Decompose { r#in } => {
            let b = load_box(&r#in)?;
            match three_decomposition(&b) {
                Ok(dec) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&dec).expect("serializable decomposition")
                    );
                    Ok(0)
                }
                Err(PolytopeError::NotInR) => {
                    eprintln!("outside the Svetlichny-box polytope");
                    Ok(3)
                }
                Err(PolytopeError::ResidualInvalid(e)) => {
                    eprintln!("residual invalid: {e}");
                    Ok(3)
                }
                Err(PolytopeError::Lp(e)) => {
                    eprintln!("numerical failure: {e}");
                    Ok(4)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Quantum {
            scenario,
            state,
            settings,
            theta,
            theta3,
            alpha,
            beta,
            gamma,
            p,
            q,
            seed,
            settings_theta,
            settings_p,
            emit,
            measure,
        } => {
            let sc = if let Some(path) = scenario {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                serde_json::from_str::<Scenario>(&text).map_err(|e| e.to_string())?
            } else {
                let family = state.ok_or("missing --state (or --scenario)")?;
                let name = settings.ok_or("missing --settings (or --scenario)")?;
                Scenario {
                    state: format::StateSpec {
                        family,
                        theta,
                        theta3,
                        alpha,
                        beta,
                        gamma,
                        p,
                        q,
                        seed,
                    },
                    settings: format::SettingsSpec {
                        name: Some(name),
                        theta: settings_theta.or(theta),
                        p: settings_p.or(p),
                        vectors: None,
                    },
                }
            };
            let rho = sc.state.build().map_err(|e| e.to_string())?;
            let built = if rho.qubits() == 6 {
                born_box_blocked(&rho, &BlockStrategy::sixqubit_xy())
            } else {
                let s = sc.settings.build().map_err(|e| e.to_string())?;
                born_box(&rho, &s)
            };
            let b = match built {
                Ok(b) => b,
                Err(e) => {
                    // A construction whose statistics fail validation is a
                    // negative verdict, not a usage error.
                    eprintln!("rejected: {e}");
                    return Ok(3);
                }
            };
            if measure {
                println!("{}", measure_lines(&b, false));
            }
            if emit.is_some() || !measure {
                write_output(&emit, &format::write_box_json(&b, true))?;
            }
            Ok(0)
        }
        Command::Reproduce {
            suite,
            grid,
            seed,
            samples,
            tol,
            format: fmt,
            out,
        } => {
            let report = reproduce::run_suite(&suite, grid, seed, samples, tol)?;
            let text = match fmt {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Md => report.to_markdown(),
            };
            write_output(&out, &text)?;
            Ok(if report.pass { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
