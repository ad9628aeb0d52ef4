//! The `bellvar` command line.
//!
//! Every command renders its result into a string before anything is written,
//! so a failing command leaves no partial output. Numbers use the shortest
//! representation that parses back to the same `f64`, in every format.
//!
//! Formats per command (text / csv / json):
//!
//! - `build`: PauliSum text (`<coeff> <letters>` per line) / `coeff,letters`
//!   rows / `{"n", "expr", "terms": [{"coeff", "letters"}]}`.
//! - `verify`: `spectral_residual <v>` and `square_identity_residual <v>` lines /
//!   `n,spectral_residual,square_identity_residual` / the same keys as an object.
//! - `bounds`: `<key> <v>` lines / `bound,value,reference,gap` rows / an object
//!   holding the two bound reports.
//! - `lhv`: the value on the first line, then `assignment <signs>` / `value` /
//!   the bound report.
//! - `scan-ghz`: whitespace-separated table / `theta,measured,analytic,separable_bound`
//!   / an array of rows.
//! - `gisin`, `schmidt`: `<key> <v>` lines / one header and one row / an object.
//!
//! Exit status is 0 on success, 1 when a command fails (the message goes to
//! standard error on one line) and 2 when the arguments do not parse.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bell::{square_identity_residual, verify_spectral_decomposition, Expression};
use crate::bounds::{
    entangled_max, ghz_scan, gisin_witness, lhv_max, separable_max, OptimizerConfig,
};
use crate::error::{Error, Result};
use crate::linalg::{format_f64 as f, C64};
use crate::pauli::PauliSum;
use crate::schmidt::{canonical_two_qubit, schmidt_decompose};
use crate::state::StateVector;
use crate::states::random_state;

#[derive(Parser, Debug)]
#[command(name = "bellvar", version, about = "Mermin–Klyshko Bell operators and their bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of qubits [default: 3, or 2 for chsh, gisin and schmidt]
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Schmidt angle of the canonical two-qubit state (gisin, schmidt)
    #[arg(long, global = true)]
    theta: Option<f64>,

    #[arg(long, global = true, default_value_t = 181)]
    theta_steps: usize,

    /// chsh, variant, variant-op, mk or mk-squared
    #[arg(long, global = true, default_value = "variant")]
    expr: Expression,

    #[arg(long, global = true, default_value_t = 64)]
    restarts: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// PauliSum text (bounds, lhv) or state JSON (gisin, schmidt)
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Write the two-qubit state as JSON instead of the report (gisin, schmidt)
    #[arg(long, global = true)]
    emit_state: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Print the selected operator
    Build,
    /// Check the spectral form of Bₙ and the closed form of Bₙ²
    Verify,
    /// Separable and entangled maxima of the selected operator
    Bounds,
    /// Local-hidden-variable maximum by enumeration
    Lhv,
    /// ⟨Bₙ + Bₙ²⟩ along the generalized GHZ family
    ScanGhz,
    /// Violating settings for an entangled two-qubit state
    Gisin,
    /// Schmidt form of a two-qubit state
    Schmidt,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli).and_then(|out| write_output(&cli, &out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("bellvar: {}", e.to_string().replace('\n', " "));
            1
        }
    }
}

fn write_output(cli: &Cli, out: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, out)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let takes_input = matches!(
        cli.command,
        Command::Bounds | Command::Lhv | Command::Gisin | Command::Schmidt
    );
    if cli.input.is_some() && !takes_input {
        return Err(Error::Contract("--input is only read by bounds, lhv, gisin and schmidt".into()));
    }
    let two_qubit = matches!(cli.command, Command::Gisin | Command::Schmidt);
    if cli.emit_state && !two_qubit {
        return Err(Error::Contract("--emit-state is only accepted by gisin and schmidt".into()));
    }
    if cli.theta.is_some() && !two_qubit {
        return Err(Error::Contract("--theta is only accepted by gisin and schmidt".into()));
    }
    match cli.command {
        Command::Build => build(cli),
        Command::Verify => verify(cli),
        Command::Bounds => bounds(cli),
        Command::Lhv => lhv(cli),
        Command::ScanGhz => scan(cli),
        Command::Gisin | Command::Schmidt => two_qubit_report(cli),
    }
}

fn qubits(cli: &Cli) -> usize {
    cli.n.unwrap_or(match cli.command {
        Command::Gisin | Command::Schmidt => 2,
        _ if cli.expr == Expression::Chsh => 2,
        _ => 3,
    })
}

fn read_input(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize to JSON");
    s.push('\n');
    s
}

fn opt(v: Option<f64>) -> String {
    v.map(f).unwrap_or_default()
}

/// The operator named by `--expr`/`--n`, or the one read from `--input`,
/// with its known separable and entangled bounds.
fn operator(cli: &Cli) -> Result<(PauliSum, Option<f64>, Option<f64>)> {
    if let Some(path) = &cli.input {
        return Ok((PauliSum::from_text(&read_input(path)?)?, None, None));
    }
    let n = qubits(cli);
    Ok((
        cli.expr.operator(n)?,
        cli.expr.separable_bound(n),
        cli.expr.entangled_bound(n),
    ))
}

fn build(cli: &Cli) -> Result<String> {
    let n = qubits(cli);
    let op = cli.expr.operator(n)?;
    let text = op.to_text()?;
    Ok(match cli.format {
        Format::Text => text,
        Format::Csv => {
            let mut out = String::from("coeff,letters\n");
            for (p, c) in op.iter() {
                writeln!(out, "{},{p}", f(c.re)).unwrap();
            }
            out
        }
        Format::Json => {
            let terms: Vec<_> = op
                .iter()
                .map(|(p, c)| json!({ "coeff": c.re, "letters": p.to_string() }))
                .collect();
            json_text(&json!({ "n": n, "expr": cli.expr, "terms": terms }))
        }
    })
}

fn verify(cli: &Cli) -> Result<String> {
    let n = qubits(cli);
    let spectral = verify_spectral_decomposition(n)?;
    let square = square_identity_residual(n)?;
    Ok(match cli.format {
        Format::Text => format!(
            "spectral_residual {}\nsquare_identity_residual {}\n",
            f(spectral.residual),
            f(square)
        ),
        Format::Csv => format!(
            "n,spectral_residual,square_identity_residual\n{n},{},{}\n",
            f(spectral.residual),
            f(square)
        ),
        Format::Json => json_text(&json!({
            "n": n,
            "spectral_residual": spectral.residual,
            "square_identity_residual": square,
        })),
    })
}

fn bounds(cli: &Cli) -> Result<String> {
    let (op, sep_ref, ent_ref) = operator(cli)?;
    let cfg = OptimizerConfig {
        restarts: cli.restarts,
        seed: cli.seed,
        ..OptimizerConfig::default()
    };
    let separable = separable_max(&op, &cfg)?.with_reference(sep_ref);
    let entangled = entangled_max(&op)?.with_reference(ent_ref);
    Ok(match cli.format {
        Format::Text => format!(
            "separable_max {}\nseparable_bound {}\nentangled_max {}\nentangled_bound {}\n",
            f(separable.value),
            opt(separable.bound_reference),
            f(entangled.value),
            opt(entangled.bound_reference)
        ),
        Format::Csv => {
            let mut out = String::from("bound,value,reference,gap\n");
            for (name, r) in [("separable", &separable), ("entangled", &entangled)] {
                writeln!(out, "{name},{},{},{}", f(r.value), opt(r.bound_reference), opt(r.gap)).unwrap();
            }
            out
        }
        Format::Json => json_text(&json!({
            "n": op.n(),
            "separable": separable,
            "entangled": entangled,
        })),
    })
}

fn lhv(cli: &Cli) -> Result<String> {
    let (op, _, _) = operator(cli)?;
    let reference = if cli.input.is_none() {
        cli.expr.lhv_bound(qubits(cli))
    } else {
        None
    };
    let report = lhv_max(&op)?.with_reference(reference);
    Ok(match cli.format {
        Format::Text => {
            let mut out = format!("{}\n", f(report.value));
            if let crate::bounds::Argmax::Lhv { assignment } = &report.argmax {
                writeln!(out, "assignment {assignment}").unwrap();
            }
            out
        }
        Format::Csv => format!("value\n{}\n", f(report.value)),
        Format::Json => json_text(&report),
    })
}

fn scan(cli: &Cli) -> Result<String> {
    let rows = ghz_scan(qubits(cli), cli.theta_steps)?;
    Ok(match cli.format {
        Format::Json => json_text(&rows),
        Format::Csv | Format::Text => {
            let sep = if cli.format == Format::Csv { "," } else { " " };
            let mut out = ["theta", "measured", "analytic", "separable_bound"].join(sep);
            out.push('\n');
            for r in &rows {
                let cells = [r.theta, r.measured, r.analytic, r.separable_bound].map(f);
                out.push_str(&cells.join(sep));
                out.push('\n');
            }
            out
        }
    })
}

fn two_qubit_state(cli: &Cli) -> Result<StateVector> {
    if qubits(cli) != 2 {
        return Err(Error::Domain(format!("two-qubit command, got n = {}", qubits(cli))));
    }
    if let Some(path) = &cli.input {
        return StateVector::from_json(&read_input(path)?);
    }
    match cli.theta {
        Some(theta) if (0.0..=std::f64::consts::FRAC_PI_4).contains(&theta) => {
            Ok(canonical_two_qubit(theta))
        }
        Some(theta) => Err(Error::Domain(format!("theta = {theta} outside [0, pi/4]"))),
        None => random_state(2, cli.seed),
    }
}

fn complex_rows(u: &[[C64; 2]; 2]) -> String {
    u.iter()
        .map(|row| row.iter().map(|z| format!("{} {}", f(z.re), f(z.im))).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" ")
}

fn two_qubit_report(cli: &Cli) -> Result<String> {
    let psi = two_qubit_state(cli)?;
    if cli.emit_state {
        let mut s = psi.to_json();
        s.push('\n');
        return Ok(s);
    }
    if cli.command == Command::Schmidt {
        let form = schmidt_decompose(&psi)?;
        return Ok(match cli.format {
            Format::Text => format!(
                "theta {}\nu1 {}\nu2 {}\n",
                f(form.theta),
                complex_rows(&form.u1.0),
                complex_rows(&form.u2.0)
            ),
            Format::Csv => format!("theta\n{}\n", f(form.theta)),
            Format::Json => json_text(&form),
        });
    }
    let w = gisin_witness(&psi)?;
    Ok(match cli.format {
        Format::Text => format!(
            "theta {}\nchsh_variant_value {}\noperator_value {}\npredicted_operator_value {}\nviolates_separable_bound {}\n",
            f(w.theta),
            f(w.chsh_variant_value),
            f(w.operator_value),
            f(w.predicted_operator_value),
            w.violates_separable_bound
        ),
        Format::Csv => format!(
            "theta,chsh_variant_value,operator_value,predicted_operator_value,violates_separable_bound\n{},{},{},{},{}\n",
            f(w.theta),
            f(w.chsh_variant_value),
            f(w.operator_value),
            f(w.predicted_operator_value),
            w.violates_separable_bound
        ),
        Format::Json => json_text(&w),
    })
}
