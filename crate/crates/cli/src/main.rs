//! Command-line front end: quantization, probabilities, convergence
//! sweeps, event sampling and loop-cancellation checks, emitted as CSV or
//! JSON for plotting and golden-file comparison.
//!
//! Output is byte-identical for identical inputs, flags and seed. Every
//! error exits nonzero with exactly one diagnostic line on stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use evcount::{
    born_probability, census, convergence_sweep, exact_event_probability, loop_phase_factor,
    mobius_superposition, product_event_probability, sample_events, Error, LoopParity,
    MinimumUnit, StateCensus, WaveDocument, WaveFunction,
};

#[derive(Parser)]
#[command(
    name = "evcount",
    version,
    about = "Event-counting quantum probability on a discrete torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit per-site state counts as CSV `x,modulus,count`.
    Quantize(InputArgs),
    /// Compare event probabilities against the Born weights as CSV.
    Prob(ProbArgs),
    /// Sweep strictly decreasing units and emit the convergence CSV.
    Converge(InputArgs),
    /// Draw uniform event samples and emit a JSON report.
    Sample(SampleArgs),
    /// Report loop phase factors k = 0..16 and their pairwise cancellation.
    Mobius(OutputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Wave-function document (JSON).
    #[arg(long)]
    input: PathBuf,

    /// Minimum unit as a decimal string; `converge` accepts a
    /// comma-separated, strictly decreasing list. Overrides the document.
    #[arg(long)]
    u: Option<String>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ProbArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Event counting mode; `product` pairs the census with itself.
    #[arg(long, value_enum, default_value_t = Mode::Stationary)]
    mode: Mode,

    /// Append the exact rational probability as an extra column.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Number of samples to draw.
    #[arg(long)]
    n: u64,

    /// 64-bit RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Stationary,
    Product,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => return report_usage_error(err),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn report_usage_error(err: clap::Error) -> ExitCode {
    use clap::error::ErrorKind;
    if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        print!("{err}");
        return ExitCode::SUCCESS;
    }
    // keep the diagnostic to a single line
    let text = err.to_string();
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("error: invalid arguments");
    eprintln!("{line}");
    ExitCode::from(2)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Quantize(args) => {
            let (wf, units) = load(&args)?;
            let unit = single_unit(units)?;
            let text = render_quantize(&wf, &unit)?;
            emit(&args.output, &text)
        }
        Command::Prob(args) => {
            let (wf, units) = load(&args.input)?;
            let unit = single_unit(units)?;
            let text = render_prob(&wf, &unit, args.mode, args.exact)?;
            emit(&args.input.output, &text)
        }
        Command::Converge(args) => {
            let (wf, units) = load(&args)?;
            let text = render_converge(&wf, &units)?;
            emit(&args.output, &text)
        }
        Command::Sample(args) => {
            let (wf, units) = load(&args.input)?;
            let unit = single_unit(units)?;
            let text = render_sample(&wf, &unit, args.n, args.seed)?;
            emit(&args.input.output, &text)
        }
        Command::Mobius(output) => emit(&output, &render_mobius(16)),
    }
}

fn load(args: &InputArgs) -> Result<(WaveFunction, Vec<MinimumUnit>)> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let doc = WaveDocument::from_json(&text)?;
    let wf = doc.wave_function()?;

    let units = match &args.u {
        Some(list) => list
            .split(',')
            .map(|s| MinimumUnit::from_decimal(s.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        None => match doc.unit() {
            Some(unit) => vec![unit.clone()],
            None => bail!("no minimum unit: pass --u or set \"u\" in the document"),
        },
    };
    Ok((wf, units))
}

fn single_unit(units: Vec<MinimumUnit>) -> Result<MinimumUnit> {
    match <[MinimumUnit; 1]>::try_from(units) {
        Ok([unit]) => Ok(unit),
        Err(_) => bail!("this command takes a single --u value, not a list"),
    }
}

fn quantized_census(wf: &WaveFunction, unit: &MinimumUnit) -> Result<StateCensus> {
    let census = census(wf, unit, 0)?;
    if census.is_all_zero() {
        return Err(Error::DegenerateDiscretization.into());
    }
    Ok(census)
}

fn render_quantize(wf: &WaveFunction, unit: &MinimumUnit) -> Result<String> {
    let census = quantized_census(wf, unit)?;
    let mut out = String::from("x,modulus,count\n");
    for (&x, &count) in census.counts() {
        out += &format!("{x},{},{count}\n", sig(wf.modulus()[x]));
    }
    Ok(out)
}

fn render_prob(wf: &WaveFunction, unit: &MinimumUnit, mode: Mode, exact: bool) -> Result<String> {
    let census = quantized_census(wf, unit)?;
    let counts = census.count_list();
    let event = match mode {
        Mode::Stationary => exact_event_probability(&counts)?,
        Mode::Product => product_event_probability(&counts, &counts)?,
    };
    let born = born_probability(wf)?.weights_f64();
    let exact_weights = event.exact_weights().expect("event probabilities are exact");

    let mut out = String::from(if exact {
        "x,p_event,p_born,abs_diff,p_event_exact\n"
    } else {
        "x,p_event,p_born,abs_diff\n"
    });
    for (&x, weight) in exact_weights {
        let p_event = event.weight(x).expect("weight exists");
        let p_born = born[&x];
        out += &format!("{x},{},{},{}", sig(p_event), sig(p_born), sig((p_event - p_born).abs()));
        if exact {
            out += &format!(",{}/{}", weight.numer(), weight.denom());
        }
        out.push('\n');
    }
    Ok(out)
}

fn render_converge(wf: &WaveFunction, units: &[MinimumUnit]) -> Result<String> {
    let records = convergence_sweep(wf, units)?;
    let mut out = String::from("u,linf_error,l1_error,total_states,total_events\n");
    for r in records {
        out += &format!(
            "{},{},{},{},{}\n",
            sig(r.u),
            sig(r.linf_error),
            sig(r.l1_error),
            r.total_states,
            r.total_events
        );
    }
    Ok(out)
}

fn render_sample(wf: &WaveFunction, unit: &MinimumUnit, n: u64, seed: u64) -> Result<String> {
    let census = quantized_census(wf, unit)?;
    let report = sample_events(&census, n, seed)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    Ok(text)
}

fn render_mobius(max_loops: u32) -> String {
    let mut out = format!("loop phase factors (k = 0..{max_loops})\n");
    for k in 0..=max_loops {
        out += &format!("k={k} factor={:+}\n", loop_phase_factor(LoopParity::new(k)));
    }
    out.push_str("pairwise cancellation\n");
    for k in 0..max_loops {
        let a = loop_phase_factor(LoopParity::new(k));
        let b = loop_phase_factor(LoopParity::new(k + 1));
        let verdict = if a + b == 0 { "cancelled" } else { "NOT CANCELLED" };
        out += &format!("k={k},{} sum={} {verdict}\n", k + 1, a + b);
    }
    out += &format!(
        "superposition of unit modulus over loops [1, 2]: {}\n",
        mobius_superposition(1.0, &[1, 2])
    );
    out
}

/// Render with 13 significant digits, stable across runs.
fn sig(x: f64) -> String {
    format!("{x:.12e}")
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
