//! Command-line front end: generate, verify, execute, benchmark, trace,
//! check, and render data-oblivious sorting networks.
//!
//! Exit codes: 0 success, 1 verification or invariant-check failure,
//! 2 usage or I/O error.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use oblivnet::analysis::{run_all_checks, seeded_binary_input, trace};
use oblivnet::baselines::{
    batcher_network, bitonic_network, count_comparisons, pratt_network, CountRow,
};
use oblivnet::constants_report;
use oblivnet::frac::parse_ratio;
use oblivnet::halver::HalverSpec;
use oblivnet::network::Network;
use oblivnet::render::render_svg;
use oblivnet::zigzag::{emit_zigzag_network, zigzag_sort, ZigZagConfig, ZigZagRealization};

#[derive(Parser)]
#[command(
    name = "oblivnet",
    version,
    about = "Data-oblivious sorting networks: generation, verification, and instrumentation"
)]
struct Cli {
    /// Worker threads (default: OBLIVNET_JOBS, then all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Zigzag,
    Batcher,
    Bitonic,
    Pratt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HalverKind {
    Exact,
    Expander,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZigzagMode {
    Swap,
    Revcmp,
}

#[derive(Args, Clone, Copy)]
struct HalverArgs {
    /// Halver construction backing Reduce
    #[arg(long, value_enum, default_value_t = HalverKind::Exact)]
    halver: HalverKind,
    /// Expander regular degree
    #[arg(long, default_value_t = 8)]
    degree: u32,
    /// Expander matching seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl HalverArgs {
    fn spec(&self) -> HalverSpec {
        match self.halver {
            HalverKind::Exact => HalverSpec::Exact,
            HalverKind::Expander => HalverSpec::Expander {
                degree: self.degree,
                seed: self.seed,
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sorting network and write its text form
    Gen {
        /// Number of wires
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        algo: Algo,
        #[command(flatten)]
        halver: HalverArgs,
        /// Inner zig-zag realization
        #[arg(long = "zigzag-mode", value_enum, default_value_t = ZigzagMode::Swap)]
        zigzag_mode: ZigzagMode,
        /// Keep pure degree-k halver edge counts (no small-size fallbacks)
        #[arg(long)]
        counting: bool,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a network sorts every binary input
    Verify {
        /// Network file, `-` for stdin
        #[arg(long)]
        net: String,
        /// Widths up to this get the full 2^width sweep
        #[arg(long = "exhaustive-max", default_value_t = 24)]
        exhaustive_max: u32,
        /// Random inputs past the exhaustive limit
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sort a file of integers data-obliviously
    Sort {
        /// Input file, one decimal 64-bit integer per line
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Zigzag)]
        algo: Algo,
        #[command(flatten)]
        halver: HalverArgs,
    },
    /// Tabulate gate counts and depth across widths
    Bench {
        /// Comma-separated algorithms
        #[arg(long, default_value = "zigzag,batcher,bitonic,pratt")]
        algos: String,
        /// Comma-separated widths
        #[arg(long, default_value = "64,128,256,512,1024,2048,4096")]
        sizes: String,
        #[command(flatten)]
        halver: HalverArgs,
        #[arg(long)]
        counting: bool,
    },
    /// Run one instrumented sort and print its dirtiness ledger
    Trace {
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Seed for the random binary input
        #[arg(long = "input-seed", default_value_t = 0)]
        input_seed: u64,
        #[command(flatten)]
        halver: HalverArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the dirtiness invariants over many seeded inputs
    Check {
        #[arg(long, default_value_t = 1024)]
        n: usize,
        /// Number of seeded inputs (seeds 0..count)
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        #[arg(long, default_value = "1/12")]
        delta: String,
        #[arg(long, default_value = "1/32")]
        epsilon: String,
        #[arg(long, default_value = "1/180")]
        beta: String,
        #[command(flatten)]
        halver: HalverArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Render a network file as an SVG diagram
    Render {
        #[arg(long)]
        net: String,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Print the constant-factor comparison table
    Constants,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("OBLIVNET_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(jobs) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Gen {
            n,
            algo,
            halver,
            zigzag_mode,
            counting,
            out,
        } => {
            let net = build_network(algo, n, &halver, zigzag_mode, counting)?;
            let (comparators, swaps) = net.gate_counts();
            let stats = format!(
                "width {}\ncomparators {}\nswaps {}\ndepth {}\n",
                net.width(),
                comparators,
                swaps,
                net.depth()
            );
            match out {
                Some(path) => {
                    fs::write(&path, net.to_text())
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    print!("{stats}");
                }
                None => {
                    print!("{}", net.to_text());
                    eprint!("{stats}");
                }
            }
            Ok(true)
        }
        Command::Verify {
            net,
            exhaustive_max,
            samples,
            seed,
        } => {
            let network = read_network(&net)?;
            let report = network.verify_zero_one(exhaustive_max, samples, seed);
            println!("mode {}", report.mode);
            println!("inputs {}", report.inputs_checked);
            println!("result {}", if report.passed { "pass" } else { "fail" });
            if let Some(witness) = &report.witness {
                let bits: String = witness.iter().map(|b| char::from(b'0' + b)).collect();
                println!("witness {bits}");
            }
            Ok(report.passed)
        }
        Command::Sort {
            input,
            out,
            algo,
            halver,
        } => {
            let text =
                fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let mut values: Vec<i64> = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                let t = line.trim();
                if t.is_empty() && idx + 1 == text.lines().count() {
                    continue;
                }
                values.push(
                    t.parse()
                        .map_err(|_| format!("line {}: invalid integer `{t}`", idx + 1))?,
                );
            }
            let sorted = oblivious_sort(values, algo, &halver)?;
            let mut body = String::new();
            for v in &sorted {
                let _ = writeln!(body, "{v}");
            }
            fs::write(&out, body).map_err(|e| format!("{}: {e}", out.display()))?;
            Ok(true)
        }
        Command::Bench {
            algos,
            sizes,
            halver,
            counting,
        } => {
            let sizes: Vec<usize> = sizes
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| format!("bad size `{s}`")))
                .collect::<Result<_, _>>()?;
            let mut rows: Vec<CountRow> = Vec::new();
            for algo in algos.split(',') {
                let algo = algo.trim();
                for &n in &sizes {
                    let net = match algo {
                        "zigzag" => {
                            build_network(Algo::Zigzag, n, &halver, ZigzagMode::Swap, counting)?
                        }
                        "batcher" => batcher_network(n).map_err(|e| e.to_string())?,
                        "bitonic" => bitonic_network(n).map_err(|e| e.to_string())?,
                        "pratt" => pratt_network(n),
                        other => return Err(format!("unknown algorithm `{other}`")),
                    };
                    rows.extend(count_comparisons(algo, |_| net.clone(), &[n]));
                }
            }
            println!(
                "{:<9} {:>6} {:>12} {:>9} {:>8} {:>12} {:>14}",
                "algo", "n", "comparators", "swaps", "depth", "c/(n log n)", "c/(n log^2 n)"
            );
            for r in &rows {
                println!(
                    "{:<9} {:>6} {:>12} {:>9} {:>8} {:>12.3} {:>14.3}",
                    r.algo,
                    r.n,
                    r.comparators,
                    r.swaps,
                    r.depth,
                    r.coef_n_log_n(),
                    r.coef_n_log2_n()
                );
            }
            if counting && halver.halver == HalverKind::Expander {
                let c = f64::from(halver.degree) / 2.0;
                println!();
                println!(
                    "{:<9} {:>6} {:>12} {:>12} {:>14}",
                    "counting", "n", "measured", "50cn log2 n", "bound used"
                );
                for r in rows.iter().filter(|r| r.algo == "zigzag") {
                    let n = r.n as f64;
                    let bound = 50.0 * c * n * n.log2();
                    println!(
                        "{:<9} {:>6} {:>12} {:>12} {:>13.1}%",
                        "zigzag",
                        r.n,
                        r.comparators,
                        bound as u64,
                        100.0 * r.comparators as f64 / bound
                    );
                }
            }
            Ok(true)
        }
        Command::Trace {
            n,
            input_seed,
            halver,
            format,
        } => {
            let cfg = ZigZagConfig::new(n, halver.spec()).map_err(|e| e.to_string())?;
            let input = seeded_binary_input(n, input_seed);
            let mut t = trace(&input, &cfg).map_err(|e| e.to_string())?;
            t.seed = Some(input_seed);
            match format {
                Format::Text => {
                    println!(
                        "n {} K {} seed {} sorted {}",
                        t.n, t.crossover, input_seed, t.output_sorted
                    );
                    for lt in &t.levels {
                        println!(
                            "j={} n_j={} m0={} m1={} | split max D {} | zig max D {} | zag max D {}",
                            lt.level,
                            lt.n_j,
                            lt.m0,
                            lt.m1,
                            lt.d_split.iter().max().unwrap(),
                            lt.d_zig.iter().max().unwrap(),
                            lt.d_zag.iter().max().unwrap()
                        );
                    }
                }
                Format::Kv => {
                    println!(
                        "n={} crossover={} seed={} sorted={}",
                        t.n, t.crossover, input_seed, t.output_sorted
                    );
                    for lt in &t.levels {
                        println!("j={} n_j={} m0={} m1={}", lt.level, lt.n_j, lt.m0, lt.m1);
                        for (stage, values) in [
                            ("split", &lt.d_split),
                            ("zig", &lt.d_zig),
                            ("zag", &lt.d_zag),
                        ] {
                            for (i, &d) in values.iter().enumerate() {
                                if d > 0 {
                                    println!("j={} stage={stage} i={} D={d}", lt.level, i + 1);
                                }
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Check {
            n,
            seeds,
            delta,
            epsilon,
            beta,
            halver,
            format,
        } => {
            let delta = parse_ratio(&delta).map_err(|e| e.to_string())?;
            let epsilon = parse_ratio(&epsilon).map_err(|e| e.to_string())?;
            let beta = parse_ratio(&beta).map_err(|e| e.to_string())?;
            let cfg = ZigZagConfig::new(n, halver.spec()).map_err(|e| e.to_string())?;
            let results: Vec<Result<(u64, Vec<String>), String>> = (0..seeds)
                .into_par_iter()
                .map(|seed| {
                    let input = seeded_binary_input(n, seed);
                    let mut t = trace(&input, &cfg).map_err(|e| e.to_string())?;
                    t.seed = Some(seed);
                    let report =
                        run_all_checks(&t, delta, epsilon, beta).map_err(|e| e.to_string())?;
                    let mut failures: Vec<String> = match format {
                        Format::Text => report
                            .failures()
                            .map(|f| {
                                format!(
                                    "seed={seed} {} j={} i={} observed={} bound={}",
                                    f.check,
                                    f.level,
                                    f.index,
                                    f.observed,
                                    f.bound
                                        .to_f64()
                                        .map_or(f.bound.to_string(), |v| format!("{v:.6}"))
                                )
                            })
                            .collect(),
                        Format::Kv => report
                            .kv_lines()
                            .into_iter()
                            .filter(|l| l.contains("pass=0"))
                            .collect(),
                    };
                    if !t.output_sorted {
                        failures.push(format!("seed={seed} output unsorted"));
                    }
                    Ok((report.entries.len() as u64, failures))
                })
                .collect();
            let mut entries = 0u64;
            let mut failures: Vec<String> = Vec::new();
            for r in results {
                let (count, fails) = r?;
                entries += count;
                failures.extend(fails);
            }
            println!(
                "checked {seeds} traces at n={n} (delta={delta} epsilon={epsilon} beta={beta})"
            );
            println!("entries {entries} failures {}", failures.len());
            for line in failures.iter().take(50) {
                println!("{line}");
            }
            if failures.len() > 50 {
                println!("... {} more", failures.len() - 50);
            }
            println!(
                "result {}",
                if failures.is_empty() { "pass" } else { "fail" }
            );
            Ok(failures.is_empty())
        }
        Command::Render { net, svg } => {
            let network = read_network(&net)?;
            fs::write(&svg, render_svg(&network)).map_err(|e| format!("{}: {e}", svg.display()))?;
            Ok(true)
        }
        Command::Constants => {
            println!(
                "{:<13} {:<13} {:<10} {:>10} {:>10} {:>16}  note",
                "network", "source", "epsilon", "degree-k", "c=k/2", "coeff(n log2 n)"
            );
            for row in constants_report() {
                println!(
                    "{:<13} {:<13} {:<10} {:>10} {:>10} {:>16}  {}",
                    row.network,
                    row.degree_source,
                    row.epsilon,
                    format_num(row.degree_k),
                    format_num(row.c),
                    row.coefficient,
                    row.note.unwrap_or("")
                );
            }
            Ok(true)
        }
    }
}

fn format_num(v: f64) -> String {
    if (v - v.round()).abs() < 1e-6 {
        format!("{}", v.round() as u64)
    } else {
        format!("{v:.1}")
    }
}

fn build_network(
    algo: Algo,
    n: usize,
    halver: &HalverArgs,
    mode: ZigzagMode,
    counting: bool,
) -> Result<Network, String> {
    match algo {
        Algo::Zigzag => {
            let realization = match mode {
                ZigzagMode::Swap => ZigZagRealization::SwapGates,
                ZigzagMode::Revcmp => ZigZagRealization::ReverseComparators,
            };
            let cfg = ZigZagConfig::new(n, halver.spec())
                .map_err(|e| e.to_string())?
                .with_realization(realization)
                .with_counting_mode(counting)
                .map_err(|e| e.to_string())?;
            emit_zigzag_network(&cfg).map_err(|e| e.to_string())
        }
        Algo::Batcher => batcher_network(n).map_err(|e| e.to_string()),
        Algo::Bitonic => bitonic_network(n).map_err(|e| e.to_string()),
        Algo::Pratt => {
            if n == 0 {
                return Err("width must be at least 1".into());
            }
            Ok(pratt_network(n))
        }
    }
}

fn oblivious_sort(values: Vec<i64>, algo: Algo, halver: &HalverArgs) -> Result<Vec<i64>, String> {
    if values.is_empty() {
        return Ok(values);
    }
    let len = values.len();
    let width = len.next_power_of_two();
    let mut padded = values;
    padded.resize(width, i64::MAX);
    match algo {
        Algo::Zigzag => {
            let cfg = ZigZagConfig::new(width, halver.spec()).map_err(|e| e.to_string())?;
            zigzag_sort(&mut padded, &cfg).map_err(|e| e.to_string())?;
        }
        _ => {
            let net = build_network(algo, width, halver, ZigzagMode::Swap, false)?;
            net.apply_in_place(&mut padded).map_err(|e| e.to_string())?;
        }
    }
    padded.truncate(len);
    Ok(padded)
}

fn read_network(spec: &str) -> Result<Network, String> {
    let text = if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?
    };
    Network::parse_text(&text).map_err(|e| e.to_string())
}
