//! `hcb` — harmonic chain barcodes of simplex-wise filtrations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use hcb_core::rational::format_preferring_decimal;
use hcb_core::{
    bottleneck_distance, certify_barcode, compute_harmonic_barcode, compute_ordinary_barcode,
    format_rational, lower_star_filtration, minimal_norm_check, ordinary_endpoints, parse_complex,
    parse_vertex_values, random_filtration, stability_experiment, Bar, Barcode, BarcodeFile,
    Diagram, Filtration, HcbError, OrdinaryBar, RandomComplexParams, TimestampMap,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "hcb", version, about = "Harmonic chain barcodes over exact rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Filtration file: one insertion per line, `<timestamp> <v0> <v1> ...`.
    #[arg(conflicts_with_all = ["complex", "values"])]
    filtration: Option<PathBuf>,
    /// Complex file of maximal simplices; lower-star mode with --values.
    #[arg(long, requires = "values")]
    complex: Option<PathBuf>,
    /// Vertex-function file `<vertex> <value>`; lower-star mode with --complex.
    #[arg(long, requires = "complex")]
    values: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the harmonic chain barcode with representatives.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// Emit the stable JSON schema instead of text lines.
        #[arg(long)]
        json: bool,
        /// Only report bars of this degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Include representatives in the output.
        #[arg(long)]
        with_representatives: bool,
        /// Certify the result against the brute-force oracle before printing.
        #[arg(long)]
        verify: bool,
    },
    /// Compute the ordinary persistence barcode (youngest pairing).
    Ordinary {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Compute both barcodes side by side and check the endpoint-multiset law.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Certify a barcode against the brute-force oracle (JSON report).
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Barcode JSON to certify instead of recomputing.
        #[arg(long)]
        barcode: Option<PathBuf>,
        /// Fuzz mode: seed for random instances (requires no input file).
        #[arg(long)]
        seed: Option<u64>,
        /// Fuzz mode: number of random instances.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Fuzz mode: truncate random filtrations to this many insertions.
        #[arg(long, default_value_t = 40)]
        max_m: usize,
        /// Fuzz mode: maximum simplex dimension.
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// Bottleneck distance between two barcode JSON files, per degree.
    Bottleneck {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check the sublevel-set stability bound for two vertex functions.
    Stability {
        /// Complex file of maximal simplices.
        #[arg(long)]
        complex: PathBuf,
        /// First vertex-function file.
        f_values: PathBuf,
        /// Second vertex-function file.
        g_values: PathBuf,
    },
    /// Random engine-vs-oracle verification runs.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 40)]
        max_m: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Random coboundary perturbations per representative.
        #[arg(long, default_value_t = 5)]
        minimal_norm_trials: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HCB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err.downcast_ref::<HcbError>() {
                Some(HcbError::InvariantViolation(_)) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn read_to_string(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))
}

impl InputArgs {
    fn load(&self) -> anyhow::Result<Filtration> {
        match (&self.filtration, &self.complex, &self.values) {
            (Some(path), None, None) => Ok(Filtration::parse(&read_to_string(path)?)?),
            (None, Some(cpath), Some(vpath)) => {
                let maximal = parse_complex(&read_to_string(cpath)?)?;
                let values = parse_vertex_values(&read_to_string(vpath)?)?;
                Ok(lower_star_filtration(&maximal, &values)?)
            }
            _ => anyhow::bail!("provide a filtration file, or --complex with --values"),
        }
    }
}

fn time_text(ts: &TimestampMap, index: usize) -> String {
    match ts.at(index) {
        Some(t) => format_preferring_decimal(t),
        None => "inf".to_string(),
    }
}

fn print_bar_text(bar: &Bar, ts: &TimestampMap, with_rep: bool) {
    let mut line = format!(
        "{} [{},{}] {} {}",
        bar.degree,
        bar.birth,
        bar.death,
        time_text(ts, bar.birth),
        time_text(ts, bar.death + 1),
    );
    if with_rep {
        let body: Vec<String> = bar
            .representative
            .iter()
            .map(|(i, c)| format!("{}:{}", i, format_preferring_decimal(c)))
            .collect();
        line.push_str(&format!(" rep:{{{}}}", body.join(",")));
    }
    println!("{line}");
}

fn filtered(barcode: &Barcode, degree: Option<usize>) -> Barcode {
    match degree {
        None => barcode.clone(),
        Some(p) => Barcode::new(
            barcode.m,
            barcode.bars_in_degree(p).cloned().collect::<Vec<_>>(),
        ),
    }
}

fn cmd_compute(
    input: &InputArgs,
    json: bool,
    degree: Option<usize>,
    with_representatives: bool,
    verify: bool,
) -> anyhow::Result<ExitCode> {
    let f = input.load()?;
    let barcode = compute_harmonic_barcode(&f)?;
    if verify {
        let report = certify_barcode(&f, &barcode);
        if !report.pass {
            eprintln!("certification FAILED: {:?}", report.failures);
            return Ok(ExitCode::from(3));
        }
    }
    let ts = f.timestamps();
    let shown = filtered(&barcode, degree);
    if json {
        let file = BarcodeFile::from_barcode(&shown, &ts, with_representatives);
        println!("{}", serde_json::to_string_pretty(&file)?);
    } else {
        for bar in &shown.bars {
            print_bar_text(bar, &ts, with_representatives);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn ordinary_to_barcode(bars: &[OrdinaryBar], m: usize) -> Barcode {
    Barcode::new(
        m,
        bars.iter()
            .map(|b| Bar {
                degree: b.degree,
                birth: b.birth,
                death: b.death,
                representative: hcb_core::SparseVector::zero(),
                death_kind: b.death_kind,
            })
            .collect(),
    )
}

fn cmd_ordinary(input: &InputArgs, json: bool, degree: Option<usize>) -> anyhow::Result<ExitCode> {
    let f = input.load()?;
    let bars = compute_ordinary_barcode(&f)?;
    let ts = f.timestamps();
    let shown = filtered(&ordinary_to_barcode(&bars, f.len()), degree);
    if json {
        let file = BarcodeFile::from_barcode(&shown, &ts, false);
        println!("{}", serde_json::to_string_pretty(&file)?);
    } else {
        for bar in &shown.bars {
            print_bar_text(bar, &ts, false);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(input: &InputArgs, json: bool) -> anyhow::Result<ExitCode> {
    let f = input.load()?;
    let harmonic = compute_harmonic_barcode(&f)?;
    let ordinary = compute_ordinary_barcode(&f)?;
    let top = harmonic
        .max_degree()
        .unwrap_or(0)
        .max(ordinary.iter().map(|b| b.degree).max().unwrap_or(0));
    let mut matches = true;
    for p in 0..=top {
        if harmonic.endpoints_in_degree(p) != ordinary_endpoints(&ordinary, p) {
            matches = false;
        }
    }
    let ts = f.timestamps();
    if json {
        let out = serde_json::json!({
            "harmonic": BarcodeFile::from_barcode(&harmonic, &ts, false),
            "ordinary": BarcodeFile::from_barcode(&ordinary_to_barcode(&ordinary, f.len()), &ts, false),
            "endpoint_multisets_match": matches,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for p in 0..=top {
            let h: Vec<String> = harmonic
                .bars_in_degree(p)
                .map(|b| format!("[{},{}]", b.birth, b.death))
                .collect();
            let o: Vec<String> = ordinary
                .iter()
                .filter(|b| b.degree == p)
                .map(|b| format!("[{},{}]", b.birth, b.death))
                .collect();
            println!("degree {p}");
            println!("  harmonic: {}", h.join(" "));
            println!("  ordinary: {}", o.join(" "));
        }
        println!(
            "endpoint multisets: {}",
            if matches { "match" } else { "MISMATCH" }
        );
    }
    if matches {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: endpoint multisets differ between the two barcodes");
        Ok(ExitCode::from(2))
    }
}

#[derive(serde::Serialize)]
struct VerifyInstanceReport {
    instance: String,
    m: usize,
    bars: usize,
    certified: bool,
    betti_consistent: bool,
    endpoints_match: bool,
    pass: bool,
    failures: Vec<String>,
}

fn verify_one(f: &Filtration, barcode: &Barcode, label: &str) -> VerifyInstanceReport {
    let report = certify_barcode(f, barcode);
    let mut failures: Vec<String> = report
        .failures
        .iter()
        .map(|fl| format!("{:?} degree {} bar [{},{}]: {}", fl.condition, fl.degree, fl.birth, fl.death, fl.detail))
        .collect();

    let max_dim = f.max_dim();
    let mut betti_consistent = true;
    for i in 0..=f.len() {
        for p in 0..=max_dim {
            let bars = barcode.bars_containing(p, i).count();
            let betti = hcb_core::betti_number(f, i, p);
            if bars != betti {
                betti_consistent = false;
                failures.push(format!(
                    "prefix {i} degree {p}: {bars} bars vs Betti number {betti}"
                ));
            }
        }
    }

    let mut endpoints_match = true;
    if let Ok(ordinary) = compute_ordinary_barcode(f) {
        for p in 0..=max_dim {
            if barcode.endpoints_in_degree(p) != ordinary_endpoints(&ordinary, p) {
                endpoints_match = false;
                failures.push(format!("degree {p}: endpoint multisets differ from ordinary"));
            }
        }
    }

    VerifyInstanceReport {
        instance: label.to_string(),
        m: f.len(),
        bars: barcode.bars.len(),
        certified: report.pass,
        betti_consistent,
        endpoints_match,
        pass: report.pass && betti_consistent && endpoints_match,
        failures,
    }
}

fn cmd_verify(
    input: &InputArgs,
    barcode_path: Option<&Path>,
    seed: Option<u64>,
    count: usize,
    max_m: usize,
    max_dim: usize,
) -> anyhow::Result<ExitCode> {
    let reports: Vec<VerifyInstanceReport> = if let Some(seed) = seed {
        fuzz_reports(seed, count, max_m, max_dim, 0)?
    } else {
        let f = input.load()?;
        let barcode = match barcode_path {
            Some(path) => {
                let file: BarcodeFile = serde_json::from_str(&read_to_string(path)?)?;
                file.to_barcode()?
            }
            None => compute_harmonic_barcode(&f)?,
        };
        vec![verify_one(&f, &barcode, "input")]
    };
    let pass = reports.iter().all(|r| r.pass);
    let out = serde_json::json!({ "pass": pass, "instances": reports });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn fuzz_reports(
    seed: u64,
    count: usize,
    max_m: usize,
    max_dim: usize,
    minimal_norm_trials: usize,
) -> anyhow::Result<Vec<VerifyInstanceReport>> {
    let reports: Vec<VerifyInstanceReport> = (0..count)
        .into_par_iter()
        .map(|k| {
            let instance_seed = seed.wrapping_add(k as u64);
            let mut params = RandomComplexParams::fuzz(max_m);
            params.max_dim = max_dim;
            let f = random_filtration(instance_seed, &params);
            let label = format!("seed {instance_seed}");
            match compute_harmonic_barcode(&f) {
                Err(e) => VerifyInstanceReport {
                    instance: label,
                    m: f.len(),
                    bars: 0,
                    certified: false,
                    betti_consistent: false,
                    endpoints_match: false,
                    pass: false,
                    failures: vec![format!("engine error: {e}")],
                },
                Ok(barcode) => {
                    let mut report = verify_one(&f, &barcode, &label);
                    if minimal_norm_trials > 0 {
                        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed ^ 0x6d6e);
                        for bar in &barcode.bars {
                            let ok = minimal_norm_check(
                                &f,
                                &bar.representative,
                                bar.degree,
                                bar.death,
                                minimal_norm_trials,
                                &mut rng,
                            );
                            if !ok {
                                report.pass = false;
                                report.failures.push(format!(
                                    "bar [{},{}] degree {}: minimal-norm violation",
                                    bar.birth, bar.death, bar.degree
                                ));
                            }
                        }
                    }
                    report
                }
            }
        })
        .collect();
    Ok(reports)
}

fn cmd_fuzz(
    seed: u64,
    count: usize,
    max_m: usize,
    max_dim: usize,
    minimal_norm_trials: usize,
    json: bool,
) -> anyhow::Result<ExitCode> {
    let reports = fuzz_reports(seed, count, max_m, max_dim, minimal_norm_trials)?;
    let pass = reports.iter().all(|r| r.pass);
    if json {
        let out = serde_json::json!({ "pass": pass, "instances": reports });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for r in &reports {
            println!(
                "{}: m={} bars={} {}",
                r.instance,
                r.m,
                r.bars,
                if r.pass { "PASS" } else { "FAIL" }
            );
            for f in &r.failures {
                println!("  {f}");
            }
        }
        println!("{}", if pass { "all instances PASS" } else { "FAILURES" });
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_bottleneck(
    left: &Path,
    right: &Path,
    degree: Option<usize>,
    json: bool,
) -> anyhow::Result<ExitCode> {
    let a: BarcodeFile = serde_json::from_str(&read_to_string(left)?)?;
    let b: BarcodeFile = serde_json::from_str(&read_to_string(right)?)?;
    let ia = a.real_intervals()?;
    let ib = b.real_intervals()?;
    let top = ia
        .iter()
        .chain(&ib)
        .map(|it| it.degree)
        .max()
        .unwrap_or(0);
    let degrees: Vec<usize> = match degree {
        Some(p) => vec![p],
        None => (0..=top).collect(),
    };
    let mut per_degree: Vec<(usize, Option<String>)> = Vec::new();
    let mut overall: Option<Option<String>> = None;
    for p in degrees {
        let da = Diagram::from_intervals(&ia, p);
        let db = Diagram::from_intervals(&ib, p);
        let d = bottleneck_distance(&da, &db);
        let text = d.as_ref().map(format_rational);
        overall = Some(match (overall.take().flatten(), &text) {
            (_, None) | (None, _) => None,
            (Some(best), Some(cur)) => {
                let bv = hcb_core::parse_rational(&best).unwrap();
                let cv = hcb_core::parse_rational(cur).unwrap();
                Some(if cv > bv { cur.clone() } else { best })
            }
        });
        per_degree.push((p, text));
    }
    let max = overall.flatten();
    if json {
        let out = serde_json::json!({
            "per_degree": per_degree
                .iter()
                .map(|(p, d)| serde_json::json!({"degree": p, "distance": d}))
                .collect::<Vec<_>>(),
            "max": max,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for (p, d) in &per_degree {
            println!("degree {p}: {}", d.clone().unwrap_or_else(|| "inf".into()));
        }
        println!("max: {}", max.unwrap_or_else(|| "inf".into()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stability(complex: &Path, f_values: &Path, g_values: &Path) -> anyhow::Result<ExitCode> {
    let maximal = parse_complex(&read_to_string(complex)?)?;
    let fv = parse_vertex_values(&read_to_string(f_values)?)?;
    let gv = parse_vertex_values(&read_to_string(g_values)?)?;
    let report = stability_experiment(&maximal, &fv, &gv)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.bound_holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Compute {
            input,
            json,
            degree,
            with_representatives,
            verify,
        } => cmd_compute(&input, json, degree, with_representatives, verify),
        Command::Ordinary {
            input,
            json,
            degree,
        } => cmd_ordinary(&input, json, degree),
        Command::Compare { input, json } => cmd_compare(&input, json),
        Command::Verify {
            input,
            barcode,
            seed,
            count,
            max_m,
            max_dim,
        } => cmd_verify(&input, barcode.as_deref(), seed, count, max_m, max_dim),
        Command::Bottleneck {
            left,
            right,
            degree,
            json,
        } => cmd_bottleneck(&left, &right, degree, json),
        Command::Stability {
            complex,
            f_values,
            g_values,
        } => cmd_stability(&complex, &f_values, &g_values),
        Command::Fuzz {
            seed,
            count,
            max_m,
            max_dim,
            minimal_norm_trials,
            json,
        } => cmd_fuzz(seed, count, max_m, max_dim, minimal_norm_trials, json),
    }
}
