use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use robin_young::cyclestats::{cumulant, moment_set, sample_cycle_count};
use robin_young::divisors::{ca_chain, ca_chain_csv};
use robin_young::exec::{self, Strategy};
use robin_young::harness::{
    self, campaign_appendix, campaign_identities, campaign_sigma_vs_a, mean_record, r3_ratios, CampaignReport, Config,
    IdentityScale, IdentitySuite, MAX_SWEEP,
};
use robin_young::limits::rho_table;
use robin_young::numeric::{render_significant, Exact, Linear, LogCombination, Precision};
use robin_young::series::{ar_direct, atilde_det, atilde_direct, atilde_moment, CoefficientFamily};
use robin_young::thresholds::{d_table, parse_factor, Convention, TargetMode};

/// Exit status for usage errors; 2 and 3 are taken by campaign verdicts.
const EXIT_USAGE: u8 = 64;
const EXIT_ERROR: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "robin-young",
    version,
    about = "High-precision checks around Robin's inequality"
)]
struct Cli {
    /// Config file (key = value); defaults to $ROBIN_YOUNG_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Directory for reports.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Limits rho_r and partial sums S_r.
    Rho {
        #[arg(long, default_value_t = 10)]
        rmax: u32,
        /// Precision override for this table.
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// sigma(n) <= A(n) for n <= max.
    SigmaCheck {
        #[arg(long, default_value_t = 5040)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
        /// Write the report here (.csv for CSV, JSON otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The appendix inequality and its lemma grids.
    AppendixCheck {
        #[arg(long, default_value_t = 5040)]
        max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hook sums A~_r(n) by each route.
    Atilde {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
        /// Exact log-combination arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// A_r(n) from partitions (exact, n <= 10).
    ArDirect {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: usize,
    },
    /// R_3(n) / A~_3(n) for 2 <= n <= nmax.
    R3Ratio {
        #[arg(long, default_value_t = 10)]
        nmax: u64,
    },
    /// Colossally abundant numbers.
    Ca {
        #[arg(long, default_value_t = 30)]
        count: usize,
    },
    /// Divisor-pair thresholds along the colossally abundant chain.
    DTable {
        #[arg(long, default_value_t = 30)]
        count: usize,
        /// Comma-separated target factors.
        #[arg(long, default_value = "1,1.5")]
        factors: String,
        #[arg(long, default_value_t = Convention::Exclusive)]
        convention: Convention,
        #[arg(long, default_value_t = TargetMode::NLogLogN)]
        target: TargetMode,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Cumulants and central moments of the cycle count C_n.
    CycleStats {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 4)]
        moments: u32,
        #[command(flatten)]
        arithmetic: Arithmetic,
    },
    /// Monte Carlo sample of C_n.
    SampleCycles {
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also print the histogram as CSV.
        #[arg(long)]
        histogram: bool,
    },
    /// Identity suites.
    IdentityCheck {
        #[arg(long, default_value = "all")]
        suite: IdentitySuite,
        /// Reduced grids.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every campaign; writes verify-all.json to the output directory.
    VerifyAll,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Arithmetic {
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    hp: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Lower,
    Canonical,
    Upper,
    All,
}

impl Family {
    fn families(self) -> Vec<CoefficientFamily> {
        match self {
            Family::Lower => vec![CoefficientFamily::Lower],
            Family::Canonical => vec![CoefficientFamily::Canonical],
            Family::Upper => vec![CoefficientFamily::Upper],
            Family::All => vec![
                CoefficientFamily::Lower,
                CoefficientFamily::Canonical,
                CoefficientFamily::Upper,
            ],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Det,
    Moment,
    Direct,
    All,
}

struct Ctx {
    config: Config,
    strategy: Strategy,
}

impl Ctx {
    fn precision(&self) -> Precision {
        self.config.precision
    }
}

fn load_config(cli: &Cli) -> Result<Config> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path).with_context(|| format!("reading {}", path.display()))?,
        None => Config::from_env().context("reading the config named by ROBIN_YOUNG_CONFIG")?,
    };
    if let Some(p) = cli.precision {
        config.precision = Precision::digits(p);
    }
    if let Some(w) = cli.workers {
        config.workers = w;
    }
    if let Some(dir) = &cli.out_dir {
        config.out_dir = dir.clone();
    }
    config.validate()?;
    Ok(config)
}

fn write_report(report: &CampaignReport, out: Option<&Path>) -> Result<()> {
    if let Some(path) = out {
        let text = if path.extension().is_some_and(|e| e == "csv") {
            report.to_csv()
        } else {
            report.to_json()?
        };
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn print_campaign(report: &CampaignReport, out: Option<&Path>) -> Result<i32> {
    for item in report.items.iter().filter(|i| i.verdict != harness::Verdict::Pass) {
        println!("{}: {}", item.verdict.label(), item.item);
    }
    println!("{}", report.summary_line());
    write_report(report, out)?;
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    let config = load_config(&cli)?;
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::Parallel
    };
    let ctx = Ctx { config, strategy };
    let workers = ctx.config.workers;
    exec::with_workers(workers, move || dispatch(cli.command, &ctx))
}

fn dispatch(command: Command, ctx: &Ctx) -> Result<i32> {
    let p = ctx.precision();
    let s = ctx.strategy;
    match command {
        Command::Rho { rmax, digits, format } => {
            let precision = digits.map_or(p, Precision::digits);
            let table = rho_table(rmax, precision)?;
            match format {
                Format::Csv => print!("{}", table.to_csv()),
                Format::Json => println!("{}", table.to_json()?),
                Format::Text => print!("{}", table.to_text()),
            }
            Ok(0)
        }
        Command::SigmaCheck { max, family, out } => {
            check_sweep(max)?;
            let report = campaign_sigma_vs_a(max, &family.families(), p, s)?;
            print_campaign(&report, out.as_deref())
        }
        Command::AppendixCheck { max, out } => {
            check_sweep(max)?;
            let report = campaign_appendix(max, p, s)?;
            print_campaign(&report, out.as_deref())
        }
        Command::Atilde { n, r, route, exact } => {
            let routes: &[(Route, &str)] = &[
                (Route::Det, "det"),
                (Route::Moment, "moment"),
                (Route::Direct, "direct"),
            ];
            println!("route,value");
            for &(which, name) in routes {
                if route != Route::All && route != which {
                    continue;
                }
                let value = if exact {
                    let v: LogCombination = match which {
                        Route::Det => atilde_det(r, n, &Exact)?,
                        Route::Moment => atilde_moment(r, n, &Exact)?,
                        _ => atilde_direct(r, n, &Exact)?,
                    };
                    v.evaluate(p)
                } else {
                    match which {
                        Route::Det => atilde_det(r, n, &p)?,
                        Route::Moment => atilde_moment(r, n, &p)?,
                        _ => atilde_direct(r, n, &p)?,
                    }
                };
                println!("{name},{}", value.to_sig(p.decimal_digits() as usize));
            }
            Ok(0)
        }
        Command::ArDirect { n, r } => {
            let v = ar_direct(r, n, &Exact)?;
            println!("exact,{v}");
            println!("value,{}", v.evaluate(p).to_sig(p.decimal_digits() as usize));
            Ok(0)
        }
        Command::R3Ratio { nmax } => {
            println!("n,ratio");
            for (n, ratio) in r3_ratios(nmax, p, s)? {
                println!("{n},{}", render_significant(&ratio, 15));
            }
            Ok(0)
        }
        Command::Ca { count } => {
            print!("{}", ca_chain_csv(&ca_chain(count)?.entries));
            Ok(0)
        }
        Command::DTable {
            count,
            factors,
            convention,
            target,
            format,
        } => {
            let factors = factors
                .split(',')
                .map(|f| parse_factor(f.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let table = d_table(count, &factors, convention, target, p, s)?;
            match format {
                TableFormat::Csv => print!("{}", table.to_csv()),
                TableFormat::Text => print!("{}", table.to_text()),
            }
            Ok(0)
        }
        Command::CycleStats { n, moments, arithmetic } => {
            println!("m,cumulant,central_moment");
            if arithmetic.exact {
                let set = moment_set(n, moments, &Exact)?;
                for m in 1..=moments {
                    println!("{m},{},{}", set.cumulant(m), set.central(m));
                }
            } else {
                let set = moment_set(n, moments, &p)?;
                let digits = p.decimal_digits() as usize;
                for m in 1..=moments {
                    println!(
                        "{m},{},{}",
                        set.cumulant(m).to_sig(digits),
                        set.central(m).to_sig(digits)
                    );
                }
            }
            Ok(0)
        }
        Command::SampleCycles {
            n,
            trials,
            seed,
            histogram,
        } => {
            let seed = seed.unwrap_or(ctx.config.seed);
            let sample = sample_cycle_count(n, trials, seed, s)?;
            let record = mean_record(&sample)?;
            let h = cumulant(n, 1, &Exact)?;
            println!("n,trials,seed,mean,variance,harmonic,band,verdict");
            println!(
                "{n},{trials},{seed},{:?},{:?},{:?},{},{}",
                sample.mean,
                sample.variance,
                h.to_f64(),
                record.values["band"],
                record.verdict.label()
            );
            if histogram {
                print!("{}", sample.histogram_csv());
            }
            let mut report = CampaignReport::new("sample", p);
            report.push(record);
            Ok(report.finish().exit_code())
        }
        Command::IdentityCheck { suite, quick, out } => {
            let scale = if quick {
                IdentityScale::quick()
            } else {
                IdentityScale::default()
            };
            let report = campaign_identities(suite, &scale, p, s)?;
            for item in &report.items {
                println!("{}: {}", item.verdict.label(), item.item);
            }
            println!("{}", report.summary_line());
            write_report(&report, out.as_deref())?;
            Ok(report.exit_code())
        }
        Command::VerifyAll => {
            let report = harness::verify_all(&ctx.config)?;
            for r in &report.reports {
                println!("{}", r.summary_line());
            }
            let path = report.write_to(&ctx.config.out_dir)?;
            println!("report: {}", path.display());
            Ok(report.exit_code())
        }
    }
}

fn check_sweep(max: u64) -> Result<()> {
    if max == 0 || max > MAX_SWEEP {
        bail!("--max must be in [1, {MAX_SWEEP}]");
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
