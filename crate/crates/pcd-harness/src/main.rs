use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pcd_asymptotic::{
    asymptotic_cccd, asymptotic_general_left, asymptotic_general_right, asymptotic_uniform, rate_constants,
    AsymptoticResult,
};
use pcd_core::{build_digraph, domination_number, PcdParams};
use pcd_dist::{uniform_model, Side};
use pcd_exact::p_exact_full;
use pcd_general::p_numeric_general;
use pcd_harness::io::{fmt17, parse_r, read_model, read_points};
use pcd_harness::{mc_gamma_counts, verify_grid, GridSpec, HarnessError, McConfig, Result};
use pcd_multi::{asymptotic_multi, pmf_general_multi, pmf_uniform_multi, GammaPmf, GeneralMultiSpec};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pcd", version, about = "Domination number of proportional-edge proximity catch digraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AsySide {
    Left,
    Right,
    Cccd,
    Uniform,
}

#[derive(Subcommand)]
enum Cmd {
    /// Domination number of the digraph on the given points (JSON).
    Gamma {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, value_parser = parse_r)]
        r: f64,
        #[arg(long)]
        c: f64,
        /// Include a minimum dominating set.
        #[arg(long)]
        witness: bool,
    },
    /// Closed-form P(γ = 2) for uniform data (CSV: n,r,c,regime,p).
    ExactProb {
        #[arg(long, required_unless_present = "grid")]
        n: Option<u32>,
        #[arg(long, value_parser = parse_r, required_unless_present = "grid")]
        r: Option<f64>,
        #[arg(long, required_unless_present = "grid")]
        c: Option<f64>,
        /// JSON file with `ns`, `rs`, `cs` lists.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// P(γ = 2) for a general model by quadrature.
    NumericProb {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_r)]
        r: f64,
        #[arg(long)]
        c: f64,
    },
    /// Limiting P(γ = 2) as n grows (JSON {p, law, regime, rate}).
    Asymptotic {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_parser = parse_r)]
        r: f64,
        #[arg(long, value_enum, default_value = "uniform")]
        side: AsySide,
        /// Centrality, for the uniform side.
        #[arg(long)]
        c: Option<f64>,
        /// Sample size at which to report the rate constant (left/right).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Law of γ for n points and m reference points (CSV: q,probability).
    Pmf {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = parse_r)]
        r: f64,
        #[arg(long)]
        c: f64,
        /// Law of X; uniform when omitted.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Law of Y; uniform on the support of X when omitted.
        #[arg(long)]
        y_model: Option<PathBuf>,
        /// Emit the pmf, its moments and the limit law as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo histogram of γ (CSV: q,count,probability).
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Closed form, quadrature and simulation over a grid (CSV report).
    /// Exits with status 1 when any row fails.
    Verify {
        #[arg(long)]
        grid: PathBuf,
    },
}

fn exact_row(n: u32, r: f64, c: f64) -> Result<(String, f64)> {
    if n < 2 {
        return Ok(("single-point".into(), 0.0));
    }
    let e = p_exact_full(n, PcdParams::new(r, c)?)?;
    Ok((e.regime.label().into(), e.value))
}

fn asymptotic_json(res: &AsymptoticResult) -> serde_json::Value {
    json!({
        "p": res.limit_p,
        "law": res.law,
        "regime": res.regime.label(),
        "rate": {
            "order": res.order,
            "order_right": res.order_right,
            "exponent": res.rate_exponent,
            "delta_limit": res.delta_limit,
            "constant": res.rate,
        },
    })
}

fn pmf_csv<W: Write>(pmf: &GammaPmf, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["q", "probability"])?;
    for (q, p) in pmf.probs.iter().enumerate() {
        out.write_record([q.to_string(), fmt17(*p)])?;
    }
    out.flush()?;
    Ok(())
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    let stdout = std::io::stdout();
    match cmd {
        Cmd::Gamma { x, y, r, c, witness } => {
            let (xs, ys) = (read_points(&x)?, read_points(&y)?);
            let g = build_digraph(&xs, &ys, PcdParams::new(r, c)?)?;
            let out = domination_number(&g);
            let mut v = json!({ "gamma": out.gamma, "per_interval": out.per_interval });
            if witness {
                v["witness_set"] = json!(out.witness_set);
            }
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Cmd::ExactProb { n, r, c, grid } => {
            let points: Vec<(u32, f64, f64)> = match grid {
                Some(path) => {
                    let g: GridSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    let mut v = Vec::new();
                    for &n in &g.ns {
                        for &r in &g.rs {
                            for &c in &g.cs {
                                v.push((n, r, c));
                            }
                        }
                    }
                    v
                }
                None => vec![(n.unwrap(), r.unwrap(), c.unwrap())],
            };
            let mut out = csv::Writer::from_writer(stdout.lock());
            out.write_record(["n", "r", "c", "regime", "p"])?;
            for (n, r, c) in points {
                let (regime, p) = exact_row(n, r, c)?;
                out.write_record([n.to_string(), fmt17(r), fmt17(c), regime, fmt17(p)])?;
            }
            out.flush()?;
        }
        Cmd::NumericProb { model, n, r, c } => {
            let m = read_model(&model)?;
            let p = if n < 2 { 0.0 } else { p_numeric_general(&m, PcdParams::new(r, c)?, n)? };
            println!("{}", fmt17(p));
        }
        Cmd::Asymptotic { model, r, side, c, n } => {
            let model = model.map(|p| read_model(&p)).transpose()?;
            let need_model = || {
                model.clone().ok_or_else(|| HarnessError::BadConfig("--model is required for this side".into()))
            };
            let res = match side {
                AsySide::Uniform => {
                    if model.as_ref().is_some_and(|m| !m.is_uniform()) {
                        return Err(HarnessError::BadConfig("--side uniform needs a uniform model".into()));
                    }
                    let c = c.ok_or_else(|| HarnessError::BadConfig("--side uniform needs --c".into()))?;
                    asymptotic_uniform(PcdParams::new(r, c)?)?
                }
                AsySide::Left | AsySide::Right => {
                    let m = need_model()?;
                    let s = if matches!(side, AsySide::Left) { Side::Left } else { Side::Right };
                    match (n, s) {
                        (Some(n), _) => rate_constants(&m, r, s, n)?,
                        (None, Side::Left) => asymptotic_general_left(&m, r)?,
                        (None, Side::Right) => asymptotic_general_right(&m, r)?,
                    }
                }
                AsySide::Cccd => asymptotic_cccd(&need_model()?)?,
            };
            println!("{}", serde_json::to_string_pretty(&asymptotic_json(&res))?);
        }
        Cmd::Pmf { n, m, r, c, model, y_model, json } => {
            let params = PcdParams::new(r, c)?;
            let x = match model {
                Some(p) => read_model(&p)?,
                None => uniform_model(0.0, 1.0)?,
            };
            let y = match y_model {
                Some(p) => read_model(&p)?,
                None => {
                    let (a, b) = x.support();
                    uniform_model(a, b)?
                }
            };
            let same_uniform = x.is_uniform() && y.is_uniform() && x.support() == y.support();
            let pmf = if same_uniform {
                pmf_uniform_multi(n, m, params)?
            } else {
                pmf_general_multi(&x, &y, n, m, params, GeneralMultiSpec::default())?
            };
            if json {
                let limit = asymptotic_multi(m, params, &x).ok();
                let v = json!({
                    "n": n, "m": m, "r": r, "c": c,
                    "pmf": pmf.atoms(),
                    "mean": pmf.mean(),
                    "variance": pmf.variance(),
                    "limit": limit,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                pmf_csv(&pmf, stdout.lock())?;
            }
        }
        Cmd::Simulate { config } => {
            let cfg: McConfig = serde_json::from_str(&std::fs::read_to_string(config)?)?;
            let counts = mc_gamma_counts(&cfg, true)?;
            let mut out = csv::Writer::from_writer(stdout.lock());
            out.write_record(["q", "count", "probability"])?;
            for (q, k) in counts.iter().enumerate() {
                out.write_record([q.to_string(), k.to_string(), fmt17(*k as f64 / cfg.replicates as f64)])?;
            }
            out.flush()?;
        }
        Cmd::Verify { grid } => {
            let spec: GridSpec = serde_json::from_str(&std::fs::read_to_string(grid)?)?;
            let report = verify_grid(&spec)?;
            report.write_csv(stdout.lock())?;
            eprintln!("rows {} failures {} max |z| {:.3}", report.rows.len(), report.failures, report.max_abs_z);
            if report.failures > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
