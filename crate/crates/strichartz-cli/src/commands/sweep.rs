//! `strichartz knapp-sweep`: dyadic wave-packet sweeps driven by a config
//! file, emitting a per-sweep CSV and a JSON verdict summary.
//!
//! Config section:
//!
//! ```text
//! [sweep]
//! n          = 2
//! a          = 2
//! pairs      = 2:8              # q:p, whitespace separated
//! quantities = mixed angular:1 angular:0.5 radial omega
//! epsilons   = 1/8 1/16 1/32 1/64
//! alpha      = 1/4              # α for the necessity verdict
//! mollified  = true
//! time_nodes = 32
//! ```

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::json;
use strichartz::knapp::{
    epsilon_sweep, necessity_verdict, SweepConfig, SweepOutcome, SweepQuantity,
};
use strichartz::rational::Ratio;

use crate::config::ConfigFile;
use crate::errors::{CmdError, CmdResult};
use crate::output;
use crate::RunFlags;

#[derive(clap::Args)]
pub struct Args {
    #[command(flatten)]
    flags: RunFlags,
}

struct Effective {
    n: usize,
    a: f64,
    pairs: Vec<(Ratio, Ratio)>,
    quantities: Vec<SweepQuantity>,
    quantity_words: Vec<String>,
    epsilons: Vec<Ratio>,
    alpha: f64,
    mollified: bool,
    time_nodes: usize,
    seed: u64,
    jobs: usize,
}

fn parse_quantity(word: &str) -> CmdResult<SweepQuantity> {
    if word == "mixed" {
        return Ok(SweepQuantity::MixedNorm);
    }
    if word == "radial" {
        return Ok(SweepQuantity::RadialPart);
    }
    if word == "omega" {
        return Ok(SweepQuantity::RotationSum);
    }
    if let Some(alpha_raw) = word.strip_prefix("angular:") {
        let alpha = strichartz::rational::parse_ratio(alpha_raw)
            .map_err(|e| CmdError::Parse(format!("quantity {word:?}: {e}")))?;
        return Ok(SweepQuantity::AngularSobolev {
            alpha: alpha.to_f64(),
        });
    }
    Err(CmdError::Parse(format!(
        "unknown quantity {word:?} (use mixed | angular:<α> | radial | omega)"
    )))
}

fn load(args: &Args) -> CmdResult<Effective> {
    let file = ConfigFile::load(&args.flags.config)?;
    let mut section = file.section("sweep")?;
    let n = section.usize("n", Some(2))?;
    let a = section.f64("a", Some(2.0))?;
    let pairs = section.pair_list("pairs")?;
    let quantity_words = section.words(
        "quantities",
        &["mixed", "angular:1", "angular:0.5", "radial", "omega"],
    )?;
    let default_eps = [
        Ratio::new(1, 8),
        Ratio::new(1, 16),
        Ratio::new(1, 32),
        Ratio::new(1, 64),
    ];
    let epsilons = section.ratio_list("epsilons", &default_eps)?;
    let alpha = section.f64("alpha", Some(0.25))?;
    let mollified = section.bool("mollified", true)?;
    let time_nodes = section.usize("time_nodes", Some(32))?;
    let seed = section.u64("seed", Some(0))?;
    section.finish()?;
    let quantities = quantity_words
        .iter()
        .map(|w| parse_quantity(w))
        .collect::<CmdResult<Vec<_>>>()?;
    Ok(Effective {
        n,
        a,
        pairs,
        quantities,
        quantity_words,
        epsilons,
        alpha,
        mollified,
        time_nodes,
        seed: args.flags.seed.unwrap_or(seed),
        jobs: args.flags.jobs.max(1),
    })
}

impl Effective {
    fn core_config(&self) -> SweepConfig {
        SweepConfig {
            n: self.n,
            a: self.a,
            pairs: self
                .pairs
                .iter()
                .map(|(q, p)| (ratio_exponent(*q), ratio_exponent(*p)))
                .collect(),
            epsilons: self.epsilons.iter().map(|e| e.to_f64()).collect(),
            mollified: self.mollified,
            time_nodes: self.time_nodes,
        }
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("n".into(), self.n.to_string()),
            ("a".into(), output::full(self.a)),
            (
                "pairs".into(),
                self.pairs
                    .iter()
                    .map(|(q, p)| format!("{}:{}", show_exponent(*q), show_exponent(*p)))
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
            ("quantities".into(), self.quantity_words.join(" ")),
            (
                "epsilons".into(),
                self.epsilons
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
            ("alpha".into(), output::full(self.alpha)),
            ("mollified".into(), self.mollified.to_string()),
            ("time_nodes".into(), self.time_nodes.to_string()),
            ("seed".into(), self.seed.to_string()),
            // fixed scale constants of the experiment family
            (
                "scale_constants".into(),
                "mollification eps/10; frequency spacing eps/20; \
                 region halfwidth 0.1/eps; time horizon 0.1/eps^2; \
                 carrier velocity a"
                    .into(),
            ),
        ]
    }
}

/// `0` encodes `∞` in config pairs.
fn ratio_exponent(r: Ratio) -> f64 {
    if r.is_zero() {
        f64::INFINITY
    } else {
        r.to_f64()
    }
}

fn show_exponent(r: Ratio) -> String {
    if r.is_zero() {
        "inf".into()
    } else {
        r.to_string()
    }
}

type JobSlot = Mutex<Option<Result<Vec<SweepOutcome>, strichartz::Error>>>;

/// Runs one single-quantity sweep per job over a shared work queue.
fn run_jobs(config: &SweepConfig, quantities: &[SweepQuantity], jobs: usize)
    -> CmdResult<Vec<SweepOutcome>> {
    let next = AtomicUsize::new(0);
    let slots: Vec<JobSlot> = quantities.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(quantities.len()).max(1) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= quantities.len() {
                    break;
                }
                let result = epsilon_sweep(config, &quantities[idx..idx + 1]);
                *slots[idx].lock().unwrap() = Some(result);
            });
        }
    });
    let mut outcomes = Vec::new();
    for slot in slots {
        let result = slot.into_inner().unwrap().expect("job ran");
        outcomes.extend(result.map_err(CmdError::from)?);
    }
    Ok(outcomes)
}

pub fn run(args: Args) -> CmdResult<()> {
    let effective = load(&args)?;
    let config = effective.core_config();
    std::fs::create_dir_all(&args.flags.out_dir)?;

    let outcomes = run_jobs(&config, &effective.quantities, effective.jobs)?;

    // CSV: one row per (quantity/pair, ε)
    let echo = effective.echo();
    let mut csv = output::Csv::new(
        &[
            "epsilon",
            "quantity",
            "value",
            "predicted_exponent",
            "fitted_exponent",
            "r_squared",
        ],
        &echo,
    );
    for outcome in &outcomes {
        let label = match outcome.pair {
            Some((q, p)) => format!("{}[q={q},p={p}]", outcome.quantity),
            None => outcome.quantity.to_string(),
        };
        for (eps, value) in &outcome.samples {
            csv.row(&[
                output::full(*eps),
                label.clone(),
                output::full(*value),
                output::full(outcome.predicted_exponent),
                output::full(outcome.fit.exponent),
                output::full(outcome.fit.r_squared),
            ]);
        }
    }
    csv.write(&args.flags.out_dir.join("sweep.csv"))?;

    // verdicts: mixed fit per pair against the angular fit at the config α
    let alpha_fit = outcomes.iter().find(|o| {
        matches!(o.quantity, SweepQuantity::AngularSobolev { alpha }
            if (alpha - effective.alpha).abs() < 1e-12)
    });
    let mut verdicts = Vec::new();
    for outcome in &outcomes {
        let (Some(pair), SweepQuantity::MixedNorm) = (outcome.pair, outcome.quantity) else {
            continue;
        };
        let Some(rhs) = alpha_fit else { continue };
        let report =
            necessity_verdict(&outcome.fit, &rhs.fit, pair, effective.n, effective.alpha)?;
        verdicts.push(json!({
            "q": pair.0,
            "p": pair.1,
            "alpha": report.alpha,
            "alpha_sharp": report.alpha_sharp,
            "lhs_exponent": report.lhs_exponent,
            "rhs_exponent": report.rhs_exponent,
            "predicted_lhs": report.predicted_lhs,
            "predicted_rhs": report.predicted_rhs,
            "tolerance": report.tolerance,
            "consistent": report.consistent,
        }));
    }

    let fits: Vec<serde_json::Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "quantity": o.quantity.to_string(),
                "pair": o.pair.map(|(q, p)| json!({"q": q, "p": p})),
                "predicted_exponent": o.predicted_exponent,
                "fitted_exponent": o.fit.exponent,
                "intercept": o.fit.intercept,
                "r_squared": o.fit.r_squared,
                "low_r_squared_flag": o.fit.r_squared < 0.98,
                "samples": o.samples.iter().map(|(e, v)| json!([e, v])).collect::<Vec<_>>(),
            })
        })
        .collect();

    let summary = json!({
        "config": echo.iter().map(|(k, v)| json!({k: v})).collect::<Vec<_>>(),
        "fits": fits,
        "verdicts": verdicts,
    });
    output::write_json(&args.flags.out_dir.join("summary.json"), &summary)?;
    println!(
        "wrote {} and {}",
        args.flags.out_dir.join("sweep.csv").display(),
        args.flags.out_dir.join("summary.json").display()
    );
    Ok(())
}
