//! `strichartz classify`: range membership and angular-regularity
//! thresholds for one integrability pair, in exact rational arithmetic.

use serde_json::json;
use strichartz::admissibility::{
    classify_schrodinger, classify_wave, Classification, IntegrabilityPair, Region,
};
use strichartz::rational::{parse_ratio, Ratio};

use crate::errors::{CmdError, CmdResult};

#[derive(clap::Args)]
pub struct Args {
    /// Spatial dimension (any n ≥ 2 for the arithmetic).
    #[arg(short = 'n', long)]
    n: u32,
    /// Dispersion exponent of φ(ρ) = ρ^a; a = 1 selects the wave ranges.
    #[arg(short = 'a', long, default_value = "2")]
    a: String,
    /// Time exponent q (rational like 2, 5/2, 2.5, or inf).
    #[arg(short = 'q', long)]
    q: String,
    /// Space exponent p (rational or inf).
    #[arg(short = 'p', long)]
    p: String,
    /// Optional angular regularity to compare against the thresholds.
    #[arg(long)]
    alpha: Option<String>,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

fn parse_exponent(raw: &str, name: &str) -> CmdResult<Ratio> {
    if raw.trim() == "inf" {
        return Ok(Ratio::ZERO); // reciprocal-zero encoding
    }
    let value =
        parse_ratio(raw).map_err(|e| CmdError::Parse(format!("{name}: {e}")))?;
    if value < Ratio::integer(2) {
        return Err(CmdError::Domain(format!("{name} = {value} must be ≥ 2 or inf")));
    }
    Ok(value.recip())
}

pub fn run(args: Args) -> CmdResult<()> {
    let inv_q = parse_exponent(&args.q, "q")?;
    let inv_p = parse_exponent(&args.p, "p")?;
    let a = parse_ratio(&args.a).map_err(|e| CmdError::Parse(format!("a: {e}")))?;
    if a < Ratio::ONE {
        return Err(CmdError::Domain(format!("a = {a} must be ≥ 1")));
    }
    let alpha = args
        .alpha
        .as_deref()
        .map(|raw| parse_ratio(raw).map_err(|e| CmdError::Parse(format!("alpha: {e}"))))
        .transpose()?;
    let pair = IntegrabilityPair::from_inverses(inv_q, inv_p)?;
    let wave = a == Ratio::ONE;
    let class = if wave {
        classify_wave(&pair, args.n)?
    } else {
        classify_schrodinger(&pair, args.n, a)?
    };

    if args.json {
        crate::output::write_json_stdout(&report_json(&args, &pair, &class, alpha, wave));
    } else {
        print_text(&args, &pair, &class, alpha, wave);
    }
    Ok(())
}

fn applicable_statement(class: &Classification, wave: bool) -> String {
    if class.excluded_endpoint.is_some() {
        return "excluded endpoint: no estimate asserted there".into();
    }
    match class.region {
        Region::Classical if wave => "classical wave-admissible range".into(),
        Region::Classical => "classical admissible range (no angular regularity needed)".into(),
        Region::Extended if wave => {
            "extended wave range (spherical averages / angular regularity)".into()
        }
        Region::Extended => {
            if class.sharp_alpha_attained {
                "extended range; the sharp angular regularity α = alpha_sharp is attained".into()
            } else {
                "extended range; estimates hold for every α > alpha_sharp".into()
            }
        }
        Region::Outside => "outside both admissible ranges".into(),
    }
}

fn print_text(
    args: &Args,
    pair: &IntegrabilityPair,
    class: &Classification,
    alpha: Option<Ratio>,
    wave: bool,
) {
    println!("{pair}, n = {}, a = {}", args.n, args.a);
    println!("region: {}", class.region);
    if let Some(endpoint) = class.excluded_endpoint {
        println!("excluded endpoint: {endpoint}");
    }
    if class.on_boundary {
        let warn = if class.boundary_warning {
            " (within float tolerance of the boundary)"
        } else {
            ""
        };
        println!("on a range boundary{warn}");
    }
    if class.unverified_endpoint {
        println!("note: wave-range boundary; endpoint behaviour not asserted");
    }
    println!("scaling exponent s = {}", class.s);
    println!("alpha_sharp = {} (necessary angular regularity)", class.alpha_sharp);
    println!(
        "alpha sufficient, dispersive family: > {}",
        class.alpha_sufficient_cho_lee
    );
    println!(
        "alpha sufficient, general dispersion: > {}",
        class.alpha_sufficient_general
    );
    println!("applies: {}", applicable_statement(class, wave));
    if let Some(alpha) = alpha {
        let verdict = if alpha > class.alpha_sharp
            || (alpha == class.alpha_sharp && class.sharp_alpha_attained)
        {
            "meets the necessary threshold"
        } else if alpha == class.alpha_sharp {
            "sits exactly at the threshold (not attained for this pair)"
        } else {
            "below the necessary threshold"
        };
        println!("alpha = {alpha}: {verdict}");
    }
}

fn report_json(
    args: &Args,
    pair: &IntegrabilityPair,
    class: &Classification,
    alpha: Option<Ratio>,
    wave: bool,
) -> serde_json::Value {
    json!({
        "n": args.n,
        "a": args.a,
        "inv_q": pair.inv_q().to_string(),
        "inv_p": pair.inv_p().to_string(),
        "variant": if wave { "wave" } else { "schrodinger" },
        "region": class.region.to_string(),
        "excluded_endpoint": class.excluded_endpoint.map(|e| e.to_string()),
        "on_boundary": class.on_boundary,
        "boundary_warning": class.boundary_warning,
        "unverified_endpoint": class.unverified_endpoint,
        "s": class.s.to_string(),
        "s_value": class.s.to_f64(),
        "alpha_sharp": class.alpha_sharp.to_string(),
        "alpha_sharp_value": class.alpha_sharp.to_f64(),
        "alpha_sufficient_cho_lee": class.alpha_sufficient_cho_lee.to_string(),
        "alpha_sufficient_general": class.alpha_sufficient_general.to_string(),
        "sharp_alpha_attained": class.sharp_alpha_attained,
        "alpha": alpha.map(|a| a.to_string()),
        "applies": applicable_statement(class, wave),
    })
}
