//! `strichartz propagate-snapshot`: |u(t, ·)| of the wave-packet datum on an
//! axis slice, for plotting.
//!
//! Config section:
//!
//! ```text
//! [snapshot]
//! n         = 2
//! a         = 2
//! epsilon   = 1/16
//! time      = 0.05        # in units of 1/ε²
//! axis      = 0
//! comoving  = true
//! points    = 512
//! mollified = true
//! ```

use strichartz::grid::{DispersionParams, Point};
use strichartz::knapp::{knapp_data, standard_grid, KnappConfig};
use strichartz::propagator::propagate_comoving;

use crate::config::ConfigFile;
use crate::errors::{CmdError, CmdResult};
use crate::output;
use crate::RunFlags;

#[derive(clap::Args)]
pub struct Args {
    #[command(flatten)]
    flags: RunFlags,
}

pub fn run(args: Args) -> CmdResult<()> {
    let file = ConfigFile::load(&args.flags.config)?;
    let mut section = file.section("snapshot")?;
    let n = section.usize("n", Some(2))?;
    let a = section.f64("a", Some(2.0))?;
    let epsilon = section.f64("epsilon", None)?;
    let time_scaled = section.f64("time", Some(0.05))?;
    let axis = section.usize("axis", Some(0))?;
    let comoving = section.bool("comoving", true)?;
    let points = section.usize("points", Some(512))?;
    let mollified = section.bool("mollified", true)?;
    section.finish()?;
    if axis >= n {
        return Err(CmdError::Domain(format!("axis {axis} out of range for n = {n}")));
    }
    if points < 2 {
        return Err(CmdError::Domain("points must be ≥ 2".into()));
    }

    let config = KnappConfig::new(epsilon, mollified)?;
    let grid = standard_grid(epsilon, n)?;
    let u0 = knapp_data(&config, &grid)?;
    let params = DispersionParams::new(n, a)?;
    let t = time_scaled / (epsilon * epsilon);
    let velocity = if comoving {
        params.carrier_velocity()
    } else {
        [0.0; 3]
    };
    let hat = propagate_comoving(&u0, t, &params, velocity)?;

    // slice through the packet center along the chosen axis
    let width = 2.0 / epsilon;
    let slice: Vec<Point> = (0..points)
        .map(|k| {
            let coord = -width + 2.0 * width * k as f64 / (points - 1) as f64;
            let mut point = [0.0; 3];
            point[axis] = coord;
            point
        })
        .collect();
    let values = hat.evaluate_at_points(&slice)?;

    std::fs::create_dir_all(&args.flags.out_dir)?;
    let echo = vec![
        ("n".into(), n.to_string()),
        ("a".into(), output::full(a)),
        ("epsilon".into(), output::full(epsilon)),
        ("time".into(), output::full(time_scaled)),
        ("t_absolute".into(), output::full(t)),
        ("axis".into(), axis.to_string()),
        ("comoving".into(), comoving.to_string()),
        ("points".into(), points.to_string()),
        ("mollified".into(), mollified.to_string()),
    ];
    let mut csv = output::Csv::new(&["coordinate", "abs_u"], &echo);
    for (point, value) in slice.iter().zip(&values) {
        csv.row(&[output::full(point[axis]), output::full(value.norm())]);
    }
    let path = args.flags.out_dir.join("snapshot.csv");
    csv.write(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
