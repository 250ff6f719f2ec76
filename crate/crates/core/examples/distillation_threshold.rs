//! Depolarizing-noise thresholds of the [9m-1, 1, 2] codes, found by
//! bisection over the fixed-point iteration of the output-error map.
//! The m = 2 code has the highest threshold.

use triortho::code::family_code;
use triortho::distill::{depolarizing_threshold, DistillationMap, NoisePoint, Orientation};

fn main() -> triortho::Result<()> {
    println!("{:>4} {:>6} {:>12}", "m", "n", "delta_star");
    for m in 1..=4 {
        let code = family_code(m, 1)?;
        let run = depolarizing_threshold(&code, Orientation::default())?;
        println!("{:>4} {:>6} {:>12.4}", m, code.n(), run.delta_star);
    }

    // a few iterates of the [17,1] map just below threshold
    let code = family_code(2, 1)?;
    let map = DistillationMap::new(&code, Orientation::default())?;
    let mut point = NoisePoint::depolarizing(0.35);
    println!("\niterating from delta = 0.35 on [17,1]_3:");
    for round in 0..6 {
        let (next, acceptance) = map.apply_with_acceptance(point)?;
        println!(
            "round {round}: eps = ({:.3e}, {:.3e}), acceptance {:.3}",
            point.eps1, point.eps2, acceptance
        );
        point = next;
    }
    Ok(())
}
