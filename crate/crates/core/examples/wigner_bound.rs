//! Discrete Wigner function of noisy magic states and the polytope bound:
//! past depolarizing rate ~0.467 the twirled state has nonnegative Wigner
//! function everywhere and no code can distill it.

use triortho::distill::NoisePoint;
use triortho::wigner::{
    operator_identity_residual, polytope_depolarizing_bound, twirled_state, wigner,
};

fn main() -> triortho::Result<()> {
    println!(
        "phase-point operator identity residual: {:.2e}",
        operator_identity_residual()
    );

    for delta in [0.0, 0.2, 0.4, 0.467, 0.6] {
        let state = twirled_state(NoisePoint::depolarizing(delta))?;
        let table = wigner(&state);
        println!(
            "delta = {delta:.3}: min W = {:+.5}, sum W = {:.5}",
            table.min(),
            table.sum()
        );
    }

    println!(
        "depolarizing rate entering the polytope: {:.4}",
        polytope_depolarizing_bound()
    );
    Ok(())
}
