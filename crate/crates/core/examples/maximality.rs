//! Maximality of the family spaces: no generator can be added to T_m without
//! breaking triorthogonality. The check solves the linear extension
//! constraints exactly and enumerates the residual quadratic candidates.

use triortho::space::{family_space, is_maximal, MaximalityStatus, DEFAULT_ENUMERATION_BUDGET};

fn main() -> triortho::Result<()> {
    for m in 1..=4 {
        let space = family_space(m)?;
        let verdict = is_maximal(&space, DEFAULT_ENUMERATION_BUDGET);
        println!(
            "T_{m} (n = {}, kappa = {}): {:?} after {} candidates",
            space.n(),
            space.kappa(),
            verdict.status,
            verdict.enumerated_count
        );
        assert_eq!(verdict.status, MaximalityStatus::Maximal);
    }
    Ok(())
}
