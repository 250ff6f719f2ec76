//! Exhaustive search over triorthogonal spaces at n = 9: the only
//! non-trivial maximal space of dimension >= 3 is the m = 1 family space,
//! up to coordinate permutation.

use triortho::search::{permutation_equivalent, search, SearchConfig};
use triortho::space::family_space;

fn main() -> triortho::Result<()> {
    let report = search(&SearchConfig::exhaustive(9, 3))?;
    println!(
        "expanded {} nodes, exhausted: {}",
        report.nodes_expanded, report.exhausted
    );
    let t1 = family_space(1)?;
    for entry in &report.entries {
        println!(
            "class of {} space(s), kappa = {}, trivial: {}, matches T_1: {}",
            entry.class_size,
            entry.space.kappa(),
            entry.trivial,
            permutation_equivalent(&entry.space, &t1)
        );
        print!("{}", entry.space.canonical_basis());
    }
    Ok(())
}
