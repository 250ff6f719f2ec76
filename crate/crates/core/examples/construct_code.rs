//! Build family codes and print their generator matrix, punctured matrix
//! with its H1/H0 partition, and summary figures.

use triortho::code::{build_code, distance_z, CodeSummary};
use triortho::space::{default_punctures, family_space, puncture};

fn main() -> triortho::Result<()> {
    for (m, k) in [(1, 1), (2, 1), (2, 4)] {
        let space = family_space(m)?;
        let punctures = default_punctures(m, k)?;
        let tm = puncture(&space, &punctures)?;
        let code = build_code(&tm)?;
        let d = distance_z(&code)?;
        let summary = CodeSummary::new(&code, Some(m), punctures.coords(), d)?;

        println!("== m = {m}, punctured at {:?} ==", punctures.coords());
        println!("generator matrix of the triorthogonal space:");
        print!("{}", space.basis());
        println!("punctured matrix H (H1 rows first):");
        print!("{}", tm.to_text());
        println!(
            "code [{},{},{}]_3  rank Lx = {}  rank Lz = {}  gamma = {:.4}\n",
            summary.n, summary.k, summary.d, summary.rank_lx, summary.rank_lz, summary.gamma
        );
    }
    Ok(())
}
