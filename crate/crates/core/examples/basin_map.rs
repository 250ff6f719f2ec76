//! Classify the error simplex into basins of attraction of the [17,1,2]
//! distillation map and count how each basin intersects the Wigner polytope.
//! Writes the full grid as CSV when an output path is given.

use std::collections::BTreeMap;

use triortho::code::family_code;
use triortho::distill::{basin_grid, Orientation};

fn main() -> triortho::Result<()> {
    let resolution = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(60);
    let code = family_code(2, 1)?;
    let grid = basin_grid(&code, resolution, Orientation::default())?;

    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for cell in &grid.cells {
        let entry = counts.entry(cell.label.to_string()).or_default();
        entry.0 += 1;
        if cell.in_polytope {
            entry.1 += 1;
        }
    }
    println!("basins of [17,1]_3 at resolution {resolution} ({} points):", grid.cells.len());
    for (label, (total, in_poly)) in &counts {
        println!("{label:>10}: {total:>6} points, {in_poly:>6} inside the Wigner polytope");
    }

    if let Some(path) = std::env::args().nth(2) {
        std::fs::write(&path, grid.to_csv())?;
        println!("wrote {path}");
    }
    Ok(())
}
