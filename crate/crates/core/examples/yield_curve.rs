//! Yield parameter of the maximally punctured [6m+2, 3m-2, 2] family member
//! as m grows: the overhead exponent approaches 1.

use triortho::code::{family_yield, yield_table};

fn main() {
    println!("{:>4} {:>5} {:>5} {:>8}", "m", "n", "k", "gamma");
    for row in yield_table(8) {
        println!("{:>4} {:>5} {:>5} {:>8.4}", row.m, row.n, row.k, row.gamma);
    }
    for m in [100, 10_000, 1_000_000] {
        println!("{:>4e} {:>27.6}", m as f64, family_yield(m));
    }
}
