//! Splitting a simple matrix by a row: the plain symbol partition and the
//! standard decomposition with its counting inequality.
//!
//! ```bash
//! cargo run --example decomposition
//! ```

use forbcfg::matrix::RMatrix;
use forbcfg::patterns::{all_columns, contains};
use forbcfg::prooflab::{decompose_by_row, standard_decomposition};

fn main() {
    // splitting the full binary universe by any row halves it
    let universe = all_columns(3, 2, None).unwrap();
    let parts = decompose_by_row(&universe, 1).unwrap();
    println!(
        "all 3-rowed binary columns split by row 1: {} + {} columns",
        parts[0].col_count(),
        parts[1].col_count()
    );

    // a matrix whose first two columns collide once row 0 is deleted
    let a = RMatrix::parse("3 4 3\n0122\n0010\n0001\n").unwrap();
    let d = standard_decomposition(&a, 0).unwrap();
    let (total, base, repeats) = d.counts(&a);
    println!("deleting row 0 of\n{}", a.to_text());
    println!(
        "deduplicated remainder ({base} columns):\n{}",
        d.base.to_text()
    );
    for ((sa, sb), part) in &d.repeats {
        if part.col_count() > 0 {
            println!(
                "columns under both {sa} and {sb} ({}):\n{}",
                part.col_count(),
                part.to_text()
            );
        }
    }
    println!("counting: {total} <= {base} + {repeats}");

    // each two-symbol product over a repeat part embeds in the original
    for sa in 0..3 {
        for sb in (sa + 1)..3 {
            if let Some(product) = d.pair_product(sa, sb, a.alphabet()).unwrap() {
                println!(
                    "[{sa} {sb}] over the shared columns appears in the input: {}",
                    contains(&a, &product).is_some()
                );
            }
        }
    }
}
