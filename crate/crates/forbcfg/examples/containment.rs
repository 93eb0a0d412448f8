//! Deciding whether a pattern appears in a matrix as a configuration
//! (a submatrix up to row and column permutation), with an explicit
//! witness.
//!
//! ```bash
//! cargo run --example containment
//! ```

use forbcfg::patterns::{contains, famspec, gen_i, gen_k2, gen_t};

fn main() {
    // the upper triangular matrix hosts [0 1] in its second row
    let triangular = gen_t(2, 0, 1).unwrap();
    let row = famspec::parse_matrix("[[0,1]]").unwrap();
    println!("searching\n{}for\n{}", triangular.to_text(), row.to_text());
    match contains(&triangular, &row) {
        Some(witness) => {
            println!("found: rows {:?}, columns {:?}", witness.rows, witness.cols);
            assert!(witness.verify(&triangular, &row));
        }
        None => println!("not found"),
    }

    // the identity has no triangular pattern: entry counts already differ
    let identity = gen_i(2, 1, 0).unwrap();
    let lower = gen_t(2, 1, 0).unwrap();
    println!(
        "identity hosts the lower triangular: {}",
        contains(&identity, &lower).is_some()
    );

    // repeated pattern columns insist on distinct host columns
    let pattern = famspec::parse_matrix("times(2,[[0,1]])").unwrap();
    let two_cols = famspec::parse_matrix("[[0,1]]").unwrap();
    let four_cols = famspec::parse_matrix("[[0,0,1,1]]").unwrap();
    println!(
        "doubled row in a 2-column host: {}; in a 4-column host: {}",
        contains(&two_cols, &pattern).is_some(),
        contains(&four_cols, &pattern).is_some(),
    );

    // every 2-rowed simple binary matrix embeds in the full column pair grid
    let k2 = gen_k2().unwrap();
    let h = forbcfg::patterns::gen_h().unwrap();
    println!("K2 hosts H: {}", contains(&k2, &h).is_some());
}
