//! Exact extremal values: the largest simple matrix avoiding a family,
//! the fixed-ones-count variant, and the maximum over row counts.
//!
//! ```bash
//! cargo run --example extremal_search
//! ```

use forbcfg::forb::{forb_exact, forb_k_exact, forbmax, validate_result, SearchConfig};
use forbcfg::patterns::famspec;

fn main() {
    let cfg = SearchConfig::default();

    // avoiding the 2x2 identity forces a chain of comparable columns
    let identity = famspec::parse_family("I(2,1,0)").unwrap();
    println!("avoiding the 2x2 identity:");
    for m in 1..=5 {
        let res = forb_exact(m, 2, &identity, &cfg).unwrap();
        validate_result(&res, &identity).unwrap();
        println!(
            "  m={m}: value {} ({} nodes, {:?})",
            res.value, res.nodes, res.elapsed
        );
    }

    // with nothing forbidden every column fits
    let empty = famspec::parse_family("").unwrap();
    let res = forb_exact(4, 2, &empty, &cfg).unwrap();
    println!("nothing forbidden at m=4: {} columns", res.value);

    // restricting every column to exactly two ones
    let res = forb_k_exact(5, 2, &identity, 2, &cfg).unwrap();
    println!(
        "identity-avoiding with exactly two ones per column at m=5: {}",
        res.value
    );

    // the running maximum over row counts, with a monotonicity probe
    let report = forbmax(4, 2, &identity, &cfg).unwrap();
    let values: Vec<usize> = report.per_m.iter().map(|r| r.value).collect();
    println!(
        "values per row count {:?}; max {}; monotone: {}",
        values, report.max_value, report.monotone
    );

    // a node budget turns the exact value into a flagged lower bound
    let truncated = forb_exact(
        5,
        2,
        &identity,
        &SearchConfig {
            node_budget: Some(3),
            ..SearchConfig::default()
        },
    )
    .unwrap();
    println!(
        "with a 3-node budget: value {} (exact: {})",
        truncated.value, truncated.exact
    );
}
