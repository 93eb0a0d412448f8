//! Growth experiments: extremal values over a range of row counts with a
//! log-log exponent fit and a comparison against the expected rate.
//!
//! ```bash
//! cargo run --release --example growth_fit
//! ```

use forbcfg::forb::SearchConfig;
use forbcfg::growth::{run_growth, FitStatus};

fn main() {
    let cfg = SearchConfig::default();

    for (spec, range) in [
        ("Fabcd(0,1,1,0)", (1usize, 6usize)),
        ("Fabcd(0,2,2,0)", (3, 6)),
    ] {
        let report = run_growth(spec, 2, range.0, range.1, &cfg, None, None).unwrap();
        println!("family {spec}:");
        for point in &report.points {
            println!(
                "  m={:<2} value={:<4} exact={}",
                point.m, point.value, point.exact
            );
        }
        match &report.fit {
            FitStatus::Fitted {
                exponent,
                r_squared,
                points_used,
            } => println!(
                "  fitted exponent {exponent:.3} (r^2 {r_squared:.4}, {points_used} points)"
            ),
            other => println!("  fit: {other:?}"),
        }
        if let Some(expected) = &report.expected {
            println!(
                "  expected exponent {}{}{}",
                expected.exponent,
                if expected.log_factor {
                    " (with a log factor)"
                } else {
                    ""
                },
                if expected.conjectured {
                    " (conjectured)"
                } else {
                    ""
                },
            );
        }
        println!("  scope: {}", report.fit_scope);
    }

    // exponential data is refused rather than fitted
    let unbounded = run_growth("", 2, 1, 4, &SearchConfig::default(), None, None).unwrap();
    println!("nothing forbidden: fit {:?}", unbounded.fit);
}
