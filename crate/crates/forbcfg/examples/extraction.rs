//! Pulling a structured configuration out of a square template: pigeonhole
//! on the diagonal, an edge coloring from the above-diagonal entries, and a
//! monochromatic clique hunt.
//!
//! ```bash
//! cargo run --example extraction
//! ```

use forbcfg::patterns::{contains, gen_t3};
use forbcfg::prooflab::{
    extract_config_from_template, is_p_template, mono_clique, EdgeColoring, Extraction,
};

fn main() {
    // a template with 2 below the diagonal and diagonal ones
    let g = gen_t3(8, 2, 1, 1).unwrap();
    let diagonal = is_p_template(&g, 2, Some(2)).unwrap().unwrap();
    println!("template diagonal: {diagonal:?}");

    match extract_config_from_template(&g, 2, 2, 2).unwrap() {
        Extraction::Member {
            config,
            witness,
            frequent,
            clique_color,
        } => {
            println!(
                "member via symbol {frequent}, clique color {clique_color}:\n{}",
                config.to_text()
            );
            assert!(witness.verify(&g, &config));
            assert!(contains(&g, &config).is_some());
        }
        other => println!("{other:?}"),
    }

    // flipping the above-diagonal entries to the small alphabet lands in
    // the exception case
    let tricky = gen_t3(8, 0, 2, 1).unwrap();
    match extract_config_from_template(&tricky, 0, 2, 2).unwrap() {
        Extraction::Exception {
            config,
            clique_color,
            ..
        } => {
            println!(
                "exception with clique color {clique_color}:\n{}",
                config.to_text()
            );
        }
        other => println!("{other:?}"),
    }

    // the clique machinery stands alone as well
    let coloring = EdgeColoring::from_fn(6, 2, |i, j| ((i + j) % 2) as u8).unwrap();
    println!(
        "triangle in color 0 of a parity coloring of six vertices: {:?}",
        mono_clique(&coloring, 0, 3)
    );
}
