//! Generating the named matrices and families, and combining them in the
//! family expression language.
//!
//! ```bash
//! cargo run --example families
//! ```

use forbcfg::patterns::{famspec, gen_fabcd, gen_tfam};

fn main() {
    // generalized identities and triangulars over three symbols, size 2
    let over_three = gen_tfam(2, 3).unwrap();
    let binary = gen_tfam(2, 2).unwrap();
    println!(
        "size-2 family over 3 symbols: {} members; binary subfamily: {}",
        over_three.len(),
        binary.len()
    );

    // the members that use a symbol beyond the binary alphabet
    let escaping = over_three.minus(&binary);
    println!("escaping members ({}):", escaping.len());
    for member in escaping.members() {
        print!("{}", member.to_text());
    }

    // the same family via the expression language
    let parsed = famspec::parse_family("Tfam(2,3) - Tfam(2,2)").unwrap();
    assert_eq!(parsed.canonical_key(), escaping.canonical_key());
    println!("expression key: {}", parsed.canonical_key());

    // two-column block matrices
    let block = gen_fabcd(1, 2, 2, 1).unwrap();
    println!(
        "block matrix with row pattern (1,2,2,1):\n{}",
        block.to_text()
    );
}
