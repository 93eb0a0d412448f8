//! The branching recurrence behind the template-growing argument, its
//! multinomial upper bound, and the crude Ramsey-number estimate used to
//! size thresholds.
//!
//! ```bash
//! cargo run --example recurrence
//! ```

use forbcfg::prooflab::{f_recurrence, multinomial_bound, ramsey_upper, PVector};

fn main() {
    println!("{:>14} {:>10} {:>10}", "budget", "value", "bound");
    for parts in [
        vec![1, 5, 9],
        vec![2, 2],
        vec![3, 3],
        vec![2, 3, 4],
        vec![3, 3, 3],
        vec![2, 2, 2, 2],
        vec![4, 4, 4],
    ] {
        let p = PVector::new(parts.clone()).unwrap();
        let value = f_recurrence(&p).unwrap();
        let bound = multinomial_bound(&p).unwrap();
        assert!(value <= bound);
        println!("{:>14} {value:>10} {bound:>10}", format!("{parts:?}"));
    }

    // the bound explodes fast; overflow is reported, never wrapped
    let huge = PVector::new(vec![60; 4]).unwrap();
    println!("f on [60; 4]: {:?}", f_recurrence(&huge).err().unwrap());

    for (p, t) in [(2, 3), (3, 2), (3, 4)] {
        println!(
            "ramsey estimate for {p} colors at clique size {t}: {}",
            ramsey_upper(p, t).unwrap()
        );
    }
}
