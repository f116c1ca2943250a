//! 2-permutability, 3-permutability, modularity and the Shifting Lemma
//! across the bundled algebras.
//!
//! ```text
//! cargo run --release --example permutability_ladder
//! ```

use goursat::permutability::{check_modularity, check_permutable, check_shifting_lemma};
use goursat::zoo;

fn main() {
    println!("{:>13} {:>8} {:>8} {:>10} {:>9}", "algebra", "2-perm", "3-perm", "modular", "shifting");
    for (name, alg) in zoo::corpus() {
        let p2 = check_permutable(&alg, 2);
        let p3 = check_permutable(&alg, 3);
        let m = check_modularity(&alg);
        let s = check_shifting_lemma(&alg);
        println!(
            "{name:>13} {:>8} {:>8} {:>10} {:>9}",
            p2.status.as_str(),
            p3.status.as_str(),
            m.status.as_str(),
            s.status.as_str()
        );
        if let Some(w) = &p3.witness {
            println!("{:>13}   {}", "", w.describe(&alg));
        }
    }
}
