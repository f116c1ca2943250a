//! The relational characterisations of 3-permutability, tested on relations
//! generated by a few seed pairs.
//!
//! ```text
//! cargo run --release --example relational_conditions
//! ```

use goursat::permutability::{check_relation_condition_with_target, RelCondition, RelationBudget};
use goursat::zoo;

fn main() {
    let conds = [RelCondition::Ii, RelCondition::Iii, RelCondition::Iv];
    for alg in [zoo::z3_group(), zoo::impl2(), zoo::lattice2(), zoo::bare_set(3)] {
        println!("{}", alg.name());
        for cond in conds {
            let budget = RelationBudget { seed_pairs: 3 };
            let v = check_relation_condition_with_target(&alg, &alg, cond, budget);
            print!("  ({}) {:<20} {}", cond.as_str(), cond.formula(), v.status.as_str());
            match (&v.witness, &v.budget_note) {
                (Some(w), _) => println!(": {}", w.describe(&alg, &alg)),
                (None, Some(n)) => println!(" [{n}]"),
                _ => println!(),
            }
        }
    }
}
