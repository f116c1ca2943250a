//! Relations, congruences and quotients of a small algebra.
//!
//! ```text
//! cargo run --example congruences
//! ```

use goursat::algebra::{cg, con_lattice, Homomorphism, DEFAULT_LATTICE_CAP};
use goursat::relcore::BinRel;
use goursat::zoo;

fn main() -> goursat::Result<()> {
    // relation calculus on a 3-element carrier
    let lt = BinRel::from_fn(3, 3, |x, y| x < y);
    let le = lt.union(&BinRel::identity(3))?;
    println!("< ∘ < = {:?}", lt.compose(&lt)?.pairs().collect::<Vec<_>>());
    println!("≤ is transitive: {}", le.is_transitive());
    println!("(≤)° ∘ ≤ is the full relation: {}", le.opposite().compose(&le)? == BinRel::full(3, 3));

    for alg in [zoo::s3_group(), zoo::chain3_lattice(), zoo::klein_group(), zoo::bare_set(4)] {
        let lat = con_lattice(&alg, DEFAULT_LATTICE_CAP)?;
        println!("\n{} has {} congruences", alg.name(), lat.len());
        for c in lat.congruences() {
            let classes: Vec<String> = c
                .classes()
                .iter()
                .map(|k| k.iter().map(|&x| alg.label(x)).collect::<Vec<_>>().join(","))
                .collect();
            println!("  {{{}}}", classes.join("}{"));
        }
    }

    // Cg(e, (012)) collapses the alternating subgroup
    let s3 = zoo::s3_group().into_ref();
    let theta = cg(&s3, &[(0, 4)]);
    let q = Homomorphism::quotient(&s3, &theta)?;
    println!(
        "\nS3 / Cg(e, (012)) has {} elements; kernel pair round trip: {}",
        q.dst().size(),
        q.kernel_pair() == theta
    );
    Ok(())
}
