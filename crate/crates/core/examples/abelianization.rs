//! Reflection of groups into abelian groups: the abelianization of S3,
//! preservation of pullbacks of split epimorphisms, and the Galois
//! groupoid of the sign map.
//!
//! ```text
//! cargo run --release --example abelianization
//! ```

use goursat::algebra::Homomorphism;
use goursat::diagrams::{random_point, random_power_subalgebra, DiagramRng};
use goursat::reflection::{
    check_split_pullback_preservation, galois_pregroupoid, groupoid_check, reflect, IdentitySet, PreCategory,
};
use goursat::zoo;

fn main() -> goursat::Result<()> {
    let ab = IdentitySet::commutative("mul");
    let s3 = zoo::s3_group().into_ref();
    let r = reflect(&s3, &ab)?;
    println!("S3 reflects onto {} elements, η = {:?}", r.alg.size(), r.eta.map());

    let sign = Homomorphism::new(s3.clone(), zoo::z2_group().into_ref(), zoo::s3_sign())?;
    let kp = PreCategory::kernel_pair(&sign)?;
    println!("Eq(sign): |P0| = {}, |P1| = {}, |P2| = {}", kp.p0.size(), kp.p1.size(), kp.p2.size());
    let gal = galois_pregroupoid(&sign, &ab)?;
    println!(
        "Gal(sign): |P0| = {}, |P1| = {}, |P2| = {}, groupoid: {}",
        gal.p0.size(),
        gal.p1.size(),
        gal.p2.size(),
        groupoid_check(&gal)?.status.as_str()
    );

    let mut held = 0;
    for seed in 0..20 {
        let mut rng = DiagramRng::new(seed);
        let y = random_power_subalgebra(&s3, &mut rng)?;
        let (a, b) = (random_point(&y, &mut rng)?, random_point(&y, &mut rng)?);
        held += check_split_pullback_preservation(&a, &b, &ab)?.holds_bool() as usize;
    }
    println!("abelianization preserved {held} of 20 sampled pullbacks of split epimorphisms over S3 powers");
    Ok(())
}
