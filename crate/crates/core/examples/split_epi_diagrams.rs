//! Random regular epimorphisms of points over powers of an algebra, run
//! through the pushout-square, cube, product and Beck–Chevalley checks.
//!
//! ```text
//! cargo run --release --example split_epi_diagrams
//! ```

use goursat::diagrams::{
    beck_chevalley_check, check_product_preservation, cube_lambda_check, cube_right_face_check, goursat_pushout_check,
    random_beck_chevalley_instance, random_cube, random_product_instance, random_square, GeneralCube,
};
use goursat::zoo;

fn main() -> goursat::Result<()> {
    for base in [zoo::z2_group(), zoo::impl2(), zoo::lattice2(), zoo::bare_set(2)] {
        let mut fails = [0usize; 5];
        let n = 40;
        for seed in 0..n {
            let sq = random_square(&base, seed)?;
            fails[0] += goursat_pushout_check(&sq)?.fails_bool() as usize;
            let cube = random_cube(&base, seed)?;
            let lambda_fails = cube_lambda_check(&cube)?.fails_bool();
            fails[1] += lambda_fails as usize;
            let face_fails = cube_right_face_check(&GeneralCube::image_factorized(&cube)?)?.fails_bool();
            assert_eq!(lambda_fails, face_fails);
            let (beta, a, b) = random_product_instance(&base, seed)?;
            fails[2] += check_product_preservation(&beta, &a, &b)?.fails_bool() as usize;
            let (sq, pt) = random_beck_chevalley_instance(&base, seed)?;
            fails[3] += beck_chevalley_check(&sq, &pt)?.fails_bool() as usize;
            fails[4] += face_fails as usize;
        }
        println!(
            "{:>9}: failures in {n} instances: pushout {}, cube {}, right face {}, product {}, Beck–Chevalley {}",
            base.name(),
            fails[0],
            fails[1],
            fails[4],
            fails[2],
            fails[3]
        );
    }
    Ok(())
}
