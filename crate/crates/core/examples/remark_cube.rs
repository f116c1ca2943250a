//! The cube of term-function algebras on one, two and three generators.
//! The pair of binary projections lies in the image of `λ` exactly when a
//! Hagemann–Mitschke pair exists.
//!
//! ```text
//! cargo run --release --example remark_cube
//! ```

use goursat::diagrams::{cube_lambda_check, remark_cube};
use goursat::termsynth::{find_hm_pair, remark_cube_report, DEFAULT_FUNCTION_CAP};
use goursat::zoo;

fn main() -> goursat::Result<()> {
    for (name, alg) in zoo::corpus().into_iter().filter(|(_, a)| a.size() == 2) {
        let Some(rc) = remark_cube_report(&alg, DEFAULT_FUNCTION_CAP)? else {
            println!("{name}: clone too large");
            continue;
        };
        let hm = find_hm_pair(&alg, DEFAULT_FUNCTION_CAP)?.found().is_some();
        println!(
            "{name:>13}: |F2| = {:>3}, |F3| = {:>4}, |P| = {:>6}, |λ(P)| = {:>5} of {:>5}, fiber {}, HM {}",
            rc.binary,
            rc.ternary,
            rc.pullback,
            rc.image,
            rc.kernel_pair,
            if rc.fiber_nonempty { "inhabited" } else { "empty" },
            if hm { "yes" } else { "no" },
        );
    }
    // the same cube as an explicit diagram, small enough for Z2
    let cube = remark_cube(&zoo::z2_group(), DEFAULT_FUNCTION_CAP)?.expect("Z2 clone is small");
    println!("Z2 cube λ: {}", cube_lambda_check(&cube)?.status.as_str());
    Ok(())
}
