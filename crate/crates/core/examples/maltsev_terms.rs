//! Searching the clone of an algebra for a Mal'tsev term and for a pair of
//! Hagemann–Mitschke terms.
//!
//! ```text
//! cargo run --release --example maltsev_terms
//! ```

use goursat::termsynth::{find_hm_pair, find_maltsev, Search, DEFAULT_FUNCTION_CAP};
use goursat::zoo;

fn main() -> goursat::Result<()> {
    for (name, alg) in zoo::corpus().into_iter().filter(|(_, a)| a.size() <= 3) {
        let m = match find_maltsev(&alg, DEFAULT_FUNCTION_CAP)? {
            Search::Found { terms } => format!("p = {}", terms.derivation),
            Search::None { clone_size } => format!("none ({clone_size} ternary functions)"),
            Search::Inconclusive { explored } => format!("? after {explored}"),
        };
        let hm = match find_hm_pair(&alg, DEFAULT_FUNCTION_CAP)? {
            Search::Found { terms: (r, s) } => format!("r = {}, s = {}", r.derivation, s.derivation),
            Search::None { .. } => "none".to_string(),
            Search::Inconclusive { explored } => format!("? after {explored}"),
        };
        println!("{name:>13}  Mal'tsev: {m}");
        println!("{:>13}  HM pair:  {hm}", "");
    }
    Ok(())
}
