//! Driving the command line in-process: write a JSON report for a failing
//! check, replay it, then edit the input and watch replay refuse.
//!
//! ```text
//! cargo run --example report_replay
//! ```

use std::fs;

use goursat::cli::{algebra_to_json, run};
use goursat::zoo;

fn main() {
    let dir = std::env::temp_dir().join(format!("goursat-replay-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let alg = dir.join("set4.json");
    fs::write(&alg, algebra_to_json(&zoo::bare_set(4)).to_string()).unwrap();

    let out = run(["goursat", "check", "modularity", "--json", "--witness-labels", alg.to_str().unwrap()]);
    println!("check modularity: exit {}", out.exit_code);
    let report = dir.join("report.json");
    fs::write(&report, &out.stdout).unwrap();
    if let Some(r) = &out.report {
        println!("  witness: {}", r.witness_display.as_deref().unwrap_or("-"));
    }

    let replay = run(["goursat", "replay", report.to_str().unwrap()]);
    print!("replay: exit {}: {}", replay.exit_code, replay.stdout);

    fs::write(&alg, algebra_to_json(&zoo::bare_set(4).with_name("edited")).to_string()).unwrap();
    let stale = run(["goursat", "replay", report.to_str().unwrap()]);
    print!("replay after edit: exit {}: {}", stale.exit_code, stale.stdout);
    fs::remove_dir_all(&dir).unwrap();
}
